use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// A point (or free vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at `angle` radians from the positive x axis.
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(c, s)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, `det(self, other)`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn normalized(self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A line stored as a base point and a unit direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedLine {
    pub base: Point,
    pub dir: Point,
}

impl DirectedLine {
    /// Line through `base` along `dir`; `dir` is normalized.
    pub fn new(base: Point, dir: Point) -> Result<Self> {
        let dir = dir.normalized().ok_or(GeomError::CoincidentPoints)?;
        Ok(DirectedLine { base, dir })
    }

    /// Line through `base` whose direction makes `angle` with the x axis.
    pub fn from_angle(base: Point, angle: f64) -> Self {
        DirectedLine {
            base,
            dir: Point::from_angle(angle),
        }
    }

    /// The line L(a, b), directed from `a` towards `b`.
    pub fn through(a: Point, b: Point) -> Result<Self> {
        let d = b - a;
        if d.norm() <= f64::EPSILON * a.norm().max(b.norm()) {
            return Err(GeomError::CoincidentPoints);
        }
        DirectedLine::new(a, d)
    }

    /// Left-hand unit normal.
    pub fn normal(&self) -> Point {
        self.dir.perp()
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.base + self.dir * t
    }

    /// Signed offset of `p` from the line along the left normal.
    pub fn offset(&self, p: Point) -> f64 {
        self.dir.cross(p - self.base)
    }

    /// The perpendicular line through `through`.
    pub fn perpendicular_through(&self, through: Point) -> DirectedLine {
        DirectedLine {
            base: through,
            dir: self.dir.perp(),
        }
    }
}

/// Foot of the perpendicular dropped from `x` onto `line`.
pub fn foot_of_perpendicular(x: Point, line: &DirectedLine) -> Point {
    let t = (x - line.base).dot(line.dir);
    line.point_at(t)
}

/// Signed distance `v · (Y − X)` for any `Y` on `line`, where `v` is a unit
/// normal of the line.
pub fn signed_distance(x: Point, line: &DirectedLine, normal: Point) -> Result<f64> {
    const TOL: f64 = 1e-9;
    if (normal.norm() - 1.0).abs() > TOL || normal.dot(line.dir).abs() > TOL {
        return Err(GeomError::NotNormal);
    }
    Ok(normal.dot(line.base - x))
}

/// Intersection point of two lines.
pub fn line_intersection(a: &DirectedLine, b: &DirectedLine) -> Result<Point> {
    let denom = a.dir.cross(b.dir);
    if denom.abs() < 1e-12 {
        return Err(GeomError::Parallel);
    }
    let t = (b.base - a.base).cross(b.dir) / denom;
    Ok(a.point_at(t))
}

/// Mirror image of `p` across `line`.
pub fn reflect_across(p: Point, line: &DirectedLine) -> Point {
    let f = foot_of_perpendicular(p, line);
    f * 2.0 - p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point, b: Point) -> bool {
        a.distance(b) < 1e-12
    }

    #[test]
    fn foot_examples() {
        let l = DirectedLine::through(Point::new(1.0, -1.0), Point::new(1.0, 1.0)).unwrap();
        assert!(close(
            foot_of_perpendicular(Point::ORIGIN, &l),
            Point::new(1.0, 0.0)
        ));
        let xaxis = DirectedLine::from_angle(Point::ORIGIN, 0.0);
        assert!(close(
            foot_of_perpendicular(Point::new(3.0, 4.0), &xaxis),
            Point::new(3.0, 0.0)
        ));
        let on = Point::new(-2.5, 0.0);
        assert!(close(foot_of_perpendicular(on, &xaxis), on));
    }

    #[test]
    fn signed_distance_examples() {
        let xaxis = DirectedLine::from_angle(Point::new(5.0, 0.0), 0.0);
        let up = Point::new(0.0, 1.0);
        let d = signed_distance(Point::new(0.0, 2.0), &xaxis, up).unwrap();
        assert!((d + 2.0).abs() < 1e-15);
        assert_eq!(
            signed_distance(Point::new(7.0, 0.0), &xaxis, up).unwrap(),
            0.0
        );
        let flipped = signed_distance(Point::new(0.0, 2.0), &xaxis, -up).unwrap();
        assert_eq!(flipped, -d);
        assert_eq!(
            signed_distance(Point::ORIGIN, &xaxis, Point::new(1.0, 0.0)),
            Err(GeomError::NotNormal)
        );
        assert_eq!(
            signed_distance(Point::ORIGIN, &xaxis, Point::new(0.0, 2.0)),
            Err(GeomError::NotNormal)
        );
    }

    #[test]
    fn intersection_examples() {
        let xaxis = DirectedLine::from_angle(Point::ORIGIN, 0.0);
        let yaxis = DirectedLine::from_angle(Point::ORIGIN, std::f64::consts::FRAC_PI_2);
        assert!(close(
            line_intersection(&xaxis, &yaxis).unwrap(),
            Point::ORIGIN
        ));
        let y1 = DirectedLine::from_angle(Point::new(-4.0, 1.0), 0.0);
        let x2 = DirectedLine::from_angle(Point::new(2.0, 9.0), -std::f64::consts::FRAC_PI_2);
        assert!(close(
            line_intersection(&y1, &x2).unwrap(),
            Point::new(2.0, 1.0)
        ));
        assert_eq!(line_intersection(&xaxis, &y1), Err(GeomError::Parallel));
    }

    #[test]
    fn through_rejects_coincident_points() {
        let p = Point::new(1.0, 2.0);
        assert_eq!(
            DirectedLine::through(p, p),
            Err(GeomError::CoincidentPoints)
        );
    }

    #[test]
    fn reflection() {
        let diag = DirectedLine::through(Point::ORIGIN, Point::new(1.0, 1.0)).unwrap();
        assert!(close(
            reflect_across(Point::new(1.0, 0.0), &diag),
            Point::new(0.0, 1.0)
        ));
    }
}
