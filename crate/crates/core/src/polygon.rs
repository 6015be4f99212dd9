use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::point::{DirectedLine, Point};
use crate::DEFAULT_TOL;

/// An n-gon (n ≥ 3) with cyclic vertex indexing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonRepr", into = "PolygonRepr")]
pub struct Polygon {
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<Point>,
}

impl TryFrom<PolygonRepr> for Polygon {
    type Error = GeomError;
    fn try_from(r: PolygonRepr) -> Result<Self> {
        Polygon::new(r.vertices)
    }
}

impl From<Polygon> for PolygonRepr {
    fn from(p: Polygon) -> Self {
        PolygonRepr {
            vertices: p.vertices,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
    Degenerate,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite(i));
        }
        Ok(Polygon { vertices })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Polygon::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    /// Vertex with cyclic indexing; any integer index is valid.
    pub fn vertex(&self, i: isize) -> Point {
        let n = self.len() as isize;
        self.vertices[i.rem_euclid(n) as usize]
    }

    pub fn next(&self, i: usize) -> Point {
        self.vertices[(i + 1) % self.len()]
    }

    pub fn prev(&self, i: usize) -> Point {
        self.vertices[(i + self.len() - 1) % self.len()]
    }

    /// Line through vertices `i` and `i + 1`.
    pub fn side_line(&self, i: usize) -> Result<DirectedLine> {
        DirectedLine::through(self.vertices[i % self.len()], self.next(i % self.len())).map_err(
            |_| GeomError::DegenerateSide {
                side: i % self.len(),
            },
        )
    }

    pub fn side_length(&self, i: usize) -> f64 {
        self.vertices[i].distance(self.next(i))
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(v[i].distance(v[j]));
            }
        }
        d
    }

    pub fn centroid(&self) -> Point {
        let n = self.len() as f64;
        let s = self.vertices.iter().fold(Point::ORIGIN, |acc, &p| acc + p);
        s * (1.0 / n)
    }

    /// Signed shoelace area, `½ Σ det(V_i, V_{i+1})`.
    pub fn area(&self) -> f64 {
        let n = self.len();
        0.5 * (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum::<f64>()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation_with_tol(DEFAULT_TOL)
    }

    /// Sign of the area; `|area| ≤ tol · diam²` counts as degenerate.
    pub fn orientation_with_tol(&self, tol: f64) -> Orientation {
        let a = self.area();
        let d = self.diameter();
        if a.abs() <= tol * d * d {
            Orientation::Degenerate
        } else if a > 0.0 {
            Orientation::Ccw
        } else {
            Orientation::Cw
        }
    }

    /// Unsigned angle in (0, π) at vertex `i` between the edges to its
    /// neighbours.
    pub fn vertex_angle(&self, i: usize) -> Result<f64> {
        let n = self.len();
        let i = i % n;
        let p = self.vertices[i];
        let a = self.prev(i) - p;
        let b = self.next(i) - p;
        let cross = a.cross(b);
        if cross.abs() <= 1e-12 * a.norm() * b.norm() {
            return Err(GeomError::Collinear((i + n - 1) % n, i, (i + 1) % n));
        }
        Ok(cross.abs().atan2(a.dot(b)))
    }

    pub fn vertex_angles(&self) -> Result<Vec<f64>> {
        (0..self.len()).map(|i| self.vertex_angle(i)).collect()
    }

    /// Angles in (0, π) between consecutive side-lines, measured so that
    /// they chain consistently around the polygon: their sum is always a
    /// multiple of π. They coincide with [`vertex_angle`](Self::vertex_angle)
    /// at every convex corner and give its supplement at reflex corners.
    pub fn line_angles(&self) -> Result<Vec<f64>> {
        let n = self.len();
        let sign = if self.area() >= 0.0 { 1.0 } else { -1.0 };
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let p = self.vertices[i];
            let a = p - self.prev(i);
            let b = self.next(i) - p;
            if a.cross(b).abs() <= 1e-12 * a.norm() * b.norm() {
                return Err(GeomError::Collinear((i + n - 1) % n, i, (i + 1) % n));
            }
            // Turning angle from the incoming to the outgoing edge, in
            // orientation-normalized sense.
            let turn = sign * a.cross(b).atan2(a.dot(b));
            out.push((PI - turn).rem_euclid(PI));
        }
        Ok(out)
    }

    /// `½ Σ ℓ(V_i, V_{i+1}) · d(X, L(V_i, V_{i+1}), outward normal)` for a
    /// counterclockwise triangle. Equals [`area`](Self::area) for every `x`.
    pub fn area_by_signed_distances(&self, x: Point) -> Result<f64> {
        if self.len() != 3 {
            return Err(GeomError::InvalidParameter(format!(
                "expected a triangle, got {} vertices",
                self.len()
            )));
        }
        if self.orientation() != Orientation::Ccw {
            return Err(GeomError::NotCounterClockwise);
        }
        let mut sum = 0.0;
        for i in 0..3 {
            let line = self.side_line(i)?;
            // Right-hand normal points outward for a CCW polygon.
            let outward = -line.normal();
            sum += self.side_length(i) * crate::point::signed_distance(x, &line, outward)?;
        }
        Ok(0.5 * sum)
    }

    pub fn reversed(&self) -> Polygon {
        let mut v = self.vertices.clone();
        v.reverse();
        Polygon { vertices: v }
    }

    /// Relabel so that vertex `k` becomes vertex 0.
    pub fn shifted(&self, k: usize) -> Polygon {
        let n = self.len();
        Polygon {
            vertices: (0..n).map(|i| self.vertices[(i + k) % n]).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
        }
    }

    /// Largest vertexwise distance to `other`; `None` on count mismatch.
    pub fn max_vertex_distance(&self, other: &Polygon) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.vertices
                .iter()
                .zip(&other.vertices)
                .map(|(a, b)| a.distance(*b))
                .fold(0.0, f64::max)
        })
    }

    /// First pair of non-adjacent edges that properly cross, with the
    /// crossing point.
    pub fn self_intersection(&self) -> Option<(usize, usize, Point)> {
        let n = self.len();
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (self.vertices[i], self.next(i));
                let (c, d) = (self.vertices[j], self.next(j));
                if let Some(p) = proper_crossing(a, b, c, d) {
                    return Some((i, j, p));
                }
            }
        }
        None
    }

    pub fn is_simple(&self) -> bool {
        self.self_intersection().is_none()
    }
}

/// Crossing point of segments `ab` and `cd` when they intersect at a single
/// point interior to both.
pub fn proper_crossing(a: Point, b: Point, c: Point, d: Point) -> Option<Point> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    let scale = r.norm() * s.norm();
    if denom.abs() <= 1e-12 * scale {
        return None;
    }
    let t = (c - a).cross(s) / denom;
    let u = (c - a).cross(r) / denom;
    let eps = 1e-12;
    (t > eps && t < 1.0 - eps && u > eps && u < 1.0 - eps).then(|| a + r * t)
}
