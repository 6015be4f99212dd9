//! Outer and inner polygon families `O(W, V, θ)` and `I(W, V, θ)`.
//!
//! Side-line `i` of the outer polygon passes through `W_i` with direction
//! angle `θ − Σ_{j ≤ i} ∠V_j`; the last side-line is pinned to `θ` so that
//! `O_1 → O_n` runs at angle `θ` (mod π). The inner polygon uses the
//! perpendicular lines through the same points. Vertex `i` of either polygon
//! is the intersection of side-lines `i − 1` and `i`.
//!
//! The angles used are [`Polygon::line_angles`], which agree with the vertex
//! angles of any convex `V` and keep the side-line cycle closed otherwise.

use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::pedal_center::{self, ThetaRoot};
use crate::point::{line_intersection, DirectedLine, Point};
use crate::polygon::Polygon;
use crate::similarity::Correspondence;

/// Relative inner diameter below which the inner polygon counts as a point.
pub const POINT_TOL: f64 = 1e-8;

/// Samples used when scanning θ for degenerate inner polygons (n ≥ 4).
pub const DEGENERACY_SCAN: usize = 4096;

#[derive(Debug, Clone)]
pub struct OuterInnerPair {
    pub theta: f64,
    pub outer: Polygon,
    pub inner: Polygon,
    /// Unit direction of outer side-line `i`, i.e. of `L(O_i, O_{i+1})`.
    pub side_directions: Vec<Point>,
}

/// Outer and inner polygons for a fixed pair `(W, V)`; angles are computed
/// once so the family can be evaluated cheaply at many θ.
#[derive(Debug, Clone)]
pub struct OuterInnerFamily {
    through: Vec<Point>,
    /// Cumulative angle offsets: side `i` has direction `θ − offsets[i]`.
    offsets: Vec<f64>,
    angles: Vec<f64>,
}

impl OuterInnerFamily {
    pub fn new(w: &Polygon, v: &Polygon) -> Result<Self> {
        if w.len() != v.len() {
            return Err(GeomError::VertexCountMismatch {
                left: w.len(),
                right: v.len(),
            });
        }
        let angles = v.line_angles()?;
        Ok(Self::from_angles(w, angles))
    }

    /// Family built from explicit angles (in (0, π), summing to a multiple
    /// of π).
    pub fn from_angles(w: &Polygon, angles: Vec<f64>) -> Self {
        let n = angles.len();
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0.0;
        for (i, a) in angles.iter().enumerate() {
            acc += a;
            offsets.push(if i + 1 == n { 0.0 } else { acc });
        }
        OuterInnerFamily {
            through: w.vertices().to_vec(),
            offsets,
            angles,
        }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.through.len()
    }

    pub fn is_empty(&self) -> bool {
        self.through.is_empty()
    }

    pub fn side_direction(&self, theta: f64, i: usize) -> Point {
        Point::from_angle(theta - self.offsets[i])
    }

    fn polygon_from_lines(&self, theta: f64, turn: f64) -> Result<Polygon> {
        let n = self.len();
        let lines: Vec<DirectedLine> = (0..n)
            .map(|i| DirectedLine::from_angle(self.through[i], theta - self.offsets[i] + turn))
            .collect();
        let verts = (0..n)
            .map(|i| line_intersection(&lines[(i + n - 1) % n], &lines[i]))
            .collect::<Result<Vec<_>>>()?;
        Polygon::new(verts)
    }

    pub fn outer(&self, theta: f64) -> Result<Polygon> {
        self.polygon_from_lines(theta, 0.0)
    }

    pub fn inner(&self, theta: f64) -> Result<Polygon> {
        self.polygon_from_lines(theta, FRAC_PI_2)
    }

    pub fn pair(&self, theta: f64) -> Result<OuterInnerPair> {
        Ok(OuterInnerPair {
            theta,
            outer: self.outer(theta)?,
            inner: self.inner(theta)?,
            side_directions: (0..self.len())
                .map(|i| self.side_direction(theta, i))
                .collect(),
        })
    }

    pub fn area_sum(&self, theta: f64) -> Result<f64> {
        Ok(self.outer(theta)?.area() + self.inner(theta)?.area())
    }

    pub fn inner_diameter(&self, theta: f64) -> Result<f64> {
        Ok(self.inner(theta)?.diameter())
    }

    /// The θ-independent value of `area(O) + area(I)`, summed sector by
    /// sector about the origin:
    /// `2M_i = |W_i|² (cot A_i + cot A_{i+1})
    ///        + Σ_{j ∈ {i, i+1}} [det(W_{j−1}, W_j) − (W_{j−1} · W_j) cot A_j]`.
    pub fn closed_form_c(&self) -> f64 {
        let n = self.len();
        let w = &self.through;
        let cot: Vec<f64> = self.angles.iter().map(|a| a.cos() / a.sin()).collect();
        let edge = |j: usize| {
            let prev = w[(j + n - 1) % n];
            prev.cross(w[j]) - prev.dot(w[j]) * cot[j]
        };
        let twice: f64 = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                w[i].norm_sq() * (cot[i] + cot[j]) + edge(i) + edge(j)
            })
            .sum();
        0.5 * twice
    }
}

pub fn outer_polygon(w: &Polygon, v: &Polygon, theta: f64) -> Result<Polygon> {
    OuterInnerFamily::new(w, v)?.outer(theta)
}

pub fn inner_polygon(w: &Polygon, v: &Polygon, theta: f64) -> Result<Polygon> {
    OuterInnerFamily::new(w, v)?.inner(theta)
}

pub fn area_sum(w: &Polygon, v: &Polygon, theta: f64) -> Result<f64> {
    OuterInnerFamily::new(w, v)?.area_sum(theta)
}

pub fn closed_form_c(w: &Polygon, v: &Polygon) -> Result<f64> {
    Ok(OuterInnerFamily::new(w, v)?.closed_form_c())
}

pub fn inner_diameter(w: &Polygon, v: &Polygon, theta: f64) -> Result<f64> {
    OuterInnerFamily::new(w, v)?.inner_diameter(theta)
}

/// Angles in [0, 2π) where the inner polygon collapses to a point.
///
/// Triangles use the trigonometric root finder of [`pedal_center`]; larger
/// polygons scan the inner diameter and refine local minima, keeping those
/// below [`POINT_TOL`]` · diam(W)`. An empty result is valid for n ≥ 4.
pub fn find_degenerate_theta(w: &Polygon, v: &Polygon) -> Result<Vec<ThetaRoot>> {
    let family = OuterInnerFamily::new(w, v)?;
    if w.len() == 3 {
        let target = pedal_center::NormalizedTarget::new(w)?;
        let offset = target.frame_rotation();
        let roots = pedal_center::theta_roots(family.angles(), target.a, target.b);
        return Ok(roots
            .into_iter()
            .map(|(theta, residual)| ThetaRoot {
                theta0: (theta + offset).rem_euclid(TAU),
                residual,
                correspondence: Correspondence::default(),
                mirrored: false,
            })
            .collect());
    }
    let scale = w.diameter();
    let step = TAU / DEGENERACY_SCAN as f64;
    let samples: Vec<f64> = (0..DEGENERACY_SCAN)
        .into_par_iter()
        .map(|k| {
            family
                .inner_diameter(k as f64 * step)
                .unwrap_or(f64::INFINITY)
        })
        .collect();
    let m = samples.len();
    let mut roots = Vec::new();
    for k in 0..m {
        let here = samples[k];
        if here <= samples[(k + m - 1) % m] && here < samples[(k + 1) % m] {
            let lo = (k as f64 - 1.0) * step;
            let hi = (k as f64 + 1.0) * step;
            let f = |t: f64| family.inner_diameter(t).unwrap_or(f64::INFINITY);
            let (theta, value) = golden_section_min(f, lo, hi, 1e-14);
            if value < POINT_TOL * scale {
                roots.push(ThetaRoot {
                    theta0: theta.rem_euclid(TAU),
                    residual: value / scale,
                    correspondence: Correspondence::default(),
                    mirrored: false,
                });
            }
        }
    }
    roots.sort_by(|a, b| a.theta0.total_cmp(&b.theta0));
    Ok(roots)
}

/// Minimizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_min(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    [(c, fc), (d, fd), (mid, fm)]
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn line_angle_mod_pi(dir: Point) -> f64 {
        dir.angle().rem_euclid(PI)
    }

    fn tri(a: &[(f64, f64)]) -> Polygon {
        Polygon::from_xy(a).unwrap()
    }

    #[test]
    fn outer_has_v_angles_and_passes_through_w() {
        let v = tri(&[(0.0, 0.0), (5.0, 1.0), (1.5, 3.0)]);
        let w = tri(&[(0.2, -0.4), (2.0, 0.3), (0.7, 1.9)]);
        for theta in [0.0, 0.7, 2.5, 5.9] {
            let o = outer_polygon(&w, &v, theta).unwrap();
            for i in 0..3 {
                let got = o.vertex_angle(i).unwrap();
                assert!((got - v.vertex_angle(i).unwrap()).abs() < 1e-10);
                let l = o.side_line(i).unwrap();
                assert!(l.offset(w.vertices()[i]).abs() < 1e-12);
            }
            let dir = o.vertices()[2] - o.vertices()[0];
            let want = theta.rem_euclid(PI);
            let got = line_angle_mod_pi(dir);
            let diff = (got - want).rem_euclid(PI);
            assert!(diff < 1e-10 || PI - diff < 1e-10);
        }
    }

    #[test]
    fn inner_sides_perpendicular_to_outer() {
        let v = tri(&[(0.0, 0.0), (5.0, 1.0), (1.5, 3.0)]);
        let w = tri(&[(0.2, -0.4), (2.0, 0.3), (0.7, 1.9)]);
        let pair = OuterInnerFamily::new(&w, &v).unwrap().pair(1.1).unwrap();
        for i in 0..3 {
            let a = pair.outer.side_line(i).unwrap();
            let b = pair.inner.side_line(i).unwrap();
            assert!(a.dir.dot(b.dir).abs() < 1e-10);
            assert!(b.offset(w.vertices()[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn equilateral_outer() {
        let h = 3f64.sqrt() / 2.0;
        let eq = tri(&[(0.0, 0.0), (1.0, 0.0), (0.5, h)]);
        let o = outer_polygon(&eq, &eq, 0.0).unwrap();
        let s: Vec<f64> = (0..3).map(|i| o.side_length(i)).collect();
        assert!((s[0] - s[1]).abs() < 1e-12 && (s[1] - s[2]).abs() < 1e-12);
        // Side 3 (O_3 O_1) is horizontal.
        assert!((o.vertices()[2].y - o.vertices()[0].y).abs() < 1e-12);
    }

    #[test]
    fn inner_sides_follow_law_of_sines() {
        let v = tri(&[(0.0, 0.0), (5.0, 1.0), (1.5, 3.0)]);
        let w = tri(&[(0.2, -0.4), (2.0, 0.3), (0.7, 1.9)]);
        let ang = v.vertex_angles().unwrap();
        for theta in [0.4, 1.9, 3.3] {
            let inner = inner_polygon(&w, &v, theta).unwrap();
            // Side I_2 I_3 is opposite I_1, and so on.
            let r1 = inner.side_length(1) / ang[0].sin();
            let r2 = inner.side_length(2) / ang[1].sin();
            let r3 = inner.side_length(0) / ang[2].sin();
            assert!((r1 - r2).abs() < 1e-10 * r1 && (r2 - r3).abs() < 1e-10 * r1);
        }
    }

    #[test]
    fn area_sum_constant_and_matches_closed_form() {
        let v = tri(&[(0.0, 0.0), (5.0, 1.0), (1.5, 3.0)]);
        let w = tri(&[(0.2, -0.4), (2.0, 0.3), (0.7, 1.9)]);
        let c = closed_form_c(&w, &v).unwrap();
        let a = area_sum(&w, &v, 0.3).unwrap();
        let b = area_sum(&w, &v, 2.1).unwrap();
        assert!((a - b).abs() < 1e-12 * c.abs().max(1.0));
        assert!((a - c).abs() < 1e-12 * c.abs().max(1.0));
    }

    #[test]
    fn right_angles_use_cotangent_form() {
        let v = Polygon::from_xy(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)]).unwrap();
        let w = Polygon::from_xy(&[(0.1, 0.0), (1.3, 0.2), (0.9, 1.4), (-0.2, 0.8)]).unwrap();
        let c = closed_form_c(&w, &v).unwrap();
        assert!(c.is_finite());
        for theta in [0.0, 0.5, 1.0, 4.0] {
            assert!((area_sum(&w, &v, theta).unwrap() - c).abs() < 1e-12);
        }
    }

    #[test]
    fn inner_diameter_scales_linearly() {
        let v = tri(&[(0.0, 0.0), (5.0, 1.0), (1.5, 3.0)]);
        let w = tri(&[(0.2, -0.4), (2.0, 0.3), (0.7, 1.9)]);
        let d1 = inner_diameter(&w, &v, 0.8).unwrap();
        let d2 = inner_diameter(&w.map(|p| p * 3.0), &v, 0.8).unwrap();
        assert!(d1 > 0.0);
        assert!((d2 - 3.0 * d1).abs() < 1e-12 * d2);
    }

    #[test]
    fn triangle_degenerate_thetas() {
        let v = tri(&[(0.0, 0.0), (5.0, 1.0), (1.5, 3.0)]);
        let w = tri(&[(0.2, -0.4), (2.0, 0.3), (0.7, 1.9)]);
        let roots = find_degenerate_theta(&w, &v).unwrap();
        assert!(roots.len() >= 2);
        for r in &roots {
            let d = inner_diameter(&w, &v, r.theta0).unwrap();
            assert!(d < POINT_TOL * w.diameter(), "{d}");
        }
    }

    #[test]
    fn square_pair_degenerates() {
        let sq = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        let roots = find_degenerate_theta(&sq, &sq).unwrap();
        assert!(!roots.is_empty());
        // Oracle: a plain scan at 0.001 resolution also dips to zero near
        // every returned root.
        let fam = OuterInnerFamily::new(&sq, &sq).unwrap();
        for r in &roots {
            let mut best = f64::INFINITY;
            for k in -5..=5 {
                let t = r.theta0 + k as f64 * 0.001;
                best = best.min(fam.inner_diameter(t).unwrap());
            }
            assert!(best < 0.01, "{best}");
        }
    }

    #[test]
    fn golden_section_finds_kink() {
        let (x, fx) = golden_section_min(|t| (t - 0.3).abs(), 0.0, 1.0, 1e-14);
        assert!((x - 0.3).abs() < 1e-12 && fx < 1e-12);
    }
}
