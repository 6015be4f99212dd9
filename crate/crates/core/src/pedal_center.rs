//! Pedal centers of triangle pairs: points `X` for which the pedal triangle
//! of `V` at `X` is similar to `W`.
//!
//! With `W` moved to `W_1 = (0, 0)`, `W_2 = (1, 0)`, `W_3 = (a, b)`, the
//! inner triangle `I(W, V, θ)` has signed area `½ f(θ) ℳ(θ)` where
//! `ℳ(θ) = sin A_1 cos(θ − A_1 − A_2) + sin A_2 (a cos θ + b sin θ)`.
//! At a root `θ₀` of `ℳ` the inner triangle shrinks to a point `X₀`, whose
//! pedal triangle in the outer triangle `O(W, V, θ₀)` is exactly `W`. Since
//! the outer triangle has the angles of `V`, carrying `X₀` through the
//! similarity `O → V` gives a pedal center of `V`.
//!
//! `ℳ` is first order in `cos θ, sin θ`, so it has two roots per period,
//! `π` apart, and both give the same side-lines. The twelve centers of a
//! generic pair come from the six relabelings of `W` combined with a direct
//! or mirrored copy of it.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::outer_inner::{OuterInnerFamily, POINT_TOL};
use crate::pedal::pedal;
use crate::point::Point;
use crate::polygon::Polygon;
use crate::similarity::{
    best_similarity, similarity_distance, Correspondence, Similarity, SimilarityOptions,
};

/// Grid used to bracket the roots of `ℳ` on [0, 2π).
pub const ROOT_GRID: usize = 2048;
/// Target `|ℳ(θ₀)|` after refinement.
pub const ROOT_RESIDUAL: f64 = 1e-12;
/// Largest acceptable pedal-similarity distance of a reported center.
pub const VERIFY_TOL: f64 = 1e-7;
/// Centers closer than this times `diam(V)` are merged.
pub const DEDUP_TOL: f64 = 1e-7;

/// `ℳ(θ)` for vertex angles `(A_1, A_2)` and normalized third vertex `(a, b)`.
pub fn script_m(theta: f64, angles: (f64, f64), a: f64, b: f64) -> f64 {
    let (a1, a2) = angles;
    a1.sin() * (theta - a1 - a2).cos() + a2.sin() * (a * theta.cos() + b * theta.sin())
}

/// `𝕄(θ)`, an antiderivative of [`script_m`].
pub fn antiderivative_m(theta: f64, angles: (f64, f64), a: f64, b: f64) -> f64 {
    let (a1, a2) = angles;
    a1.sin() * (theta - a1 - a2).sin() + a2.sin() * (a * theta.sin() - b * theta.cos())
}

/// A triangle moved so that its first two vertices sit at (0, 0) and (1, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedTarget {
    pub a: f64,
    pub b: f64,
    /// Direct similarity taking the original triangle onto the canonical one.
    pub normalizer: Similarity,
}

impl NormalizedTarget {
    pub fn new(w: &Polygon) -> Result<Self> {
        if w.len() != 3 {
            return Err(GeomError::InvalidParameter(format!(
                "expected a triangle, got {} vertices",
                w.len()
            )));
        }
        let v = w.vertices();
        let base = v[1] - v[0];
        let len = base.norm();
        if len == 0.0 {
            return Err(GeomError::CoincidentPoints);
        }
        let rotation = -base.angle();
        let scale = 1.0 / len;
        let normalizer = Similarity::new(scale, rotation, -(v[0].rotate(rotation) * scale), false);
        let third = normalizer.apply(v[2]);
        if third.y.abs() <= 1e-12 * third.norm().max(1.0) {
            return Err(GeomError::Collinear(0, 1, 2));
        }
        Ok(NormalizedTarget {
            a: third.x,
            b: third.y,
            normalizer,
        })
    }

    pub fn canonical(&self) -> Polygon {
        Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (self.a, self.b)]).expect("three finite points")
    }

    /// Angle to add to a canonical-frame θ to get the same outer triangle
    /// for the original target.
    pub fn frame_rotation(&self) -> f64 {
        -self.normalizer.rotation
    }
}

/// Relabeling of the target triangle, optionally mirrored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Labeling {
    pub correspondence: Correspondence,
    pub mirrored: bool,
}

impl Labeling {
    /// All 12 labelings: 3 shifts × reversal × mirror.
    pub fn all() -> Vec<Labeling> {
        let mut out = Vec::with_capacity(12);
        for mirrored in [false, true] {
            for reversed in [false, true] {
                for shift in 0..3 {
                    out.push(Labeling {
                        correspondence: Correspondence { shift, reversed },
                        mirrored,
                    });
                }
            }
        }
        out
    }

    /// `W` in the vertex order this labeling matches against `P(V, X)`.
    pub fn relabel(&self, w: &Polygon) -> Polygon {
        self.correspondence.relabel(w)
    }

    fn construction_target(&self, w: &Polygon) -> Polygon {
        let r = self.relabel(w);
        if self.mirrored {
            Similarity::mirror_x().apply_polygon(&r)
        } else {
            r
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaRoot {
    /// In [0, 2π), in the frame of the (normalized) target.
    pub theta0: f64,
    /// `|ℳ(θ₀)|` for triangles; relative inner diameter otherwise.
    pub residual: f64,
    pub correspondence: Correspondence,
    pub mirrored: bool,
}

impl ThetaRoot {
    pub fn labeling(&self) -> Labeling {
        Labeling {
            correspondence: self.correspondence,
            mirrored: self.mirrored,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PedalCenter {
    pub point: Point,
    pub theta_root: ThetaRoot,
    /// `similarity_distance(P(V, point), relabeled W)`.
    pub verification: f64,
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut flo = f(lo);
    let mut best = if flo.abs() <= f(hi).abs() {
        (lo, flo)
    } else {
        (hi, f(hi))
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm.abs() < best.1.abs() {
            best = (mid, fm);
        }
        if fm == 0.0 {
            break;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (best.0, best.1.abs())
}

/// Amplitude of `ℳ`, written as `P cos θ + Q sin θ`, relative to the size
/// of its terms.
pub fn script_m_amplitude(angles: (f64, f64), a: f64, b: f64) -> f64 {
    let (a1, a2) = angles;
    let p = a1.sin() * (a1 + a2).cos() + a2.sin() * a;
    let q = a1.sin() * (a1 + a2).sin() + a2.sin() * b;
    p.hypot(q) / (a1.sin() + a2.sin() * a.hypot(b))
}

/// Roots of `ℳ` on [0, 2π) as `(θ₀, |ℳ(θ₀)|)`: sign changes on a
/// [`ROOT_GRID`] grid, refined by bisection. An interval without a sign
/// change whose midpoint has the opposite sign is split once and both halves
/// are refined.
///
/// When `ℳ` vanishes identically the inner triangle is a point for every θ
/// and no center is isolated; the result is then empty.
pub fn theta_roots(angles: &[f64], a: f64, b: f64) -> Vec<(f64, f64)> {
    let pair = (angles[0], angles[1]);
    if script_m_amplitude(pair, a, b) < 1e-10 {
        return Vec::new();
    }
    let f = |t: f64| script_m(t, pair, a, b);
    let step = TAU / ROOT_GRID as f64;
    let mut roots = Vec::new();
    for k in 0..ROOT_GRID {
        let lo = k as f64 * step;
        let hi = lo + step;
        let (flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            roots.push((lo, 0.0));
            continue;
        }
        if fhi == 0.0 {
            continue;
        }
        if (flo < 0.0) != (fhi < 0.0) {
            roots.push(bisect(&f, lo, hi));
        } else {
            let mid = 0.5 * (lo + hi);
            let fm = f(mid);
            if fm != 0.0 && (fm < 0.0) != (flo < 0.0) {
                roots.push(bisect(&f, lo, mid));
                roots.push(bisect(&f, mid, hi));
            }
        }
    }
    roots
        .into_iter()
        .map(|(t, r)| (t.rem_euclid(TAU), r))
        .collect()
}

fn check_triangles(v: &Polygon, w: &Polygon) -> Result<Vec<f64>> {
    for p in [v, w] {
        if p.len() != 3 {
            return Err(GeomError::InvalidParameter(format!(
                "expected a triangle, got {} vertices",
                p.len()
            )));
        }
    }
    w.vertex_angle(0)?;
    v.vertex_angles()
}

/// Roots of `ℳ` for `W` under `labeling`.
pub fn find_theta_roots(v: &Polygon, w: &Polygon, labeling: Labeling) -> Result<Vec<ThetaRoot>> {
    let angles = check_triangles(v, w)?;
    let target = NormalizedTarget::new(&labeling.construction_target(w))?;
    Ok(theta_roots(&angles, target.a, target.b)
        .into_iter()
        .map(|(theta0, residual)| ThetaRoot {
            theta0,
            residual,
            correspondence: labeling.correspondence,
            mirrored: labeling.mirrored,
        })
        .collect())
}

/// The pedal center belonging to `root`.
pub fn pedal_center(v: &Polygon, w: &Polygon, root: &ThetaRoot) -> Result<PedalCenter> {
    let angles = check_triangles(v, w)?;
    let labeling = root.labeling();
    let target = NormalizedTarget::new(&labeling.construction_target(w))?;
    let canonical = target.canonical();
    let family = OuterInnerFamily::from_angles(&canonical, angles);
    let outer = family.outer(root.theta0)?;
    let inner = family.inner(root.theta0)?;
    let diameter = inner.diameter();
    if diameter >= POINT_TOL * canonical.diameter() {
        return Err(GeomError::NoCollapse {
            theta: root.theta0,
            diameter,
        });
    }
    let to_v = best_similarity(&outer, v, &SimilarityOptions::default())
        .expect("equal vertex counts")
        .similarity;
    let point = to_v.apply(inner.centroid());
    let verification = similarity_distance(&pedal(v, point)?, &labeling.relabel(w));
    Ok(PedalCenter {
        point,
        theta_root: *root,
        verification,
    })
}

/// Distinct pedal centers of `V` with respect to `W` over all twelve
/// labelings. Generic pairs give exactly twelve.
pub fn all_pedal_centers(v: &Polygon, w: &Polygon) -> Result<Vec<PedalCenter>> {
    check_triangles(v, w)?;
    let per_labeling: Vec<Result<Vec<PedalCenter>>> = Labeling::all()
        .into_par_iter()
        .map(|labeling| {
            find_theta_roots(v, w, labeling)?
                .iter()
                .map(|root| pedal_center(v, w, root))
                .collect()
        })
        .collect();
    let radius = DEDUP_TOL * v.diameter();
    let mut out: Vec<PedalCenter> = Vec::new();
    for centers in per_labeling {
        for c in centers? {
            if out.iter().all(|o| o.point.distance(c.point) > radius) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn equilateral_script_m() {
        let h = 3f64.sqrt() / 2.0;
        let ang = (FRAC_PI_3, FRAC_PI_3);
        for k in 0..50 {
            let t = k as f64 * 0.13 - 2.0;
            // sin 60° [cos(θ − 120°) + cos(θ − 60°)]
            let closed = FRAC_PI_3.sin() * ((t - 2.0 * FRAC_PI_3).cos() + (t - FRAC_PI_3).cos());
            assert!((script_m(t, ang, 0.5, h) - closed).abs() < 1e-14);
            assert!((script_m(t + TAU, ang, 0.5, h) - script_m(t, ang, 0.5, h)).abs() < 1e-13);
        }
        let roots = theta_roots(&[FRAC_PI_3, FRAC_PI_3], 0.5, h);
        assert!(
            roots.iter().any(|&(t, _)| t.min(TAU - t) < 1e-12),
            "{roots:?}"
        );
    }

    #[test]
    fn roots_match_closed_form() {
        // ℳ = P cos θ + Q sin θ, so the roots are atan2(−P, Q) and that + π.
        let (a1, a2, a, b): (f64, f64, f64, f64) = (0.7, 1.1, 0.3, -0.8);
        let p = a1.sin() * (a1 + a2).cos() + a2.sin() * a;
        let q = a1.sin() * (a1 + a2).sin() + a2.sin() * b;
        let r0 = (-p).atan2(q).rem_euclid(std::f64::consts::PI);
        let roots = theta_roots(&[a1, a2], a, b);
        assert_eq!(roots.len(), 2);
        assert!((roots[0].0 - r0).abs() < 1e-12);
        assert!((roots[1].0 - r0 - std::f64::consts::PI).abs() < 1e-12);
        assert!(roots.iter().all(|r| r.1 < ROOT_RESIDUAL));
    }

    #[test]
    fn normalized_target() {
        let w = Polygon::from_xy(&[(1.0, 2.0), (3.0, 3.0), (0.5, 4.0)]).unwrap();
        let t = NormalizedTarget::new(&w).unwrap();
        let c = t.normalizer.apply_polygon(&w);
        assert!(c.max_vertex_distance(&t.canonical()).unwrap() < 1e-14);
        let flat = Polygon::from_xy(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]).unwrap();
        assert!(NormalizedTarget::new(&flat).is_err());
    }

    #[test]
    fn similar_pair_contains_circumcenter() {
        let v = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (1.0, 3.0)]).unwrap();
        let w = v.map(|p| p.rotate(0.4) * 0.3);
        let centers = all_pedal_centers(&v, &w).unwrap();
        assert!(centers.iter().all(|c| c.verification < VERIFY_TOL));
        assert!(centers
            .iter()
            .any(|c| c.point.distance(Point::new(2.0, 1.0)) < 1e-9));
    }

    #[test]
    fn generic_pair_has_twelve() {
        let v = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.3), (1.0, 3.0)]).unwrap();
        let w = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.2, 0.7)]).unwrap();
        let centers = all_pedal_centers(&v, &w).unwrap();
        assert_eq!(centers.len(), 12);
        assert!(centers.iter().all(|c| c.verification < VERIFY_TOL));
    }

    #[test]
    fn equilateral_pair_collapses() {
        let h = 3f64.sqrt() / 2.0;
        let eq = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.5, h)]).unwrap();
        let centers = all_pedal_centers(&eq, &eq).unwrap();
        assert!(centers.len() < 12);
        // The center itself; the second isodynamic point is at infinity.
        let c = eq.centroid();
        assert!(centers.iter().any(|x| x.point.distance(c) < 1e-12));
        assert!(centers.iter().all(|c| c.verification < VERIFY_TOL));
    }
}
