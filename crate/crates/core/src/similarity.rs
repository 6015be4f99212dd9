//! Plane similarities and least-squares similarity fitting between vertex
//! tuples.
//!
//! Points are treated as complex numbers: a direct similarity is
//! `z ↦ a·z + b`, a reflecting one is `z ↦ a·conj(z) + b`, with
//! `a = scale · e^{i·rotation}`.

use serde::{Deserialize, Serialize};

use crate::point::Point;
use crate::polygon::Polygon;
use crate::DEFAULT_TOL;

fn cmul(a: Point, b: Point) -> Point {
    Point::new(a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x)
}

fn conj(a: Point) -> Point {
    Point::new(a.x, -a.y)
}

fn cinv(a: Point) -> Point {
    let d = a.norm_sq();
    Point::new(a.x / d, -a.y / d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    pub scale: f64,
    pub rotation: f64,
    pub translation: Point,
    pub reflecting: bool,
}

impl Default for Similarity {
    fn default() -> Self {
        Similarity::IDENTITY
    }
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        scale: 1.0,
        rotation: 0.0,
        translation: Point::ORIGIN,
        reflecting: false,
    };

    pub fn new(scale: f64, rotation: f64, translation: Point, reflecting: bool) -> Self {
        Similarity {
            scale,
            rotation,
            translation,
            reflecting,
        }
    }

    pub fn translation(t: Point) -> Self {
        Similarity {
            translation: t,
            ..Similarity::IDENTITY
        }
    }

    /// Reflection across the x axis.
    pub fn mirror_x() -> Self {
        Similarity {
            reflecting: true,
            ..Similarity::IDENTITY
        }
    }

    fn from_complex(a: Point, b: Point, reflecting: bool) -> Self {
        Similarity {
            scale: a.norm(),
            rotation: a.angle(),
            translation: b,
            reflecting,
        }
    }

    fn multiplier(&self) -> Point {
        Point::from_angle(self.rotation) * self.scale
    }

    pub fn apply(&self, p: Point) -> Point {
        let z = if self.reflecting { conj(p) } else { p };
        cmul(self.multiplier(), z) + self.translation
    }

    pub fn apply_polygon(&self, poly: &Polygon) -> Polygon {
        poly.map(|p| self.apply(p))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        let a1 = self.multiplier();
        let (a2, b2) = if self.reflecting {
            (conj(other.multiplier()), conj(other.translation))
        } else {
            (other.multiplier(), other.translation)
        };
        Similarity::from_complex(
            cmul(a1, a2),
            cmul(a1, b2) + self.translation,
            self.reflecting ^ other.reflecting,
        )
    }

    pub fn inverse(&self) -> Similarity {
        let a = self.multiplier();
        let b = self.translation;
        if self.reflecting {
            let ai = cinv(conj(a));
            Similarity::from_complex(ai, -conj(cmul(b, cinv(a))), true)
        } else {
            let ai = cinv(a);
            Similarity::from_complex(ai, -cmul(b, ai), false)
        }
    }
}

/// Vertex relabeling: vertex `i` of the target corresponds to vertex
/// `shift + i` (or `shift − i` when reversed) of the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Correspondence {
    pub shift: usize,
    pub reversed: bool,
}

impl Correspondence {
    pub fn source_index(&self, i: usize, n: usize) -> usize {
        if self.reversed {
            (self.shift + n - i % n) % n
        } else {
            (self.shift + i) % n
        }
    }

    /// Source polygon relabeled into target order.
    pub fn relabel(&self, poly: &Polygon) -> Polygon {
        let n = poly.len();
        let v = poly.vertices();
        Polygon::new((0..n).map(|i| v[self.source_index(i, n)]).collect())
            .expect("relabeling keeps vertex count")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityOptions {
    pub allow_reflection: bool,
    /// Also try cyclic shifts of the vertex labels.
    pub allow_cyclic_shift: bool,
    /// Also try reversed vertex order (combined with shifts when enabled).
    pub allow_reversal: bool,
    /// Relative to the target diameter.
    pub tol: f64,
}

impl Default for SimilarityOptions {
    fn default() -> Self {
        SimilarityOptions {
            allow_reflection: true,
            allow_cyclic_shift: false,
            allow_reversal: false,
            tol: DEFAULT_TOL,
        }
    }
}

impl SimilarityOptions {
    pub fn direct() -> Self {
        SimilarityOptions {
            allow_reflection: false,
            ..Default::default()
        }
    }

    pub fn any_labeling() -> Self {
        SimilarityOptions {
            allow_cyclic_shift: true,
            allow_reversal: true,
            ..Default::default()
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn correspondences(&self, n: usize) -> Vec<Correspondence> {
        let shifts = if self.allow_cyclic_shift { n } else { 1 };
        let mut out = Vec::new();
        for reversed in [false, true] {
            if reversed && !self.allow_reversal {
                continue;
            }
            for shift in 0..shifts {
                out.push(Correspondence { shift, reversed });
            }
        }
        out
    }
}

/// Result of fitting a similarity from one vertex tuple onto another.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityMatch {
    pub similarity: Similarity,
    pub correspondence: Correspondence,
    /// Root-mean-square residual divided by the target diameter.
    pub distance: f64,
    /// Largest vertex residual divided by the target diameter.
    pub max_deviation: f64,
}

fn fit(source: &[Point], target: &[Point], reflecting: bool, target_diam: f64) -> SimilarityMatch {
    let n = source.len() as f64;
    let z: Vec<Point> = if reflecting {
        source.iter().map(|&p| conj(p)).collect()
    } else {
        source.to_vec()
    };
    let zm = z.iter().fold(Point::ORIGIN, |s, &p| s + p) * (1.0 / n);
    let wm = target.iter().fold(Point::ORIGIN, |s, &p| s + p) * (1.0 / n);
    let mut num = Point::ORIGIN;
    let mut den = 0.0;
    for (&zi, &wi) in z.iter().zip(target) {
        let zc = zi - zm;
        num = num + cmul(conj(zc), wi - wm);
        den += zc.norm_sq();
    }
    let a = if den > 0.0 {
        num * (1.0 / den)
    } else {
        Point::ORIGIN
    };
    let b = wm - cmul(a, zm);
    let mut sq = 0.0;
    let mut worst: f64 = 0.0;
    for (&zi, &wi) in z.iter().zip(target) {
        let r = (cmul(a, zi) + b - wi).norm();
        sq += r * r;
        worst = worst.max(r);
    }
    let rms = (sq / n).sqrt();
    let (distance, max_deviation) = if target_diam > 0.0 {
        (rms / target_diam, worst / target_diam)
    } else if rms == 0.0 {
        (0.0, 0.0)
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    SimilarityMatch {
        similarity: Similarity::from_complex(a, b, reflecting),
        correspondence: Correspondence::default(),
        distance,
        max_deviation,
    }
}

/// Best least-squares similarity taking `source` onto `target` over every
/// enabled correspondence. `None` only on vertex-count mismatch.
pub fn best_similarity(
    source: &Polygon,
    target: &Polygon,
    opts: &SimilarityOptions,
) -> Option<SimilarityMatch> {
    if source.len() != target.len() {
        return None;
    }
    let n = source.len();
    let diam = target.diameter();
    let mut best: Option<SimilarityMatch> = None;
    for corr in opts.correspondences(n) {
        let relabeled = corr.relabel(source);
        for reflecting in [false, true] {
            if reflecting && !opts.allow_reflection {
                continue;
            }
            let mut m = fit(relabeled.vertices(), target.vertices(), reflecting, diam);
            m.correspondence = corr;
            if best.is_none_or(|b| m.distance < b.distance) {
                best = Some(m);
            }
        }
    }
    best
}

/// A similarity `T` and correspondence `σ` with
/// `max_i |T(V_σ(i)) − W_i| ≤ tol · diam(W)`, if one exists.
pub fn similarity_between(
    source: &Polygon,
    target: &Polygon,
    opts: &SimilarityOptions,
) -> Option<SimilarityMatch> {
    best_similarity(source, target, opts)
        .filter(|m| m.similarity.scale > 0.0 && m.max_deviation <= opts.tol)
}

/// Normalized least-squares residual of the best similarity fit of `v` onto
/// `w` (reflections allowed, labels fixed). Zero iff the two are similar.
pub fn similarity_distance(v: &Polygon, w: &Polygon) -> f64 {
    similarity_distance_with(v, w, &SimilarityOptions::default())
}

pub fn similarity_distance_with(v: &Polygon, w: &Polygon, opts: &SimilarityOptions) -> f64 {
    best_similarity(v, w, opts).map_or(f64::INFINITY, |m| m.distance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Polygon {
        Polygon::from_xy(&[(0.0, 0.0), (3.0, 0.5), (2.0, 2.0), (0.5, 1.5)]).unwrap()
    }

    #[test]
    fn scaled_copy() {
        let v = sample();
        let w = v.map(|p| p * 2.0 + Point::new(3.0, 3.0));
        let m = similarity_between(&v, &w, &SimilarityOptions::direct()).unwrap();
        assert!((m.similarity.scale - 2.0).abs() < 1e-12);
        assert!(m.similarity.translation.distance(Point::new(3.0, 3.0)) < 1e-12);
        assert!(m.similarity.rotation.abs() < 1e-12);
        assert!(similarity_distance(&v, &w) < 1e-15);
    }

    #[test]
    fn mirror_needs_reflection() {
        let v = sample();
        let w = v.map(|p| Point::new(-p.x, p.y));
        assert!(similarity_between(&v, &w, &SimilarityOptions::direct()).is_none());
        let m = similarity_between(&v, &w, &SimilarityOptions::default()).unwrap();
        assert!(m.similarity.reflecting);
    }

    #[test]
    fn rotation_recovered() {
        let v = sample();
        let w = v.map(|p| p.rotate(1.0));
        let m = similarity_between(&v, &w, &SimilarityOptions::direct()).unwrap();
        assert!((m.similarity.rotation - 1.0).abs() < 1e-12);
        assert!((m.similarity.scale - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_vs_rectangle() {
        let sq = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        let rect = Polygon::from_xy(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)]).unwrap();
        assert_eq!(similarity_distance(&sq, &sq), 0.0);
        let d = similarity_distance(&sq, &rect);
        // Brute-force the same least-squares problem over a fine grid of
        // scales and angles about the matched centroids.
        let c = rect.centroid();
        let sc = sq.centroid();
        let mut best = f64::INFINITY;
        for reflect in [false, true] {
            for k in 0..720 {
                let ang = k as f64 * std::f64::consts::PI / 360.0;
                for s in 0..400 {
                    let s = 1.0 + s as f64 * 0.0025;
                    let mut sum = 0.0;
                    for (p, q) in sq.vertices().iter().zip(rect.vertices()) {
                        let mut r = *p - sc;
                        if reflect {
                            r.y = -r.y;
                        }
                        let r = r.rotate(ang) * s + c;
                        sum += (r - *q).norm_sq();
                    }
                    best = best.min((sum / 4.0).sqrt());
                }
            }
        }
        let oracle = best / rect.diameter();
        assert!(d > 0.1);
        assert!((d - oracle).abs() < 1e-4, "{d} vs {oracle}");
    }

    #[test]
    fn cyclic_shift_option() {
        let v = sample();
        let w = v.shifted(2).map(|p| p * 0.5);
        assert!(similarity_distance(&v, &w) > 1e-3);
        let m = best_similarity(&v, &w, &SimilarityOptions::any_labeling()).unwrap();
        assert!(m.distance < 1e-14);
        assert_eq!(m.correspondence.shift, 2);
        let r = v.reversed();
        let m = best_similarity(&v, &r, &SimilarityOptions::any_labeling()).unwrap();
        assert!(m.distance < 1e-14);
        assert!(m.correspondence.reversed);
    }

    #[test]
    fn compose_and_inverse() {
        let s = Similarity::new(1.7, 0.4, Point::new(1.0, -2.0), true);
        let t = Similarity::new(0.3, -2.0, Point::new(0.5, 0.25), false);
        let p = Point::new(0.9, -1.3);
        let st = s.compose(&t);
        assert!(st.apply(p).distance(s.apply(t.apply(p))) < 1e-12);
        for q in [s, t, st] {
            assert!(q.inverse().apply(q.apply(p)).distance(p) < 1e-12);
            assert!(q.apply(q.inverse().apply(p)).distance(p) < 1e-12);
        }
    }
}
