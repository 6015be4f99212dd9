//! Seeded generators for polygons and similarities, used by the search
//! mode, the benches and the property tests.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::point::Point;
use crate::polygon::Polygon;
use crate::quad::{classify_quad, QuadTag};
use crate::similarity::Similarity;

pub fn point_in_disk<R: Rng + ?Sized>(rng: &mut R, center: Point, radius: f64) -> Point {
    let r = radius * rng.gen::<f64>().sqrt();
    center + Point::from_angle(rng.gen_range(0.0..TAU)) * r
}

pub fn similarity<R: Rng + ?Sized>(rng: &mut R, allow_reflection: bool) -> Similarity {
    Similarity::new(
        rng.gen_range(0.2..5.0),
        rng.gen_range(-PI..PI),
        Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)),
        allow_reflection && rng.gen_bool(0.5),
    )
}

fn angles_ok(p: &Polygon, min_angle: f64) -> bool {
    match p.line_angles() {
        Ok(a) => a.iter().all(|&x| x >= min_angle && x <= PI - min_angle),
        Err(_) => false,
    }
}

/// Triangle inside the unit disk with every angle at least `min_angle`.
pub fn triangle<R: Rng + ?Sized>(rng: &mut R, min_angle: f64) -> Polygon {
    loop {
        let v: Vec<Point> = (0..3)
            .map(|_| point_in_disk(rng, Point::ORIGIN, 1.0))
            .collect();
        let p = Polygon::new(v).expect("finite");
        if angles_ok(&p, min_angle) && p.diameter() > 0.3 {
            return p;
        }
    }
}

/// Star-shaped simple n-gon around the origin with all side-line angles in
/// `[min_angle, π − min_angle]`.
pub fn star_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize, min_angle: f64) -> Polygon {
    loop {
        let mut ang: Vec<f64> = (0..n)
            .map(|k| (k as f64 + rng.gen_range(-0.35..0.35)) * TAU / n as f64)
            .collect();
        ang.sort_by(f64::total_cmp);
        let v = ang
            .iter()
            .map(|&a| Point::from_angle(a) * rng.gen_range(0.5..1.5))
            .collect();
        let p = Polygon::new(v).expect("finite");
        if angles_ok(&p, min_angle) {
            return p;
        }
    }
}

/// n arbitrary points in the unit disk, not necessarily simple.
pub fn loose_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Polygon {
    loop {
        let v = (0..n)
            .map(|_| point_in_disk(rng, Point::ORIGIN, 1.0))
            .collect();
        let p = Polygon::new(v).expect("finite");
        if angles_ok(&p, 0.05) {
            return p;
        }
    }
}

fn raw_quad<R: Rng + ?Sized>(rng: &mut R, tag: QuadTag) -> Polygon {
    let q = |c: &[(f64, f64)]| Polygon::from_xy(c).expect("finite");
    match tag {
        QuadTag::Square => q(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]),
        QuadTag::Rectangle => {
            let w = rng.gen_range(1.2..4.0);
            q(&[(0.0, 0.0), (w, 0.0), (w, 1.0), (0.0, 1.0)])
        }
        QuadTag::Kite => {
            let p = rng.gen_range(0.3..2.0);
            let s = rng.gen_range(0.3..2.0);
            let h = rng.gen_range(0.3..1.5);
            q(&[(0.0, 0.0), (p, h), (p + s, 0.0), (p, -h)])
        }
        QuadTag::IsoscelesTrapezoid => {
            let a = rng.gen_range(0.5..2.0);
            let b = rng.gen_range(0.2..1.8);
            let h = rng.gen_range(0.4..2.0);
            q(&[(-a, 0.0), (a, 0.0), (b, h), (-b, h)])
        }
        QuadTag::Simple => star_polygon(rng, 4, 0.2),
        QuadTag::NonSimple => {
            let s = star_polygon(rng, 4, 0.2);
            let v = s.vertices();
            Polygon::new(vec![v[0], v[2], v[1], v[3]]).expect("finite")
        }
    }
}

/// Random quadrilateral of the given class under a random similarity.
pub fn quad<R: Rng + ?Sized>(rng: &mut R, tag: QuadTag) -> Polygon {
    loop {
        let t = similarity(rng, true);
        let p = t.apply_polygon(&raw_quad(rng, tag));
        let ok = classify_quad(&p).is_ok_and(|c| c.tag == tag);
        if ok && angles_ok(&p, 0.1) {
            return p;
        }
    }
}
