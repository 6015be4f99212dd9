//! Explicit pedal-equivalence paths between quadrilaterals.
//!
//! Every quadrilateral is reached from the canonical square through the
//! chain square → rectangle → kite → isosceles trapezoid → simple quad →
//! crossed quad. The square → rectangle link is a two-point pedal path with
//! closed forms; the middle links are antipedal constructions read
//! backwards; the last one undoes an incenter pedal by same-point
//! repetition.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::pedal::{
    antipedal, iterated_pedal, pedal, replay_aligned, reversal_segments, PedalPath, Provenance,
    Segment,
};
use crate::point::{line_intersection, reflect_across, DirectedLine, Point};
use crate::polygon::Polygon;
use crate::similarity::{similarity_distance, Similarity};

/// Relative tolerance for side, angle and symmetry tests in the classifier.
pub const CLASSIFY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadTag {
    Square,
    Rectangle,
    Kite,
    IsoscelesTrapezoid,
    Simple,
    NonSimple,
}

impl QuadTag {
    pub const ALL: [QuadTag; 6] = [
        QuadTag::Square,
        QuadTag::Rectangle,
        QuadTag::Kite,
        QuadTag::IsoscelesTrapezoid,
        QuadTag::Simple,
        QuadTag::NonSimple,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            QuadTag::Square => "square",
            QuadTag::Rectangle => "rectangle",
            QuadTag::Kite => "kite",
            QuadTag::IsoscelesTrapezoid => "isosceles_trapezoid",
            QuadTag::Simple => "simple",
            QuadTag::NonSimple => "non_simple",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness {
    /// Diagonal intersection of a rectangle.
    Center(Point),
    /// Mirror axis of a kite (a diagonal) or of an isosceles trapezoid.
    Axis(DirectedLine),
    /// Crossing point of edges `edges.0` and `edges.1`.
    Crossing {
        point: Point,
        edges: (usize, usize),
    },
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadClass {
    pub tag: QuadTag,
    pub witness: Witness,
}

fn require_quad(q: &Polygon) -> Result<()> {
    if q.len() != 4 {
        return Err(GeomError::InvalidParameter(format!(
            "expected a quadrilateral, got {} vertices",
            q.len()
        )));
    }
    q.vertex_angles().map(|_| ())
}

fn diagonal_intersection(q: &Polygon) -> Result<Point> {
    let v = q.vertices();
    let d1 = DirectedLine::through(v[0], v[2])?;
    let d2 = DirectedLine::through(v[1], v[3])?;
    line_intersection(&d1, &d2)
}

/// Mirror axis through two opposite vertices, if any.
pub fn kite_axis(q: &Polygon, tol: f64) -> Option<DirectedLine> {
    let v = q.vertices();
    let eps = tol * q.diameter();
    (0..2).find_map(|k| {
        let axis = DirectedLine::through(v[k], v[k + 2]).ok()?;
        (reflect_across(v[k + 1], &axis).distance(v[(k + 3) % 4]) <= eps).then_some(axis)
    })
}

/// Mirror axis through the midpoints of two opposite sides, if any.
pub fn trapezoid_axis(q: &Polygon, tol: f64) -> Option<DirectedLine> {
    let v = q.vertices();
    let eps = tol * q.diameter();
    (0..2).find_map(|k| {
        let (a, b) = (v[k], v[k + 1]);
        let axis = DirectedLine::new(a.lerp(b, 0.5), (b - a).perp()).ok()?;
        (reflect_across(v[k + 2], &axis).distance(v[(k + 3) % 4]) <= eps).then_some(axis)
    })
}

fn is_rectangle(q: &Polygon, tol: f64) -> Result<bool> {
    Ok(q.vertex_angles()?
        .iter()
        .all(|a| (a - FRAC_PI_2).abs() <= tol))
}

/// Most specific class of a quadrilateral. Crossing takes precedence over
/// side and symmetry tests.
pub fn classify_quad(q: &Polygon) -> Result<QuadClass> {
    classify_quad_with_tol(q, CLASSIFY_TOL)
}

pub fn classify_quad_with_tol(q: &Polygon, tol: f64) -> Result<QuadClass> {
    require_quad(q)?;
    if let Some((i, j, point)) = q.self_intersection() {
        return Ok(QuadClass {
            tag: QuadTag::NonSimple,
            witness: Witness::Crossing {
                point,
                edges: (i, j),
            },
        });
    }
    if is_rectangle(q, tol)? {
        let sides: Vec<f64> = (0..4).map(|i| q.side_length(i)).collect();
        let max = sides.iter().cloned().fold(0.0, f64::max);
        let min = sides.iter().cloned().fold(f64::INFINITY, f64::min);
        let tag = if max - min <= tol * max {
            QuadTag::Square
        } else {
            QuadTag::Rectangle
        };
        return Ok(QuadClass {
            tag,
            witness: Witness::Center(diagonal_intersection(q)?),
        });
    }
    if let Some(axis) = kite_axis(q, tol) {
        return Ok(QuadClass {
            tag: QuadTag::Kite,
            witness: Witness::Axis(axis),
        });
    }
    if let Some(axis) = trapezoid_axis(q, tol) {
        return Ok(QuadClass {
            tag: QuadTag::IsoscelesTrapezoid,
            witness: Witness::Axis(axis),
        });
    }
    Ok(QuadClass {
        tag: QuadTag::Simple,
        witness: Witness::None,
    })
}

/// The square `(−1, t), (−1, t − 2), (1, t − 2), (1, t)`.
pub fn canonical_square(t: f64) -> Polygon {
    Polygon::from_xy(&[(-1.0, t), (-1.0, t - 2.0), (1.0, t - 2.0), (1.0, t)])
        .expect("finite coordinates")
}

/// Short side over long side, in (0, 1].
pub fn rectangle_aspect(r: &Polygon) -> f64 {
    let (a, b) = (r.side_length(0), r.side_length(1));
    a.min(b) / a.max(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TBranch {
    /// `t = 1 − √(1 − r)`, in (0, 1].
    #[default]
    Lower,
    /// `t = 1 + √(1 − r)`, in [1, 2).
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareToRectangle {
    pub t: f64,
    /// Pedal points for [`canonical_square`]`(t)`.
    pub points: [Point; 2],
}

impl SquareToRectangle {
    /// Points in the frame of `canonical_square(1.0)`.
    pub fn centered_points(&self) -> [Point; 2] {
        let shift = Point::new(0.0, 1.0 - self.t);
        self.points.map(|p| p + shift)
    }
}

/// Second pedal point `(0, 2(t − 1)/(−t² + 2t + 1))` for parameter `t`.
pub fn square_to_rectangle_point(t: f64) -> Point {
    Point::new(0.0, 2.0 * (t - 1.0) / (-t * t + 2.0 * t + 1.0))
}

/// Pedal points taking `canonical_square(t)` to a rectangle of aspect `r`,
/// where `r = −t(t − 2)`.
pub fn square_to_rectangle_path(r: f64, branch: TBranch) -> Result<SquareToRectangle> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(GeomError::InvalidParameter(format!(
            "aspect ratio {r} outside (0, 1]"
        )));
    }
    let root = (1.0 - r).sqrt();
    let t = match branch {
        TBranch::Lower => 1.0 - root,
        TBranch::Upper => 1.0 + root,
    };
    Ok(SquareToRectangle {
        t,
        points: [Point::ORIGIN, square_to_rectangle_point(t)],
    })
}

/// Rectangle `R` and point `X` with `P(R, X) = K`, `X` being the diagonal
/// intersection of the kite `K`.
pub fn kite_to_rectangle(k: &Polygon) -> Result<(Polygon, Point)> {
    require_quad(k)?;
    if kite_axis(k, CLASSIFY_TOL).is_none() {
        return Err(GeomError::WrongClass {
            expected: "kite",
            found: classify_quad(k)?.tag.name().into(),
        });
    }
    let x = diagonal_intersection(k)?;
    let r = antipedal(k, x)?;
    if !is_rectangle(&r, CLASSIFY_TOL)? {
        return Err(GeomError::WrongClass {
            expected: "rectangle",
            found: classify_quad(&r)?.tag.name().into(),
        });
    }
    Ok((r, x))
}

/// Kite `K` and point `X` with `P(K, X) = T` for an isosceles trapezoid `T`.
/// `X` is the diagonal intersection; other points on the mirror axis are
/// tried if that one degenerates.
pub fn trapezoid_to_kite(t: &Polygon) -> Result<(Polygon, Point)> {
    require_quad(t)?;
    let axis = trapezoid_axis(t, CLASSIFY_TOL).ok_or_else(|| GeomError::WrongClass {
        expected: "isosceles trapezoid",
        found: classify_quad(t)
            .map(|c| c.tag.name().to_string())
            .unwrap_or_else(|e| e.to_string()),
    })?;
    let diam = t.diameter();
    let mut candidates = Vec::new();
    if let Ok(x) = diagonal_intersection(t) {
        candidates.push(x);
    }
    let centre = foot_on(&axis, t.centroid());
    candidates.extend([0.0, 0.37, -0.37, 1.3, -1.3].map(|s| axis.point_at(centre + s * diam)));
    let mut last = GeomError::NoSimilarity;
    for x in candidates {
        match antipedal(t, x) {
            Ok(k) if kite_axis(&k, CLASSIFY_TOL).is_some() => return Ok((k, x)),
            Ok(k) => {
                last = GeomError::WrongClass {
                    expected: "kite",
                    found: classify_quad(&k)
                        .map(|c| c.tag.name().to_string())
                        .unwrap_or_else(|e| e.to_string()),
                }
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn foot_on(line: &DirectedLine, p: Point) -> f64 {
    (p - line.base).dot(line.dir)
}

/// Result of the equal-angle construction on a simple quadrilateral.
#[derive(Debug, Clone, PartialEq)]
pub struct TrapezoidWitness {
    pub trapezoid: Polygon,
    pub point: Point,
    /// Index `k` of the diagonal `L(W_k, W_{k+2})` that hosts the point.
    pub diagonal: usize,
}

/// Point `X` on a diagonal of the simple quad `W` at which the two remaining
/// vertices are seen at equal angles to the diagonal, together with the
/// isosceles trapezoid `AP(W, X)`.
pub fn simple_quad_to_trapezoid(w: &Polygon) -> Result<TrapezoidWitness> {
    Ok(trapezoid_witnesses(w)?.swap_remove(0))
}

/// The equal-angle construction on each diagonal that yields a trapezoid.
pub fn trapezoid_witnesses(w: &Polygon) -> Result<Vec<TrapezoidWitness>> {
    require_quad(w)?;
    if !w.is_simple() {
        return Err(GeomError::WrongClass {
            expected: "simple quadrilateral",
            found: "non_simple".into(),
        });
    }
    let v = w.vertices();
    let eps = 1e-9 * w.diameter();
    let mut last = GeomError::NoSimilarity;
    let mut found = Vec::new();
    for k in 0..2 {
        let diag = DirectedLine::through(v[k], v[k + 2])?;
        let mirrored = reflect_across(v[(k + 3) % 4], &diag);
        let x = DirectedLine::through(v[k + 1], mirrored)
            .and_then(|l| line_intersection(&l, &diag))
            .or_else(|_| diagonal_intersection(w));
        let x = match x {
            Ok(x) => x,
            Err(e) => {
                last = e;
                continue;
            }
        };
        if x.distance(v[k]) <= eps || x.distance(v[k + 2]) <= eps {
            last = GeomError::PointOnVertex(if x.distance(v[k]) <= eps { k } else { k + 2 });
            continue;
        }
        match antipedal(w, x) {
            Ok(t) if trapezoid_axis(&t, CLASSIFY_TOL).is_some() => found.push(TrapezoidWitness {
                trapezoid: t,
                point: x,
                diagonal: k,
            }),
            Ok(_) => {
                last = GeomError::WrongClass {
                    expected: "isosceles trapezoid",
                    found: "other".into(),
                }
            }
            Err(e) => last = e,
        }
    }
    if found.is_empty() {
        return Err(last);
    }
    Ok(found)
}

/// Result of simplifying a crossed quadrilateral.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplification {
    /// Incenter used as pedal point.
    pub point: Point,
    /// `P(W', point)`, a simple quadrilateral.
    pub simple: Polygon,
    pub crossing: Point,
    /// Side `i` of the triangle `(I, W'_i, W'_{i+1})`.
    pub side: usize,
}

/// Incenter of the triangle `abc`.
pub fn incenter(a: Point, b: Point, c: Point) -> Point {
    let (la, lb, lc) = (b.distance(c), c.distance(a), a.distance(b));
    (a * la + b * lb + c * lc) * (1.0 / (la + lb + lc))
}

/// Pedal a crossed quadrilateral at the incenter of a triangle formed by
/// its crossing point and one side, giving a simple quadrilateral. Returns
/// the first admissible side; [`simplifications`] lists all of them.
pub fn nonsimple_to_simple(w: &Polygon) -> Result<Simplification> {
    Ok(simplifications(w)?.swap_remove(0))
}

/// Every side whose incenter pedal gives a simple quadrilateral.
pub fn simplifications(w: &Polygon) -> Result<Vec<Simplification>> {
    require_quad(w)?;
    let (_, _, crossing) = w.self_intersection().ok_or_else(|| GeomError::WrongClass {
        expected: "non-simple quadrilateral",
        found: "simple".into(),
    })?;
    let diam = w.diameter();
    let mut found = Vec::new();
    for side in 0..4 {
        let (a, b) = (w.vertices()[side], w.next(side));
        let tri = Polygon::new(vec![crossing, a, b])?;
        if tri.area().abs() <= 1e-9 * diam * diam {
            continue;
        }
        let y = incenter(crossing, a, b);
        let q = pedal(w, y)?;
        if q.is_simple() && q.vertex_angles().is_ok() {
            found.push(Simplification {
                point: y,
                simple: q,
                crossing,
                side,
            });
        }
    }
    if found.is_empty() {
        return Err(GeomError::InvalidParameter(
            "no side yields a simple pedal quadrilateral".into(),
        ));
    }
    Ok(found)
}

/// One way of reducing a target to a rectangle.
struct Reduction {
    /// Segments from the rectangle to the target, in forward order.
    segments: Vec<Segment>,
    rect: Polygon,
    tags: Vec<QuadTag>,
}

/// Every reduction of `w` to a rectangle, over the admissible crossed sides
/// and diagonals.
fn reductions(w: &Polygon) -> Result<Vec<Reduction>> {
    let tag = classify_quad(w).map_err(|e| e.in_stage("classify"))?.tag;
    let mut states = vec![(Vec::new(), w.clone(), vec![tag], tag)];
    if tag == QuadTag::NonSimple {
        let options = simplifications(w).map_err(|e| e.in_stage("crossed to simple"))?;
        let mut next = Vec::new();
        for s in options {
            let tag = classify_quad(&s.simple)
                .map_err(|e| e.in_stage("classify"))?
                .tag;
            let back = vec![Segment {
                reference: s.simple.clone(),
                steps: vec![(s.point, Provenance::SimpleToCrossed); 3],
            }];
            next.push((back, s.simple, vec![QuadTag::NonSimple, tag], tag));
        }
        states = next;
    }
    let mut out = Vec::new();
    let mut last = None;
    for (back, cur, tags, tag) in states {
        match finish_reduction(back, cur, tags, tag) {
            Ok(mut r) => out.append(&mut r),
            Err(e) => last = Some(e),
        }
    }
    match (out.is_empty(), last) {
        (true, Some(e)) => Err(e),
        _ => Ok(out),
    }
}

fn finish_reduction(
    back: Vec<Segment>,
    cur: Polygon,
    tags: Vec<QuadTag>,
    tag: QuadTag,
) -> Result<Vec<Reduction>> {
    let mut states = vec![(back, cur, tags)];
    if tag == QuadTag::Simple {
        let (back, cur, tags) = states.pop().unwrap();
        let options = trapezoid_witnesses(&cur).map_err(|e| e.in_stage("quad to trapezoid"))?;
        for t in options {
            let mut back = back.clone();
            back.push(Segment {
                reference: t.trapezoid.clone(),
                steps: vec![(t.point, Provenance::TrapezoidToQuad)],
            });
            let mut tags = tags.clone();
            tags.push(QuadTag::IsoscelesTrapezoid);
            states.push((back, t.trapezoid, tags));
        }
    }
    let mut out = Vec::new();
    for (mut back, mut cur, mut tags) in states {
        let mut tag = *tags.last().unwrap();
        if tag == QuadTag::IsoscelesTrapezoid {
            let (k, x) = trapezoid_to_kite(&cur).map_err(|e| e.in_stage("trapezoid to kite"))?;
            back.push(Segment {
                reference: k.clone(),
                steps: vec![(x, Provenance::KiteToTrapezoid)],
            });
            cur = k;
            tag = QuadTag::Kite;
            tags.push(tag);
        }
        if tag == QuadTag::Kite {
            let (r, x) = kite_to_rectangle(&cur).map_err(|e| e.in_stage("kite to rectangle"))?;
            back.push(Segment {
                reference: r.clone(),
                steps: vec![(x, Provenance::RectangleToKite)],
            });
            cur = r;
            tags.push(QuadTag::Rectangle);
        }
        back.reverse();
        out.push(Reduction {
            segments: back,
            rect: cur,
            tags,
        });
    }
    Ok(out)
}

/// Relative distance under which a square-to-rectangle candidate counts as
/// matching the target rectangle's labels.
const RECT_MATCH: f64 = 1e-9;

/// Two-step paths from `canonical_square(1.0)` to a rectangle similar to
/// `rect` with matching labels, over both `t` branches and the four quarter
/// turns. If none matches, the closest one is returned alone.
fn rectangle_segments(rect: &Polygon) -> Result<Vec<(TBranch, Segment)>> {
    let r = rectangle_aspect(rect);
    let square = canonical_square(1.0);
    let mut candidates = Vec::new();
    for branch in [TBranch::Lower, TBranch::Upper] {
        let plan = square_to_rectangle_path(r, branch)?;
        if branch == TBranch::Upper && plan.t == 1.0 {
            break;
        }
        let base = plan.centered_points();
        for k in 0..4 {
            let turn = Similarity::new(1.0, k as f64 * FRAC_PI_2, Point::ORIGIN, false);
            let pts = base.map(|p| turn.apply(p));
            if let Ok(run) = iterated_pedal(&square, &pts) {
                candidates.push((similarity_distance(run.polygon(), rect), branch, pts));
            }
        }
    }
    let segment = |[x1, x2]: [Point; 2]| Segment {
        reference: square.clone(),
        steps: vec![
            (x1, Provenance::SquareToRectangleFirst),
            (x2, Provenance::SquareToRectangleSecond),
        ],
    };
    let matching: Vec<(TBranch, Segment)> = candidates
        .iter()
        .filter(|c| c.0 < RECT_MATCH)
        .map(|c| (c.1, segment(c.2)))
        .collect();
    if !matching.is_empty() {
        return Ok(matching);
    }
    candidates
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|c| vec![(c.1, segment(c.2))])
        .ok_or(GeomError::NoSimilarity)
}

/// A verified pedal path from [`canonical_square`]`(1.0)` to a target.
#[derive(Debug, Clone)]
pub struct QuadPath {
    pub path: PedalPath,
    /// Class of each polygon met while reducing the target, target first.
    pub reduction: Vec<QuadTag>,
    pub verification_distance: f64,
    /// Branch of the square-to-rectangle parameter used.
    pub branch: TBranch,
}

/// Replay distance a quadrilateral path must reach to count as certified.
pub const QUAD_VERIFY_TOL: f64 = 1e-7;

/// Every constructed path from the square to `w`, in construction order:
/// lower `t` branch first, then first admissible crossed side and diagonal.
pub fn quad_paths(w: &Polygon) -> Result<Vec<QuadPath>> {
    let square = canonical_square(1.0);
    let mut out = Vec::new();
    let mut last = None;
    for red in reductions(w)? {
        let heads = rectangle_segments(&red.rect).map_err(|e| e.in_stage("square to rectangle"))?;
        for (branch, head) in heads {
            let mut segments = vec![head];
            segments.extend(red.segments.iter().cloned());
            let built = replay_aligned(&square, &segments)
                .map_err(|e| e.in_stage("replay"))
                .and_then(|(mut path, _)| {
                    let d = path.verify(&square, w).map_err(|e| e.in_stage("verify"))?;
                    Ok(QuadPath {
                        path,
                        reduction: red.tags.clone(),
                        verification_distance: d,
                        branch,
                    })
                });
            match built {
                Ok(p) => out.push(p),
                Err(e) => last = Some(e),
            }
        }
    }
    if out.is_empty() {
        return Err(last.unwrap_or(GeomError::NoSimilarity));
    }
    out.sort_by_key(|p| p.branch == TBranch::Upper);
    Ok(out)
}

/// Pedal path from [`canonical_square`]`(1.0)` to a polygon similar to `w`:
/// the first constructed path that certifies, else the closest one.
pub fn quad_path(w: &Polygon) -> Result<QuadPath> {
    pick(quad_paths(w)?)
}

/// As [`quad_path`], restricted to one branch of the square-to-rectangle
/// parameter. Squares only have `t = 1`, which counts as the lower branch.
pub fn quad_path_on_branch(w: &Polygon, branch: TBranch) -> Result<QuadPath> {
    let paths: Vec<QuadPath> = quad_paths(w)?
        .into_iter()
        .filter(|p| p.branch == branch)
        .collect();
    if paths.is_empty() {
        return Err(GeomError::InvalidParameter(
            "target has no path on the requested branch".into(),
        ));
    }
    pick(paths)
}

fn pick(mut paths: Vec<QuadPath>) -> Result<QuadPath> {
    if let Some(i) = paths
        .iter()
        .position(|p| p.verification_distance < QUAD_VERIFY_TOL)
    {
        return Ok(paths.swap_remove(i));
    }
    paths
        .into_iter()
        .min_by(|a, b| a.verification_distance.total_cmp(&b.verification_distance))
        .ok_or(GeomError::NoSimilarity)
}

/// Search stops once a connecting path verifies below this distance.
const CONNECT_GOOD: f64 = 1e-10;

/// Pedal path from `v` to a polygon similar to `w`: back from `v` to the
/// canonical square, then forward to `w`. Undoing a path amplifies rounding,
/// so every pair of constructed paths is tried and the best one kept.
pub fn connect(v: &Polygon, w: &Polygon) -> Result<PedalPath> {
    let from_v = quad_paths(v).map_err(|e| e.in_stage("path to source"))?;
    let to_w = quad_paths(w).map_err(|e| e.in_stage("path to target"))?;
    let square = canonical_square(1.0);
    let mut best: Option<PedalPath> = None;
    let mut last = None;
    'search: for pv in &from_v {
        let v_points = pv.path.points();
        let run = iterated_pedal(&square, &v_points)?;
        let back = reversal_segments(&run, &v_points, Provenance::Reversal);
        for pw in &to_w {
            let mut segments = back.clone();
            segments.push(Segment {
                reference: square.clone(),
                steps: pw
                    .path
                    .steps
                    .iter()
                    .map(|s| (s.point, s.provenance))
                    .collect(),
            });
            let built = replay_aligned(v, &segments)
                .map_err(|e| e.in_stage("replay"))
                .and_then(|(mut path, _)| {
                    path.verify(v, w).map_err(|e| e.in_stage("verify"))?;
                    Ok(path)
                });
            match built {
                Ok(path) => {
                    let d = path.verification_distance.unwrap_or(f64::INFINITY);
                    if best
                        .as_ref()
                        .is_none_or(|b| d < b.verification_distance.unwrap_or(f64::INFINITY))
                    {
                        best = Some(path);
                    }
                    if d < CONNECT_GOOD {
                        break 'search;
                    }
                }
                Err(e) => last = Some(e),
            }
        }
    }
    best.ok_or_else(|| last.unwrap_or(GeomError::NoSimilarity))
}
