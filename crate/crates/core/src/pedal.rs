//! Pedal and antipedal maps, iterated pedal sequences and path reversal.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::point::{foot_of_perpendicular, line_intersection, DirectedLine, Point};
use crate::polygon::Polygon;
use crate::similarity::{best_similarity, similarity_distance, Similarity, SimilarityOptions};
use crate::DEFAULT_TOL;

/// Pedal polygon of `v` with respect to `x`: vertex `i` is the foot of the
/// perpendicular from `x` to the line through `V_i` and `V_{i+1}`.
pub fn pedal(v: &Polygon, x: Point) -> Result<Polygon> {
    let feet = (0..v.len())
        .map(|i| v.side_line(i).map(|l| foot_of_perpendicular(x, &l)))
        .collect::<Result<Vec<_>>>()?;
    Polygon::new(feet)
}

/// Like [`pedal`], but also rejects an output whose consecutive vertices
/// coincide within `tol · diam(v)`.
pub fn pedal_checked(v: &Polygon, x: Point, tol: f64) -> Result<Polygon> {
    let p = pedal(v, x)?;
    let eps = tol * v.diameter();
    for i in 0..p.len() {
        if p.side_length(i) <= eps {
            return Err(GeomError::DegenerateSide { side: i });
        }
    }
    Ok(p)
}

/// Antipedal polygon of `v` with respect to `x`: side-line `i` passes
/// through `V_i` perpendicular to `L(X, V_i)`. Inverse of [`pedal`] at the
/// same point.
pub fn antipedal(v: &Polygon, x: Point) -> Result<Polygon> {
    let eps = DEFAULT_TOL * v.diameter().max(x.norm());
    let lines = v
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &vi)| {
            let d = vi - x;
            if d.norm() <= eps {
                return Err(GeomError::PointOnVertex(i));
            }
            DirectedLine::new(vi, d.perp())
        })
        .collect::<Result<Vec<_>>>()?;
    let n = lines.len();
    let verts = (0..n)
        .map(|i| line_intersection(&lines[(i + n - 1) % n], &lines[i]))
        .collect::<Result<Vec<_>>>()?;
    Polygon::new(verts)
}

/// Every polygon along an iterated pedal: `stages[0]` is the source and
/// `stages[k]` the result after `k` steps.
#[derive(Debug, Clone)]
pub struct IteratedPedal {
    pub stages: Vec<Polygon>,
}

impl IteratedPedal {
    pub fn polygon(&self) -> &Polygon {
        self.stages.last().expect("at least the source polygon")
    }

    pub fn into_polygon(mut self) -> Polygon {
        self.stages.pop().expect("at least the source polygon")
    }
}

/// Fold [`pedal`] over `points`. Fails naming the first step (1-based)
/// whose input or output degenerates.
pub fn iterated_pedal(v: &Polygon, points: &[Point]) -> Result<IteratedPedal> {
    iterated_pedal_with_tol(v, points, DEFAULT_TOL)
}

/// [`iterated_pedal`] with the side-collapse tolerance of [`pedal_checked`].
pub fn iterated_pedal_with_tol(v: &Polygon, points: &[Point], tol: f64) -> Result<IteratedPedal> {
    let mut stages = Vec::with_capacity(points.len() + 1);
    stages.push(v.clone());
    for (k, &x) in points.iter().enumerate() {
        let next = pedal_checked(stages.last().unwrap(), x, tol).map_err(|e| e.at_step(k + 1))?;
        stages.push(next);
    }
    Ok(IteratedPedal { stages })
}

/// Which construction produced a step of a [`PedalPath`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Given,
    /// One of the `n − 1` repeats that undo an earlier pedal step.
    Reversal,
    SquareToRectangleFirst,
    SquareToRectangleSecond,
    RectangleToKite,
    KiteToTrapezoid,
    TrapezoidToQuad,
    /// Repeats undoing the incenter pedal that simplified a crossed quad.
    SimpleToCrossed,
    Search,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Given => "given",
            Provenance::Reversal => "reversal",
            Provenance::SquareToRectangleFirst => "square-to-rectangle-first",
            Provenance::SquareToRectangleSecond => "square-to-rectangle-second",
            Provenance::RectangleToKite => "rectangle-to-kite",
            Provenance::KiteToTrapezoid => "kite-to-trapezoid",
            Provenance::TrapezoidToQuad => "trapezoid-to-quad",
            Provenance::SimpleToCrossed => "simple-to-crossed",
            Provenance::Search => "search",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PedalStep {
    pub point: Point,
    pub provenance: Provenance,
}

/// A sequence of pedal points with provenance.
///
/// `alignments[k]` is the similarity that carried step `k`'s point from the
/// frame it was constructed in into the frame of the replayed polygon.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PedalPath {
    pub steps: Vec<PedalStep>,
    #[serde(skip)]
    pub alignments: Vec<Similarity>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification_distance: Option<f64>,
}

impl PedalPath {
    pub fn from_points(points: &[Point], provenance: Provenance) -> Self {
        PedalPath {
            steps: points
                .iter()
                .map(|&point| PedalStep { point, provenance })
                .collect(),
            alignments: vec![Similarity::IDENTITY; points.len()],
            verification_distance: None,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn points(&self) -> Vec<Point> {
        self.steps.iter().map(|s| s.point).collect()
    }

    pub fn replay(&self, source: &Polygon) -> Result<IteratedPedal> {
        iterated_pedal(source, &self.points())
    }

    /// Replays from `source`, stores and returns
    /// `similarity_distance(result, target)`.
    pub fn verify(&mut self, source: &Polygon, target: &Polygon) -> Result<f64> {
        let out = self.replay(source)?;
        let d = similarity_distance(out.polygon(), target);
        self.verification_distance = Some(d);
        Ok(d)
    }

    pub fn extend(&mut self, other: PedalPath) {
        self.steps.extend(other.steps);
        self.alignments.extend(other.alignments);
    }
}

/// A run of pedal points constructed against `reference`.
#[derive(Debug, Clone)]
pub struct Segment {
    pub reference: Polygon,
    pub steps: Vec<(Point, Provenance)>,
}

/// Replays segments starting at `start`. Before each segment the similarity
/// from its reference polygon onto the current polygon is fitted, and the
/// segment's points are carried through it. Returns the path and the final
/// polygon.
pub fn replay_aligned(start: &Polygon, segments: &[Segment]) -> Result<(PedalPath, Polygon)> {
    let mut current = start.clone();
    let mut path = PedalPath::default();
    let mut step = 0;
    for seg in segments {
        let align = best_similarity(&seg.reference, &current, &SimilarityOptions::default())
            .ok_or(GeomError::VertexCountMismatch {
                left: seg.reference.len(),
                right: current.len(),
            })?
            .similarity;
        for &(x, provenance) in &seg.steps {
            step += 1;
            let point = align.apply(x);
            current = pedal_checked(&current, point, DEFAULT_TOL).map_err(|e| e.at_step(step))?;
            path.steps.push(PedalStep { point, provenance });
            path.alignments.push(align);
        }
    }
    Ok((path, current))
}

/// Points `S'` with `P(P(V, S), S')` similar to `V`.
///
/// `n` same-point pedals return a similar copy, so a run of `m` equal
/// points is undone by `(n − m) mod n` more pedals at that point, applied
/// to the polygon the run produced. Runs are undone last first; later
/// points are carried through the fitted similarity between the recovered
/// copy and the original intermediate.
pub fn reverse_path(v: &Polygon, points: &[Point]) -> Result<Vec<Point>> {
    Ok(reverse_path_steps(v, points, Provenance::Reversal)?
        .0
        .points())
}

pub(crate) fn reverse_path_steps(
    v: &Polygon,
    points: &[Point],
    provenance: Provenance,
) -> Result<(PedalPath, Polygon)> {
    let run = iterated_pedal(v, points)?;
    replay_aligned(run.polygon(), &reversal_segments(&run, points, provenance))
}

/// Similarity distance below which a run is treated as already undone.
const SKIP_TOL: f64 = 1e-12;

/// Segments undoing `run` (produced by `points`), one per run of equal
/// points, last first. Runs whose output is already similar to their input
/// are skipped; replay alignment absorbs the similarity.
pub fn reversal_segments(
    run: &IteratedPedal,
    points: &[Point],
    provenance: Provenance,
) -> Vec<Segment> {
    let n = run.stages[0].len();
    let mut segments = Vec::new();
    let mut end = points.len();
    while end > 0 {
        let x = points[end - 1];
        let mut start = end - 1;
        while start > 0 && points[start - 1] == x {
            start -= 1;
        }
        let repeats = (n - (end - start) % n) % n;
        let trivial = similarity_distance(&run.stages[end], &run.stages[start]) < SKIP_TOL;
        if repeats > 0 && !trivial {
            segments.push(Segment {
                reference: run.stages[end].clone(),
                steps: vec![(x, provenance); repeats],
            });
        }
        end = start;
    }
    segments
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Polygon, b: &Polygon, tol: f64) -> bool {
        a.max_vertex_distance(b).unwrap() < tol
    }

    #[test]
    fn pedal_at_circumcenter_is_medial() {
        let v = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (1.0, 3.0)]).unwrap();
        // Circumcenter of this triangle.
        let c = Point::new(2.0, 1.0);
        let p = pedal(&v, c).unwrap();
        let mids = Polygon::new(
            (0..3)
                .map(|i| v.vertices()[i].lerp(v.next(i), 0.5))
                .collect(),
        )
        .unwrap();
        assert!(close(&p, &mids, 1e-14));
    }

    #[test]
    fn pedal_at_incenter() {
        let v = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]).unwrap();
        let p = pedal(&v, Point::new(1.0, 1.0)).unwrap();
        let want = Polygon::from_xy(&[(1.0, 0.0), (1.6, 1.8), (0.0, 1.0)]).unwrap();
        assert!(close(&p, &want, 1e-14));
    }

    #[test]
    fn pedal_of_square_at_center() {
        let sq = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        let p = pedal(&sq, Point::new(0.5, 0.5)).unwrap();
        let want = Polygon::from_xy(&[(0.5, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 0.5)]).unwrap();
        assert!(close(&p, &want, 1e-15));
    }

    #[test]
    fn pedal_rejects_repeated_vertex() {
        let v = Polygon::from_xy(&[(0.0, 0.0), (0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert_eq!(
            pedal(&v, Point::ORIGIN),
            Err(GeomError::DegenerateSide { side: 0 })
        );
    }

    #[test]
    fn antipedal_of_square_at_center() {
        let sq = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        let c = Point::new(0.5, 0.5);
        let a = antipedal(&sq, c).unwrap();
        // Lines through the corners perpendicular to the half-diagonals form a
        // square rotated by 45 degrees with twice the area.
        let want = Polygon::from_xy(&[(-0.5, 0.5), (0.5, -0.5), (1.5, 0.5), (0.5, 1.5)]).unwrap();
        assert!(close(&a, &want, 1e-14));
        assert!(close(&pedal(&a, c).unwrap(), &sq, 1e-14));
    }

    #[test]
    fn antipedal_errors() {
        let sq = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        assert_eq!(
            antipedal(&sq, Point::new(1.0, 0.0)),
            Err(GeomError::PointOnVertex(1))
        );
        // X on the side-line through vertices 0 and 1 makes two consecutive
        // antipedal lines parallel.
        assert_eq!(
            antipedal(&sq, Point::new(3.0, 0.0)),
            Err(GeomError::Parallel)
        );
    }

    #[test]
    fn single_step_iteration() {
        let v = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]).unwrap();
        let x = Point::new(1.0, 1.0);
        let it = iterated_pedal(&v, &[x]).unwrap();
        assert_eq!(it.stages.len(), 2);
        assert_eq!(*it.polygon(), pedal(&v, x).unwrap());
    }

    #[test]
    fn iteration_names_failing_step() {
        let v = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]).unwrap();
        // Pedal at a vertex collapses two feet onto that vertex.
        let err = iterated_pedal(&v, &[Point::new(1.0, 1.0), Point::new(1.0, 0.0)]).unwrap_err();
        assert!(
            matches!(err, GeomError::DegenerateStep { step: 2, .. }),
            "{err}"
        );
    }

    #[test]
    fn reverse_lengths() {
        let tri = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (1.0, 3.0)]).unwrap();
        let x = Point::new(1.5, 1.0);
        let back = reverse_path(&tri, &[x]).unwrap();
        assert_eq!(back.len(), 2);
        assert!(back.iter().all(|p| p.distance(x) < 1e-12));
        let fwd = iterated_pedal(&tri, &[x]).unwrap();
        let ret = iterated_pedal(fwd.polygon(), &back).unwrap();
        assert!(similarity_distance(ret.polygon(), &tri) < 1e-12);

        let quad = Polygon::from_xy(&[(0.0, 0.0), (3.0, 0.2), (2.5, 2.0), (0.3, 1.8)]).unwrap();
        let back = reverse_path(&quad, &[Point::new(1.2, 0.9)]).unwrap();
        assert_eq!(back.len(), 3);
    }

    #[test]
    fn provenance_strings_match_serde() {
        for p in [
            Provenance::Given,
            Provenance::SimpleToCrossed,
            Provenance::RectangleToKite,
        ] {
            let s = serde_json::to_string(&p).unwrap();
            assert_eq!(s, format!("\"{}\"", p.as_str()));
        }
    }
}
