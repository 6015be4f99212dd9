//! Randomized search for pedal paths between n-gons.
//!
//! Simulated annealing over point sequences, minimizing the similarity
//! distance between `P(V, S)` and `W`. Reports the best sequence found and
//! its distance; it never certifies equivalence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::pedal::iterated_pedal;
use crate::point::Point;
use crate::polygon::Polygon;
use crate::random::point_in_disk;
use crate::similarity::similarity_distance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExploreConfig {
    /// Total number of candidate evaluations, split across restarts.
    pub budget: usize,
    pub seed: u64,
    pub restarts: usize,
    /// Longest point sequence considered.
    pub max_len: usize,
}

impl ExploreConfig {
    pub fn new(budget: usize, seed: u64) -> Self {
        ExploreConfig {
            budget,
            seed,
            restarts: 4,
            max_len: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExploreResult {
    pub points: Vec<Point>,
    pub distance: f64,
    /// Best distance so far after each evaluation, restarts concatenated in
    /// index order.
    pub trace: Vec<f64>,
}

fn evaluate(v: &Polygon, w: &Polygon, s: &[Point]) -> f64 {
    match iterated_pedal(v, s) {
        Ok(run) => {
            let d = similarity_distance(run.polygon(), w);
            if d.is_finite() {
                d
            } else {
                f64::INFINITY
            }
        }
        Err(_) => f64::INFINITY,
    }
}

struct Run {
    points: Vec<Point>,
    distance: f64,
    trace: Vec<f64>,
}

fn anneal(v: &Polygon, w: &Polygon, budget: usize, mut rng: ChaCha8Rng, max_len: usize) -> Run {
    let n = v.len();
    let center = v.centroid();
    let scale = v.diameter();
    let mut trace = Vec::with_capacity(budget);
    if budget == 0 {
        return Run {
            points: Vec::new(),
            distance: f64::INFINITY,
            trace,
        };
    }
    // Same-point repetition returns V itself, so this is exact when W ~ V.
    let mut cur = vec![center; n.min(max_len)];
    let mut cur_d = evaluate(v, w, &cur);
    let mut best = (cur.clone(), cur_d);
    trace.push(cur_d);
    for k in 1..budget {
        let frac = k as f64 / budget as f64;
        let temp = 0.05 * (1.0 - frac) + 1e-6;
        let sigma = scale * (0.3 * (1.0 - frac) + 0.005);
        let mut cand = cur.clone();
        match rng.gen_range(0..4) {
            0 | 1 if !cand.is_empty() => {
                let i = rng.gen_range(0..cand.len());
                cand[i] = point_in_disk(&mut rng, cand[i], sigma);
            }
            2 if cand.len() < max_len => {
                let i = rng.gen_range(0..=cand.len());
                cand.insert(i, point_in_disk(&mut rng, center, scale));
            }
            _ if cand.len() > 1 => {
                let i = rng.gen_range(0..cand.len());
                cand.remove(i);
            }
            _ => cand.push(point_in_disk(&mut rng, center, scale)),
        }
        let d = evaluate(v, w, &cand);
        let accept = d < cur_d || (d.is_finite() && rng.gen::<f64>() < (-(d - cur_d) / temp).exp());
        if accept {
            cur = cand;
            cur_d = d;
            if d < best.1 {
                best = (cur.clone(), d);
            }
        }
        trace.push(best.1);
    }
    Run {
        points: best.0,
        distance: best.1,
        trace,
    }
}

/// Search for `S` making `P(V, S)` similar to `W`.
///
/// Restarts run concurrently; restart `r` draws from stream `r` of a ChaCha
/// generator seeded with `seed`, so results depend only on the inputs.
pub fn explore_ngon(v: &Polygon, w: &Polygon, config: &ExploreConfig) -> Result<ExploreResult> {
    if v.len() != w.len() {
        return Err(GeomError::VertexCountMismatch {
            left: v.len(),
            right: w.len(),
        });
    }
    let d0 = similarity_distance(v, w);
    let restarts = config.restarts.max(1);
    let share = config.budget / restarts;
    let extra = config.budget % restarts;
    let runs: Vec<Run> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(r as u64);
            let budget = share + usize::from(r < extra);
            anneal(v, w, budget, rng, config.max_len.max(1))
        })
        .collect();
    let mut result = ExploreResult {
        points: Vec::new(),
        distance: d0,
        trace: Vec::with_capacity(config.budget),
    };
    for run in runs {
        for d in run.trace {
            let best = result.trace.last().copied().unwrap_or(d0).min(d);
            result.trace.push(best);
        }
        if run.distance < result.distance {
            result.distance = run.distance;
            result.points = run.points;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::star_polygon;

    #[test]
    fn zero_budget_returns_start() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = star_polygon(&mut rng, 5, 0.2);
        let w = star_polygon(&mut rng, 5, 0.2);
        let r = explore_ngon(&v, &w, &ExploreConfig::new(0, 3)).unwrap();
        assert!(r.points.is_empty());
        assert_eq!(r.distance, similarity_distance(&v, &w));
    }

    #[test]
    fn similar_target_found_at_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let v = star_polygon(&mut rng, 5, 0.2);
        let w = v.map(|p| p.rotate(0.7) * 2.5);
        let r = explore_ngon(&v, &w, &ExploreConfig::new(8, 3)).unwrap();
        assert!(r.distance < 1e-8, "{}", r.distance);
        assert!(evaluate(&v, &w, &[v.centroid(); 5]) < 1e-8);
    }

    #[test]
    fn deterministic_under_seed() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = star_polygon(&mut rng, 5, 0.2);
        let w = star_polygon(&mut rng, 5, 0.2);
        let cfg = ExploreConfig::new(400, 7);
        let a = explore_ngon(&v, &w, &cfg).unwrap();
        let b = explore_ngon(&v, &w, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
