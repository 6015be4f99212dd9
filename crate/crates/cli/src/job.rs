//! Commands as data: each job carries its inputs inline, so a report can be
//! re-run (for `render`) from its own echo.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use pedalgeom::pedal::{iterated_pedal_with_tol, pedal_checked};
use pedalgeom::pedal_center::VERIFY_TOL;
use pedalgeom::quad::{canonical_square, QUAD_VERIFY_TOL};
use pedalgeom::{
    all_pedal_centers, antipedal, connect, explore_ngon, find_degenerate_theta, iterated_pedal,
    quad_path_on_branch, similarity_distance, ExploreConfig, OuterInnerFamily, Point, Polygon,
    TBranch,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::svg::{Figure, Item};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "inputs", rename_all = "kebab-case")]
pub enum Job {
    Pedal {
        polygon: Polygon,
        point: Point,
    },
    Antipedal {
        polygon: Polygon,
        point: Point,
    },
    Iterate {
        polygon: Polygon,
        points: Vec<Point>,
    },
    Outer {
        w: Polygon,
        v: Polygon,
        theta: f64,
    },
    Inner {
        w: Polygon,
        v: Polygon,
        theta: f64,
    },
    InvariantScan {
        w: Polygon,
        v: Polygon,
        samples: usize,
    },
    Centers {
        v: Polygon,
        w: Polygon,
    },
    QuadPath {
        w: Polygon,
        branch: TBranch,
    },
    Connect {
        v: Polygon,
        w: Polygon,
    },
    Explore {
        v: Polygon,
        w: Polygon,
        budget: usize,
        seed: u64,
        restarts: usize,
        max_len: usize,
    },
}

/// What a job produced.
pub struct Outcome {
    pub outputs: Value,
    pub residuals: BTreeMap<String, f64>,
    pub figure: Figure,
    /// Set when the construction ran but did not certify.
    pub failure: Option<String>,
}

impl Outcome {
    fn new(outputs: Value, figure: Figure) -> Self {
        Outcome {
            outputs,
            residuals: BTreeMap::new(),
            figure,
            failure: None,
        }
    }

    fn residual(mut self, name: &str, value: f64) -> Self {
        self.residuals.insert(name.into(), value);
        self
    }

    fn certify(mut self, ok: bool, message: impl FnOnce() -> String) -> Self {
        if !ok {
            self.failure = Some(message());
        }
        self
    }
}

fn to_value<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

/// Dashed segments from `x` to each foot on `v`'s side-lines.
fn feet_segments(x: Point, feet: &Polygon) -> Vec<Item> {
    feet.vertices()
        .iter()
        .map(|&f| Item::Segment(x, f))
        .collect()
}

impl Job {
    pub fn run(&self, tol: f64) -> Result<Outcome, CliError> {
        Ok(match self {
            Job::Pedal { polygon, point } => {
                let out = pedal_checked(polygon, *point, tol)?;
                let mut fig = Figure::default();
                fig.polygons("input", [polygon])
                    .layer("construction", feet_segments(*point, &out))
                    .dots("point", [*point])
                    .polygons("output", [&out]);
                Outcome::new(json!({ "polygon": to_value(&out) }), fig)
            }
            Job::Antipedal { polygon, point } => {
                let out = antipedal(polygon, *point)?;
                let back = pedal_checked(&out, *point, tol)?;
                let scale = polygon.diameter().max(out.diameter());
                let round_trip = back.max_vertex_distance(polygon).unwrap_or(f64::INFINITY) / scale;
                let mut fig = Figure::default();
                fig.polygons("input", [polygon])
                    .layer("construction", feet_segments(*point, polygon))
                    .dots("point", [*point])
                    .polygons("output", [&out]);
                Outcome::new(json!({ "polygon": to_value(&out) }), fig)
                    .residual("round_trip", round_trip)
                    .certify(round_trip <= tol, || {
                        format!("pedal of the result misses the input by {round_trip:e}")
                    })
            }
            Job::Iterate { polygon, points } => {
                let run = iterated_pedal_with_tol(polygon, points, tol)?.stages;
                let out = run.last().unwrap();
                let mut construction = Vec::new();
                for (k, &x) in points.iter().enumerate() {
                    construction.extend(feet_segments(x, &run[k + 1]));
                }
                let mut fig = Figure::default();
                fig.polygons("input", [polygon])
                    .layer("construction", construction)
                    .dots("points", points.iter().copied())
                    .polygons("stages", &run[1..run.len() - 1])
                    .polygons("output", [out]);
                Outcome::new(
                    json!({ "polygon": to_value(out), "stages": to_value(&run[1..]) }),
                    fig,
                )
                .residual("similarity_to_input", similarity_distance(out, polygon))
            }
            Job::Outer { w, v, theta } | Job::Inner { w, v, theta } => {
                let fam = OuterInnerFamily::new(w, v)?;
                let outer = matches!(self, Job::Outer { .. });
                let out = if outer {
                    fam.outer(*theta)?
                } else {
                    fam.inner(*theta)?
                };
                let directions: Vec<Point> = (0..w.len())
                    .map(|i| {
                        let d = fam.side_direction(*theta, i);
                        if outer {
                            d
                        } else {
                            d.perp()
                        }
                    })
                    .collect();
                // Side-line i runs through W_i from vertex i to vertex i + 1.
                let lines = (0..w.len())
                    .flat_map(|i| {
                        let wi = w.vertices()[i];
                        [
                            Item::Segment(out.vertices()[i], wi),
                            Item::Segment(wi, out.next(i)),
                        ]
                    })
                    .collect();
                let mut fig = Figure::default();
                fig.dots("through", w.vertices().iter().copied())
                    .layer("construction", lines)
                    .polygons("output", [&out]);
                Outcome::new(
                    json!({
                        "polygon": to_value(&out),
                        "area": out.area(),
                        "side_directions": to_value(&directions),
                    }),
                    fig,
                )
            }
            Job::InvariantScan { w, v, samples } => {
                if *samples == 0 {
                    return Err(CliError::Input("--samples must be at least 1".into()));
                }
                let fam = OuterInnerFamily::new(w, v)?;
                let c = fam.closed_form_c();
                let mut values = Vec::with_capacity(*samples);
                for k in 0..*samples {
                    values.push(fam.area_sum(k as f64 * TAU / *samples as f64)?);
                }
                let min = values.iter().copied().fold(f64::INFINITY, f64::min);
                let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let mean = values.iter().sum::<f64>() / values.len() as f64;
                let deviation = values.iter().map(|s| (s - c).abs()).fold(0.0, f64::max);
                let relative = deviation / (c.abs() + w.diameter().powi(2));
                let mut collapses = Vec::new();
                for r in find_degenerate_theta(w, v)? {
                    let area = fam.outer(r.theta0)?.area();
                    collapses.push(json!({ "theta0": r.theta0, "outer_area": area }));
                }
                let shown = 8.min(*samples);
                let thetas = (0..shown).map(|k| k as f64 * TAU / shown as f64);
                let outers = thetas
                    .clone()
                    .map(|t| fam.outer(t))
                    .collect::<Result<Vec<_>, _>>()?;
                let inners = thetas
                    .map(|t| fam.inner(t))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut fig = Figure::default();
                fig.dots("through", w.vertices().iter().copied())
                    .polygons("outer", &outers)
                    .polygons("inner", &inners);
                Outcome::new(
                    json!({
                        "samples": samples,
                        "min": min,
                        "max": max,
                        "mean": mean,
                        "closed_form_c": c,
                        "max_deviation": deviation,
                        "collapses": collapses,
                    }),
                    fig,
                )
                .residual("relative_deviation", relative)
                .certify(relative <= tol, || {
                    format!("area sum strays from its closed form by {relative:e} (relative)")
                })
            }
            Job::Centers { v, w } => {
                let centers = all_pedal_centers(v, w)?;
                let worst = centers.iter().map(|c| c.verification).fold(0.0, f64::max);
                // W drawn as an inset beside V.
                let inset = {
                    let (vd, wd) = (v.diameter(), w.diameter());
                    let right = v.vertices().iter().map(|p| p.x).fold(f64::MIN, f64::max);
                    let bottom = v.vertices().iter().map(|p| p.y).fold(f64::MAX, f64::min);
                    let wl = w.vertices().iter().map(|p| p.x).fold(f64::MAX, f64::min);
                    let wb = w.vertices().iter().map(|p| p.y).fold(f64::MAX, f64::min);
                    let s = 0.3 * vd / wd;
                    w.map(|p| {
                        Point::new(right + 0.1 * vd + s * (p.x - wl), bottom + s * (p.y - wb))
                    })
                };
                let mut fig = Figure::default();
                fig.polygons("source", [v])
                    .polygons("target", [&inset])
                    .dots("centers", centers.iter().map(|c| c.point));
                if centers.len() != 12 {
                    eprintln!(
                        "pedalgeom: note: {} distinct centers (a generic pair has 12)",
                        centers.len()
                    );
                }
                Outcome::new(
                    json!({ "centers": to_value(&centers), "count": centers.len() }),
                    fig,
                )
                .residual("max_verification", worst)
                .certify(!centers.is_empty() && worst < VERIFY_TOL, || {
                    if centers.is_empty() {
                        "no pedal center found".into()
                    } else {
                        format!("worst center verifies at {worst:e}")
                    }
                })
            }
            Job::QuadPath { w, branch } => {
                let qp = quad_path_on_branch(w, *branch)?;
                let square = canonical_square(1.0);
                let run = qp.path.replay(&square)?;
                let d = qp.verification_distance;
                let fig = path_figure(&square, &run.stages, &qp.path.points());
                Outcome::new(
                    json!({
                        "source": to_value(&square),
                        "path": to_value(&qp.path),
                        "reduction": to_value(&qp.reduction),
                        "branch": to_value(&qp.branch),
                        "polygon": to_value(run.polygon()),
                    }),
                    fig,
                )
                .residual("verification_distance", d)
                .certify(d < QUAD_VERIFY_TOL, || format!("path verifies at {d:e}"))
            }
            Job::Connect { v, w } => {
                let path = connect(v, w)?;
                let run = path.replay(v)?;
                let d = path.verification_distance.unwrap_or(f64::INFINITY);
                let fig = path_figure(v, &run.stages, &path.points());
                Outcome::new(
                    json!({
                        "path": to_value(&path),
                        "length": path.steps.len(),
                        "polygon": to_value(run.polygon()),
                    }),
                    fig,
                )
                .residual("verification_distance", d)
                .certify(d < QUAD_VERIFY_TOL, || format!("path verifies at {d:e}"))
            }
            Job::Explore {
                v,
                w,
                budget,
                seed,
                restarts,
                max_len,
            } => {
                let config = ExploreConfig {
                    budget: *budget,
                    seed: *seed,
                    restarts: *restarts,
                    max_len: *max_len,
                };
                let found = explore_ngon(v, w, &config)?;
                let out = iterated_pedal(v, &found.points)?.into_polygon();
                let mut fig = Figure::default();
                fig.polygons("source", [v])
                    .polygons("target", [w])
                    .dots("points", found.points.iter().copied())
                    .polygons("output", [&out]);
                Outcome::new(
                    json!({
                        "points": to_value(&found.points),
                        "distance": found.distance,
                        "initial_distance": similarity_distance(v, w),
                        "trace": to_value(&found.trace),
                        "polygon": to_value(&out),
                    }),
                    fig,
                )
                .residual("distance", found.distance)
            }
        })
    }
}

fn path_figure(source: &Polygon, stages: &[Polygon], points: &[Point]) -> Figure {
    let mut fig = Figure::default();
    fig.polygons("source", [source])
        .polygons("stages", &stages[1..stages.len() - 1])
        .dots("points", points.iter().copied())
        .polygons("output", [stages.last().unwrap()]);
    fig
}
