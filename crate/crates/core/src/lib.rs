//! Pedal polygons and their relatives.
//!
//! * [`pedal`](mod@pedal): pedal and antipedal maps, iterated pedals, path
//!   reversal.
//! * [`outer_inner`]: outer/inner polygon families and their area-sum
//!   invariant.
//! * [`pedal_center`]: pedal centers of triangle pairs.
//! * [`quad`]: explicit pedal-equivalence paths between quadrilaterals.
//! * [`explore`]: randomized search for paths between n-gons.

pub mod error;
pub mod explore;
pub mod outer_inner;
pub mod pedal;
pub mod pedal_center;
pub mod point;
pub mod polygon;
pub mod quad;
pub mod random;
pub mod similarity;

/// Default relative tolerance for "is a point" / "is similar" predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

pub use error::{GeomError, Result};
pub use explore::{explore_ngon, ExploreConfig, ExploreResult};
pub use outer_inner::{
    area_sum, closed_form_c, find_degenerate_theta, inner_diameter, inner_polygon, outer_polygon,
    OuterInnerFamily, OuterInnerPair,
};
pub use pedal::{
    antipedal, iterated_pedal, pedal, replay_aligned, reverse_path, IteratedPedal, PedalPath,
    PedalStep, Provenance, Segment,
};
pub use pedal_center::{
    all_pedal_centers, antiderivative_m, find_theta_roots, pedal_center, script_m, Labeling,
    NormalizedTarget, PedalCenter, ThetaRoot,
};
pub use point::{foot_of_perpendicular, line_intersection, signed_distance, DirectedLine, Point};
pub use polygon::{Orientation, Polygon};
pub use quad::{
    classify_quad, connect, quad_path, quad_path_on_branch, QuadClass, QuadPath, QuadTag, TBranch,
};
pub use similarity::{
    best_similarity, similarity_between, similarity_distance, similarity_distance_with,
    Correspondence, Similarity, SimilarityMatch, SimilarityOptions,
};
