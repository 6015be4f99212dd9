use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("vertex count mismatch: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },
    #[error("points coincide; no line through them")]
    CoincidentPoints,
    #[error("lines are parallel")]
    Parallel,
    #[error("vector is not a unit normal of the line")]
    NotNormal,
    #[error("polygon is not counterclockwise")]
    NotCounterClockwise,
    #[error("vertices {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("side {side} collapses (consecutive vertices coincide)")]
    DegenerateSide { side: usize },
    #[error("point coincides with vertex {0}")]
    PointOnVertex(usize),
    #[error("pedal step {step} degenerates: {source}")]
    DegenerateStep {
        step: usize,
        #[source]
        source: Box<GeomError>,
    },
    #[error("expected a {expected}, got {found}")]
    WrongClass {
        expected: &'static str,
        found: String,
    },
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<GeomError>,
    },
    #[error("inner polygon does not collapse at theta = {theta} (diameter {diameter:e})")]
    NoCollapse { theta: f64, diameter: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no similarity found")]
    NoSimilarity,
}

impl GeomError {
    pub(crate) fn at_step(self, step: usize) -> Self {
        GeomError::DegenerateStep {
            step,
            source: Box::new(self),
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        GeomError::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// True when the error comes from the geometry degenerating rather than
    /// from malformed input.
    pub fn is_degeneracy(&self) -> bool {
        match self {
            GeomError::TooFewVertices(_)
            | GeomError::NonFinite(_)
            | GeomError::VertexCountMismatch { .. }
            | GeomError::InvalidParameter(_)
            | GeomError::WrongClass { .. } => false,
            GeomError::Stage { source, .. } | GeomError::DegenerateStep { source, .. } => {
                source.is_degeneracy()
            }
            _ => true,
        }
    }
}
