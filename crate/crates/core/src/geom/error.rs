use thiserror::Error;

use super::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("polygon needs at least 3 distinct, non-collinear vertices (got {0})")]
    TooFewVertices(usize),
    #[error("non-finite coordinate in {0}")]
    NonFinite(Point),
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("point {0} is not on the ring")]
    NotOnRing(Point),
    #[error("point {0} is outside the terrain")]
    OutsideTerrain(Point),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("terrain invariant violated: {0}")]
    Terrain(String),
}
