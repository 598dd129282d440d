//! The searching agent: it knows only its start and the advice bits, walks
//! toward the advised tile centre and circumvents obstacles by a doubling
//! search along their perimeter.

mod cowpath;
mod hunt;
mod trajectory;

use thiserror::Error;

use crate::codec::CodecError;
use crate::geom::{GeomError, Irregularity, Point};

pub use cowpath::{choose_directions, cow_path, exit_point, CowPathStat};
pub use hunt::{first_sight, navigate, thunt, HuntOptions, HuntOutcome, Navigation};
pub use trajectory::{Piece, Provenance, Trajectory};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AgentError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("advice does not decode: {0}")]
    Codec(#[from] CodecError),
    #[error("terrain is not regular: {0}")]
    Irregular(#[from] Irregularity),
    #[error("start {0} is outside the terrain")]
    StartOutside(Point),
    #[error("advised target {0} is outside the terrain")]
    TargetOutside(Point),
    #[error("line toward the target leaves the outer polygon at {0}")]
    LeftTerrain(Point),
    #[error("line toward the target has no exit from the obstacle entered at {0}")]
    NoExitCrossing(Point),
    #[error("obstacle detour at {0} made no progress along the line")]
    NoProgress(Point),
    #[error("gave up after {0} obstacle encounters")]
    TooManyEncounters(usize),
}
