//! Full-knowledge side: accessibility of the treasure, the tiling and tile
//! choice, the advice string, and ground-truth path lengths.

mod advice;
mod paths;
mod tiling;

use thiserror::Error;

use crate::codec::CodecError;
use crate::geom::{GeomError, Point};

pub use advice::{
    accessibility, advice_length_bound, make_advice, select_tile, tiling_scale, Advice, TileSelection,
    TreasureSpec, LAMBDA_SHRINK,
};
pub use paths::{grid_path_oracle, shortest_path, Geodesic};
pub use tiling::{cell_of_index, index_of_cell, TileIndex, Tiling};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("treasure {0} must be an interior point of the terrain")]
    TreasureNotInterior(Point),
    #[error("point {0} is outside the terrain")]
    StartOutside(Point),
    #[error("no tile fits in the treasure disc")]
    NoTileInDisc,
    #[error("selected tile {0:?} does not see the treasure")]
    TileNotVisible(TileIndex),
    #[error("start and goal are not connected in the terrain")]
    Disconnected,
    #[error("lattice at resolution {0} does not connect start and goal")]
    GridDisconnected(f64),
    #[error("lattice resolution must be positive (got {0})")]
    BadResolution(f64),
}
