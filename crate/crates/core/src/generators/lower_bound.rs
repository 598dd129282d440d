use serde::{Deserialize, Serialize};

use super::gadget::{gadget, GadgetParams};
use super::GeneratorError;
use crate::geom::{Point, Polygon, Terrain};

/// Square terrain of side `A = 20kλ` with `k²` hidden gadget pockets in its
/// North-East quadrant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundTerrain {
    pub terrain: Terrain,
    pub start: Point,
    pub side: f64,
    pub lambda: f64,
    /// Centres of the shaded tiles; each is a valid treasure of accessibility λ.
    pub candidates: Vec<Point>,
}

/// The quadrant `[A/2, A]²` is cut into tiles of side `5λ`, rows numbered
/// from the North and columns from the West starting at 1. Tiles with odd row
/// and odd column get a gadget. The outer polygon is raised by `λ` above
/// `y = A` so that first-row gadgets stay strictly inside.
pub fn regular_lb_terrain(k: u32, lambda: f64) -> Result<LowerBoundTerrain, GeneratorError> {
    if k == 0 {
        return Err(GeneratorError::BadParams("k must be at least 1".into()));
    }
    let tile = GadgetParams::new(Point::ORIGIN, lambda)?.span();
    let side = 20.0 * k as f64 * lambda;
    let n = 2 * k as usize;
    let mut obstacles = Vec::with_capacity(8 * k as usize * k as usize);
    let mut candidates = Vec::new();
    for row in (1..=n).step_by(2) {
        for col in (1..=n).step_by(2) {
            let o = Point::new(side / 2.0 + tile * (col as f64 - 0.5), side - tile * (row as f64 - 0.5));
            obstacles.extend(gadget(&GadgetParams { o, lambda }));
            candidates.push(o);
        }
    }
    let outer = Polygon::rect(Point::ORIGIN, Point::new(side, side + lambda))?;
    let terrain = Terrain::new(outer, obstacles)?;
    Ok(LowerBoundTerrain { terrain, start: Point::ORIGIN, side, lambda, candidates })
}
