use serde::{Deserialize, Serialize};

use super::GeneratorError;
use crate::geom::{Point, Polygon, Terrain};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GadgetParams {
    pub o: Point,
    pub lambda: f64,
}

impl GadgetParams {
    pub fn new(o: Point, lambda: f64) -> Result<Self, GeneratorError> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(GeneratorError::BadParams(format!("lambda must lie in (0, 1], got {lambda}")));
        }
        Ok(GadgetParams { o, lambda })
    }

    /// Side of each square.
    pub fn x(&self) -> f64 {
        1.5 * self.lambda
    }

    /// Gap between neighbouring squares.
    pub fn y(&self) -> f64 {
        self.lambda / 4.0
    }

    /// Side of the bounding square S(o).
    pub fn span(&self) -> f64 {
        3.0 * self.x() + 2.0 * self.y()
    }

    /// The bounding square S(o).
    pub fn bounding_square(&self) -> Polygon {
        Polygon::square(self.o, self.span()).expect("positive side")
    }
}

/// Eight squares of side `3λ/2` around `o`, in the order N, NE, E, SE, S, SW,
/// W, NW. The axis squares sit at distance `λ + x/2` from `o`; the corner
/// squares share their rows and columns.
pub fn gadget(params: &GadgetParams) -> Vec<Polygon> {
    let d = params.lambda + params.x() / 2.0;
    let offsets = [(0.0, d), (d, d), (d, 0.0), (d, -d), (0.0, -d), (-d, -d), (-d, 0.0), (-d, d)];
    offsets
        .iter()
        .map(|&(dx, dy)| Polygon::square(params.o + Point::new(dx, dy), params.x()).expect("positive side"))
        .collect()
}

/// A lone gadget inside an open square of side `span + 2 * margin`.
pub fn gadget_terrain(params: &GadgetParams, margin: f64) -> Result<Terrain, GeneratorError> {
    let outer = Polygon::square(params.o, params.span() + 2.0 * margin)?;
    Ok(Terrain::new(outer, gadget(params))?)
}
