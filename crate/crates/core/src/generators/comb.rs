use serde::{Deserialize, Serialize};

use super::GeneratorError;
use crate::geom::{Point, Polygon, Terrain};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CombParams {
    pub a: u32,
    /// Open corridor, 1-based from the West.
    pub i: u64,
    /// Corridor width; `2^-A` when unset.
    pub x: Option<f64>,
}

impl CombParams {
    pub fn width(&self) -> f64 {
        self.x.unwrap_or_else(|| 0.5f64.powi(self.a as i32))
    }

    /// Number of corridors `A / (2x)`.
    pub fn corridors(&self) -> Result<u64, GeneratorError> {
        let k = self.a as f64 / (2.0 * self.width());
        if !(k.is_finite() && k >= 1.0) || (k - k.round()).abs() > 1e-9 {
            return Err(GeneratorError::BadParams(format!("A/(2x) = {k} is not a positive integer")));
        }
        Ok(k.round() as u64)
    }

    fn validate(&self) -> Result<u64, GeneratorError> {
        if self.a <= 8 {
            return Err(GeneratorError::BadParams(format!("A must exceed 8, got {}", self.a)));
        }
        let x = self.width();
        if !(x > 0.0 && x < 0.5) {
            return Err(GeneratorError::BadParams(format!("corridor width must lie in (0, 1/2), got {x}")));
        }
        let k = self.corridors()?;
        if self.i == 0 || self.i > k {
            return Err(GeneratorError::BadParams(format!("corridor index {} outside 1..={k}", self.i)));
        }
        Ok(k)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CombTerrain {
    pub terrain: Terrain,
    pub start: Point,
    pub treasure: Point,
    pub params: CombParams,
    pub corridors: u64,
}

impl CombTerrain {
    /// West and East abscissae of corridor `j`.
    pub fn corridor_span(&self, j: u64) -> (f64, f64) {
        let x = self.params.width();
        ((2 * j - 2) as f64 * x, (2 * j - 1) as f64 * x)
    }

    /// The opening between the stripes through which corridor `i` meets the
    /// upper chamber.
    pub fn mouth(&self) -> (Point, Point) {
        let (w, e) = self.corridor_span(self.params.i);
        let h = self.params.a as f64 / 2.0;
        (Point::new(w, h), Point::new(e, h))
    }

    /// Corridors whose vertical centre line runs unobstructed from the lower
    /// chamber into the upper one.
    pub fn open_corridors(&self) -> Vec<u64> {
        let a = self.params.a as f64;
        (1..=self.corridors)
            .filter(|&j| {
                let (w, e) = self.corridor_span(j);
                let cx = 0.5 * (w + e);
                self.terrain.segment_inside(Point::new(cx, a / 4.0 - 0.01), Point::new(cx, a / 2.0 + 0.01))
            })
            .collect()
    }
}

/// Square room of side `A` whose band `[A/4, A/2]` is filled by a comb of
/// `k` dead-end corridors of width `x`, except that corridor `i` breaks
/// through to the upper chamber. Start at the South-West corner; treasure
/// one unit below the top, centred.
pub fn comb_terrain(params: CombParams) -> Result<CombTerrain, GeneratorError> {
    let k = params.validate()?;
    let a = params.a as f64;
    let x = params.width();
    let i = params.i;
    let (low, high) = (a / 4.0, a / 2.0 - x);
    let at = |m: u64| m as f64 * x;

    let mut vs = vec![Point::new(0.0, 0.0), Point::new(a, 0.0), Point::new(a, low)];
    // Closed corridors East of i, walked westward along their walls.
    for j in (i + 1..=k).rev() {
        vs.push(Point::new(at(2 * j - 1), low));
        vs.push(Point::new(at(2 * j - 1), high));
        vs.push(Point::new(at(2 * j - 2), high));
        vs.push(Point::new(at(2 * j - 2), low));
    }
    vs.push(Point::new(at(2 * i - 1), low));
    vs.push(Point::new(at(2 * i - 1), a / 2.0));
    vs.push(Point::new(a, a / 2.0));
    vs.push(Point::new(a, a));
    vs.push(Point::new(0.0, a));
    vs.push(Point::new(0.0, a / 2.0));
    vs.push(Point::new(at(2 * i - 2), a / 2.0));
    vs.push(Point::new(at(2 * i - 2), low));
    for j in (1..i).rev() {
        vs.push(Point::new(at(2 * j - 1), low));
        vs.push(Point::new(at(2 * j - 1), high));
        vs.push(Point::new(at(2 * j - 2), high));
        vs.push(Point::new(at(2 * j - 2), low));
    }
    let terrain = Terrain::empty(Polygon::new(vs)?);
    Ok(CombTerrain {
        terrain,
        start: Point::ORIGIN,
        treasure: Point::new(a / 2.0, a - 1.0),
        params,
        corridors: k,
    })
}
