use serde::{Deserialize, Serialize};

use super::tiling::{index_of_cell, TileIndex, Tiling};
use super::OracleError;
use crate::codec::{encode, AdviceString, AdviceTriple};
use crate::geom::{Point, Terrain, EPS};

/// Relative shrink applied to the accessibility radius before testing tile
/// containment, so that decisions stay valid for irrational radii.
pub const LAMBDA_SHRINK: f64 = 1e-6;

/// The treasure together with its clearance `rho` and accessibility
/// `lambda = min(1, rho)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreasureSpec {
    pub q: Point,
    pub rho: f64,
    pub lambda: f64,
}

impl TreasureSpec {
    /// Radius actually used for the containment disc.
    pub fn safe_radius(&self) -> f64 {
        self.lambda * (1.0 - LAMBDA_SHRINK)
    }
}

pub fn accessibility(t: &Terrain, q: Point) -> Result<TreasureSpec, OracleError> {
    if !t.contains(q) {
        return Err(OracleError::TreasureNotInterior(q));
    }
    let rho = t.distance_to_boundary(q)?;
    if rho <= EPS {
        return Err(OracleError::TreasureNotInterior(q));
    }
    Ok(TreasureSpec { q, rho, lambda: rho.min(1.0) })
}

/// Smallest tiling scale whose tiles have side at most `lambda / 2`.
pub fn tiling_scale(lambda: f64) -> i64 {
    // Guard against 2/lambda landing a hair above an integer through rounding.
    ((2.0 / lambda) - 1e-9).ceil().max(1.0) as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileSelection {
    pub tiling: Tiling,
    pub tile: TileIndex,
    pub qprime: Point,
}

/// Picks the South-most row holding a tile inside the treasure disc, then
/// the West-most such tile of that row.
pub fn select_tile(t: &Terrain, p: Point, spec: &TreasureSpec) -> Result<TileSelection, OracleError> {
    let tiling = Tiling::new(p, tiling_scale(spec.lambda));
    let radius = spec.safe_radius();
    let q = spec.q;
    let (lo_x, lo_y) = tiling.cell_of(q - Point::new(radius, radius));
    let (hi_x, hi_y) = tiling.cell_of(q + Point::new(radius, radius));
    let inside = |x: f64, y: f64| Point::new(x, y).dist(q) <= radius;
    for cy in lo_y..=hi_y {
        let (y0, y1) = (tiling.y_line(cy), tiling.y_line(cy + 1));
        for cx in lo_x..=hi_x {
            let (x0, x1) = (tiling.x_line(cx), tiling.x_line(cx + 1));
            if inside(x0, y0) && inside(x1, y0) && inside(x0, y1) && inside(x1, y1) {
                let tile = TileIndex { col: index_of_cell(cx), row: index_of_cell(cy) };
                let qprime = tiling.center(tile);
                if !t.sees(qprime, q) {
                    return Err(OracleError::TileNotVisible(tile));
                }
                return Ok(TileSelection { tiling, tile, qprime });
            }
        }
    }
    Err(OracleError::NoTileInDisc)
}

/// Everything the oracle derives for one scenario. Only `bits` is handed to
/// the agent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Advice {
    pub triple: AdviceTriple,
    pub bits: AdviceString,
    pub treasure: TreasureSpec,
    pub selection: TileSelection,
}

pub fn make_advice(t: &Terrain, p: Point, q: Point) -> Result<Advice, OracleError> {
    if !t.contains(p) {
        return Err(OracleError::StartOutside(p));
    }
    let treasure = accessibility(t, q)?;
    let selection = select_tile(t, p, &treasure)?;
    let triple = AdviceTriple::new(selection.tiling.a1, selection.tile.col, selection.tile.row)?;
    Ok(Advice { triple, bits: encode(&triple), treasure, selection })
}

/// Advice length bound `10 + 6 * ceil(log2(3L / lambda + 5))`.
pub fn advice_length_bound(l: f64, lambda: f64) -> usize {
    10 + 6 * (3.0 * l / lambda + 5.0).log2().ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    fn big_square() -> Terrain {
        Terrain::empty(Polygon::rect(Point::new(-10.0, -10.0), Point::new(10.0, 10.0)).unwrap())
    }

    #[test]
    fn accessibility_examples() {
        let t = Terrain::empty(Polygon::rect(Point::new(0.0, 0.0), Point::new(4.0, 4.0)).unwrap());
        let s = accessibility(&t, Point::new(2.0, 2.0)).unwrap();
        assert_eq!((s.rho, s.lambda), (2.0, 1.0));
        assert_eq!(accessibility(&t, Point::new(0.25, 2.0)).unwrap().lambda, 0.25);
        let ob = Polygon::rect(Point::new(2.5, 1.0), Point::new(3.0, 3.0)).unwrap();
        let t2 = Terrain::new(t.outer().clone(), vec![ob]).unwrap();
        assert_eq!(accessibility(&t2, Point::new(2.0, 2.0)).unwrap().lambda, 0.5);
        assert!(matches!(accessibility(&t, Point::new(0.0, 2.0)), Err(OracleError::TreasureNotInterior(_))));
        assert!(matches!(accessibility(&t, Point::new(9.0, 2.0)), Err(OracleError::TreasureNotInterior(_))));
    }

    #[test]
    fn scale_is_ceiling_of_two_over_lambda() {
        assert_eq!(tiling_scale(1.0), 2);
        assert_eq!(tiling_scale(0.5), 4);
        assert_eq!(tiling_scale(0.3), 7);
        assert_eq!(tiling_scale(0.05), 40);
    }

    #[test]
    fn select_tile_north_east_example() {
        let t = big_square();
        let spec = accessibility(&t, Point::new(0.75, 0.75)).unwrap();
        let sel = select_tile(&t, Point::ORIGIN, &spec).unwrap();
        assert_eq!(sel.tiling.a1, 2);
        assert_eq!(sel.tile, TileIndex { col: 2, row: 1 });
        assert_eq!(sel.qprime, Point::new(0.75, 0.25));
    }

    #[test]
    fn make_advice_examples() {
        let t = big_square();
        let adv = make_advice(&t, Point::ORIGIN, Point::new(0.75, 0.75)).unwrap();
        assert_eq!(adv.triple, AdviceTriple::new(2, 2, 1).unwrap());
        assert_eq!(adv.bits, encode(&adv.triple));
        let mirrored = make_advice(&t, Point::ORIGIN, Point::new(-0.75, -0.75)).unwrap();
        assert!(mirrored.triple.a2() < 0 && mirrored.triple.a3() < 0);
        let near = make_advice(&t, Point::ORIGIN, Point::new(0.1, 0.1)).unwrap();
        assert!(near.triple.a2() != 0 && near.triple.a3() != 0);
        assert!(matches!(make_advice(&t, Point::new(50.0, 0.0), Point::new(1.0, 1.0)), Err(OracleError::StartOutside(_))));
    }
}
