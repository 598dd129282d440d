use serde::{Deserialize, Serialize};

use crate::geom::Point;

/// Signed tile coordinates. Columns grow East and rows grow North of the
/// anchor; there is no column or row 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TileIndex {
    pub col: i64,
    pub row: i64,
}

impl TileIndex {
    pub fn new(col: i64, row: i64) -> Option<Self> {
        (col != 0 && row != 0).then_some(TileIndex { col, row })
    }
}

/// Index of the cell between grid lines `k` and `k + 1`.
#[inline]
pub fn index_of_cell(k: i64) -> i64 {
    if k >= 0 {
        k + 1
    } else {
        k
    }
}

/// Inverse of [`index_of_cell`]; `index` must be nonzero.
#[inline]
pub fn cell_of_index(index: i64) -> i64 {
    debug_assert!(index != 0);
    if index > 0 {
        index - 1
    } else {
        index
    }
}

/// Axis-aligned grid of square tiles of side `1 / a1` with a tile corner at
/// the anchor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tiling {
    pub anchor: Point,
    pub a1: i64,
}

impl Tiling {
    pub fn new(anchor: Point, a1: i64) -> Self {
        assert!(a1 > 0, "tiling scale must be positive");
        Tiling { anchor, a1 }
    }

    pub fn side(&self) -> f64 {
        1.0 / self.a1 as f64
    }

    /// x-coordinate of vertical grid line `k` (line 0 passes through the anchor).
    pub fn x_line(&self, k: i64) -> f64 {
        self.anchor.x + k as f64 / self.a1 as f64
    }

    pub fn y_line(&self, k: i64) -> f64 {
        self.anchor.y + k as f64 / self.a1 as f64
    }

    /// South-west and north-east corners of a tile.
    pub fn bounds(&self, idx: TileIndex) -> (Point, Point) {
        let cx = cell_of_index(idx.col);
        let cy = cell_of_index(idx.row);
        (
            Point::new(self.x_line(cx), self.y_line(cy)),
            Point::new(self.x_line(cx + 1), self.y_line(cy + 1)),
        )
    }

    pub fn center(&self, idx: TileIndex) -> Point {
        let a1 = self.a1 as f64;
        Point::new(
            self.anchor.x + (cell_of_index(idx.col) as f64 + 0.5) / a1,
            self.anchor.y + (cell_of_index(idx.row) as f64 + 0.5) / a1,
        )
    }

    /// Grid cell containing `p`; points on a grid line belong to the cell
    /// North (East) of it.
    pub fn cell_of(&self, p: Point) -> (i64, i64) {
        let a1 = self.a1 as f64;
        (((p.x - self.anchor.x) * a1).floor() as i64, ((p.y - self.anchor.y) * a1).floor() as i64)
    }

    pub fn tile_containing(&self, p: Point) -> TileIndex {
        let (cx, cy) = self.cell_of(p);
        TileIndex { col: index_of_cell(cx), row: index_of_cell(cy) }
    }
}
