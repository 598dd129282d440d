use serde::{Deserialize, Serialize};

use crate::geom::{polyline_length, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    FreeMove,
    PerimeterWalk,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub kind: Provenance,
    pub points: Vec<Point>,
}

impl Piece {
    pub fn length(&self) -> f64 {
        polyline_length(&self.points)
    }
}

/// The agent's path as a chain of pieces; each piece starts where the
/// previous one ended.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    start: Point,
    pieces: Vec<Piece>,
    length: f64,
}

impl Trajectory {
    pub fn new(start: Point) -> Self {
        Trajectory { start, pieces: Vec::new(), length: 0.0 }
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn end(&self) -> Point {
        self.pieces.last().and_then(|p| p.points.last().copied()).unwrap_or(self.start)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn push_free(&mut self, to: Point) {
        let from = self.end();
        self.push(Piece { kind: Provenance::FreeMove, points: vec![from, to] });
    }

    /// Appends a boundary walk. The walk must start at the current end.
    pub fn push_walk(&mut self, path: &[Point]) {
        if path.len() < 2 {
            return;
        }
        let mut points = path.to_vec();
        points[0] = self.end();
        self.push(Piece { kind: Provenance::PerimeterWalk, points });
    }

    fn push(&mut self, piece: Piece) {
        self.length += piece.length();
        self.pieces.push(piece);
    }

    /// Every segment of the trajectory in order, with its provenance.
    pub fn segments(&self) -> impl Iterator<Item = (Provenance, Point, Point)> + '_ {
        self.pieces
            .iter()
            .flat_map(|p| p.points.windows(2).map(move |w| (p.kind, w[0], w[1])))
    }
}
