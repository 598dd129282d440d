use serde::{Deserialize, Serialize};

use super::point::EPS;
use super::polygon::RingPos;
use super::{GeomError, Point, Polygon};

/// Traversal sense along a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    /// Increasing vertex order (the interior is on the left).
    Ccw,
    Cw,
}

impl Sense {
    pub fn reversed(self) -> Sense {
        match self {
            Sense::Ccw => Sense::Cw,
            Sense::Cw => Sense::Ccw,
        }
    }
}

/// A position on a ring together with a direction of travel.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryCursor<'a> {
    ring: &'a Polygon,
    pos: RingPos,
    sense: Sense,
}

/// Result of a boundary move.
#[derive(Clone, Debug)]
pub struct Walk<'a> {
    pub cursor: BoundaryCursor<'a>,
    /// Walked polyline, starting at the origin of the move.
    pub path: Vec<Point>,
    pub length: f64,
    pub reached: bool,
}

impl<'a> BoundaryCursor<'a> {
    pub fn at(ring: &'a Polygon, p: Point, sense: Sense) -> Result<Self, GeomError> {
        let pos = ring.locate(p).ok_or(GeomError::NotOnRing(p))?;
        Ok(BoundaryCursor { ring, pos, sense })
    }

    pub fn at_arc(ring: &'a Polygon, s: f64, sense: Sense) -> Self {
        BoundaryCursor { ring, pos: ring.pos_at_arc(s), sense }
    }

    pub fn ring(&self) -> &'a Polygon {
        self.ring
    }

    pub fn pos(&self) -> RingPos {
        self.pos
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn arc(&self) -> f64 {
        self.ring.arc_of(self.pos)
    }

    pub fn point(&self) -> Point {
        self.ring.point_at(self.pos)
    }

    pub fn reversed(self) -> Self {
        BoundaryCursor { sense: self.sense.reversed(), ..self }
    }

    /// Arc distance from the cursor to `target` in the cursor's sense.
    pub fn distance_to(&self, target: Point) -> Result<f64, GeomError> {
        let s = self.ring.arc_position(target)?;
        Ok(self.arc_distance_to(s))
    }

    fn arc_distance_to(&self, s: f64) -> f64 {
        let per = self.ring.perimeter();
        let here = self.arc();
        let d = match self.sense {
            Sense::Ccw => (s - here).rem_euclid(per),
            Sense::Cw => (here - s).rem_euclid(per),
        };
        if d >= per - EPS || d <= EPS {
            0.0
        } else {
            d
        }
    }
}

/// Follows the ring from the cursor for `distance`, or until the walked path
/// covers `stop`, whichever comes first.
pub fn walk_boundary<'a>(
    cursor: BoundaryCursor<'a>,
    distance: f64,
    stop: Option<Point>,
) -> Result<Walk<'a>, GeomError> {
    if !(distance >= 0.0) {
        return Err(GeomError::Degenerate("walk distance must be non-negative"));
    }
    let ring = cursor.ring;
    let (go, reached) = match stop {
        Some(target) => {
            let ahead = cursor.distance_to(target)?;
            if ahead <= distance {
                (ahead, true)
            } else {
                (distance, false)
            }
        }
        None => (distance, false),
    };

    let n = ring.len();
    let start = cursor.point();
    let mut path = vec![start];
    // Offsets (in walking order) of the vertices ahead of the cursor.
    let RingPos { edge, t } = cursor.pos;
    let (a, b) = ring.edge(edge);
    let (mut next_vertex, mut offset) = match cursor.sense {
        Sense::Ccw => ((edge + 1) % n, a.dist(b) * (1.0 - t)),
        Sense::Cw if t == 0.0 => ((edge + n - 1) % n, ring.vertex(edge).dist(ring.vertex(edge + n - 1))),
        Sense::Cw => (edge, a.dist(b) * t),
    };
    while offset < go - EPS {
        path.push(ring.vertex(next_vertex));
        let prev = next_vertex;
        next_vertex = match cursor.sense {
            Sense::Ccw => (next_vertex + 1) % n,
            Sense::Cw => (next_vertex + n - 1) % n,
        };
        offset += ring.vertex(prev).dist(ring.vertex(next_vertex));
    }
    let end_arc = match cursor.sense {
        Sense::Ccw => cursor.arc() + go,
        Sense::Cw => cursor.arc() - go,
    };
    let end = match (reached, stop) {
        (true, Some(target)) => target,
        _ => ring.point_at_arc(end_arc),
    };
    if go > 0.0 {
        path.push(end);
    }
    let new_pos = ring.locate(end).unwrap_or_else(|| ring.pos_at_arc(end_arc));
    Ok(Walk {
        cursor: BoundaryCursor { ring, pos: new_pos, sense: cursor.sense },
        length: go,
        path,
        reached,
    })
}

/// Both arc lengths between `a` and `b`: first counterclockwise from `a`,
/// then the complement.
pub fn perimeter_split(ring: &Polygon, a: Point, b: Point) -> Result<(f64, f64), GeomError> {
    let sa = ring.arc_position(a)?;
    let sb = ring.arc_position(b)?;
    let per = ring.perimeter();
    let mut ccw = (sb - sa).rem_euclid(per);
    if ccw <= EPS || ccw >= per - EPS {
        ccw = 0.0;
    }
    Ok((ccw, per - ccw))
}

/// Arc length of a polyline.
pub fn polyline_length(path: &[Point]) -> f64 {
    path.windows(2).map(|w| w[0].dist(w[1])).sum()
}
