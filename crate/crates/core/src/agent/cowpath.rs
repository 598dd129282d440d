use serde::{Deserialize, Serialize};

use super::{AgentError, Trajectory};
use crate::geom::{
    line_ring_intersections, perimeter_split, walk_boundary, BoundaryCursor, GeomError, Point, Polygon, RingId,
    Sense, Terrain, EPS,
};

/// Starting sense (`dir1`) and the opposite sense (`dir2`) for a search on
/// `ring` from `r`.
///
/// At a vertex, `dir1` follows the adjacent side making the smaller angle with
/// `north`; ties go to the side with the smaller clockwise bearing from north.
/// Inside a side, `dir1` heads West on a horizontal side and toward the
/// northern half-plane otherwise.
pub fn choose_directions(ring: &Polygon, r: Point, north: Point) -> Result<(Sense, Sense), GeomError> {
    let north = north.normalized().ok_or(GeomError::Degenerate("north must be nonzero"))?;
    let dir1 = if let Some(v) = ring.vertex_at(r) {
        let n = ring.len();
        let ccw_side = (ring.vertex(v + 1) - r).normalized().expect("distinct vertices");
        let cw_side = (ring.vertex(v + n - 1) - r).normalized().expect("distinct vertices");
        let (a_ccw, a_cw) = (ccw_side.dot(north).clamp(-1.0, 1.0).acos(), cw_side.dot(north).clamp(-1.0, 1.0).acos());
        if (a_ccw - a_cw).abs() > 1e-12 {
            if a_ccw < a_cw {
                Sense::Ccw
            } else {
                Sense::Cw
            }
        } else {
            let bearing = |d: Point| (-north.cross(d)).atan2(north.dot(d)).rem_euclid(std::f64::consts::TAU);
            if bearing(ccw_side) <= bearing(cw_side) {
                Sense::Ccw
            } else {
                Sense::Cw
            }
        }
    } else {
        let pos = ring.locate(r).ok_or(GeomError::NotOnRing(r))?;
        let (a, b) = ring.edge(pos.edge);
        let forward = (b - a).normalized().expect("edge has positive length");
        let up = forward.dot(north);
        if up.abs() <= 1e-12 {
            // Horizontal side: West is north rotated a quarter turn counterclockwise.
            if forward.dot(north.perp()) > 0.0 {
                Sense::Ccw
            } else {
                Sense::Cw
            }
        } else if up > 0.0 {
            Sense::Ccw
        } else {
            Sense::Cw
        }
    };
    Ok((dir1, dir1.reversed()))
}

/// Record of one obstacle circumvention.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CowPathStat {
    pub ring: RingId,
    pub r: Point,
    pub rprime: Point,
    /// Shorter perimeter distance between `r` and `rprime`.
    pub dmin: f64,
    pub walked: f64,
    pub legs: usize,
}

impl CowPathStat {
    pub fn ratio(&self) -> f64 {
        if self.dmin > 0.0 {
            self.walked / self.dmin
        } else {
            1.0
        }
    }
}

/// Next crossing of the line `m_from -> m_to` with the ring beyond `r`.
pub fn exit_point(ring: &Polygon, m_from: Point, m_to: Point, r: Point) -> Result<Point, AgentError> {
    let d = m_to - m_from;
    let r_param = (r - m_from).dot(d) / d.dot(d);
    let tol = EPS / d.norm();
    line_ring_intersections(m_from, m_to, ring)?
        .into_iter()
        .find(|h| h.crossing && h.param > r_param + tol)
        .map(|h| h.point)
        .ok_or(AgentError::NoExitCrossing(r))
}

/// Doubling search on the perimeter of obstacle `ring` from `r` for the next
/// crossing of line M (through `m_from` and `m_to`). Legs of length 1, 2, 4, ...
/// alternate between `dir1` and `dir2`, returning to `r` after each failed leg.
/// Every walked piece is appended to `trajectory`.
pub fn cow_path(
    terrain: &Terrain,
    ring_id: RingId,
    m_from: Point,
    m_to: Point,
    r: Point,
    trajectory: &mut Trajectory,
) -> Result<CowPathStat, AgentError> {
    if ring_id == RingId::Outer {
        return Err(AgentError::LeftTerrain(r));
    }
    let ring = terrain.ring(ring_id);
    let rprime = exit_point(ring, m_from, m_to, r)?;
    let (split_a, split_b) = perimeter_split(ring, r, rprime)?;
    let dmin = split_a.min(split_b);
    let (dir1, dir2) = choose_directions(ring, r, Point::NORTH)?;

    let mut budget = 1.0;
    let mut walked = 0.0;
    let mut legs = 0;
    for sense in [dir1, dir2].into_iter().cycle() {
        legs += 1;
        let out = walk_boundary(BoundaryCursor::at(ring, r, sense)?, budget, Some(rprime))?;
        trajectory.push_walk(&out.path);
        walked += out.length;
        if out.reached {
            return Ok(CowPathStat { ring: ring_id, r, rprime, dmin, walked, legs });
        }
        let back = walk_boundary(out.cursor.reversed(), out.length, None)?;
        let mut path = back.path;
        if let Some(last) = path.last_mut() {
            *last = r;
        }
        trajectory.push_walk(&path);
        walked += back.length;
        budget *= 2.0;
        if legs > 128 {
            break;
        }
    }
    Err(AgentError::NoExitCrossing(r))
}
