//! Terrain families: the eight-square gadget, the lower-bound square with
//! hidden pockets, comb polygons and seeded random regular terrains.

mod comb;
mod gadget;
mod lower_bound;
mod random;

use std::collections::VecDeque;

use thiserror::Error;

use crate::geom::{segments_touch, GeomError, Irregularity, Point, Terrain};

pub use comb::{comb_terrain, CombParams, CombTerrain};
pub use gadget::{gadget, gadget_terrain, GadgetParams};
pub use lower_bound::{regular_lb_terrain, LowerBoundTerrain};
pub use random::{random_convex_fat_polygon, random_regular_terrain, RandomScenario};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("placed {placed} of {requested} items before giving up; parameters too dense")]
    Placement { placed: usize, requested: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("generated terrain is not regular: {0}")]
    Irregular(#[from] Irregularity),
}

/// Flood fill over a lattice of spacing `res` (offset half a step from the
/// terrain's bounding box corner). Lattice moves must stay inside the terrain
/// and may not touch `blocker`. True when the lattice nodes nearest `a` and
/// `b` fall in one component.
pub fn lattice_connected(t: &Terrain, a: Point, b: Point, res: f64, blocker: Option<(Point, Point)>) -> bool {
    let bb = t.bbox();
    let nx = (bb.width() / res).ceil() as usize + 1;
    let ny = (bb.height() / res).ceil() as usize + 1;
    let at = |i: usize, j: usize| Point::new(bb.min.x + (i as f64 + 0.5) * res, bb.min.y + (j as f64 + 0.5) * res);
    let nearest = |p: Point| -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), f64)> = None;
        let ci = ((p.x - bb.min.x) / res) as isize;
        let cj = ((p.y - bb.min.y) / res) as isize;
        for j in (cj - 2).max(0)..=(cj + 2).min(ny as isize - 1) {
            for i in (ci - 2).max(0)..=(ci + 2).min(nx as isize - 1) {
                let n = at(i as usize, j as usize);
                let d = n.dist(p);
                if t.segment_inside(p, n) && best.is_none_or(|(_, bd)| d < bd) {
                    best = Some(((i as usize, j as usize), d));
                }
            }
        }
        best.map(|(ij, _)| ij)
    };
    let (Some(src), Some(dst)) = (nearest(a), nearest(b)) else { return false };
    let open = |u: Point, v: Point| t.segment_inside(u, v) && blocker.is_none_or(|(c, d)| !segments_touch(u, v, c, d));
    let mut seen = vec![false; nx * ny];
    let mut queue = VecDeque::from([src]);
    seen[src.1 * nx + src.0] = true;
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == dst {
            return true;
        }
        for (di, dj) in [(1isize, 0isize), (-1, 0), (0, 1), (0, -1)] {
            let (ni, nj) = (i as isize + di, j as isize + dj);
            if ni < 0 || nj < 0 || ni as usize >= nx || nj as usize >= ny {
                continue;
            }
            let (ni, nj) = (ni as usize, nj as usize);
            if !seen[nj * nx + ni] && open(at(i, j), at(ni, nj)) {
                seen[nj * nx + ni] = true;
                queue.push_back((ni, nj));
            }
        }
    }
    false
}
