use petgraph::algo::{astar, dijkstra};
use petgraph::graph::{NodeIndex, UnGraph};

use super::OracleError;
use crate::geom::{Point, Terrain, EPS};

/// Geodesic between two terrain points.
#[derive(Clone, Debug, PartialEq)]
pub struct Geodesic {
    pub length: f64,
    pub path: Vec<Point>,
}

/// Euclidean shortest path through the visibility graph of the start, the
/// goal and every polygon vertex. Edges may run along boundaries.
pub fn shortest_path(t: &Terrain, p: Point, q: Point) -> Result<Geodesic, OracleError> {
    for x in [p, q] {
        if !t.contains(x) {
            return Err(OracleError::StartOutside(x));
        }
    }
    if t.segment_inside(p, q) {
        return Ok(Geodesic { length: p.dist(q), path: vec![p, q] });
    }
    let mut nodes = vec![p, q];
    nodes.extend(t.rings().flat_map(|(_, r)| r.vertices().iter().copied()));
    let mut g: UnGraph<Point, f64> = UnGraph::with_capacity(nodes.len(), nodes.len() * 8);
    let ids: Vec<NodeIndex> = nodes.iter().map(|&n| g.add_node(n)).collect();
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if nodes[i].dist(nodes[j]) > EPS && t.segment_inside(nodes[i], nodes[j]) {
                g.add_edge(ids[i], ids[j], nodes[i].dist(nodes[j]));
            }
        }
    }
    let (length, route) = astar(&g, ids[0], |n| n == ids[1], |e| *e.weight(), |n| g[n].dist(q))
        .ok_or(OracleError::Disconnected)?;
    Ok(Geodesic { length, path: route.into_iter().map(|n| g[n]).collect() })
}

/// Shortest path length on the 8-connected lattice of spacing `resolution`
/// clipped to the terrain. Start and goal attach to every lattice node they
/// see within three lattice steps. Always an upper bound on the geodesic.
pub fn grid_path_oracle(t: &Terrain, p: Point, q: Point, resolution: f64) -> Result<f64, OracleError> {
    if !(resolution > 0.0) {
        return Err(OracleError::BadResolution(resolution));
    }
    for x in [p, q] {
        if !t.contains(x) {
            return Err(OracleError::StartOutside(x));
        }
    }
    if p.dist(q) <= EPS {
        return Ok(0.0);
    }
    let bb = t.bbox();
    let nx = (bb.width() / resolution).floor() as usize + 1;
    let ny = (bb.height() / resolution).floor() as usize + 1;
    let at = |i: usize, j: usize| Point::new(bb.min.x + i as f64 * resolution, bb.min.y + j as f64 * resolution);

    let mut g: UnGraph<(), f64> = UnGraph::default();
    let mut node: Vec<Option<NodeIndex>> = vec![None; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            if t.contains(at(i, j)) {
                node[j * nx + i] = Some(g.add_node(()));
            }
        }
    }
    let diag = resolution * std::f64::consts::SQRT_2;
    for j in 0..ny {
        for i in 0..nx {
            let Some(a) = node[j * nx + i] else { continue };
            let pa = at(i, j);
            let neighbours = [(1isize, 0isize, resolution), (0, 1, resolution), (1, 1, diag), (-1, 1, diag)];
            for (di, dj, w) in neighbours {
                let (ni, nj) = (i as isize + di, j as isize + dj);
                if ni < 0 || ni as usize >= nx || nj as usize >= ny {
                    continue;
                }
                let (ni, nj) = (ni as usize, nj as usize);
                if let Some(b) = node[nj * nx + ni] {
                    if t.segment_inside(pa, at(ni, nj)) {
                        g.add_edge(a, b, w);
                    }
                }
            }
        }
    }

    let mut attach = |x: Point| -> NodeIndex {
        let id = g.add_node(());
        let reach = 3.0 * resolution;
        let i0 = ((x.x - reach - bb.min.x) / resolution).floor().max(0.0) as usize;
        let j0 = ((x.y - reach - bb.min.y) / resolution).floor().max(0.0) as usize;
        let i1 = (((x.x + reach - bb.min.x) / resolution).ceil() as usize).min(nx - 1);
        let j1 = (((x.y + reach - bb.min.y) / resolution).ceil() as usize).min(ny - 1);
        for j in j0..=j1 {
            for i in i0..=i1 {
                let pt = at(i, j);
                if let Some(n) = node[j * nx + i] {
                    if pt.dist(x) <= reach && t.segment_inside(x, pt) {
                        g.add_edge(id, n, pt.dist(x));
                    }
                }
            }
        }
        id
    };
    let src = attach(p);
    let dst = attach(q);
    let dist = dijkstra(&g, src, Some(dst), |e| *e.weight());
    dist.get(&dst).copied().ok_or(OracleError::GridDisconnected(resolution))
}
