use serde::{Deserialize, Serialize};

use super::point::{orient, point_segment_distance, BBox, EPS};
use super::polygon::{segments_touch, Location};
use super::{GeomError, Point, Polygon};

/// Identifies one boundary ring of a terrain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingId {
    Outer,
    Obstacle(usize),
}

/// Where a free move was interrupted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HitEvent {
    pub point: Point,
    pub ring: RingId,
    /// Distance travelled from the origin of the move.
    pub travel: f64,
}

/// Intersection of a line with a ring. `param` is measured along the line
/// in units of `|ab|` from `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineHit {
    pub point: Point,
    pub param: f64,
    /// `true` when the ring passes from one side of the line to the other here.
    pub crossing: bool,
}

#[derive(Deserialize)]
struct RawTerrain {
    outer: Polygon,
    #[serde(default)]
    obstacles: Vec<Polygon>,
}

/// Closed outer polygon minus the open interiors of the obstacles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTerrain")]
pub struct Terrain {
    outer: Polygon,
    obstacles: Vec<Polygon>,
}

impl TryFrom<RawTerrain> for Terrain {
    type Error = GeomError;
    fn try_from(raw: RawTerrain) -> Result<Self, GeomError> {
        Terrain::new(raw.outer, raw.obstacles)
    }
}

impl Terrain {
    /// Validates that every obstacle lies strictly inside the outer polygon and
    /// that obstacle closures are pairwise disjoint. Under those conditions the
    /// navigable set is connected.
    pub fn new(outer: Polygon, obstacles: Vec<Polygon>) -> Result<Terrain, GeomError> {
        for (i, ob) in obstacles.iter().enumerate() {
            let inside = ob.vertices().iter().all(|&v| outer.classify(v) == Location::Interior)
                && !ob.edges().any(|(a, b)| outer.edges().any(|(c, d)| segments_touch(a, b, c, d)));
            if !inside {
                return Err(GeomError::Terrain(format!(
                    "obstacle {i} is not strictly inside the outer polygon"
                )));
            }
        }
        for i in 0..obstacles.len() {
            for j in (i + 1)..obstacles.len() {
                let (p, q) = (&obstacles[i], &obstacles[j]);
                if !p.bbox().overlaps(&q.bbox(), EPS) {
                    continue;
                }
                let touching = p.edges().any(|(a, b)| q.edges().any(|(c, d)| segments_touch(a, b, c, d)))
                    || q.classify(p.vertex(0)) != Location::Exterior
                    || p.classify(q.vertex(0)) != Location::Exterior;
                if touching {
                    return Err(GeomError::Terrain(format!("obstacles {i} and {j} are not disjoint")));
                }
            }
        }
        Ok(Terrain { outer, obstacles })
    }

    pub fn empty(outer: Polygon) -> Terrain {
        Terrain { outer, obstacles: Vec::new() }
    }

    pub fn outer(&self) -> &Polygon {
        &self.outer
    }

    pub fn obstacles(&self) -> &[Polygon] {
        &self.obstacles
    }

    pub fn ring(&self, id: RingId) -> &Polygon {
        match id {
            RingId::Outer => &self.outer,
            RingId::Obstacle(i) => &self.obstacles[i],
        }
    }

    pub fn rings(&self) -> impl Iterator<Item = (RingId, &Polygon)> {
        std::iter::once((RingId::Outer, &self.outer))
            .chain(self.obstacles.iter().enumerate().map(|(i, p)| (RingId::Obstacle(i), p)))
    }

    /// Total number of polygon vertices over all rings.
    pub fn vertex_count(&self) -> usize {
        self.rings().map(|(_, r)| r.len()).sum()
    }

    /// Membership in the closed terrain: obstacle boundaries are navigable.
    pub fn contains(&self, p: Point) -> bool {
        self.outer.classify(p) != Location::Exterior
            && self.obstacles.iter().all(|o| o.classify(p) != Location::Interior)
    }

    /// Strictly inside the terrain, at distance > EPS from every boundary.
    pub fn contains_interior(&self, p: Point) -> bool {
        self.outer.classify(p) == Location::Interior
            && self.obstacles.iter().all(|o| o.classify(p) == Location::Exterior)
    }

    fn obstacle_containing(&self, p: Point) -> Option<usize> {
        self.obstacles.iter().position(|o| o.classify(p) == Location::Interior)
    }

    /// Sorted segment parameters in [0, 1] at which `ab` meets any boundary,
    /// always including both endpoints. Between consecutive parameters the
    /// segment does not change its membership in the terrain.
    fn boundary_params(&self, a: Point, b: Point) -> Vec<f64> {
        let mut ts = vec![0.0, 1.0];
        let seg_box = BBox::of_segment(a, b);
        let d = b - a;
        let len2 = d.dot(d);
        for (_, ring) in self.rings() {
            if !ring.bbox().overlaps(&seg_box, EPS) {
                continue;
            }
            for (c, e) in ring.edges() {
                if !BBox::of_segment(c, e).overlaps(&seg_box, EPS) {
                    continue;
                }
                if len2 > 0.0 && point_segment_distance(c, a, b) <= EPS {
                    ts.push(((c - a).dot(d) / len2).clamp(0.0, 1.0));
                }
                let o1 = orient(a, b, c);
                let o2 = orient(a, b, e);
                let o3 = orient(c, e, a);
                let o4 = orient(c, e, b);
                if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
                    ts.push((o3 / (o3 - o4)).clamp(0.0, 1.0));
                }
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15);
        ts
    }

    /// True iff every point of the closed segment `ab` lies in the terrain.
    pub fn segment_inside(&self, a: Point, b: Point) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        let ts = self.boundary_params(a, b);
        ts.windows(2)
            .all(|w| w[1] - w[0] <= 0.0 || self.contains(a.lerp(b, (w[0] + w[1]) / 2.0)))
    }

    /// Visibility at range one, with boundary endpoints allowed.
    pub fn sees(&self, p: Point, q: Point) -> bool {
        p.dist(q) <= 1.0 + EPS && self.segment_inside(p, q)
    }

    /// First point of the move from `from` toward `toward` after which the
    /// agent would enter an obstacle interior or leave the outer polygon.
    /// Touching or sliding along a boundary is not a hit. The hit may be at
    /// `from` itself when the agent starts on a boundary facing inward.
    pub fn first_hit(&self, from: Point, toward: Point) -> Result<Option<HitEvent>, GeomError> {
        if !self.contains(from) {
            return Err(GeomError::OutsideTerrain(from));
        }
        if from.dist(toward) <= EPS {
            return Err(GeomError::Degenerate("first_hit needs distinct endpoints"));
        }
        let len = from.dist(toward);
        let ts = self.boundary_params(from, toward);
        for w in ts.windows(2) {
            if w[1] - w[0] <= 0.0 {
                continue;
            }
            let mid = from.lerp(toward, (w[0] + w[1]) / 2.0);
            if self.contains(mid) {
                continue;
            }
            let ring = self.obstacle_containing(mid).map_or(RingId::Outer, RingId::Obstacle);
            return Ok(Some(HitEvent { point: from.lerp(toward, w[0]), ring, travel: w[0] * len }));
        }
        Ok(None)
    }

    /// Largest radius of an open disc at `p` avoiding every boundary.
    pub fn distance_to_boundary(&self, p: Point) -> Result<f64, GeomError> {
        if !self.contains(p) {
            return Err(GeomError::OutsideTerrain(p));
        }
        Ok(self.rings().map(|(_, r)| r.boundary_distance(p)).fold(f64::INFINITY, f64::min))
    }

    pub fn bbox(&self) -> BBox {
        self.outer.bbox()
    }
}

/// Membership of a point in the closed terrain.
pub fn point_in_terrain(p: Point, t: &Terrain) -> bool {
    t.contains(p)
}

pub fn segment_in_terrain(a: Point, b: Point, t: &Terrain) -> bool {
    t.segment_inside(a, b)
}

/// Visibility predicate; both endpoints must lie in the terrain.
pub fn sees(p: Point, q: Point, t: &Terrain) -> Result<bool, GeomError> {
    for x in [p, q] {
        if !t.contains(x) {
            return Err(GeomError::OutsideTerrain(x));
        }
    }
    Ok(t.sees(p, q))
}

pub fn first_hit(from: Point, toward: Point, t: &Terrain) -> Result<Option<HitEvent>, GeomError> {
    t.first_hit(from, toward)
}

pub fn distance_to_boundary(p: Point, t: &Terrain) -> Result<f64, GeomError> {
    t.distance_to_boundary(p)
}

/// All intersections of the infinite line through `a` and `b` with the ring,
/// ordered along the line. Vertices lying on the line are reported
/// individually; a run of vertices on the line is flagged as crossing when
/// the ring changes sides across it.
pub fn line_ring_intersections(a: Point, b: Point, ring: &Polygon) -> Result<Vec<LineHit>, GeomError> {
    let d = b - a;
    let len = d.norm();
    if len <= EPS {
        return Err(GeomError::Degenerate("line needs two distinct points"));
    }
    let n = ring.len();
    let side: Vec<i8> = ring
        .vertices()
        .iter()
        .map(|&v| {
            let s = d.cross(v - a) / len;
            if s > EPS {
                1
            } else if s < -EPS {
                -1
            } else {
                0
            }
        })
        .collect();
    let Some(start) = side.iter().position(|&s| s != 0) else {
        return Err(GeomError::Degenerate("ring lies on the line"));
    };
    let param = |p: Point| (p - a).dot(d) / (len * len);
    let mut hits = Vec::new();
    let mut k = 0;
    while k < n {
        let i = (start + k) % n;
        let j = (i + 1) % n;
        if side[i] * side[j] < 0 {
            let (vi, vj) = (ring.vertex(i), ring.vertex(j));
            let si = d.cross(vi - a);
            let sj = d.cross(vj - a);
            let p = vi.lerp(vj, si / (si - sj));
            hits.push(LineHit { point: p, param: param(p), crossing: true });
            k += 1;
        } else if side[j] == 0 {
            // Run of on-line vertices j, j+1, ..., ending before a nonzero side.
            let mut run = Vec::new();
            let mut m = j;
            while side[m] == 0 {
                run.push(m);
                m = (m + 1) % n;
            }
            let crossing = side[i] != side[m];
            for v in &run {
                let p = ring.vertex(*v);
                hits.push(LineHit { point: p, param: param(p), crossing });
            }
            k += run.len() + 1;
        } else {
            k += 1;
        }
    }
    hits.sort_by(|x, y| x.param.total_cmp(&y.param));
    Ok(hits)
}

/// Why a terrain fails to be regular for a given fatness bound.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Irregularity {
    #[error("fatness bound must exceed 1 (got {0})")]
    BadFatness(f64),
    #[error("outer polygon is not convex")]
    OuterNotConvex,
    #[error("obstacle {0} is not convex")]
    ObstacleNotConvex(usize),
    #[error("obstacle {index} has fatness {ratio:.6} > {c}")]
    ObstacleNotFat { index: usize, ratio: f64, c: f64 },
}

/// Checks convex outer polygon and convex c-fat obstacles. The terrain
/// invariants are enforced by `Terrain::new` already.
pub fn validate_regular_terrain(t: &Terrain, c: f64) -> Result<(), Irregularity> {
    if !(c > 1.0) {
        return Err(Irregularity::BadFatness(c));
    }
    if !t.outer().is_convex() {
        return Err(Irregularity::OuterNotConvex);
    }
    for (index, ob) in t.obstacles().iter().enumerate() {
        let ratio = super::circles::fatness(ob).map_err(|_| Irregularity::ObstacleNotConvex(index))?;
        if ratio > c * (1.0 + 1e-12) {
            return Err(Irregularity::ObstacleNotFat { index, ratio, c });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, side: f64) -> Polygon {
        Polygon::rect(Point::new(x0, y0), Point::new(x0 + side, y0 + side)).unwrap()
    }

    fn box_with_unit_obstacle() -> Terrain {
        Terrain::new(square(0.0, 0.0, 10.0), vec![square(4.0, 4.0, 1.0)]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let t = box_with_unit_obstacle();
        assert!(t.contains(Point::new(4.0, 4.5)));
        assert!(!t.contains(Point::new(4.5, 4.5)));
        assert!(!t.contains(Point::new(-1.0, 3.0)));
        assert!(t.contains(Point::new(0.0, 3.0)));
    }

    #[test]
    fn segment_examples() {
        let empty = Terrain::empty(square(0.0, 0.0, 4.0));
        assert!(empty.segment_inside(Point::new(0.5, 0.5), Point::new(3.5, 2.0)));
        let t = box_with_unit_obstacle();
        assert!(!t.segment_inside(Point::new(3.0, 4.5), Point::new(6.0, 4.5)));
        assert!(t.segment_inside(Point::new(4.0, 4.0), Point::new(5.0, 4.0)));
        assert!(t.segment_inside(Point::new(3.0, 4.0), Point::new(6.0, 4.0)));
        // Diagonal through the obstacle corners crosses the interior.
        assert!(!t.segment_inside(Point::new(3.0, 3.0), Point::new(6.0, 6.0)));
    }

    #[test]
    fn sees_examples() {
        let empty = Terrain::empty(square(0.0, 0.0, 4.0));
        let p = Point::new(1.0, 1.0);
        assert!(empty.sees(p, p));
        assert!(!empty.sees(p, Point::new(2.5, 1.0)));
        // Thin square straddling the midpoint of a 0.9-long segment.
        let t = Terrain::new(square(0.0, 0.0, 4.0), vec![square(1.4, 0.95, 0.1)]).unwrap();
        let (a, b) = (Point::new(1.0, 1.0), Point::new(1.9, 1.0));
        assert!(!t.sees(a, b));
        assert!(!t.sees(b, a));
        assert_eq!(sees(Point::new(1.45, 1.0), a, &t), Err(GeomError::OutsideTerrain(Point::new(1.45, 1.0))));
    }

    #[test]
    fn first_hit_examples() {
        let empty = Terrain::empty(square(0.0, 0.0, 4.0));
        assert_eq!(empty.first_hit(Point::new(1.0, 1.0), Point::new(3.0, 3.0)).unwrap(), None);
        let t = box_with_unit_obstacle();
        let hit = t.first_hit(Point::new(1.0, 4.5), Point::new(9.0, 4.5)).unwrap().unwrap();
        assert_eq!(hit.ring, RingId::Obstacle(0));
        assert!(hit.point.dist(Point::new(4.0, 4.5)) < 1e-12);
        assert!((hit.travel - 3.0).abs() < 1e-12);
        // Grazing the corner (4, 4) along a supporting direction.
        assert_eq!(t.first_hit(Point::new(2.0, 6.0), Point::new(6.0, 2.0)).unwrap(), None);
        // Sliding along an edge.
        assert_eq!(t.first_hit(Point::new(2.0, 5.0), Point::new(8.0, 5.0)).unwrap(), None);
        // Leaving the outer polygon is a hit on the outer ring.
        let out = t.first_hit(Point::new(1.0, 1.0), Point::new(-1.0, 1.0)).unwrap().unwrap();
        assert_eq!(out.ring, RingId::Outer);
        assert!(out.point.dist(Point::new(0.0, 1.0)) < 1e-12);
    }

    #[test]
    fn line_ring_examples() {
        let sq = square(0.0, 0.0, 1.0);
        let through = line_ring_intersections(Point::new(-1.0, 0.5), Point::new(2.0, 0.5), &sq).unwrap();
        assert_eq!(through.len(), 2);
        assert!(through.iter().all(|h| h.crossing));
        assert!(through[0].point.dist(Point::new(0.0, 0.5)) < 1e-12);
        let tangent = line_ring_intersections(Point::new(-1.0, 1.0), Point::new(1.0, -1.0), &sq).unwrap();
        assert_eq!(tangent.len(), 1);
        assert!(!tangent[0].crossing);
        assert!(line_ring_intersections(Point::new(-1.0, 3.0), Point::new(2.0, 3.0), &sq).unwrap().is_empty());
        // Diagonal through two opposite corners crosses at both vertices.
        let diag = line_ring_intersections(Point::new(0.0, 0.0), Point::new(1.0, 1.0), &sq).unwrap();
        assert_eq!(diag.len(), 2);
        assert!(diag.iter().all(|h| h.crossing));
        // Supporting line along an edge.
        let along = line_ring_intersections(Point::new(-1.0, 0.0), Point::new(2.0, 0.0), &sq).unwrap();
        assert!(along.iter().all(|h| !h.crossing));
    }

    #[test]
    fn distance_to_boundary_examples() {
        let empty = Terrain::empty(square(0.0, 0.0, 4.0));
        assert_eq!(empty.distance_to_boundary(Point::new(2.0, 2.0)).unwrap(), 2.0);
        assert_eq!(empty.distance_to_boundary(Point::new(1.0, 2.0)).unwrap(), 1.0);
        let t = Terrain::new(square(0.0, 0.0, 4.0), vec![square(2.3, 1.5, 1.0)]).unwrap();
        assert!((t.distance_to_boundary(Point::new(2.0, 2.0)).unwrap() - 0.3).abs() < 1e-12);
        assert!(t.distance_to_boundary(Point::new(5.0, 5.0)).is_err());
    }

    #[test]
    fn terrain_rejects_bad_obstacles() {
        let outside = Terrain::new(square(0.0, 0.0, 4.0), vec![square(3.5, 1.0, 1.0)]);
        assert!(matches!(outside, Err(GeomError::Terrain(_))));
        let touching = Terrain::new(square(0.0, 0.0, 4.0), vec![square(0.0, 1.0, 1.0)]);
        assert!(matches!(touching, Err(GeomError::Terrain(_))));
        let overlap = Terrain::new(square(0.0, 0.0, 4.0), vec![square(1.0, 1.0, 1.0), square(1.5, 1.5, 1.0)]);
        assert!(matches!(overlap, Err(GeomError::Terrain(_))));
        let nested = Terrain::new(square(0.0, 0.0, 4.0), vec![square(1.0, 1.0, 2.0), square(1.5, 1.5, 0.5)]);
        assert!(matches!(nested, Err(GeomError::Terrain(_))));
    }

    #[test]
    fn regularity_examples() {
        let hull_outer = crate::geom::convex_hull(&[
            Point::new(0.0, 0.0),
            Point::new(10.0, 0.0),
            Point::new(12.0, 6.0),
            Point::new(5.0, 11.0),
            Point::new(-2.0, 6.0),
        ])
        .unwrap();
        let ok = Terrain::new(hull_outer.clone(), vec![square(2.0, 2.0, 1.0), square(5.0, 5.0, 1.5)]).unwrap();
        assert_eq!(validate_regular_terrain(&ok, 2.0), Ok(()));
        let thin = Polygon::rect(Point::new(0.5, 1.0), Point::new(9.5, 2.0)).unwrap();
        let bad = Terrain::new(hull_outer, vec![thin]).unwrap();
        assert!(matches!(validate_regular_terrain(&bad, 2.0), Err(Irregularity::ObstacleNotFat { index: 0, .. })));
        let l_shape = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(4.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 4.0),
            Point::new(0.0, 4.0),
        ])
        .unwrap();
        assert_eq!(validate_regular_terrain(&Terrain::empty(l_shape), 2.0), Err(Irregularity::OuterNotConvex));
    }
}
