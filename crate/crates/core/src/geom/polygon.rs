use serde::{Deserialize, Serialize};

use super::point::{orient, point_segment_distance, project_on_segment, BBox, EPS};
use super::{GeomError, Point};

/// Where a point sits relative to a closed polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    OnBoundary,
    Exterior,
}

/// Position on a ring: edge `i` runs from vertex `i` to vertex `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RingPos {
    pub edge: usize,
    pub t: f64,
}

/// Simple polygon, stored counterclockwise with collinear and repeated
/// vertices removed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Polygon {
    vertices: Vec<Point>,
    #[serde(skip)]
    cum: Vec<f64>,
    #[serde(skip)]
    bbox: Option<BBox>,
}

impl TryFrom<Vec<Point>> for Polygon {
    type Error = GeomError;
    fn try_from(v: Vec<Point>) -> Result<Self, GeomError> {
        Polygon::new(v)
    }
}

impl From<Polygon> for Vec<Point> {
    fn from(p: Polygon) -> Self {
        p.vertices
    }
}

impl Polygon {
    /// Builds a validated polygon. Either orientation is accepted.
    pub fn new(vertices: Vec<Point>) -> Result<Polygon, GeomError> {
        if let Some(bad) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite(*bad));
        }
        let mut vs = normalize_ring(vertices);
        if vs.len() < 3 {
            return Err(GeomError::TooFewVertices(vs.len()));
        }
        if signed_area(&vs) < 0.0 {
            vs[1..].reverse();
        }
        let poly = Polygon::from_normalized(vs);
        poly.check_simple()?;
        Ok(poly)
    }

    fn from_normalized(vertices: Vec<Point>) -> Polygon {
        let n = vertices.len();
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        for i in 0..n {
            let last = cum[i];
            cum.push(last + vertices[i].dist(vertices[(i + 1) % n]));
        }
        let bbox = BBox::of_points(&vertices);
        Polygon { vertices, cum, bbox }
    }

    /// Axis-aligned rectangle from its lower-left and upper-right corners.
    pub fn rect(min: Point, max: Point) -> Result<Polygon, GeomError> {
        Polygon::new(vec![
            min,
            Point::new(max.x, min.y),
            max,
            Point::new(min.x, max.y),
        ])
    }

    /// Axis-aligned square of the given side centered at `center`.
    pub fn square(center: Point, side: f64) -> Result<Polygon, GeomError> {
        let h = Point::new(side / 2.0, side / 2.0);
        Polygon::rect(center - h, center + h)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    #[inline]
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn perimeter(&self) -> f64 {
        self.cum[self.len()]
    }

    /// Arc length from vertex 0 to vertex `i`, counterclockwise.
    pub fn arc_at_vertex(&self, i: usize) -> f64 {
        self.cum[i]
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn bbox(&self) -> BBox {
        self.bbox.expect("validated polygon has a bounding box")
    }

    pub fn is_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| orient(self.vertex(i), self.vertex(i + 1), self.vertex(i + 2)) > 0.0)
    }

    pub fn classify(&self, p: Point) -> Location {
        if !self.bbox().overlaps(&BBox::of_segment(p, p), EPS) {
            return Location::Exterior;
        }
        if self.edges().any(|(a, b)| point_segment_distance(p, a, b) <= EPS) {
            return Location::OnBoundary;
        }
        // Crossing number; points within EPS of the boundary were handled above.
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if x > p.x {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Interior
        } else {
            Location::Exterior
        }
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Locates a point on the ring. Vertices are reported with `t == 0` on
    /// their outgoing edge.
    pub fn locate(&self, p: Point) -> Option<RingPos> {
        let mut best: Option<(f64, RingPos)> = None;
        for (i, (a, b)) in self.edges().enumerate() {
            let (proj, t) = project_on_segment(p, a, b);
            let d = p.dist(proj);
            if d <= EPS && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, RingPos { edge: i, t }));
            }
        }
        let (_, mut pos) = best?;
        let n = self.len();
        let (a, b) = self.edge(pos.edge);
        if p.dist(a) <= EPS {
            pos.t = 0.0;
        } else if p.dist(b) <= EPS {
            pos = RingPos { edge: (pos.edge + 1) % n, t: 0.0 };
        }
        Some(pos)
    }

    /// Index of the vertex `p` coincides with, if any.
    pub fn vertex_at(&self, p: Point) -> Option<usize> {
        self.vertices.iter().position(|v| v.dist(p) <= EPS)
    }

    /// Counterclockwise arc length from vertex 0 to the ring position.
    pub fn arc_of(&self, pos: RingPos) -> f64 {
        let (a, b) = self.edge(pos.edge);
        self.cum[pos.edge] + a.dist(b) * pos.t
    }

    pub fn arc_position(&self, p: Point) -> Result<f64, GeomError> {
        self.locate(p)
            .map(|pos| self.arc_of(pos))
            .ok_or(GeomError::NotOnRing(p))
    }

    /// Ring position at counterclockwise arc length `s` (taken modulo the perimeter).
    pub fn pos_at_arc(&self, s: f64) -> RingPos {
        let per = self.perimeter();
        let s = s.rem_euclid(per) + 0.0;
        let edge = match self.cum.binary_search_by(|c| c.total_cmp(&s)) {
            Ok(i) => i.min(self.len() - 1),
            Err(i) => i.saturating_sub(1).min(self.len() - 1),
        };
        let len = self.cum[edge + 1] - self.cum[edge];
        let t = if len > 0.0 { ((s - self.cum[edge]) / len).clamp(0.0, 1.0) } else { 0.0 };
        RingPos { edge, t }
    }

    pub fn point_at(&self, pos: RingPos) -> Point {
        let (a, b) = self.edge(pos.edge);
        if pos.t == 0.0 {
            a
        } else if pos.t == 1.0 {
            b
        } else {
            a.lerp(b, pos.t)
        }
    }

    pub fn point_at_arc(&self, s: f64) -> Point {
        self.point_at(self.pos_at_arc(s))
    }

    fn check_simple(&self) -> Result<(), GeomError> {
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = self.edge(i);
                let (c, d) = self.edge(j);
                if adjacent {
                    // Shared vertex only; the far endpoints must stay off the other edge.
                    let (far_i, far_j, ei, ej) = if j == i + 1 { (a, d, (a, b), (c, d)) } else { (b, c, (a, b), (c, d)) };
                    if point_segment_distance(far_j, ei.0, ei.1) <= EPS
                        || point_segment_distance(far_i, ej.0, ej.1) <= EPS
                    {
                        return Err(GeomError::SelfIntersecting(i, j));
                    }
                } else if segments_touch(a, b, c, d) {
                    return Err(GeomError::SelfIntersecting(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Closed segment intersection test with the shared tolerance.
pub fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    if !BBox::of_segment(a, b).overlaps(&BBox::of_segment(c, d), EPS) {
        return false;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0)) {
        return true;
    }
    point_segment_distance(c, a, b) <= EPS
        || point_segment_distance(d, a, b) <= EPS
        || point_segment_distance(a, c, d) <= EPS
        || point_segment_distance(b, c, d) <= EPS
}

/// Minimum distance between two closed segments.
pub fn segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return 0.0;
    }
    point_segment_distance(c, a, b)
        .min(point_segment_distance(d, a, b))
        .min(point_segment_distance(a, c, d))
        .min(point_segment_distance(b, c, d))
}

fn signed_area(vs: &[Point]) -> f64 {
    let n = vs.len();
    (0..n).map(|i| vs[i].cross(vs[(i + 1) % n])).sum::<f64>() / 2.0
}

/// Drops repeated vertices and vertices collinear with their neighbours
/// until the ring is stable.
fn normalize_ring(mut vs: Vec<Point>) -> Vec<Point> {
    loop {
        let n = vs.len();
        if n < 3 {
            return vs;
        }
        let mut out: Vec<Point> = Vec::with_capacity(n);
        let mut changed = false;
        for i in 0..n {
            let prev = vs[(i + n - 1) % n];
            let cur = vs[i];
            let next = vs[(i + 1) % n];
            if cur.dist(prev) <= EPS {
                changed = true;
                continue;
            }
            let span = prev.dist(next);
            let collinear = span > EPS && point_segment_distance(cur, prev, next) <= EPS
                || orient(prev, cur, next).abs() <= EPS * EPS;
            if collinear {
                changed = true;
                // Remove one vertex per pass so neighbours are re-evaluated.
                out.extend_from_slice(&vs[i + 1..]);
                break;
            }
            out.push(cur);
        }
        vs = out;
        if !changed {
            return vs;
        }
    }
}

/// Convex hull (Andrew's monotone chain), counterclockwise.
pub fn convex_hull(points: &[Point]) -> Result<Polygon, GeomError> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.approx_eq(*b));
    if pts.len() < 3 {
        return Err(GeomError::TooFewVertices(pts.len()));
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    Polygon::new(hull)
}
