use super::point::EPS;
use super::{GeomError, Point, Polygon};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    fn contains(&self, p: Point) -> bool {
        self.center.dist(p) <= self.radius + EPS
    }

    fn diametral(a: Point, b: Point) -> Circle {
        Circle { center: a.midpoint(b), radius: a.dist(b) / 2.0 }
    }

    fn through(a: Point, b: Point, c: Point) -> Circle {
        let bx = b - a;
        let cx = c - a;
        let d = 2.0 * bx.cross(cx);
        if d.abs() <= EPS * EPS {
            // Collinear: the widest pair spans the other point.
            return [Circle::diametral(a, b), Circle::diametral(a, c), Circle::diametral(b, c)]
                .into_iter()
                .max_by(|x, y| x.radius.total_cmp(&y.radius))
                .unwrap();
        }
        let b2 = bx.dot(bx);
        let c2 = cx.dot(cx);
        let ux = (cx.y * b2 - bx.y * c2) / d;
        let uy = (bx.x * c2 - cx.x * b2) / d;
        let center = a + Point::new(ux, uy);
        Circle { center, radius: center.dist(a).max(center.dist(b)).max(center.dist(c)) }
    }
}

/// Minimum enclosing circle of a point set (incremental Welzl).
pub fn enclosing_circle(points: &[Point]) -> Option<Circle> {
    let first = *points.first()?;
    let mut c = Circle { center: first, radius: 0.0 };
    for i in 1..points.len() {
        if c.contains(points[i]) {
            continue;
        }
        c = Circle { center: points[i], radius: 0.0 };
        for j in 0..i {
            if c.contains(points[j]) {
                continue;
            }
            c = Circle::diametral(points[i], points[j]);
            for k in 0..j {
                if !c.contains(points[k]) {
                    c = Circle::through(points[i], points[j], points[k]);
                }
            }
        }
    }
    Some(c)
}

/// Smallest disc containing the polygon. Only the vertices are used, which
/// is exact for any polygon since the hull of the vertices contains it.
pub fn smallest_enclosing_circle(poly: &Polygon) -> Circle {
    enclosing_circle(poly.vertices()).expect("polygon has vertices")
}

/// Chebyshev center of a convex polygon: maximizes the distance to the
/// nearest edge line subject to staying inside every edge half-plane. The
/// optimum is a vertex of the (x, y, r) linear program, so every triple of
/// tight edge constraints is enumerated.
pub fn largest_inscribed_circle(poly: &Polygon) -> Result<Circle, GeomError> {
    if !poly.is_convex() {
        return Err(GeomError::NotConvex);
    }
    // Inward unit normal n and offset h with n . x - h >= r for every edge.
    let lines: Vec<(Point, f64)> = poly
        .edges()
        .map(|(a, b)| {
            let n = (b - a).perp().normalized().expect("edges have positive length");
            (n, n.dot(a))
        })
        .collect();
    let m = lines.len();
    let mut best: Option<Circle> = None;
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let Some((center, radius)) = solve_tight(lines[i], lines[j], lines[k]) else {
                    continue;
                };
                let feasible = radius >= -EPS && lines.iter().all(|&(n, h)| n.dot(center) - h >= radius - EPS);
                if feasible && best.is_none_or(|b| radius > b.radius + 1e-15) {
                    best = Some(Circle { center, radius });
                }
            }
        }
    }
    best.ok_or(GeomError::Degenerate("no feasible inscribed circle"))
}

/// Solves n_l . x - r = h_l for the three lines by Cramer's rule.
fn solve_tight(l1: (Point, f64), l2: (Point, f64), l3: (Point, f64)) -> Option<(Point, f64)> {
    let rows = [l1, l2, l3];
    let det3 = |c0: [f64; 3], c1: [f64; 3], c2: [f64; 3]| {
        c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
            + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
    };
    let cx = [rows[0].0.x, rows[1].0.x, rows[2].0.x];
    let cy = [rows[0].0.y, rows[1].0.y, rows[2].0.y];
    let cr = [-1.0, -1.0, -1.0];
    let rhs = [rows[0].1, rows[1].1, rows[2].1];
    let d = det3(cx, cy, cr);
    if d.abs() < 1e-12 {
        return None;
    }
    let x = det3(rhs, cy, cr) / d;
    let y = det3(cx, rhs, cr) / d;
    let r = det3(cx, cy, rhs) / d;
    Some((Point::new(x, y), r))
}

/// R / r for a convex polygon.
pub fn fatness(poly: &Polygon) -> Result<f64, GeomError> {
    let inner = largest_inscribed_circle(poly)?;
    let outer = smallest_enclosing_circle(poly);
    Ok(outer.radius / inner.radius)
}

pub fn is_c_fat(poly: &Polygon, c: f64) -> Result<bool, GeomError> {
    if !(c > 1.0) {
        return Err(GeomError::Degenerate("fatness bound must exceed 1"));
    }
    let inner = largest_inscribed_circle(poly)?;
    let outer = smallest_enclosing_circle(poly);
    Ok(outer.radius <= c * inner.radius * (1.0 + 1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    fn triangle() -> Polygon {
        Polygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 3f64.sqrt() / 2.0)]).unwrap()
    }

    #[test]
    fn enclosing_examples() {
        let sq = Polygon::rect(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        let c = smallest_enclosing_circle(&sq);
        assert!(c.center.dist(Point::new(0.5, 0.5)) < 1e-12);
        assert!(close(c.radius, 2f64.sqrt() / 2.0));
        assert!(close(smallest_enclosing_circle(&triangle()).radius, 1.0 / 3f64.sqrt()));
    }

    #[test]
    fn enclosing_near_collinear_matches_brute_force() {
        let pts = [Point::new(0.0, 0.0), Point::new(1.0, 1e-4), Point::new(2.0, 0.0), Point::new(1.0, -1e-4)];
        let quad = Polygon::new(pts.to_vec()).unwrap();
        let c = smallest_enclosing_circle(&quad);
        // Brute force: smallest candidate over pair and triple circles that covers all.
        let mut best = f64::INFINITY;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let cand = Circle::diametral(pts[i], pts[j]);
                if pts.iter().all(|&p| cand.contains(p)) {
                    best = best.min(cand.radius);
                }
                for k in (j + 1)..4 {
                    let cand = Circle::through(pts[i], pts[j], pts[k]);
                    if pts.iter().all(|&p| cand.contains(p)) {
                        best = best.min(cand.radius);
                    }
                }
            }
        }
        assert!(close(c.radius, best));
        assert!(close(c.radius, 1.0));
    }

    #[test]
    fn inscribed_examples() {
        let sq = Polygon::rect(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        let c = largest_inscribed_circle(&sq).unwrap();
        assert!(close(c.radius, 0.5));
        assert!(c.center.dist(Point::new(0.5, 0.5)) < 1e-12);
        assert!(close(largest_inscribed_circle(&triangle()).unwrap().radius, 1.0 / (2.0 * 3f64.sqrt())));
        let rect = Polygon::rect(Point::new(0.0, 0.0), Point::new(2.0, 1.0)).unwrap();
        assert!(close(largest_inscribed_circle(&rect).unwrap().radius, 0.5));
    }

    #[test]
    fn inscribed_rejects_non_convex() {
        let l = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ])
        .unwrap();
        assert_eq!(largest_inscribed_circle(&l), Err(GeomError::NotConvex));
        assert!(is_c_fat(&l, 2.0).is_err());
    }

    #[test]
    fn fatness_examples() {
        let sq = Polygon::rect(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        assert!(is_c_fat(&sq, 2.0).unwrap());
        assert!(close(fatness(&sq).unwrap(), 2f64.sqrt()));
        let long = Polygon::rect(Point::new(0.0, 0.0), Point::new(10.0, 1.0)).unwrap();
        assert!((fatness(&long).unwrap() - 101f64.sqrt()).abs() < 1e-9);
        assert!(!is_c_fat(&long, 2.0).unwrap());
        let exact = fatness(&triangle()).unwrap();
        assert!(is_c_fat(&triangle(), exact).unwrap());
    }
}
