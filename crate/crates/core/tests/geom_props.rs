use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treasure_hunt::generators::{random_convex_fat_polygon, random_regular_terrain};
use treasure_hunt::geom::*;

fn fat_polygon(seed: u64, c: f64) -> Polygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_convex_fat_polygon(&mut rng, Point::new(1.0, -2.0), 3.0, c).unwrap()
}

fn sample_in(t: &Terrain, rng: &mut ChaCha8Rng) -> Point {
    let bb = t.bbox();
    loop {
        let p = Point::new(rng.gen_range(bb.min.x..bb.max.x), rng.gen_range(bb.min.y..bb.max.y));
        if t.contains(p) {
            return p;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_parts_sum_to_perimeter(seed in any::<u64>(), s in 0.0..1.0f64, u in 0.0..1.0f64) {
        let poly = fat_polygon(seed, 3.0);
        let per = poly.perimeter();
        let (a, b) = (poly.point_at_arc(s * per), poly.point_at_arc(u * per));
        let (x, y) = perimeter_split(&poly, a, b).unwrap();
        prop_assert!((x + y - per).abs() <= 1e-9 * per);
        prop_assert!(x >= 0.0 && y >= 0.0);
    }

    #[test]
    fn full_perimeter_walk_returns(seed in any::<u64>(), s in 0.0..1.0f64, ccw in any::<bool>()) {
        let poly = fat_polygon(seed, 2.0);
        let per = poly.perimeter();
        let start = poly.point_at_arc(s * per);
        let sense = if ccw { Sense::Ccw } else { Sense::Cw };
        let w = walk_boundary(BoundaryCursor::at(&poly, start, sense).unwrap(), per, None).unwrap();
        prop_assert!(w.cursor.point().dist(start) <= 1e-9);
        prop_assert!((w.length - per).abs() <= 1e-9 * per);
        prop_assert!((polyline_length(&w.path) - per).abs() <= 1e-9 * per);
    }

    #[test]
    fn enclosing_radius_dominates_inscribed(seed in any::<u64>(), c in 1.3..4.0f64) {
        let poly = fat_polygon(seed, c);
        let outer = smallest_enclosing_circle(&poly);
        let inner = largest_inscribed_circle(&poly).unwrap();
        prop_assert!(outer.radius >= inner.radius);
        for v in poly.vertices() {
            prop_assert!(v.dist(outer.center) <= outer.radius + 1e-9);
        }
        prop_assert!(poly.boundary_distance(inner.center) >= inner.radius - 1e-9);
    }

    #[test]
    fn short_arc_over_chord_is_bounded(seed in any::<u64>(), ci in 0usize..3, s in 0.0..1.0f64, u in 0.0..1.0f64) {
        let c = [1.5, 2.0, 3.0][ci];
        let poly = fat_polygon(seed, c);
        let per = poly.perimeter();
        let (a, b) = (poly.point_at_arc(s * per), poly.point_at_arc(u * per));
        prop_assume!(a.dist(b) > 1e-6);
        let (x, y) = perimeter_split(&poly, a, b).unwrap();
        prop_assert!(x.min(y) / a.dist(b) <= 4.0 * c + 2.0 + 1e-9);
    }

    #[test]
    fn visibility_is_symmetric(seed in 0u64..500, pick in any::<u64>()) {
        let sc = random_regular_terrain(seed, (seed % 8) as usize, 2.0, 6.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(pick);
        for _ in 0..20 {
            let (p, q) = (sample_in(&sc.terrain, &mut rng), sample_in(&sc.terrain, &mut rng));
            prop_assert_eq!(sc.terrain.sees(p, q), sc.terrain.sees(q, p));
            prop_assert_eq!(sees(p, q, &sc.terrain).unwrap(), sc.terrain.sees(p, q));
        }
    }

    #[test]
    fn first_hit_agrees_with_containment(seed in 0u64..500, pick in any::<u64>()) {
        let sc = random_regular_terrain(seed, 6, 2.0, 8.0).unwrap();
        let t = &sc.terrain;
        let mut rng = ChaCha8Rng::seed_from_u64(pick);
        for _ in 0..20 {
            let (a, b) = (sample_in(t, &mut rng), sample_in(t, &mut rng));
            prop_assume!(a.dist(b) > 1e-6);
            let hit = t.first_hit(a, b).unwrap();
            if t.segment_inside(a, b) {
                prop_assert!(hit.is_none());
            } else if let Some(h) = hit {
                prop_assert!(h.travel <= a.dist(b) + 1e-9);
                prop_assert!(t.ring(h.ring).boundary_distance(h.point) <= 1e-9);
                // Everything before the hit is free.
                if h.travel > 1e-9 {
                    prop_assert!(t.segment_inside(a, h.point));
                }
            }
        }
    }
}

#[test]
fn obstacle_interior_crossing_is_reported() {
    let outer = Polygon::rect(Point::new(0.0, 0.0), Point::new(10.0, 10.0)).unwrap();
    let t = Terrain::new(outer, vec![Polygon::square(Point::new(5.0, 5.0), 2.0).unwrap()]).unwrap();
    let h = t.first_hit(Point::new(1.0, 5.0), Point::new(9.0, 5.5)).unwrap().unwrap();
    assert_eq!(h.ring, RingId::Obstacle(0));
    assert!((h.point.x - 4.0).abs() < 1e-12);
    assert!((h.travel - h.point.dist(Point::new(1.0, 5.0))).abs() < 1e-12);
}
