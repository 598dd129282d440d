use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GeneratorError;
use crate::geom::{
    convex_hull, is_c_fat, segment_distance, validate_regular_terrain, Location, Point, Polygon, Terrain,
};

const CLEARANCE: f64 = 0.1;
const TREASURE_CLEARANCE: f64 = 0.05;
const MAX_TRIES: usize = 5_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomScenario {
    pub terrain: Terrain,
    pub start: Point,
    pub treasure: Point,
}

/// Convex polygon with 3 to 12 jittered vertices around `center` at radius
/// about `radius`, redrawn until it is `c`-fat. Sides are biased upward for
/// small `c` since only near-round polygons qualify.
pub fn random_convex_fat_polygon<R: Rng + ?Sized>(
    rng: &mut R,
    center: Point,
    radius: f64,
    c: f64,
) -> Result<Polygon, GeneratorError> {
    if !(c > 1.0) || !(radius > 0.0) {
        return Err(GeneratorError::BadParams(format!("need c > 1 and radius > 0 (c = {c}, radius = {radius})")));
    }
    // Regular n-gons have fatness 1/cos(pi/n); start where that fits under c.
    let min_sides = (3..=12).find(|&n| 1.0 / (std::f64::consts::PI / n as f64).cos() < c).unwrap_or(12);
    for _ in 0..MAX_TRIES {
        let n = rng.gen_range(min_sides..=12.max(min_sides));
        let step = TAU / n as f64;
        let phase = rng.gen_range(0.0..TAU);
        let pts: Vec<Point> = (0..n)
            .map(|j| {
                let ang = phase + step * (j as f64 + rng.gen_range(-0.3..0.3));
                let r = radius * rng.gen_range(0.75..1.0);
                center + Point::new(ang.cos(), ang.sin()) * r
            })
            .collect();
        let Ok(poly) = convex_hull(&pts) else { continue };
        if poly.len() >= 3 && poly.is_convex() && is_c_fat(&poly, c).unwrap_or(false) {
            return Ok(poly);
        }
    }
    Err(GeneratorError::Placement { placed: 0, requested: 1 })
}

fn clear_of(a: &Polygon, b: &Polygon, gap: f64) -> bool {
    if !a.bbox().overlaps(&b.bbox(), gap) {
        return true;
    }
    if a.classify(b.vertex(0)) != Location::Exterior || b.classify(a.vertex(0)) != Location::Exterior {
        return false;
    }
    a.edges().all(|(p, q)| b.edges().all(|(r, s)| segment_distance(p, q, r, s) >= gap))
}

fn free_point<R: Rng>(rng: &mut R, t: &Terrain, clearance: f64) -> Option<Point> {
    let bb = t.bbox();
    (0..MAX_TRIES).find_map(|_| {
        let p = Point::new(rng.gen_range(bb.min.x..bb.max.x), rng.gen_range(bb.min.y..bb.max.y));
        let ok = t.contains_interior(p) && t.distance_to_boundary(p).is_ok_and(|d| d >= clearance);
        ok.then_some(p)
    })
}

/// Seeded random regular terrain inside `[0, extent]²`: a convex outer hull,
/// `n_obstacles` convex `c`-fat obstacles kept 0.1 apart and 0.1 from the
/// outer boundary, a start and a treasure at least `extent / 4` apart.
pub fn random_regular_terrain(seed: u64, n_obstacles: usize, c: f64, extent: f64) -> Result<RandomScenario, GeneratorError> {
    if !(c > 1.0) || !(extent > 0.0) {
        return Err(GeneratorError::BadParams(format!("need c > 1 and extent > 0 (c = {c}, extent = {extent})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mid = Point::new(extent / 2.0, extent / 2.0);
    let hull_pts: Vec<Point> = (0..12)
        .map(|j| {
            let ang = TAU * (j as f64 + rng.gen_range(-0.35..0.35)) / 12.0;
            mid + Point::new(ang.cos(), ang.sin()) * (extent / 2.0 * rng.gen_range(0.85..1.0))
        })
        .collect();
    let outer = convex_hull(&hull_pts)?;

    let mut obstacles: Vec<Polygon> = Vec::with_capacity(n_obstacles);
    let mut tries = 0;
    while obstacles.len() < n_obstacles {
        tries += 1;
        if tries > MAX_TRIES {
            return Err(GeneratorError::Placement { placed: obstacles.len(), requested: n_obstacles });
        }
        let radius = extent * rng.gen_range(0.015..0.09);
        let bb = outer.bbox();
        let center = Point::new(rng.gen_range(bb.min.x..bb.max.x), rng.gen_range(bb.min.y..bb.max.y));
        let poly = random_convex_fat_polygon(&mut rng, center, radius, c)?;
        let inside = poly
            .vertices()
            .iter()
            .all(|&v| outer.classify(v) == Location::Interior && outer.boundary_distance(v) >= CLEARANCE);
        if inside && obstacles.iter().all(|o| clear_of(o, &poly, CLEARANCE)) {
            obstacles.push(poly);
        }
    }
    let terrain = Terrain::new(outer, obstacles)?;
    validate_regular_terrain(&terrain, c)?;

    for _ in 0..MAX_TRIES {
        let (Some(start), Some(treasure)) =
            (free_point(&mut rng, &terrain, TREASURE_CLEARANCE), free_point(&mut rng, &terrain, TREASURE_CLEARANCE))
        else {
            break;
        };
        if start.dist(treasure) >= extent / 4.0 {
            return Ok(RandomScenario { terrain, start, treasure });
        }
    }
    Err(GeneratorError::Placement { placed: n_obstacles, requested: n_obstacles })
}
