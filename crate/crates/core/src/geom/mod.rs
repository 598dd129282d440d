//! Geometric kernel: points, simple polygons, terrains with obstacles,
//! visibility at range one, boundary walks and fatness.
//!
//! Every predicate uses the absolute tolerance [`EPS`]; a point within `EPS`
//! of a boundary counts as on it.

mod boundary;
mod circles;
mod error;
mod point;
mod polygon;
mod terrain;

pub use boundary::{perimeter_split, polyline_length, walk_boundary, BoundaryCursor, Sense, Walk};
pub use circles::{
    enclosing_circle, fatness, is_c_fat, largest_inscribed_circle, smallest_enclosing_circle, Circle,
};
pub use error::GeomError;
pub use point::{orient, point_segment_distance, project_on_segment, BBox, Point, EPS};
pub use polygon::{convex_hull, segment_distance, segments_touch, Location, Polygon, RingPos};
pub use terrain::{
    distance_to_boundary, first_hit, line_ring_intersections, point_in_terrain, sees, segment_in_terrain,
    validate_regular_terrain, HitEvent, Irregularity, LineHit, RingId, Terrain,
};

/// Classifies `p` against a polygon.
pub fn point_in_polygon(p: Point, poly: &Polygon) -> Location {
    poly.classify(p)
}
