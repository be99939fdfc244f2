//! Planar convex geometry: points, canonical convex polygons, polar duality,
//! Hausdorff distance and the classical radii.

mod hausdorff;
mod json;
pub mod lp;
mod measures;
mod point;
mod polygon;
mod tolerance;

pub use hausdorff::hausdorff_distance;
pub use json::{read_polygon_json, write_polygon_json, PolygonDoc};
pub use measures::{circumradius, enclosing_circle, inball, inradius, min_width};
pub use point::Point2;
pub use polygon::ConvexPolygon;
pub use tolerance::Tolerance;
