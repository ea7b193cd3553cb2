//! Polytope representations, hulls, Minkowski norms, cone measure and volumes.

pub mod dd;
mod hull;
mod perimeter;
pub mod shapes;

pub use hull::{hull_2d, is_symmetric};
pub use perimeter::{
    facet_functional, h_from_v, hull, v_from_h, volume, Facet, Perimeter, PerimeterJson, PolytopeH,
    PolytopeV,
};
pub use shapes::{
    approximate_circle, approximate_circle_with_angles, approximate_regular_polygon, cube,
    default_circle_angles, hexagon_xy, orthoplex,
};
