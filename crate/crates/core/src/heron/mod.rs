//! Triangles, the inradius-one surface, and its elliptic fibration.

pub mod family;
pub mod surface;
pub mod triangle;
pub mod triples;

pub use family::{
    family_curve, family_curve_at, family_sections, from_weierstrass, plane_parameter,
    to_weierstrass, FamilySections, Gs, Qs,
};
pub use surface::{canonical_projective, inverse_param, param_surface, SurfacePoint};
pub use triangle::{
    heronize, parse_csv, point_to_triangle, triangle_coordinates, triangle_to_point, verify_heron,
    HeronReport, Heronized, Triangle, TriangleRecord,
};
pub use triples::{
    generate_triple, real_component_coordinate, specialize_point, specialize_triangle,
    TripleFamily,
};
