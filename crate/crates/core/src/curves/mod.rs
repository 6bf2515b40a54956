//! Elliptic curves, point counting and moduli of level structures.

pub mod census;
pub mod count;
pub mod moduli;
pub mod weierstrass;

pub use weierstrass::{apply_transform, map_point, solve_artin_schreier, Curve, Point, Quad};
pub use count::{count_points, group_structure, hasse_interval, order_bsgs, structure_naive, GroupStructure};
pub use census::{census, census_orders, is_isomorphic, isomorphism_class_reps, isomorphisms, primitive_element};
pub use moduli::{enumerate_moduli, Level, ModuliPoint, ModuliSet, DEFAULT_ENUM_BOUND};
