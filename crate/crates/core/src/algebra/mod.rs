//! Exact arithmetic: finite fields and their towers, the rationals,
//! polynomials, and the diamond group ring.

pub mod diamond;
pub mod extension;
pub mod field;
pub mod fp_poly;
pub mod gf;
pub mod laurent;
pub mod poly;
pub mod rational;

pub use diamond::{psi_polynomial, DiamondGroup, GroupRingElem, GroupRingPoly};
pub use extension::{extend, Embedding, Extension};
pub use field::{Fe, Field, GaloisField};
pub use fp_poly::find_irreducible;
pub use gf::{FiniteField, GfElem, SmallField};
pub use laurent::{Laurent, LaurentRing};
pub use poly::{Poly, PolyRing};
pub use rational::{parse_rational, rat, Rationals};
