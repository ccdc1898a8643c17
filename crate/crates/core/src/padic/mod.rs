//! Bounded-precision arithmetic over `Z_p`, finite fields, Newton polygons and
//! Hensel lifting.

pub mod ff;
pub mod fpx;
pub mod hensel;
pub mod intpoly;
pub mod linalg;
pub mod newton;
pub mod number;
pub mod poly;
pub mod zmod;

pub use ff::{ff_element_order, FiniteField, FiniteFieldElement};
pub use hensel::hensel_split;
pub use intpoly::IntPoly;
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use number::PAdicNumber;
pub use poly::{poly_disc_exponent, PAdicPolynomial};
pub use zmod::ZMod;
