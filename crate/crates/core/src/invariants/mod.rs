//! Per-field invariants: discriminant square class, Galois and inertia
//! groups, wild slope content and the Galois mean slope.

pub mod disc;
pub mod galois;
pub mod slopes;

pub use disc::{disc_class, DiscClass};
pub use galois::{galois_group, GaloisData, GaloisInput};
pub use slopes::{gms, SlopeContent};
