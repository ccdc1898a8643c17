//! Tables of finite extensions of `Q_p`: enumeration, invariants,
//! identification of p-adic factor fields and Galois root discriminant bounds.

pub mod catalog;
pub mod error;
pub mod enumerate;
pub mod field;
pub mod grd;
pub mod identify;
pub mod invariants;
pub mod padic;

pub use error::{Error, Result};
