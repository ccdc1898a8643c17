//! Complete lists of extensions of `Q_p` of a given degree.

pub mod degree_p;
pub mod mass;
pub mod table;
pub mod tame;
pub mod wild;

pub use crate::field::unramified::defining_poly as unramified_defining_poly;
pub use degree_p::{cp_cd_label, degree_p_ramified, DegreePField, DegreePSpec};
pub use mass::{mass_check, stratum_exponents, stratum_layout, stratum_mass, StratumLayout};
pub use tame::{tame_extensions, tame_fields, TameSpec};
pub use wild::{wild_enumerate, wild_fields, wild_stratum, StratumCertificate, StratumField};
pub use table::{generate, generate_with, FieldTable, GeneratedField, Origin, StratumCache};
