//! Univariate polynomials over Z and over prime fields.

mod cyclotomic;
mod factor;
mod fp;
mod int;
mod resultant;

pub use cyclotomic::{cyclotomic, cyclotomic_table, pn_poly};
pub use factor::{
    distinct_degree, equal_degree, factor, factor_mod, factor_mod_seeded, factor_shape, find_irreducible,
    is_irreducible, square_free, DEFAULT_SEED,
};
pub use fp::FpPoly;
pub use int::IntPoly;
pub use resultant::{discriminant, is_separable_mod, resultant};
