//! Exact arithmetic: the prime field, polynomials over it, Smith normal form
//! and the cokernel decomposition used for homology.

mod field;
mod fpmat;
mod matrix;
mod module;
mod poly;
mod snf;
mod sparse;

use thiserror::Error;

pub use field::{Fp, DEFAULT_PRIME};
pub use fpmat::{field_homology_dimension, FpMatrix};
pub use matrix::PolyMatrix;
pub use module::{module_decompose, ModuleDecomposition, Summand};
pub use poly::{poly_gcd, Poly, PolyDisplay};
pub use snf::{snf, SmithForm};
pub use sparse::{add_entry, axpy, SparseMap, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("characteristic 2 is not allowed: 2 must be invertible in the base field")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u32),
    #[error("composite of consecutive differentials is not zero")]
    ComposeNotZero,
    #[error("invariant factor {0} is not a monomial")]
    NonMonomialTorsion(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
