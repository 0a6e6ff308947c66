//! Lee's deformation of Khovanov homology, computed over F[x] with t = x².
//!
//! The basepoint circle's label is folded into the F[x] coefficient, so a vertex
//! with c circles contributes 2^(c−1) generators. Gradings: i = |v| − n₋ and
//! j = (labels) + 1 + |v| + n₊ − 2n₋, where a label 1 counts +1, a label x
//! counts −1, and the variable x itself has j-degree −2.

mod complex;
pub mod frobenius;
mod homology;
mod reduce;
mod specialize;

use thiserror::Error;

use crate::algebra::{AlgebraError, Fp};
use crate::diagram::{Diagram, DiagramError};

pub(crate) use complex::identity_pieces;
pub use complex::{check_chain_map, check_homogeneous, ChainComplex, Generator, MAX_CROSSINGS};
pub use frobenius::{FrobeniusData, Piece};
pub use homology::{
    homology, torsion_order, BigradeEntry, DegreeEntry, Homology, HomologyResult, SummandRef,
};
pub use reduce::{AnyUnit, Pivot, Reduction};
pub use specialize::specialize_dimension;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KhovanovError {
    #[error("expected a knot diagram, found {0} components")]
    NotAKnot(usize),
    #[error("{0} crossings exceed the supported maximum")]
    TooLarge(usize),
    #[error("internal error: d∘d is not zero")]
    D2NotZero,
    #[error("internal error: map is not homogeneous")]
    NotHomogeneous,
    #[error("internal error: not a chain map ({0})")]
    NotAChainMap(String),
    #[error("no arc {0} in the diagram")]
    NoSuchArc(u32),
    #[error("internal error: expected a cycle")]
    NotACycle,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// The complex of a knot diagram; links are rejected.
pub fn build_complex(d: &Diagram, fp: Fp) -> Result<ChainComplex, KhovanovError> {
    let n = d.component_count();
    if n != 1 {
        return Err(KhovanovError::NotAKnot(n));
    }
    ChainComplex::new(d, fp)
}
