//! Cokernel decomposition of a presentation matrix into free and monomial-torsion summands.

use serde::{Deserialize, Serialize};

use super::{snf, AlgebraError, Fp, PolyMatrix};

/// One cyclic summand: free when `exponent` is `None`, otherwise `F[x]/(x^k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub exponent: Option<u32>,
    /// Bigrade of the summand's generator, when generator grades were supplied.
    pub grade: Option<(i64, i64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDecomposition {
    pub free_rank: usize,
    /// Sorted ascending.
    pub torsion_exponents: Vec<u32>,
    pub summands: Vec<Summand>,
}

impl ModuleDecomposition {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion_exponents.is_empty()
    }

    pub fn max_torsion(&self) -> u32 {
        self.torsion_exponents.iter().copied().max().unwrap_or(0)
    }
}

/// Decomposes `F[x]^n / rowspace(presentation)`, `n = presentation.cols()`.
///
/// Grades follow the convention that `x` lowers the second grade by 2: a
/// summand generated by `c x^k e_j` gets grade `(i_j, j_j - 2k)`.
pub fn module_decompose(
    presentation: &PolyMatrix,
    generator_grades: Option<&[(i64, i64)]>,
    fp: Fp,
) -> Result<ModuleDecomposition, AlgebraError> {
    let n = presentation.cols();
    if let Some(g) = generator_grades {
        if g.len() != n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} grades for {} generators",
                g.len(),
                n
            )));
        }
    }
    let s = snf(presentation, fp);
    // In coordinates y = x V the relations are the rows of D, so the k-th summand
    // is generated by row k of V^{-1}.
    let grade_of = |k: usize| -> Option<(i64, i64)> {
        let grades = generator_grades?;
        (0..n).find_map(|j| {
            let e = s.v_inv.get(k, j);
            e.as_monomial()
                .map(|(_, deg)| (grades[j].0, grades[j].1 - 2 * deg as i64))
        })
    };
    let mut out = ModuleDecomposition::default();
    for k in 0..n {
        if k < s.rank {
            let d = s.d.get(k, k);
            if d.is_unit() {
                continue;
            }
            match d.as_monomial() {
                Some((1, e)) => {
                    out.torsion_exponents.push(e as u32);
                    out.summands.push(Summand {
                        exponent: Some(e as u32),
                        grade: grade_of(k),
                    });
                }
                _ => return Err(AlgebraError::NonMonomialTorsion(d.display(fp).to_string())),
            }
        } else {
            out.free_rank += 1;
            out.summands.push(Summand {
                exponent: None,
                grade: grade_of(k),
            });
        }
    }
    out.torsion_exponents.sort_unstable();
    Ok(out)
}
