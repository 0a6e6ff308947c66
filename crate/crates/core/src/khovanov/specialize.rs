//! Base change to F[x]/(x² − t₀): each F[x]-generator g becomes the F-basis
//! {g, x·g}, and dimensions are computed by plain elimination over F.

use std::collections::BTreeMap;

use super::complex::ChainComplex;
use super::KhovanovError;
use crate::algebra::{field_homology_dimension, FpMatrix};

/// F-dimension of the specialised homology in each homological degree.
pub fn specialize_dimension(
    c: &ChainComplex,
    t_value: u32,
) -> Result<BTreeMap<i64, usize>, KhovanovError> {
    let fp = c.fp();
    let t_value = t_value % fp.prime();
    let degrees = c.degrees();
    let lo = degrees.keys().next().copied().unwrap_or(0);
    let hi = degrees.keys().last().copied().unwrap_or(0);
    // matrix of d_i : C_i → C_{i+1} over F
    let block = |i: i64| -> FpMatrix {
        let src = c.degree_range(i);
        let tgt = c.degree_range(i + 1);
        let mut m = FpMatrix::zeros(2 * tgt.len(), 2 * src.len());
        for col in src.clone() {
            for (&row, e) in &c.differential().cols[col] {
                let (coef, k) = e.as_monomial().expect("differential entries are monomials");
                for shift in 0..2 {
                    // x^shift · g  ↦  coef · x^(k+shift) · h
                    let n = k + shift;
                    let scalar = fp.mul(coef, fp.pow(t_value, (n / 2) as u64));
                    m.add_entry(
                        2 * (row - tgt.start) + n % 2,
                        2 * (col - src.start) + shift,
                        scalar,
                        fp,
                    );
                }
            }
        }
        m
    };
    let mut out = BTreeMap::new();
    for i in lo..=hi {
        let d_in = block(i - 1);
        let d_out = block(i);
        out.insert(i, field_homology_dimension(&d_in, &d_out, fp)?);
    }
    Ok(out)
}
