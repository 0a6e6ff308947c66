//! Maps on homology in the summand bases of source and target.

use super::maps::ChainMap;
use super::CobordismError;
use crate::algebra::{snf, Fp, FpMatrix, Poly, PolyMatrix, Summand};
use crate::khovanov::Homology;

/// Matrix of an induced map: column `k` holds the coordinates of the image of
/// source summand `k`, each reduced modulo its target summand's torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMap {
    pub source: Vec<Summand>,
    pub target: Vec<Summand>,
    pub matrix: PolyMatrix,
}

/// Reduces `p` in the summand `s` (free, or F[x]/(x^e)).
fn reduce_in(s: &Summand, p: &Poly) -> Poly {
    match s.exponent {
        None => p.clone(),
        Some(e) => Poly::from_coeffs(p.coeffs().iter().take(e as usize).copied().collect()),
    }
}

/// Lifts each source summand generator through `f` and expresses the image in the
/// target's summand basis; checks that torsion relations are respected.
pub fn induced_homology_map(
    f: &ChainMap,
    hs: &Homology,
    ht: &Homology,
) -> Result<HomologyMap, CobordismError> {
    let fp = f.source.fp();
    let src = hs.summands();
    let tgt = ht.summands();
    let mut matrix = PolyMatrix::zeros(tgt.len(), src.len());
    for (col, (r, s)) in src.iter().enumerate() {
        let image = f.map.apply(&hs.cycle(*r), fp);
        let coords = ht
            .coordinates(r.i, &image)
            .map_err(|_| CobordismError::NotWellDefined)?;
        let in_degree: Vec<usize> = tgt
            .iter()
            .enumerate()
            .filter(|(_, (t, _))| t.i == r.i)
            .map(|(k, _)| k)
            .collect();
        for (c, &row) in coords.iter().zip(&in_degree) {
            let v = reduce_in(&tgt[row].1, c);
            // x^e g = 0 in the source forces x^e φ(g) = 0 in the target
            if let Some(e) = s.exponent {
                if !reduce_in(&tgt[row].1, &v.mul_monomial(1, e as usize, fp)).is_zero() {
                    return Err(CobordismError::NotWellDefined);
                }
            }
            matrix.set(row, col, v);
        }
    }
    Ok(HomologyMap {
        source: src.into_iter().map(|(_, s)| s).collect(),
        target: tgt.into_iter().map(|(_, s)| s).collect(),
        matrix,
    })
}

impl HomologyMap {
    pub fn identity(h: &Homology) -> HomologyMap {
        let s: Vec<Summand> = h.summands().into_iter().map(|(_, s)| s).collect();
        let n = s.len();
        let mut m = HomologyMap {
            source: s.clone(),
            target: s,
            matrix: PolyMatrix::identity(n),
        };
        m.normalize();
        m
    }

    fn normalize(&mut self) {
        for r in 0..self.matrix.rows() {
            for c in 0..self.matrix.cols() {
                let v = reduce_in(&self.target[r], self.matrix.get(r, c));
                self.matrix.set(r, c, v);
            }
        }
    }

    /// Multiplication by a polynomial, reduced in the target.
    pub fn scale(&self, p: &Poly, fp: Fp) -> HomologyMap {
        let mut m = self.clone();
        for r in 0..m.matrix.rows() {
            for c in 0..m.matrix.cols() {
                m.matrix.set(r, c, m.matrix.get(r, c).mul(p, fp));
            }
        }
        m.normalize();
        m
    }

    /// The constant `c` with `self = c · other`, if there is one.
    pub fn unit_ratio(&self, other: &HomologyMap, fp: Fp) -> Option<u32> {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return None;
        }
        let mut ratio: Option<u32> = None;
        for r in 0..self.matrix.rows() {
            for c in 0..self.matrix.cols() {
                let (a, b) = (self.matrix.get(r, c), other.matrix.get(r, c));
                if b.is_zero() {
                    if !a.is_zero() {
                        return None;
                    }
                    continue;
                }
                let k = *ratio.get_or_insert_with(|| fp.mul(a.lead(), fp.inv(b.lead())));
                if *a != b.scale(k, fp) {
                    return None;
                }
            }
        }
        match ratio {
            Some(0) => None,
            Some(k) => Some(k),
            None => Some(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Trivial kernel: the free parts map with full rank over F(x), and the socle
    /// of the torsion (`x^(e−1)` times each torsion generator) maps injectively.
    pub fn is_injective(&self, fp: Fp) -> bool {
        let free_src: Vec<usize> = (0..self.source.len())
            .filter(|&k| self.source[k].exponent.is_none())
            .collect();
        let free_tgt: Vec<usize> = (0..self.target.len())
            .filter(|&k| self.target[k].exponent.is_none())
            .collect();
        if snf(&self.matrix.submatrix(&free_tgt, &free_src), fp).rank != free_src.len() {
            return false;
        }
        // F-coordinates: (target summand, power of x)
        let socle: Vec<(usize, u32)> = (0..self.source.len())
            .filter_map(|k| self.source[k].exponent.map(|e| (k, e)))
            .collect();
        let mut rows = Vec::new();
        for &(k, e) in &socle {
            let mut col = Vec::new();
            for r in 0..self.target.len() {
                let v = reduce_in(
                    &self.target[r],
                    &self.matrix.get(r, k).mul_monomial(1, e as usize - 1, fp),
                );
                for (p, &c) in v.coeffs().iter().enumerate() {
                    if c != 0 {
                        col.push(((r, p), c));
                    }
                }
            }
            rows.push(col);
        }
        let mut index = std::collections::BTreeMap::new();
        for col in &rows {
            for (key, _) in col {
                let n = index.len();
                index.entry(*key).or_insert(n);
            }
        }
        let mut m = FpMatrix::zeros(index.len(), socle.len());
        for (j, col) in rows.iter().enumerate() {
            for (key, c) in col {
                m.add_entry(index[key], j, *c, fp);
            }
        }
        m.rank(fp) == socle.len()
    }
}
