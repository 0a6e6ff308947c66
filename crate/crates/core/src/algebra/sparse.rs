//! Sparse F_p[x]-linear maps between free modules with numbered generators.

use std::collections::BTreeMap;

use super::{Fp, Poly, PolyMatrix};

pub type SparseVec = BTreeMap<usize, Poly>;

/// Adds `c * v` into `acc`, dropping cancelled entries.
pub fn axpy(acc: &mut SparseVec, c: &Poly, v: &SparseVec, fp: Fp) {
    if c.is_zero() {
        return;
    }
    for (&k, e) in v {
        add_entry(acc, k, &e.mul(c, fp), fp);
    }
}

pub fn add_entry(acc: &mut SparseVec, k: usize, e: &Poly, fp: Fp) {
    if e.is_zero() {
        return;
    }
    let s = match acc.get(&k) {
        Some(old) => old.add(e, fp),
        None => e.clone(),
    };
    if s.is_zero() {
        acc.remove(&k);
    } else {
        acc.insert(k, s);
    }
}

/// Column-oriented sparse matrix: `cols[j]` is the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMap {
    pub n_src: usize,
    pub n_tgt: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMap {
    pub fn zero(n_src: usize, n_tgt: usize) -> SparseMap {
        SparseMap {
            n_src,
            n_tgt,
            cols: vec![SparseVec::new(); n_src],
        }
    }

    pub fn identity(n: usize) -> SparseMap {
        let mut m = SparseMap::zero(n, n);
        for (j, c) in m.cols.iter_mut().enumerate() {
            c.insert(j, Poly::one());
        }
        m
    }

    pub fn add(&mut self, tgt: usize, src: usize, e: &Poly, fp: Fp) {
        add_entry(&mut self.cols[src], tgt, e, fp);
    }

    pub fn get(&self, tgt: usize, src: usize) -> Poly {
        self.cols[src].get(&tgt).cloned().unwrap_or_default()
    }

    pub fn apply(&self, v: &SparseVec, fp: Fp) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in v {
            axpy(&mut out, c, &self.cols[j], fp);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMap, fp: Fp) -> SparseMap {
        assert_eq!(other.n_tgt, self.n_src, "composition dimension mismatch");
        SparseMap {
            n_src: other.n_src,
            n_tgt: self.n_tgt,
            cols: other.cols.iter().map(|c| self.apply(c, fp)).collect(),
        }
    }

    pub fn scale(&self, c: &Poly, fp: Fp) -> SparseMap {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(&k, e)| (k, e.mul(c, fp)))
                    .filter(|(_, e)| !e.is_zero())
                    .collect()
            })
            .collect();
        SparseMap { cols, ..*self }
    }

    pub fn sum(&self, other: &SparseMap, fp: Fp) -> SparseMap {
        assert_eq!((self.n_src, self.n_tgt), (other.n_src, other.n_tgt));
        let mut out = self.clone();
        for (j, col) in other.cols.iter().enumerate() {
            for (&k, e) in col {
                out.add(k, j, e, fp);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// Dense block with the given target rows and source columns.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut m = PolyMatrix::zeros(rows.len(), cols.len());
        for (b, &c) in cols.iter().enumerate() {
            for (r, e) in &self.cols[c] {
                if let Some(&a) = pos.get(r) {
                    m.set(a, b, e.clone());
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_cancel() {
        let fp = Fp::new(5).unwrap();
        let mut a = SparseMap::zero(2, 1);
        a.add(0, 0, &Poly::one(), fp);
        a.add(0, 1, &Poly::constant(4), fp);
        let mut b = SparseMap::zero(1, 2);
        b.add(0, 0, &Poly::x(), fp);
        b.add(1, 0, &Poly::x(), fp);
        // a∘b sends the generator to x + 4x = 0
        assert!(a.compose(&b, fp).is_zero());
        assert_eq!(b.compose(&a, fp).nnz(), 4);
        assert_eq!(SparseMap::identity(2).compose(&b, fp), b);
    }
}
