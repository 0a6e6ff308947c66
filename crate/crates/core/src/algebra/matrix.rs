//! Dense matrices over F_p[x].

use super::{Fp, Poly};

/// Row-major dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(diag: &[Poly], rows: usize, cols: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix, fp: Fp) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b, fp), fp);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                out.set(a, b, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += q * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, q: &Poly, fp: Fp) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, c).add(&s.mul(q, fp), fp);
            self.set(dst, c, v);
        }
    }

    /// `col[dst] += q * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, q: &Poly, fp: Fp) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self.get(r, src);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, dst).add(&s.mul(q, fp), fp);
            self.set(r, dst, v);
        }
    }

    pub fn scale_row(&mut self, r: usize, c: u32, fp: Fp) {
        for j in 0..self.cols {
            let v = self.get(r, j).scale(c, fp);
            self.set(r, j, v);
        }
    }

    pub fn scale_col(&mut self, c: usize, s: u32, fp: Fp) {
        for i in 0..self.rows {
            let v = self.get(i, c).scale(s, fp);
            self.set(i, c, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self, fp: Fp) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return Poly::zero();
                };
                m.swap_rows(k, r);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m
                        .get(i, j)
                        .mul(m.get(k, k), fp)
                        .sub(&m.get(i, k).mul(m.get(k, j), fp), fp);
                    let (q, r) = num.div_rem(&prev, fp);
                    debug_assert!(r.is_zero());
                    m.set(i, j, q);
                }
                m.set(i, k, Poly::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        if negate {
            d.neg(fp)
        } else {
            d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_triangular() {
        let fp = Fp::new(7).unwrap();
        let x = Poly::x();
        let m = PolyMatrix::from_rows(vec![
            vec![x.clone(), Poly::one()],
            vec![Poly::zero(), x.clone()],
        ]);
        assert_eq!(m.det(fp), Poly::monomial(1, 2));
        let swapped = PolyMatrix::from_rows(vec![
            vec![Poly::zero(), Poly::one()],
            vec![Poly::one(), Poly::zero()],
        ]);
        assert_eq!(swapped.det(fp), Poly::constant(6));
    }
}
