//! Sparse matrices over F_p and rank by elimination — an independent path to
//! homology dimensions that never touches polynomials.

use std::collections::HashMap;

use super::{AlgebraError, Fp};

/// Sparse matrix stored as sorted `(col, value)` rows. Acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, u32)>>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> FpMatrix {
        FpMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<u32>]) -> FpMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = FpMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.data[r].push((c, v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` at `(r, c)`.
    pub fn add_entry(&mut self, r: usize, c: usize, v: u32, fp: Fp) {
        if v == 0 {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => {
                let s = fp.add(row[i].1, v);
                if s == 0 {
                    row.remove(i);
                } else {
                    row[i].1 = s;
                }
            }
            Err(i) => row.insert(i, (c, v)),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    /// `self * other`.
    pub fn mul(&self, other: &FpMatrix, fp: Fp) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = FpMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: HashMap<usize, u32> = HashMap::new();
            for &(k, a) in row {
                for &(c, b) in &other.data[k] {
                    let e = acc.entry(c).or_insert(0);
                    *e = fp.add(*e, fp.mul(a, b));
                }
            }
            let mut v: Vec<_> = acc.into_iter().filter(|e| e.1 != 0).collect();
            v.sort_unstable();
            out.data[r] = v;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Rank by sparse row reduction. Rows are inserted shortest first to limit fill-in.
    pub fn rank(&self, fp: Fp) -> usize {
        let mut order: Vec<usize> = (0..self.rows)
            .filter(|&r| !self.data[r].is_empty())
            .collect();
        order.sort_by_key(|&r| (self.data[r].len(), r));
        // pivot column -> normalized row with that leading column
        let mut pivots: HashMap<usize, Vec<(usize, u32)>> = HashMap::new();
        for r in order {
            let mut row = self.data[r].clone();
            while let Some(&(lead, a)) = row.first() {
                match pivots.get(&lead) {
                    Some(p) => row = axpy(&row, p, fp.neg(a), fp),
                    None => {
                        let s = fp.inv(a);
                        for e in row.iter_mut() {
                            e.1 = fp.mul(e.1, s);
                        }
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// `x + s * y` on sorted sparse rows.
fn axpy(x: &[(usize, u32)], y: &[(usize, u32)], s: u32, fp: Fp) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, fp.mul(s, y[j].1)));
            j += 1;
        } else {
            let v = fp.add(x[i].1, fp.mul(s, y[j].1));
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `dim ker(d_b) - rank(d_a)` for `C_a --d_a--> C --d_b--> C_b`.
pub fn field_homology_dimension(
    d_a: &FpMatrix,
    d_b: &FpMatrix,
    fp: Fp,
) -> Result<usize, AlgebraError> {
    if d_a.rows != d_b.cols {
        return Err(AlgebraError::DimensionMismatch(format!(
            "incoming map has {} rows, outgoing map has {} columns",
            d_a.rows, d_b.cols
        )));
    }
    if !d_b.mul(d_a, fp).is_zero() {
        return Err(AlgebraError::ComposeNotZero);
    }
    Ok(d_b.cols - d_b.rank(fp) - d_a.rank(fp))
}
