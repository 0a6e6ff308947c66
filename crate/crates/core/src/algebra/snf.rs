//! Smith normal form over F_p[x] with both transforms and their inverses.

use super::{Fp, Poly, PolyMatrix};

/// `u * a * v == d`, with `u_inv`, `v_inv` the exact inverses of `u`, `v`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub v_inv: PolyMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    fp: Fp,
    d: PolyMatrix,
    u: PolyMatrix,
    u_inv: PolyMatrix,
    v: PolyMatrix,
    v_inv: PolyMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += q * row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &Poly) {
        let fp = self.fp;
        self.d.add_row_multiple(dst, src, q, fp);
        self.u.add_row_multiple(dst, src, q, fp);
        let nq = q.neg(fp);
        self.u_inv.add_col_multiple(src, dst, &nq, fp);
    }

    /// col[dst] += q * col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &Poly) {
        let fp = self.fp;
        self.d.add_col_multiple(dst, src, q, fp);
        self.v.add_col_multiple(dst, src, q, fp);
        let nq = q.neg(fp);
        self.v_inv.add_row_multiple(src, dst, &nq, fp);
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        let fp = self.fp;
        self.d.scale_row(r, s, fp);
        self.u.scale_row(r, s, fp);
        self.u_inv.scale_col(r, fp.inv(s), fp);
    }

    /// Minimal-degree nonzero entry in the trailing block, ties by (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for r in t..self.d.rows() {
            for c in t..self.d.cols() {
                if let Some(deg) = self.d.get(r, c).degree() {
                    if best.map_or(true, |(bd, _, _)| deg < bd) {
                        best = Some((deg, r, c));
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }
}

/// Smith normal form. Pivots are chosen by minimal degree (ties by position), so
/// the output is deterministic; diagonal entries are monic.
pub fn snf(a: &PolyMatrix, fp: Fp) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        fp,
        d: a.clone(),
        u: PolyMatrix::identity(m),
        u_inv: PolyMatrix::identity(m),
        v: PolyMatrix::identity(n),
        v_inv: PolyMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((r, c)) = w.find_pivot(t) else {
            break;
        };
        w.swap_rows(t, r);
        w.swap_cols(t, c);
        loop {
            let mut dirty = false;
            let pivot = w.d.get(t, t).clone();
            for r in t + 1..m {
                if w.d.get(r, t).is_zero() {
                    continue;
                }
                let (q, rem) = w.d.get(r, t).div_rem(&pivot, fp);
                w.row_op(r, t, &q.neg(fp));
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..n {
                if w.d.get(t, c).is_zero() {
                    continue;
                }
                let (q, rem) = w.d.get(t, c).div_rem(&pivot, fp);
                w.col_op(c, t, &q.neg(fp));
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder of smaller degree survived: re-pivot within row/column t.
                let (r, c) = smallest_in_cross(&w.d, t);
                w.swap_rows(t, r);
                w.swap_cols(t, c);
                continue;
            }
            // Row and column are clear; enforce divisibility of the trailing block.
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| !pivot.divides(w.d.get(r, c), fp)));
            match bad {
                Some(r) => w.row_op(t, r, &Poly::one()),
                None => break,
            }
        }
        let lead = w.d.get(t, t).lead();
        if lead != 1 {
            w.scale_row(t, fp.inv(lead));
        }
        t += 1;
    }
    SmithForm {
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        rank: t,
    }
}

/// Lowest-degree nonzero entry in row t or column t (including the corner).
fn smallest_in_cross(d: &PolyMatrix, t: usize) -> (usize, usize) {
    let mut best = (usize::MAX, t, t);
    let mut consider = |r: usize, c: usize| {
        if let Some(deg) = d.get(r, c).degree() {
            if deg < best.0 {
                best = (deg, r, c);
            }
        }
    };
    for r in t..d.rows() {
        consider(r, t);
    }
    for c in t + 1..d.cols() {
        consider(t, c);
    }
    (best.1, best.2)
}
