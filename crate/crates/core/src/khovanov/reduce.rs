//! Gaussian elimination of unit entries of a differential.
//!
//! Cancelling an isomorphism `u: b → c` replaces `d(a→e)` by
//! `d(a→e) − d(a→c) u⁻¹ d(b→e)` and deletes `b`, `c`. The recorded steps give the
//! projection `f` onto the reduced complex and the inclusion `g` back, which are
//! mutually inverse chain homotopy equivalences.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{add_entry, axpy, Fp, Poly, SparseMap, SparseVec};

#[derive(Clone, Debug)]
struct Step {
    b: usize,
    c: usize,
    u_inv: u32,
    /// d(b → e) for e ≠ c at elimination time
    row_b: SparseVec,
    /// d(a → c) for a ≠ b at elimination time
    col_c: SparseVec,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    fp: Fp,
    n: usize,
    steps: Vec<Step>,
    /// Surviving original generators, ascending.
    pub kept: Vec<usize>,
    position: BTreeMap<usize, usize>,
    /// Differential on the surviving generators, indexed by position in `kept`.
    pub d: SparseMap,
}

/// Which entries may be cancelled.
pub trait Pivot {
    fn allowed(&self, b: usize, c: usize) -> bool;
}

/// Cancel every unit entry.
pub struct AnyUnit;

impl Pivot for AnyUnit {
    fn allowed(&self, _: usize, _: usize) -> bool {
        true
    }
}

impl<F: Fn(usize, usize) -> bool> Pivot for F {
    fn allowed(&self, b: usize, c: usize) -> bool {
        self(b, c)
    }
}

impl Reduction {
    /// Greedy elimination: generators in order, each cancelled against its first
    /// admissible unit target, until no admissible unit entry remains.
    pub fn new(d: &SparseMap, fp: Fp, pivot: &impl Pivot) -> Reduction {
        let n = d.n_src;
        let mut out: Vec<SparseVec> = d.cols.clone();
        let mut inc: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (a, col) in out.iter().enumerate() {
            for &e in col.keys() {
                inc[e].insert(a);
            }
        }
        let mut alive = vec![true; n];
        let mut steps = Vec::new();
        loop {
            let mut progress = false;
            for b in 0..n {
                if !alive[b] {
                    continue;
                }
                let Some((c, u)) = out[b]
                    .iter()
                    .find(|(&c, e)| e.is_unit() && pivot.allowed(b, c))
                    .map(|(&c, e)| (c, e.lead()))
                else {
                    continue;
                };
                let u_inv = fp.inv(u);
                let mut row_b = std::mem::take(&mut out[b]);
                row_b.remove(&c);
                let mut col_c: SparseVec = SparseVec::new();
                for &a in &inc[c] {
                    if a != b {
                        col_c.insert(a, out[a][&c].clone());
                    }
                }
                // detach b and c
                for &e in row_b.keys() {
                    inc[e].remove(&b);
                }
                inc[c].remove(&b);
                for &z in &std::mem::take(&mut inc[b]) {
                    out[z].remove(&b);
                }
                for &a in col_c.keys() {
                    out[a].remove(&c);
                }
                for &e in &std::mem::take(&mut out[c]).into_keys().collect::<Vec<_>>() {
                    inc[e].remove(&c);
                }
                inc[c].clear();
                // zig-zag correction
                let neg_u_inv = Poly::constant(fp.neg(u_inv));
                for (&a, delta) in &col_c {
                    let coef = delta.mul(&neg_u_inv, fp);
                    for (&e, gamma) in &row_b {
                        let v = gamma.mul(&coef, fp);
                        add_entry(&mut out[a], e, &v, fp);
                        if out[a].contains_key(&e) {
                            inc[e].insert(a);
                        } else {
                            inc[e].remove(&a);
                        }
                    }
                }
                alive[b] = false;
                alive[c] = false;
                steps.push(Step {
                    b,
                    c,
                    u_inv,
                    row_b,
                    col_c,
                });
                progress = true;
            }
            if !progress {
                break;
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&k| alive[k]).collect();
        let position: BTreeMap<usize, usize> =
            kept.iter().enumerate().map(|(p, &k)| (k, p)).collect();
        let mut rd = SparseMap::zero(kept.len(), kept.len());
        for (p, &k) in kept.iter().enumerate() {
            for (e, v) in &out[k] {
                rd.add(position[e], p, v, fp);
            }
        }
        Reduction {
            fp,
            n,
            steps,
            kept,
            position,
            d: rd,
        }
    }

    pub fn original_len(&self) -> usize {
        self.n
    }

    pub fn position(&self, original: usize) -> Option<usize> {
        self.position.get(&original).copied()
    }

    /// Projection of an original chain to reduced coordinates.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let fp = self.fp;
        let mut v = v.clone();
        for s in &self.steps {
            v.remove(&s.b);
            if let Some(lambda) = v.remove(&s.c) {
                let coef = lambda.scale(fp.neg(s.u_inv), fp);
                axpy(&mut v, &coef, &s.row_b, fp);
            }
        }
        v.into_iter().map(|(k, e)| (self.position[&k], e)).collect()
    }

    /// Inclusion of a reduced chain into the original complex.
    pub fn include(&self, v: &SparseVec) -> SparseVec {
        let fp = self.fp;
        let mut v: SparseVec = v.iter().map(|(&p, e)| (self.kept[p], e.clone())).collect();
        for s in self.steps.iter().rev() {
            let mut acc = Poly::zero();
            for (a, delta) in &s.col_c {
                if let Some(va) = v.get(a) {
                    acc = acc.add(&va.mul(delta, fp), fp);
                }
            }
            if !acc.is_zero() {
                v.insert(s.b, acc.scale(fp.neg(s.u_inv), fp));
            }
        }
        v
    }

    /// `f` as a sparse map (original → reduced).
    pub fn projection_map(&self) -> SparseMap {
        let cols = (0..self.n)
            .map(|k| self.project(&SparseVec::from([(k, Poly::one())])))
            .collect();
        SparseMap {
            n_src: self.n,
            n_tgt: self.kept.len(),
            cols,
        }
    }

    /// `g` as a sparse map (reduced → original).
    pub fn inclusion_map(&self) -> SparseMap {
        let cols = (0..self.kept.len())
            .map(|p| self.include(&SparseVec::from([(p, Poly::one())])))
            .collect();
        SparseMap {
            n_src: self.kept.len(),
            n_tgt: self.n,
            cols,
        }
    }
}
