//! The rank-two Frobenius algebra A = F[t]{1, x} with x² = t, and the local
//! TQFT pieces (merge, split, unit, counit, dot) acting on labelled circles.
//!
//! Labels are bits: 0 is `1`, 1 is `x`. Coefficients produced by the algebra are
//! always a single power of t, so a term is `(labels, t_power)`.

use std::collections::BTreeMap;

use crate::algebra::{Fp, Poly};

/// Structure maps on basis labels. Every output coefficient is `t^k` with coefficient 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct FrobeniusData;

impl FrobeniusData {
    /// m(a ⊗ b)
    pub fn m(self, a: u8, b: u8) -> (u8, u32) {
        match a + b {
            0 => (0, 0),
            1 => (1, 0),
            _ => (0, 1),
        }
    }

    /// Δ(a)
    pub fn delta(self, a: u8) -> [((u8, u8), u32); 2] {
        if a == 0 {
            [((0, 1), 0), ((1, 0), 0)]
        } else {
            [((1, 1), 0), ((0, 0), 1)]
        }
    }

    /// ι(1)
    pub fn unit(self) -> u8 {
        0
    }

    /// ε(a) as a t-power, `None` for zero.
    pub fn counit(self, a: u8) -> Option<u32> {
        (a == 1).then_some(0)
    }

    /// Multiplication by x.
    pub fn dot(self, a: u8) -> (u8, u32) {
        self.m(1, a)
    }
}

/// One local piece of a cobordism between two circle configurations, in circle indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Id { src: usize, tgt: usize },
    Merge { a: usize, b: usize, tgt: usize },
    Split { src: usize, c: usize, d: usize },
    Birth { tgt: usize },
    Death { src: usize },
    Dot { src: usize, tgt: usize },
}

/// Applies the tensor product of `pieces` to the basis element `labels` and folds the
/// target basepoint circle into an x-power: returns `(target labels, x_power)`.
/// The source basepoint circle must carry label 0.
pub fn apply_pieces(pieces: &[Piece], labels: u64, tgt_basepoint: usize) -> Vec<(u64, u32)> {
    let a = FrobeniusData;
    let bit = |c: usize| ((labels >> c) & 1) as u8;
    let mut terms: Vec<(u64, u32)> = vec![(0, 0)];
    for p in pieces {
        let local: Vec<(u64, u32)> = match *p {
            Piece::Id { src, tgt } => vec![((bit(src) as u64) << tgt, 0)],
            Piece::Merge { a: s, b: r, tgt } => {
                let (l, k) = a.m(bit(s), bit(r));
                vec![((l as u64) << tgt, k)]
            }
            Piece::Split { src, c, d } => a
                .delta(bit(src))
                .iter()
                .map(|&((l1, l2), k)| (((l1 as u64) << c) | ((l2 as u64) << d), k))
                .collect(),
            Piece::Birth { tgt } => vec![((a.unit() as u64) << tgt, 0)],
            Piece::Death { src } => a.counit(bit(src)).map(|k| (0, k)).into_iter().collect(),
            Piece::Dot { src, tgt } => {
                let (l, k) = a.dot(bit(src));
                vec![((l as u64) << tgt, k)]
            }
        };
        let mut next = Vec::with_capacity(terms.len() * local.len());
        for &(l0, k0) in &terms {
            for &(l1, k1) in &local {
                next.push((l0 | l1, k0 + k1));
            }
        }
        terms = next;
    }
    terms
        .into_iter()
        .map(|(l, k)| {
            let b = (l >> tgt_basepoint) & 1;
            (l & !(1u64 << tgt_basepoint), 2 * k + b as u32)
        })
        .collect()
}

/// Elements of A^{⊗n} over F[t] (coefficients as polynomials in t), used to check
/// the Frobenius identities symbolically.
pub type Tensor = BTreeMap<Vec<u8>, Poly>;

fn push(out: &mut Tensor, key: Vec<u8>, c: Poly, fp: Fp) {
    let s = out.get(&key).map_or(c.clone(), |o| o.add(&c, fp));
    if s.is_zero() {
        out.remove(&key);
    } else {
        out.insert(key, s);
    }
}

/// Applies m to tensor factors `i, i+1`.
pub fn tensor_m(x: &Tensor, i: usize, fp: Fp) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in x {
        let (l, p) = FrobeniusData.m(k[i], k[i + 1]);
        let mut key = k.clone();
        key.splice(i..i + 2, [l]);
        push(&mut out, key, c.mul_monomial(1, p as usize, fp), fp);
    }
    out
}

/// Applies Δ to tensor factor `i`.
pub fn tensor_delta(x: &Tensor, i: usize, fp: Fp) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in x {
        for ((l1, l2), p) in FrobeniusData.delta(k[i]) {
            let mut key = k.clone();
            key.splice(i..i + 1, [l1, l2]);
            push(&mut out, key, c.mul_monomial(1, p as usize, fp), fp);
        }
    }
    out
}

/// Applies ε to tensor factor `i`.
pub fn tensor_counit(x: &Tensor, i: usize, fp: Fp) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in x {
        if let Some(p) = FrobeniusData.counit(k[i]) {
            let mut key = k.clone();
            key.remove(i);
            push(&mut out, key, c.mul_monomial(1, p as usize, fp), fp);
        }
    }
    out
}

pub fn basis_tensor(labels: &[u8]) -> Tensor {
    Tensor::from([(labels.to_vec(), Poly::one())])
}
