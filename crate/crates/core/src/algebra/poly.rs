//! Dense univariate polynomials over F_p.

use std::fmt;

use super::Fp;

/// Polynomial in `x` with coefficients in F_p; `coeffs[k]` is the coefficient of `x^k`.
/// The highest stored coefficient is nonzero, so zero is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn x() -> Poly {
        Poly::monomial(1, 1)
    }

    /// Builds from raw residues (assumed already reduced mod p); trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from signed integers, reducing mod p.
    pub fn from_i64(coeffs: &[i64], fp: Fp) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| fp.reduce(c)).collect())
    }

    pub fn constant(c: u32) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: u32, k: usize) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// `Some((c, k))` when the polynomial is exactly `c x^k` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(u32, usize)> {
        let k = self.degree()?;
        if self.coeffs[..k].iter().all(|&c| c == 0) {
            Some((self.coeffs[k], k))
        } else {
            None
        }
    }

    /// Lowest power of `x` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, other: &Poly, fp: Fp) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(fp.add(self.coeff(k), other.coeff(k)));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly, fp: Fp) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(fp.sub(self.coeff(k), other.coeff(k)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, fp: Fp) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| fp.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: u32, fp: Fp) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|&a| fp.mul(a, c)).collect(),
        }
    }

    /// Multiplication by `c x^k`.
    pub fn mul_monomial(&self, c: u32, k: usize, fp: Fp) -> Poly {
        if c == 0 || self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend(self.coeffs.iter().map(|&a| fp.mul(a, c)));
        Poly { coeffs }
    }

    pub fn mul(&self, other: &Poly, fp: Fp) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some((c, k)) = other.as_monomial() {
            return self.mul_monomial(c, k, fp);
        }
        if let Some((c, k)) = self.as_monomial() {
            return other.mul_monomial(c, k, fp);
        }
        let p = fp.prime() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Poly::from_coeffs(acc.into_iter().map(|v| v as u32).collect())
    }

    pub fn pow(&self, e: u32, fp: Fp) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self, fp);
        }
        acc
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Poly, fp: Fp) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = fp.inv(divisor.lead());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = fp.mul(rem[k + dd], inv_lead);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = fp.sub(rem[k + j], fp.mul(c, b));
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn divides(&self, other: &Poly, fp: Fp) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self, fp).1.is_zero()
    }

    /// Returns the monic associate and the scalar it was multiplied by.
    pub fn monic(&self, fp: Fp) -> (Poly, u32) {
        if self.is_zero() {
            return (Poly::zero(), 1);
        }
        let s = fp.inv(self.lead());
        (self.scale(s, fp), s)
    }

    pub fn eval(&self, at: u32, fp: Fp) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| fp.add(fp.mul(acc, at), c))
    }

    pub fn display(&self, fp: Fp) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, fp }
    }
}

/// Extended Euclid: `(g, u, v)` with `g = u a + v b`, `g` monic (or zero when both inputs are).
pub fn poly_gcd(a: &Poly, b: &Poly, fp: Fp) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1, fp);
        let s2 = s0.sub(&q.mul(&s1, fp), fp);
        let t2 = t0.sub(&q.mul(&t1, fp), fp);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_zero() {
        return (Poly::zero(), Poly::zero(), Poly::zero());
    }
    let (g, s) = r0.monic(fp);
    (g, s0.scale(s, fp), t0.scale(s, fp))
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    fp: Fp,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = self.fp.signed(c);
            let (sign, mag) = if s < 0 { ("-", -s) } else { ("+", s) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "x")?,
                (1, m) => write!(f, "{m}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, m) => write!(f, "{m}x^{k}")?,
            }
        }
        Ok(())
    }
}
