//! Homology over the PID F[x]: eliminate unit entries, then take Smith forms of
//! the (small) reduced differentials degree by degree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::ChainComplex;
use super::reduce::{AnyUnit, Reduction};
use super::KhovanovError;
use crate::algebra::{
    snf, AlgebraError, Fp, ModuleDecomposition, Poly, PolyMatrix, SparseVec, Summand,
};

#[derive(Clone, Debug)]
struct DegreeData {
    /// Reduced positions in this degree.
    positions: Vec<usize>,
    /// Rank of the outgoing differential.
    r: usize,
    v_inv: PolyMatrix,
    u_p: PolyMatrix,
    /// Invariant factor per kernel coordinate (zero = free).
    factors: Vec<Poly>,
    /// Kernel coordinates that are actual summands (non-unit factor).
    summand_coords: Vec<usize>,
    /// Generating cycle of each summand, in reduced coordinates.
    cycles: Vec<SparseVec>,
    summands: Vec<Summand>,
}

/// Homology with enough bookkeeping to express cycles in the summand basis.
#[derive(Clone, Debug)]
pub struct Homology {
    fp: Fp,
    reduction: Reduction,
    degrees: BTreeMap<i64, DegreeData>,
}

/// One summand of the whole homology, addressed by degree and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandRef {
    pub i: i64,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradeEntry {
    pub i: i64,
    pub j: i64,
    pub free_rank: usize,
    pub torsion_exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub i: i64,
    pub free_rank: usize,
    pub torsion_exponents: Vec<u32>,
}

/// Serializable summary of Kh_t as a graded F[x]-module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub bigrades: Vec<BigradeEntry>,
    pub degrees: Vec<DegreeEntry>,
    pub free_rank_total: usize,
    pub torsion_exponents_total: Vec<u32>,
    pub xo: u32,
}

impl HomologyResult {
    pub fn decomposition(&self, i: i64) -> ModuleDecomposition {
        let e = self.degrees.iter().find(|e| e.i == i);
        ModuleDecomposition {
            free_rank: e.map_or(0, |e| e.free_rank),
            torsion_exponents: e.map_or(Vec::new(), |e| e.torsion_exponents.clone()),
            summands: Vec::new(),
        }
    }
}

/// Largest torsion exponent (0 when torsion-free).
pub fn torsion_order(h: &HomologyResult) -> u32 {
    h.torsion_exponents_total.iter().copied().max().unwrap_or(0)
}

/// Reads the grade of a homogeneous reduced chain.
fn chain_grade(
    c: &ChainComplex,
    red: &Reduction,
    v: &SparseVec,
) -> Result<Option<(i64, i64)>, KhovanovError> {
    let mut grade = None;
    for (&p, e) in v {
        let (_, k) = e.as_monomial().ok_or(KhovanovError::NotHomogeneous)?;
        let g = c.generators()[red.kept[p]];
        let here = (g.i, g.j - 2 * k as i64);
        if grade.is_some_and(|h| h != here) {
            return Err(KhovanovError::NotHomogeneous);
        }
        grade = Some(here);
    }
    Ok(grade)
}

impl Homology {
    pub fn new(c: &ChainComplex) -> Result<Homology, KhovanovError> {
        let fp = c.fp();
        let red = Reduction::new(c.differential(), fp, &AnyUnit);
        let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (p, &k) in red.kept.iter().enumerate() {
            by_deg.entry(c.generators()[k].i).or_default().push(p);
        }
        let mut degrees = BTreeMap::new();
        for (&i, pos) in &by_deg {
            let empty = Vec::new();
            let next = by_deg.get(&(i + 1)).unwrap_or(&empty);
            let prev = by_deg.get(&(i - 1)).unwrap_or(&empty);
            let d_out = red.d.block(next, pos);
            let d_in = red.d.block(pos, prev);
            let s = snf(&d_out, fp);
            let n = pos.len();
            let r = s.rank;
            let all_rows: Vec<usize> = (0..n).collect();
            let tail: Vec<usize> = (r..n).collect();
            let prev_cols: Vec<usize> = (0..prev.len()).collect();
            let p_mat = s.v_inv.mul(&d_in, fp).submatrix(&tail, &prev_cols);
            debug_assert!(s
                .v_inv
                .mul(&d_in, fp)
                .submatrix(&(0..r).collect::<Vec<_>>(), &prev_cols)
                .is_zero());
            let sp = snf(&p_mat, fp);
            let m = n - r;
            let factors: Vec<Poly> = (0..m)
                .map(|k| {
                    if k < sp.rank {
                        sp.d.get(k, k).clone()
                    } else {
                        Poly::zero()
                    }
                })
                .collect();
            // Z · U_P^{-1}
            let z = s.v.submatrix(&all_rows, &tail);
            let gens = z.mul(&sp.u_inv, fp);
            let mut summand_coords = Vec::new();
            let mut cycles = Vec::new();
            let mut summands = Vec::new();
            for (k, f) in factors.iter().enumerate() {
                if f.is_unit() {
                    continue;
                }
                let exponent = if f.is_zero() {
                    None
                } else {
                    match f.as_monomial() {
                        Some((1, e)) => Some(e as u32),
                        _ => {
                            return Err(
                                AlgebraError::NonMonomialTorsion(f.display(fp).to_string()).into()
                            )
                        }
                    }
                };
                let cyc: SparseVec = (0..n)
                    .filter(|&a| !gens.get(a, k).is_zero())
                    .map(|a| (pos[a], gens.get(a, k).clone()))
                    .collect();
                let grade = chain_grade(c, &red, &cyc)?;
                summand_coords.push(k);
                cycles.push(cyc);
                summands.push(Summand { exponent, grade });
            }
            degrees.insert(
                i,
                DegreeData {
                    positions: pos.clone(),
                    r,
                    v_inv: s.v_inv,
                    u_p: sp.u,
                    factors,
                    summand_coords,
                    cycles,
                    summands,
                },
            );
        }
        Ok(Homology {
            fp,
            reduction: red,
            degrees,
        })
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    /// All summands in degree order.
    pub fn summands(&self) -> Vec<(SummandRef, Summand)> {
        self.degrees
            .iter()
            .flat_map(|(&i, dd)| {
                dd.summands
                    .iter()
                    .enumerate()
                    .map(move |(k, s)| (SummandRef { i, k }, s.clone()))
            })
            .collect()
    }

    /// Generating cycle of a summand, as a chain of the original complex.
    pub fn cycle(&self, s: SummandRef) -> SparseVec {
        self.reduction.include(&self.degrees[&s.i].cycles[s.k])
    }

    /// Coordinates of a cycle of the original complex (homogeneous in degree `i`) in the
    /// summand basis, reduced modulo each summand's torsion.
    pub fn coordinates(&self, i: i64, z: &SparseVec) -> Result<Vec<Poly>, KhovanovError> {
        let fp = self.fp;
        let red = self.reduction.project(z);
        let Some(dd) = self.degrees.get(&i) else {
            return if red.is_empty() {
                Ok(Vec::new())
            } else {
                Err(KhovanovError::NotACycle)
            };
        };
        let local: BTreeMap<usize, usize> = dd
            .positions
            .iter()
            .enumerate()
            .map(|(a, &p)| (p, a))
            .collect();
        let n = dd.positions.len();
        let mut col = PolyMatrix::zeros(n, 1);
        for (p, e) in red {
            let a = *local.get(&p).ok_or(KhovanovError::NotACycle)?;
            col.set(a, 0, e);
        }
        let y = dd.v_inv.mul(&col, fp);
        if (0..dd.r).any(|a| !y.get(a, 0).is_zero()) {
            return Err(KhovanovError::NotACycle);
        }
        let tail: Vec<usize> = (dd.r..n).collect();
        let w = dd.u_p.mul(&y.submatrix(&tail, &[0]), fp);
        Ok(dd
            .summand_coords
            .iter()
            .map(|&k| {
                let v = w.get(k, 0).clone();
                let f = &dd.factors[k];
                if f.is_zero() {
                    v
                } else {
                    v.div_rem(f, fp).1
                }
            })
            .collect())
    }

    /// Torsion factor of a summand (zero polynomial for free summands).
    pub fn factor(&self, s: SummandRef) -> Poly {
        let dd = &self.degrees[&s.i];
        dd.factors[dd.summand_coords[s.k]].clone()
    }

    pub fn result(&self) -> HomologyResult {
        let mut bigrades: BTreeMap<(i64, i64), BigradeEntry> = BTreeMap::new();
        let mut degrees = Vec::new();
        let mut free_total = 0;
        let mut torsion_total = Vec::new();
        for (&i, dd) in &self.degrees {
            let mut entry = DegreeEntry {
                i,
                free_rank: 0,
                torsion_exponents: Vec::new(),
            };
            for s in &dd.summands {
                let (gi, gj) = s.grade.unwrap_or((i, 0));
                let b = bigrades.entry((gi, gj)).or_insert(BigradeEntry {
                    i: gi,
                    j: gj,
                    free_rank: 0,
                    torsion_exponents: Vec::new(),
                });
                match s.exponent {
                    None => {
                        b.free_rank += 1;
                        entry.free_rank += 1;
                    }
                    Some(e) => {
                        b.torsion_exponents.push(e);
                        entry.torsion_exponents.push(e);
                    }
                }
            }
            entry.torsion_exponents.sort_unstable();
            free_total += entry.free_rank;
            torsion_total.extend(entry.torsion_exponents.iter().copied());
            if entry.free_rank > 0 || !entry.torsion_exponents.is_empty() {
                degrees.push(entry);
            }
        }
        torsion_total.sort_unstable();
        let mut bigrades: Vec<BigradeEntry> = bigrades.into_values().collect();
        for b in &mut bigrades {
            b.torsion_exponents.sort_unstable();
        }
        let xo = torsion_total.iter().copied().max().unwrap_or(0);
        HomologyResult {
            bigrades,
            degrees,
            free_rank_total: free_total,
            torsion_exponents_total: torsion_total,
            xo,
        }
    }
}

/// Kh_t of a diagram.
pub fn homology(c: &ChainComplex) -> Result<HomologyResult, KhovanovError> {
    Ok(Homology::new(c)?.result())
}
