//! The cube of resolutions as a complex of free F[x]-modules.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::frobenius::{apply_pieces, Piece};
use super::KhovanovError;
use crate::algebra::{Fp, Poly, SparseMap};
use crate::diagram::{resolve_state, CircleSet, Diagram, State};

/// Largest crossing count accepted by the cube construction.
pub const MAX_CROSSINGS: usize = 20;

/// A basis element over F[x]: a state plus labels on its non-basepoint circles
/// (bit set = `x`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub state: u64,
    pub labels: u64,
    pub i: i64,
    pub j: i64,
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    diagram: Diagram,
    fp: Fp,
    circles: Vec<CircleSet>,
    gens: Vec<Generator>,
    index: HashMap<(u64, u64), usize>,
    degrees: BTreeMap<i64, Range<usize>>,
    d: SparseMap,
}

/// Local pieces for the edge flipping crossing `x` from 0 to 1.
fn edge_pieces(d: &Diagram, x: usize, src: &CircleSet, tgt: &CircleSet) -> Vec<Piece> {
    let t = d.crossings()[x];
    let (a, b) = (src.circle_of(t[0]), src.circle_of(t[1]));
    let (c, e) = (tgt.circle_of(t[0]), tgt.circle_of(t[2]));
    let mut pieces = if a != b {
        debug_assert_eq!(c, e);
        vec![Piece::Merge { a, b, tgt: c }]
    } else {
        vec![Piece::Split { src: a, c, d: e }]
    };
    for (s, arcs) in src.circles.iter().enumerate() {
        if s != a && s != b {
            pieces.push(Piece::Id {
                src: s,
                tgt: tgt.circle_of(arcs[0]),
            });
        }
    }
    pieces
}

impl ChainComplex {
    /// Builds the complex of any diagram (links allowed) and checks d² = 0 and
    /// homogeneity.
    pub fn new(diagram: &Diagram, fp: Fp) -> Result<ChainComplex, KhovanovError> {
        let n = diagram.crossing_count();
        if n > MAX_CROSSINGS {
            return Err(KhovanovError::TooLarge(n));
        }
        let (n_plus, n_minus) = diagram.crossing_signs();
        let circles: Vec<CircleSet> = (0..1u64 << n)
            .map(|s| resolve_state(diagram, State(s)))
            .collect();
        let mut gens = Vec::new();
        for (s, cs) in circles.iter().enumerate() {
            let free: Vec<usize> = (0..cs.circle_count())
                .filter(|&c| c != cs.basepoint_circle)
                .collect();
            let w = (s as u64).count_ones() as i64;
            for sub in 0..1u64 << free.len() {
                let mut labels = 0u64;
                let mut deg = 1i64; // basepoint circle contributes deg(1)
                for (k, &c) in free.iter().enumerate() {
                    if (sub >> k) & 1 == 1 {
                        labels |= 1 << c;
                        deg -= 1;
                    } else {
                        deg += 1;
                    }
                }
                gens.push(Generator {
                    state: s as u64,
                    labels,
                    i: w - n_minus as i64,
                    j: deg + w + n_plus as i64 - 2 * n_minus as i64,
                });
            }
        }
        gens.sort_by_key(|g| (g.i, g.state, g.labels));
        let index: HashMap<(u64, u64), usize> = gens
            .iter()
            .enumerate()
            .map(|(k, g)| ((g.state, g.labels), k))
            .collect();
        let mut degrees: BTreeMap<i64, Range<usize>> = BTreeMap::new();
        for (k, g) in gens.iter().enumerate() {
            degrees.entry(g.i).or_insert(k..k).end = k + 1;
        }
        let mut c = ChainComplex {
            diagram: diagram.clone(),
            fp,
            circles,
            gens,
            index,
            degrees,
            d: SparseMap::zero(0, 0),
        };
        c.d = c.build_differential();
        c.check_differential()?;
        Ok(c)
    }

    fn build_differential(&self) -> SparseMap {
        let fp = self.fp;
        let n = self.gens.len();
        let mut d = SparseMap::zero(n, n);
        let crossings = self.diagram.crossing_count();
        // edge pieces depend only on (state, crossing)
        let mut cache: HashMap<(u64, usize), Vec<Piece>> = HashMap::new();
        for (col, g) in self.gens.iter().enumerate() {
            let v = State(g.state);
            for x in 0..crossings {
                if v.bit(x) == 1 {
                    continue;
                }
                let w = v.flip(x);
                let pieces = cache.entry((g.state, x)).or_insert_with(|| {
                    edge_pieces(
                        &self.diagram,
                        x,
                        &self.circles[v.0 as usize],
                        &self.circles[w.0 as usize],
                    )
                });
                let sign = if v.ones_before(x) % 2 == 0 {
                    1
                } else {
                    fp.neg(1)
                };
                let tgt_bp = self.circles[w.0 as usize].basepoint_circle;
                for (labels, k) in apply_pieces(pieces, g.labels, tgt_bp) {
                    let row = self.index[&(w.0, labels)];
                    d.add(row, col, &Poly::monomial(sign, k as usize), fp);
                }
            }
        }
        d
    }

    fn check_differential(&self) -> Result<(), KhovanovError> {
        if !self.d.compose(&self.d, self.fp).is_zero() {
            return Err(KhovanovError::D2NotZero);
        }
        check_homogeneous(&self.d, &self.gens, &self.gens, 1, 0)
            .map_err(|_| KhovanovError::NotHomogeneous)
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, state: u64, labels: u64) -> Option<usize> {
        self.index.get(&(state, labels)).copied()
    }

    pub fn circles(&self, state: u64) -> &CircleSet {
        &self.circles[state as usize]
    }

    /// Generator index range of each homological degree.
    pub fn degrees(&self) -> &BTreeMap<i64, Range<usize>> {
        &self.degrees
    }

    pub fn degree_range(&self, i: i64) -> Range<usize> {
        self.degrees.get(&i).cloned().unwrap_or(0..0)
    }

    pub fn differential(&self) -> &SparseMap {
        &self.d
    }

    /// Chain rank over F[x] in each homological degree.
    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.degrees.iter().map(|(&i, r)| (i, r.len())).collect()
    }

    /// Multiplication by x on the circle through `arc`.
    pub fn dot_map(&self, arc: u32) -> Result<SparseMap, KhovanovError> {
        if !self.diagram.has_arc(arc) {
            return Err(KhovanovError::NoSuchArc(arc));
        }
        let f = self.state_local_map(self, |_, src, tgt| {
            let a = src.circle_of(arc);
            let mut pieces = vec![Piece::Dot {
                src: a,
                tgt: tgt.circle_of(arc),
            }];
            pieces.extend(identity_pieces(src, tgt, &[a]));
            pieces
        });
        check_chain_map(self, self, &f, -2)?;
        Ok(f)
    }

    /// Builds a vertex-wise map into `target` (same crossing order) from local pieces.
    pub(crate) fn state_local_map<F>(&self, target: &ChainComplex, pieces: F) -> SparseMap
    where
        F: Fn(State, &CircleSet, &CircleSet) -> Vec<Piece>,
    {
        let fp = self.fp;
        let mut f = SparseMap::zero(self.len(), target.len());
        let mut cache: HashMap<u64, Vec<Piece>> = HashMap::new();
        for (col, g) in self.gens.iter().enumerate() {
            let p = cache.entry(g.state).or_insert_with(|| {
                pieces(
                    State(g.state),
                    self.circles(g.state),
                    target.circles(g.state),
                )
            });
            let tgt_bp = target.circles(g.state).basepoint_circle;
            for (labels, k) in apply_pieces(p, g.labels, tgt_bp) {
                let row = target.index[&(g.state, labels)];
                f.add(row, col, &Poly::monomial(1, k as usize), fp);
            }
        }
        f
    }
}

/// Identity pieces for every source circle not listed in `skip`, matched by arc label.
pub(crate) fn identity_pieces(src: &CircleSet, tgt: &CircleSet, skip: &[usize]) -> Vec<Piece> {
    src.circles
        .iter()
        .enumerate()
        .filter(|(s, _)| !skip.contains(s))
        .map(|(s, arcs)| Piece::Id {
            src: s,
            tgt: tgt.circle_of(
                *arcs
                    .iter()
                    .find(|a| tgt.arc_to_circle.contains_key(a))
                    .expect("circle survives"),
            ),
        })
        .collect()
}

/// Every entry from `g` to `h` must be `c x^k` with `i(h) = i(g) + di` and
/// `j(h) - 2k = j(g) + dj`.
pub fn check_homogeneous(
    f: &SparseMap,
    src: &[Generator],
    tgt: &[Generator],
    di: i64,
    dj: i64,
) -> Result<(), (usize, usize)> {
    for (col, entries) in f.cols.iter().enumerate() {
        for (&row, e) in entries {
            let ok = e.as_monomial().is_some_and(|(_, k)| {
                tgt[row].i == src[col].i + di && tgt[row].j - 2 * k as i64 == src[col].j + dj
            });
            if !ok {
                return Err((row, col));
            }
        }
    }
    Ok(())
}

/// Verifies `d∘f = f∘d` and homogeneity of degree `(0, j_degree)`.
pub fn check_chain_map(
    src: &ChainComplex,
    tgt: &ChainComplex,
    f: &SparseMap,
    j_degree: i64,
) -> Result<(), KhovanovError> {
    let fp = src.fp;
    if f.n_src != src.len() || f.n_tgt != tgt.len() {
        return Err(KhovanovError::NotAChainMap("dimension mismatch".into()));
    }
    let lhs = tgt.d.compose(f, fp);
    let rhs = f.compose(&src.d, fp);
    if lhs != rhs {
        return Err(KhovanovError::NotAChainMap(
            "does not commute with d".into(),
        ));
    }
    check_homogeneous(f, &src.gens, &tgt.gens, 0, j_degree).map_err(|(r, c)| {
        KhovanovError::NotAChainMap(format!("entry ({r},{c}) is not homogeneous"))
    })
}
