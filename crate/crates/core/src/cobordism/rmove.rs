//! Chain homotopy equivalences for Reidemeister moves by local elimination.
//!
//! Each side of a move is simplified by cancelling only unit entries between
//! generators that agree away from the move's crossings, pairing a small inner
//! circle labelled `x` with its split source and labelled `1` with its merge
//! target. What survives on the two sides is matched by the common state bits,
//! the circle labels (circles named by their smallest arc shared by both
//! diagrams) and, for the triangle move, how the local picture connects its
//! boundary. Per-generator scalars are then solved so the identification
//! commutes with the differentials. The map is `include ∘ identify ∘ project`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::movie::Move;
use super::CobordismError;
use crate::algebra::{Fp, Poly, SparseMap};
use crate::diagram::{Diagram, SMOOTHING};
use crate::khovanov::{ChainComplex, KhovanovError, Reduction};

/// Where a move happens, seen from one of its two diagrams.
struct Side<'a> {
    c: &'a ChainComplex,
    /// Crossings belonging to the move.
    local: Vec<usize>,
    /// Crossings along which cancellations are allowed.
    pivot: Vec<usize>,
    /// Arcs that only exist inside the move region.
    inner: BTreeSet<u32>,
    /// Whether survivors are told apart by their local picture.
    matching: bool,
}

type End = (u32, bool);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    common: Vec<u8>,
    matching: Vec<(End, End)>,
    circles: Vec<(u32, u8)>,
}

fn err(msg: impl Into<String>) -> CobordismError {
    CobordismError::Khovanov(KhovanovError::NotAChainMap(msg.into()))
}

fn mask(xs: &[usize]) -> u64 {
    xs.iter().fold(0, |m, &x| m | 1 << x)
}

impl Side<'_> {
    fn diagram(&self) -> &Diagram {
        self.c.diagram()
    }

    /// Label of the inner circle of a generator, if its state has one.
    fn inner_label(&self, g: usize) -> Option<u8> {
        let gen = self.c.generators()[g];
        let cs = self.c.circles(gen.state);
        cs.circles
            .iter()
            .position(|arcs| arcs.iter().all(|a| self.inner.contains(a)))
            .map(|k| ((gen.labels >> k) & 1) as u8)
    }

    fn reduce(&self) -> Reduction {
        let c = self.c;
        let away = !mask(&self.pivot);
        let inner: Vec<Option<u8>> = (0..c.len()).map(|g| self.inner_label(g)).collect();
        let gens = c.generators();
        let rule = |b: usize, t: usize| {
            if gens[b].state & away != gens[t].state & away {
                return false;
            }
            match (inner[b], inner[t]) {
                (None, Some(l)) => l == 1,
                (Some(l), None) => l == 0,
                _ => false,
            }
        };
        Reduction::new(c.differential(), c.fp(), &rule)
    }

    fn key(&self, g: usize, common: &[usize], common_arcs: &BTreeSet<u32>) -> Key {
        let gen = self.c.generators()[g];
        let cs = self.c.circles(gen.state);
        // inner circles carry the same label on every survivor, so they are skipped
        let mut circles = Vec::new();
        for (k, arcs) in cs.circles.iter().enumerate() {
            if k == cs.basepoint_circle {
                continue;
            }
            if let Some(&a) = arcs.iter().find(|a| common_arcs.contains(a)) {
                circles.push((a, ((gen.labels >> k) & 1) as u8));
            }
        }
        circles.sort_unstable();
        Key {
            common: common
                .iter()
                .map(|&x| ((gen.state >> x) & 1) as u8)
                .collect(),
            matching: if self.matching {
                self.local_matching(gen.state)
            } else {
                Vec::new()
            },
            circles,
        }
    }

    /// How the smoothed move region joins its boundary arc ends.
    fn local_matching(&self, state: u64) -> Vec<(End, End)> {
        let d = self.diagram();
        let t = d.crossings();
        let smoothing = |x: usize, s: usize| {
            let pairs = SMOOTHING[((state >> x) & 1) as usize];
            pairs
                .iter()
                .find_map(|&(a, b)| {
                    if a == s {
                        Some(b)
                    } else if b == s {
                        Some(a)
                    } else {
                        None
                    }
                })
                .unwrap()
        };
        let end_at = |x: usize, s: usize| (t[x][s], d.ends(t[x][s]).unwrap().head == (x, s));
        let mut out = Vec::new();
        for &x in &self.local {
            for s in 0..4 {
                if self.inner.contains(&t[x][s]) {
                    continue;
                }
                let start = end_at(x, s);
                let (mut cx, mut cs) = (x, s);
                loop {
                    let s2 = smoothing(cx, cs);
                    let l = t[cx][s2];
                    if !self.inner.contains(&l) {
                        let stop = end_at(cx, s2);
                        if start < stop {
                            out.push((start, stop));
                        }
                        break;
                    }
                    let e = d.ends(l).unwrap();
                    (cx, cs) = if e.tail == (cx, s2) { e.head } else { e.tail };
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Crossings outside the move, in order; the two sides list them alike.
fn common_crossings(n: usize, local: &[usize]) -> Vec<usize> {
    (0..n).filter(|x| !local.contains(x)).collect()
}

/// Sides (source, target) of a Reidemeister move.
fn sides<'a>(
    mv: &Move,
    src: &'a ChainComplex,
    tgt: &'a ChainComplex,
) -> Result<(Side<'a>, Side<'a>), CobordismError> {
    let plain = |c| Side {
        c,
        local: Vec::new(),
        pivot: Vec::new(),
        inner: BTreeSet::new(),
        matching: false,
    };
    let kink = |c, x: usize, k: u32| Side {
        c,
        local: vec![x],
        pivot: vec![x],
        inner: BTreeSet::from([k]),
        matching: false,
    };
    let bigon = |c, xs: [usize; 2], o1: u32, u1: u32| Side {
        c,
        local: xs.to_vec(),
        pivot: xs.to_vec(),
        inner: BTreeSet::from([o1, u1]),
        matching: false,
    };
    let d = src.diagram();
    Ok(match mv {
        Move::R1Plus(spec) => {
            let x = spec.position.unwrap_or(d.crossing_count());
            (plain(src), kink(tgt, x, spec.loop_arc))
        }
        Move::R1Minus { crossing, loop_arc } => (kink(src, *crossing, *loop_arc), plain(tgt)),
        Move::R2Plus(spec) => {
            let n = d.crossing_count();
            let p = spec.positions.unwrap_or([n, n + 1]);
            (plain(src), bigon(tgt, p, spec.over_mid, spec.under_mid))
        }
        Move::R2Minus { crossings } => {
            let (_, spec) = d.r2_minus(crossings[0], crossings[1])?;
            (
                bigon(src, *crossings, spec.over_mid, spec.under_mid),
                plain(tgt),
            )
        }
        Move::R3 { crossings } => (triangle(src, *crossings)?, triangle(tgt, *crossings)?),
        _ => {
            return Err(CobordismError::MoveNotApplicable(
                "not a Reidemeister move".into(),
            ))
        }
    })
}

fn triangle(c: &ChainComplex, xs: [usize; 3]) -> Result<Side<'_>, CobordismError> {
    let d = c.diagram();
    let face = d
        .faces()
        .into_iter()
        .find(|f| {
            let mut a: Vec<usize> = f.iter().map(|s| s.0).collect();
            a.sort_unstable();
            let mut b = xs;
            b.sort_unstable();
            a == b
        })
        .ok_or_else(|| CobordismError::MoveNotApplicable("no triangle".into()))?;
    let inner: BTreeSet<u32> = face.iter().map(|&(x, s)| d.crossings()[x][s]).collect();
    // the top strand's edge is over at both ends; its crossings carry the bigon
    let top = inner
        .iter()
        .map(|&l| d.ends(l).unwrap())
        .find(|e| e.tail.1 % 2 == 1 && e.head.1 % 2 == 1)
        .ok_or_else(|| CobordismError::MoveNotApplicable("triangle has no top strand".into()))?;
    Ok(Side {
        c,
        local: xs.to_vec(),
        pivot: vec![top.tail.0, top.head.0],
        inner,
        matching: true,
    })
}

/// Per-generator nonzero scalars making `σ` commute with the reduced differentials.
fn solve_scalars(
    fp: Fp,
    a: &SparseMap,
    b: &SparseMap,
    sigma: &[usize],
    order: &[usize],
) -> Result<Vec<u32>, CobordismError> {
    let n = a.n_src;
    if a.nnz() != b.nnz() {
        return Err(err("reduced differentials differ in support"));
    }
    // edge g → h with λ_h = λ_g · r
    let mut adj: Vec<Vec<(usize, u32, bool)>> = vec![Vec::new(); n];
    for (g, col) in a.cols.iter().enumerate() {
        for (&h, alpha) in col {
            let beta = b.get(sigma[h], sigma[g]);
            let (Some((ca, ka)), Some((cb, kb))) = (alpha.as_monomial(), beta.as_monomial()) else {
                return Err(err("reduced differentials differ"));
            };
            if ka != kb {
                return Err(err("reduced differentials differ in degree"));
            }
            let r = fp.mul(cb, fp.inv(ca));
            adj[g].push((h, r, true));
            adj[h].push((g, r, false));
        }
    }
    let mut lambda: Vec<Option<u32>> = vec![None; n];
    for &root in order {
        if lambda[root].is_some() {
            continue;
        }
        lambda[root] = Some(1);
        let mut queue = VecDeque::from([root]);
        while let Some(g) = queue.pop_front() {
            let lg = lambda[g].unwrap();
            for &(h, r, fwd) in &adj[g] {
                let want = if fwd {
                    fp.mul(lg, r)
                } else {
                    fp.mul(lg, fp.inv(r))
                };
                match lambda[h] {
                    None => {
                        lambda[h] = Some(want);
                        queue.push_back(h);
                    }
                    Some(l) if l != want => return Err(err("no consistent scalars")),
                    _ => {}
                }
            }
        }
    }
    Ok(lambda.into_iter().map(|l| l.unwrap_or(1)).collect())
}

pub(crate) fn reidemeister_map(
    mv: &Move,
    src: &ChainComplex,
    tgt: &ChainComplex,
) -> Result<SparseMap, CobordismError> {
    let fp = src.fp();
    let (sa, sb) = sides(mv, src, tgt)?;
    let (da, db) = (sa.diagram(), sb.diagram());
    let common_arcs: BTreeSet<u32> = da
        .arcs()
        .into_iter()
        .filter(|a| db.has_arc(*a) && !sa.inner.contains(a) && !sb.inner.contains(a))
        .collect();
    let ca = common_crossings(da.crossing_count(), &sa.local);
    let cb = common_crossings(db.crossing_count(), &sb.local);
    if ca.len() != cb.len() {
        return Err(err("move regions do not account for all crossings"));
    }
    let ra = sa.reduce();
    let rb = sb.reduce();
    if ra.kept.len() != rb.kept.len() {
        return Err(err(format!(
            "{} survivors against {}",
            ra.kept.len(),
            rb.kept.len()
        )));
    }
    let keys_a: Vec<Key> = ra
        .kept
        .iter()
        .map(|&g| sa.key(g, &ca, &common_arcs))
        .collect();
    let pos_b: BTreeMap<Key, usize> = rb
        .kept
        .iter()
        .enumerate()
        .map(|(p, &g)| (sb.key(g, &cb, &common_arcs), p))
        .collect();
    if pos_b.len() != rb.kept.len() {
        return Err(err("survivors are not distinguished by their keys"));
    }
    let mut sigma = Vec::with_capacity(keys_a.len());
    for (p, k) in keys_a.iter().enumerate() {
        let q = *pos_b
            .get(k)
            .ok_or_else(|| err(format!("no partner for survivor {k:?}")))?;
        let (ga, gb) = (src.generators()[ra.kept[p]], tgt.generators()[rb.kept[q]]);
        if (ga.i, ga.j) != (gb.i, gb.j) {
            return Err(err("matched survivors have different gradings"));
        }
        sigma.push(q);
    }
    let mut order: Vec<usize> = (0..keys_a.len()).collect();
    order.sort_by(|&p, &q| keys_a[p].cmp(&keys_a[q]));
    let lambda = solve_scalars(fp, &ra.d, &rb.d, &sigma, &order)?;
    let mut phi = SparseMap::zero(ra.kept.len(), rb.kept.len());
    for (p, &q) in sigma.iter().enumerate() {
        phi.add(q, p, &Poly::constant(lambda[p]), fp);
    }
    Ok(rb
        .inclusion_map()
        .compose(&phi, fp)
        .compose(&ra.projection_map(), fp))
}
