//! Oriented link diagrams in PD form.
//!
//! A crossing is a 4-tuple of arc labels read clockwise starting from the
//! incoming under-strand, so slot 0 is the incoming and slot 2 the outgoing
//! under-arc. The crossing is positive when the over-strand runs from slot 1 to
//! slot 3. The 0-smoothing joins slots (0,3) and (1,2); the 1-smoothing joins
//! (0,1) and (2,3).
//!
//! Crossingless components ("loops") are kept in a separate list and written
//! `O(k)` in text form. Arc labels are arbitrary positive integers.

mod braid;
mod moves;
mod pd;
mod resolve;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use braid::braid_closure;
pub use moves::{R1Spec, R2Spec};
pub use pd::{parse_pd, parse_pd_json, DiagramJson};
pub use resolve::{resolve_state, CircleSet, State};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD input: {0}")]
    MalformedPd(String),
    #[error("arc {0} does not appear exactly twice")]
    ArcMultiplicity(u32),
    #[error("strand orientations are inconsistent")]
    InconsistentOrientation,
    #[error("diagram is not planar")]
    NotPlanar,
    #[error("basepoint {0} is not an arc of the diagram")]
    BadBasepoint(u32),
    #[error("expected a knot, found {0} components")]
    MultiComponentWhereKnotRequired(usize),
    #[error("move not applicable: {0}")]
    BadLocus(String),
}

/// Slot pair joined by the 0- and 1-smoothings.
pub(crate) const SMOOTHING: [[(usize, usize); 2]; 2] = [[(0, 3), (1, 2)], [(0, 1), (2, 3)]];

/// Position of an arc end: (crossing index, slot).
pub type Slot = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcEnds {
    pub tail: Slot,
    pub head: Slot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<[u32; 4]>,
    signs: Vec<i8>,
    loops: Vec<u32>,
    basepoint: u32,
    ends: BTreeMap<u32, ArcEnds>,
}

impl Diagram {
    /// The 0-crossing unknot, a single loop labeled 1.
    pub fn unknot() -> Diagram {
        Diagram::new(Vec::new(), None, vec![1], None).expect("unknot is valid")
    }

    /// Validates and orients a diagram. When `signs` is `None` they are derived:
    /// every component that passes under somewhere is oriented by its under
    /// crossings; components that only pass over run from slot 1 to slot 3 at
    /// the first crossing they visit.
    pub fn new(
        crossings: Vec<[u32; 4]>,
        signs: Option<Vec<i8>>,
        mut loops: Vec<u32>,
        basepoint: Option<u32>,
    ) -> Result<Diagram, DiagramError> {
        if crossings.is_empty() && loops.is_empty() {
            loops.push(1);
        }
        loops.sort_unstable();
        let mut occ: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
        for (x, t) in crossings.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                if l == 0 {
                    return Err(DiagramError::MalformedPd("arc label 0".into()));
                }
                occ.entry(l).or_default().push((x, s));
            }
        }
        for (&l, v) in &occ {
            if v.len() != 2 {
                return Err(DiagramError::ArcMultiplicity(l));
            }
        }
        for w in loops.windows(2) {
            if w[0] == w[1] {
                return Err(DiagramError::ArcMultiplicity(w[0]));
            }
        }
        if let Some(&l) = loops.iter().find(|l| occ.contains_key(l) || **l == 0) {
            return Err(DiagramError::ArcMultiplicity(l));
        }
        let signs = match signs {
            Some(s) => {
                if s.len() != crossings.len() || s.iter().any(|&v| v != 1 && v != -1) {
                    return Err(DiagramError::MalformedPd("bad sign list".into()));
                }
                s
            }
            None => derive_signs(&crossings, &occ)?,
        };
        let ends = orient(&crossings, &signs)?;
        let basepoint = match basepoint {
            Some(b) => b,
            None => *occ
                .keys()
                .next()
                .into_iter()
                .chain(loops.iter())
                .min()
                .unwrap(),
        };
        let d = Diagram {
            crossings,
            signs,
            loops,
            basepoint,
            ends,
        };
        if !d.has_arc(basepoint) {
            return Err(DiagramError::BadBasepoint(basepoint));
        }
        if !d.is_planar() {
            return Err(DiagramError::NotPlanar);
        }
        Ok(d)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn basepoint(&self) -> u32 {
        self.basepoint
    }

    pub fn with_basepoint(&self, arc: u32) -> Result<Diagram, DiagramError> {
        if !self.has_arc(arc) {
            return Err(DiagramError::BadBasepoint(arc));
        }
        let mut d = self.clone();
        d.basepoint = arc;
        Ok(d)
    }

    pub fn has_arc(&self, arc: u32) -> bool {
        self.ends.contains_key(&arc) || self.loops.binary_search(&arc).is_ok()
    }

    pub fn is_loop(&self, arc: u32) -> bool {
        self.loops.binary_search(&arc).is_ok()
    }

    /// All arc labels, ascending.
    pub fn arcs(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .ends
            .keys()
            .copied()
            .chain(self.loops.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn arc_count(&self) -> usize {
        self.ends.len() + self.loops.len()
    }

    pub fn max_label(&self) -> u32 {
        self.arcs().last().copied().unwrap_or(0)
    }

    /// Ends of a non-loop arc.
    pub fn ends(&self, arc: u32) -> Option<ArcEnds> {
        self.ends.get(&arc).copied()
    }

    /// `(n_plus, n_minus)`.
    pub fn crossing_signs(&self) -> (usize, usize) {
        let p = self.signs.iter().filter(|&&s| s > 0).count();
        (p, self.signs.len() - p)
    }

    /// Link components, each as its arcs in order of traversal.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.ends.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut a = start;
            loop {
                seen.insert(a);
                comp.push(a);
                let (x, s) = self.ends[&a].head;
                a = self.crossings[x][(s + 2) % 4];
                if a == start {
                    break;
                }
            }
            out.push(comp);
        }
        out.extend(self.loops.iter().map(|&l| vec![l]));
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn require_knot(&self) -> Result<(), DiagramError> {
        match self.component_count() {
            1 => Ok(()),
            n => Err(DiagramError::MultiComponentWhereKnotRequired(n)),
        }
    }

    /// Component index of each arc (indices as in [`Diagram::components`]).
    pub fn component_of(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for (i, c) in self.components().into_iter().enumerate() {
            for a in c {
                m.insert(a, i);
            }
        }
        m
    }

    /// Over/under swapped at every crossing; labels are kept, signs negate.
    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[a, b, c, d], &s)| if s > 0 { [b, c, d, a] } else { [d, a, b, c] })
            .collect();
        let signs = self.signs.iter().map(|s| -s).collect();
        Diagram::new(
            crossings,
            Some(signs),
            self.loops.clone(),
            Some(self.basepoint),
        )
        .expect("mirror of a valid diagram is valid")
    }

    /// The other occurrence of the arc at `(x, s)`.
    pub fn partner(&self, (x, s): Slot) -> Slot {
        let e = self.ends[&self.crossings[x][s]];
        if e.head == (x, s) {
            e.tail
        } else {
            e.head
        }
    }

    /// Faces of the underlying 4-valent graph as cycles of slots.
    pub fn faces(&self) -> Vec<Vec<Slot>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for x in 0..self.crossings.len() {
            for s in 0..4 {
                if seen.contains(&(x, s)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = (x, s);
                while seen.insert(cur) {
                    face.push(cur);
                    let (y, t) = self.partner(cur);
                    cur = (y, (t + 1) % 4);
                }
                out.push(face);
            }
        }
        out
    }

    /// Number of connected pieces of the crossing graph (loops excluded).
    pub fn graph_components(&self) -> usize {
        let n = self.crossings.len();
        let mut uf = UnionFind::new(n);
        for e in self.ends.values() {
            uf.union(e.head.0, e.tail.0);
        }
        (0..n).filter(|&i| uf.find(i) == i).count()
    }

    /// Euler characteristic check: each connected piece must be a sphere.
    pub fn is_planar(&self) -> bool {
        let v = self.crossings.len();
        self.faces().len() == v + 2 * self.graph_components()
    }

    /// Canonical text form.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|[a, b, c, d]| format!("X({a},{b},{c},{d})"))
            .collect();
        parts.extend(self.loops.iter().map(|l| format!("O({l})")));
        parts.join(" ")
    }

    /// Same crossings, loops and basepoint (signs compared only when `with_signs`).
    pub fn same_frame(&self, other: &Diagram, with_signs: bool) -> bool {
        self.crossings == other.crossings
            && self.loops == other.loops
            && self.basepoint == other.basepoint
            && (!with_signs || self.signs == other.signs)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            pd: self.crossings.clone(),
            basepoint: Some(self.basepoint),
            loops: self.loops.clone(),
            signs: Some(self.signs.clone()),
        }
    }
}

/// Head/tail of every arc from the local rule; fails unless each arc has one of each.
fn orient(crossings: &[[u32; 4]], signs: &[i8]) -> Result<BTreeMap<u32, ArcEnds>, DiagramError> {
    let mut heads: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
    let mut tails: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
    for (x, (t, &sg)) in crossings.iter().zip(signs).enumerate() {
        let (over_in, over_out) = if sg > 0 { (1, 3) } else { (3, 1) };
        for (s, is_head) in [(0, true), (2, false), (over_in, true), (over_out, false)] {
            let m = if is_head { &mut heads } else { &mut tails };
            m.entry(t[s]).or_default().push((x, s));
        }
    }
    let mut ends = BTreeMap::new();
    for (l, h) in heads {
        let t = tails.remove(&l).unwrap_or_default();
        if h.len() != 1 || t.len() != 1 {
            return Err(DiagramError::InconsistentOrientation);
        }
        ends.insert(
            l,
            ArcEnds {
                tail: t[0],
                head: h[0],
            },
        );
    }
    if !tails.is_empty() {
        return Err(DiagramError::InconsistentOrientation);
    }
    Ok(ends)
}

fn derive_signs(
    crossings: &[[u32; 4]],
    occ: &BTreeMap<u32, Vec<Slot>>,
) -> Result<Vec<i8>, DiagramError> {
    let mut sign: Vec<Option<i8>> = vec![None; crossings.len()];
    let mut visited = BTreeSet::new();
    let other = |l: u32, here: Slot| -> Slot {
        let v = &occ[&l];
        if v[0] == here {
            v[1]
        } else {
            v[0]
        }
    };
    for x0 in 0..crossings.len() {
        for s0 in 0..4 {
            if visited.contains(&(x0, s0)) {
                continue;
            }
            // Walk the component, entering crossings at the recorded slots.
            let mut entries = Vec::new();
            let mut cur = (x0, s0);
            loop {
                entries.push(cur);
                visited.insert(cur);
                let exit = (cur.0, (cur.1 + 2) % 4);
                visited.insert(exit);
                cur = other(crossings[exit.0][exit.1], exit);
                if cur == (x0, s0) {
                    break;
                }
            }
            let under: BTreeSet<usize> = entries
                .iter()
                .filter(|e| e.1 % 2 == 0)
                .map(|e| e.1)
                .collect();
            let reversed = match (under.contains(&0), under.contains(&2)) {
                (true, true) => return Err(DiagramError::InconsistentOrientation),
                (false, true) => true,
                (true, false) => false,
                (false, false) => entries
                    .iter()
                    .find(|e| e.1 % 2 == 1)
                    .is_some_and(|e| e.1 == 3),
            };
            for &(x, s) in entries.iter().filter(|e| e.1 % 2 == 1) {
                let entry = if reversed { (s + 2) % 4 } else { s };
                sign[x] = Some(if entry == 1 { 1 } else { -1 });
            }
        }
    }
    Ok(sign
        .into_iter()
        .map(|s| s.expect("every crossing has an over strand"))
        .collect())
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so representatives are deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn trefoil_counts_and_signs() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        assert_eq!(d.crossing_signs(), (3, 0));
        assert_eq!(d.mirror().crossing_signs(), (0, 3));
        assert_eq!(d.mirror().mirror(), d);
        assert!(d.is_knot());
        assert_eq!(d.faces().len(), 5);
    }

    #[test]
    fn unknots() {
        let u = parse_pd("").unwrap();
        assert_eq!(u.crossing_signs(), (0, 0));
        assert_eq!(u.loops(), &[1]);
        assert_eq!(u.mirror(), u);
        let k = parse_pd("X(1,1,2,2)").unwrap();
        assert!(k.is_knot());
        assert_eq!(k.crossing_signs(), (0, 1));
        assert_eq!(k.faces().len(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_pd("X(1,2,3"),
            Err(DiagramError::MalformedPd(_))
        ));
        assert!(matches!(
            parse_pd("X(1,2,3,4)"),
            Err(DiagramError::ArcMultiplicity(_))
        ));
        assert!(matches!(
            parse_pd(TREFOIL).unwrap().with_basepoint(9),
            Err(DiagramError::BadBasepoint(9))
        ));
    }

    #[test]
    fn render_round_trip() {
        for text in [
            TREFOIL,
            "O(1)",
            "X(1,1,2,2)",
            "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8) O(9)",
        ] {
            let d = parse_pd(text).unwrap();
            assert_eq!(d.render(), text);
            assert_eq!(parse_pd(&d.render()).unwrap(), d);
        }
    }

    #[test]
    fn hopf_link_components() {
        let d = parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap();
        assert_eq!(d.component_count(), 2);
        assert!(!d.is_knot());
        assert!(d.is_planar());
    }
}
