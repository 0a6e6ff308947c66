//! Diagram surgery for elementary moves. Each operation returns a validated
//! diagram; invalid loci surface as [`DiagramError::BadLocus`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Diagram, DiagramError, UnionFind};

/// Adds a kink to an arc. The arc keeps its label up to the new crossing, the
/// kink's loop is `loop_arc`, and the remainder becomes `out_arc` (ignored on a
/// loop, whose label is kept). The crossing is inserted at index `position`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct R1Spec {
    pub arc: u32,
    pub sign: i8,
    pub under_first: bool,
    pub loop_arc: u32,
    #[serde(default)]
    pub out_arc: u32,
    #[serde(default)]
    pub position: Option<usize>,
}

/// Pushes arc `over` across arc `under`. Along `over` the strand becomes
/// `over, over_mid, over_out`; likewise for `under`. The two new crossings land
/// at `positions` (first, second along `over`); `variant` selects among the
/// planar ways of doing this, in a fixed enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct R2Spec {
    pub over: u32,
    pub under: u32,
    pub over_mid: u32,
    pub over_out: u32,
    pub under_mid: u32,
    pub under_out: u32,
    #[serde(default)]
    pub variant: usize,
    #[serde(default)]
    pub positions: Option<[usize; 2]>,
}

fn bad(msg: impl Into<String>) -> DiagramError {
    DiagramError::BadLocus(msg.into())
}

impl Diagram {
    fn require_fresh(&self, labels: &[u32]) -> Result<(), DiagramError> {
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 || self.has_arc(l) || labels[..i].contains(&l) {
                return Err(bad(format!("label {l} is not fresh")));
            }
        }
        Ok(())
    }

    fn rebuild(
        &self,
        crossings: Vec<[u32; 4]>,
        signs: Vec<i8>,
        loops: Vec<u32>,
        basepoint: u32,
    ) -> Result<Diagram, DiagramError> {
        Diagram::new(crossings, Some(signs), loops, Some(basepoint)).map_err(|e| match e {
            DiagramError::NotPlanar => bad("result is not planar"),
            e => e,
        })
    }

    pub fn birth(&self, k: u32) -> Result<Diagram, DiagramError> {
        self.require_fresh(&[k])?;
        let mut loops = self.loops.clone();
        loops.push(k);
        self.rebuild(
            self.crossings.clone(),
            self.signs.clone(),
            loops,
            self.basepoint,
        )
    }

    pub fn death(&self, k: u32) -> Result<Diagram, DiagramError> {
        if !self.is_loop(k) {
            return Err(bad(format!("arc {k} is not a crossingless circle")));
        }
        if k == self.basepoint {
            return Err(bad("cannot cap off the basepoint circle"));
        }
        let loops = self.loops.iter().copied().filter(|&l| l != k).collect();
        self.rebuild(
            self.crossings.clone(),
            self.signs.clone(),
            loops,
            self.basepoint,
        )
    }

    /// Oriented band between two distinct crossed arcs: they exchange heads.
    pub fn saddle_swap(&self, a: u32, b: u32) -> Result<Diagram, DiagramError> {
        let (Some(ea), Some(eb)) = (self.ends(a), self.ends(b)) else {
            return Err(bad(format!("band ({a},{b}) needs two arcs with crossings")));
        };
        if a == b {
            return Err(bad("swap needs distinct arcs"));
        }
        let mut crossings = self.crossings.clone();
        crossings[ea.head.0][ea.head.1] = b;
        crossings[eb.head.0][eb.head.1] = a;
        self.rebuild(
            crossings,
            self.signs.clone(),
            self.loops.clone(),
            self.basepoint,
        )
    }

    /// Band from an arc to itself that splits off a small loop `k`.
    pub fn saddle_pinch(&self, a: u32, k: u32) -> Result<Diagram, DiagramError> {
        if !self.has_arc(a) {
            return Err(bad(format!("no arc {a}")));
        }
        self.birth(k)
    }

    /// Band joining loop `k` to arc `a`; `k` disappears into `a`.
    pub fn saddle_absorb(&self, k: u32, a: u32) -> Result<Diagram, DiagramError> {
        if !self.is_loop(k) || !self.has_arc(a) || k == a {
            return Err(bad(format!("cannot absorb {k} into {a}")));
        }
        let loops = self.loops.iter().copied().filter(|&l| l != k).collect();
        let bp = if self.basepoint == k {
            a
        } else {
            self.basepoint
        };
        self.rebuild(self.crossings.clone(), self.signs.clone(), loops, bp)
    }

    pub fn r1_plus(&self, spec: &R1Spec) -> Result<Diagram, DiagramError> {
        let a = spec.arc;
        let k = spec.loop_arc;
        let on_loop = self.is_loop(a);
        let a2 = if on_loop { a } else { spec.out_arc };
        if !self.has_arc(a) {
            return Err(bad(format!("no arc {a}")));
        }
        if on_loop {
            self.require_fresh(&[k])?;
        } else {
            self.require_fresh(&[k, a2])?;
        }
        if spec.sign != 1 && spec.sign != -1 {
            return Err(bad("kink sign must be ±1"));
        }
        let pos = spec.position.unwrap_or(self.crossings.len());
        if pos > self.crossings.len() {
            return Err(bad("kink position out of range"));
        }
        let mut crossings = self.crossings.clone();
        let mut loops = self.loops.clone();
        if on_loop {
            loops.retain(|&l| l != a);
        } else {
            let h = self.ends[&a].head;
            crossings[h.0][h.1] = a2;
        }
        let t = match (spec.under_first, spec.sign > 0) {
            (true, true) => [a, k, k, a2],
            (true, false) => [a, a2, k, k],
            (false, true) => [k, a, a2, k],
            (false, false) => [k, k, a2, a],
        };
        crossings.insert(pos, t);
        let mut signs = self.signs.clone();
        signs.insert(pos, spec.sign);
        self.rebuild(crossings, signs, loops, self.basepoint)
    }

    /// Removes kink crossing `x` whose loop arc is `k`. Returns the new diagram and
    /// the spec that would recreate the kink.
    pub fn r1_minus(&self, x: usize, k: u32) -> Result<(Diagram, R1Spec), DiagramError> {
        let t = *self
            .crossings
            .get(x)
            .ok_or_else(|| bad("no such crossing"))?;
        let slots: Vec<usize> = (0..4).filter(|&s| t[s] == k).collect();
        if slots.len() != 2 || (slots[1] - slots[0] != 1 && slots != [0, 3]) {
            return Err(bad(format!("arc {k} is not a kink loop at crossing {x}")));
        }
        if self.basepoint == k {
            return Err(bad("basepoint lies on the kink loop"));
        }
        let others: Vec<usize> = (0..4).filter(|&s| t[s] != k).collect();
        // incoming strand arc has its head here
        let (a_slot, a2_slot) = if self.ends[&t[others[0]]].head == (x, others[0]) {
            (others[0], others[1])
        } else {
            (others[1], others[0])
        };
        let (a, a2) = (t[a_slot], t[a2_slot]);
        let spec = R1Spec {
            arc: a,
            sign: self.signs[x],
            under_first: a_slot == 0,
            loop_arc: k,
            out_arc: a2,
            position: Some(x),
        };
        let mut crossings = self.crossings.clone();
        crossings.remove(x);
        let mut signs = self.signs.clone();
        signs.remove(x);
        let mut loops = self.loops.clone();
        if a == a2 {
            loops.push(a);
        } else {
            let h = self.ends[&a2].head;
            let h = (if h.0 > x { h.0 - 1 } else { h.0 }, h.1);
            crossings[h.0][h.1] = a;
        }
        let bp = if self.basepoint == a2 {
            a
        } else {
            self.basepoint
        };
        Ok((self.rebuild(crossings, signs, loops, bp)?, spec))
    }

    /// All planar realisations of an R2 push, in enumeration order.
    fn r2_candidates(&self, spec: &R2Spec) -> Result<Vec<(Diagram, [usize; 2])>, DiagramError> {
        let (o, u) = (spec.over, spec.under);
        let (Some(eo), Some(eu)) = (self.ends(o), self.ends(u)) else {
            return Err(bad("R2 needs two arcs with crossings"));
        };
        if o == u {
            return Err(bad("R2 needs distinct arcs"));
        }
        self.require_fresh(&[spec.over_mid, spec.over_out, spec.under_mid, spec.under_out])?;
        let n = self.crossings.len();
        let [pa, pb] = spec.positions.unwrap_or([n, n + 1]);
        if pa == pb || pa > n + 1 || pb > n + 1 {
            return Err(bad("R2 positions out of range"));
        }
        let (o1, o2, u1, u2) = (spec.over_mid, spec.over_out, spec.under_mid, spec.under_out);
        let mut base = self.crossings.clone();
        base[eo.head.0][eo.head.1] = o2;
        base[eu.head.0][eu.head.1] = u2;
        let tuple = |ui: u32, uo: u32, oi: u32, oo: u32, s: i8| {
            if s > 0 {
                [ui, oi, uo, oo]
            } else {
                [ui, oo, uo, oi]
            }
        };
        let mut out = Vec::new();
        for same_order in [true, false] {
            for sa in [1i8, -1] {
                let sb = -sa;
                let (ua, ub) = if same_order {
                    ((u, u1), (u1, u2))
                } else {
                    ((u1, u2), (u, u1))
                };
                let ta = tuple(ua.0, ua.1, o, o1, sa);
                let tb = tuple(ub.0, ub.1, o1, o2, sb);
                let mut crossings = base.clone();
                let mut signs = self.signs.clone();
                let mut ins = [(pa, ta, sa), (pb, tb, sb)];
                ins.sort_by_key(|e| e.0);
                for (p, t, s) in ins {
                    crossings.insert(p, t);
                    signs.insert(p, s);
                }
                let Ok(d) = self.rebuild(crossings, signs, self.loops.clone(), self.basepoint)
                else {
                    continue;
                };
                let bigon = d.faces().iter().any(|f| {
                    f.len() == 2 && {
                        let mut l = [d.crossings[f[0].0][f[0].1], d.crossings[f[1].0][f[1].1]];
                        l.sort_unstable();
                        l == [o1.min(u1), o1.max(u1)]
                    }
                });
                if bigon {
                    out.push((d, [pa, pb]));
                }
            }
        }
        Ok(out)
    }

    pub fn r2_plus(&self, spec: &R2Spec) -> Result<Diagram, DiagramError> {
        let mut c = self.r2_candidates(spec)?;
        if spec.variant >= c.len() {
            return Err(bad(format!(
                "R2 variant {} requested, {} available",
                spec.variant,
                c.len()
            )));
        }
        Ok(c.swap_remove(spec.variant).0)
    }

    /// Number of planar variants for an R2 push.
    pub fn r2_variant_count(&self, spec: &R2Spec) -> Result<usize, DiagramError> {
        Ok(self.r2_candidates(spec)?.len())
    }

    /// Removes the bigon formed by crossings `x` and `y`; returns the new diagram and a
    /// spec recreating it.
    pub fn r2_minus(&self, x: usize, y: usize) -> Result<(Diagram, R2Spec), DiagramError> {
        let n = self.crossings.len();
        if x == y || x >= n || y >= n {
            return Err(bad("R2 needs two distinct crossings"));
        }
        // arcs joining x and y, split by over/under
        let mut over_mid = None;
        let mut under_mid = None;
        for (&l, e) in &self.ends {
            let pair = [e.tail.0, e.head.0];
            if pair == [x, y] || pair == [y, x] {
                match (e.tail.1 % 2, e.head.1 % 2) {
                    (1, 1) => over_mid = Some(l),
                    (0, 0) => under_mid = Some(l),
                    _ => {}
                }
            }
        }
        let (Some(o1), Some(u1)) = (over_mid, under_mid) else {
            return Err(bad(format!("crossings {x}, {y} do not form a bigon")));
        };
        if self.basepoint == o1 || self.basepoint == u1 {
            return Err(bad("basepoint lies inside the bigon"));
        }
        let (eo, eu) = (self.ends[&o1], self.ends[&u1]);
        let a = eo.tail.0; // first crossing along the over strand
        let b = eo.head.0;
        let o = self.crossings[a][(eo.tail.1 + 2) % 4];
        let o2 = self.crossings[b][(eo.head.1 + 2) % 4];
        let u = self.crossings[eu.tail.0][(eu.tail.1 + 2) % 4];
        let u2 = self.crossings[eu.head.0][(eu.head.1 + 2) % 4];
        if [o, o2, u, u2].iter().any(|&l| l == o1 || l == u1) {
            return Err(bad("degenerate bigon"));
        }
        let outer = BTreeSet::from([o, o2, u, u2]);
        if outer.len() < 4 {
            return Err(bad(
                "bigon strands are joined to each other outside the bigon; remove that kink first",
            ));
        }
        let (crossings, signs, loops, bp) = self.contract(&[x, y])?;
        let d = self.rebuild(crossings, signs, loops, bp)?;
        let mut spec = R2Spec {
            over: o,
            under: u,
            over_mid: o1,
            over_out: o2,
            under_mid: u1,
            under_out: u2,
            variant: 0,
            positions: Some([a, b]),
        };
        // identify which variant reproduces the input
        if let Ok(c) = d.r2_candidates(&spec) {
            if let Some(v) = c
                .iter()
                .position(|(e, _)| e.crossings == self.crossings && e.signs == self.signs)
            {
                spec.variant = v;
            }
        }
        Ok((d, spec))
    }

    /// Deletes crossings, letting strands run straight through them. Merged arcs take
    /// the label of the piece whose tail survives (smallest label for closed loops).
    fn contract(
        &self,
        removed: &[usize],
    ) -> Result<(Vec<[u32; 4]>, Vec<i8>, Vec<u32>, u32), DiagramError> {
        let arcs: Vec<u32> = self.ends.keys().copied().collect();
        let idx: BTreeMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut uf = UnionFind::new(arcs.len());
        for &x in removed {
            let t = self.crossings[x];
            uf.union(idx[&t[0]], idx[&t[2]]);
            uf.union(idx[&t[1]], idx[&t[3]]);
        }
        let mut rep: BTreeMap<usize, u32> = BTreeMap::new();
        for &a in &arcs {
            if !removed.contains(&self.ends[&a].tail.0) {
                rep.insert(uf.find(idx[&a]), a);
            }
        }
        let mut loops = self.loops.clone();
        let mut label = BTreeMap::new();
        for &a in &arcs {
            let r = uf.find(idx[&a]);
            let l = match rep.get(&r) {
                Some(&l) => l,
                None => {
                    let l = arcs[r];
                    if !loops.contains(&l) {
                        loops.push(l);
                    }
                    l
                }
            };
            label.insert(a, l);
        }
        let mut crossings = Vec::new();
        let mut signs = Vec::new();
        for (x, t) in self.crossings.iter().enumerate() {
            if removed.contains(&x) {
                continue;
            }
            crossings.push(t.map(|l| label[&l]));
            signs.push(self.signs[x]);
        }
        let bp = *label.get(&self.basepoint).unwrap_or(&self.basepoint);
        Ok((crossings, signs, loops, bp))
    }

    /// Third Reidemeister move across the triangular face bounded by `xs`.
    pub fn r3(&self, xs: [usize; 3]) -> Result<Diagram, DiagramError> {
        let n = self.crossings.len();
        if xs.iter().any(|&x| x >= n) || xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] {
            return Err(bad("R3 needs three distinct crossings"));
        }
        let face = self
            .faces()
            .into_iter()
            .find(|f| {
                let mut c: Vec<usize> = f.iter().map(|d| d.0).collect();
                c.sort_unstable();
                let mut want = xs;
                want.sort_unstable();
                c == want
            })
            .ok_or_else(|| bad("crossings do not bound a triangle"))?;
        let inner: Vec<u32> = face.iter().map(|&(x, s)| self.crossings[x][s]).collect();
        let mut levels = Vec::new();
        for &l in &inner {
            let e = self.ends[&l];
            levels.push((e.tail.1 % 2) + (e.head.1 % 2));
            if self.basepoint == l {
                return Err(bad("basepoint lies on the triangle"));
            }
        }
        let mut sorted = levels.clone();
        sorted.sort_unstable();
        if sorted != [0, 1, 2] {
            return Err(bad("triangle strands are not stacked bottom/middle/top"));
        }
        let mut crossings = self.crossings.clone();
        for &s1 in &inner {
            let e = self.ends[&s1];
            let (p, q) = (e.tail, e.head);
            let s_in = self.crossings[p.0][(p.1 + 2) % 4];
            let s_out = self.crossings[q.0][(q.1 + 2) % 4];
            if inner.contains(&s_in) || inner.contains(&s_out) {
                return Err(bad("degenerate triangle"));
            }
            crossings[p.0][(p.1 + 2) % 4] = s1;
            crossings[p.0][p.1] = s_out;
            crossings[q.0][q.1] = s_in;
            crossings[q.0][(q.1 + 2) % 4] = s1;
        }
        self.rebuild(
            crossings,
            self.signs.clone(),
            self.loops.clone(),
            self.basepoint,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_pd};

    #[test]
    fn kink_round_trip() {
        let u = Diagram::unknot();
        for under_first in [true, false] {
            for sign in [1, -1] {
                let spec = R1Spec {
                    arc: 1,
                    sign,
                    under_first,
                    loop_arc: 2,
                    out_arc: 0,
                    position: None,
                };
                let k = u.r1_plus(&spec).unwrap();
                assert!(k.is_knot());
                assert_eq!(k.signs(), &[sign]);
                let (back, _) = k.r1_minus(0, 2).unwrap();
                assert_eq!(back, u);
            }
        }
        let t = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        for under_first in [true, false] {
            for sign in [1, -1] {
                let spec = R1Spec {
                    arc: 3,
                    sign,
                    under_first,
                    loop_arc: 7,
                    out_arc: 8,
                    position: Some(1),
                };
                let k = t.r1_plus(&spec).unwrap();
                let (back, rspec) = k.r1_minus(1, 7).unwrap();
                assert_eq!(back, t);
                assert_eq!(rspec, spec);
            }
        }
    }

    #[test]
    fn bigon_round_trip() {
        let t = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        // arcs 1 and 2 share a face of the trefoil
        let spec = R2Spec {
            over: 1,
            under: 4,
            over_mid: 7,
            over_out: 8,
            under_mid: 9,
            under_out: 10,
            variant: 0,
            positions: None,
        };
        let count = t.r2_variant_count(&spec).unwrap();
        assert!(count >= 1, "no planar R2 found");
        for v in 0..count {
            let d = t
                .r2_plus(&R2Spec {
                    variant: v,
                    ..spec.clone()
                })
                .unwrap();
            assert_eq!(d.crossing_count(), 5);
            let (back, rs) = d.r2_minus(3, 4).unwrap();
            assert_eq!(back, t);
            assert_eq!(d, back.r2_plus(&rs).unwrap());
        }
    }

    #[test]
    fn triangle_move() {
        // closure of s1 s2 s1 has a triangle; R3 turns it into s2 s1 s2 up to labels
        let d = braid_closure(3, &[1, 2, 1]).unwrap();
        let e = d.r3([0, 1, 2]).unwrap();
        assert_eq!(e.crossing_signs(), (3, 0));
        assert_eq!(e.r3([0, 1, 2]).unwrap(), d);
    }

    #[test]
    fn bands() {
        let t = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let p = t.saddle_pinch(1, 7).unwrap();
        assert_eq!(p.component_count(), 2);
        assert_eq!(p.saddle_absorb(7, 1).unwrap(), t);
        assert!(p.death(7).is_ok());
        assert!(p.death(1).is_err());
    }
}
