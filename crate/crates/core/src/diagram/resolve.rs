//! Complete smoothings and their circles.

use std::collections::BTreeMap;

use super::{Diagram, UnionFind, SMOOTHING};

/// A vertex of the cube: bit `i` is the smoothing at crossing `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub u64);

impl State {
    pub fn bit(self, i: usize) -> u8 {
        ((self.0 >> i) & 1) as u8
    }

    pub fn weight(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn flip(self, i: usize) -> State {
        State(self.0 ^ (1 << i))
    }

    /// Number of 1-bits at positions below `i`.
    pub fn ones_before(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    pub fn from_bits(bits: &[u8]) -> State {
        State(
            bits.iter()
                .enumerate()
                .fold(0, |acc, (i, &b)| acc | ((b as u64 & 1) << i)),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleSet {
    /// Arcs of each circle, ascending; circles ordered by smallest arc.
    pub circles: Vec<Vec<u32>>,
    pub arc_to_circle: BTreeMap<u32, usize>,
    pub basepoint_circle: usize,
}

impl CircleSet {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of(&self, arc: u32) -> usize {
        self.arc_to_circle[&arc]
    }
}

pub fn resolve_state(d: &Diagram, s: State) -> CircleSet {
    let arcs = d.arcs();
    let index: BTreeMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut uf = UnionFind::new(arcs.len());
    for (x, t) in d.crossings().iter().enumerate() {
        for &(p, q) in &SMOOTHING[s.bit(x) as usize] {
            uf.union(index[&t[p]], index[&t[q]]);
        }
    }
    // Roots are the smallest index in each class, and arcs are sorted, so
    // numbering roots in order gives circles ordered by smallest arc.
    let mut root_to_circle = BTreeMap::new();
    let mut circles: Vec<Vec<u32>> = Vec::new();
    let mut arc_to_circle = BTreeMap::new();
    for (i, &a) in arcs.iter().enumerate() {
        let r = uf.find(i);
        let c = *root_to_circle.entry(r).or_insert_with(|| {
            circles.push(Vec::new());
            circles.len() - 1
        });
        circles[c].push(a);
        arc_to_circle.insert(a, c);
    }
    let basepoint_circle = arc_to_circle[&d.basepoint()];
    CircleSet {
        circles,
        arc_to_circle,
        basepoint_circle,
    }
}
