//! Closures of braid words as PD diagrams.

use std::collections::BTreeMap;

use super::{Diagram, DiagramError};

/// Closure of a braid on `strands` strands. Letter `i` (1-based) is a positive
/// crossing between positions `i` and `i+1`, `-i` the negative one. Strands run
/// downward; a strand meeting no crossing becomes a loop.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
    if strands == 0 {
        return Err(DiagramError::MalformedPd(
            "braid needs at least one strand".into(),
        ));
    }
    let mut next = strands as u32 + 1;
    let mut current: Vec<u32> = (1..=strands as u32).collect();
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(DiagramError::MalformedPd(format!(
                "braid letter {g} out of range"
            )));
        }
        let (l_in, r_in) = (current[i - 1], current[i]);
        let (l_out, r_out) = (next, next + 1);
        next += 2;
        // Clockwise from the incoming under-arc; the strand from the upper left
        // passes under in the positive case.
        crossings.push(if g > 0 {
            [l_in, r_in, r_out, l_out]
        } else {
            [r_in, r_out, l_out, l_in]
        });
        current[i - 1] = l_out;
        current[i] = r_out;
    }
    // Close up: the arc leaving the bottom at position p is the arc entering at the top.
    let glue: BTreeMap<u32, u32> = current
        .iter()
        .enumerate()
        .map(|(p, &l)| (l, p as u32 + 1))
        .collect();
    for t in crossings.iter_mut() {
        for l in t.iter_mut() {
            if let Some(&g) = glue.get(l) {
                *l = g;
            }
        }
    }
    let used: std::collections::BTreeSet<u32> = crossings.iter().flatten().copied().collect();
    let loops: Vec<u32> = (1..=strands as u32).filter(|l| !used.contains(l)).collect();
    // compact labels to 1..n
    let all: Vec<u32> = used
        .iter()
        .copied()
        .chain(loops.iter().copied())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let compact: BTreeMap<u32, u32> = all
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as u32 + 1))
        .collect();
    for t in crossings.iter_mut() {
        for l in t.iter_mut() {
            *l = compact[l];
        }
    }
    let loops = loops.iter().map(|l| compact[l]).collect();
    let signs = word.iter().map(|&g| if g > 0 { 1 } else { -1 }).collect();
    Diagram::new(crossings, Some(signs), loops, None)
}
