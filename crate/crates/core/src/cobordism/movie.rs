//! Movies: frames joined by elementary moves, with validation, statistics and
//! time reversal.
//!
//! Locus fields per move type:
//! - `birth`, `death`, `dot`: `{"arc": k}` (birth and death act on crossingless circles)
//! - `saddle`: `{"kind": "swap", "arcs": [a, b]}` exchanges the heads of two arcs,
//!   `{"kind": "pinch", "arc": a, "loop_arc": k}` splits a small circle `k` off `a`,
//!   `{"kind": "absorb", "loop_arc": k, "arc": a}` merges circle `k` into `a`
//! - `r1+`: an [`R1Spec`]; `r1-`: `{"crossing": x, "loop_arc": k}`
//! - `r2+`: an [`R2Spec`]; `r2-`: `{"crossings": [x, y]}`
//! - `r3`: `{"crossings": [x, y, z]}`

use serde::{Deserialize, Serialize};

use super::CobordismError;
use crate::diagram::{Diagram, DiagramError, DiagramJson, R1Spec, R2Spec, UnionFind};

/// A band attached to a frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Band {
    Swap { arcs: [u32; 2] },
    Pinch { arc: u32, loop_arc: u32 },
    Absorb { loop_arc: u32, arc: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "locus")]
pub enum Move {
    #[serde(rename = "birth")]
    Birth { arc: u32 },
    #[serde(rename = "death")]
    Death { arc: u32 },
    #[serde(rename = "saddle")]
    Saddle(Band),
    #[serde(rename = "r1+")]
    R1Plus(R1Spec),
    #[serde(rename = "r1-")]
    R1Minus { crossing: usize, loop_arc: u32 },
    #[serde(rename = "r2+")]
    R2Plus(R2Spec),
    #[serde(rename = "r2-")]
    R2Minus { crossings: [usize; 2] },
    #[serde(rename = "r3")]
    R3 { crossings: [usize; 3] },
    #[serde(rename = "dot")]
    Dot { arc: u32 },
}

impl Move {
    pub fn apply(&self, d: &Diagram) -> Result<Diagram, DiagramError> {
        match self {
            Move::Birth { arc } => d.birth(*arc),
            Move::Death { arc } => d.death(*arc),
            Move::Saddle(Band::Swap { arcs: [a, b] }) => d.saddle_swap(*a, *b),
            Move::Saddle(Band::Pinch { arc, loop_arc }) => d.saddle_pinch(*arc, *loop_arc),
            Move::Saddle(Band::Absorb { loop_arc, arc }) => d.saddle_absorb(*loop_arc, *arc),
            Move::R1Plus(spec) => d.r1_plus(spec),
            Move::R1Minus { crossing, loop_arc } => Ok(d.r1_minus(*crossing, *loop_arc)?.0),
            Move::R2Plus(spec) => d.r2_plus(spec),
            Move::R2Minus { crossings: [x, y] } => Ok(d.r2_minus(*x, *y)?.0),
            Move::R3 { crossings } => d.r3(*crossings),
            Move::Dot { arc } => {
                if d.has_arc(*arc) {
                    Ok(d.clone())
                } else {
                    Err(DiagramError::BadLocus(format!("no arc {arc}")))
                }
            }
        }
    }

    /// Normal form relative to the source frame, so that reversing twice is the identity.
    fn canonical(&self, d: &Diagram) -> Move {
        let n = d.crossing_count();
        match self {
            Move::R1Plus(spec) => {
                let mut s = spec.clone();
                s.position = Some(s.position.unwrap_or(n));
                if d.is_loop(s.arc) {
                    s.out_arc = s.arc;
                }
                Move::R1Plus(s)
            }
            Move::R2Plus(spec) => {
                let mut s = spec.clone();
                s.positions = Some(s.positions.unwrap_or([n, n + 1]));
                Move::R2Plus(s)
            }
            Move::R2Minus { crossings: [x, y] } => Move::R2Minus {
                crossings: [*x.min(y), *x.max(y)],
            },
            m => m.clone(),
        }
    }

    /// The move running from `target` back to `source`.
    pub fn reverse(&self, source: &Diagram) -> Result<Move, DiagramError> {
        Ok(match self.canonical(source) {
            Move::Birth { arc } => Move::Death { arc },
            Move::Death { arc } => Move::Birth { arc },
            Move::Saddle(Band::Swap { arcs }) => Move::Saddle(Band::Swap { arcs }),
            Move::Saddle(Band::Pinch { arc, loop_arc }) => {
                Move::Saddle(Band::Absorb { loop_arc, arc })
            }
            Move::Saddle(Band::Absorb { loop_arc, arc }) => {
                Move::Saddle(Band::Pinch { arc, loop_arc })
            }
            Move::R1Plus(spec) => Move::R1Minus {
                crossing: spec.position.unwrap_or(0),
                loop_arc: spec.loop_arc,
            },
            Move::R1Minus { crossing, loop_arc } => {
                Move::R1Plus(source.r1_minus(crossing, loop_arc)?.1)
            }
            Move::R2Plus(spec) => {
                let [a, b] = spec.positions.unwrap_or_default();
                Move::R2Minus {
                    crossings: [a.min(b), a.max(b)],
                }
            }
            Move::R2Minus { crossings: [x, y] } => Move::R2Plus(source.r2_minus(x, y)?.1),
            m @ (Move::R3 { .. } | Move::Dot { .. }) => m,
        })
    }

    pub fn is_saddle(&self) -> bool {
        matches!(self, Move::Saddle(_))
    }

    /// Change in quantum grading of the induced map.
    pub fn j_degree(&self) -> i64 {
        match self {
            Move::Birth { .. } | Move::Death { .. } => 1,
            Move::Saddle(_) => -1,
            Move::Dot { .. } => -2,
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovieStats {
    pub births: usize,
    pub saddles: usize,
    pub deaths: usize,
    pub dots: usize,
    pub connected: bool,
    /// Defined for connected cobordisms.
    pub genus: Option<u32>,
}

/// Wire format of a movie.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovieJson {
    #[serde(default = "schema_one")]
    pub schema: u32,
    pub frames: Vec<DiagramJson>,
    pub moves: Vec<Move>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint_map: Option<Vec<u32>>,
}

fn schema_one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Movie {
    frames: Vec<Diagram>,
    moves: Vec<Move>,
    stats: MovieStats,
}

pub fn parse_movie(text: &str) -> Result<Movie, CobordismError> {
    let j: MovieJson =
        serde_json::from_str(text).map_err(|e| CobordismError::Malformed(e.to_string()))?;
    Movie::from_json(j)
}

impl Movie {
    pub fn from_json(j: MovieJson) -> Result<Movie, CobordismError> {
        if j.frames.is_empty() {
            return Err(CobordismError::Malformed(
                "a movie needs at least one frame".into(),
            ));
        }
        if let Some(bm) = &j.basepoint_map {
            if bm.len() != j.frames.len() {
                return Err(CobordismError::Malformed(
                    "basepoint_map needs one entry per frame".into(),
                ));
            }
        }
        let declared: Vec<Option<u32>> = (0..j.frames.len())
            .map(|k| {
                j.basepoint_map
                    .as_ref()
                    .map(|m| m[k])
                    .or(j.frames[k].basepoint)
            })
            .collect();
        let mut frames = Vec::with_capacity(j.frames.len());
        for (k, f) in j.frames.into_iter().enumerate() {
            let d = DiagramJson {
                basepoint: declared[k],
                ..f
            }
            .into_diagram();
            frames.push(d.map_err(|e| CobordismError::FrameMismatch {
                index: k.saturating_sub(1),
                reason: format!("frame {k}: {e}"),
            })?);
        }
        // undeclared basepoints are inherited from the previous frame
        for k in 1..frames.len() {
            if declared[k].is_none() && frames[k].has_arc(frames[k - 1].basepoint()) {
                frames[k] = frames[k].with_basepoint(frames[k - 1].basepoint())?;
            }
        }
        Movie::new(frames, j.moves)
    }

    /// Validates that each move turns its frame into the next one. The basepoint
    /// label is fixed along the movie, so no move may remove its arc.
    pub fn new(frames: Vec<Diagram>, moves: Vec<Move>) -> Result<Movie, CobordismError> {
        if frames.len() != moves.len() + 1 {
            return Err(CobordismError::Malformed(format!(
                "{} frames need {} moves, found {}",
                frames.len(),
                frames.len().saturating_sub(1),
                moves.len()
            )));
        }
        if !frames[0].is_knot() {
            return Err(CobordismError::EndpointNotKnot("first"));
        }
        if !frames[frames.len() - 1].is_knot() {
            return Err(CobordismError::EndpointNotKnot("last"));
        }
        let mut canon = Vec::with_capacity(moves.len());
        for (index, mv) in moves.iter().enumerate() {
            let next = mv
                .apply(&frames[index])
                .map_err(|source| CobordismError::BadLocus { index, source })?;
            if next.basepoint() != frames[index].basepoint() {
                return Err(CobordismError::BasepointLost {
                    index,
                    arc: frames[index].basepoint(),
                });
            }
            let want = &frames[index + 1];
            if !next.same_frame(want, true) {
                return Err(CobordismError::FrameMismatch {
                    index,
                    reason: format!(
                        "expected {} (basepoint {}), got {} (basepoint {})",
                        want.render(),
                        want.basepoint(),
                        next.render(),
                        next.basepoint()
                    ),
                });
            }
            canon.push(mv.canonical(&frames[index]));
        }
        let stats = stats(&frames, &canon);
        Ok(Movie {
            frames,
            moves: canon,
            stats,
        })
    }

    /// The movie of a single frame.
    pub fn identity(d: Diagram) -> Result<Movie, CobordismError> {
        Movie::new(vec![d], Vec::new())
    }

    pub fn frames(&self) -> &[Diagram] {
        &self.frames
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn stats(&self) -> MovieStats {
        self.stats
    }

    pub fn source(&self) -> &Diagram {
        &self.frames[0]
    }

    pub fn target(&self) -> &Diagram {
        &self.frames[self.frames.len() - 1]
    }

    /// Total j-degree of the induced map.
    pub fn j_degree(&self) -> i64 {
        self.moves.iter().map(Move::j_degree).sum()
    }

    /// The time-reversed movie.
    pub fn mirror(&self) -> Movie {
        let frames: Vec<Diagram> = self.frames.iter().rev().cloned().collect();
        let moves: Vec<Move> = self
            .moves
            .iter()
            .enumerate()
            .rev()
            .map(|(k, mv)| {
                mv.reverse(&self.frames[k])
                    .expect("validated move reverses")
            })
            .collect();
        Movie::new(frames, moves).expect("reverse of a valid movie is valid")
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Movie) -> Result<Movie, CobordismError> {
        if !self.target().same_frame(next.source(), true) {
            return Err(CobordismError::FrameMismatch {
                index: self.moves.len(),
                reason: "movies do not share the junction frame".into(),
            });
        }
        let mut frames = self.frames.clone();
        frames.extend(next.frames[1..].iter().cloned());
        let mut moves = self.moves.clone();
        moves.extend(next.moves.iter().cloned());
        Movie::new(frames, moves)
    }

    /// Replaces moves `i..i+len` by `replacement`, whose frames start at frame `i`.
    pub(crate) fn splice(
        &self,
        i: usize,
        len: usize,
        replacement: &[Move],
    ) -> Result<Movie, CobordismError> {
        let mut frames = self.frames[..=i].to_vec();
        for (k, mv) in replacement.iter().enumerate() {
            let next =
                mv.apply(&frames[frames.len() - 1])
                    .map_err(|source| CobordismError::BadLocus {
                        index: i + k,
                        source,
                    })?;
            frames.push(next);
        }
        frames.extend(self.frames[i + len + 1..].iter().cloned());
        let mut moves = self.moves[..i].to_vec();
        moves.extend(replacement.iter().cloned());
        moves.extend(self.moves[i + len..].iter().cloned());
        Movie::new(frames, moves)
    }

    pub fn to_json(&self) -> MovieJson {
        MovieJson {
            schema: 1,
            frames: self.frames.iter().map(Diagram::to_json).collect(),
            moves: self.moves.clone(),
            basepoint_map: None,
        }
    }
}

/// Counts critical points and finds the surface components: one node per
/// (frame, link component), joined whenever a move carries one into the next.
fn stats(frames: &[Diagram], moves: &[Move]) -> MovieStats {
    let comps: Vec<std::collections::BTreeMap<u32, usize>> =
        frames.iter().map(Diagram::component_of).collect();
    let mut offset = Vec::with_capacity(frames.len());
    let mut total = 0;
    for f in frames {
        offset.push(total);
        total += f.component_count();
    }
    let mut uf = UnionFind::new(total);
    for (k, mv) in moves.iter().enumerate() {
        let (a, b) = (&comps[k], &comps[k + 1]);
        for (arc, &cb) in b {
            if let Some(&ca) = a.get(arc) {
                uf.union(offset[k] + ca, offset[k + 1] + cb);
            }
        }
        match mv {
            Move::Saddle(Band::Pinch { arc, loop_arc }) => {
                uf.union(offset[k] + a[arc], offset[k + 1] + b[loop_arc]);
            }
            Move::Saddle(Band::Absorb { loop_arc, arc }) => {
                uf.union(offset[k] + a[loop_arc], offset[k + 1] + b[arc]);
            }
            _ => {}
        }
    }
    let roots: std::collections::BTreeSet<usize> = (0..total).map(|i| uf.find(i)).collect();
    let count = |f: fn(&Move) -> bool| moves.iter().filter(|m| f(m)).count();
    let births = count(|m| matches!(m, Move::Birth { .. }));
    let deaths = count(|m| matches!(m, Move::Death { .. }));
    let saddles = count(Move::is_saddle);
    let dots = count(|m| matches!(m, Move::Dot { .. }));
    let connected = roots.len() == 1;
    let chi2 = saddles as i64 - births as i64 - deaths as i64;
    let genus = (connected && chi2 >= 0 && chi2 % 2 == 0).then_some((chi2 / 2) as u32);
    MovieStats {
        births,
        saddles,
        deaths,
        dots,
        connected,
        genus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot_movie(moves: &[Move]) -> Movie {
        let mut frames = vec![Diagram::unknot()];
        for m in moves {
            let next = m.apply(frames.last().unwrap()).unwrap();
            frames.push(next);
        }
        Movie::new(frames, moves.to_vec()).unwrap()
    }

    fn ribbon() -> Movie {
        unknot_movie(&[
            Move::Birth { arc: 2 },
            Move::Saddle(Band::Absorb {
                loop_arc: 2,
                arc: 1,
            }),
        ])
    }

    fn tube() -> Movie {
        unknot_movie(&[
            Move::Saddle(Band::Pinch {
                arc: 1,
                loop_arc: 2,
            }),
            Move::Saddle(Band::Absorb {
                loop_arc: 2,
                arc: 1,
            }),
        ])
    }

    #[test]
    fn statistics() {
        let s = ribbon().stats();
        assert_eq!(
            (s.births, s.saddles, s.deaths, s.genus, s.connected),
            (1, 1, 0, Some(0), true)
        );
        let s = tube().stats();
        assert_eq!((s.births, s.saddles, s.deaths, s.genus), (0, 2, 0, Some(1)));
        let m = unknot_movie(&[
            Move::Birth { arc: 2 },
            Move::Saddle(Band::Absorb {
                loop_arc: 2,
                arc: 1,
            }),
            Move::Saddle(Band::Pinch {
                arc: 1,
                loop_arc: 3,
            }),
            Move::Death { arc: 3 },
        ]);
        let s = m.stats();
        assert_eq!((s.births, s.saddles, s.deaths, s.genus), (1, 2, 1, Some(0)));
        // a sphere born and killed beside the knot is a second surface component
        let m = unknot_movie(&[Move::Birth { arc: 2 }, Move::Death { arc: 2 }]);
        assert!(!m.stats().connected);
        assert_eq!(m.stats().genus, None);
    }

    #[test]
    fn mirror_reverses() {
        let r = ribbon().mirror();
        assert!(matches!(r.moves()[0], Move::Saddle(Band::Pinch { .. })));
        assert!(matches!(r.moves()[1], Move::Death { .. }));
        assert_eq!(r.stats().deaths, 1);
        assert_eq!(r.mirror(), ribbon());
        assert_eq!(tube().mirror().moves(), tube().moves());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let m = tube();
        let text = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(parse_movie(&text).unwrap(), m);
        let mut bad = m.to_json();
        bad.frames[1].loops = vec![5];
        assert!(matches!(
            Movie::from_json(bad),
            Err(CobordismError::FrameMismatch { index: 0, .. })
        ));
        let j = r#"{"frames":[{"pd":[]},{"pd":[],"loops":[1,2]}],"moves":[{"type":"birth","locus":{"arc":2}}]}"#;
        assert!(matches!(
            parse_movie(j),
            Err(CobordismError::EndpointNotKnot("last"))
        ));
        let j = r#"{"frames":[{"pd":[]},{"pd":[]}],"moves":[{"type":"death","locus":{"arc":1}}]}"#;
        assert!(matches!(
            parse_movie(j),
            Err(CobordismError::BadLocus { index: 0, .. })
        ));
    }

    #[test]
    fn reidemeister_moves_reverse() {
        let d = crate::diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let r1 = Move::R1Plus(R1Spec {
            arc: 2,
            sign: -1,
            under_first: true,
            loop_arc: 7,
            out_arc: 8,
            position: None,
        });
        let e = r1.apply(&d).unwrap();
        let m = Movie::new(vec![d.clone(), e], vec![r1]).unwrap();
        assert_eq!(m.mirror().mirror(), m);
        assert!(matches!(
            m.mirror().moves()[0],
            Move::R1Minus {
                crossing: 3,
                loop_arc: 7
            }
        ));
    }
}
