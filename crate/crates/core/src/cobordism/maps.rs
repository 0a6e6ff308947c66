//! Chain maps induced by elementary moves and by whole movies.

use std::collections::BTreeMap;

use super::movie::{Band, Move, Movie};
use super::rmove::reidemeister_map;
use super::CobordismError;
use crate::algebra::{Fp, PolyMatrix, SparseMap};
use crate::khovanov::{check_chain_map, ChainComplex, Piece};

/// An F[x]-linear chain map of homological degree 0.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub map: SparseMap,
    pub j_degree: i64,
}

impl ChainMap {
    pub fn identity(c: &ChainComplex) -> ChainMap {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            map: SparseMap::identity(c.len()),
            j_degree: 0,
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: next.target.clone(),
            map: next.map.compose(&self.map, self.source.fp()),
            j_degree: self.j_degree + next.j_degree,
        }
    }

    pub fn check(&self) -> Result<(), CobordismError> {
        Ok(check_chain_map(
            &self.source,
            &self.target,
            &self.map,
            self.j_degree,
        )?)
    }

    /// Dense block of each homological degree (rows: target generators).
    pub fn blocks(&self) -> BTreeMap<i64, PolyMatrix> {
        self.source
            .degrees()
            .iter()
            .map(|(&i, src)| {
                let rows: Vec<usize> = self.target.degree_range(i).collect();
                let cols: Vec<usize> = src.clone().collect();
                (i, self.map.block(&rows, &cols))
            })
            .collect()
    }
}

/// The map of one move between the complexes of its source and target frames.
pub fn elementary_map(
    mv: &Move,
    src: &ChainComplex,
    tgt: &ChainComplex,
) -> Result<ChainMap, CobordismError> {
    let expected = mv
        .apply(src.diagram())
        .map_err(|e| CobordismError::MoveNotApplicable(e.to_string()))?;
    if !expected.same_frame(tgt.diagram(), true) {
        return Err(CobordismError::MoveNotApplicable(
            "target complex is not the move's result".into(),
        ));
    }
    let map = match mv {
        Move::Dot { arc } => src.dot_map(*arc)?,
        Move::Birth { arc } => morse(src, tgt, |s, t| {
            let mut p = ident(s, t, &[]);
            p.push(Piece::Birth {
                tgt: t.circle_of(*arc),
            });
            p
        }),
        Move::Death { arc } => morse(src, tgt, |s, t| {
            let k = s.circle_of(*arc);
            let mut p = ident(s, t, &[k]);
            p.push(Piece::Death { src: k });
            p
        }),
        Move::Saddle(Band::Swap { arcs: [a, b] }) => morse(src, tgt, |s, t| {
            let (sa, sb) = (s.circle_of(*a), s.circle_of(*b));
            if sa != sb {
                let mut p = ident(s, t, &[sa, sb]);
                p.push(Piece::Merge {
                    a: sa,
                    b: sb,
                    tgt: t.circle_of(*a),
                });
                p
            } else {
                let mut p = ident(s, t, &[sa]);
                p.push(Piece::Split {
                    src: sa,
                    c: t.circle_of(*a),
                    d: t.circle_of(*b),
                });
                p
            }
        }),
        Move::Saddle(Band::Pinch { arc, loop_arc }) => morse(src, tgt, |s, t| {
            let sa = s.circle_of(*arc);
            let mut p = ident(s, t, &[sa]);
            p.push(Piece::Split {
                src: sa,
                c: t.circle_of(*arc),
                d: t.circle_of(*loop_arc),
            });
            p
        }),
        Move::Saddle(Band::Absorb { loop_arc, arc }) => morse(src, tgt, |s, t| {
            let (sk, sa) = (s.circle_of(*loop_arc), s.circle_of(*arc));
            let mut p = ident(s, t, &[sk, sa]);
            p.push(Piece::Merge {
                a: sk,
                b: sa,
                tgt: t.circle_of(*arc),
            });
            p
        }),
        _ => reidemeister_map(mv, src, tgt)?,
    };
    let f = ChainMap {
        source: src.clone(),
        target: tgt.clone(),
        map,
        j_degree: mv.j_degree(),
    };
    f.check()?;
    Ok(f)
}

fn ident(
    s: &crate::diagram::CircleSet,
    t: &crate::diagram::CircleSet,
    skip: &[usize],
) -> Vec<Piece> {
    crate::khovanov::identity_pieces(s, t, skip)
}

fn morse<F>(src: &ChainComplex, tgt: &ChainComplex, pieces: F) -> SparseMap
where
    F: Fn(&crate::diagram::CircleSet, &crate::diagram::CircleSet) -> Vec<Piece>,
{
    src.state_local_map(tgt, |_, s, t| pieces(s, t))
}

/// Complexes of every frame of a movie, with the maps between consecutive ones.
#[derive(Clone, Debug)]
pub struct MovieComplexes {
    pub complexes: Vec<ChainComplex>,
    pub maps: Vec<ChainMap>,
}

impl MovieComplexes {
    pub fn new(movie: &Movie, fp: Fp) -> Result<MovieComplexes, CobordismError> {
        let complexes = movie
            .frames()
            .iter()
            .map(|d| ChainComplex::new(d, fp))
            .collect::<Result<Vec<_>, _>>()?;
        let maps = movie
            .moves()
            .iter()
            .enumerate()
            .map(|(k, mv)| elementary_map(mv, &complexes[k], &complexes[k + 1]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MovieComplexes { complexes, maps })
    }

    /// Composite of all elementary maps, later moves applied last.
    pub fn composite(&self) -> ChainMap {
        self.maps
            .iter()
            .fold(ChainMap::identity(&self.complexes[0]), |acc, f| acc.then(f))
    }
}

pub fn movie_map(movie: &Movie, fp: Fp) -> Result<ChainMap, CobordismError> {
    Ok(MovieComplexes::new(movie, fp)?.composite())
}
