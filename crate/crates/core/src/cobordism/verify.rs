//! Checks of the identities satisfied by movie maps, evaluated on homology and
//! compared up to a nonzero constant.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::homology_map::{induced_homology_map, HomologyMap};
use super::maps::{movie_map, ChainMap};
use super::movie::{Band, Move, Movie};
use super::CobordismError;
use crate::algebra::{Fp, Poly};
use crate::diagram::Diagram;
use crate::khovanov::{ChainComplex, Homology, HomologyResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    /// Constant relating the two sides, as a signed representative.
    pub unit_scalar: Option<i64>,
    pub details: String,
}

fn two_x_pow(k: usize, fp: Fp) -> Poly {
    Poly::monomial(2, 1).pow(k as u32, fp)
}

fn on_homology(f: &ChainMap) -> Result<(HomologyMap, Homology), CobordismError> {
    let hs = Homology::new(&f.source)?;
    let ht = if f.source.diagram().same_frame(f.target.diagram(), true) {
        hs.clone()
    } else {
        Homology::new(&f.target)?
    };
    Ok((induced_homology_map(f, &hs, &ht)?, hs))
}

fn compare(check: &str, lhs: &HomologyMap, rhs: &HomologyMap, fp: Fp, details: String) -> Report {
    let ratio = lhs.unit_ratio(rhs, fp);
    Report {
        check: check.into(),
        pass: ratio.is_some(),
        unit_scalar: ratio.map(|c| fp.signed(c)),
        details,
    }
}

/// `(2x)^M · φ(F̄) ∘ φ(F) = (2x)^(b−m) · id` on the homology of the source, where
/// F̄ is the time-reversed movie.
pub fn verify_theorem1(movie: &Movie, fp: Fp) -> Result<Report, CobordismError> {
    let s = movie.stats();
    if !s.connected {
        return Err(CobordismError::NotConnected);
    }
    let there = movie_map(movie, fp)?;
    let back = movie_map(&movie.mirror(), fp)?;
    let (composite, h) = on_homology(&there.then(&back))?;
    let lhs = composite.scale(&two_x_pow(s.deaths, fp), fp);
    let rhs =
        HomologyMap::identity(&h).scale(&two_x_pow(s.saddles.saturating_sub(s.births), fp), fp);
    Ok(compare(
        "theorem1",
        &lhs,
        &rhs,
        fp,
        format!(
            "(m, b, M) = ({}, {}, {}): (2x)^{} · reverse ∘ forward vs (2x)^{} · id",
            s.births,
            s.saddles,
            s.deaths,
            s.deaths,
            s.saddles.saturating_sub(s.births)
        ),
    ))
}

/// Compares the movie with the sum of the two movies that replace moves `i, i+1`
/// by a dot at `feet.0` or at `feet.1` of frame `i`.
fn dotted_sum(
    movie: &Movie,
    i: usize,
    feet: (u32, u32),
    check: &str,
    fp: Fp,
) -> Result<Report, CobordismError> {
    let (phi, _) = on_homology(&movie_map(movie, fp)?)?;
    let one = movie.splice(i, 2, &[Move::Dot { arc: feet.0 }])?;
    let two = movie.splice(i, 2, &[Move::Dot { arc: feet.1 }])?;
    let (p1, _) = on_homology(&movie_map(&one, fp)?)?;
    let (p2, _) = on_homology(&movie_map(&two, fp)?)?;
    let mut sum = p1.clone();
    for r in 0..sum.matrix.rows() {
        for c in 0..sum.matrix.cols() {
            sum.matrix
                .set(r, c, p1.matrix.get(r, c).add(p2.matrix.get(r, c), fp));
        }
    }
    let sum = sum.scale(&Poly::one(), fp);
    Ok(compare(
        check,
        &phi,
        &sum,
        fp,
        format!(
            "moves {i}, {}: dots at arcs {} and {}",
            i + 1,
            feet.0,
            feet.1
        ),
    ))
}

/// Neck cutting: a tube (a split immediately undone by a merge) equals the sum of
/// the surfaces with the tube removed and a dot at either of its feet.
pub fn verify_neck_cutting(movie: &Movie, i: usize, fp: Fp) -> Result<Report, CobordismError> {
    let mv = movie.moves();
    let feet = match (mv.get(i), mv.get(i + 1)) {
        (
            Some(Move::Saddle(Band::Pinch { arc, loop_arc })),
            Some(Move::Saddle(Band::Absorb {
                loop_arc: k,
                arc: c,
            })),
        ) if loop_arc == k => (*arc, *c),
        (
            Some(Move::Saddle(Band::Swap { arcs: [a, b] })),
            Some(Move::Saddle(Band::Swap { arcs: [c, d] })),
        ) if ([a, b] == [c, d] || [a, b] == [d, c])
            && movie.frames()[i + 1].component_count() > movie.frames()[i].component_count() =>
        {
            (*a, *b)
        }
        _ => return Err(CobordismError::NoSuchHandle(i)),
    };
    dotted_sum(movie, i, feet, "neck", fp)
}

/// Two adjacent saddles along the same band, one undoing the other, equal the sum
/// of the movies without them and a dot on either side of the band.
pub fn verify_reverse_saddles(movie: &Movie, i: usize, fp: Fp) -> Result<Report, CobordismError> {
    let mv = movie.moves();
    let (Some(first), Some(second)) = (mv.get(i), mv.get(i + 1)) else {
        return Err(CobordismError::NotReversePair(i));
    };
    if !first.is_saddle() || first.reverse(&movie.frames()[i])? != *second {
        // a swap is its own reverse in either arc order
        let swapped = match (first, second) {
            (
                Move::Saddle(Band::Swap { arcs: [a, b] }),
                Move::Saddle(Band::Swap { arcs: [c, d] }),
            ) => a == d && b == c,
            _ => false,
        };
        if !swapped {
            return Err(CobordismError::NotReversePair(i));
        }
    }
    let feet = match first {
        Move::Saddle(Band::Swap { arcs: [a, b] }) => (*a, *b),
        Move::Saddle(Band::Pinch { arc, .. }) => (*arc, *arc),
        Move::Saddle(Band::Absorb { loop_arc, arc }) => (*loop_arc, *arc),
        _ => unreachable!(),
    };
    dotted_sum(movie, i, feet, "reverse-saddles", fp)
}

/// Whether the movie is a ribbon concordance: an annulus without deaths or dots.
pub fn is_ribbon_concordance(movie: &Movie) -> bool {
    let s = movie.stats();
    s.deaths == 0 && s.dots == 0 && s.genus == Some(0)
}

/// A ribbon concordance should induce an injective map on homology.
pub fn verify_ribbon(movie: &Movie, fp: Fp) -> Result<Report, CobordismError> {
    let s = movie.stats();
    if !is_ribbon_concordance(movie) {
        return Ok(Report {
            check: "ribbon".into(),
            pass: false,
            unit_scalar: None,
            details: "not a ribbon concordance (needs genus 0, no deaths, no dots)".into(),
        });
    }
    let (phi, _) = on_homology(&movie_map(movie, fp)?)?;
    let pass = phi.is_injective(fp);
    Ok(Report {
        check: "ribbon".into(),
        pass,
        unit_scalar: None,
        details: format!(
            "{} births, {} saddles; induced map {} injective",
            s.births,
            s.saddles,
            if pass { "is" } else { "is not" }
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovieBounds {
    pub xo_source: u32,
    pub xo_target: u32,
    pub deaths: usize,
    pub genus: Option<u32>,
    /// `max{M, xo(target)} + 2g`, when the cobordism is connected.
    pub genus_bound: Option<u32>,
    pub genus_bound_holds: Option<bool>,
    /// Oriented bands used, if the movie only uses bands and Reidemeister moves
    /// and ends on a crossingless diagram.
    pub band_witness: Option<usize>,
    /// For annuli: whether `x^b` times both homologies agree as modules.
    pub concordance_images_agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub xo: u32,
    /// Lower bound on the number of oriented band moves needed to reach an unlink.
    pub band_unlinking_lower_bound: u32,
    pub movie: Option<MovieBounds>,
}

/// Per-degree module type of `x^b · H`: free ranks and surviving torsion exponents.
fn image_type(h: &HomologyResult, b: u32) -> BTreeMap<i64, (usize, Vec<u32>)> {
    h.degrees
        .iter()
        .map(|e| {
            let tors: Vec<u32> = e
                .torsion_exponents
                .iter()
                .filter(|&&k| k > b)
                .map(|&k| k - b)
                .collect();
            (e.i, (e.free_rank, tors))
        })
        .filter(|(_, (f, t))| *f > 0 || !t.is_empty())
        .collect()
}

pub fn corollary_bounds(
    k: &Diagram,
    movie: Option<&Movie>,
    fp: Fp,
) -> Result<CorollaryReport, CobordismError> {
    let hk = Homology::new(&ChainComplex::new(k, fp)?)?.result();
    let mut report = CorollaryReport {
        xo: hk.xo,
        band_unlinking_lower_bound: hk.xo,
        movie: None,
    };
    let Some(movie) = movie else {
        return Ok(report);
    };
    let movie = if movie.source().same_frame(k, false) {
        movie.clone()
    } else if movie.target().same_frame(k, false) {
        movie.mirror()
    } else {
        return Err(CobordismError::Malformed(
            "the knot is not an end of the movie".into(),
        ));
    };
    let h0 = Homology::new(&ChainComplex::new(movie.source(), fp)?)?.result();
    let h1 = Homology::new(&ChainComplex::new(movie.target(), fp)?)?.result();
    let s = movie.stats();
    let genus_bound = s.genus.map(|g| (s.deaths as u32).max(h1.xo) + 2 * g);
    let bands_only = movie.moves().iter().all(|m| {
        matches!(m, Move::Saddle(Band::Swap { .. }))
            || m.j_degree() == 0 && !matches!(m, Move::Dot { .. })
    });
    let band_witness =
        (bands_only && movie.target().crossing_count() == 0 && movie.target().is_knot())
            .then_some(s.saddles);
    let concordance = (s.genus == Some(0)).then(|| {
        let b = s.saddles as u32;
        image_type(&h0, b) == image_type(&h1, b)
    });
    if let Some(w) = band_witness {
        report.band_unlinking_lower_bound =
            report.band_unlinking_lower_bound.min(w as u32).max(hk.xo);
    }
    report.movie = Some(MovieBounds {
        xo_source: h0.xo,
        xo_target: h1.xo,
        deaths: s.deaths,
        genus: s.genus,
        genus_bound,
        genus_bound_holds: genus_bound.map(|bound| h0.xo <= bound),
        band_witness,
        concordance_images_agree: concordance,
    });
    Ok(report)
}
