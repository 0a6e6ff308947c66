//! Movie corpus: chain-map contracts of elementary maps, Reidemeister maps as
//! homology isomorphisms, the movie identities, and randomized movies.

use kht_core::algebra::Fp;
use kht_core::cobordism::{
    corollary_bounds, elementary_map, induced_homology_map, movie_map, parse_movie,
    verify_neck_cutting, verify_reverse_saddles, verify_ribbon, verify_theorem1, Band,
    CobordismError, HomologyMap, Move, Movie, MovieComplexes,
};
use kht_core::diagram::{Diagram, R1Spec};
use kht_core::khovanov::{ChainComplex, Homology};
use proptest::prelude::*;

const CORPUS: &[&str] = &[
    "genus0",
    "neck_distinct",
    "reidemeister",
    "reverse_saddles",
    "ribbon",
    "trefoil_band",
    "trefoil_crossing_tube",
    "trefoil_neck",
    "trefoil_swap_neck",
    "trefoil_unknotting",
    "triangle",
    "tube",
];

fn load(name: &str) -> Movie {
    let path = format!(
        "{}/../../corpus/movies/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    );
    parse_movie(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn fp() -> Fp {
    Fp::default()
}

#[test]
fn elementary_maps_are_chain_maps() {
    for name in CORPUS {
        let m = load(name);
        let mc = MovieComplexes::new(&m, fp()).unwrap_or_else(|e| panic!("{name}: {e}"));
        for f in &mc.maps {
            f.check().unwrap();
        }
        mc.composite().check().unwrap();
    }
}

#[test]
fn reidemeister_maps_invert_on_homology() {
    let mut seen = 0;
    for name in CORPUS {
        let m = load(name);
        for (k, mv) in m.moves().iter().enumerate() {
            if mv.j_degree() != 0 || matches!(mv, Move::Dot { .. }) {
                continue;
            }
            seen += 1;
            let src = ChainComplex::new(&m.frames()[k], fp()).unwrap();
            let tgt = ChainComplex::new(&m.frames()[k + 1], fp()).unwrap();
            let f = elementary_map(mv, &src, &tgt).unwrap();
            let g = elementary_map(&mv.reverse(&m.frames()[k]).unwrap(), &tgt, &src).unwrap();
            let (hs, ht) = (Homology::new(&src).unwrap(), Homology::new(&tgt).unwrap());
            let gf = induced_homology_map(&f.then(&g), &hs, &hs).unwrap();
            let fg = induced_homology_map(&g.then(&f), &ht, &ht).unwrap();
            assert!(
                gf.unit_ratio(&HomologyMap::identity(&hs), fp()).is_some(),
                "{name} move {k}"
            );
            assert!(
                fg.unit_ratio(&HomologyMap::identity(&ht), fp()).is_some(),
                "{name} move {k}"
            );
            assert!(induced_homology_map(&f, &hs, &ht)
                .unwrap()
                .is_injective(fp()));
        }
    }
    assert!(seen >= 8, "corpus should exercise R1, R2 and R3 moves");
}

#[test]
fn theorem1_on_corpus() {
    for name in [
        "ribbon",
        "tube",
        "genus0",
        "trefoil_band",
        "reidemeister",
        "triangle",
        "trefoil_unknotting",
    ] {
        let r = verify_theorem1(&load(name), fp()).unwrap();
        assert!(r.pass, "{name}: {}", r.details);
        assert!(
            matches!(r.unit_scalar, Some(1) | Some(-1)),
            "{name}: {:?}",
            r.unit_scalar
        );
    }
}

#[test]
fn expected_statistics() {
    let triple = |n: &str| {
        let s = load(n).stats();
        (s.births, s.saddles, s.deaths)
    };
    assert_eq!(triple("ribbon"), (1, 1, 0));
    assert_eq!(triple("tube"), (0, 2, 0));
    assert_eq!(triple("genus0"), (1, 2, 1));
    assert_eq!(triple("trefoil_band"), (0, 1, 1));
    assert_eq!(load("tube").stats().genus, Some(1));
    assert_eq!(load("genus0").stats().genus, Some(0));
    assert_eq!(load("trefoil_unknotting").stats().genus, Some(1));
}

#[test]
fn local_relations() {
    for (name, i) in [
        ("tube", 0),
        ("trefoil_neck", 0),
        ("trefoil_swap_neck", 0),
        ("neck_distinct", 1),
    ] {
        let r = verify_neck_cutting(&load(name), i, fp()).unwrap();
        assert!(r.pass, "{name}: {}", r.details);
    }
    for (name, i) in [
        ("reverse_saddles", 1),
        ("tube", 0),
        ("trefoil_neck", 0),
        ("trefoil_swap_neck", 0),
    ] {
        let r = verify_reverse_saddles(&load(name), i, fp()).unwrap();
        assert!(r.pass, "{name}: {}", r.details);
    }
    assert!(matches!(
        verify_neck_cutting(&load("genus0"), 0, fp()),
        Err(CobordismError::NoSuchHandle(0))
    ));
    assert!(matches!(
        verify_reverse_saddles(&load("genus0"), 0, fp()),
        Err(CobordismError::NotReversePair(0))
    ));
}

#[test]
fn ribbon_maps_are_injective() {
    assert!(verify_ribbon(&load("ribbon"), fp()).unwrap().pass);
    assert!(!verify_ribbon(&load("genus0"), fp()).unwrap().pass);
}

#[test]
fn corollary_instances() {
    let m = load("trefoil_band");
    let c = corollary_bounds(m.source(), Some(&m), fp()).unwrap();
    assert_eq!(c.xo, 1);
    let b = c.movie.unwrap();
    assert_eq!((b.xo_source, b.deaths, b.genus), (1, 1, Some(0)));
    assert_eq!(b.genus_bound, Some(1));
    assert_eq!(b.genus_bound_holds, Some(true));
    assert_eq!(b.concordance_images_agree, Some(true));

    let w = load("trefoil_unknotting");
    let c = corollary_bounds(w.source(), Some(&w), fp()).unwrap();
    let b = c.movie.unwrap();
    assert_eq!(b.band_witness, Some(2));
    assert!(c.xo <= 2);
    // either end of the movie may be given
    assert_eq!(corollary_bounds(w.target(), Some(&w), fp()).unwrap().xo, 0);
}

#[test]
fn bad_frame_is_rejected() {
    let path = format!(
        "{}/../../corpus/movies/bad_frame.json",
        env!("CARGO_MANIFEST_DIR")
    );
    let err = parse_movie(&std::fs::read_to_string(path).unwrap()).unwrap_err();
    assert!(
        matches!(err, CobordismError::FrameMismatch { index: 0, .. }),
        "{err}"
    );
}

#[test]
fn concatenation_is_associative() {
    let (a, b, c) = (load("ribbon"), load("tube"), load("genus0"));
    let left = a.then(&b).unwrap().then(&c).unwrap();
    let right = a.then(&b.then(&c).unwrap()).unwrap();
    assert_eq!(left, right);
    assert_eq!(
        movie_map(&left, fp()).unwrap().map,
        movie_map(&right, fp()).unwrap().map
    );
    // the map of a concatenation is the composite of the maps
    let ab = movie_map(&a, fp())
        .unwrap()
        .then(&movie_map(&b, fp()).unwrap());
    assert_eq!(ab.map, movie_map(&a.then(&b).unwrap(), fp()).unwrap().map);

    let (r, n, t) = (
        load("reidemeister"),
        load("trefoil_neck"),
        load("trefoil_band"),
    );
    let left = r.then(&n).unwrap().then(&t).unwrap();
    let right = r.then(&n.then(&t).unwrap()).unwrap();
    assert_eq!(
        movie_map(&left, fp()).unwrap().map,
        movie_map(&right, fp()).unwrap().map
    );
}

#[test]
fn degree_matches_statistics() {
    for name in CORPUS {
        let m = load(name);
        let s = m.stats();
        let want = (s.births + s.deaths) as i64 - s.saddles as i64 - 2 * s.dots as i64;
        assert_eq!(m.j_degree(), want, "{name}");
        assert_eq!(movie_map(&m, fp()).unwrap().j_degree, want, "{name}");
        assert_eq!(m.mirror().mirror(), m, "{name}");
        assert_eq!(Movie::from_json(m.to_json()).unwrap(), m, "{name}");
    }
}

/// Moves applicable to `d`, grouped by kind, with fresh labels above the
/// current maximum.
fn candidates(d: &Diagram) -> Vec<Vec<Move>> {
    let fresh = d.max_label() + 1;
    let arcs = d.arcs();
    let mut groups: Vec<Vec<Move>> = vec![vec![Move::Birth { arc: fresh }]];
    groups.push(arcs.iter().map(|&a| Move::Death { arc: a }).collect());
    groups.push(arcs.iter().map(|&a| Move::Dot { arc: a }).collect());
    groups.push(
        arcs.iter()
            .map(|&a| {
                Move::Saddle(Band::Pinch {
                    arc: a,
                    loop_arc: fresh,
                })
            })
            .collect(),
    );
    let pairs = || arcs.iter().flat_map(|&a| arcs.iter().map(move |&b| (a, b)));
    groups.push(
        pairs()
            .map(|(k, a)| {
                Move::Saddle(Band::Absorb {
                    loop_arc: k,
                    arc: a,
                })
            })
            .collect(),
    );
    groups.push(
        pairs()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| Move::Saddle(Band::Swap { arcs: [a, b] }))
            .collect(),
    );
    if d.crossing_count() < 4 {
        groups.push(
            arcs.iter()
                .flat_map(|&arc| {
                    [(1, true), (-1, false), (1, false), (-1, true)].map(|(sign, under_first)| {
                        Move::R1Plus(R1Spec {
                            arc,
                            sign,
                            under_first,
                            loop_arc: fresh,
                            out_arc: fresh + 1,
                            position: None,
                        })
                    })
                })
                .collect(),
        );
    }
    let n = d.crossing_count();
    groups.push(
        (0..n)
            .flat_map(|x| {
                d.crossings()[x].map(|k| Move::R1Minus {
                    crossing: x,
                    loop_arc: k,
                })
            })
            .collect(),
    );
    groups.push(
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| Move::R2Minus { crossings: [x, y] }))
            .collect(),
    );
    groups
        .into_iter()
        .map(|g| {
            g.into_iter()
                .filter(|m| m.apply(d).is_ok_and(|e| e.basepoint() == d.basepoint()))
                .collect::<Vec<_>>()
        })
        .filter(|g| !g.is_empty())
        .collect()
}

/// A random movie that returns to a knot; `None` if the walk ends on a link.
fn random_movie(start: Diagram, choices: &[usize]) -> Option<Movie> {
    let mut frames = vec![start];
    let mut moves = Vec::new();
    for &c in choices {
        let d = frames.last().unwrap();
        let groups = candidates(d);
        let group = &groups[c % groups.len()];
        let mv = group[(c / groups.len()) % group.len()].clone();
        frames.push(mv.apply(d).unwrap());
        moves.push(mv);
    }
    frames
        .last()
        .unwrap()
        .is_knot()
        .then(|| Movie::new(frames, moves).unwrap())
}

/// A connected genus-0 movie: Reidemeister moves, circles born and absorbed,
/// and small circles pinched off and capped.
fn genus_zero_movie(start: Diagram, choices: &[usize]) -> Movie {
    let mut frames = vec![start];
    let mut moves = Vec::new();
    let mut push = |frames: &mut Vec<Diagram>, mv: Move| {
        let next = mv.apply(frames.last().unwrap()).unwrap();
        frames.push(next);
        moves.push(mv);
    };
    for &c in choices {
        let d = frames.last().unwrap().clone();
        let fresh = d.max_label() + 1;
        let arcs = d.arcs();
        let arc = arcs[(c / 3) % arcs.len()];
        match c % 3 {
            0 => {
                let groups = candidates(&d);
                let r: Vec<Move> = groups
                    .into_iter()
                    .flatten()
                    .filter(|m| m.j_degree() == 0 && !matches!(m, Move::Dot { .. }))
                    .collect();
                if !r.is_empty() {
                    push(&mut frames, r[(c / 3) % r.len()].clone());
                }
            }
            1 => {
                push(&mut frames, Move::Birth { arc: fresh });
                push(
                    &mut frames,
                    Move::Saddle(Band::Absorb {
                        loop_arc: fresh,
                        arc,
                    }),
                );
            }
            _ => {
                push(
                    &mut frames,
                    Move::Saddle(Band::Pinch {
                        arc,
                        loop_arc: fresh,
                    }),
                );
                push(&mut frames, Move::Death { arc: fresh });
            }
        }
    }
    Movie::new(frames, moves).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn random_movies(trefoil in any::<bool>(), choices in prop::collection::vec(0usize..1000, 0..6)) {
        let start = if trefoil {
            kht_core::diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()
        } else {
            Diagram::unknot()
        };
        if let Some(m) = random_movie(start, &choices) {
            let mc = MovieComplexes::new(&m, fp()).unwrap();
            for f in &mc.maps {
                prop_assert!(f.check().is_ok());
            }
            let s = m.stats();
            let want = (s.births + s.deaths) as i64 - s.saddles as i64 - 2 * s.dots as i64;
            prop_assert_eq!(mc.composite().j_degree, want);
            prop_assert_eq!(m.mirror().mirror(), m.clone());
            prop_assert_eq!(Movie::from_json(m.to_json()).unwrap(), m.clone());
        }
    }

    #[test]
    fn genus_zero_doubles(trefoil in any::<bool>(), choices in prop::collection::vec(0usize..1000, 1..5)) {
        let start = if trefoil {
            kht_core::diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()
        } else {
            Diagram::unknot()
        };
        let m = genus_zero_movie(start, &choices);
        prop_assert_eq!(m.stats().genus, Some(0));
        let r = verify_theorem1(&m, fp()).unwrap();
        prop_assert!(r.pass, "{:?}: {}", m.moves(), r.details);
        prop_assert!(matches!(r.unit_scalar, Some(1) | Some(-1)));
    }
}

/// Dots on adjacent arcs of a knot act by opposite signs, so a tube whose feet
/// are separated by an odd number of crossings induces zero, and the doubled
/// surface cannot equal a nonzero multiple of the identity.
#[test]
fn tube_across_crossings_vanishes() {
    let t = kht_core::diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
    let h = Homology::new(&ChainComplex::new(&t, fp()).unwrap()).unwrap();
    let dot = |a: u32| {
        let m = Movie::new(vec![t.clone(), t.clone()], vec![Move::Dot { arc: a }]).unwrap();
        induced_homology_map(&movie_map(&m, fp()).unwrap(), &h, &h).unwrap()
    };
    assert_eq!(
        dot(1).unit_ratio(&dot(2), fp()).map(|c| fp().signed(c)),
        Some(-1)
    );
    assert_eq!(dot(1).unit_ratio(&dot(3), fp()), Some(1));

    // pinch at arc 3, absorb into arc 4: the feet are one crossing apart
    let m = load("trefoil_crossing_tube");
    assert!(induced_homology_map(&movie_map(&m, fp()).unwrap(), &h, &h)
        .unwrap()
        .is_zero());
    let r = verify_theorem1(&m, fp()).unwrap();
    assert!(!r.pass);
    // the local relation still holds
    assert!(verify_neck_cutting(&m, 0, fp()).unwrap().pass);
}
