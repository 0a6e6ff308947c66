//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria whose literal instance cannot exist are reported as FAIL with the
//! reason and the substitute that was checked instead; they do not fail the
//! test binary. Any other FAIL does.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use kht_core::algebra::{poly_gcd, snf, Fp, Poly, PolyMatrix};
use kht_core::cobordism::{
    corollary_bounds, elementary_map, induced_homology_map, parse_movie, verify_neck_cutting,
    verify_reverse_saddles, verify_theorem1, HomologyMap, Move, Movie, MovieComplexes,
};
use kht_core::diagram::{braid_closure, Diagram, DiagramJson};
use kht_core::khovanov::{
    build_complex, check_homogeneous, homology, specialize_dimension, ChainComplex, Homology,
    HomologyResult,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use serde::Deserialize;

/// Outcome of one criterion: `Ok(details)` passes; `Err((details, expected))`
/// fails, where `expected` marks a failure known to be unattainable.
type Outcome = Result<String, (String, bool)>;

fn fp() -> Fp {
    Fp::default()
}

fn root(rel: &str) -> String {
    format!("{}/../../{rel}", env!("CARGO_MANIFEST_DIR"))
}

#[derive(Deserialize)]
struct Table {
    knots: Vec<Entry>,
}

#[derive(Deserialize)]
struct Entry {
    name: String,
    pd: Vec<[u32; 4]>,
}

fn table() -> Vec<(String, Diagram)> {
    let t: Table =
        serde_json::from_str(&std::fs::read_to_string(root("corpus/knots.json")).unwrap()).unwrap();
    t.knots
        .into_iter()
        .map(|e| {
            let d = DiagramJson {
                pd: e.pd,
                basepoint: None,
                loops: vec![],
                signs: None,
            }
            .into_diagram()
            .unwrap();
            (e.name, d)
        })
        .collect()
}

fn load(name: &str) -> Movie {
    let text = std::fs::read_to_string(root(&format!("corpus/movies/{name}.json"))).unwrap();
    parse_movie(&text).unwrap()
}

fn fail(msg: impl Into<String>) -> Outcome {
    Err((msg.into(), false))
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return fail(format!($($msg)+));
        }
    };
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail(e.to_string()),
        }
    };
}

fn d_squared_and_degree(c: &ChainComplex) -> bool {
    let d = c.differential();
    d.compose(d, c.fp()).is_zero()
        && check_homogeneous(d, c.generators(), c.generators(), 1, 0).is_ok()
}

fn random_braids(n: usize) -> Vec<Diagram> {
    let strategy = (
        2usize..=4,
        prop::collection::vec(prop_oneof![1i32..=3, -3i32..=-1], 1..=8),
    );
    let mut runner = TestRunner::deterministic();
    let mut out = Vec::new();
    while out.len() < n {
        let (strands, word) = strategy.new_tree(&mut runner).unwrap().current();
        let word: Vec<i32> = word
            .into_iter()
            .filter(|g| (g.unsigned_abs() as usize) < strands)
            .collect();
        if let Ok(d) = braid_closure(strands, &word) {
            out.push(d);
        }
    }
    out
}

fn c1_structure() -> Outcome {
    let mut n = 0;
    for (name, d) in table() {
        let c = tri!(ChainComplex::new(&d, fp()));
        ensure!(
            d_squared_and_degree(&c),
            "{name}: d∘d ≠ 0 or not homogeneous"
        );
        n += 1;
    }
    for d in random_braids(50) {
        let c = tri!(ChainComplex::new(&d, fp()));
        ensure!(d_squared_and_degree(&c), "random diagram {d:?}");
        n += 1;
    }
    Ok(format!("{n} complexes: d∘d = 0, d of bidegree (1, 0)"))
}

fn c2_unknot() -> Outcome {
    let h = tri!(homology(&tri!(build_complex(&Diagram::unknot(), fp()))));
    let at = |i, j| h.bigrades.iter().find(|e| e.i == i && e.j == j);
    ensure!(h.free_rank_total == 1, "free rank {}", h.free_rank_total);
    ensure!(
        at(0, 1).is_some_and(|e| e.free_rank == 1 && e.torsion_exponents.is_empty()),
        "bigrades {:?}",
        h.bigrades
    );
    ensure!(h.torsion_exponents_total.is_empty(), "torsion present");
    ensure!(h.xo == 0, "xo(U) = {}", h.xo);
    Ok("free of rank 1 at (0, 1), xo(U) = 0".into())
}

fn c3_lee() -> Outcome {
    let knots = table();
    for (name, d) in &knots {
        let c = tri!(build_complex(d, fp()));
        let dim: usize = tri!(specialize_dimension(&c, 1)).values().sum();
        ensure!(dim == 2, "{name}: dimension {dim}");
    }
    Ok(format!("dimension 2 at t = 1 on all {} knots", knots.len()))
}

/// A summand F[x]/(x^k) in degree i gives min(k, 2) dimensions at t = 0 in
/// degrees i and i − 1; a free summand gives 2 in degree i.
fn reconciled(h: &HomologyResult) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for e in &h.degrees {
        let tors: usize = e.torsion_exponents.iter().map(|&k| k.min(2) as usize).sum();
        *out.entry(e.i).or_insert(0) += 2 * e.free_rank + tors;
        *out.entry(e.i - 1).or_insert(0) += tors;
    }
    out.retain(|_, v| *v > 0);
    out
}

fn reconcile(d: &Diagram) -> Result<HomologyResult, String> {
    let c = build_complex(d, fp()).map_err(|e| e.to_string())?;
    let h = homology(&c).map_err(|e| e.to_string())?;
    let mut kh = specialize_dimension(&c, 0).map_err(|e| e.to_string())?;
    kh.retain(|_, v| *v > 0);
    let want = reconciled(&h);
    if kh != want {
        return Err(format!("t = 0 dims {kh:?} vs module {want:?}"));
    }
    Ok(h)
}

fn c4_reconciliation() -> Outcome {
    let knots = table();
    for (name, d) in &knots {
        if let Err(e) = reconcile(d) {
            return fail(format!("{name}: {e}"));
        }
    }
    Ok(format!(
        "t = 0 dimensions agree on all {} knots",
        knots.len()
    ))
}

fn c5_torsion_orders() -> Outcome {
    let knots = table();
    let mut got = Vec::new();
    for want in ["3_1", "4_1"] {
        let (_, d) = knots.iter().find(|(n, _)| n == want).unwrap();
        let h = match reconcile(d) {
            Ok(h) => h,
            Err(e) => return fail(format!("{want}: {e}")),
        };
        ensure!(h.xo == 1, "xo({want}) = {}", h.xo);
        got.push(format!("xo({want}) = {}", h.xo));
    }
    Ok(format!("{}, both reconciled at t = 0", got.join(", ")))
}

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

fn c6_elementary_maps() -> Outcome {
    let (mut maps, mut rmoves) = (0, 0);
    for name in CORPUS {
        let m = load(name);
        let mc = tri!(MovieComplexes::new(&m, fp()));
        for f in &mc.maps {
            tri!(f.check());
            maps += 1;
        }
        for (k, mv) in m.moves().iter().enumerate() {
            if mv.j_degree() != 0 || matches!(mv, Move::Dot { .. }) {
                continue;
            }
            let (src, tgt) = (&mc.complexes[k], &mc.complexes[k + 1]);
            let back = tri!(mv.reverse(&m.frames()[k]));
            let g = tri!(elementary_map(&back, tgt, src));
            let f = &mc.maps[k];
            let (hs, ht) = (tri!(Homology::new(src)), tri!(Homology::new(tgt)));
            let gf = tri!(induced_homology_map(&f.then(&g), &hs, &hs));
            let fg = tri!(induced_homology_map(&g.then(f), &ht, &ht));
            ensure!(
                gf.unit_ratio(&HomologyMap::identity(&hs), fp()).is_some()
                    && fg.unit_ratio(&HomologyMap::identity(&ht), fp()).is_some(),
                "{name} move {k}: not inverse to its reverse on homology"
            );
            rmoves += 1;
        }
    }
    Ok(format!(
        "{maps} elementary maps commute with d; {rmoves} R-moves invert on homology"
    ))
}

fn theorem1(name: &str) -> Result<i64, String> {
    let r = verify_theorem1(&load(name), fp()).map_err(|e| e.to_string())?;
    match (r.pass, r.unit_scalar) {
        (true, Some(u @ (1 | -1))) => Ok(u),
        _ => Err(format!("{name}: {}", r.details)),
    }
}

fn c7_theorem1() -> Outcome {
    let mut parts = Vec::new();
    for (tag, name, triple) in [
        ("a", "ribbon", (1, 1, 0)),
        ("b", "tube", (0, 2, 0)),
        ("c", "genus0", (1, 2, 1)),
    ] {
        let start = Instant::now();
        let s = load(name).stats();
        ensure!(
            (s.births, s.saddles, s.deaths) == triple,
            "({tag}) {name}: statistics"
        );
        let u = match theorem1(name) {
            Ok(u) => u,
            Err(e) => return fail(format!("({tag}) {e}")),
        };
        ensure!(start.elapsed().as_secs() < 10, "({tag}) {name}: too slow");
        parts.push(format!("({tag}) {name} scalar {u}"));
    }
    // A single band on a knot yields a two-component link, and one band plus a
    // death ending at the unknot would make the trefoil slice.
    let s = load("trefoil_band").stats();
    ensure!((s.births, s.saddles, s.deaths) == (0, 1, 1), "trefoil_band");
    let band = theorem1("trefoil_band");
    let witness = theorem1("trefoil_unknotting");
    if let Err(e) = band.as_ref().and(witness.as_ref()) {
        return fail(format!("(d) substitute: {e}"));
    }
    parts.push(format!(
        "(d) unattainable: no (0,1,1) movie takes the trefoil to the unknot; \
         substitutes trefoil_band (0,1,1, trefoil→trefoil) scalar {} and \
         trefoil_unknotting (2 bands) scalar {} pass",
        band.unwrap(),
        witness.unwrap()
    ));
    Err((parts.join("; "), true))
}

fn c8_local_relations() -> Outcome {
    let mut n = 0;
    for (name, i) in [
        ("tube", 0),
        ("trefoil_neck", 0),
        ("trefoil_swap_neck", 0),
        ("trefoil_crossing_tube", 0),
        ("neck_distinct", 1),
    ] {
        let r = tri!(verify_neck_cutting(&load(name), i, fp()));
        ensure!(r.pass, "neck {name}: {}", r.details);
        n += 1;
    }
    for (name, i) in [
        ("reverse_saddles", 1),
        ("tube", 0),
        ("trefoil_neck", 0),
        ("trefoil_swap_neck", 0),
    ] {
        let r = tri!(verify_reverse_saddles(&load(name), i, fp()));
        ensure!(r.pass, "reverse-saddles {name}: {}", r.details);
        n += 1;
    }
    Ok(format!("{n} instances of neck cutting and reverse saddles"))
}

fn c9_corollaries() -> Outcome {
    let m = load("trefoil_band");
    let c = tri!(corollary_bounds(m.source(), Some(&m), fp()));
    let Some(b) = c.movie else {
        return fail("no movie bounds");
    };
    ensure!(b.genus_bound_holds == Some(true), "inequality fails: {b:?}");
    let inequality = format!(
        "{} ≤ max{{{}, {}}} + 2·{} holds",
        b.xo_source,
        b.deaths,
        b.xo_target,
        b.genus.unwrap_or(0)
    );
    let w = load("trefoil_unknotting");
    let cw = tri!(corollary_bounds(w.source(), Some(&w), fp()));
    let witness = cw.movie.and_then(|b| b.band_witness);
    ensure!(
        cw.band_unlinking_lower_bound >= 1 && witness.is_some(),
        "ul_b bound {} witness {witness:?}",
        cw.band_unlinking_lower_bound
    );
    Err((
        format!(
            "{inequality}; ul_b(3_1) ≥ {} reported; unattainable: a 1-band witness \
             would make the trefoil slice (and its xo_target is 1, not 0); best witness \
             uses {} bands",
            cw.band_unlinking_lower_bound,
            witness.unwrap()
        ),
        true,
    ))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn snf_ok(a: &PolyMatrix, fp: Fp) -> bool {
    let s = snf(a, fp);
    let diag = s.diagonal();
    let off_diagonal_zero = (0..s.d.rows())
        .flat_map(|r| (0..s.d.cols()).map(move |c| (r, c)))
        .all(|(r, c)| r == c || s.d.get(r, c).is_zero());
    let mut prod = Poly::one();
    let divisors_ok = (1..=a.rows().min(a.cols())).all(|k| {
        prod = match diag.get(k - 1) {
            Some(f) => prod.mul(f, fp),
            None => Poly::zero(),
        };
        let mut g = Poly::zero();
        for rows in subsets(a.rows(), k) {
            for cols in subsets(a.cols(), k) {
                g = poly_gcd(&g, &a.submatrix(&rows, &cols).det(fp), fp).0;
            }
        }
        g == prod
    });
    s.u.mul(a, fp).mul(&s.v, fp) == s.d
        && s.u.det(fp).is_unit()
        && s.v.det(fp).is_unit()
        && off_diagonal_zero
        && diag.windows(2).all(|w| w[0].divides(&w[1], fp))
        && divisors_ok
}

fn c10_snf() -> Outcome {
    let fp = Fp::new(7).unwrap();
    let strategy = (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec(0u32..7, 0..4).prop_map(Poly::from_coeffs),
            r * c,
        )
        .prop_map(move |v| PolyMatrix::from_rows(v.chunks(c).map(<[Poly]>::to_vec).collect()))
    });
    let mut runner = TestRunner::deterministic();
    for k in 0..500 {
        let a = strategy.new_tree(&mut runner).unwrap().current();
        ensure!(snf_ok(&a, fp), "matrix {k}: {a:?}");
    }
    Ok("500 random matrices over F_7[x], up to 4×4".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("structural soundness", c1_structure),
        ("unknot baseline", c2_unknot),
        ("Lee specialization", c3_lee),
        ("two-pipeline reconciliation", c4_reconciliation),
        ("torsion orders", c5_torsion_orders),
        ("elementary-map contracts", c6_elementary_maps),
        ("doubled-movie identity", c7_theorem1),
        ("local relations", c8_local_relations),
        ("corollary instances", c9_corollaries),
        ("algebra kernel", c10_snf),
    ];
    let mut unexpected = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(d) => println!("criterion {:>2} PASS {name} ({ms} ms): {d}", k + 1),
            Err((d, expected)) => {
                println!("criterion {:>2} FAIL {name} ({ms} ms): {d}", k + 1);
                unexpected += usize::from(!expected);
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
