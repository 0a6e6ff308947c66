//! End-to-end runs of the `kht` binary: reports, exit statuses, determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn root(rel: &str) -> String {
    format!("{}/../../{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn kht(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kht"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn movie(name: &str) -> String {
    root(&format!("corpus/movies/{name}.json"))
}

#[test]
fn unknot_from_stdin() {
    let o = kht(&["homology", "-"], Some("O(1)"));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["pass"], true);
    assert_eq!(r["results"]["xo"], 0);
    assert_eq!(r["results"]["homology"]["free_rank_total"], 1);
}

#[test]
fn trefoil_homology_and_bound() {
    let o = kht(&["homology", "-"], Some("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["results"]["xo"], 1);
    assert_eq!(r["results"]["band_unlinking_bound"], "ul_b(K) ≥ xo(K) = 1");
    assert_eq!(r["config"]["prime"], 32003);

    let t = kht(
        &["homology", "-", "--format", "text"],
        Some("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"),
    );
    let text = String::from_utf8(t.stdout).unwrap();
    assert!(text.contains("xo: 1"), "{text}");
    assert!(text.contains("ul_b(K) ≥ xo(K) = 1"), "{text}");
}

#[test]
fn input_errors_exit_2() {
    let o = kht(&["homology", "-"], Some("X(1,2,3"));
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "input");

    let o = kht(&["homology", "-", "--prime", "2"], Some("O(1)"));
    assert_eq!(o.status.code(), Some(2));

    let o = kht(&["homology", "-", "--basepoint", "99"], Some("O(1)"));
    assert_eq!(o.status.code(), Some(2));

    let o = kht(&["homology", "/nonexistent/knot.pd"], None);
    assert_eq!(o.status.code(), Some(2));

    let o = kht(&["movie", &movie("bad_frame")], None);
    assert_eq!(o.status.code(), Some(2));
    let msg = json(&o)["error"]["message"].as_str().unwrap().to_string();
    assert!(msg.contains("move 0"), "{msg}");

    let o = kht(&["movie", &movie("ribbon"), "--checks", "bogus"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn movie_checks() {
    let o = kht(&["movie", &movie("ribbon")], None);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let c = &r["results"]["checks"][0];
    assert_eq!(
        (c["check"].as_str(), c["status"].as_str()),
        (Some("theorem1"), Some("PASS"))
    );
    assert_eq!(c["unit_scalar"], 1);

    let o = kht(
        &[
            "movie",
            &movie("tube"),
            "--checks",
            "neck,reverse-saddles,ribbon",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let statuses: Vec<(String, String)> = json(&o)["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["check"].as_str().unwrap().into(),
                c["status"].as_str().unwrap().into(),
            )
        })
        .collect();
    assert!(statuses.contains(&("neck".into(), "PASS".into())));
    assert!(statuses.contains(&("reverse-saddles".into(), "PASS".into())));
    assert!(statuses.contains(&("ribbon".into(), "SKIP".into())));
}

#[test]
fn failing_check_exits_1() {
    let o = kht(
        &[
            "movie",
            &movie("trefoil_crossing_tube"),
            "--checks",
            "theorem1,neck",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["pass"], false);
    assert_eq!(r["results"]["checks"][0]["status"], "FAIL");
    assert_eq!(r["results"]["checks"][1]["status"], "PASS");
}

#[test]
fn batch_over_table() {
    let o = kht(&["batch", &root("corpus/knots.json")], None);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o)["results"].as_array().unwrap().clone();
    assert!(rows.len() >= 30);
    assert_eq!(rows[0]["name"], "3_1");
    assert!(rows
        .iter()
        .all(|r| r["xo"].as_u64().is_some_and(|x| x >= 1)));

    let o = kht(&["batch", "-"], Some("[]"));
    assert_eq!(o.status.code(), Some(0));

    let table = r#"[{"name":"a","pd":"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"},
                    {"name":"b","pd":"X(1,2"},
                    {"name":"c","pd":[[1,1,2,2]]}]"#;
    let o = kht(&["batch", "-"], Some(table));
    assert_eq!(o.status.code(), Some(2));
    let rows = json(&o)["results"].as_array().unwrap().clone();
    assert_eq!(rows[0]["xo"], 1);
    assert_eq!(rows[1]["error"]["kind"], "input");
    assert_eq!(rows[2]["name"], "c");
}

#[test]
fn output_is_deterministic_and_timing_is_opt_in() {
    let args = ["batch", &root("corpus/knots.json")];
    let (a, b) = (kht(&args, None), kht(&args, None));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("timing_ms").is_none());

    let o = kht(&["homology", "-", "--timing"], Some("O(1)"));
    assert!(json(&o)["timing_ms"].is_u64());
}
