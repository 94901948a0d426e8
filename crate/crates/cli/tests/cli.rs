use std::io::Write;
use std::process::{Command, Output, Stdio};

use pcm_core::classifier::classify_fast;
use pcm_core::generators::GeneratorSpec;
use serde_json::Value;

fn pcm(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pcm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn pcm");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = pcm(&full, "");
    assert!(o.status.success(), "{}", stderr(&o));
    stdout(&o)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn sphere_piped_into_both_modes() {
    let o = pcm(&["classify", "--mode", "both", "--json"], &gen(&["sphere", "2"]));
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let c = &r["classification"];
    assert_eq!(c["is_surface"], true);
    assert_eq!(c["rank"], 2);
    assert_eq!(c["path"], "both");
    assert_eq!(r["instance"]["faces_per_rank"], serde_json::json!([4, 6, 4]));
    assert_eq!(r["exit_status"], 0);
    assert_eq!(r["command"], serde_json::json!(["classify", "--mode", "both", "--json"]));
}

#[test]
fn pinched_sphere_is_pseudomanifold_not_normal() {
    let o = pcm(&["classify", "--json"], &gen(&["pinched-sphere"]));
    let c = &json(&o)["classification"];
    assert_eq!(c["is_pseudomanifold"], true);
    assert_eq!(c["is_normal_pseudomanifold"], false);
    assert_eq!(c["is_surface"], false);
    assert_eq!(c["is_pcm"], false);
}

#[test]
fn empty_facet_file() {
    let o = pcm(&["classify", "--json", "--format", "facets"], "# nothing here\n");
    assert_eq!(o.status.code(), Some(0));
    let c = &json(&o)["classification"];
    assert_eq!(c["rank"], -1);
    assert_eq!(c["is_surface"], true);
    assert_eq!(c["is_pcm"], true);
}

#[test]
fn json_schema_is_stable() {
    let o = pcm(&["classify", "--json"], &gen(&["disk", "5"]));
    let r = json(&o);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["classification", "command", "exit_status", "instance", "timings"]);
    let c: Vec<&str> = r["classification"].as_object().unwrap().keys().map(|k| k.as_str()).collect();
    for k in [
        "rank",
        "is_surface",
        "is_pcm",
        "is_smooth_pcm",
        "is_pseudomanifold",
        "is_normal_pseudomanifold",
        "border_empty",
        "border_face_count",
        "path",
        "timings",
    ] {
        assert!(c.contains(&k), "missing {k}");
    }
}

#[test]
fn round_trip_through_a_file_matches_in_process() {
    let dir = tempfile::tempdir().unwrap();
    for (name, params) in [("annulus", vec!["5"]), ("pinched-box", vec!["4"]), ("random-pure", vec!["2", "8", "12", "3"])] {
        let file = dir.path().join(format!("{name}.facets"));
        let mut args = vec![name];
        args.extend(params.iter().copied());
        args.extend(["-o", file.to_str().unwrap()]);
        let mut full = vec!["gen"];
        full.extend(args);
        assert!(pcm(&full, "").status.success());
        let o = pcm(&["classify", "--json", file.to_str().unwrap()], "");
        let c = &json(&o)["classification"];
        let nums: Vec<u64> = params.iter().map(|p| p.parse().unwrap()).collect();
        let k = GeneratorSpec::parse(name, &nums).unwrap().generate().unwrap().into_complex().unwrap();
        let expected = serde_json::to_value(classify_fast(&k)).unwrap();
        for key in ["rank", "is_surface", "is_pcm", "is_smooth_pcm", "is_normal_pseudomanifold", "border_face_count"] {
            assert_eq!(c[key], expected[key], "{name} {key}");
        }
    }
}

#[test]
fn hasse_input_and_khalimsky_border_golden() {
    let text = gen(&["khalimsky", "3", "3"]);
    let o = pcm(&["classify", "--json"], &text);
    let c = &json(&o)["classification"];
    assert_eq!(c["is_pcm"], true);
    assert_eq!(c["border_face_count"], 24);
    let o = pcm(&["border"], &text);
    assert_eq!(stdout(&o), include_str!("data/khalimsky_3_3_border.hasse"));
    let o = pcm(&["classify", "--mode", "fast"], &text);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("simplicial"));
}

#[test]
fn border_report_on_annulus() {
    let o = pcm(&["border"], &gen(&["annulus", "6"]));
    let out = stdout(&o);
    assert!(out.contains("# components: 2"));
    assert_eq!(out.matches("1-surface").count(), 2);
    assert!(out.contains("rank 1"));
}

#[test]
fn single_recognizers() {
    let sphere = gen(&["sphere", "2"]);
    let bx = gen(&["pinched-box", "6"]);
    let ps = gen(&["pinched-sphere"]);
    let cases = [
        (&sphere, "--surface", "surface: true"),
        (&sphere, "--pcm", "pcm: false"),
        (&bx, "--pcm", "pcm: true"),
        (&bx, "--smooth", "smooth-pcm: false"),
        (&bx, "--normal", "normal-pseudomanifold: true"),
        (&ps, "--pseudomanifold", "pseudomanifold: true"),
        (&ps, "--normal", "normal-pseudomanifold: false"),
    ];
    for (input, flag, want) in cases {
        let o = pcm(&["check", flag], input);
        assert_eq!(stdout(&o).trim(), want, "{flag}");
    }
    let o = pcm(&["check", "--surface", "--pcm"], &sphere);
    assert_eq!(o.status.code(), Some(1));
    let o = pcm(&["check", "--json", "--smooth"], &gen(&["annulus", "4"]));
    assert_eq!(json(&o)["check"]["holds"], true);
}

#[test]
fn errors_and_exit_codes() {
    let o = pcm(&["classify", "--frobnicate"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Usage"));
    let o = pcm(&["classify"], "1 2 3\n4 five\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = pcm(&["classify", "--format", "hasse"], "f 0 :\nf 2 :\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"));
    let o = pcm(&["gen", "annulus", "3"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("4 ≤ m"));
    let o = pcm(&["gen", "khalimsky", "2", "2", "--format", "facets"], "");
    assert_eq!(o.status.code(), Some(1));
    let o = pcm(&["classify", "/nonexistent/file"], "");
    assert_eq!(o.status.code(), Some(1));
    let o = pcm(&["--help"], "");
    assert_eq!(o.status.code(), Some(0));
    for cmd in ["classify", "border", "check", "gen", "bench"] {
        assert!(stdout(&o).contains(cmd));
    }
}

#[test]
fn deterministic_reports() {
    let text = gen(&["random-pure", "3", "10", "20", "11"]);
    assert_eq!(text, gen(&["random-pure", "3", "10", "20", "11"]));
    let strip = |o: Output| {
        let mut v = json(&o);
        v["classification"]["timings"] = Value::Null;
        v["timings"] = Value::Null;
        v
    };
    let a = strip(pcm(&["classify", "--json", "--mode", "both"], &text));
    let b = strip(pcm(&["classify", "--json", "--mode", "both"], &text));
    assert_eq!(a, b);
}

#[test]
fn bench_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = pcm(&["bench", "--max-n", "3", "--random", "4", "--dump-dir", dir.path().to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("instance"));
    assert!(out.contains("speedup"));
    assert!(out.contains("sphere 3"));
    assert!(out.contains("0 disagreements"));
}

#[test]
fn memo_switch_does_not_change_output() {
    let text = gen(&["pinched-box", "4"]);
    let run = |memo_off: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_pcm"));
        cmd.args(["classify", "--mode", "recursive"]).stdin(Stdio::piped()).stdout(Stdio::piped());
        if memo_off {
            cmd.env("PCM_NO_MEMO", "1");
        }
        let mut child = cmd.spawn().unwrap();
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
        let out = String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap();
        out.lines().filter(|l| !l.starts_with("time-ms")).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(run(false), run(true));
}
