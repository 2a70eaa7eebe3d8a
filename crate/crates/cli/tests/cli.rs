use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hypflute::flute::{select_generators, Enumeration, GroupSpec, DEFAULT_N_MAX};
use tempfile::TempDir;

fn hypflute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypflute"))
        .args(args)
        .env_remove("HYPFLUTE_TOL")
        .output()
        .expect("run hypflute")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn construct(dir: &TempDir, count: usize) -> PathBuf {
    let path = dir.path().join(format!("spec{count}.json"));
    let o = hypflute(&["construct", "-M", &count.to_string(), "--out", p(&path)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn construct_single_generator() {
    let dir = TempDir::new().unwrap();
    let path = construct(&dir, 1);
    let spec = GroupSpec::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(spec.len(), 1);
    assert_eq!(spec.generators[0].n(), 1);
    assert_eq!(spec.generators[0].m, 0);
}

#[test]
fn construct_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = construct(&dir, 12);
    let b = dir.path().join("again.json");
    assert!(hypflute(&["construct", "-M", "12", "--out", p(&b)]).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn construct_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    assert_eq!(hypflute(&["construct", "-M", "0", "--out", p(&out)]).status.code(), Some(3));
    let enumeration = dir.path().join("e.json");
    std::fs::write(&enumeration, r#"["1/2", "3"]"#).unwrap();
    assert_eq!(
        hypflute(&["construct", "-M", "2", "--enumeration", p(&enumeration), "--out", p(&out)]).status.code(),
        Some(3)
    );
    assert_eq!(hypflute(&["construct", "-M", "5", "--n-max", "5", "--out", p(&out)]).status.code(), Some(2));
    assert_eq!(hypflute(&["construct"]).status.code(), Some(3));
    assert_eq!(hypflute(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let spec = construct(&dir, 6);
    let report = dir.path().join("r.json");
    let o = hypflute(&["verify", "--spec", p(&spec), "--samples", "20", "--word-len", "3", "--out", p(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: PASS"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["verdict"], "PASS");
    assert_eq!(json["command"], "verify");
    assert!(json.get("generated_at").is_none());
    assert_eq!(json["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_fails_on_corrupted_spec() {
    let dir = TempDir::new().unwrap();
    let good = select_generators(&Enumeration::default(), 6).unwrap();
    let mut indices = good.indices();
    indices[4] = indices[3];
    let bad = GroupSpec::from_parts(Enumeration::default(), &indices, DEFAULT_N_MAX).unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, bad.to_json()).unwrap();
    let o = hypflute(&["verify", "--spec", p(&path), "--samples", "10", "--word-len", "2"]);
    assert_eq!(o.status.code(), Some(5));
    let text = stdout(&o);
    assert!(text.contains("ping-pong: FAIL") && text.contains("verdict: FAIL"), "{text}");
}

#[test]
fn verify_input_errors() {
    let dir = TempDir::new().unwrap();
    let spec = construct(&dir, 2);
    assert_eq!(hypflute(&["verify", "--spec", p(&spec), "--word-len", "0"]).status.code(), Some(3));
    assert_eq!(hypflute(&["verify", "--spec", p(&spec), "--samples", "0"]).status.code(), Some(3));
    let malformed = dir.path().join("m.json");
    std::fs::write(&malformed, "{\"version\": 7}").unwrap();
    assert_eq!(hypflute(&["verify", "--spec", p(&malformed)]).status.code(), Some(3));
    let tampered = dir.path().join("t.json");
    let text = std::fs::read_to_string(&spec).unwrap().replacen("\"n\": 1", "\"n\": 2", 1);
    std::fs::write(&tampered, text).unwrap();
    assert_eq!(hypflute(&["verify", "--spec", p(&tampered)]).status.code(), Some(3));
    assert_eq!(hypflute(&["verify", "--spec", p(&dir.path().join("missing.json"))]).status.code(), Some(3));
}

#[test]
fn tolerance_override() {
    let dir = TempDir::new().unwrap();
    let spec = construct(&dir, 3);
    let report = dir.path().join("r.json");
    let o = Command::new(env!("CARGO_BIN_EXE_hypflute"))
        .args(["verify", "--spec", p(&spec), "--samples", "5", "--word-len", "2", "--out", p(&report)])
        .env("HYPFLUTE_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["tolerance"], 1e-6);
    let o = Command::new(env!("CARGO_BIN_EXE_hypflute"))
        .args(["verify", "--spec", p(&spec)])
        .env("HYPFLUTE_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn witness_commands() {
    let dir = TempDir::new().unwrap();
    let spec = construct(&dir, 30);
    assert_eq!(hypflute(&["witness", "--spec", p(&spec), "--q", "1"]).status.code(), Some(3));
    assert_eq!(hypflute(&["witness", "--spec", p(&spec), "--q", "abc"]).status.code(), Some(3));
    let report = dir.path().join("w.json");
    let o = hypflute(&["witness", "--spec", p(&spec), "--q", "2", "--count", "3", "--out", p(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["terms"].as_array().unwrap().len(), 3);
    assert_eq!(json["verdict"], "PASS");
    assert_eq!(hypflute(&["witness", "--spec", p(&spec), "--q", "9", "--count", "3"]).status.code(), Some(4));
}

fn parse_svg(path: &Path) -> String {
    let text = std::fs::read_to_string(path).unwrap();
    roxmltree::Document::parse(&text).expect("well-formed SVG");
    text
}

#[test]
fn plot_bisectors() {
    let dir = TempDir::new().unwrap();
    let spec = construct(&dir, 3);
    let svg = dir.path().join("b.svg");
    let o = hypflute(&["plot", "--spec", p(&spec), "--what", "bisectors", "--svg", p(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    let text = parse_svg(&svg);
    let doc = roxmltree::Document::parse(&text).unwrap();
    let bisectors: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("path") && n.attribute("class") == Some("bisector"))
        .collect();
    assert_eq!(bisectors.len(), 6);
    for m in 0..3 {
        let center = |label: String| -> f64 {
            bisectors
                .iter()
                .find(|n| n.attribute("data-label") == Some(label.as_str()))
                .and_then(|n| n.attribute("data-center"))
                .unwrap()
                .parse()
                .unwrap()
        };
        let (fwd, inv) = (center(format!("g{m}")), center(format!("g{m}^-1")));
        assert!(fwd * inv < 0.0);
    }
}

#[test]
fn plot_other_scenes() {
    let dir = TempDir::new().unwrap();
    let spec = construct(&dir, 5);
    for (what, scale) in [("all", "auto"), ("domain", "linear"), ("axes", "log"), ("ray", "auto")] {
        let svg = dir.path().join(format!("{what}.svg"));
        let o = hypflute(&["plot", "--spec", p(&spec), "--what", what, "--scale", scale, "--svg", p(&svg)]);
        assert_eq!(o.status.code(), Some(0));
        parse_svg(&svg);
    }
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, GroupSpec::empty().to_json()).unwrap();
    let svg = dir.path().join("empty.svg");
    assert_eq!(hypflute(&["plot", "--spec", p(&empty), "--svg", p(&svg)]).status.code(), Some(0));
    assert!(parse_svg(&svg).contains("data-scale=\"linear\""));
    assert_eq!(hypflute(&["plot", "--spec", p(&spec), "--what", "nothing", "--svg", p(&svg)]).status.code(), Some(3));
}

#[test]
fn inj_profile_verdicts() {
    let dir = TempDir::new().unwrap();
    let spec = construct(&dir, 12);
    let report = dir.path().join("i.json");
    let o = hypflute(&["inj", "--spec", p(&spec), "--out", p(&report)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["verdict"], "PASS");
    assert!(json["profile"]["heights"].as_array().unwrap().len() >= 400);
    assert_eq!(hypflute(&["inj", "--spec", p(&spec), "--tmin", "10", "--tmax", "10"]).status.code(), Some(3));
    let o = hypflute(&["inj", "--spec", p(&spec), "--points", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("INCONCLUSIVE"));
}
