use farey_sheaf::continued_fractions::{self as cf, CThetaReport, ConvergentRow};
use farey_sheaf::division_engine::{self as div, BeadObject, DivisionNode, SesVerdict};
use farey_sheaf::sheaf_calculus::{self as sc, DimPair, EndoBound, HomReport, WitnessChain};
use farey_sheaf::{IrrationalNumber, ReducedFraction, ThetaLatticeElement};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farey-sheaf")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn theta(s: &str) -> IrrationalNumber {
    s.parse().unwrap()
}

fn frac(s: &str) -> ReducedFraction {
    s.parse().unwrap()
}

#[test]
fn golden_convergents() {
    let text = ok(&["cf", "convergents", "[1;(1)]", "-n", "6"]);
    let rows: Vec<ConvergentRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows.last().unwrap().beta.to_string(), "13/8");
    assert_eq!(rows, cf::convergents(&theta("[1;(1)]"), 5).unwrap().rows);
}

#[test]
fn chi_and_bottom() {
    let d: DimPair = serde_json::from_str(&ok(&["sheaf", "chi", "0/1", "3/1"])).unwrap();
    assert_eq!((d.dim, d.ht), (3.into(), 1.into()));
    assert_eq!(ok(&["farey", "bottom", "[1;(2)]", "[1;(1)]"]).trim(), "\"3/2\"");
}

#[test]
fn ctheta_matches_library() {
    let got: CThetaReport = serde_json::from_str(&ok(&["cf", "ctheta", "[0;1,2,(1,3)]", "--steps", "12"])).unwrap();
    assert_eq!(got, cf::c_theta(&theta("[0;1,2,(1,3)]"), 12).unwrap());
}

#[test]
fn sheaf_reports_round_trip() {
    let b: EndoBound = serde_json::from_str(&ok(&["sheaf", "bound", "[0;1,2,(1,3)]"])).unwrap();
    assert_eq!(b.possible_dims.len(), 3);

    let x = "-1/1".parse().unwrap();
    let y = "[0;(2)]+".parse().unwrap();
    let h: HomReport = serde_json::from_str(&ok(&["sheaf", "classify", "-1/1", "[0;(2)]+"])).unwrap();
    assert_eq!(h, sc::hom_classify(&x, &y, 8).unwrap());

    let w: WitnessChain = serde_json::from_str(&ok(&["sheaf", "witness", "[0;(2)]", "[1;(1)]", "1/1"])).unwrap();
    assert_eq!(w, sc::witness_image_chain(&theta("[0;(2)]"), &theta("[1;(1)]"), &frac("1/1")).unwrap());
}

#[test]
fn division_round_trip() {
    let t = theta("[1;(1)]");
    let r = frac("2/1");
    let tree: DivisionNode = serde_json::from_str(&ok(&["divide", "tree", "[1;(1)]", "2/1", "--depth", "3"])).unwrap();
    assert_eq!(tree, div::division_tree(&t, &r, 3).unwrap());

    let c = ThetaLatticeElement::new(0, 0, &t);
    let d = ThetaLatticeElement::new(-1, 2, &t);
    let e = ThetaLatticeElement::new(-3, 5, &t);
    let beads: BeadObject = serde_json::from_str(&ok(&["divide", "beads", "[1;(1)]", "2/1", "0,0", "-3,5"])).unwrap();
    assert_eq!(beads, div::beads(&t, &r, &c, &e).unwrap());

    let v: SesVerdict = serde_json::from_str(&ok(&["divide", "ses", "[1;(1)]", "2/1", "0,0", "-3,5", "-1,2"])).unwrap();
    assert!(v.pass);
    assert_eq!(v, div::ses_check(&t, &r, &c, &e, &d).unwrap());
}

#[test]
fn rotated_rank_of_a_sum() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["divide", "rank", "[1;(1)]", "2*1/1[1]", "5/2"])).unwrap();
    assert_eq!((v["m"].as_i64(), v["n"].as_i64()), (Some(0), Some(3)));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["cf", "convergents", "[1;2,3]", "-n", "9"]).status.code(), Some(3));
    let out = run(&["cf", "convergents", "[1;2,3]", "-n", "9"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--budget"));
    assert_eq!(run(&["cf", "convergents", "[1;(0)]"]).status.code(), Some(2));
    assert_eq!(run(&["render", "svg", "hexagon"]).status.code(), Some(2));
    assert_eq!(run(&["divide", "beads", "[1;(1)]", "2/1", "0,0", "7,7"]).status.code(), Some(2));
    assert_eq!(run(&["sheaf", "chi", "0/1", "3/1", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn budget_extends_a_prefix() {
    // A finite prefix stops at its own length unless told otherwise.
    assert!(run(&["cf", "convergents", "[1;2,3]", "-n", "3"]).status.success());
    assert_eq!(run(&["cf", "convergents", "[1;2,3]", "-n", "4"]).status.code(), Some(3));
}

#[test]
fn svg_to_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.svg");
    let cfg = dir.path().join("style.conf");
    std::fs::write(&cfg, "# style\nstroke = #123456\n").unwrap();
    let a = ok(&["render", "svg", "diagram", "[0;(2)]", "1/0", "--depth", "4", "--format", "svg",
        "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(a.is_empty());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("#123456"));
    // Same inputs, same bytes.
    let again = ok(&["render", "svg", "diagram", "[0;(2)]", "1/0", "--depth", "4", "--format", "svg",
        "--config", cfg.to_str().unwrap()]);
    assert_eq!(again, svg);
}

#[test]
fn render_json_geodesics() {
    let v: Vec<serde_json::Value> = serde_json::from_str(&ok(&["render", "svg", "tessellation", "--depth", "3"])).unwrap();
    // 1 + 3·(2² − 1) triangles: 3 outer edges and 2 new per added triangle.
    assert_eq!(v.len(), 3 + 2 * 9);
    for g in &v {
        if let Some(r) = g["radius"].as_f64() {
            let (cx, cy) = (g["center"][0].as_f64().unwrap(), g["center"][1].as_f64().unwrap());
            assert!((cx * cx + cy * cy - 1.0 - r * r).abs() < 1e-9, "arc not orthogonal to the unit circle");
        }
    }
}

#[test]
fn construct_is_seeded() {
    let a = ok(&["cf", "construct", "1", "2", "2", "--depth", "2", "--seed", "7", "--odd-max", "9"]);
    let b = ok(&["cf", "construct", "1", "2", "2", "--depth", "2", "--seed", "7", "--odd-max", "9"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let d: Vec<i64> = v["d_chain"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert!(d.windows(2).all(|w| w[1] > w[0] && w[1] % w[0] == 0), "{d:?}");
}
