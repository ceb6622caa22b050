use std::path::Path;
use std::process::{Command, Output};

fn euler(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_euler")).args(args).current_dir(cwd).output().expect("run euler")
}

const SQUARE: &str = "OFF\n4 2 0\n-1 -1 0\n1 -1 0\n1 1 0\n-1 1 0\n3 0 1 2\n3 0 2 3\n";

#[test]
fn ect_sect_invert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("mesh.off"), SQUARE).unwrap();
    assert!(euler(&["ect", "mesh.off", "--directions", "axes:4", "--out", "a"], d).status.success());
    assert!(euler(&["sect", "a/ect.json", "--out", "b"], d).status.success());
    assert!(euler(&["invert", "b/sect.json", "--out", "c"], d).status.success());
    let original = std::fs::read(d.join("a/ect.json")).unwrap();
    assert_eq!(original, std::fs::read(d.join("c/ect.json")).unwrap());
    let json = String::from_utf8(original).unwrap();
    assert!(json.contains("\"-1/1\""));
    let config = std::fs::read_to_string(d.join("a/config.json")).unwrap();
    assert!(config.contains("\"denom_bound\": 1000000"));
    assert!(!config.contains("workers"));
}

#[test]
fn sect_directly_from_mesh_matches_two_step() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("mesh.off"), SQUARE).unwrap();
    assert!(euler(&["sect", "mesh.off", "--window", "3", "--out", "x", "--format", "json"], d).status.success());
    assert!(euler(&["ect", "mesh.off", "--out", "a"], d).status.success());
    assert!(euler(&["sect", "a/ect.json", "--window", "3/1", "--out", "y"], d).status.success());
    let x = std::fs::read_to_string(d.join("x/sect.json")).unwrap();
    let y = std::fs::read_to_string(d.join("y/sect.json")).unwrap();
    assert_eq!(x, y);
    assert!(x.contains("\"window\": \"3/1\""));
    assert!(!d.join("x/sect.csv").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let missing = euler(&["ect", "missing.off"], d);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.off"));
    let unknown = euler(&["ect", "x.off", "--frobnicate"], d);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));
    assert_eq!(euler(&["--help"], d).status.code(), Some(0));
    assert_eq!(euler(&["verify", "--fixtures", "mine"], d).status.code(), Some(1));
    std::fs::write(d.join("quad.obj"), "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n").unwrap();
    let quad = euler(&["ect", "quad.obj"], d);
    assert_eq!(quad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&quad.stderr).contains("triangulate first"));
    std::fs::write(d.join("mesh.off"), SQUARE).unwrap();
    assert_eq!(euler(&["select", "mesh.off"], d).status.code(), Some(1));
    assert_eq!(euler(&["ect", "mesh.off", "--window", "abc"], d).status.code(), Some(1));
    assert_eq!(euler(&["sect", "mesh.off", "--window", "1/2"], d).status.code(), Some(1));
}

#[test]
fn image_transforms_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("img.pgm"), "P2\n2 1\n3\n1 3\n").unwrap();
    let out = euler(&["ert", "img.pgm", "--directions", "1,0", "--out", "o"], d);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(d.join("o/ert.csv")).unwrap();
    assert_eq!(csv, "direction,components,breakpoint,value\n0,1/1 0/1,-inf,0/1\n0,1/1 0/1,-1/1,1/3\n0,1/1 0/1,0/1,1/1\n");
    // lower convention: the shared edge takes 1/3 and the rest of the right pixel has χ = 0
    let out = euler(&["ert", "img.pgm", "--directions", "1,0", "--convention", "lower", "--out", "l"], d);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(d.join("l/ert.csv")).unwrap();
    assert_eq!(csv, "direction,components,breakpoint,value\n0,1/1 0/1,-inf,0/1\n0,1/1 0/1,-1/1,1/3\n");
    let json = std::fs::read_to_string(d.join("l/ert.json")).unwrap();
    assert!(json.contains("\"convention\": \"lower\""));
    assert_eq!(euler(&["ect", "img.pgm", "--convention", "middle"], d).status.code(), Some(1));
    // non-integer image values have no ECT
    assert_eq!(euler(&["ect", "img.pgm"], d).status.code(), Some(1));
    assert!(euler(&["sert", "o/ert.json", "--out", "s"], d).status.success());
    let plot = euler(&["plot", "s/sert.json", "--out", "p"], d);
    assert!(plot.status.success());
    let svg = std::fs::read_to_string(d.join("p/sert-0.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
    assert!(euler(&["plot", "o/ert.json", "--out", "q"], d).status.success());
    assert!(std::fs::read_to_string(d.join("q/ert-0.svg")).unwrap().contains("class=\"open\""));
}

#[test]
fn betti_of_an_annulus_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // square ring: outer 3x3 boundary, inner unit hole
    let mut off = String::from("OFF\n8 8 0\n");
    for (x, y) in [(0, 0), (3, 0), (3, 3), (0, 3), (1, 1), (2, 1), (2, 2), (1, 2)] {
        off.push_str(&format!("{x} {y} 0\n"));
    }
    for f in ["0 1 5", "0 5 4", "1 2 6", "1 6 5", "2 3 7", "2 7 6", "3 0 4", "3 4 7"] {
        off.push_str(&format!("3 {f}\n"));
    }
    std::fs::write(d.join("ring.off"), off).unwrap();
    let out = euler(&["betti", "ring.off", "--k", "1", "--directions", "0,1", "--out", "b"], d);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(d.join("b/betti.csv")).unwrap();
    assert_eq!(csv, "direction,components,breakpoint,value\n0,0/1 1/1,-inf,0/1\n0,0/1 1/1,2/1,1/1\n");
}
