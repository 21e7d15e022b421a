//! End-to-end checks of the compiled binary: argument parsing, file
//! loading, and the documented exit codes.

use std::process::Command;

use fakeflat::fixtures;
use fakeflat::io::{crossed_module_to_json, surface_to_json};
use fakeflat::surface::SurfaceComplex;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fakeflat"))
}

#[test]
fn invariant_subcommand_prints_the_value() {
    let out = bin()
        .args(["invariant", "--surface", "torus", "--module", "X2-S3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "3\n");
}

#[test]
fn boundary_colours_are_passed_through() {
    let out = bin()
        .args([
            "invariant",
            "--surface",
            "cylinder",
            "--module",
            "X3",
            "--in",
            "1",
            "--out",
            "0",
            "--mode",
            "both",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1/2\n");
}

#[test]
fn unknown_fixture_exits_3() {
    let out = bin().args(["classes", "--module", "X99"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn size_cap_exits_4() {
    let out = bin()
        .args([
            "invariant",
            "--surface",
            "torus",
            "--module",
            "X2",
            "--fast-cap",
            "4",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn bad_boundary_colour_exits_2() {
    let out = bin()
        .args([
            "invariant",
            "--surface",
            "cylinder",
            "--module",
            "X3",
            "--in",
            "7",
            "--out",
            "0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_reports_all_passed() {
    let out = bin()
        .args([
            "verify",
            "--module",
            "X4",
            "--move-sequences",
            "2",
            "--output",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["all_passed"], serde_json::Value::Bool(true));
}

#[test]
fn loads_modules_and_surfaces_from_json_files() {
    let dir = std::env::temp_dir().join(format!("fakeflat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let module_path = dir.join("x4.json");
    let surface_path = dir.join("sphere.json");
    std::fs::write(&module_path, crossed_module_to_json(&fixtures::x4())).unwrap();
    std::fs::write(&surface_path, surface_to_json(&SurfaceComplex::sphere())).unwrap();

    let out = bin()
        .args([
            "invariant",
            "--surface",
            surface_path.to_str().unwrap(),
            "--module",
            module_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "4\n");

    std::fs::remove_dir_all(&dir).ok();
}
