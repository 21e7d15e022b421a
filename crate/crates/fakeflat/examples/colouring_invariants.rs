//! Counting fake-flat colourings and evaluating invariants, in both
//! counting modes, against the closed forms.
//!
//! ```bash
//! cargo run -p fakeflat --example colouring_invariants
//! ```

use fakeflat::fixtures;
use fakeflat::invariant::{
    basepoint_shift_check, closed_form, count_colourings, enumerate_colourings, invariant,
    orientation_flip_check, CountMode, Limits, SurfaceKind,
};
use fakeflat::surface::SurfaceComplex;

fn main() -> fakeflat::Result<()> {
    let lim = Limits::default();

    // sphere over the Z4 -> Z2 extension: the face colour ranges over the
    // kernel, the cut edge over G, hence |K|·|G| = 4 colourings
    let x4 = fixtures::x4();
    let sphere = SurfaceComplex::sphere();
    let fast = count_colourings(&sphere, &x4, &[], &[], CountMode::Fast, &lim)?;
    let oracle = count_colourings(&sphere, &x4, &[], &[], CountMode::Oracle, &lim)?;
    println!("sphere/X4 colourings: fast {fast}, oracle {oracle}");

    // the colourings themselves, materialized
    for col in enumerate_colourings(&sphere, &x4, &[], &[], &lim)? {
        println!(
            "  edge colours {:?}, face colours {:?}",
            col.edges, col.faces
        );
    }

    // invariants with their closed forms
    println!("\nsurface    module  invariant    closed form");
    for cm in fixtures::all() {
        let v = invariant(&sphere, &cm, &[], &[], &lim)?;
        let c = closed_form(SurfaceKind::Sphere, &cm, &[])?;
        println!("sphere     {:6}  {:10}  {}", cm.name(), v.to_string(), c);
    }
    let torus = SurfaceComplex::torus();
    for cm in fixtures::all() {
        let v = invariant(&torus, &cm, &[], &[], &lim)?;
        println!(
            "torus      {:6}  {:10}  {}",
            cm.name(),
            v.to_string(),
            closed_form(SurfaceKind::Torus, &cm, &[])?
        );
    }

    // a disk invariant carries a symbolic sqrt(|G|)
    let x2 = fixtures::x2();
    let disk = invariant(&SurfaceComplex::disk_in(), &x2, &[0], &[], &lim)?;
    println!(
        "\ndisk_in/X2 at the identity: {disk} ≈ {:.6}",
        disk.approx()
    );

    // nothing depends on edge orientations or basepoints
    let cyl = SurfaceComplex::cylinder();
    let x3 = fixtures::x3();
    println!(
        "flip the cylinder's cut edge: invariant unchanged: {}",
        orientation_flip_check(&cyl, &x3, 2, &[1], &[0], &lim)?
    );
    println!(
        "move the cylinder's basepoint: invariant unchanged: {}",
        basepoint_shift_check(&cyl, &x3, 0, 2, &[1], &[0], &lim)?
    );
    Ok(())
}
