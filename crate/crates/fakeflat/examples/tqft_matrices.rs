//! Surfaces as linear maps: matrices on tuple bases, composition versus
//! gluing, and the cylinder idempotent.
//!
//! ```bash
//! cargo run -p fakeflat --example tqft_matrices
//! ```

use fakeflat::fixtures;
use fakeflat::invariant::Limits;
use fakeflat::surface::SurfaceComplex;
use fakeflat::tqft::{check_cylinder_identity, class_eigenvector_check, TqftMatrix};

fn main() -> fakeflat::Result<()> {
    let lim = Limits::default();
    let cyl = SurfaceComplex::cylinder();

    // the cylinder matrix over the identity module on Z2: all entries 1/2
    let x3 = fixtures::x3();
    let z = TqftMatrix::from_surface(&cyl, &x3, &lim)?;
    println!("Z_C over X3:");
    print!("{}", z.to_csv());

    // gluing two cylinders is matrix multiplication, and the cylinder is
    // an idempotent (not the identity)
    let glued = SurfaceComplex::glue(&cyl, &cyl)?;
    let z_glued = TqftMatrix::from_surface(&glued, &x3, &lim)?;
    println!("Z(C∘C) = Z_C·Z_C: {}", z_glued == z.compose(&z)?);
    println!("Z_C idempotent: {}", z.is_idempotent()?);

    // rank counts 2-conjugacy classes; class indicators are fixed vectors
    for cm in fixtures::all() {
        let report = class_eigenvector_check(&cm, &lim)?;
        println!(
            "{}: rank(Z_C) = {}, 2-conjugacy classes = {}, indicators fixed = {}",
            cm.name(),
            report.rank,
            report.classes,
            report.indicators_fixed
        );
        check_cylinder_identity(&cm)?;
    }

    // capping a cylinder with a disk reproduces the disk matrix
    let x2 = fixtures::x2();
    let z_cyl = TqftMatrix::from_surface(&cyl, &x2, &lim)?;
    let z_disk = TqftMatrix::from_surface(&SurfaceComplex::disk_in(), &x2, &lim)?;
    let capped = SurfaceComplex::glue(&cyl, &SurfaceComplex::disk_in())?;
    let z_capped = TqftMatrix::from_surface(&capped, &x2, &lim)?;
    println!(
        "disk∘cylinder over X2 equals Z_D·Z_C: {}",
        z_capped == z_disk.compose(&z_cyl)?
    );
    println!("Z_D over X2 (1 × 6, sqrt entries):");
    print!("{}", z_disk.to_csv());
    Ok(())
}
