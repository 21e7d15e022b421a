//! JSON round trips for groups, crossed modules and surfaces. Loaders
//! re-run every validation, so nothing unverified gets in.
//!
//! ```bash
//! cargo run -p fakeflat --example json_io
//! ```

use fakeflat::fixtures;
use fakeflat::group::FiniteGroup;
use fakeflat::io::{
    crossed_module_from_json, crossed_module_to_json, group_from_json, group_to_json,
    surface_from_json, surface_to_json,
};
use fakeflat::surface::SurfaceComplex;

fn main() -> fakeflat::Result<()> {
    let z3 = FiniteGroup::cyclic(3)?;
    let text = group_to_json(&z3);
    println!("group format:\n{text}\n");
    assert!(group_from_json(&text)?.same_table(&z3));

    // loading re-runs the axiom checks; a broken table is refused
    let broken = r#"{"name":"bad","order":2,"table":[[0,1],[1,1]]}"#;
    println!(
        "loading a broken table: {}\n",
        group_from_json(broken).unwrap_err()
    );

    let x5 = fixtures::x5();
    let text = crossed_module_to_json(&x5);
    let back = crossed_module_from_json(&text)?;
    println!(
        "crossed module round trip: name {}, kernel {:?}",
        back.name(),
        back.kernel().members()
    );

    let cyl = SurfaceComplex::cylinder();
    let text = surface_to_json(&cyl);
    println!("\nsurface format:\n{text}");
    let back = surface_from_json(&text)?;
    assert!(back.same_up_to_relabelling(&cyl));
    println!("surface round trip: equal up to relabelling");
    Ok(())
}
