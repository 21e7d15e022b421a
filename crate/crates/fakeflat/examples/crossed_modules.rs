//! Building crossed modules: the constructor families, the axiom checks,
//! and the shipped fixture catalogue X1..X5.
//!
//! ```bash
//! cargo run -p fakeflat --example crossed_modules
//! ```

use fakeflat::crossed::CrossedModule;
use fakeflat::fixtures;
use fakeflat::group::{FiniteGroup, GroupAction, GroupHom};

fn main() -> fakeflat::Result<()> {
    // the shipped catalogue
    for cm in fixtures::all() {
        println!(
            "{}: G = {} (order {}), H = {} (order {}), |ker d| = {}, |im d| = {}",
            cm.name(),
            cm.g().name(),
            cm.g().order(),
            cm.h().name(),
            cm.h().order(),
            cm.kernel().len(),
            cm.image().len()
        );
    }

    // both axioms are verified exhaustively; a trivial action on a
    // nonabelian H violates the Peiffer identity
    let z2 = FiniteGroup::cyclic(2)?;
    let s3 = FiniteGroup::symmetric(3)?;
    let err = CrossedModule::build(
        "broken",
        z2.clone(),
        s3.clone(),
        GroupHom::trivial(&s3, &z2),
        GroupAction::trivial(&z2, &s3),
    )
    .unwrap_err();
    println!("rejected module: {err}");

    // central extensions induce the action by lifted conjugation
    let z4 = FiniteGroup::cyclic(4)?;
    let mod2 = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1])?;
    let ext = CrossedModule::from_central_extension("Z4-over-Z2", z4, mod2)?;
    println!(
        "central extension: kernel {:?} is central, action trivial: {}",
        ext.kernel().members(),
        ext.g()
            .elements()
            .all(|g| ext.h().elements().all(|h| ext.act(g, h) == h))
    );

    // the identity module on any group: d = id, action by conjugation
    let conj = CrossedModule::identity_module(&s3);
    println!(
        "identity module on S3: d(3) = {}, 3 acting on 4 gives {}",
        conj.boundary_of(3),
        conj.act(3, 4)
    );
    Ok(())
}
