//! Finite groups as multiplication tables: constructors, verified
//! homomorphisms, conjugacy classes and the commuting fraction.
//!
//! ```bash
//! cargo run -p fakeflat --example build_groups
//! ```

use fakeflat::group::{FiniteGroup, GroupHom};

fn main() -> fakeflat::Result<()> {
    // element 0 is always the identity; tables are checked eagerly
    let z4 = FiniteGroup::cyclic(4)?;
    let s3 = FiniteGroup::symmetric(3)?;
    let klein = FiniteGroup::direct_product(&FiniteGroup::cyclic(2)?, &FiniteGroup::cyclic(2)?)?;

    for g in [&z4, &s3, &klein] {
        println!(
            "{:-8} order {:2}  abelian: {:5}  conjugacy classes: {:?}",
            g.name(),
            g.order(),
            g.is_abelian(),
            g.conjugacy_classes()
                .iter()
                .map(Vec::len)
                .collect::<Vec<_>>()
        );
    }

    // a broken table is rejected with the offending witness
    let err = FiniteGroup::build("bad", &[vec![0, 1], vec![1, 1]]).unwrap_err();
    println!("rejected table: {err}");

    // kernel and image of the mod-2 surjection Z4 -> Z2
    let mod2 = GroupHom::new(z4, FiniteGroup::cyclic(2)?, vec![0, 1, 0, 1])?;
    println!(
        "mod-2 map: kernel {:?}, image size {}, surjective: {}",
        mod2.kernel().members(),
        mod2.image().len(),
        mod2.is_surjective()
    );

    // the commuting fraction times the order counts conjugacy classes
    let s3 = FiniteGroup::symmetric(3)?;
    let cf = s3.commuting_fraction();
    println!(
        "S3: commuting fraction {} · order 6 = {} = #classes",
        fakeflat::scalar::format_rat(&cf),
        s3.conjugacy_classes().len()
    );
    Ok(())
}
