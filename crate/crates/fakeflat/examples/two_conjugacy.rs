//! The pair-counting function C, 2-conjugacy classes, class sizes and the
//! generalized commuting fraction.
//!
//! ```bash
//! cargo run -p fakeflat --example two_conjugacy
//! ```

use fakeflat::fixtures;
use fakeflat::scalar::format_rat;
use fakeflat::two_conjugacy::{
    c_function, count_classes_by_squares, generalized_commuting_fraction, two_conjugacy_classes,
    verify_class_sizes, verify_gcf_identity, verify_witnesses, w_set,
};

fn main() -> fakeflat::Result<()> {
    // C(g1,g2) counts pairs (h,k) with d(h) = g1·k·g2⁻¹·k⁻¹; it vanishes
    // exactly when g1 and g2 fail to be 2-conjugate
    let x5 = fixtures::x5();
    println!("C over X5 (trivial boundary, Z2 inverting Z3):");
    for g1 in 0..2 {
        for g2 in 0..2 {
            print!("  C({g1},{g2}) = {}", c_function(&x5, g1, g2));
        }
        println!();
    }

    // the witnesses themselves
    let x3 = fixtures::x3();
    println!("W(0,0) over X3: {:?}", w_set(&x3, 0, 0));

    // classes, sizes and the two counting identities
    for cm in fixtures::all() {
        let partition = two_conjugacy_classes(&cm);
        let gcf = generalized_commuting_fraction(&cm);
        println!(
            "{}: classes {:?}, gcf = {}, gcf·|G| = {} = #classes, square-sum count = {}",
            cm.name(),
            partition.classes,
            format_rat(&gcf),
            partition.count(),
            format_rat(&count_classes_by_squares(&cm)),
        );
        // every identity is re-checked exactly, not assumed
        verify_class_sizes(&cm)?;
        verify_gcf_identity(&cm)?;
        verify_witnesses(&cm)?;
    }

    // with H trivial, 2-conjugacy is ordinary conjugacy
    let x2 = fixtures::x2();
    println!(
        "X2 (trivial H over S3): 2-conjugacy classes equal ordinary ones: {}",
        two_conjugacy_classes(&x2).classes == x2.g().conjugacy_classes()
    );
    Ok(())
}
