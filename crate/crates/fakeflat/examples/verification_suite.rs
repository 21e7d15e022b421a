//! Running the full verification suite from code: every identity the
//! library promises, checked against one fixture.
//!
//! ```bash
//! cargo run -p fakeflat --example verification_suite
//! ```

use fakeflat::fixtures;
use fakeflat::verify::{verify_module, VerifyOptions};

fn main() {
    let opts = VerifyOptions::default();
    let mut failed = 0;
    for cm in [fixtures::x4(), fixtures::x5()] {
        for check in verify_module(&cm, &opts) {
            println!(
                "{} {} — {}",
                if check.passed { "ok  " } else { "FAIL" },
                check.name,
                check.detail
            );
            if !check.passed {
                failed += 1;
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} checks failed");
        std::process::exit(1);
    }
}
