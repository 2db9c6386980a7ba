//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails. Thresholds live in `monact::selfcheck`.
//!
//! `cargo test -p monact --test acceptance`

use std::process::ExitCode;

use monact::selfcheck::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let reports = run_all(DEFAULT_SEED);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
