//! Acceptance criteria 1 to 10, one line each. Exits nonzero if any fails.

use std::process::ExitCode;

use diracline::validate::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    println!("\nacceptance criteria");
    let mut failed = Vec::new();
    for id in CRITERIA {
        let r = run_criterion(id);
        println!("{}", r.line());
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed\n", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}\n");
        ExitCode::FAILURE
    }
}
