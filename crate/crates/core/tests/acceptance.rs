//! One pass/fail line per acceptance criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.
//! Tolerances are exact everywhere; the runtime budgets live next to each
//! criterion in `logsps::selftest`.

use logsps::selftest::{criterion_count, run_criterion, DEFAULT_SEED};
use logsps::Exec;

fn main() {
    let mut failed = Vec::new();
    for id in 1..=criterion_count() as u8 {
        let r = run_criterion(id, DEFAULT_SEED, Exec::Parallel);
        println!("{}", r.line());
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criterion_count());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
