//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use torsion_sieve_verify::{run_criterion, Config};

fn main() -> ExitCode {
    let cfg = Config::default();
    let mut failed = Vec::new();
    for id in 1..=11 {
        let start = Instant::now();
        let c = run_criterion(id, &cfg);
        println!("{} ({:.1}s)", c.line(), start.elapsed().as_secs_f64());
        if !c.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
