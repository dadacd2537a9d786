//! The full verification suite, one line per check. Runs without the libtest
//! harness so the lines are never captured.

use std::process::ExitCode;

use holofrft_cli::verify::{run_all, Tolerances, CHECKS};

fn main() -> ExitCode {
    let report = run_all(&Tolerances::default(), |r| println!("{r}"));
    let passed = report.checks.iter().filter(|c| c.pass).count();
    println!("acceptance: {passed} of {} checks passed", CHECKS.len());
    if report.all_pass && report.checks.len() == CHECKS.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
