//! Runs every acceptance criterion and prints one line per criterion.
//! Exits non-zero only if a criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use ncpart::checks::{self, Status};

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=checks::NAMES.len() {
        let start = Instant::now();
        let report = checks::run(id).expect("criterion ids are contiguous");
        println!("{report}  [{:.1}s]", start.elapsed().as_secs_f64());
        if report.status == Status::Fail {
            failed += 1;
        }
    }
    println!("{} criteria, {failed} failed", checks::NAMES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
