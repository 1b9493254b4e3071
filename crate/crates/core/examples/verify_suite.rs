//! Runs the built-in verification suite and prints one line per criterion.

use extremal::suite::{verify_paper_suite, SuiteOptions};

fn main() {
    let report = verify_paper_suite(&SuiteOptions::default());
    for c in &report.criteria {
        println!("{:>2} {:<32} {}", c.id, c.name, if c.passed { "pass" } else { "FAIL" });
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
