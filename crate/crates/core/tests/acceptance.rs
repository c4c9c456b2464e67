//! Runs every acceptance criterion and prints one pass/fail line for each.
//! Built without the libtest harness so the lines are never captured.

use theta_upsilon::selftest;

fn main() {
    let report = selftest::run(2024);
    for c in &report.criteria {
        println!("{c}");
    }
    let failed: Vec<u32> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", report.criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
