//! Runs the acceptance checks with a chosen seed: `cargo run --example selftest -- 7`.

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2024);
    let report = theta_upsilon::selftest::run(seed);
    for c in &report.criteria {
        println!("{c}");
    }
    std::process::exit(if report.passed() { 0 } else { 1 });
}
