//! Runs all nine acceptance criteria with their pinned standard
//! configurations and prints one verdict line per criterion.
//!
//! Run with: cargo run -p whitham-harness --release --example acceptance_gate

use whitham_harness::run_acceptance;

fn main() {
    let results = run_acceptance();
    let mut all = true;
    for r in &results {
        println!("{r}");
        all &= r.passed;
    }
    println!("overall: {}", if all { "PASS" } else { "FAIL" });
    std::process::exit(if all { 0 } else { 1 });
}
