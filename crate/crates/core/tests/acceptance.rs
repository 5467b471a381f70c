//! Runs every acceptance criterion and prints one line per criterion.
//! `XLAG_ACCEPTANCE=3,5` restricts the run to the listed criteria.

use xlag_core::acceptance::{format_line, run_criterion};

fn main() {
    let only: Option<Vec<usize>> = std::env::var("XLAG_ACCEPTANCE")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let ids: Vec<usize> = only.unwrap_or_else(|| (1..=10).collect());
    let mut failed = 0;
    for id in ids {
        let r = run_criterion(id).expect("criterion id in 1..=10");
        println!("{}", format_line(&r));
        for f in r.failures.iter().skip(1).take(4) {
            println!("    also: {f}");
        }
        if !r.pass {
            failed += 1;
        }
    }
    println!("acceptance: {}", if failed == 0 { "all criteria pass".to_string() } else { format!("{failed} failing") });
    if failed > 0 {
        std::process::exit(1);
    }
}
