use std::process::ExitCode;

use thirring_qca::validation::{run_all, ValidationConfig};

fn main() -> ExitCode {
    let cfg = ValidationConfig::default();
    println!("acceptance suite: mu={}, p={}, N={}, seed={}", cfg.mu, cfg.p, cfg.ring_size, cfg.seed);
    let outcomes = run_all(&cfg);
    for o in &outcomes {
        println!(
            "{} criterion {:>2} {} ({:.2} s, limit {} s): {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.seconds,
            o.time_limit,
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
