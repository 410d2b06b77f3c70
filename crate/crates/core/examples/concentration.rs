//! Monte Carlo checks of the sub-Gaussian tail bounds, including a drifted
//! stream that the anytime bound must flag.
//!
//! ```text
//! cargo run --release --example concentration
//! ```

use factored_bandits::concentration::{check_anytime_bound, run_suite};

fn main() {
    let suite = run_suite(&[0.05, 0.1], 10_000, 1).unwrap();
    println!("{:<48} {:>6} {:>8} {:>8}  verdict", "check", "delta", "rate", "allowed");
    for r in &suite.tails {
        println!(
            "{:<48} {:>6} {:>8.4} {:>8.4}  {}",
            r.name,
            r.delta,
            r.rate(),
            r.tolerance(),
            if r.passed { "pass" } else { "FAIL" }
        );
    }
    let p = &suite.reparam;
    println!(
        "reparameterization: {} grid points ({} outside hypotheses), {} violations, min margin {:.3}",
        p.checked, p.skipped, p.violations, p.min_margin
    );
    println!("boundary expression at alpha = 4, x = 10: {:.4} (must be < 1)", p.boundary_value);

    let drift = check_anytime_bound(1000, 2000, 0.1, 0.5, 2).unwrap();
    println!("\nwith +0.5 drift the anytime bound is crossed in {:.1}% of trials", 100.0 * drift.rate());
}
