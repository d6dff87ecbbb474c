//! The q-deformed oscillator at a root of unity.
//!
//! ```bash
//! cargo run --example q_oscillator
//! ```

use qps::qosc::verify_q_relation;
use qps::{LabelConvention, QOscillator};

fn main() -> qps::Result<()> {
    let osc = QOscillator::new(7)?;
    println!("N = 7, omega = {}", osc.omega());
    for (k, s) in osc.ladder_coefficients().iter().enumerate() {
        println!("  s({k}) = {s:+.12}");
    }

    let report = verify_q_relation(&osc);
    println!(
        "max |a a† - ω a† a - ω^-N| = {:.2e} (tolerance {:.0e})",
        report.max_abs_deviation, report.tolerance
    );

    println!(
        "a† is a shift; a is not unitary (defect {:.3})",
        osc.a().unitarity_defect()
    );

    let sym = QOscillator::with_convention(7, LabelConvention::Symmetric)?;
    let report = verify_q_relation(&sym);
    println!(
        "symmetric labels: deviation {:.2e}",
        report.max_abs_deviation
    );

    match QOscillator::new(6) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("N = 6 rejected: {e}"),
    }
    Ok(())
}
