//! Exact clock and shift arithmetic.
//!
//! Builds the pair for N = 5, checks the exchange relation symbolically and
//! prints the dense matrices.
//!
//! ```bash
//! cargo run --example clock_shift
//! ```

use qps::schwinger::verify_clifford;
use qps::{PhasedPermutation, RootPhase, SchwingerPair};

fn main() -> qps::Result<()> {
    let pair = SchwingerPair::new(5)?;
    let (u, v) = (pair.u(), pair.v());

    // V U = ω U V, phases held as exponents of e^{2πi/2N}
    let vu = v.compose(u)?;
    let uv = u.compose(v)?;
    let ratio = vu.phase_ratio(&uv).expect("same support");
    println!("V U = {ratio} · U V");

    let w = RootPhase::new(pair.order(), 2)?;
    assert_eq!(ratio, w);

    // U^N = V^N = I, exactly
    assert!(u.pow(5).is_identity() && v.pow(5).is_identity());

    let m = pair.monomial(2, 3);
    println!("U^2 V^3 maps column j to row {:?}", m.perm());
    println!(
        "with phase exponents {:?} (order {})",
        m.exponents(),
        m.order()
    );
    let inv: PhasedPermutation = m.adjoint();
    assert!(m.compose(&inv)?.is_identity());

    println!("\nU =\n{}", u.to_dense());
    println!("V =\n{}", v.to_dense());

    let report = verify_clifford(&pair);
    println!(
        "{} relation instances, max exponent mismatch {}: {}",
        report.relation_instances,
        report.max_exponent_mismatch,
        if report.passed() { "pass" } else { "fail" }
    );
    Ok(())
}
