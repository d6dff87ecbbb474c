//! Spectral projectors and the finite Fourier transform.
//!
//! ```bash
//! cargo run --example fourier_projectors
//! ```

use qps::schwinger::fourier_matrix;
use qps::{DenseOperator, SchwingerPair};

fn main() -> qps::Result<()> {
    let n = 4;
    let pair = SchwingerPair::new(n)?;
    let f = fourier_matrix(n)?;
    println!("F (N = {n}) =\n{f}");
    println!("unitarity defect {:.2e}", f.unitarity_defect());

    // F U F† = V
    let conj = &(&f * &pair.u().to_dense()) * &f.adjoint();
    println!(
        "|F U F† - V| = {:.2e}",
        conj.max_abs_diff(&pair.v().to_dense())
    );

    // The clock projectors resolve the identity and rebuild V.
    let mut sum = DenseOperator::zeros(n);
    let mut rebuilt = DenseOperator::zeros(n);
    for k in 0..n as i64 {
        let p = pair.projector_v(k)?;
        let w = pair.v().to_dense()[(k as usize, k as usize)];
        rebuilt.axpy(w, &p);
        sum = sum.try_add(&p)?;
    }
    println!(
        "|Σ P_k - I| = {:.2e}",
        sum.max_abs_diff(&DenseOperator::identity(n))
    );
    println!(
        "|Σ ω^k P_k - V| = {:.2e}",
        rebuilt.max_abs_diff(&pair.v().to_dense())
    );

    // Shift projectors are the Fourier images of clock projectors.
    let pu = pair.projector_u(1)?;
    println!("shift projector P_U(1) =\n{pu}");
    Ok(())
}
