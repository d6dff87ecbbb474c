//! Decomposing an operator in each of the four bases.
//!
//! ```bash
//! cargo run --example operator_bases
//! ```

use num_complex::Complex64;
use qps::basis::{basis_change_matrix, condition_number};
use qps::{BasisFamily, BasisKind, DenseOperator};

fn main() -> qps::Result<()> {
    let n = 3;
    // A Hermitian test operator
    let o = DenseOperator::from_fn(n, |r, c| {
        let re = (r + c) as f64 * 0.25;
        let im = r as f64 - c as f64;
        Complex64::new(re, im)
    });
    assert!(o.is_hermitian(0.0));

    for kind in BasisKind::ALL {
        let family = BasisFamily::cached(kind, n)?;
        let coeffs = family.decompose(&o)?;
        let back = family.reconstruct(&coeffs)?;
        println!(
            "basis {:>2}: reconstruction error {:.2e}",
            kind.name(),
            back.max_abs_diff(&o)
        );
        for m in 0..n {
            let row: Vec<String> = (0..n)
                .map(|k| {
                    let z = coeffs.get(m, k);
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            println!("    {}", row.join("  "));
        }
    }

    let s1 = BasisFamily::cached(BasisKind::S1, n)?;
    let g = BasisFamily::cached(BasisKind::GFourier, n)?;
    let cond = condition_number(&basis_change_matrix(&s1, &g)?);
    println!("condition number of the S1 -> G change of basis: {cond:.6}");
    Ok(())
}
