//! Phase-space tables for pure states.
//!
//! ```bash
//! cargo run --example wigner_table
//! ```

use qps::basis::wigner_map;
use qps::schwinger::fourier_matrix;
use qps::{BasisFamily, BasisKind, SchwingerPair};

fn print_table(label: &str, o: &qps::DenseOperator, n: usize) -> qps::Result<()> {
    let w = wigner_map(o, n)?;
    println!(
        "{label}: trace {:.6}, sum {:.6}, real {}",
        w.trace, w.total, w.real
    );
    for m in 0..n {
        let row: Vec<String> = (0..n).map(|k| format!("{:+.4}", w.get(m, k).re)).collect();
        println!("    {}", row.join(" "));
    }
    Ok(())
}

fn main() -> qps::Result<()> {
    for n in [2, 3] {
        let pair = SchwingerPair::new(n)?;
        let g = BasisFamily::cached(BasisKind::GFourier, n)?;
        println!("N = {n}, kernel Hermitian: {}", g.kernel_hermitian());
        print_table("|v_0><v_0|", &pair.projector_v(0)?, n)?;
        print_table("|u_0><u_0|", &pair.projector_u(0)?, n)?;
        let f = fourier_matrix(n)?;
        print_table("F", &f, n)?;
    }
    Ok(())
}
