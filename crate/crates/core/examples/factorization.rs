//! Splitting N = 15 into independent prime-dimensional pairs.
//!
//! ```bash
//! cargo run --example factorization
//! ```

use qps::factor::{build_factor_system, compare_with_direct, exchange_phase, sub_pairs};

fn main() -> qps::Result<()> {
    let fs = build_factor_system(15)?;
    println!("N = 15 = {:?}", fs.factors());

    let pairs = sub_pairs(&fs)?;
    for p in &pairs {
        println!(
            "P = {}: U^{} and V^{}",
            p.prime, p.shift_exponent, p.clock_exponent
        );
    }
    for a in &pairs {
        for b in &pairs {
            let phase = exchange_phase(&a.v, &b.u).expect("monomials");
            println!("V(P={}) U(P={}) = {phase} · U V", a.prime, b.prime);
        }
    }

    let m = 7;
    println!("residues of {m}: {:?}", fs.crt_forward(m));
    println!("clock labels of {m}: {:?}", fs.clock_labels_forward(m));

    let cmp = compare_with_direct(&fs, 7, 11)?;
    println!(
        "factorized S1(7, 11) vs direct: phase {}, HS distance {:.2e}",
        cmp.phase, cmp.hs_distance
    );
    Ok(())
}
