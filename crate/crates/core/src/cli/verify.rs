//! Invariant suites behind `qps verify`.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{t_mod_monomial, BasisFamily, BasisKind};
use crate::dense::DenseOperator;
use crate::factor::{
    build_factor_system, compare_with_direct, exchange_phase, prime_factorize, sub_pairs,
};
use crate::qosc::{
    annihilator_from_unitaries, build_qosc, ladder_coefficient, q_relation_tolerance,
    verify_q_relation_with,
};
use crate::schwinger::{fourier_matrix, verify_clifford, SchwingerPair};
use crate::tolerance::DEFAULT_TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Clifford,
    Basis,
    Factor,
    Qosc,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Basis => "basis",
            Suite::Factor => "factor",
            Suite::Qosc => "qosc",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub check: String,
    pub location: String,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub dims: Vec<usize>,
    /// `None` means the per-check defaults.
    pub tolerance: Option<f64>,
    pub status: String,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
    pub notices: Vec<String>,
    pub elapsed_seconds: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Recorder {
    checks_run: usize,
    failures: Vec<Failure>,
    notices: Vec<String>,
}

impl Recorder {
    /// Counts one check; records a failure when `magnitude > tol` or NaN.
    fn check(&mut self, check: &str, location: impl FnOnce() -> String, magnitude: f64, tol: f64) {
        self.checks_run += 1;
        if magnitude.is_nan() || magnitude > tol {
            self.failures.push(Failure {
                check: check.into(),
                location: location(),
                magnitude,
            });
        }
    }
}

pub fn run_suite(suite: Suite, dims: &[usize], tolerance: Option<f64>) -> VerifyReport {
    let start = Instant::now();
    let mut rec = Recorder {
        checks_run: 0,
        failures: Vec::new(),
        notices: Vec::new(),
    };
    let suites = match suite {
        Suite::All => vec![Suite::Clifford, Suite::Basis, Suite::Factor, Suite::Qosc],
        s => vec![s],
    };
    let mut skipped_everything = true;
    for &n in dims {
        for &s in &suites {
            let ran = match s {
                Suite::Clifford => clifford(&mut rec, n),
                Suite::Basis => basis(&mut rec, n, tolerance.unwrap_or(DEFAULT_TOLERANCE)),
                Suite::Factor => factor(&mut rec, n, tolerance.unwrap_or(DEFAULT_TOLERANCE)),
                Suite::Qosc => qosc(&mut rec, n, tolerance),
                Suite::All => unreachable!(),
            };
            skipped_everything &= !ran;
        }
    }
    let status = if !rec.failures.is_empty() {
        "fail"
    } else if skipped_everything {
        "skipped"
    } else {
        "pass"
    };
    VerifyReport {
        suite: suite.name().into(),
        dims: dims.to_vec(),
        tolerance,
        status: status.into(),
        checks_run: rec.checks_run,
        failures: rec.failures,
        notices: rec.notices,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

fn clifford(rec: &mut Recorder, n: usize) -> bool {
    let pair = SchwingerPair::new(n).expect("dimension validated by caller");
    let report = verify_clifford(&pair);
    rec.checks_run += report.relation_instances + report.order_checks;
    for v in &report.violations {
        rec.failures.push(Failure {
            check: format!("clifford:{}", v.relation),
            location: format!("N={n} k={} l={} column={}", v.k, v.l, v.column),
            magnitude: v
                .exponent_mismatch
                .map(|e| e as f64)
                .unwrap_or(f64::INFINITY),
        });
    }
    true
}

fn random_operator(rng: &mut ChaCha8Rng, n: usize) -> DenseOperator {
    DenseOperator::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn basis(rec: &mut Recorder, n: usize, tol: f64) -> bool {
    let pair = SchwingerPair::new(n).expect("dimension validated by caller");
    let id = DenseOperator::identity(n);

    for kind in [BasisKind::S1, BasisKind::S2] {
        let fam = BasisFamily::cached(kind, n).expect("valid dimension");
        let gram = fam.gram_matrix();
        let dev = gram
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let (r, c) = (i % gram.nrows(), i / gram.nrows());
                (z - if r == c {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                })
                .norm()
            })
            .fold(0.0, f64::max);
        rec.check(
            &format!("orthonormality:{}", kind.name()),
            || format!("N={n}"),
            dev,
            tol,
        );
    }

    let mut invariance_breaks = 0usize;
    for j in 0..n as i64 {
        for l in 0..n as i64 {
            let base = t_mod_monomial(&pair, j, l);
            for a in -2..=2i64 {
                for b in -2..=2i64 {
                    if t_mod_monomial(&pair, j + a * n as i64, l + b * n as i64) != base {
                        invariance_breaks += 1;
                    }
                }
            }
        }
    }
    rec.check(
        "t-mod-invariance",
        || format!("N={n}"),
        invariance_breaks as f64,
        0.0,
    );

    let projectors: [(&str, Vec<DenseOperator>); 2] = [
        (
            "projector-v",
            (0..n as i64)
                .map(|k| pair.projector_v(k).expect("in range"))
                .collect(),
        ),
        (
            "projector-u",
            (0..n as i64)
                .map(|k| pair.projector_u(k).expect("in range"))
                .collect(),
        ),
    ];
    for (name, ps) in &projectors {
        let mut sum = DenseOperator::zeros(n);
        let mut algebra_dev: f64 = 0.0;
        for (k, pk) in ps.iter().enumerate() {
            sum = &sum + pk;
            for (l, pl) in ps.iter().enumerate() {
                let expected = if k == l {
                    pk.clone()
                } else {
                    DenseOperator::zeros(n)
                };
                algebra_dev = algebra_dev.max((pk * pl).max_abs_diff(&expected));
            }
        }
        rec.check(
            &format!("{name}:algebra"),
            || format!("N={n}"),
            algebra_dev,
            tol,
        );
        rec.check(
            &format!("{name}:completeness"),
            || format!("N={n}"),
            sum.max_abs_diff(&id),
            tol,
        );
    }

    let f = fourier_matrix(n).expect("valid dimension");
    rec.check(
        "fourier:unitarity",
        || format!("N={n}"),
        f.unitarity_defect(),
        tol,
    );
    let conj = &(&f * &pair.u().to_dense()) * &f.adjoint();
    rec.check(
        "fourier:conjugation",
        || format!("N={n}"),
        conj.max_abs_diff(&pair.v().to_dense()),
        tol,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let samples: Vec<DenseOperator> = (0..5).map(|_| random_operator(&mut rng, n)).collect();
    for kind in [
        BasisKind::S1,
        BasisKind::S2,
        BasisKind::TMod,
        BasisKind::GFourier,
    ] {
        let fam = match BasisFamily::cached(kind, n) {
            Ok(f) => f,
            Err(e) => {
                rec.check(
                    &format!("round-trip:{}", kind.name()),
                    || format!("N={n}: {e}"),
                    f64::INFINITY,
                    tol,
                );
                continue;
            }
        };
        let dev = samples
            .iter()
            .map(|o| {
                let back = fam
                    .reconstruct(&fam.decompose(o).expect("same dim"))
                    .expect("same dim");
                back.max_abs_diff(o)
            })
            .fold(0.0, f64::max);
        rec.check(
            &format!("round-trip:{}", kind.name()),
            || format!("N={n}"),
            dev,
            tol,
        );
        if kind == BasisKind::GFourier {
            rec.notices.push(format!(
                "N={n}: phase-space kernel G is {}Hermitian; Wigner tables are {}",
                if fam.kernel_hermitian() { "" } else { "not " },
                if fam.kernel_hermitian() {
                    "real for Hermitian input"
                } else {
                    "complex-valued"
                }
            ));
        }
    }
    true
}

fn factor(rec: &mut Recorder, n: usize, tol: f64) -> bool {
    let fs = match build_factor_system(n as u64) {
        Ok(fs) => fs,
        Err(_) => {
            let factors = prime_factorize(n as u64).unwrap_or_default();
            rec.notices.push(format!(
                "N={n}: factor suite skipped, repeated prime factors {factors:?}"
            ));
            return false;
        }
    };
    let pairs = sub_pairs(&fs).expect("valid factor system");
    let order = 2 * n as u64;
    for a in &pairs {
        rec.check(
            "factor:sub-order",
            || format!("N={n} P={}", a.prime),
            if a.u.pow(a.prime as i64).is_identity() && a.v.pow(a.prime as i64).is_identity() {
                0.0
            } else {
                1.0
            },
            0.0,
        );
        for b in &pairs {
            let expected = if a.index == b.index {
                order / a.prime
            } else {
                0
            };
            let got = exchange_phase(&a.v, &b.u).map(|p| p.exponent());
            let mismatch = match got {
                Some(e) => e.abs_diff(expected) as f64,
                None => f64::INFINITY,
            };
            rec.check(
                "factor:exchange",
                || format!("N={n} V(P={}) U(P={})", a.prime, b.prime),
                mismatch,
                0.0,
            );
        }
    }

    let crt_breaks = (0..n as u64)
        .filter(|&m| fs.crt_backward(&fs.crt_forward(m)).ok() != Some(m))
        .count();
    rec.check(
        "factor:crt-bijection",
        || format!("N={n}"),
        crt_breaks as f64,
        0.0,
    );

    let labels: Vec<(u64, u64)> = if n <= 30 {
        (0..n as u64)
            .flat_map(|m| (0..n as u64).map(move |k| (m, k)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        (0..30)
            .map(|_| (rng.gen_range(0..n as u64), rng.gen_range(0..n as u64)))
            .collect()
    };
    let worst = labels
        .iter()
        .map(|&(m, k)| {
            compare_with_direct(&fs, m, k)
                .map(|c| c.hs_distance)
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max);
    rec.check("factor:direct-match", || format!("N={n}"), worst, tol);
    true
}

fn qosc(rec: &mut Recorder, n: usize, tol: Option<f64>) -> bool {
    let osc = match build_qosc(n) {
        Ok(o) => o,
        Err(e) => {
            rec.notices.push(format!("N={n}: qosc suite skipped: {e}"));
            return false;
        }
    };
    let tol = tol.unwrap_or_else(|| q_relation_tolerance(n));
    let report = verify_q_relation_with(&osc, tol);
    rec.check(
        "qosc:q-relation",
        || format!("N={n}"),
        report.max_abs_deviation,
        tol,
    );
    let silent = (1..n as i64)
        .filter(|&k| ladder_coefficient(n, k).abs() <= 1e-9)
        .count();
    rec.check(
        "qosc:vacuum-unique",
        || format!("N={n}"),
        silent as f64,
        0.0,
    );
    let pair = SchwingerPair::new(n).expect("valid dimension");
    let a = annihilator_from_unitaries(&pair).expect("odd dimension");
    rec.check(
        "qosc:cross-construction",
        || format!("N={n}"),
        a.max_abs_diff(osc.a()),
        tol,
    );
    true
}
