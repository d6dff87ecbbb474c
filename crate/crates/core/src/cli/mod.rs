//! The `qps` command line.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 I/O error,
//! 4 malformed input.

pub mod format;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::basis::{self, BasisFamily, BasisKind};
use crate::dense::DenseOperator;
use crate::factor::{build_factor_system, compare_with_direct, exchange_phase, sub_pairs};
use crate::qosc::{build_qosc, q_relation_tolerance, verify_q_relation_with};
use crate::schwinger::{fourier_matrix, SchwingerPair};
use crate::tolerance::tolerance_override;
use format::{pair, read_matrix_file, to_csv, write_atomic, GridDocument, Sig17};
use verify::{run_suite, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_MALFORMED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Malformed(_) => EXIT_MALFORMED,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qps",
    version,
    about = "Finite quantum phase space: Schwinger bases, Weyl-Wigner tables, q-oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an operator matrix to a file.
    Gen(GenArgs),
    /// Run invariant suites and print a JSON report.
    Verify(VerifyArgs),
    /// Expand a matrix file over an operator basis.
    Decompose(DecomposeArgs),
    /// Discrete Weyl-Wigner table of a matrix file.
    Wigner(WignerArgs),
    /// Ladder coefficients and the q-deformed commutator check.
    Qosc(QoscArgs),
    /// Prime sub-algebra decomposition of a square-free dimension.
    Factor(FactorArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    U,
    V,
    S1,
    S2,
    T,
    G,
    Fourier,
    #[value(alias = "projector-v")]
    Projector,
    ProjectorU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    S1,
    S2,
    G,
}

impl From<Family> for BasisKind {
    fn from(f: Family) -> Self {
        match f {
            Family::S1 => BasisKind::S1,
            Family::S2 => BasisKind::S2,
            Family::G => BasisKind::GFourier,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum, ignore_case = true)]
    pub kind: GenKind,
    /// Dimension N.
    #[arg(long)]
    pub n: usize,
    /// First basis label.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Second basis label.
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<i64>,
    /// Projector index.
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutFormat,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, conflicts_with = "range")]
    pub n: Option<usize>,
    /// Inclusive range such as `3..25` or `3..=25`.
    #[arg(long)]
    pub range: Option<String>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "s1")]
    pub family: Family,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct QoscArgs {
    #[arg(long)]
    pub n: usize,
    /// Also write `a` and `a†` to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long)]
    pub n: usize,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Decompose(a) => cmd_decompose(&a, out),
        Command::Wigner(a) => cmd_wigner(&a, out),
        Command::Qosc(a) => cmd_qosc(&a, out),
        Command::Factor(a) => cmd_factor(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "qps: {e}");
            e.exit_code()
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require_dim(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn labels(a: &GenArgs) -> Result<(i64, i64), CliError> {
    match (a.m, a.l) {
        (Some(m), Some(l)) => Ok((m, l)),
        _ => Err(usage(format!("{:?} needs both --m and --l", a.kind))),
    }
}

fn projector_index(a: &GenArgs) -> Result<i64, CliError> {
    let k = a.k.ok_or_else(|| usage("projector needs --k"))?;
    if !(0..a.n as i64).contains(&k) {
        return Err(usage(format!("--k must lie in 0..{}, got {k}", a.n)));
    }
    Ok(k)
}

fn generate(a: &GenArgs) -> Result<(String, DenseOperator), CliError> {
    require_dim(a.n)?;
    let n = a.n;
    let pair = SchwingerPair::new(n).map_err(|e| usage(e.to_string()))?;
    let lib = |r: crate::Result<DenseOperator>| r.map_err(|e| usage(e.to_string()));
    Ok(match a.kind {
        GenKind::U => (format!("U(N={n})"), pair.u().to_dense()),
        GenKind::V => (format!("V(N={n})"), pair.v().to_dense()),
        GenKind::Fourier => (format!("fourier(N={n})"), lib(fourier_matrix(n))?),
        GenKind::S1 | GenKind::S2 | GenKind::T | GenKind::G => {
            let (m, l) = labels(a)?;
            let (tag, op) = match a.kind {
                GenKind::S1 => ("S1", basis::s1(n, m, l)),
                GenKind::S2 => ("S2", basis::s2(n, m, l)),
                GenKind::T => ("T", basis::t_mod(n, m, l)),
                _ => ("G", basis::g_fourier(n, m, l)),
            };
            (format!("{tag}(N={n},m={m},n={l})"), lib(op)?)
        }
        GenKind::Projector => {
            let k = projector_index(a)?;
            (
                format!("projector_v(N={n},k={k})"),
                lib(pair.projector_v(k))?,
            )
        }
        GenKind::ProjectorU => {
            let k = projector_index(a)?;
            (
                format!("projector_u(N={n},k={k})"),
                lib(pair.projector_u(k))?,
            )
        }
    })
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (name, op) = generate(a)?;
    let bytes = match a.format {
        OutFormat::Json => GridDocument::matrix(op.dim(), op.entries(), name)
            .to_json()
            .into_bytes(),
        OutFormat::Csv => to_csv(op.dim(), op.entries()),
    };
    write_atomic(&a.out, &bytes)?;
    let _ = writeln!(out, "wrote {}", a.out.display());
    Ok(EXIT_PASS)
}

/// Parses `a..b` or `a..=b` (both inclusive).
pub fn parse_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || usage(format!("--range expects LO..HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn tolerance() -> Result<Option<f64>, CliError> {
    tolerance_override().map_err(|raw| {
        usage(format!(
            "QPS_TOLERANCE must be a non-negative number, got {raw:?}"
        ))
    })
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let dims = match (&a.n, &a.range) {
        (Some(n), None) => vec![*n],
        (None, Some(r)) => parse_range(r)?,
        _ => return Err(usage("verify needs exactly one of --n or --range")),
    };
    if let Some(&bad) = dims.iter().find(|&&n| n < 2) {
        return Err(usage(format!("dimensions must be at least 2, got {bad}")));
    }
    let report = run_suite(a.suite, &dims, tolerance()?);
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn load_operator(path: &Path) -> Result<DenseOperator, CliError> {
    let file = read_matrix_file(path)?;
    if file.dim < 2 {
        return Err(CliError::Malformed(format!(
            "{}: dim must be at least 2",
            path.display()
        )));
    }
    DenseOperator::new(file.dim, file.entries)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

pub fn cmd_decompose(a: &DecomposeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let op = load_operator(&a.input)?;
    let kind = BasisKind::from(a.family);
    let family =
        BasisFamily::cached(kind, op.dim()).map_err(|e| CliError::Malformed(e.to_string()))?;
    let grid = family
        .decompose(&op)
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    let residual = family
        .reconstruct(&grid)
        .map_err(|e| CliError::Malformed(e.to_string()))?
        .max_abs_diff(&op);
    let mut doc = GridDocument::matrix(
        grid.dim(),
        grid.values(),
        format!("coefficients of {}", a.input.display()),
    );
    doc.grid_kind = Some("coefficients".into());
    doc.family = Some(kind.name().into());
    doc.residual = Some(Sig17(residual));
    write_atomic(&a.out, doc.to_json().as_bytes())?;
    let _ = writeln!(out, "wrote {} (residual {residual:.3e})", a.out.display());
    Ok(EXIT_PASS)
}

pub fn cmd_wigner(a: &WignerArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let op = load_operator(&a.input)?;
    let table = basis::wigner_map(&op, op.dim()).map_err(|e| CliError::Malformed(e.to_string()))?;
    let mut doc = GridDocument::matrix(
        table.dim,
        &table.values,
        format!("wigner of {}", a.input.display()),
    );
    doc.grid_kind = Some("wigner".into());
    doc.basis = Some("phase-space (m, n)".into());
    doc.trace = Some(pair(table.trace));
    doc.sum = Some(pair(table.total));
    doc.real = Some(table.real);
    write_atomic(&a.out, doc.to_json().as_bytes())?;
    let _ = writeln!(
        out,
        "wrote {} (trace {:.6}, sum {:.6})",
        a.out.display(),
        table.trace,
        table.total
    );
    Ok(EXIT_PASS)
}

#[derive(serde::Serialize)]
struct QoscDocument {
    format_version: u64,
    grid_kind: &'static str,
    dim: usize,
    operators: Vec<GridDocument>,
}

pub fn cmd_qosc(a: &QoscArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let osc = build_qosc(a.n).map_err(|e| usage(e.to_string()))?;
    let tol = tolerance()?.unwrap_or_else(|| q_relation_tolerance(a.n));
    let report = verify_q_relation_with(&osc, tol);

    let mut text = String::new();
    let _ = writeln!(text, "N = {}, omega = {}", a.n, osc.omega());
    let _ = writeln!(text, "{:>5}  {:>24}", "k", "s(k)");
    for (k, s) in osc.ladder_coefficients().iter().enumerate() {
        let _ = writeln!(text, "{k:>5}  {s:>24.17}");
    }
    let _ = writeln!(
        text,
        "max |a a† - omega a† a - omega^-N| = {:.3e} (tolerance {:.1e}): {}",
        report.max_abs_deviation,
        tol,
        if report.passed() { "pass" } else { "FAIL" }
    );
    let _ = out.write_all(text.as_bytes());

    if let Some(path) = &a.out {
        let a_dag = osc.a_dagger().to_dense();
        let doc = QoscDocument {
            format_version: format::FORMAT_VERSION,
            grid_kind: "qosc",
            dim: a.n,
            operators: vec![
                GridDocument::matrix(a.n, osc.a().entries(), "a"),
                GridDocument::matrix(a.n, a_dag.entries(), "a_dagger"),
            ],
        };
        let mut json = serde_json::to_string_pretty(&doc).expect("document serializes");
        json.push('\n');
        write_atomic(path, json.as_bytes())?;
    }
    Ok(if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

pub fn cmd_factor(a: &FactorArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    require_dim(a.n)?;
    let fs = build_factor_system(a.n as u64).map_err(|e| usage(e.to_string()))?;
    let pairs = sub_pairs(&fs).map_err(|e| usage(e.to_string()))?;
    let order = 2 * a.n as u64;
    let mut ok = true;
    let mut text = String::new();
    let _ = writeln!(text, "N = {} = {:?}", a.n, fs.factors());
    for p in &pairs {
        let _ = writeln!(
            text,
            "  P = {:>3}: U_l = U^{}, V_l = V^{}",
            p.prime, p.shift_exponent, p.clock_exponent
        );
    }
    for va in &pairs {
        for ub in &pairs {
            let expected = if va.index == ub.index {
                order / va.prime
            } else {
                0
            };
            let got = exchange_phase(&va.v, &ub.u);
            let good = got.map(|g| g.exponent()) == Some(expected);
            ok &= good;
            let shown = got.map(|g| g.to_string()).unwrap_or_else(|| "none".into());
            let _ = writeln!(
                text,
                "  V(P={}) U(P={}) = {} U V  [{}]",
                va.prime,
                ub.prime,
                shown,
                if good { "ok" } else { "MISMATCH" }
            );
        }
    }
    let mut worst: f64 = 0.0;
    for m in 0..a.n as u64 {
        for n in 0..a.n as u64 {
            let cmp = compare_with_direct(&fs, m, n).map_err(|e| usage(e.to_string()))?;
            worst = worst.max(cmp.hs_distance);
        }
    }
    let tol = tolerance()?.unwrap_or(crate::tolerance::DEFAULT_TOLERANCE);
    ok &= worst <= tol;
    let _ = writeln!(
        text,
        "  max HS distance factorized vs direct S1 (after phase alignment): {worst:.3e}"
    );
    let _ = out.write_all(text.as_bytes());
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

/// Convenience wrapper used by the binary.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}
