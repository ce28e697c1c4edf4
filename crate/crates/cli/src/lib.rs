//! Command-line front end for the root-locus toolkit.
//!
//! Six subcommands over the core library, emitting CSV or JSON. Exit codes:
//! 0 success, 1 verification failure (a residual exceeded its tolerance),
//! 2 usage error, 3 numerical or I/O failure.

pub mod output;
pub mod parse;

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Once;

use clap::{ArgGroup, Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use rootlocus_core::rootfind::DEGREE_CAP;
use rootlocus_core::{
    cross_check, double_discriminant_example, q_discriminant_closed, q_discriminant_definition,
    quotient_locus_residual, quotients_at_root, root_locus_residual, sample_locus, verify_theorem,
    Complex64, ComplexPolynomial, Component, Degree, LocusReport, LocusSpec, RegimeKind,
    TrinomialFamily, Window,
};

use output::{cell_opt, emit, fmt_float, render_csv, render_json, resolve_format, Format, Table};
use parse::{parse_complex, parse_complex_list, parse_m_range, parse_window};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<rootlocus_core::Error> for CliError {
    fn from(e: rootlocus_core::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "rootlocus",
    version,
    about = "Roots and root loci of polynomial sequences generated by 1/(1 + B(z)t + A(z)t^n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots of H_m with their distance to the predicted locus
    Roots(RootsArgs),
    /// Root quotients of the denominator at each H_m root
    Quotients(QuotientsArgs),
    /// Samples of a predicted locus curve
    Curve(CurveArgs),
    /// Per-m verification report over a range of m
    Verify(VerifyArgs),
    /// The worked quadratic family B = z^2 - 2z + a, A = z^2
    Example(ExampleArgs),
    /// q-discriminant of 1 + Bt + At^n: closed form vs definition
    Qdisc(QdiscArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// Power of t multiplying A(z) in the denominator
    #[arg(long)]
    n: usize,
    /// Coefficients of A(z), ascending degree, comma separated
    #[arg(long = "A", value_name = "LIST", allow_hyphen_values = true)]
    a: String,
    /// Coefficients of B(z), ascending degree, comma separated
    #[arg(long = "B", value_name = "LIST", allow_hyphen_values = true)]
    b: String,
}

impl FamilyArgs {
    fn family(&self, max_n: usize) -> Result<TrinomialFamily, CliError> {
        if !(2..=max_n).contains(&self.n) {
            return Err(CliError::Usage(format!(
                "--n must be between 2 and {max_n}, got {}",
                self.n
            )));
        }
        let a = parse_poly(&self.a)?;
        let b = parse_poly(&self.b)?;
        TrinomialFamily::new(a, b, self.n).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output file; without it, data goes to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; defaults to csv, or to the --out extension
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct RootsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Degree index: `M` or an inclusive range `LO..HI`
    #[arg(long, value_name = "M|LO..HI")]
    m: String,
    /// Residual tolerance for the verification verdict
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct QuotientsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Degree index: `M` or an inclusive range `LO..HI`
    #[arg(long, value_name = "M|LO..HI")]
    m: String,
    /// Residual tolerance for the verification verdict
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("locus").required(true).args(["quotient", "root"])))]
struct CurveArgs {
    /// Sample the quotient locus in the q-plane
    #[arg(long)]
    quotient: bool,
    /// Sample the predicted root locus of a family (needs --A and --B)
    #[arg(long)]
    root: bool,
    /// Power of t multiplying A(z) in the denominator
    #[arg(long)]
    n: usize,
    /// Coefficients of A(z), ascending degree (root locus only)
    #[arg(long = "A", value_name = "LIST", allow_hyphen_values = true)]
    a: Option<String>,
    /// Coefficients of B(z), ascending degree (root locus only)
    #[arg(long = "B", value_name = "LIST", allow_hyphen_values = true)]
    b: Option<String>,
    /// Sampling window `re_min,re_max,im_min,im_max` (root locus only)
    #[arg(long, value_name = "R0,R1,I0,I1", allow_hyphen_values = true)]
    window: Option<String>,
    /// Degree used to derive a window when --window is absent
    #[arg(long, default_value_t = 40)]
    m: usize,
    /// Number of curve samples
    #[arg(long, default_value_t = 256)]
    samples: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Degree index: `M` or an inclusive range `LO..HI`
    #[arg(long, value_name = "M|LO..HI")]
    m: String,
    /// Normalized residual tolerance per m
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ExampleArgs {
    /// Real parameter a in B = z^2 - 2z + a
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// Degree index for the cross-check
    #[arg(long, default_value_t = 40)]
    m: usize,
    /// Tolerance for the regime-specific residuals
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    /// Print the regime classification and the double discriminant
    #[arg(long)]
    report: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct QdiscArgs {
    /// Power of t in the trinomial (2, 3, or 4)
    #[arg(long)]
    n: usize,
    /// Constant A, a complex literal
    #[arg(long = "A", allow_hyphen_values = true)]
    a: String,
    /// Constant B, a complex literal
    #[arg(long = "B", allow_hyphen_values = true)]
    b: String,
    /// Evaluation point q, a nonzero complex literal
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[command(flatten)]
    out: OutArgs,
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code. The binary wraps this; tests call it in process.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    init_threads();
    let result = match cli.command {
        Command::Roots(args) => cmd_roots(args),
        Command::Quotients(args) => cmd_quotients(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Example(args) => cmd_example(args),
        Command::Qdisc(args) => cmd_qdisc(args),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            EXIT_NUMERICAL
        }
    }
}

/// Caps the global rayon pool from ROOTLOCUS_THREADS (once per process).
fn init_threads() {
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        if let Ok(v) = std::env::var("ROOTLOCUS_THREADS") {
            if let Ok(k) = v.trim().parse::<usize>() {
                if k >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
                }
            }
        }
    });
}

fn parse_poly(text: &str) -> Result<ComplexPolynomial, CliError> {
    parse_complex_list(text)
        .map(ComplexPolynomial::new)
        .map_err(CliError::Usage)
}

fn finite_degree(p: &ComplexPolynomial) -> usize {
    match p.degree() {
        Degree::Finite(d) => d,
        Degree::MinusInfinity => 0,
    }
}

/// Parses the `--m` value and rejects ranges whose top degree would blow the
/// solver's degree cap before any work starts.
fn collect_ms(text: &str, family: &TrinomialFamily) -> Result<Vec<usize>, CliError> {
    let range = parse_m_range(text).map_err(CliError::Usage)?;
    let step = finite_degree(family.a()).max(finite_degree(family.b())).max(1);
    let hi = *range.end();
    if step * hi > DEGREE_CAP {
        return Err(CliError::Usage(format!(
            "m = {hi} gives degree up to {} which exceeds the solver cap {DEGREE_CAP}",
            step * hi
        )));
    }
    Ok(range.collect())
}

/// Verification reports for every m, computed in parallel, returned in
/// ascending m order.
fn run_reports(
    family: &TrinomialFamily,
    ms: &[usize],
    tol: f64,
) -> Result<Vec<LocusReport>, CliError> {
    ms.par_iter()
        .map(|&m| verify_theorem(family, m, tol))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::from)
}

fn poly_json(p: &ComplexPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(|c| json!([c.re, c.im])).collect())
}

fn family_meta(family: &TrinomialFamily) -> Value {
    json!({
        "n": family.n(),
        "a": poly_json(family.a()),
        "b": poly_json(family.b()),
    })
}

fn m_meta(ms: &[usize]) -> Value {
    if ms.len() == 1 {
        Value::from(ms[0].to_string())
    } else {
        Value::from(format!("{}..{}", ms[0], ms[ms.len() - 1]))
    }
}

fn write_table(table: &Table, meta: Value, out: &OutArgs) -> Result<(), CliError> {
    let format = resolve_format(out.format, out.out.as_deref());
    let text = match format {
        Format::Csv => render_csv(table),
        Format::Json => render_json(meta, table),
    };
    emit(&text, out.out.as_deref())
        .map_err(|e| CliError::Numerical(format!("cannot write output: {e}")))
}

/// `re±imi` with the same 17-digit floats as the CSV cells.
fn fmt_complex(z: Complex64) -> String {
    let (sign, im) = if z.im < 0.0 { ("-", -z.im) } else { ("+", z.im) };
    format!("{}{}{}i", fmt_float(z.re), sign, fmt_float(im))
}

fn exit_from_reports(reports: &[LocusReport]) -> i32 {
    if reports.iter().all(|r| r.passed || r.conjectural) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

fn cmd_roots(args: RootsArgs) -> Result<i32, CliError> {
    let family = args.family.family(5)?;
    let ms = collect_ms(&args.m, &family)?;
    let reports = run_reports(&family, &ms, args.tol)?;
    let mut table = Table::new(&["m", "re", "im", "residual", "a_abs"]);
    for report in &reports {
        for rec in &report.records {
            table.push(vec![
                Value::from(report.m),
                Value::from(rec.z.re),
                Value::from(rec.z.im),
                cell_opt(rec.residual),
                Value::from(rec.a_abs),
            ]);
        }
    }
    let meta = json!({
        "command": "roots",
        "version": env!("CARGO_PKG_VERSION"),
        "family": family_meta(&family),
        "m": m_meta(&ms),
        "tol": args.tol,
    });
    write_table(&table, meta, &args.out)?;
    Ok(exit_from_reports(&reports))
}

fn cmd_quotients(args: QuotientsArgs) -> Result<i32, CliError> {
    let family = args.family.family(4)?;
    let ms = collect_ms(&args.m, &family)?;
    let reports = run_reports(&family, &ms, args.tol)?;
    let n = family.n();
    let mut table = Table::new(&["m", "z_re", "z_im", "q_re", "q_im", "locus_residual"]);
    let mut worst: f64 = 0.0;
    for report in &reports {
        for rec in report.records.iter().filter(|r| r.residual.is_some()) {
            let quotients = quotients_at_root(&family, rec.z)?;
            for q in quotients {
                let residual = quotient_locus_residual(n, q)?;
                worst = worst.max(residual);
                table.push(vec![
                    Value::from(report.m),
                    Value::from(rec.z.re),
                    Value::from(rec.z.im),
                    Value::from(q.re),
                    Value::from(q.im),
                    Value::from(residual),
                ]);
            }
        }
    }
    let meta = json!({
        "command": "quotients",
        "version": env!("CARGO_PKG_VERSION"),
        "family": family_meta(&family),
        "m": m_meta(&ms),
        "tol": args.tol,
    });
    write_table(&table, meta, &args.out)?;
    Ok(if worst <= args.tol {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn cmd_curve(args: CurveArgs) -> Result<i32, CliError> {
    if args.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".to_string()));
    }
    let spec = if args.quotient {
        if !(2..=4).contains(&args.n) {
            return Err(CliError::Usage(format!(
                "quotient loci exist for n in {{2, 3, 4}}, got {}",
                args.n
            )));
        }
        LocusSpec::quotient_locus(args.n)?
    } else {
        let a = args
            .a
            .as_deref()
            .ok_or_else(|| CliError::Usage("--root requires --A".to_string()))?;
        let b = args
            .b
            .as_deref()
            .ok_or_else(|| CliError::Usage("--root requires --B".to_string()))?;
        if !(2..=5).contains(&args.n) {
            return Err(CliError::Usage(format!(
                "--n must be between 2 and 5, got {}",
                args.n
            )));
        }
        let family = TrinomialFamily::new(parse_poly(a)?, parse_poly(b)?, args.n)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let window = match &args.window {
            Some(text) => parse_window(text).map_err(CliError::Usage)?,
            None => {
                let report = verify_theorem(&family, args.m, 1e-6)?;
                Window::around(&report.accepted_roots()).ok_or_else(|| {
                    CliError::Numerical(
                        "no accepted roots to derive a window from; pass --window".to_string(),
                    )
                })?
            }
        };
        LocusSpec::root_locus(family, Some(window))
    };
    let points = sample_locus(&spec, args.samples)?;
    let mut table = Table::new(&["re", "im", "residual"]);
    for z in &points {
        let residual = match &spec {
            LocusSpec::QuotientLocus { n } => quotient_locus_residual(*n, *z)?,
            LocusSpec::RootLocus { family, .. } => root_locus_residual(family, *z)?,
        };
        table.push(vec![
            Value::from(z.re),
            Value::from(z.im),
            Value::from(residual),
        ]);
    }
    let meta = match &spec {
        LocusSpec::QuotientLocus { n } => json!({
            "command": "curve",
            "version": env!("CARGO_PKG_VERSION"),
            "kind": "quotient",
            "n": n,
            "samples": args.samples,
        }),
        LocusSpec::RootLocus { family, window } => json!({
            "command": "curve",
            "version": env!("CARGO_PKG_VERSION"),
            "kind": "root",
            "family": family_meta(family),
            "window": window.map(|w| json!([w.re_min, w.re_max, w.im_min, w.im_max])),
            "samples": args.samples,
        }),
    };
    write_table(&table, meta, &args.out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let family = args.family.family(5)?;
    let ms = collect_ms(&args.m, &family)?;
    let reports = run_reports(&family, &ms, args.tol)?;
    for r in &reports {
        let hausdorff = r
            .hausdorff_to_locus
            .map(|h| format!("{h:.3e}"))
            .unwrap_or_else(|| "-".to_string());
        let status = match (r.passed, r.conjectural) {
            (true, false) => "PASS",
            (true, true) => "PASS (conjectural)",
            (false, true) => "FAIL (conjecture violation candidate)",
            (false, false) => "FAIL",
        };
        println!(
            "m={:<3} n={} roots={} accepted={} max_residual={:.3e} normalized={:.3e} hausdorff={} {}",
            r.m,
            r.n,
            r.total_roots,
            r.total_roots - r.filtered_roots,
            r.max_residual,
            r.max_normalized_residual,
            hausdorff,
            status
        );
    }
    let failures = reports.iter().filter(|r| !r.passed).count();
    let conjectural = reports.iter().any(|r| r.conjectural);
    if failures == 0 {
        println!(
            "verify: PASS ({}/{} m values within tol={:e})",
            reports.len(),
            reports.len(),
            args.tol
        );
    } else if conjectural {
        println!(
            "verify: {failures}/{} conjecture violation candidates (informational, n=5)",
            reports.len()
        );
    } else {
        println!(
            "verify: FAIL ({failures}/{} m values exceeded tol={:e})",
            reports.len(),
            args.tol
        );
    }
    if args.out.out.is_some() || args.out.format.is_some() {
        let mut table = Table::new(&[
            "m",
            "n",
            "total_roots",
            "accepted",
            "filtered",
            "max_residual",
            "max_normalized_residual",
            "hausdorff",
            "conjectural",
            "passed",
        ]);
        for r in &reports {
            table.push(vec![
                Value::from(r.m),
                Value::from(r.n),
                Value::from(r.total_roots),
                Value::from(r.total_roots - r.filtered_roots),
                Value::from(r.filtered_roots),
                Value::from(r.max_residual),
                Value::from(r.max_normalized_residual),
                cell_opt(r.hausdorff_to_locus),
                Value::from(r.conjectural),
                Value::from(r.passed),
            ]);
        }
        let meta = json!({
            "command": "verify",
            "version": env!("CARGO_PKG_VERSION"),
            "family": family_meta(&family),
            "m": m_meta(&ms),
            "tol": args.tol,
        });
        write_table(&table, meta, &args.out)?;
    }
    if conjectural {
        Ok(EXIT_OK)
    } else {
        Ok(exit_from_reports(&reports))
    }
}

fn regime_name(kind: RegimeKind) -> &'static str {
    match kind {
        RegimeKind::TwoRealIntervals => "two real intervals",
        RegimeKind::HalfCircleAndInterval => "half circle and interval",
        RegimeKind::TwoArcs => "two arcs",
    }
}

fn cmd_example(args: ExampleArgs) -> Result<i32, CliError> {
    let report = cross_check(args.a, args.m, args.tol)?;
    if args.report {
        println!(
            "a = {} regime: {}",
            args.a,
            regime_name(report.regime.kind)
        );
        for component in &report.regime.components {
            match *component {
                Component::CircleArc {
                    radius,
                    x_min,
                    x_max,
                } => println!(
                    "  component: circle |z| = {radius} with {x_min} <= Re z <= {x_max}"
                ),
                Component::RealInterval { lo, hi } => {
                    println!("  component: real interval [{lo}, {hi}]")
                }
            }
        }
        let dd = double_discriminant_example(args.a)?;
        let scale = 1.0 + 4096.0 * args.a.abs().powi(3) * (args.a.abs() + 4.0);
        if dd.abs() <= 1e-9 * scale {
            println!(
                "  double discriminant 4096 a^3 (a - 4) = 0 (vanishes: a = {} is a regime boundary)",
                args.a
            );
        } else {
            println!("  double discriminant 4096 a^3 (a - 4) = {dd:.6e}");
        }
    }
    let locus = &report.locus;
    println!(
        "example a={} m={} roots={} accepted={} max_locus_residual={:.3e} max_example_residual={:.3e} {}",
        args.a,
        args.m,
        locus.total_roots,
        locus.total_roots - locus.filtered_roots,
        locus.max_residual,
        report.max_example_residual,
        if report.passed { "PASS" } else { "FAIL" }
    );
    if args.out.out.is_some() || args.out.format.is_some() {
        let mut table = Table::new(&["m", "re", "im", "residual", "a_abs", "example_residual"]);
        let mut example_iter = report.example_residuals.iter();
        for rec in &locus.records {
            let example = if rec.residual.is_some() {
                example_iter.next().copied()
            } else {
                None
            };
            table.push(vec![
                Value::from(locus.m),
                Value::from(rec.z.re),
                Value::from(rec.z.im),
                cell_opt(rec.residual),
                Value::from(rec.a_abs),
                cell_opt(example),
            ]);
        }
        let meta = json!({
            "command": "example",
            "version": env!("CARGO_PKG_VERSION"),
            "a": args.a,
            "m": args.m,
            "tol": args.tol,
            "regime": regime_name(report.regime.kind),
        });
        write_table(&table, meta, &args.out)?;
    }
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn cmd_qdisc(args: QdiscArgs) -> Result<i32, CliError> {
    if !(2..=4).contains(&args.n) {
        return Err(CliError::Usage(format!(
            "closed forms exist for n in {{2, 3, 4}}, got {}",
            args.n
        )));
    }
    let a0 = parse_complex(&args.a).map_err(CliError::Usage)?;
    let b0 = parse_complex(&args.b).map_err(CliError::Usage)?;
    let q = parse_complex(&args.q).map_err(CliError::Usage)?;
    if q.norm() <= 1e-12 {
        return Err(CliError::Usage("--q must be nonzero".to_string()));
    }
    let closed = q_discriminant_closed(a0, b0, args.n, q)?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); args.n + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    coeffs[1] += b0;
    coeffs[args.n] += a0;
    let p = ComplexPolynomial::new(coeffs);
    let definition = q_discriminant_definition(&p, q)?;
    let diff = (closed - definition).norm();
    let scale = closed.norm().max(definition.norm()).max(f64::MIN_POSITIVE);
    let rel = diff / scale;
    println!(
        "q-discriminant of 1 + Bt + At^{} at q = {}",
        args.n,
        fmt_complex(q)
    );
    println!("  closed form = {}", fmt_complex(closed));
    println!("  definition  = {}", fmt_complex(definition));
    println!("  |difference| = {diff:.3e} (relative {rel:.3e})");
    if args.out.out.is_some() || args.out.format.is_some() {
        let mut table = Table::new(&[
            "n",
            "a_re",
            "a_im",
            "b_re",
            "b_im",
            "q_re",
            "q_im",
            "closed_re",
            "closed_im",
            "definition_re",
            "definition_im",
            "abs_difference",
        ]);
        table.push(vec![
            Value::from(args.n),
            Value::from(a0.re),
            Value::from(a0.im),
            Value::from(b0.re),
            Value::from(b0.im),
            Value::from(q.re),
            Value::from(q.im),
            Value::from(closed.re),
            Value::from(closed.im),
            Value::from(definition.re),
            Value::from(definition.im),
            Value::from(diff),
        ]);
        let meta = json!({
            "command": "qdisc",
            "version": env!("CARGO_PKG_VERSION"),
            "n": args.n,
            "a": [a0.re, a0.im],
            "b": [b0.re, b0.im],
            "q": [q.re, q.im],
        });
        write_table(&table, meta, &args.out)?;
    }
    Ok(if rel <= 1e-7 {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}
