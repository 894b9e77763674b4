//! Command-line front end: load symbols, run norm computations and the
//! verification suite, emit JSON/CSV/text reports.
//!
//! Exit codes: 0 all checks pass, 1 an identity or inequality check failed,
//! 2 usage, configuration, or parse error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use ordered_harmonics::bmo::{sandwich_verify, BmoReport, InequalityCheck};
use ordered_harmonics::config::RunConfig;
use ordered_harmonics::hankel::{gamma_kernel, gamma_matrix, hankel_matrix};
use ordered_harmonics::order::{ConeSelect, OrderSpec};
use ordered_harmonics::poly::TrigPoly;
use ordered_harmonics::transforms::hilbert;
use ordered_harmonics::verify::{run_suite, SuiteRun, VerifyOptions, VerifyReport};
use ordered_harmonics::{CharacterIndex, Error};

#[derive(Parser)]
#[command(
    name = "ordered-harmonics",
    version,
    about = "Hilbert transform, Hardy projections, Hankel operators and BMO bounds \
             on the torus with an ordered frequency lattice"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full identity/inequality suite on a seeded corpus.
    ///
    /// Without --n, runs the circle (n=1) and the two-torus (n=2) corpora.
    Verify(CommonArgs),
    /// Truncated Hankel norms and the bounded-symbol check for one symbol.
    HankelNorm {
        /// Symbol file (JSON: {"n":1,"terms":[{"k":[-1],"re":1.0,"im":0.0}]})
        #[arg(long)]
        symbol: PathBuf,
        /// Also compute the sequence-realization norm (needs a least
        /// positive element).
        #[arg(long)]
        gamma: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Norm sandwich report (lower and upper BMO-type bounds) for a symbol.
    Bmo {
        /// Symbol file (JSON)
        #[arg(long)]
        symbol: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Worked examples on the circle with their pinned expected values.
    Demo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderKindArg {
    Lex,
    Functional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Order kind on the frequency lattice.
    #[arg(long, value_enum)]
    order: Option<OrderKindArg>,
    /// Coefficients of the functional order, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    /// Lattice dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Grid points per dimension.
    #[arg(long)]
    grid: Option<usize>,
    /// Truncation box radius.
    #[arg(long = "box")]
    box_radius: Option<i64>,
    /// Relative tolerance of the singular-value iteration.
    #[arg(long)]
    tol: Option<f64>,
    /// Subgradient iterations for the decomposition solver.
    #[arg(long)]
    iters: Option<usize>,
    /// Seed for corpus generation.
    #[arg(long)]
    seed: Option<u64>,
    /// JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the JSON report to this path as well.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Stdout format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Anything that should terminate the process with a specific code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InequalityViolated { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("ORDERED_HARMONICS_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Verify(common) => cmd_verify(common),
        Cmd::HankelNorm {
            symbol,
            gamma,
            common,
        } => cmd_hankel_norm(&symbol, gamma, common),
        Cmd::Bmo { symbol, common } => cmd_bmo(&symbol, common),
        Cmd::Demo => cmd_demo(),
    }
}

/// Merge a config file (if any) with explicit flags; flags win.
fn build_config(args: &CommonArgs) -> Result<RunConfig, Failure> {
    let mut cfg: RunConfig = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("config parse error: {e}")))?
        }
        None => RunConfig::default(),
    };

    match (args.order, &args.alpha) {
        (Some(OrderKindArg::Functional), Some(alpha)) => {
            cfg.order = OrderSpec::functional(alpha.clone())?;
        }
        (Some(OrderKindArg::Functional), None) => {
            return Err(Failure::usage(
                "--order functional requires --alpha with the coefficient list",
            ));
        }
        (Some(OrderKindArg::Lex), _) => {
            let n = args.n.unwrap_or(cfg.order.dim());
            cfg.order = OrderSpec::lex(n)?;
        }
        (None, Some(alpha)) => {
            cfg.order = OrderSpec::functional(alpha.clone())?;
        }
        (None, None) => {
            if let Some(n) = args.n {
                if matches!(cfg.order, OrderSpec::Functional { .. }) {
                    return Err(Failure::usage(
                        "--n cannot resize a functional order; pass --alpha",
                    ));
                }
                cfg.order = OrderSpec::lex(n)?;
            }
        }
    }
    if let (Some(n), OrderSpec::Functional { alpha, .. }) = (args.n, &cfg.order) {
        if n != alpha.len() {
            return Err(Failure::usage(format!(
                "--n {n} contradicts the {}-dimensional functional order",
                alpha.len()
            )));
        }
    }

    if let Some(g) = args.grid {
        cfg.grid_points = Some(g);
    }
    if let Some(r) = args.box_radius {
        cfg.box_radius = Some(r);
    }
    if let Some(t) = args.tol {
        cfg.power_tol = t;
    }
    if let Some(it) = args.iters {
        cfg.solver_iters = Some(it);
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn load_symbol(path: &PathBuf, expected_dim: usize) -> Result<TrigPoly, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let poly = TrigPoly::from_json(&text)?;
    if poly.dim() != expected_dim {
        return Err(Failure::usage(format!(
            "symbol has dimension {}, the configured order has dimension {}",
            poly.dim(),
            expected_dim
        )));
    }
    Ok(poly)
}

fn emit(
    json: &str,
    format: Format,
    json_path: &Option<PathBuf>,
    text: impl FnOnce() -> String,
    csv: impl FnOnce() -> String,
) -> Result<(), Failure> {
    if let Some(path) = json_path {
        fs::write(path, json)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    match format {
        Format::Json => println!("{json}"),
        Format::Text => {
            print!("{}", text());
            let mut hasher = Sha256::new();
            hasher.update(json.as_bytes());
            println!("report sha256: {:x}", hasher.finalize());
        }
        Format::Csv => print!("{}", csv()),
    }
    Ok(())
}

fn cmd_verify(common: CommonArgs) -> Result<u8, Failure> {
    // A single explicit order runs one suite; the default runs the circle
    // and the two-torus.
    let explicit = common.order.is_some()
        || common.alpha.is_some()
        || common.n.is_some()
        || common.config.is_some();
    let configs: Vec<RunConfig> = if explicit {
        vec![build_config(&common)?]
    } else {
        let base = build_config(&common)?;
        [1usize, 2]
            .iter()
            .map(|&n| {
                let mut cfg = base.clone();
                cfg.order = OrderSpec::Lex { n };
                cfg
            })
            .collect()
    };

    let seed = configs.first().map(|c| c.seed).unwrap_or_default();
    let mut runs: Vec<SuiteRun> = Vec::new();
    for cfg in &configs {
        let mut opts = VerifyOptions::from_config(cfg)?;
        if let Some(iters) = cfg.solver_iters {
            opts.sandwich.solver.iterations = iters;
        }
        runs.push(run_suite(&opts)?);
    }
    let report = VerifyReport::aggregate(seed, runs);
    let json = report.to_json();

    emit(
        &json,
        common.format,
        &common.json,
        || verify_text(&report),
        || verify_csv(&report),
    )?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn order_label(order: &OrderSpec) -> String {
    match order {
        OrderSpec::Lex { n } => format!("lex n={n}"),
        OrderSpec::Functional { n, .. } => format!("functional n={n}"),
    }
}

fn verify_text(report: &VerifyReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for run in &report.runs {
        let label = order_label(&run.order);
        for item in &run.items {
            let status = match item.status {
                ordered_harmonics::verify::CheckStatus::Pass => "PASS",
                ordered_harmonics::verify::CheckStatus::Fail => "FAIL",
                ordered_harmonics::verify::CheckStatus::Skipped => "SKIP",
            };
            let _ = write!(
                out,
                "{status} {name} [{label}] checked={checked} failures={failures} max_error={err:.3e}",
                name = item.name,
                checked = item.checked,
                failures = item.failures,
                err = item.max_error,
            );
            if let Some(detail) = &item.detail {
                let _ = write!(out, " ({detail})");
            }
            out.push('\n');
        }
    }
    let _ = writeln!(
        out,
        "summary: {} passed, {} failed, {} skipped (seed {})",
        report.passed, report.failed, report.skipped, report.seed
    );
    out
}

fn verify_csv(report: &VerifyReport) -> String {
    use std::fmt::Write;
    let mut out = String::from("order,check,status,checked,failures,max_error,slack\n");
    for run in &report.runs {
        let label = order_label(&run.order);
        for item in &run.items {
            let status = match item.status {
                ordered_harmonics::verify::CheckStatus::Pass => "pass",
                ordered_harmonics::verify::CheckStatus::Fail => "fail",
                ordered_harmonics::verify::CheckStatus::Skipped => "skipped",
            };
            let _ = writeln!(
                out,
                "{label},{},{status},{},{},{:.6e},{:.6e}",
                item.name, item.checked, item.failures, item.max_error, item.slack
            );
        }
    }
    out
}

#[derive(Serialize)]
struct HankelNormReport {
    n: usize,
    /// Truncated `‖H_φ‖`.
    direct: f64,
    /// Truncated `‖H_φ̄‖`.
    conj: f64,
    /// `‖H_φ̄‖ + ‖H_φ‖`.
    total: f64,
    /// Grid lower bound of `‖φ‖∞`.
    sup_estimate: f64,
    /// Bounded-symbol check `‖H_φ‖ <= sup + slack`.
    bounded_symbol: InequalityCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma_norm: Option<f64>,
}

fn cmd_hankel_norm(symbol: &PathBuf, gamma: bool, common: CommonArgs) -> Result<u8, Failure> {
    let cfg = build_config(&common)?;
    let phi = load_symbol(symbol, cfg.order.dim())?;
    let order = &cfg.order;
    let trunc = cfg.trunc_box();
    let rows = order.enumerate_cone(&trunc, ConeSelect::Negative)?;
    let cols = order.enumerate_cone(&trunc, ConeSelect::NonNegative)?;

    let direct = hankel_matrix(order, &phi, &rows, &cols)?
        .operator_norm(cfg.power_tol, cfg.power_max_iters)?
        .value;
    let conj = hankel_matrix(order, &phi.conj(), &rows, &cols)?
        .operator_norm(cfg.power_tol, cfg.power_max_iters)?
        .value;
    let sup = phi.sup_norm_lower(&cfg.grid()?)?;

    // Sound direction of the bounded-symbol theorem at truncation scale.
    let allowed = cfg.slack_fraction * sup.max(phi.l2_norm());
    let bounded_symbol = InequalityCheck {
        name: "hankel-le-sup".into(),
        lhs: direct,
        rhs: sup,
        allowed_slack: allowed,
        pass: direct <= sup + allowed,
    };

    let gamma_norm = if gamma {
        let kernel = gamma_kernel(order, &phi)?;
        Some(
            gamma_matrix(order, &kernel, &trunc)?
                .operator_norm(cfg.power_tol, cfg.power_max_iters)?
                .value,
        )
    } else {
        None
    };

    let report = HankelNormReport {
        n: phi.dim(),
        direct,
        conj,
        total: direct + conj,
        sup_estimate: sup,
        bounded_symbol,
        gamma_norm,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serialization");
    let ok = report.bounded_symbol.pass;
    emit(
        &json,
        common.format,
        &common.json,
        || {
            let mut out = format!(
                "direct norm   |H_phi|     = {:.12}\n\
                 conjugate     |H_phibar|  = {:.12}\n\
                 seminorm      sum         = {:.12}\n\
                 sup estimate  |phi|_inf  >= {:.12}\n\
                 bounded-symbol check: {} (lhs {:.6e} <= rhs {:.6e} + slack {:.1e})\n",
                report.direct,
                report.conj,
                report.total,
                report.sup_estimate,
                if report.bounded_symbol.pass { "PASS" } else { "FAIL" },
                report.bounded_symbol.lhs,
                report.bounded_symbol.rhs,
                report.bounded_symbol.allowed_slack,
            );
            if let Some(g) = report.gamma_norm {
                out.push_str(&format!("sequence-form norm      = {g:.12}\n"));
            }
            out
        },
        || {
            let mut out = String::from("key,value\n");
            out.push_str(&format!("direct,{:.12e}\n", report.direct));
            out.push_str(&format!("conj,{:.12e}\n", report.conj));
            out.push_str(&format!("total,{:.12e}\n", report.total));
            out.push_str(&format!("sup_estimate,{:.12e}\n", report.sup_estimate));
            out.push_str(&format!("bounded_symbol_pass,{}\n", report.bounded_symbol.pass));
            if let Some(g) = report.gamma_norm {
                out.push_str(&format!("gamma_norm,{g:.12e}\n"));
            }
            out
        },
    )?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_bmo(symbol: &PathBuf, common: CommonArgs) -> Result<u8, Failure> {
    let cfg = build_config(&common)?;
    let phi = load_symbol(symbol, cfg.order.dim())?;
    let sandwich_cfg = cfg.sandwich(2000)?;
    let report: BmoReport = sandwich_verify(&cfg.order, &phi, &sandwich_cfg)?;
    let json = serde_json::to_string_pretty(&report).expect("report serialization");
    let ok = report.all_passed();
    emit(
        &json,
        common.format,
        &common.json,
        || {
            use std::fmt::Write;
            let mut out = String::new();
            let _ = writeln!(out, "analytic type:        {}", report.analytic);
            let _ = writeln!(out, "hankel lower bound:   {:.12}", report.hankel_total);
            let _ = writeln!(out, "  direct part:        {:.12}", report.hankel_direct);
            let _ = writeln!(out, "  conjugate part:     {:.12}", report.hankel_conj);
            if let Some(a) = report.analytic_seminorm {
                let _ = writeln!(out, "  analytic seminorm:  {a:.12}");
            }
            let _ = writeln!(out, "star upper bound:     {:.12}", report.star_upper);
            let _ = writeln!(out, "  constructive:       {:.12}", report.star_constructive);
            let _ = writeln!(out, "sum-style upper:      {:.12}", report.def2_upper);
            let _ = writeln!(
                out,
                "solver: {} iterations, objective {:.6} -> {:.6}",
                report.solver.iterations,
                report.solver.initial_objective,
                report.solver.final_objective
            );
            for check in &report.checks {
                let _ = writeln!(
                    out,
                    "{} {}: {:.9} <= {:.9} (+{:.2e})",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.name,
                    check.lhs,
                    check.rhs,
                    check.allowed_slack
                );
            }
            out
        },
        || {
            let mut out = String::from("key,value\n");
            out.push_str(&format!("analytic,{}\n", report.analytic));
            out.push_str(&format!("hankel_total,{:.12e}\n", report.hankel_total));
            out.push_str(&format!("hankel_direct,{:.12e}\n", report.hankel_direct));
            out.push_str(&format!("hankel_conj,{:.12e}\n", report.hankel_conj));
            out.push_str(&format!("star_upper,{:.12e}\n", report.star_upper));
            out.push_str(&format!("def2_upper,{:.12e}\n", report.def2_upper));
            for check in &report.checks {
                out.push_str(&format!("{},{}\n", check.name, check.pass));
            }
            out
        },
    )?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_demo() -> Result<u8, Failure> {
    let order = OrderSpec::lex(1).map_err(Failure::from)?;
    let k = |v: i64| CharacterIndex::from(&[v][..]);
    let c = |re: f64, im: f64| num_complex::Complex64::new(re, im);
    let mut failures = 0usize;

    println!("worked examples on the circle (lexicographic order, n = 1)\n");

    // Conjugate function of cos is sin.
    let cos = TrigPoly::from_terms(1, [(k(1), c(0.5, 0.0)), (k(-1), c(0.5, 0.0))])?;
    let sin = TrigPoly::from_terms(1, [(k(1), c(0.0, -0.5)), (k(-1), c(0.0, 0.5))])?;
    let transformed = hilbert(&order, &cos)?;
    let ok = transformed == sin;
    failures += usize::from(!ok);
    println!(
        "conjugate of cos(2pix): coefficients (+1: -i/2, -1: +i/2), matches sin: {}",
        if ok { "PASS" } else { "FAIL" }
    );

    // Rank-one Hankel truncation of chi_{-1}: unit norm.
    let trunc = ordered_harmonics::IndexBox::symmetric(1, 6);
    let rows = order.enumerate_cone(&trunc, ConeSelect::Negative)?;
    let cols = order.enumerate_cone(&trunc, ConeSelect::NonNegative)?;
    let phi = TrigPoly::character(&k(-1));
    let norm = hankel_matrix(&order, &phi, &rows, &cols)?
        .operator_norm(1e-10, 100_000)?
        .value;
    let ok = (norm - 1.0).abs() < 1e-9;
    failures += usize::from(!ok);
    println!(
        "rank-one symbol chi(-1): truncated norm {norm:.12}, expected 1 (single unit entry): {}",
        if ok { "PASS" } else { "FAIL" }
    );

    // sin: both Hankel parts are 1/2 (coefficients +-i/2 give rank-one
    // slices of modulus 1/2).
    let direct = hankel_matrix(&order, &sin, &rows, &cols)?
        .operator_norm(1e-10, 100_000)?
        .value;
    let conj = hankel_matrix(&order, &sin.conj(), &rows, &cols)?
        .operator_norm(1e-10, 100_000)?
        .value;
    let ok = (direct - 0.5).abs() < 1e-9 && (conj - 0.5).abs() < 1e-9;
    failures += usize::from(!ok);
    println!(
        "sin symbol: direct part {direct:.12}, conjugate part {conj:.12}, expected 1/2 each: {}",
        if ok { "PASS" } else { "FAIL" }
    );

    // Sandwich for chi(-1) + chi(1).
    let mixed = TrigPoly::from_terms(1, [(k(-1), c(1.0, 0.0)), (k(1), c(1.0, 0.0))])?;
    let cfg = ordered_harmonics::bmo::SandwichConfig::default_for_dim(1)?;
    let report = sandwich_verify(&order, &mixed, &cfg)?;
    let ok = report.all_passed() && report.star_upper <= 1.0 + 1e-9;
    failures += usize::from(!ok);
    println!(
        "chi(-1) + chi(1): hankel lower {:.9}, star upper {:.9} (feasible point max(1,1) = 1), \
         chain checks: {}",
        report.hankel_total,
        report.star_upper,
        if ok { "PASS" } else { "FAIL" }
    );

    Ok(if failures == 0 { 0 } else { 1 })
}
