//! Command-line front end: single-element queries, informational reports,
//! and the verification suites, with machine-readable JSON output.
//!
//! Exit codes: 0 all checks pass, 1 a check was falsified, 2 element
//! expression parse error, 3 configuration error.

mod json;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wittrep_core::analysis::{gaussian_example_report, jordan_type, GaussReport};
use wittrep_core::group::{enumerate_group, parse_element, GroupError};
use wittrep_core::rep::rho_matrix;
use wittrep_core::ring::{FieldContext, FqCtx};

use json::{CheckReport, Status};
use suites::{Suite, SuiteConfig};

const DEFAULT_ENUM_BUDGET: u64 = 2_000_000;
const DEFAULT_PAIR_BUDGET: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "wittrep",
    version,
    about = "Exact arithmetic and verification for SL2 over length-2 Witt vectors"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the representation matrix of a group element expression.
    Rho(RhoArgs),
    /// Run verification suites and print one report per check.
    Verify(VerifyArgs),
    /// Informational reports (element orders, the Gaussian example,
    /// enumeration).
    Report(ReportArgs),
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Prime characteristic.
    #[arg(long)]
    p: u64,
    /// Field size q = p^r (alternative to --r).
    #[arg(long)]
    q: Option<u64>,
    /// Extension degree r (default 1).
    #[arg(long)]
    r: Option<usize>,
    /// Modulus coefficients "c0,c1,...,cr" (monic of degree r).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format; JSON is the stable contract.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RhoArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Element expression, e.g. "X(1,0)*Phi(2)^-1".
    #[arg(long)]
    element: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Comma list of suites, or "all". Suites: witt-iso, group-identities,
    /// faithfulness, weights, distops, lie, filtration, jordan, gauss,
    /// hat-rep.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    suite: Vec<String>,
    /// Enumeration budget in elements (pair sweeps get 5x this value).
    #[arg(long)]
    budget: Option<u64>,
    /// Seed for randomized spot checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReportArgs {
    #[command(subcommand)]
    sub: ReportCmd,
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Order of an element and the Jordan type of its representation
    /// matrix.
    Order {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        element: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The Gaussian-integer example at a prime.
    Gauss {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate the group.
    Enumerate {
        #[command(flatten)]
        field: FieldArgs,
        /// Print only the element count.
        #[arg(long)]
        count_only: bool,
        /// Enumeration budget in elements.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

enum CliError {
    /// Exit 2: element expression errors.
    Element(GroupError),
    /// Exit 3: configuration errors.
    Config(String),
    /// Exit 1: a check was falsified.
    CheckFailed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Element(_) => 2,
            CliError::Config(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Element(e) => format!("{e}"),
            CliError::Config(m) => m.clone(),
            CliError::CheckFailed(m) => format!("check falsified: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wittrep: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Rho(args) => cmd_rho(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Report(args) => match args.sub {
            ReportCmd::Order {
                field,
                element,
                output,
            } => cmd_report_order(field, element, output),
            ReportCmd::Gauss { p, output } => cmd_report_gauss(p, output),
            ReportCmd::Enumerate {
                field,
                count_only,
                budget,
                output,
            } => cmd_report_enumerate(field, count_only, budget, output),
        },
    }
}

fn resolve_ctx(field: &FieldArgs) -> Result<FqCtx, CliError> {
    let p = field.p;
    let r = match (field.r, field.q) {
        (Some(r), None) => r,
        (None, None) => 1,
        (r_opt, Some(q)) => {
            if p < 2 {
                return Err(CliError::Config(format!("{p} is not prime")));
            }
            let mut r = 0usize;
            let mut power = 1u64;
            while power < q {
                power = power
                    .checked_mul(p)
                    .ok_or_else(|| CliError::Config(format!("q = {q} is not a power of p = {p}")))?;
                r += 1;
            }
            if power != q || r == 0 {
                return Err(CliError::Config(format!("q = {q} is not a power of p = {p}")));
            }
            if let Some(r_given) = r_opt {
                if r_given != r {
                    return Err(CliError::Config(format!(
                        "--r {r_given} contradicts --q {q}"
                    )));
                }
            }
            r
        }
    };
    let ctx = match &field.modulus {
        Some(coeffs) => FieldContext::with_modulus(p, r, coeffs),
        None => FieldContext::new(p, r),
    };
    ctx.map_err(|e| CliError::Config(format!("{e}")))
}

fn budget_from(flag: Option<u64>) -> (u64, u64) {
    let env = std::env::var("WITTREP_BUDGET")
        .ok()
        .and_then(|v| v.parse::<u64>().ok());
    match flag.or(env) {
        Some(b) => (b, b.saturating_mul(5)),
        None => (DEFAULT_ENUM_BUDGET, DEFAULT_PAIR_BUDGET),
    }
}

fn emit(output: &OutputArgs, json_value: &Value, text: &str) -> Result<(), CliError> {
    let body = match output.format {
        Format::Json => format!("{json_value:#}"),
        Format::Text => text.to_string(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, body + "\n")
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn cmd_rho(args: RhoArgs) -> Result<(), CliError> {
    let ctx = resolve_ctx(&args.field)?;
    let g = parse_element(&args.element, &ctx).map_err(CliError::Element)?;
    let m = rho_matrix(&g).map_err(|e| CliError::Config(format!("{e}")))?;
    let value = json::rep_matrix_json(&m, ctx.p(), ctx.q());
    let mut text = format!(
        "rho({}) over GF({}), dim {}\nbasis: {}\n",
        args.element,
        ctx.q(),
        m.dim(),
        m.basis().names().join(", ")
    );
    text.push_str(&format!("{}", m.mat()));
    emit(&args.output, &value, &text)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let ctx = resolve_ctx(&args.field)?;
    let (enum_budget, pair_budget) = budget_from(args.budget);
    let cfg = SuiteConfig {
        ctx,
        enum_budget,
        pair_budget,
        seed: args.seed,
    };

    let mut selected: Vec<Suite> = Vec::new();
    for name in &args.suite {
        if name == "all" {
            selected = Suite::ALL.to_vec();
            break;
        }
        match Suite::from_name(name) {
            Some(s) => selected.push(s),
            None => return Err(CliError::Config(format!("unknown suite `{name}`"))),
        }
    }
    // fixed output order regardless of request order
    selected.sort();
    selected.dedup();

    let mut reports: Vec<CheckReport> = Vec::new();
    for suite in &selected {
        reports.extend(suite.run(&cfg));
    }

    let value = serde_json::to_value(&reports).expect("reports serialize");
    let mut text = String::new();
    for r in &reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        text.push_str(&format!(
            "{:<32} p={} q={} {} ({} ms)\n",
            r.check, r.p, r.q, status, r.timing_ms
        ));
        if let Some(w) = &r.witness {
            text.push_str(&format!("    {w}\n"));
        }
    }
    emit(&args.output, &value, text.trim_end())?;

    if let Some(first_fail) = reports.iter().find(|r| r.status == Status::Fail) {
        return Err(CliError::CheckFailed(first_fail.check.clone()));
    }
    Ok(())
}

fn cmd_report_order(
    field: FieldArgs,
    element: String,
    output: OutputArgs,
) -> Result<(), CliError> {
    let ctx = resolve_ctx(&field)?;
    let g = parse_element(&element, &ctx).map_err(CliError::Element)?;
    let order = g.order();
    let m = rho_matrix(&g).map_err(|e| CliError::Config(format!("{e}")))?;
    let jordan = jordan_type(m.mat()).ok();
    let value = json!({
        "element": element,
        "order": order,
        "rho_jordan": jordan.as_ref().map(|jt| json!({
            "partition": jt.partition,
            "order": jt.order,
        })),
    });
    let text = match &jordan {
        Some(jt) => format!(
            "order({element}) = {order}\nrho jordan type: {:?}, matrix order {}",
            jt.partition, jt.order
        ),
        None => format!("order({element}) = {order}\nrho image is not unipotent"),
    };
    emit(&output, &value, &text)
}

fn cmd_report_gauss(p: u64, output: OutputArgs) -> Result<(), CliError> {
    if p > 7 {
        return Err(CliError::Config(format!(
            "Gaussian example runs at p <= 7, got {p}"
        )));
    }
    if p != 2 && FieldContext::new(p, 1).is_err() {
        return Err(CliError::Config(format!("{p} is not prime")));
    }
    let r = gaussian_example_report(p);
    let value = gauss_report_json(&r);
    let text = if let Some(reason) = &r.skipped {
        format!("p = {p}: skipped ({reason})")
    } else {
        format!(
            "p = {p} ({}), residue field size {}, quotient size {} (char {}), compared with {}: iso {}",
            if r.split { "split" } else { "inert" },
            r.residue_field_size,
            r.quotient_size,
            r.quotient_characteristic,
            r.compared_with,
            if r.iso_found { "found" } else { "NOT found" },
        )
    };
    emit(&output, &value, &text)
}

fn cmd_report_enumerate(
    field: FieldArgs,
    count_only: bool,
    budget: Option<u64>,
    output: OutputArgs,
) -> Result<(), CliError> {
    let ctx = resolve_ctx(&field)?;
    let (enum_budget, _) = budget_from(budget);
    let stream =
        enumerate_group(&ctx, enum_budget).map_err(|e| CliError::Config(format!("{e}")))?;
    if count_only {
        let count = stream.count();
        let value = json!({ "q": ctx.q(), "count": count });
        emit(
            &output,
            &value,
            &format!("|SL2(W2(GF({})))| = {count}", ctx.q()),
        )
    } else {
        let elements: Vec<Value> = stream
            .map(|g| {
                json!([
                    json::witt_json(&g.a),
                    json::witt_json(&g.b),
                    json::witt_json(&g.c),
                    json::witt_json(&g.d),
                ])
            })
            .collect();
        let value = json!({ "q": ctx.q(), "count": elements.len(), "elements": elements });
        let text = format!(
            "{} elements (rerun with --count-only for the bare count)",
            elements.len()
        );
        emit(&output, &value, &text)
    }
}

pub(crate) fn gauss_report_json(r: &GaussReport) -> Value {
    json!({
        "p": r.p,
        "split": r.split,
        "factor": r.factor.map(|(a, b)| json!([a, b])),
        "residue_field_size": r.residue_field_size,
        "quotient_size": r.quotient_size,
        "quotient_characteristic": r.quotient_characteristic,
        "compared_with": r.compared_with,
        "iso_found": r.iso_found,
        "generator_image": r.generator_image,
        "skipped": r.skipped,
    })
}
