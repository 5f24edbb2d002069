//! `lchi` — tables, series dumps, chain decompositions, and verification
//! suites for the exact-arithmetic library in `lchi-core`.
//!
//! Exit codes: 0 success, 1 failed verification or coefficient mismatch,
//! 2 usage or invalid parameters, 3 IO failure.

mod json;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use lchi_core::analysis::{self, SuiteConfig, SuiteId, SuiteReport};
use lchi_core::fq::FieldContext;
use lchi_core::lseries::{self, Params};
use lchi_core::render::{self, TableKind};
use lchi_core::{coeffs, decomp, qwords};

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lchi",
    version,
    about = "Exact arithmetic for function-field L-series: coefficient tables, \
             series expansions, chain decompositions, verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic (prime).
    #[arg(long)]
    p: u32,
    /// Extension degree; the field has q = p^e elements.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Exponent s with 1 < s < q.
    #[arg(long)]
    s: u32,
    /// Element a as comma-separated coordinates in the polynomial basis,
    /// constant first ("2", or "1,1" for 1+t in F_4). Defaults to 0.
    #[arg(long)]
    a: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    /// Write the output to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    B,
    C,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Star,
    #[value(alias = "L")]
    L,
    Alpha,
    Pi,
}

#[derive(Subcommand)]
enum Command {
    /// Render a coefficient table (chains, offsets, or monomials).
    Table {
        #[command(flatten)]
        field: FieldArgs,
        /// b: chain values; c: interval offsets; d: coefficient monomials.
        #[arg(long, value_enum)]
        kind: Kind,
        /// Number of trailing zeros in the block [1^m 0^j]_q.
        #[arg(long)]
        j: u32,
        /// Rows to render (m = 1..=m-max).
        #[arg(long = "m-max")]
        m_max: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dump the coefficients of one of the named series.
    Series {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        which: Which,
        /// Number of coefficients to compute.
        #[arg(long)]
        prec: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute one coefficient u(n) by both routes and compare.
    Coeff {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u64,
        /// Series precision; must exceed n.
        #[arg(long)]
        prec: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the chain decomposition of b and list all decompositions.
    Decompose {
        #[command(flatten)]
        field: FieldArgs,
        /// The integer to decompose, in decimal.
        #[arg(long)]
        b: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run verification suites; exit 0 iff all pass.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// Suite names (repeatable or comma-separated); "all" or empty runs
        /// every suite.
        #[arg(long = "suite", value_delimiter = ',')]
        suite: Vec<String>,
        /// Series precision override for star-identity and coeff-bridge.
        #[arg(long)]
        prec: Option<usize>,
        /// Table range override for the table suites.
        #[arg(long = "m-max")]
        m_max: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

type CmdOutput = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out_path, result) = match &cli.command {
        Command::Table { output, .. }
        | Command::Series { output, .. }
        | Command::Coeff { output, .. }
        | Command::Decompose { output, .. }
        | Command::Verify { output, .. } => (output.out.clone(), run(&cli.command)),
    };
    match result {
        Ok((text, code)) => {
            if let Some(path) = out_path {
                if let Err(err) = std::fs::write(&path, text) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return ExitCode::from(EXIT_IO);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: &Command) -> CmdOutput {
    match command {
        Command::Table {
            field,
            kind,
            j,
            m_max,
            output,
        } => cmd_table(field, *kind, *j, *m_max, output),
        Command::Series {
            field,
            which,
            prec,
            output,
        } => cmd_series(field, *which, *prec, output),
        Command::Coeff {
            field,
            n,
            prec,
            output,
        } => cmd_coeff(field, *n, *prec, output),
        Command::Decompose { field, b, output } => cmd_decompose(field, b, output),
        Command::Verify {
            field,
            suite,
            prec,
            m_max,
            output,
        } => cmd_verify(field, suite, *prec, *m_max, output),
    }
}

fn build_ctx(field: &FieldArgs) -> Result<FieldContext, Failure> {
    FieldContext::new(field.p, field.e).map_err(|e| Failure::usage(e.to_string()))
}

fn build_params(field: &FieldArgs) -> Result<Params, Failure> {
    let ctx = build_ctx(field)?;
    let a = match &field.a {
        Some(lit) => render::elem_from_string(&ctx, lit)
            .map_err(|_| Failure::usage(format!("bad element literal '{lit}'")))?,
        None => ctx.zero(),
    };
    Params::new(ctx, field.s, a).map_err(|e| Failure::usage(e.to_string()))
}

fn cmd_table(
    field: &FieldArgs,
    kind: Kind,
    j: u32,
    m_max: u32,
    output: &OutputArgs,
) -> CmdOutput {
    if j == 0 || m_max == 0 {
        return Err(Failure::usage("j and m-max must be at least 1"));
    }
    let params = build_params(field)?;
    let q = params.q();
    let table = decomp::b_table(j, &params, m_max);
    let table_kind = match kind {
        Kind::B => TableKind::B,
        Kind::C => TableKind::C,
        Kind::D => TableKind::D,
    };
    let text = match output.format {
        Format::Ascii => render::grid_ascii(&render::table_grid(table_kind, &table, &params)),
        Format::Csv => render::grid_csv(&render::table_grid(table_kind, &table, &params)),
        Format::Json => match kind {
            Kind::B => {
                let rows = table
                    .rows
                    .iter()
                    .map(|row| json::BRow {
                        m: row.m,
                        cells: row
                            .dec
                            .chain()
                            .iter()
                            .map(|v| qwords::digit_string(v, q))
                            .collect(),
                    })
                    .collect();
                to_json(&json::BTableDoc { j, q, rows })?
            }
            Kind::C => {
                let rows = table
                    .rows
                    .iter()
                    .map(|row| json::CRow {
                        m: row.m,
                        cells: (1..=row.dec.len())
                            .map(|n| row.dec.c_at(n).map(|c| qwords::digit_string(c, q)))
                            .collect(),
                    })
                    .collect();
                to_json(&json::CTableDoc {
                    j,
                    q,
                    s: params.s(),
                    rows,
                })?
            }
            Kind::D => {
                let grid = render::table_grid(TableKind::D, &table, &params);
                let rows = table
                    .rows
                    .iter()
                    .map(|row| json::DRow {
                        m: row.m,
                        cells: (1..=grid.ncols)
                            .map(|n| {
                                let mono = coeffs::d_total(j, row.m, n, &params);
                                json::DCell {
                                    scalar: mono.scalar().to_string(),
                                    exp: mono.exponent().to_string(),
                                }
                            })
                            .collect(),
                    })
                    .collect();
                to_json(&json::DTableDoc {
                    j,
                    q,
                    s: params.s(),
                    rows,
                })?
            }
        },
    };
    Ok((text, 0))
}

fn cmd_series(field: &FieldArgs, which: Which, prec: usize, output: &OutputArgs) -> CmdOutput {
    if prec == 0 {
        return Err(Failure::usage("prec must be at least 1"));
    }
    let params = build_params(field)?;
    let ctx = params.ctx();
    let series = match which {
        Which::Star => lseries::star(&params, prec),
        Which::L => lseries::l_direct(&params, prec),
        Which::Alpha => lseries::alpha(ctx, prec),
        Which::Pi => lseries::pi(ctx, prec),
    };
    let text = match output.format {
        Format::Ascii => {
            let mut out = String::new();
            for (n, &c) in series.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{n}\t{}", render::elem_string(ctx, c));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("n,coeff\n");
            for (n, &c) in series.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{n},{}", render::elem_string(ctx, c));
            }
            out
        }
        Format::Json => to_json(&json::SeriesDoc {
            q: params.q(),
            s: params.s(),
            a: render::elem_string(ctx, params.a()),
            prec,
            coeffs: series.coeffs().iter().map(|&c| ctx.coeffs(c)).collect(),
        })?,
    };
    Ok((text, 0))
}

fn cmd_coeff(field: &FieldArgs, n: u64, prec: usize, output: &OutputArgs) -> CmdOutput {
    let params = build_params(field)?;
    let ctx = params.ctx();
    if n >= prec as u64 {
        return Err(Failure::usage(format!(
            "n = {n} is not below the precision {prec}"
        )));
    }
    let star = lseries::star(&params, prec);
    let from_series = star.coeff(n as usize).expect("n below precision");
    let direct = coeffs::u_at(&BigUint::from(n), &params);
    let matches = from_series == direct;
    let series_str = render::elem_string(ctx, from_series);
    let direct_str = render::elem_string(ctx, direct);
    let text = match output.format {
        Format::Ascii => format!(
            "n = {n}\nseries: {series_str}\ndirect: {direct_str}\nmatch: {}\n",
            if matches { "yes" } else { "NO" }
        ),
        Format::Csv => format!("n,series,direct,match\n{n},{series_str},{direct_str},{matches}\n"),
        Format::Json => to_json(&json::CoeffDoc {
            n,
            series: series_str,
            direct: direct_str,
            r#match: matches,
        })?,
    };
    Ok((text, if matches { 0 } else { EXIT_FAILED_CHECK }))
}

fn cmd_decompose(field: &FieldArgs, b: &str, output: &OutputArgs) -> CmdOutput {
    let params = build_params(field)?;
    let q = params.q();
    let b = BigUint::from_str(b).map_err(|_| Failure::usage(format!("bad integer '{b}'")))?;
    let dec = decomp::decompose(&b, &params);
    let chain_strings: Vec<String> = dec
        .chain()
        .iter()
        .map(|v| qwords::digit_string(v, q))
        .collect();
    let members: Vec<json::DecompositionDoc> = dec
        .members()
        .map(|(i, k, _)| json::DecompositionDoc {
            i,
            r: chain_strings[i - 1].clone(),
            k,
            eps: dec.lvals()[..i - 1].to_vec(),
        })
        .collect();
    let text = match output.format {
        Format::Ascii => {
            let mut out = String::new();
            let _ = writeln!(out, "b = {b} ({} base {q})", chain_strings[0]);
            let _ = writeln!(out, "chain: {}", chain_strings.join(" "));
            let _ = writeln!(
                out,
                "l: {}",
                dec.lvals()
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let _ = writeln!(
                out,
                "I: {{{}}}",
                dec.index_set()
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let _ = writeln!(out, "decompositions:");
            for m in &members {
                let eps = m
                    .eps
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let _ = writeln!(out, "  i={}: r = {} (k = {}), eps = {{{eps}}}", m.i, m.r, m.k);
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("n,cell,k,c\n");
            for (idx, cell) in chain_strings.iter().enumerate() {
                let n = idx + 1;
                let (k, c) = match (dec.k_at(n), dec.c_at(n)) {
                    (Some(k), Some(c)) => (k.to_string(), qwords::digit_string(c, q)),
                    _ => ("*".into(), "*".into()),
                };
                let _ = writeln!(out, "{n},{cell},{k},{c}");
            }
            out
        }
        Format::Json => to_json(&json::DecomposeDoc {
            b: b.to_string(),
            q,
            s: params.s(),
            chain: chain_strings.clone(),
            lvals: dec.lvals().to_vec(),
            index_set: dec.index_set().into_iter().collect(),
            decompositions: members,
        })?,
    };
    Ok((text, 0))
}

fn cmd_verify(
    field: &FieldArgs,
    suites: &[String],
    prec: Option<usize>,
    m_max: Option<u32>,
    output: &OutputArgs,
) -> CmdOutput {
    let ctx = build_ctx(field)?;
    let a = match &field.a {
        Some(lit) => Some(
            render::elem_from_string(&ctx, lit)
                .map_err(|_| Failure::usage(format!("bad element literal '{lit}'")))?,
        ),
        None => None,
    };
    let ids: Vec<SuiteId> = if suites.is_empty() || suites.iter().any(|s| s == "all") {
        SuiteId::ALL.to_vec()
    } else {
        suites
            .iter()
            .map(|name| SuiteId::parse(name).map_err(|e| Failure::usage(e.to_string())))
            .collect::<Result<_, _>>()?
    };
    let cfg = SuiteConfig {
        ctx,
        s: field.s,
        a,
        prec,
        m_max,
    };
    let mut reports = Vec::new();
    for id in ids {
        let report =
            analysis::run_suite(id, &cfg).map_err(|e| Failure::usage(e.to_string()))?;
        reports.push(report);
    }
    let all_pass = reports.iter().all(|r| r.pass);
    let text = match output.format {
        Format::Ascii => {
            let mut out = String::new();
            for r in &reports {
                let _ = write!(
                    out,
                    "suite {}: {} ({} checks",
                    r.suite,
                    if r.pass { "pass" } else { "FAIL" },
                    r.checks
                );
                let range = r
                    .range
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                let _ = writeln!(out, "; {range})");
                if let Some(ce) = &r.counterexample {
                    let _ = writeln!(out, "  counterexample: {ce}");
                }
            }
            let _ = writeln!(out, "{}", if all_pass { "all pass" } else { "FAILURES" });
            out
        }
        Format::Csv => {
            let mut out = String::from("suite,pass,checks,counterexample\n");
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    r.suite,
                    r.pass,
                    r.checks,
                    r.counterexample.clone().unwrap_or_default()
                );
            }
            out
        }
        Format::Json => {
            let docs: Vec<json::VerifyDoc> = reports
                .iter()
                .map(|r| report_doc(r, field, &cfg))
                .collect();
            to_json(&docs)?
        }
    };
    Ok((text, if all_pass { 0 } else { EXIT_FAILED_CHECK }))
}

fn report_doc(report: &SuiteReport, field: &FieldArgs, cfg: &SuiteConfig) -> json::VerifyDoc {
    json::VerifyDoc {
        suite: report.suite.name().to_string(),
        params: json::ParamsDoc {
            p: field.p,
            e: field.e,
            s: field.s,
            a: cfg.a.map(|a| render::elem_string(&cfg.ctx, a)),
        },
        range: report.range.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        pass: report.pass,
        checks: report.checks,
        counterexample: report.counterexample.clone(),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("serialization failed: {e}"),
        })
}
