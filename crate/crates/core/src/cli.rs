//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a check failed (property counterexample, slope outside its band) |
//! | 2 | bad arguments, configuration or parameter constraints |
//! | 3 | infeasible trade |

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::analytics::{exponent_c, schedule_p, theorem_identity_residual, ScheduleParams};
use crate::config::PoolConfigDoc;
use crate::error::Error;
use crate::experiments::{run_scaling, EpsGrid, ScalingConfig};
use crate::pool::TradeQuote;
use crate::report::write_scaling_csv;
use crate::verify::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "g3m", version, about = "Generalized-mean market maker toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quote the output received for an input trade.
    Quote {
        /// Pool configuration (JSON).
        config: PathBuf,
        /// Input as ASSET=AMOUNT (1-based asset index); repeatable.
        #[arg(long = "in", value_name = "ASSET=AMOUNT", required = true)]
        inputs: Vec<String>,
        /// Output asset (1-based).
        #[arg(long = "out", value_name = "ASSET")]
        output: usize,
    },
    /// Input required for a desired output, with its slippage.
    Slippage {
        config: PathBuf,
        /// Output as ASSET=AMOUNT (1-based asset index).
        #[arg(long = "out", value_name = "ASSET=AMOUNT")]
        output: String,
        /// Input asset (1-based).
        #[arg(long = "in", value_name = "ASSET")]
        input: usize,
    },
    /// Scheduled exponent, slippage exponent and identity residual.
    Schedule {
        #[arg(long = "C", value_name = "C")]
        c: f64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Run the seeded property suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        /// Also exercise trades on this pool.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run the slippage / trade-size scaling experiment.
    Experiment {
        #[arg(long = "C", value_name = "C", default_value_t = 4.0)]
        c: f64,
        #[arg(long, default_value_t = 4.0 / 3.0)]
        s: f64,
        #[arg(long, default_value_t = 4)]
        kmin: u32,
        #[arg(long, default_value_t = 40)]
        kmax: u32,
        #[arg(long, default_value_t = 0.5)]
        tail: f64,
        /// Destination CSV file.
        #[arg(long)]
        out: PathBuf,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            Error::Rejected { .. } | Error::RowInvariant { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Quote {
            config,
            inputs,
            output,
        } => cmd_quote(&config, &inputs, output, out),
        Command::Slippage {
            config,
            output,
            input,
        } => cmd_slippage(&config, &output, input, out),
        Command::Schedule { c, s, eps } => cmd_schedule(c, s, eps, out),
        Command::Verify {
            seed,
            cases,
            config,
        } => cmd_verify(seed, cases, config.as_deref(), out),
        Command::Experiment {
            c,
            s,
            kmin,
            kmax,
            tail,
            out: path,
        } => cmd_experiment(c, s, kmin, kmax, tail, &path, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `ASSET=AMOUNT` with a 1-based asset index into a 0-based pair.
fn parse_asset_amount(text: &str, n: usize) -> std::result::Result<(usize, f64), Failure> {
    let (asset, amount) = text
        .split_once('=')
        .ok_or_else(|| usage(format!("expected ASSET=AMOUNT, got {text:?}")))?;
    let index = parse_asset(asset.trim().parse().map_err(|_| {
        usage(format!("asset index {asset:?} is not a positive integer"))
    })?, n)?;
    let amount: f64 = amount
        .trim()
        .parse()
        .map_err(|_| usage(format!("amount {amount:?} is not a decimal number")))?;
    if !(amount > 0.0 && amount.is_finite()) {
        return Err(usage(format!("amount must be a positive decimal (got {amount})")));
    }
    Ok((index, amount))
}

fn parse_asset(asset: usize, n: usize) -> std::result::Result<usize, Failure> {
    if asset >= 1 && asset <= n {
        Ok(asset - 1)
    } else {
        Err(usage(format!("asset index {asset} must lie in 1..={n}")))
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("[{}]", items.join(", "))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{x}"))
}

fn print_quote(out: &mut dyn Write, quote: &TradeQuote) -> std::io::Result<()> {
    writeln!(out, "input: {}", fmt_vec(&quote.trade.input))?;
    writeln!(out, "output: {}", fmt_vec(&quote.trade.output))?;
    writeln!(out, "post reserves: {}", fmt_vec(&quote.post_reserves))?;
    writeln!(out, "spot rate: {}", fmt_opt(quote.spot_rate))?;
    writeln!(out, "slippage: {}", fmt_opt(quote.slippage))?;
    writeln!(out, "invariant residual: {:e}", quote.invariant_residual)
}

fn io(e: std::io::Error) -> Failure {
    usage(format!("cannot write output: {e}"))
}

fn cmd_quote(config: &std::path::Path, inputs: &[String], output: usize, out: &mut dyn Write) -> CmdResult {
    let pool = PoolConfigDoc::load(config)?.to_pool()?;
    let j = parse_asset(output, pool.len())?;
    let mut amounts = vec![0.0; pool.len()];
    for text in inputs {
        let (i, amount) = parse_asset_amount(text, pool.len())?;
        amounts[i] += amount;
    }
    let quote = pool.solve_output(&amounts, j)?;
    writeln!(out, "amount out (asset {output}): {}", quote.trade.output[j]).map_err(io)?;
    print_quote(out, &quote).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_slippage(config: &std::path::Path, output: &str, input: usize, out: &mut dyn Write) -> CmdResult {
    let pool = PoolConfigDoc::load(config)?.to_pool()?;
    let i = parse_asset(input, pool.len())?;
    let (j, amount) = parse_asset_amount(output, pool.len())?;
    let mut amounts = vec![0.0; pool.len()];
    amounts[j] = amount;
    let quote = pool.solve_input(&amounts, i)?;
    writeln!(out, "amount in (asset {input}): {}", quote.trade.input[i]).map_err(io)?;
    print_quote(out, &quote).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_schedule(c: f64, s: f64, eps: f64, out: &mut dyn Write) -> CmdResult {
    let params = ScheduleParams::new(c, s)?;
    let p = schedule_p(params, eps)?;
    let exponent = exponent_c(s)?;
    let residual = theorem_identity_residual(params, eps)?;
    writeln!(out, "p: {p}").map_err(io)?;
    writeln!(out, "c: {exponent}").map_err(io)?;
    writeln!(out, "identity residual: {residual:e}").map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_verify(seed: u64, cases: usize, config: Option<&std::path::Path>, out: &mut dyn Write) -> CmdResult {
    let pool = match config {
        Some(path) => Some(PoolConfigDoc::load(path)?.to_pool()?),
        None => None,
    };
    let report = run_suite(seed, cases, pool.as_ref())?;
    for o in &report.outcomes {
        let status = if o.failed == 0 { "ok" } else { "FAIL" };
        writeln!(out, "{status:4} {:>6}/{:<6} {}", o.passed, o.passed + o.failed, o.name).map_err(io)?;
    }
    match report.first_failure() {
        None => {
            writeln!(out, "all {} properties passed (seed {seed})", report.outcomes.len()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Some(o) => {
            writeln!(
                out,
                "counterexample for {}: {}",
                o.name,
                o.counterexample.as_deref().unwrap_or("")
            )
            .map_err(io)?;
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

fn cmd_experiment(
    c: f64,
    s: f64,
    kmin: u32,
    kmax: u32,
    tail: f64,
    path: &std::path::Path,
    out: &mut dyn Write,
) -> CmdResult {
    if kmax < kmin {
        return Err(usage(format!("requires kmin <= kmax (got {kmin} > {kmax})")));
    }
    let config = ScalingConfig {
        params: ScheduleParams::new(c, s)?,
        grid: EpsGrid::dyadic(kmin, kmax),
        tail_fraction: tail,
    };
    config.validate()?;
    let report = run_scaling(&config)?;
    let file = std::fs::File::create(path)
        .map_err(|e| usage(format!("cannot create {}: {e}", path.display())))?;
    write_scaling_csv(&report.rows, std::io::BufWriter::new(file))?;
    let mark = |ok: bool| if ok { "ok" } else { "OUT OF BAND" };
    writeln!(out, "c_target: {}", report.c_target).map_err(io)?;
    writeln!(out, "slope_S: {} ({})", report.slope_s, mark(report.slope_s_ok())).map_err(io)?;
    writeln!(out, "slope_D: {} ({})", report.slope_d, mark(report.slope_d_ok())).map_err(io)?;
    writeln!(out, "slope_S0: {} ({})", report.slope_s0, mark(report.slope_s0_ok())).map_err(io)?;
    writeln!(out, "wrote {} rows to {}", report.rows.len(), path.display()).map_err(io)?;
    Ok(if report.within_bands() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
