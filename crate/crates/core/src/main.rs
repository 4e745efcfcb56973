use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cqtkit::cli::{self, RunConfig, Suite};
use cqtkit::presentation::{parse_constant, DEFAULT_DEPTH};
use cqtkit::uea::DEFAULT_MAX_LEN;
use cqtkit::Gauss;

#[derive(Parser)]
#[command(name = "cqtkit", version, about = "Exact checks of coquasitriangular structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// `builtin:NAME`, `builtin:lorentz-user(<file>)` or a datum file
    input: String,
    /// validate, cqt, star, ct, classify, poincare or uea (repeatable)
    #[arg(long = "suite", value_delimiter = ',')]
    suites: Vec<Suite>,
    /// Evaluate at a sample, e.g. `t=1`, `t=i`, `t=1/2`
    #[arg(long, value_parser = parse_eval)]
    eval: Option<Gauss>,
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Matrix name (or `n0`) for the extended K relation
    #[arg(long)]
    with_n: Option<String>,
    /// Also write the reports as JSON to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites on a datum
    Check(RunArgs),
    /// Run the classify suite
    Classify(RunArgs),
    /// Print a saturated basis of Mor(src, dst)
    Mor {
        input: String,
        /// Source word, e.g. `w,w`
        #[arg(long, default_value = "")]
        src: String,
        /// Target word
        #[arg(long, default_value = "")]
        dst: String,
        #[arg(long, value_parser = parse_eval)]
        eval: Option<Gauss>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Print the matrices of a datum, declared and derived
    Show {
        input: String,
        names: Vec<String>,
        #[arg(long, value_parser = parse_eval)]
        eval: Option<Gauss>,
    },
}

fn parse_eval(s: &str) -> Result<Gauss, String> {
    let v = s.strip_prefix("t=").ok_or("expected t=<value>")?;
    parse_constant(v).map_err(|e| e.to_string())
}

fn config(a: RunArgs, extra: Option<Suite>) -> RunConfig {
    let mut suites = a.suites;
    suites.extend(extra);
    RunConfig {
        input: a.input,
        suites,
        eval: a.eval,
        max_len: a.max_len,
        depth: a.depth,
        with_n: a.with_n,
        json: a.json,
    }
}

fn main() -> ExitCode {
    let text = match Cli::parse().command {
        Command::Check(a) => run(config(a, None)),
        Command::Classify(a) => run(config(a, Some(Suite::Classify))),
        Command::Mor {
            input,
            src,
            dst,
            eval,
            depth,
        } => cli::mor_text(&input, &src, &dst, eval.as_ref(), depth).map(|s| (s, 0)),
        Command::Show { input, names, eval } => cli::show_text(&input, &names, eval.as_ref()).map(|s| (s, 0)),
    };
    match text {
        Ok((s, code)) => {
            print!("{s}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cfg: RunConfig) -> cqtkit::Result<(String, i32)> {
    let out = cli::dispatch(&cfg)?;
    Ok((cli::render_text(&out), out.exit_code()))
}
