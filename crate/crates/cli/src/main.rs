mod commands;
mod load;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mori_diagram::bounds::WeightRule;
use rayon::prelude::*;
use serde_json::{json, Value};

use commands::{BoundArgs, Constants, GenArgs, Outcome};
use load::Instance;

#[derive(Parser)]
#[command(name = "mori-diagram", version, about = "Exact checks and bounds for ray-divisor systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for batches of inputs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rule {
    Graded,
    #[value(alias = "theorem258")]
    Adjacent,
}

#[derive(Args)]
struct Inputs {
    /// Instance files or directories of `*.json` files.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate instances and list every violated invariant.
    Check(Inputs),
    /// Type the components of each maximal face and classify the E-sets.
    Classify(Inputs),
    /// List and classify the E-sets.
    Esets(Inputs),
    /// Evaluate the dimension bound from C1, C2, or the angle bound from C, D.
    Bound {
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<String>,
        /// Use the weighted-angle inequality with --C and --D.
        #[arg(long, alias = "lemma14")]
        angle: bool,
        #[arg(long = "C", requires = "angle", allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long = "D", requires = "angle", allow_hyphen_values = true)]
        dd: Option<String>,
    },
    /// Face numbers, the average number of vertices per 2-face and its bound.
    PolytopeStats(Inputs),
    /// Run the angle-weight pipeline on a diagram file.
    Diagram {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Rule::Graded)]
        rule: Rule,
        /// Supplied constants; C = (2/3) C1 + C2/2 and D = 0.
        #[arg(long, requires = "c2", conflicts_with_all = ["c", "dd"], allow_hyphen_values = true)]
        c1: Option<String>,
        #[arg(long, requires = "c1", allow_hyphen_values = true)]
        c2: Option<String>,
        #[arg(long = "C", requires = "dd", allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long = "D", requires = "c", allow_hyphen_values = true)]
        dd: Option<String>,
    },
    /// Write a seeded instance.
    Gen {
        /// simplex, cube, cyclic-dual, product, c2, cm, d2, b2, eset-a,
        /// eset-d, random-valid, realized or diagram.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Divisorial rays for random-valid.
        #[arg(long)]
        rays: Option<usize>,
        /// Small rays for random-valid.
        #[arg(long)]
        small: Option<usize>,
        /// Fixture name for the diagram family.
        #[arg(long)]
        name: Option<String>,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn optional(flag: &str, v: &Option<String>) -> Result<Option<mori_diagram::Rational>> {
    v.as_deref().map(|t| commands::rational(flag, t)).transpose()
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Check(i) => batch(cli, &i.paths, commands::check),
        Command::Classify(i) => batch(cli, &i.paths, commands::classify),
        Command::Esets(i) => batch(cli, &i.paths, commands::esets),
        Command::PolytopeStats(i) => batch(cli, &i.paths, commands::polytope_stats),
        Command::Bound { d, c1, c2, angle, c, dd } => {
            let args = BoundArgs {
                d: *d,
                c1: optional("c1", c1)?,
                c2: optional("c2", c2)?,
                angle: *angle,
                c: optional("C", c)?,
                dd: optional("D", dd)?,
            };
            emit(cli.format, &commands::bound(&args)?)
        }
        Command::Diagram { inputs, d, rule, c1, c2, c, dd } => {
            let rule = match rule {
                Rule::Graded => WeightRule::Graded(*d),
                Rule::Adjacent => WeightRule::Adjacent,
            };
            let constants = match (optional("c1", c1)?, optional("c2", c2)?, optional("C", c)?, optional("D", dd)?) {
                (Some(a), Some(b), _, _) => Constants::Supplied(a, b),
                (_, _, Some(a), Some(b)) => Constants::Direct(a, b),
                _ => Constants::Empirical,
            };
            batch(cli, &inputs.paths, |inst| commands::diagram(inst, *d, &rule, &constants))
        }
        Command::Gen { family, seed, n, m, k, rays, small, name, out } => {
            let args = GenArgs {
                family: family.clone(),
                seed: *seed,
                n: *n,
                m: *m,
                k: *k,
                rays: *rays,
                small: *small,
                name: name.clone(),
            };
            let (text, rejections) = commands::generate(&args)?;
            if rejections > 0 {
                eprintln!("rejected draws: {rejections}");
            }
            match out {
                Some(path) => write_atomic(path, &(text + "\n"))?,
                None => println!("{text}"),
            }
            Ok(0)
        }
    }
}

fn emit(format: Format, o: &Outcome) -> Result<u8> {
    match format {
        Format::Text => print!("{}", o.text),
        Format::Json => println!("{}", serde_json::to_string_pretty(&o.json)?),
    }
    Ok(o.status as u8)
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, text).with_context(|| format!("cannot write {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("cannot write {}", path.display()))
}

/// Runs `f` on every input. A single input prints its report bare; several
/// print one block per input, in input order. The exit code is the worst
/// status, with load and run errors counting as 2.
fn batch<F>(cli: &Cli, paths: &[PathBuf], f: F) -> Result<u8>
where
    F: Fn(&Instance) -> Result<Outcome> + Sync,
{
    let files = load::expand(paths)?;
    let run_one = |p: &PathBuf| load::load(p).and_then(|i| f(&i));
    if files.len() == 1 && paths.iter().all(|p| !p.is_dir()) {
        return emit(cli.format, &run_one(&files[0])?);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build()?;
    let results: Vec<Result<Outcome>> = pool.install(|| files.par_iter().map(run_one).collect());
    let mut code = 0u8;
    let mut blocks: Vec<Value> = Vec::new();
    let stdout = std::io::stdout();
    for (path, r) in files.iter().zip(results) {
        let shown = path.display().to_string();
        let (status, block_text, block_json) = match r {
            Ok(o) => (o.status as u8, o.text, json!({"path": shown, "status": o.status as u8, "report": o.json})),
            Err(e) => (2, format!("error: {e:#}\n"), json!({"path": shown, "status": 2, "error": format!("{e:#}")})),
        };
        code = code.max(status);
        if cli.format == Format::Text {
            let mut lock = stdout.lock();
            write!(lock, "== {shown}\n{block_text}")?;
        }
        blocks.push(block_json);
    }
    if cli.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&blocks)?);
    }
    Ok(code)
}
