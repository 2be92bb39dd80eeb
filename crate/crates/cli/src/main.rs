use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use srax_cli::commands;
use srax_cli::config::{split_literals, Context, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "srax", version, about = "Symplectic reflection algebras over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TypeAArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 2)]
    r: u64,
    /// Comma-separated values of c_1..c_(r-1).
    #[arg(long, default_value = "")]
    c: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4096)]
    dim_cap: usize,
}

impl TypeAArgs {
    fn context(&self) -> Result<Context, String> {
        let cfg = RunConfig::cyclic(self.p, self.e, self.r, split_literals(&self.c));
        Context::build(&cfg).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        /// `key=value` settings and suite names, e.g. `typea p=3 r=2 c=1`.
        tokens: Vec<String>,
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-row wall-clock times (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
        /// Print the JSON report instead of the plain-text summary.
        #[arg(long)]
        json: bool,
    },
    /// Degree-bounded centre of the type-A algebra.
    Centre {
        #[command(flatten)]
        alg: TypeAArgs,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value_t = 24)]
        degree_cap: usize,
    },
    /// Finite quotient at a central character such as `x6=1,y6=1,h=0`.
    Quotient {
        #[command(flatten)]
        alg: TypeAArgs,
        #[arg(long = "char")]
        character: String,
        #[arg(long)]
        analyze: bool,
    },
    /// Type-A invariants, or a parameter sweep.
    Typea {
        #[command(flatten)]
        alg: TypeAArgs,
        #[arg(long)]
        verify_centre: bool,
        #[arg(long)]
        smooth: bool,
        #[command(subcommand)]
        mode: Option<TypeaMode>,
    },
    /// Dunkl point module `k[y]/(y^{pr} - a)`.
    Dunkl {
        #[command(flatten)]
        alg: TypeAArgs,
        /// `a=<literal>`.
        #[arg(long, default_value = "a=1")]
        point: String,
        #[arg(long)]
        analyze: bool,
    },
}

#[derive(Subcommand)]
enum TypeaMode {
    /// One JSON row per parameter vector in the grid.
    Sweep {
        /// `;`-separated value lists per parameter; `*` means every element.
        #[arg(long, default_value = "*")]
        grid: String,
    },
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, tokens, suite, seed, out, timings, json } => {
            let cfg = match &config {
                Some(path) => match std::fs::read_to_string(path) {
                    Ok(text) => RunConfig::from_json(&text),
                    Err(e) => return fail(&format!("ConfigParse: {e}")),
                },
                None => RunConfig::from_tokens(&tokens),
            };
            let mut cfg = match cfg {
                Ok(c) => c,
                Err(e) => return fail(&e.to_string()),
            };
            if let Some(s) = suite {
                match Suite::parse(&s) {
                    Some(s) => cfg.suite = s,
                    None => return fail(&format!("ConfigParse: unknown suite `{s}`")),
                }
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let report = match srax_cli::run(&cfg, timings) {
                Ok(r) => r,
                Err(e) => return fail(&e.to_string()),
            };
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, report.to_json()) {
                    return fail(&e.to_string());
                }
            }
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.text_summary());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Centre { alg, degree, degree_cap } => {
            let res = alg.context().and_then(|ctx| commands::centre(&ctx, degree, degree_cap));
            finish(res)
        }
        Command::Quotient { alg, character, analyze } => {
            let mut rng = ChaCha8Rng::seed_from_u64(alg.seed);
            let res = alg.context().and_then(|ctx| commands::quotient(&ctx, &character, analyze, &mut rng, alg.dim_cap));
            finish(res)
        }
        Command::Typea { alg, verify_centre, smooth, mode } => match mode {
            Some(TypeaMode::Sweep { grid }) => {
                let res = srax_core::field::Field::new(alg.p, alg.e, None)
                    .map_err(|e| e.to_string())
                    .and_then(|f| commands::sweep(&f, alg.r, &grid));
                match res {
                    Ok(rows) => {
                        for row in rows {
                            println!("{}", serde_json::to_string(&row).expect("json"));
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(&e),
                }
            }
            None => finish(alg.context().and_then(|ctx| commands::typea(&ctx, verify_centre, smooth))),
        },
        Command::Dunkl { alg, point, analyze } => {
            let mut rng = ChaCha8Rng::seed_from_u64(alg.seed);
            let res = alg.context().and_then(|ctx| {
                let lit = point.strip_prefix("a=").unwrap_or(&point);
                let a = ctx.field.parse(lit).map_err(|e| e.to_string())?;
                commands::dunkl(&ctx, a, analyze, &mut rng, alg.dim_cap)
            });
            finish(res)
        }
    }
}

fn finish(res: Result<Value, String>) -> ExitCode {
    match res {
        Ok(v) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
