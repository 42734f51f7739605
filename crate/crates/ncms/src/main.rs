use clap::{Args, Parser, Subcommand};
use ncms::cli::{self, ModelOptions, OracleOptions};
use ncms::model::parse_f_spec;
use ncms::time::parse_time;
use ncms::trajset::DEFAULT_CAP;
use std::path::PathBuf;
use std::process::ExitCode;

/// Reach-set underapproximation certificates for trajectory-set models.
#[derive(Parser)]
#[command(name = "ncms", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Vector-state equality tolerance (overrides the model's eps).
    #[arg(long)]
    eps: Option<f64>,
    /// Materialization cap for enumerating operations.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the CPR, Markovian, and completeness axioms of a model.
    Axioms {
        model: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Compute the reach and right-range sets at a time bound, as CSV.
    Reach {
        model: PathBuf,
        /// Positive time bound (decimal or fraction).
        #[arg(long)]
        t0: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify the model's certificate.
    Certify {
        model: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exhaustively verify the certification theorem on random instances.
    Oracle {
        /// Maximum state count per instance (hard limit 12).
        #[arg(long, default_value_t = 4)]
        states: usize,
        /// Arc density in [0, 1].
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        /// Number of instances.
        #[arg(long, default_value_t = 200)]
        runs: usize,
        /// Base seed; instance k uses seed + k.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Time bound (defaults to each instance's horizon).
        #[arg(long)]
        t0: Option<String>,
        /// Class-K function, e.g. "linear 1" or "pwl (1,0.5) (2,2)";
        /// defaults to cycling linear 0.5 / 1 / 2.
        #[arg(long)]
        f: Option<String>,
        /// Grid step (decimal or fraction).
        #[arg(long, default_value = "1")]
        h: String,
        /// Maximum horizon per instance.
        #[arg(long, default_value_t = 4)]
        horizon: i64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

fn finish(out: cli::CmdOutput, to_file: Option<&PathBuf>) -> ExitCode {
    match to_file {
        Some(path) if out.code == cli::EXIT_PASS => {
            if let Err(e) = std::fs::write(path, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(cli::EXIT_INPUT as u8);
            }
        }
        _ => print!("{}", out.text),
    }
    ExitCode::from(out.code as u8)
}

fn read_model(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(cli::EXIT_INPUT as u8)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Axioms { model, common } => {
            let text = match read_model(&model) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let opts = ModelOptions {
                eps: common.eps,
                cap: common.cap,
            };
            finish(cli::cmd_axioms(&text, &opts), None)
        }
        Command::Reach {
            model,
            t0,
            out,
            common,
        } => {
            let text = match read_model(&model) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let opts = ModelOptions {
                eps: common.eps,
                cap: common.cap,
            };
            finish(cli::cmd_reach(&text, &t0, &opts), out.as_ref())
        }
        Command::Certify { model, common } => {
            let text = match read_model(&model) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let opts = ModelOptions {
                eps: common.eps,
                cap: common.cap,
            };
            finish(cli::cmd_certify(&text, &opts), None)
        }
        Command::Oracle {
            states,
            density,
            runs,
            seed,
            t0,
            f,
            h,
            horizon,
            cap,
        } => {
            let t0 = match t0.map(|t| parse_time(&t)).transpose() {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(cli::EXIT_INPUT as u8);
                }
            };
            let f = match f.map(|s| parse_f_spec(&s)).transpose() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(cli::EXIT_INPUT as u8);
                }
            };
            let step = match parse_time(&h) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(cli::EXIT_INPUT as u8);
                }
            };
            let opts = OracleOptions {
                states,
                density,
                runs,
                seed,
                t0,
                f,
                step,
                max_horizon: horizon,
                cap,
            };
            finish(cli::cmd_oracle(&opts), None)
        }
    }
}
