use clap::{Parser, Subcommand};
use invdef::commands::{self, DeformArgs, Outcome};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "invdef", version, about = "Tangent spaces and universal deformations of invariant Hilbert scheme points")]
struct Cli {
    /// Worker threads (0 lets the runtime decide).
    #[arg(long, global = true, env = "INVDEF_THREADS", default_value_t = 0)]
    threads: usize,
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tangent space at the point given by the problem's ideal.
    Tangent { problem: PathBuf },
    /// Universal deformation; writes a result file.
    Deform {
        problem: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
        /// Keep only tangent directions of positive weight.
        #[arg(long)]
        positive_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a result file against its problem.
    Verify { result: PathBuf, problem: PathBuf },
    /// Flat limit along a one-parameter subgroup.
    Limit {
        problem: PathBuf,
        /// Exponents of the subgroup, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        psg: String,
        /// Problem file whose ideal the limit must equal.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Ideal of the fiber of the family over the origin of the quotient.
    Fiber { result: PathBuf, problem: PathBuf },
    /// Dimension and weighted Hilbert series of an ideal file.
    Analyze {
        ideal: PathBuf,
        /// Positive weights, comma separated.
        #[arg(long)]
        weights: Option<String>,
    },
}

fn int_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad integer `{}`", x.trim())))
        .collect()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(commands::EXIT_INPUT as u8);
        }
    }
    let outcome = match &cli.cmd {
        Cmd::Tangent { problem } => commands::tangent(problem),
        Cmd::Deform {
            problem,
            max_order,
            positive_only,
            out,
        } => commands::deform(&DeformArgs {
            problem,
            max_order: *max_order,
            positive_only: *positive_only,
            out: out.as_deref(),
        }),
        Cmd::Verify { result, problem } => commands::verify_cmd(result, problem),
        Cmd::Limit { problem, psg, expect } => match int_list(psg) {
            Ok(n) => commands::limit(problem, &n, expect.as_deref()),
            Err(e) => Outcome {
                code: commands::EXIT_INPUT,
                report: serde_json::json!({ "error": e }),
                text: format!("error: {e}"),
            },
        },
        Cmd::Fiber { result, problem } => commands::fiber(result, problem),
        Cmd::Analyze { ideal, weights } => match weights.as_deref().map(int_list).transpose() {
            Ok(w) => commands::analyze(ideal, w),
            Err(e) => Outcome {
                code: commands::EXIT_INPUT,
                report: serde_json::json!({ "error": e }),
                text: format!("error: {e}"),
            },
        },
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&outcome.report).expect("serializable"));
    } else if outcome.code == commands::EXIT_OK || outcome.code == commands::EXIT_VERIFY {
        print!("{}", outcome.text);
    } else {
        eprintln!("{}", outcome.text);
    }
    ExitCode::from(outcome.code as u8)
}
