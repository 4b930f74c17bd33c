use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use logderiv_cli::commands::{self, Output, SolveArgs};

#[derive(Parser)]
#[command(name = "logderiv", version, about = "Algebraic relations for D^j y / y from linear ODEs for y and 1/y")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the system, compute a Gröbner basis and one eliminant per y_j.
    Solve {
        file: PathBuf,
        /// Write the structured report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the characteristic given in the file.
        #[arg(long = "char")]
        characteristic: Option<u64>,
        #[arg(long)]
        no_oracle: bool,
    },
    /// Operators for y and 1/y when y'/y is a root of f(T).
    Converse {
        #[arg(long)]
        f: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Print p_n, or p_{n,q} with --q.
    Pn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Check the eliminants of a report against a series solution.
    Verify {
        file: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
}

fn run(cli: Cli) -> logderiv_cli::CliResult<Output> {
    match cli.command {
        Command::Solve { file, out, characteristic, no_oracle } => {
            commands::solve(&SolveArgs { file, out, characteristic, no_oracle })
        }
        Command::Converse { f, characteristic } => commands::converse_command(&f, characteristic),
        Command::Pn { n, q } => Ok(Output { stdout: commands::pn(n, q)? + "\n", exit: 0 }),
        Command::Verify { file, report } => commands::verify(&file, &report),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
