use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use desc_cli::commands::{self, CheckKind, Options, SynthMode};
use desc_cli::Project;

/// Supervisory control synthesis for two subsystems and a coordinator.
#[derive(Parser, Debug)]
#[command(name = "desc", version, about)]
struct Cli {
    /// Print reports as one JSON object per line.
    #[arg(long, global = true)]
    json: bool,

    /// Cross-check results against the brute-force oracle on words up to this length.
    #[arg(long, global = true, value_name = "N")]
    oracle_bound: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a property of the project's coordination block.
    Check {
        which: CheckKind,
        #[arg(short, long)]
        project: PathBuf,
    },
    /// Synthesize supervisors or supremal sublanguages into a directory.
    Synth {
        mode: SynthMode,
        #[arg(short, long)]
        project: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Compute the distributed result even if the observer/OCC checks fail.
        #[arg(long)]
        force: bool,
    },
    /// Synchronous product of generators (names from the project, or files).
    Compose {
        #[arg(short, long)]
        project: Option<PathBuf>,
        #[arg(required = true)]
        names: Vec<String>,
        /// Name recorded in the output file.
        #[arg(long, default_value = "composition")]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Natural projection of a generator onto a set of its events.
    Project {
        #[arg(short, long)]
        project: Option<PathBuf>,
        source: String,
        events: Vec<String>,
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Alphabet, reachable events, size and shortest words of a generator.
    Info {
        #[arg(short, long)]
        project: Option<PathBuf>,
        name: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

fn load(path: &Option<PathBuf>) -> anyhow::Result<Option<Project>> {
    path.as_deref().map(Project::load).transpose()
}

fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<commands::Status> {
    let opts = Options {
        json: cli.json,
        oracle_bound: cli.oracle_bound,
    };
    match cli.command {
        Command::Check { which, project } => {
            commands::check(&Project::load(&project)?, which, &opts, out)
        }
        Command::Synth {
            mode,
            project,
            output,
            force,
        } => commands::synth(&Project::load(&project)?, mode, &output, force, &opts, out),
        Command::Compose {
            project,
            names,
            name,
            output,
        } => commands::compose(
            load(&project)?.as_ref(),
            &names,
            &name,
            output.as_deref(),
            out,
        ),
        Command::Project {
            project,
            source,
            events,
            name,
            output,
        } => commands::project_cmd(
            load(&project)?.as_ref(),
            &source,
            &events,
            name.as_deref(),
            output.as_deref(),
            out,
        ),
        Command::Info {
            project,
            name,
            samples,
        } => commands::info(load(&project)?.as_ref(), &name, samples, &opts, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(status) => {
            let _ = out.flush();
            ExitCode::from(status.code() as u8)
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
