use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use h1forge::group::DEFAULT_CAP;
use h1forge::FieldSpec;
use h1forge_cli::commands::{self, parse_field, H1Options, SweepOptions};
use h1forge_cli::SolverChoice;

/// First cohomology of finite matrix groups over finite fields.
#[derive(Parser)]
#[command(name = "h1forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute H^1(G, V) for the natural module of a group-spec file.
    H1 {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = SolverChoice::Auto)]
        solver: SolverChoice,
        #[arg(long)]
        json: bool,
        /// Cross-check against both direct solvers; exit 4 on disagreement.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run a corpus sweep described by a JSON config; writes PREFIX.csv and PREFIX.json.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Emit corpus group-spec files.
    Corpus {
        #[arg(long)]
        n: usize,
        /// Field as p or p^m; repeatable.
        #[arg(long = "field", value_parser = parse_field, required = true)]
        fields: Vec<FieldSpec>,
        /// Aschbacher class tag (C1..C9 or Full).
        #[arg(long)]
        class: Option<String>,
        /// Write one file per spec into this directory instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal-degree and order tables.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Whether H^1 vanishes for a Lie-type family by the Sylow criterion.
    Predict {
        #[arg(long)]
        family: String,
        #[arg(long)]
        w: u64,
        #[arg(long, default_value_t = 0)]
        t: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    Dump,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::H1 {
            spec,
            solver,
            json,
            check,
            cap,
        } => commands::cmd_h1(
            &spec,
            &H1Options {
                solver,
                json,
                check,
                cap,
            },
        ),
        Command::Sweep {
            config,
            out,
            no_cache,
            threads,
        } => commands::cmd_sweep(&config, &SweepOptions { out, no_cache, threads }),
        Command::Corpus { n, fields, class, out } => {
            commands::cmd_corpus(n, &fields, class.as_deref(), out.as_deref())
        }
        Command::Catalog {
            action: CatalogAction::Dump,
        } => commands::cmd_catalog_dump(),
        Command::Predict { family, w, t, p, n } => commands::cmd_predict(&family, w, t, p, n),
    };
    match result {
        Ok(text) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
