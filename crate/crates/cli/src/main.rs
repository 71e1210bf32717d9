mod commands;
mod output;
mod verify;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ntors::torsion::Config;
use ntors::Error;

use crate::commands::{HnArgs, Outcome};
use crate::output::{Format, Printer};
use crate::verify::{Suite, VerifyArgs};
use crate::workspace::Workspace;

#[derive(Parser)]
#[command(
    name = "ntors",
    version,
    about = "Torsion classes, n-torsion classes and HN filtrations over bound quiver algebras"
)]
struct Cli {
    /// Prime field characteristic, overriding the algebra file.
    #[arg(long, global = true)]
    field: Option<u32>,
    /// Largest number of indecomposables an enumeration may range over.
    #[arg(long, global = true, default_value_t = 16)]
    bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Extra files with modules, chains, actions or subcategories.
    #[arg(long, global = true)]
    load: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Indecomposables with dimension vectors, and the Hom matrix.
    Model { algebra: PathBuf },
    /// All torsion classes.
    Tors { algebra: PathBuf },
    /// All n-torsion classes of a subcategory.
    Ntors {
        algebra: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Subcategory name; defaults to `M`, else the whole model.
        #[arg(long, alias = "subcategory")]
        cluster: Option<String>,
        /// Keep classes stable under the action and list their push-downs.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        equivariant: Option<String>,
    },
    /// HN filtration of an object along a chain.
    Hn {
        algebra: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        chain: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, alias = "subcategory")]
        cluster: Option<String>,
        /// Add the filtration along the induced chain of torsion classes.
        #[arg(long)]
        compare: bool,
        /// Add the filtration on the orbit side.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        pushdown: Option<String>,
    },
    /// Orbit algebra of an action and push-downs.
    Pushdown {
        algebra: PathBuf,
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        object: Option<String>,
        #[arg(long, alias = "subcategory")]
        cluster: Option<String>,
    },
    /// Run an invariant suite; exit status 1 on any failure.
    Verify {
        algebra: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, alias = "subcategory")]
        cluster: Option<String>,
        #[arg(long)]
        action: Option<String>,
        /// Largest total dimension of objects in the HN comparison.
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
    },
}

fn optional(name: &Option<String>) -> Option<Option<&str>> {
    name.as_ref()
        .map(|s| if s.is_empty() { None } else { Some(s.as_str()) })
}

fn run(cli: &Cli) -> ntors::Result<Outcome> {
    let config = Config {
        enum_bound: cli.bound,
        ..Config::default()
    };
    let algebra = match &cli.command {
        Command::Model { algebra }
        | Command::Tors { algebra }
        | Command::Ntors { algebra, .. }
        | Command::Hn { algebra, .. }
        | Command::Pushdown { algebra, .. }
        | Command::Verify { algebra, .. } => algebra,
    };
    let ws = Workspace::load(algebra, &cli.load, cli.field, config)?;
    let p = Printer::new(cli.format);
    match &cli.command {
        Command::Model { .. } => commands::model(&ws, p),
        Command::Tors { .. } => commands::tors(&ws, p),
        Command::Ntors {
            n,
            cluster,
            equivariant,
            ..
        } => commands::ntors(&ws, *n, cluster.as_deref(), optional(equivariant), p),
        Command::Hn {
            object,
            chain,
            n,
            cluster,
            compare,
            pushdown,
            ..
        } => {
            let args = HnArgs {
                object,
                chain,
                n: *n,
                cluster: cluster.as_deref(),
                compare: *compare,
                pushdown: optional(pushdown),
            };
            commands::hn(&ws, &args, p)
        }
        Command::Pushdown {
            action,
            object,
            cluster,
            ..
        } => commands::pushdown(&ws, action.as_deref(), object.as_deref(), cluster.as_deref(), p),
        Command::Verify {
            suite,
            n,
            cluster,
            action,
            max_dim,
            ..
        } => {
            let args = VerifyArgs {
                n: *n,
                cluster: cluster.as_deref(),
                action: action.as_deref(),
                max_dim: *max_dim,
            };
            verify::run(&ws, *suite, &args, p)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Consistency(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
