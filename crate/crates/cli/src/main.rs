mod commands;
mod inputs;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// An error caused by how the program was invoked rather than by the input
/// mathematics. Exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Quandle-coloring invariants of handlebody-links.
///
/// Diagrams are read from files, or from the built-in catalog as
/// `catalog:<name>`. Groups are descriptors (`trivial`, `z<k>`, `s<n>`,
/// `d<n>`) or group files. When no `--family` is given, the families
/// shipped for the group are used.
#[derive(Parser, Debug)]
#[command(name = "hbk", version)]
struct Cli {
    /// Cap on candidates tried by brute-force searches.
    #[arg(long, global = true, env = "HBK_BUDGET", default_value_t = hbk_core::coloring::DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a diagram file is well formed.
    Validate { diagram: String },

    /// List the G-flows of a diagram and classify them against families.
    Flows {
        diagram: String,
        #[arg(short, long)]
        group: String,
        /// Family descriptors to classify against (repeatable).
        #[arg(short, long = "family")]
        families: Vec<String>,
        /// Print one JSON record per flow instead of text rows.
        #[arg(long)]
        json: bool,
    },

    /// Count colorings for every flow.
    Colorings {
        diagram: String,
        #[arg(short, long)]
        group: String,
        #[arg(short, long)]
        family: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },

    /// Lower bounds for the tunnel number and the cutting number.
    Bounds {
        diagram: String,
        /// Genus of the handlebody-link; checked against the diagram.
        #[arg(long)]
        genus: Option<usize>,
        #[arg(short, long)]
        group: String,
        #[arg(short, long = "family")]
        families: Vec<String>,
        #[arg(long)]
        tunnel: bool,
        #[arg(long)]
        cut: bool,
    },

    /// Try to show that SMALL is not a constituent handlebody-knot of BIG.
    /// Exits 0 when obstructed and 1 when not.
    Constituent {
        small: String,
        big: String,
        #[arg(long)]
        small_genus: Option<usize>,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(short, long)]
        group: String,
        #[arg(short, long = "family")]
        families: Vec<String>,
        #[arg(long, value_enum, default_value_t = ConstituentMethod::Coloring)]
        method: ConstituentMethod,
    },

    /// Apply random moves and check that the invariants do not change.
    Fuzz {
        diagram: String,
        #[arg(short, long)]
        group: String,
        #[arg(short, long = "family")]
        families: Vec<String>,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the final diagram here.
        #[arg(long)]
        output: Option<String>,
    },

    /// List the built-in diagrams, or print one of them.
    Catalog { name: Option<String> },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Brute,
    Linear,
    Both,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConstituentMethod {
    /// Compare coloring dimensions over one Alexander family.
    Coloring,
    /// Compare numbers of trivial-relative flows.
    Count,
}

fn exit_status(err: &anyhow::Error) -> u8 {
    let usage = err.chain().any(|c| {
        c.is::<Usage>() || c.is::<std::io::Error>() || matches!(c.downcast_ref::<hbk_core::Error>(), Some(hbk_core::Error::Io(_)))
    });
    if usage {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget;
    let result = match cli.command {
        Command::Validate { diagram } => commands::validate(&diagram),
        Command::Flows { diagram, group, families, json } => commands::flows(&diagram, &group, &families, json, budget),
        Command::Colorings { diagram, group, family, method } => {
            commands::colorings(&diagram, &group, &family, method, budget)
        }
        Command::Bounds { diagram, genus, group, families, tunnel, cut } => {
            commands::bounds(&diagram, genus, &group, &families, tunnel, cut, budget)
        }
        Command::Constituent { small, big, small_genus, genus, group, families, method } => {
            commands::constituent(&small, small_genus, &big, genus, &group, &families, method, budget)
        }
        Command::Fuzz { diagram, group, families, steps, seed, output } => {
            commands::fuzz(&diagram, &group, &families, steps, seed, output.as_deref(), budget)
        }
        Command::Catalog { name } => commands::catalog(name.as_deref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_status(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_status_classes() {
        let io = anyhow::Error::from(std::io::Error::other("gone")).context("reading");
        assert_eq!(exit_status(&io), 2);
        assert_eq!(exit_status(&anyhow::Error::from(Usage("bad flag".into()))), 2);
        assert_eq!(exit_status(&anyhow::Error::from(hbk_core::Error::Budget(3))), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
