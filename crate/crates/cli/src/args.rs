//! Command-line grammar and the `key = value` config file.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::report::Format;
use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "liegrowth", version, about = "Growth and cogrowth of subalgebras and subideals of free Lie algebras")]
#[command(args_override_self = true)]
pub struct Cli {
    /// File of `key = value` lines pre-setting flags; the command line wins.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldMode {
    Exact,
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Formula,
    Lswords,
    Linear,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Linear {
    #[arg(long, value_enum, default_value = "exact")]
    pub field_mode: FieldMode,
    /// Raise the default degree cap of the chosen field.
    #[arg(long, value_name = "N")]
    pub degree_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Generators {
    /// File with one generator expression per line.
    #[arg(long, value_name = "FILE")]
    pub generators: Option<PathBuf>,
    /// Generator expressions separated by `;`.
    #[arg(long, value_name = "EXPRS")]
    pub generators_inline: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of the homogeneous components of a free Lie algebra.
    Witt {
        #[arg(long, conflicts_with = "alphabet")]
        rank: Option<u64>,
        /// Graded alphabet such as `y:1,x:1` (last letter greatest).
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, value_parser = positive)]
        max_degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Lyndon-Shirshov words and their standard bracketings.
    Lyndon {
        #[arg(long, default_value = "y:1,x:1")]
        alphabet: String,
        #[arg(long, value_parser = positive)]
        max_degree: usize,
        /// Only this degree.
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Words avoiding a factor: counts by degree, or the growth rate.
    Avoid {
        #[arg(long, default_value = "y:1,x:1")]
        alphabet: String,
        /// The forbidden factor.
        #[arg(long)]
        word: String,
        #[arg(long, value_parser = positive, default_value = "10")]
        max_degree: usize,
        /// Report the exponential growth rate instead of the table.
        #[arg(long)]
        rate: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Exponential base of a free algebra, or a greedy base sequence.
    Base {
        /// Letter counts by degree, `k_1,k_2,...`.
        #[arg(long, conflicts_with = "alphabet", value_delimiter = ',')]
        degrees: Option<Vec<u64>>,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, default_value = "1e-12")]
        tolerance: String,
        /// Build the greedy sequence `k_i` for this base in (1, 2] instead.
        #[arg(long, value_name = "M0", conflicts_with_all = ["degrees", "alphabet"])]
        greedy: Option<String>,
        #[arg(long, default_value = "40", requires = "greedy")]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Growth of the subalgebra generated by a set of elements.
    Growth {
        #[arg(long, default_value = "y:1,x:1")]
        alphabet: String,
        #[command(flatten)]
        generators: Generators,
        #[arg(long, value_parser = positive)]
        max_degree: usize,
        #[command(flatten)]
        linear: Linear,
        #[command(flatten)]
        output: Output,
    },
    /// Cogrowth of the ideal or ℓ-subideal closure of a set of elements.
    Cogrowth {
        #[arg(long, default_value = "y:1,x:1")]
        alphabet: String,
        #[command(flatten)]
        generators: Generators,
        #[arg(long, value_parser = positive, default_value = "1")]
        level: usize,
        #[arg(long, value_parser = positive)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "linear")]
        engine: Engine,
        #[command(flatten)]
        linear: Linear,
        #[command(flatten)]
        output: Output,
    },
    /// Completes a homogeneous irreducible set to a free subalgebra of finite codimension.
    Complement {
        #[arg(long, default_value = "y:1,x:1")]
        alphabet: String,
        #[command(flatten)]
        generators: Generators,
        #[arg(long, value_parser = positive)]
        max_degree: usize,
        /// List the adjoined LS-commutators instead of the per-degree summary.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        linear: Linear,
        #[command(flatten)]
        output: Output,
    },
    /// Least n with D^n(a) outside the ideal generated by x1..xk.
    Derive {
        /// Element over letters `x<i>` or `x<j>_<i>`.
        #[arg(long)]
        element: String,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        k: u16,
        #[arg(long, default_value = "50", value_parser = positive)]
        max_steps: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Splices config-file flags in after the subcommand name, ahead of the
/// user's own flags so that those override.
pub fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let mut args = Vec::with_capacity(argv.len());
    let mut path: Option<PathBuf> = None;
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy().into_owned();
        if s == "--config" {
            let Some(p) = it.next() else {
                return Err(Failure::Usage("--config needs a file".into()));
            };
            path = Some(p.into());
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(p.into());
        } else {
            args.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Compute(format!("cannot read config {}: {e}", path.display())))?;
    let entries = parse_config(&text)?;
    let Some(pos) = args.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')) else {
        return Ok(args);
    };
    let pos = pos + 1;
    let name = args[pos].to_string_lossy().into_owned();
    let command = Cli::command();
    let Some(sub) = command.find_subcommand(&name) else {
        return Ok(args);
    };
    let accepted: Vec<String> = sub.get_arguments().filter_map(|a| a.get_long().map(str::to_string)).collect();
    let known: Vec<String> = command
        .get_subcommands()
        .flat_map(|s| s.get_arguments().filter_map(|a| a.get_long().map(str::to_string)))
        .collect();
    let mut spliced = Vec::new();
    for (key, value) in entries {
        if !known.contains(&key) {
            return Err(Failure::Usage(format!("unknown config key `{key}`")));
        }
        if accepted.contains(&key) {
            let boolean = sub
                .get_arguments()
                .find(|a| a.get_long() == Some(key.as_str()))
                .is_some_and(|a| !a.get_action().takes_values());
            if boolean {
                match value.as_str() {
                    "true" => spliced.push(OsString::from(format!("--{key}"))),
                    "false" => {}
                    _ => return Err(Failure::Usage(format!("config key `{key}` expects true or false"))),
                }
            } else {
                spliced.push(OsString::from(format!("--{key}={value}")));
            }
        }
    }
    args.splice(pos + 1..pos + 1, spliced);
    Ok(args)
}

fn parse_config(text: &str) -> Result<Vec<(String, String)>, Failure> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::Usage(format!("config line {}: expected key = value", i + 1)));
        };
        let key = key.trim().trim_start_matches("--").to_string();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c == '-') {
            return Err(Failure::Usage(format!("config line {}: bad key `{key}`", i + 1)));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}
