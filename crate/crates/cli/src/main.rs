mod commands;
mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isoperf::{Error, Group, GroupSpec};

/// Growth functions, U-transforms and isoperimetric bounds for finitely
/// generated groups.
#[derive(Parser, Debug)]
#[command(name = "isoperf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "ISOPERF_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ball sizes and sphere sizes up to a radius.
    Growth {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 10)]
        radius: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Every lower bound on |∂D|/|D| for |D| = 1..=max-size.
    Bounds {
        #[command(flatten)]
        group: GroupArgs,
        /// Growth table radius; grown automatically when omitted.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = 20)]
        max_size: usize,
        /// Extra λ values for the (1 - 1/λ)/φ(λt) bounds.
        #[arg(long = "lambda")]
        lambdas: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// U-transform curve, from a group's growth table or a growth model.
    Transform {
        #[command(flatten)]
        group: OptionalGroupArgs,
        /// Growth model such as `polynomial:c=2,d=1`, `stretched_exp:c=1,b=1,alpha=0.5`
        /// or `exponential`.
        #[arg(long, conflicts_with_all = ["kind", "group"])]
        model: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
        /// Largest t for a group curve.
        #[arg(long, default_value_t = 50)]
        max_size: usize,
        /// Sample points t for a model curve (repeatable).
        #[arg(long = "t")]
        ts: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Isoperimetric profile I(m) for m = 1..=max-size.
    Profile {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Følner function value or bounds.
    Folner {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 2)]
        n: u64,
        /// Size cap of the exact search in infinite groups.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cheeger constant and Laplacian spectral gap of a finite group.
    Cheeger {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the growth-based inequalities on subset families; exits 1 on
    /// any violation.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Random connected subsets to add to the sweep.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Group kind: free, free_abelian, dihedral, cyclic, heisenberg, lamplighter.
    #[arg(long, required_unless_present = "group", conflicts_with = "group")]
    kind: Option<String>,
    /// Group parameter `k=v` (repeatable).
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    /// JSON group file.
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OptionalGroupArgs {
    #[arg(long, conflicts_with = "group")]
    kind: Option<String>,
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_group(kind: Option<&str>, params: &[String], file: Option<&PathBuf>) -> isoperf::Result<Group> {
    let spec = match (kind, file) {
        (_, Some(path)) => GroupSpec::from_json(&std::fs::read_to_string(path)?)?,
        (Some(kind), None) => {
            let mut map = BTreeMap::new();
            for p in params {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidSpec(format!("parameter {p:?} is not k=v")))?;
                let v: u64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("parameter {k} must be an integer")))?;
                map.insert(k.trim().to_string(), v);
            }
            GroupSpec::from_kind(kind, &map)?
        }
        (None, None) => return Err(Error::InvalidSpec("give --kind or --group".into())),
    };
    Group::new(spec)
}

impl GroupArgs {
    fn load(&self) -> isoperf::Result<Group> {
        load_group(self.kind.as_deref(), &self.params, self.group.as_ref())
    }
}

impl OptionalGroupArgs {
    fn load(&self) -> Option<isoperf::Result<Group>> {
        if self.kind.is_none() && self.group.is_none() {
            return None;
        }
        Some(load_group(self.kind.as_deref(), &self.params, self.group.as_ref()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n > 0 {
            // only fails if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
    }
}
