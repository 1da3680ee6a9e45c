use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use coxnorm_cli::report::{render_dot, render_text};
use coxnorm_cli::run::{exit_code, run, Command, GroupSpec, RunConfig};
use coxnorm_cli::{examples, Report};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "coxnorm", version, about = "Normalizers of finite parabolic subgroups of Coxeter groups")]
#[command(after_help = after_help())]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Directory for cached Leech shells (default: $COXNORM_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Step budget for Leech searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest Coxeter group the root-system oracle will enumerate.
    #[arg(long, global = true, default_value_t = coxnorm::parabolic::DEFAULT_ORACLE_LIMIT)]
    oracle_limit: u128,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Diagram file, or `leech`.
    #[arg(long)]
    pi: Option<String>,
    /// Nodes of J (`a,b,c`), a type such as `E6`, or a diagram file.
    #[arg(long)]
    j: Option<String>,
    /// `full`, `trivial`, or a file of generators in cycle notation.
    #[arg(long, default_value = "full")]
    gamma_j: String,
    #[arg(long, default_value = "trivial")]
    r: String,
    #[arg(long, default_value = "full")]
    gamma_pi: String,
    /// Named example (see below).
    #[arg(long)]
    example: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Classify a diagram, list isometries J -> S with adjacency and classes.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Run the larger-extension scan for these types.
        #[arg(long, value_delimiter = ',')]
        scan: Vec<String>,
    },
    /// Build the category for (Π, J) and describe the normalizer.
    Normalizer {
        #[command(flatten)]
        common: Common,
        /// Seed for a random spanning tree.
        #[arg(long)]
        tree_seed: Option<u64>,
        /// Keep every extension point, even those orthogonal to some K(J).
        #[arg(long)]
        no_reflectivity_filter: bool,
        #[arg(long)]
        max_rank: Option<usize>,
    },
    /// Odd-bond graph for J = A1 and the category cross-check.
    Brink {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        node: Option<String>,
    },
    /// Run a named Leech lattice example.
    LeechExample {
        #[arg(long)]
        example: String,
        #[arg(long)]
        tree_seed: Option<u64>,
    },
    /// Sizes of the Golay code octads and the first Leech shells.
    Shells,
}

fn after_help() -> String {
    format!("Examples:\n{}", examples::listing())
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let apply_common = |cfg: &mut RunConfig, c: &Common| -> Result<()> {
        cfg.pi = c.pi.clone();
        cfg.j = c.j.clone();
        cfg.gamma_j = GroupSpec::parse(&c.gamma_j)?;
        cfg.r = GroupSpec::parse(&c.r)?;
        cfg.gamma_pi = GroupSpec::parse(&c.gamma_pi)?;
        cfg.example = c.example.clone();
        Ok(())
    };
    let mut cfg = match &cli.command {
        Sub::Classify { common, scan } => {
            let mut cfg = RunConfig::new(Command::Classify);
            apply_common(&mut cfg, common)?;
            cfg.scan = scan.clone();
            cfg
        }
        Sub::Normalizer {
            common,
            tree_seed,
            no_reflectivity_filter,
            max_rank,
        } => {
            let mut cfg = RunConfig::new(Command::Normalizer);
            apply_common(&mut cfg, common)?;
            cfg.tree_seed = *tree_seed;
            cfg.reflectivity_filter = !no_reflectivity_filter;
            cfg.max_rank = *max_rank;
            cfg
        }
        Sub::Brink { common, node } => {
            let mut cfg = RunConfig::new(Command::Brink);
            apply_common(&mut cfg, common)?;
            cfg.node = node.clone();
            cfg
        }
        Sub::LeechExample { example, tree_seed } => {
            let mut cfg = RunConfig::with_example(Command::LeechExample, example);
            cfg.tree_seed = *tree_seed;
            cfg
        }
        Sub::Shells => RunConfig::new(Command::Shells),
    };
    cfg.cache = cli
        .cache
        .clone()
        .or_else(|| std::env::var_os("COXNORM_CACHE").map(PathBuf::from));
    cfg.budget = cli.budget;
    cfg.oracle_limit = cli.oracle_limit;
    Ok(cfg)
}

fn emit(format: Format, r: &Report) -> Result<()> {
    match format {
        Format::Text => print!("{}", render_text(r)),
        Format::Json => println!("{}", serde_json::to_string_pretty(r)?),
        Format::Dot => match render_dot(r) {
            Some(d) => print!("{d}"),
            None => anyhow::bail!("dot output is only available for normalizer runs"),
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        coxnorm::par::init_threads(t);
    }
    let result = config(&cli).and_then(|c| run(&c));
    let code = exit_code(&result);
    match result.and_then(|r| emit(cli.format, &r)) {
        Ok(()) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if code == 0 { 1 } else { code as u8 })
        }
    }
}
