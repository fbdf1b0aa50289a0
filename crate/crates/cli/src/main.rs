use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use socstable::bench::{rows_to_csv, run_bench, BenchConfig};
use socstable::da::{Outcome, SolveTrace};
use socstable::exact::{exact_max_socially_stable, DEFAULT_AGENT_LIMIT};
use socstable::generators::{gen_random, GenConfig};
use socstable::io::{parse_graph, parse_instance, parse_matching, serialize_instance, serialize_matching};
use socstable::reduction::{extract_independent_set, reduce_is_to_socstable};
use socstable::socgs::socgs;
use socstable::stability::{blocking_pairs, is_individually_rational, social_blocking_pairs};
use socstable::{Instance, Matching, ReductionError};

#[derive(Parser)]
#[command(name = "socstable", version, about = "Maximum socially stable matching toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run socGS and print the matching.
    Solve {
        file: PathBuf,
        /// Print every deferred-acceptance run to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Compute a maximum socially stable matching exhaustively.
    Exact {
        file: PathBuf,
        /// Maximum number of agents (men + women).
        #[arg(long, default_value_t = DEFAULT_AGENT_LIMIT)]
        limit: usize,
    },
    /// Check a matching; exits 1 and prints the blocking pairs if it fails.
    Check {
        file: PathBuf,
        matching: PathBuf,
        #[command(flatten)]
        mode: CheckMode,
    },
    /// Build the matching instance for an Independent Set graph.
    Reduce { graph: PathBuf },
    /// Recover an independent set from a socially stable matching of the
    /// reduced instance.
    Extract { graph: PathBuf, matching: PathBuf },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        men: usize,
        #[arg(long)]
        women: usize,
        #[arg(long)]
        p_accept: f64,
        #[arg(long)]
        p_social: f64,
        #[arg(long)]
        seed: u64,
        /// Draw each side's acceptability independently.
        #[arg(long)]
        asymmetric: bool,
    },
    /// Compare socGS, the stable baseline and the exact optimum on random
    /// instances; prints CSV.
    Bench {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        max_agents: usize,
        #[arg(long)]
        seed: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct CheckMode {
    /// Social stability (default).
    #[arg(long)]
    social: bool,
    /// Classic stability: every pair may block.
    #[arg(long)]
    classic: bool,
}

/// Failure with its exit code: 2 for input problems, 3 for size guards.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure { code: 2, message: e.to_string() }
    }

    fn too_large(e: impl std::fmt::Display) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_matching(instance: &Instance, path: &Path) -> Result<Matching, Failure> {
    parse_matching(instance, &read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn format_trace(instance: &Instance, trace: &SolveTrace, out: &mut String) {
    for p in &trace.proposals {
        let (m, w) = (instance.man_name(p.man), instance.woman_name(p.woman));
        let _ = match p.outcome {
            Outcome::Accepted => writeln!(out, "  {m} -> {w}: accepted"),
            Outcome::Rejected => writeln!(out, "  {m} -> {w}: rejected"),
            Outcome::Displaced { previous } => {
                writeln!(out, "  {m} -> {w}: accepted, displaces {}", instance.man_name(previous))
            }
        };
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve { file, trace } => {
            let instance = load_instance(&file)?;
            let result = socgs(&instance);
            if trace {
                let mut log = String::new();
                for (k, it) in result.iterations.iter().enumerate() {
                    let label = match it.promoted {
                        None => "initial".to_owned(),
                        Some(m) => format!("second chance for {}", instance.man_name(m)),
                    };
                    let _ = writeln!(log, "run {} ({label}): {} rounds", k + 1, it.trace.rounds);
                    format_trace(&instance, &it.trace, &mut log);
                }
                let _ = writeln!(log, "deferred-acceptance runs: {}", result.da_run_count);
                eprint!("{log}");
            }
            print!("{}", serialize_matching(&instance, &result.matching));
            Ok(0)
        }
        Command::Exact { file, limit } => {
            let instance = load_instance(&file)?;
            let best = exact_max_socially_stable(&instance, limit).map_err(Failure::too_large)?;
            print!("{}", serialize_matching(&instance, &best));
            Ok(0)
        }
        Command::Check { file, matching, mode } => {
            let instance = load_instance(&file)?;
            let mu = load_matching(&instance, &matching)?;
            let report = if mode.classic {
                blocking_pairs(&instance, &mu)
            } else {
                social_blocking_pairs(&instance, &mu)
            };
            let mut out = String::new();
            for (m, w) in mu.named_pairs(&instance) {
                let (mi, wi) = (instance.man_by_name(m).unwrap(), instance.woman_by_name(w).unwrap());
                if !instance.mutually_acceptable(mi, wi) {
                    let _ = writeln!(out, "unacceptable {m} {w}");
                }
            }
            for (m, w) in &report.pairs {
                let _ = writeln!(out, "blocking {m} {w}");
            }
            print!("{out}");
            let ok = is_individually_rational(&instance, &mu) && report.is_empty();
            Ok(if ok { 0 } else { 1 })
        }
        Command::Reduce { graph } => {
            let graph = parse_graph(&read(&graph)?).map_err(Failure::input)?;
            let (instance, _) = reduce_is_to_socstable(&graph);
            print!("{}", serialize_instance(&instance));
            Ok(0)
        }
        Command::Extract { graph, matching } => {
            let graph = parse_graph(&read(&graph)?).map_err(Failure::input)?;
            let (instance, map) = reduce_is_to_socstable(&graph);
            let mu = load_matching(&instance, &matching)?;
            let set = extract_independent_set(&graph, &instance, &map, &mu).map_err(|e| match e {
                ReductionError::GraphTooLarge { .. } => Failure::too_large(e),
                other => Failure::input(other),
            })?;
            for i in set {
                println!("{}", graph.vertex_name(i));
            }
            Ok(0)
        }
        Command::Gen { men, women, p_accept, p_social, seed, asymmetric } => {
            let config = GenConfig { n_men: men, n_women: women, p_accept, p_social, seed, asymmetric };
            if !config.is_valid() {
                return Err(Failure::input("probabilities must lie in [0, 1]"));
            }
            print!("{}", serialize_instance(&gen_random(&config)));
            Ok(0)
        }
        Command::Bench { count, max_agents, seed, csv } => {
            if max_agents < 2 {
                return Err(Failure::input("--max-agents must be at least 2"));
            }
            let rows = run_bench(&BenchConfig { count, max_agents, seed });
            let text = rows_to_csv(&rows);
            match csv {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
