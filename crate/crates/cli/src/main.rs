use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use rideal::atoms::{atom_table, atomaton_with_cap};
use rideal::io::{dfa_to_dot, dfa_to_json, load_automaton};
use rideal::ops::{self, BooleanOp};
use rideal::transform::{syntactic_semigroup_size, DEFAULT_SEMIGROUP_CAP};
use rideal::verify::{Harness, VerifyConfig};
use rideal::witnesses::{Family, WitnessSpec};
use rideal::{Dfa, Error, DEFAULT_SUBSET_CAP};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "rideal", version, about = "State complexity of regular right ideals")]
struct Cli {
    /// Cap on subset-construction states
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_CAP)]
    subset_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a witness DFA (families: r:abcd, r:ad, r:abd, r:bad, p, l)
    Witness {
        family: Family,
        n: usize,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Number of states of the minimal equivalent DFA
    Complexity { file: PathBuf },
    /// Size of the syntactic semigroup
    Semigroup {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEMIGROUP_CAP)]
        cap: usize,
    },
    /// List the atoms and their complexities
    Atoms {
        file: PathBuf,
        /// Summarize by co-basis size instead of listing atoms
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Apply an operation and report the complexity of the result
    Op {
        op: OpName,
        file1: PathBuf,
        file2: Option<PathBuf>,
        /// Also print the minimal result as JSON
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Also print the minimal result as DOT
        #[arg(long)]
        dot: bool,
    },
    /// Check every complexity claim over a grid of sizes
    Verify {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        #[arg(long, default_value_t = 7)]
        semigroup_max: usize,
        #[arg(long, default_value_t = DEFAULT_SEMIGROUP_CAP)]
        semigroup_cap: usize,
        /// Seed for the randomized word-sample oracle
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random DFA pairs for the word-sample oracle (0 disables it)
        #[arg(long, default_value_t = 200)]
        oracle_pairs: usize,
        #[arg(long, env = "RIDEAL_WORKERS")]
        workers: Option<usize>,
        /// Record per-cell wall-clock time (makes output nondeterministic)
        #[arg(long)]
        timings: bool,
        #[arg(long, conflicts_with = "markdown")]
        json: bool,
        #[arg(long)]
        markdown: bool,
    },
    /// Maximal atom complexities for right ideals and regular languages
    Table1 {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    Union,
    Intersect,
    Diff,
    Symdiff,
    Concat,
    Star,
    Reverse,
}

fn load_dfa(path: &PathBuf, cap: usize) -> Result<Dfa, Error> {
    load_automaton(path)?.into_dfa(cap)
}

fn second(file2: Option<PathBuf>) -> Result<PathBuf, Error> {
    file2.ok_or_else(|| Error::Input("this operation needs two automata".into()))
}

fn run(cli: Cli) -> Result<u8, Error> {
    let cap = cli.subset_cap;
    match cli.command {
        Command::Witness { family, n, dot, json } => {
            let dfa = WitnessSpec::new(family, n).build()?;
            if dot {
                print!("{}", dfa_to_dot(&dfa));
            } else if json {
                println!("{}", dfa_to_json(&dfa));
            } else {
                println!("{family} n={n}: {} states, complexity {}", dfa.n(), dfa.complexity());
                for (x, &c) in dfa.alphabet().letters().iter().enumerate() {
                    println!("{c}: {}", dfa.letter_map(x));
                }
                println!("initial {} finals {}", dfa.initial(), dfa.finals());
            }
        }
        Command::Complexity { file } => {
            println!("complexity {}", load_dfa(&file, cap)?.complexity());
        }
        Command::Semigroup { file, cap: scap } => {
            let dfa = load_dfa(&file, cap)?;
            println!("semigroup {}", syntactic_semigroup_size(&dfa, scap)?);
        }
        Command::Atoms { file, table, json } => {
            let dfa = load_dfa(&file, cap)?;
            let atoms = atomaton_with_cap(&dfa, cap)?.atoms_with_complexity(cap)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&atoms)?);
            } else if table {
                let n = dfa.complexity();
                println!("| r | atoms | max complexity |\n|---|---|---|");
                for r in 0..=n {
                    let with_r: Vec<_> = atoms.iter().filter(|a| a.r() == r).collect();
                    if let Some(max) = with_r.iter().filter_map(|a| a.complexity).max() {
                        println!("| {r} | {} | {max} |", with_r.len());
                    }
                }
            } else {
                println!("{} atoms", atoms.len());
                for a in &atoms {
                    println!(
                        "basis {} cobasis {} r={} complexity {}",
                        a.basis,
                        a.cobasis,
                        a.r(),
                        a.complexity.unwrap_or(0)
                    );
                }
            }
        }
        Command::Op { op, file1, file2, json, dot } => {
            let left = load_dfa(&file1, cap)?;
            let result = match op {
                OpName::Star => ops::star_with_cap(&left, cap)?,
                OpName::Reverse => {
                    let d = left.minimize().to_nfa().reverse().determinize(cap)?.dfa;
                    d.minimize()
                }
                OpName::Concat => {
                    let right = load_dfa(&second(file2)?, cap)?;
                    ops::concat_with_cap(&left, &right, cap)?
                }
                OpName::Union | OpName::Intersect | OpName::Diff | OpName::Symdiff => {
                    let right = load_dfa(&second(file2)?, cap)?;
                    let bop = match op {
                        OpName::Union => BooleanOp::Union,
                        OpName::Intersect => BooleanOp::Intersection,
                        OpName::Diff => BooleanOp::Difference,
                        _ => BooleanOp::SymmetricDifference,
                    };
                    ops::boolean(&left, &right, bop)?
                }
            };
            println!("complexity {}", result.complexity());
            if json {
                println!("{}", dfa_to_json(&result.minimize()));
            } else if dot {
                print!("{}", dfa_to_dot(&result.minimize()));
            }
        }
        Command::Verify {
            n_min,
            n_max,
            m_max,
            semigroup_max,
            semigroup_cap,
            seed,
            oracle_pairs,
            workers,
            timings,
            json,
            markdown,
        } => {
            if let Some(w) = workers {
                if w == 0 {
                    return Err(Error::Input("--workers must be at least 1".into()));
                }
                if rayon::ThreadPoolBuilder::new().num_threads(w).build_global().is_err() {
                    warn!("thread pool already initialised; ignoring --workers");
                }
            }
            let config = VerifyConfig {
                n_min,
                n_max,
                m_max,
                semigroup_max,
                subset_cap: cap,
                semigroup_cap,
                seed,
                oracle_pairs,
                timings,
            };
            let report = Harness::new(config).run()?;
            if json {
                println!("{}", report.to_json());
            } else if markdown {
                print!("{}", report.to_markdown());
            } else {
                for c in &report.claims {
                    println!("{}", c.line());
                }
                if !report.degenerate.is_empty() {
                    println!("-- degenerate sizes --");
                    for c in &report.degenerate {
                        println!("{}", c.line());
                    }
                }
                if let Some(o) = &report.oracle {
                    println!(
                        "{:<16} ORACLE seed={} pairs={} checks={} disagreements={}",
                        if o.pass() { "PASS" } else { "FAIL" },
                        o.seed,
                        o.pairs,
                        o.words_checked,
                        o.disagreements
                    );
                }
            }
            info!(
                "{} passed, {} failed, {} skipped",
                report.passes(),
                report.failures(),
                report.resource_skips()
            );
            if report.failures() > 0 {
                return Ok(EXIT_FAIL);
            }
            if report.resource_skips() > 0 {
                return Ok(EXIT_RESOURCE);
            }
        }
        Command::Table1 { n_max, json } => {
            let table = atom_table(n_max, cap)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&table.to_json())?);
            } else {
                print!("{}", table.to_markdown());
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { EXIT_RESOURCE } else { EXIT_INPUT })
        }
    }
}
