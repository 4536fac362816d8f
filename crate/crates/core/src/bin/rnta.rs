use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use rnta::format::{parse_automaton_with, parse_data_tree, parse_signature, parse_term, print_automaton, print_term, FormatError};
use rnta::inclusion::{include, Inclusion};
use rnta::namedrop::name_drop;
use rnta::nfta::restrict;
use rnta::nominal::{is_identifier, Name, NameSet};
use rnta::oracle::{brute_alphatic_counterexample, brute_local_counterexample, enum_terms};
use rnta::rnta::RntaSpec;
use rnta::semantics::{Recognizer, SemanticsKind, DEFAULT_MAX_NODES};

/// Regular nominal tree automata: validation, membership and inclusion.
#[derive(Parser)]
#[command(name = "rnta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an automaton file and report its size and degree.
    Validate { automaton: PathBuf },
    /// Decide membership of a term (alphatic) or data tree (other semantics).
    Member {
        automaton: PathBuf,
        input: PathBuf,
        #[arg(long, default_value = "alphatic")]
        semantics: SemanticsKind,
        /// Node cap for global and branchwise membership.
        #[arg(long, env = "RNTA_MAX_NODES", default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
    },
    /// Decide inclusion of two languages.
    Include {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value = "alphatic")]
        semantics: SemanticsKind,
        /// Write the counterexample term here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Cross-check the answer by enumeration up to this height.
        #[arg(long, value_name = "DEPTH")]
        verify: Option<usize>,
    },
    /// Print the name-dropping modification of an automaton.
    Namedrop { automaton: PathBuf },
    /// Print the finite tree automaton over a finite name set.
    Restrict {
        automaton: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        names: Vec<String>,
    },
    /// Print every term up to a height over a signature and name set.
    Enumerate {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        names: Vec<String>,
        #[arg(long)]
        depth: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_file(path: &Path) -> Result<Result<RntaSpec, FormatError>> {
    let text = read(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = move |f: &str| fs::read_to_string(dir.join(f)).map_err(|e| format!("cannot read {f}: {e}"));
    Ok(parse_automaton_with(&text, &resolve))
}

fn load_automaton(path: &Path) -> Result<RntaSpec> {
    parse_file(path)?.map_err(|e| located(path, e))
}

fn located(path: &Path, e: FormatError) -> anyhow::Error {
    anyhow!("{}:{e}", path.display())
}

fn name_set(names: &[String]) -> Result<NameSet> {
    names
        .iter()
        .map(|s| {
            let s = s.trim();
            if s == "_" || is_identifier(s) {
                Ok(Name::intern(s))
            } else {
                Err(anyhow!("not a name: `{s}`"))
            }
        })
        .collect()
}

/// Exit status: 0 for yes/holds/valid, 1 for no/counterexample/invalid.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { automaton } => {
            let a = match parse_file(&automaton)? {
                Err(e @ FormatError::Invalid(_)) => {
                    eprintln!("{}:{e}", automaton.display());
                    return Ok(false);
                }
                r => r.map_err(|e| located(&automaton, e))?,
            };
            println!(
                "ok: {} orbits, {} rules, degree {}",
                a.orbits().len(),
                a.rules().len(),
                a.degree()
            );
            Ok(true)
        }
        Command::Member {
            automaton,
            input,
            semantics,
            max_nodes,
        } => {
            let a = load_automaton(&automaton)?;
            let text = read(&input)?;
            let r = Recognizer::new(&a).with_max_nodes(max_nodes);
            let yes = if semantics == SemanticsKind::Alphatic {
                let t = parse_term(&text, Some(a.signature())).map_err(|e| located(&input, e))?;
                r.alphatic(&t)
            } else {
                let s = parse_data_tree(&text, Some(a.signature())).map_err(|e| located(&input, e))?;
                r.data(&s, semantics)?
            };
            println!("{}", if yes { "accept" } else { "reject" });
            Ok(yes)
        }
        Command::Include {
            left,
            right,
            semantics,
            witness,
            verify,
        } => {
            let a = load_automaton(&left)?;
            let b = load_automaton(&right)?;
            let answer = include(&a, &b, semantics)?;
            match &answer {
                Inclusion::Holds => println!("holds"),
                Inclusion::Counterexample(w) => {
                    println!("counterexample: {}", print_term(&w.term));
                    if let Some(s) = &w.data_tree {
                        println!("data tree: {}", print_term(s.as_term()));
                    }
                    if let Some(path) = witness {
                        fs::write(&path, print_term(&w.term) + "\n").with_context(|| format!("cannot write {}", path.display()))?;
                    }
                }
            }
            if let Some(depth) = verify {
                let brute = if semantics == SemanticsKind::Local {
                    brute_local_counterexample(&a, &b, depth).is_none()
                } else {
                    brute_alphatic_counterexample(&a, &b, depth).is_none()
                };
                // Enumeration only sees counterexamples up to `depth`.
                if brute && !answer.holds() {
                    eprintln!("verify: no counterexample up to height {depth}");
                } else if !brute && answer.holds() {
                    bail!("verify: enumeration found a counterexample up to height {depth}");
                } else {
                    eprintln!("verify: agrees up to height {depth}");
                }
            }
            Ok(answer.holds())
        }
        Command::Namedrop { automaton } => {
            let a = load_automaton(&automaton)?;
            print!("{}", print_automaton(&name_drop(&a)?));
            Ok(true)
        }
        Command::Restrict { automaton, names } => {
            let a = load_automaton(&automaton)?;
            print!("{}", restrict(&a, &name_set(&names)?)?);
            Ok(true)
        }
        Command::Enumerate { sig, names, depth } => {
            let signature = parse_signature(&read(&sig)?).map_err(|e| located(&sig, e))?;
            if depth == 0 {
                bail!("depth must be positive");
            }
            let mut out = io::stdout().lock();
            for t in enum_terms(&signature, &name_set(&names)?, depth) {
                match writeln!(out, "{}", print_term(&t)) {
                    Err(e) if e.kind() == io::ErrorKind::BrokenPipe => break,
                    r => r?,
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
