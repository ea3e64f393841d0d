//! Exit codes: 0 success, 1 negative outcome (violations, rejection,
//! non-emptiness, an unexpected experiment outcome), 2 usage or input error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mtap::experiments::{run_row, table1_rows, RowResult, DEFAULT_MAX_STATES};
use mtap::textio::{
    load_environment, parse_automaton, parse_formula, parse_nword, serialize_automaton,
    write_environment,
};
use mtap::theory::{compile, CompileOptions, Environment};
use mtap::{
    accepting_run, complement, complement_approx, determinize_approx, intersect, nonempty_witness,
    rename_tapes, trim, union, AutomatonBuilder, IntersectOptions, MultiTapeAutomaton, PathMode,
};

const INTERSECT_DEFAULT_CAP: usize = 100_000;

#[derive(Parser)]
#[command(name = "mtap", version, about = "Asynchronous multi-tape automata")]
struct Cli {
    /// Do not report wall-clock times.
    #[arg(long, global = true)]
    no_times: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Paths {
    Shortest,
    Acyclic,
}

impl From<Paths> for PathMode {
    fn from(p: Paths) -> Self {
        match p {
            Paths::Shortest => PathMode::Shortest,
            Paths::Acyclic => PathMode::Acyclic,
        }
    }
}

/// A delay bound: a natural number or `inf`.
#[derive(Clone, Copy, Debug)]
struct Delay(Option<usize>);

impl FromStr for Delay {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "inf" => Ok(Delay(None)),
            n => n
                .parse()
                .map(|d| Delay(Some(d)))
                .map_err(|_| format!("expected a number or `inf`, got `{n}`")),
        }
    }
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the well-formedness conditions.
    Validate { file: PathBuf },
    /// Decide whether the automaton accepts an n-word such as `X=ab Y=_`.
    Accepts {
        file: PathBuf,
        #[arg(long)]
        word: String,
        /// Print the accepting run.
        #[arg(long)]
        trace: bool,
    },
    /// Emptiness test; prints a witness when non-empty.
    Empty { file: PathBuf },
    Union {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Complement of a deterministic automaton.
    Complement {
        a: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Rename tapes, e.g. `--map X=Z,Y=W`.
    Rename {
        a: PathBuf,
        #[arg(long)]
        map: String,
        #[command(flatten)]
        out: Output,
    },
    Trim {
        a: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Delay-bounded intersection; writes the trimmed result.
    Intersect {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value = "inf")]
        max_delay: Delay,
        /// Defaults to MTAP_MAX_STATES, or 100000, when the delay is unbounded.
        #[arg(long)]
        max_states: Option<usize>,
        #[arg(long)]
        stop_on_accept: bool,
        #[arg(long, value_enum, default_value = "shortest")]
        paths: Paths,
    },
    /// Bounded-lookahead deterministic under-approximation.
    Determinize {
        a: PathBuf,
        #[arg(long)]
        bound: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Over-approximate complement of a nondeterministic automaton.
    ComplementApprox {
        a: PathBuf,
        #[arg(long)]
        bound: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Compile a formula to an automaton over its variables.
    Compile {
        formula: PathBuf,
        /// Directory of predicate automata; the built-in sequence predicates when omitted.
        #[arg(long)]
        env: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value = "0")]
        max_delay: Delay,
        #[arg(long)]
        max_states: Option<usize>,
        #[arg(long)]
        stop_on_accept: bool,
    },
    /// Run a predefined experiment.
    Experiment {
        #[arg(value_enum)]
        which: Experiment,
        /// Per-row state cap.
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Write the built-in sequence predicates as an environment directory.
    WriteEnv { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    Table1,
}

fn read_automaton(path: &Path) -> Result<MultiTapeAutomaton> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_automaton(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The text format requires at least one state, so an automaton trimmed to
/// nothing is written as a single dead initial state.
fn writable(a: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    if a.num_states() > 0 {
        return Ok(a.clone());
    }
    let Some(tape) = a.tapes().first() else {
        bail!("cannot write an automaton with neither states nor tapes");
    };
    let mut b = AutomatonBuilder::new(a.name(), a.alphabet().clone(), a.tapes())?;
    b.add_state(0, Some(tape))?.set_initial(0)?;
    Ok(b.build())
}

fn emit(a: &MultiTapeAutomaton, out: &Output) -> Result<()> {
    let text = serialize_automaton(&writable(a)?);
    match &out.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Size line: to standard output when the automaton goes to a file.
fn report(a: &MultiTapeAutomaton, out: &Output) {
    let line = format!(
        "states {} transitions {}",
        a.num_states(),
        a.num_transitions()
    );
    if out.output.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn env_cap() -> Result<usize> {
    match std::env::var("MTAP_MAX_STATES") {
        Ok(v) => v.parse().with_context(|| format!("MTAP_MAX_STATES={v}")),
        Err(_) => Ok(INTERSECT_DEFAULT_CAP),
    }
}

fn seconds(d: std::time::Duration, no_times: bool) -> String {
    if no_times {
        "-".into()
    } else {
        format!("{:.3}", d.as_secs_f64())
    }
}

fn table1(max_states: usize, no_times: bool) -> Result<bool> {
    let env = Environment::sequences();
    let mut results: Vec<RowResult> = Vec::new();
    println!("row\tintersect_s\tstates\ttransitions\temptiness_s\tempty\texpected\twitness");
    for row in table1_rows() {
        let r = run_row(&row, &env, max_states)?;
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.name,
            seconds(r.intersect_time, no_times),
            r.states,
            r.transitions,
            seconds(r.emptiness_time, no_times),
            r.outcome(),
            if r.expect_empty { 'Y' } else { 'N' },
            r.witness
                .as_ref()
                .map(|w| w.to_string())
                .unwrap_or_else(|| "-".into()),
        );
        results.push(r);
    }
    println!();
    println!(
        "{:<12} {:>10} {:>8} {:>8} {:>10} {:>3}",
        "", "t", "|Q|", "|δ|", "t", "?"
    );
    for r in &results {
        println!(
            "{:<12} {:>10} {:>8} {:>8} {:>10} {:>3}{}",
            r.name,
            seconds(r.intersect_time, no_times),
            r.states,
            r.transitions,
            seconds(r.emptiness_time, no_times),
            r.outcome(),
            if r.matches() { "" } else { "  MISMATCH" },
        );
    }
    for r in &results {
        if let Some(m) = &r.model {
            let shown: Vec<String> = m.iter().map(|(v, x)| format!("{v}={x}")).collect();
            println!("{}: counterexample {}", r.name, shown.join(" "));
        }
        if r.truncated {
            println!("{}: state cap {max_states} reached", r.name);
        }
    }
    let outcomes: String = results.iter().map(RowResult::outcome).collect();
    println!("outcomes {outcomes}");
    Ok(results.iter().all(RowResult::matches))
}

fn run(cli: Cli) -> Result<bool> {
    let no_times = cli.no_times;
    match cli.cmd {
        Cmd::Validate { file } => {
            let text =
                fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            match parse_automaton(&text) {
                Ok(_) => {
                    println!("valid");
                    Ok(true)
                }
                Err(mtap::Error::InvalidAutomaton(vs)) => {
                    for v in vs {
                        eprintln!("{v}");
                    }
                    Ok(false)
                }
                Err(e) => Err(e).with_context(|| format!("parsing {}", file.display())),
            }
        }
        Cmd::Accepts { file, word, trace } => {
            let a = read_automaton(&file)?;
            let x = parse_nword(&word)?;
            let run = accepting_run(&a, &x)?;
            println!("{}", run.is_some());
            if let (true, Some(w)) = (trace, &run) {
                print!("{w}");
            }
            Ok(run.is_some())
        }
        Cmd::Empty { file } => {
            let a = read_automaton(&file)?;
            match nonempty_witness(&a)? {
                None => {
                    println!("empty");
                    Ok(true)
                }
                Some(w) => {
                    println!("nonempty {w}");
                    Ok(false)
                }
            }
        }
        Cmd::Union { a, b, out } => {
            let c = union(&read_automaton(&a)?, &read_automaton(&b)?)?;
            emit(&c, &out)?;
            Ok(true)
        }
        Cmd::Complement { a, out } => {
            emit(&complement(&read_automaton(&a)?)?, &out)?;
            Ok(true)
        }
        Cmd::Rename { a, map, out } => {
            let mut mapping = BTreeMap::new();
            for pair in map.split(',').filter(|p| !p.is_empty()) {
                let Some((from, to)) = pair.split_once('=') else {
                    bail!("bad mapping `{pair}`, expected FROM=TO");
                };
                mapping.insert(from.to_string(), to.to_string());
            }
            emit(&rename_tapes(&read_automaton(&a)?, &mapping)?, &out)?;
            Ok(true)
        }
        Cmd::Trim { a, out } => {
            emit(&trim(&read_automaton(&a)?), &out)?;
            Ok(true)
        }
        Cmd::Intersect {
            a,
            b,
            out,
            max_delay,
            max_states,
            stop_on_accept,
            paths,
        } => {
            let (a, b) = (read_automaton(&a)?, read_automaton(&b)?);
            let cap = match (max_states, max_delay.0) {
                (Some(n), _) => Some(n),
                (None, None) => Some(env_cap()?),
                (None, Some(_)) => None,
            };
            let start = Instant::now();
            let c = intersect(
                &a,
                &b,
                IntersectOptions {
                    max_states: cap,
                    max_delay: max_delay.0,
                    stop_on_accept,
                    paths: paths.into(),
                },
            )?;
            let t = trim(&c.automaton);
            let elapsed = start.elapsed();
            emit(&t, &out)?;
            report(&t, &out);
            if c.stats.state_limit_hit {
                eprintln!("warning: state cap reached, result is partial");
            }
            if !no_times {
                eprintln!("time {:.3}s", elapsed.as_secs_f64());
            }
            Ok(true)
        }
        Cmd::Determinize { a, bound, out } => {
            emit(&determinize_approx(&read_automaton(&a)?, bound)?, &out)?;
            Ok(true)
        }
        Cmd::ComplementApprox { a, bound, out } => {
            emit(&complement_approx(&read_automaton(&a)?, bound)?, &out)?;
            Ok(true)
        }
        Cmd::Compile {
            formula,
            env,
            out,
            max_delay,
            max_states,
            stop_on_accept,
        } => {
            let text = fs::read_to_string(&formula)
                .with_context(|| format!("reading {}", formula.display()))?;
            let f =
                parse_formula(&text).with_context(|| format!("parsing {}", formula.display()))?;
            let env = match env {
                Some(dir) => {
                    load_environment(&dir).with_context(|| format!("loading {}", dir.display()))?
                }
                None => Environment::sequences(),
            };
            let start = Instant::now();
            let c = compile(
                &f,
                &env,
                CompileOptions {
                    max_delay: max_delay.0,
                    max_states,
                    stop_on_accept,
                    paths: PathMode::Shortest,
                },
            )?;
            let elapsed = start.elapsed();
            emit(&c.automaton, &out)?;
            report(&c.automaton, &out);
            if !no_times {
                eprintln!("time {:.3}s", elapsed.as_secs_f64());
            }
            Ok(true)
        }
        Cmd::Experiment {
            which: Experiment::Table1,
            max_states,
        } => table1(max_states, no_times),
        Cmd::WriteEnv { dir } => {
            write_environment(&Environment::sequences(), &dir)
                .with_context(|| format!("writing {}", dir.display()))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
