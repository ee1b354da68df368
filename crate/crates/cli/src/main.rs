use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use creachable::families::{self, RandomKind};
use creachable::{
    decide_with, reach_word, reachable_family, DecideOptions, StateSet, Verdict, WitnessProvenance,
};
use creachable_cli::dot::emit_dot;
use creachable_cli::format::{parse_automaton, AutomatonFile};
use creachable_cli::report::verdict_report;
use creachable_cli::CliError;

/// Environment override for the signature-enumeration state limit.
const ENUM_LIMIT_VAR: &str = "CREACHABLE_ENUM_LIMIT";

#[derive(Parser)]
#[command(
    name = "creachable",
    version,
    about = "Decide complete reachability of DFAs, synthesize subset-reaching words, \
             and cross-check against a brute-force power-automaton search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide complete reachability and print the layered-graph summary.
    Decide {
        file: PathBuf,
        /// Write the full verdict report as JSON.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// Write gamma_1.dot … gamma_k.dot into this directory.
        #[arg(long, value_name = "DIR")]
        dot_dir: Option<PathBuf>,
    },
    /// Synthesize a word whose image of the full state set is the given
    /// subset (states are 1-based on the command line).
    Reach {
        file: PathBuf,
        /// Comma-separated 1-based states, e.g. --set 1,3
        #[arg(long)]
        set: String,
    },
    /// Brute-force the family of reachable subsets.
    Oracle {
        file: PathBuf,
        /// Also list every unreachable non-empty subset.
        #[arg(long)]
        list_unreachable: bool,
    },
    /// Generate an automaton file.
    Gen {
        #[command(subcommand)]
        target: GenTarget,
    },
    /// Decide and cross-check the verdict against the oracle.
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum GenTarget {
    /// The 3-state, 4-letter example automaton.
    E3 {
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The 5-state, 8-letter example automaton.
    E5 {
        /// Use the table variant with 5·a_[2] = 4 instead of the
        /// corrected value 5.
        #[arg(long)]
        verbatim: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The family member E_{n,k} (2 ≤ k < n).
    Enk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The primed variant E′_{n,k} (E_{n,k} without its last letter).
    EnkPrime {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The classical n-state Černý automaton.
    Cerny {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// A seeded random automaton.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Arbitrary,
    Permutation,
}

impl From<KindArg> for RandomKind {
    fn from(kind: KindArg) -> RandomKind {
        match kind {
            KindArg::Arbitrary => RandomKind::Arbitrary,
            KindArg::Permutation => RandomKind::Permutation,
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn decide_options() -> Result<DecideOptions, CliError> {
    let mut options = DecideOptions::default();
    if let Ok(raw) = std::env::var(ENUM_LIMIT_VAR) {
        let limit = raw.parse::<usize>().map_err(|_| {
            CliError::Usage(format!("{ENUM_LIMIT_VAR} must be an integer, got {raw:?}"))
        })?;
        options.enumeration_limit = limit;
    }
    Ok(options)
}

fn execute(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Decide {
            file,
            report,
            dot_dir,
        } => cmd_decide(&file, report, dot_dir),
        Command::Reach { file, set } => cmd_reach(&file, &set),
        Command::Oracle {
            file,
            list_unreachable,
        } => cmd_oracle(&file, list_unreachable),
        Command::Gen { target } => cmd_gen(target),
        Command::Verify { file } => cmd_verify(&file),
    }
}

fn set_label(set: StateSet) -> String {
    let inner: Vec<String> = set.iter().map(|q| (q + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn print_verdict_summary(verdict: &Verdict) {
    println!("verdict: {}", verdict.status);
    println!("terminal level: {}", verdict.level);
    for (level, members) in verdict.graph.levels() {
        let labels: Vec<String> = members.iter().map(|&s| set_label(s)).collect();
        println!("Q_{level}: {}", labels.join(" "));
    }
    let components = verdict.scc.components();
    println!("components: {}", components.len());
    for c in components {
        println!("  support {} rank {}", set_label(c.support), c.rank);
    }
    if !verdict.failure_witnesses.is_empty() {
        println!("failure witness candidates:");
        for w in &verdict.failure_witnesses {
            let tag = match w.provenance {
                WitnessProvenance::ProofDerived => "proof-derived",
                WitnessProvenance::Fallback => "fallback",
            };
            println!("  {} ({tag})", set_label(w.subset));
        }
    }
}

fn cmd_decide(
    file: &Path,
    report: Option<PathBuf>,
    dot_dir: Option<PathBuf>,
) -> Result<i32, CliError> {
    let (dfa, _) = parse_automaton(file)?;
    let verdict = decide_with(&dfa, &decide_options()?)?;
    print_verdict_summary(&verdict);
    if let Some(path) = report {
        let json = verdict_report(&dfa, &verdict).to_json();
        fs::write(&path, json)
            .map_err(|e| CliError::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
        println!("report: {}", path.display());
    }
    if let Some(dir) = dot_dir {
        fs::create_dir_all(&dir)
            .map_err(|e| CliError::InvalidInput(format!("cannot create {}: {e}", dir.display())))?;
        for level in 1..=verdict.graph.max_level() {
            let text = emit_dot(&dfa, &verdict.graph, level)?;
            let path = dir.join(format!("gamma_{level}.dot"));
            fs::write(&path, text).map_err(|e| {
                CliError::InvalidInput(format!("cannot write {}: {e}", path.display()))
            })?;
        }
        println!(
            "dot: {}/gamma_1.dot … gamma_{}.dot",
            dir.display(),
            verdict.graph.max_level()
        );
    }
    Ok(if verdict.is_success() { 0 } else { 3 })
}

fn parse_set(raw: &str, state_count: usize) -> Result<StateSet, CliError> {
    let mut set = StateSet::EMPTY;
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(CliError::Usage(format!("malformed state list {raw:?}")));
        }
        let state: usize = part
            .parse()
            .map_err(|_| CliError::Usage(format!("malformed state {part:?} in {raw:?}")))?;
        if state == 0 || state > state_count {
            return Err(CliError::InvalidInput(format!(
                "state {state} outside 1..={state_count}"
            )));
        }
        set.insert(state - 1);
    }
    Ok(set)
}

fn cmd_reach(file: &Path, raw_set: &str) -> Result<i32, CliError> {
    let (dfa, _) = parse_automaton(file)?;
    let target = parse_set(raw_set, dfa.state_count())?;
    let verdict = decide_with(&dfa, &decide_options()?)?;
    if !verdict.is_success() {
        eprintln!(
            "verdict: FAILURE at level {}; witness synthesis needs a completely reachable \
             automaton (try `oracle --list-unreachable`)",
            verdict.level
        );
        return Ok(3);
    }
    let plan = reach_word(&dfa, &verdict, target)?;
    if plan.total.is_empty() {
        println!("ε");
    } else {
        let names: Vec<&str> = plan
            .total
            .letters()
            .iter()
            .map(|&l| dfa.letter_name(l))
            .collect();
        println!("{}", names.join(" "));
    }
    eprintln!(
        "factors: {} | word length: {}",
        plan.factors.len(),
        plan.total.len()
    );
    Ok(0)
}

fn cmd_oracle(file: &Path, list_unreachable: bool) -> Result<i32, CliError> {
    let (dfa, _) = parse_automaton(file)?;
    let table = reachable_family(&dfa)?;
    let n = dfa.state_count();
    let all = (1u64 << n) - 1;
    println!("reachable subsets: {} / {all}", table.reachable_count());
    let complete = table.reachable_count() == all as usize;
    println!("completely reachable: {complete}");
    if list_unreachable && !complete {
        let mut missing: Vec<StateSet> = (1..=all)
            .map(StateSet::from_bits)
            .filter(|s| !table.is_reachable(*s))
            .collect();
        missing.sort();
        println!("unreachable subsets:");
        for s in missing {
            println!("  {}", set_label(s));
        }
    }
    Ok(if complete { 0 } else { 3 })
}

fn cmd_gen(target: GenTarget) -> Result<i32, CliError> {
    let (dfa, name, out) = match target {
        GenTarget::E3 { out } => (families::e3(), "e3".to_string(), out),
        GenTarget::E5 { verbatim, out } => (
            families::e5(!verbatim),
            if verbatim {
                "e5-verbatim".to_string()
            } else {
                "e5".to_string()
            },
            out,
        ),
        GenTarget::Enk { n, k, out } => (families::e_nk(n, k, false)?, format!("e-{n}-{k}"), out),
        GenTarget::EnkPrime { n, k, out } => {
            (families::e_nk(n, k, true)?, format!("e-prime-{n}-{k}"), out)
        }
        GenTarget::Cerny { n, out } => (families::cerny(n)?, format!("cerny-{n}"), out),
        GenTarget::Random {
            n,
            m,
            kind,
            seed,
            out,
        } => {
            let kind = RandomKind::from(kind);
            let tag = match kind {
                RandomKind::Arbitrary => "arbitrary",
                RandomKind::Permutation => "permutation",
            };
            (
                families::random(n, m, kind, seed)?,
                format!("random-{n}-{m}-{tag}-{seed}"),
                out,
            )
        }
    };
    let json = AutomatonFile::from_dfa(&dfa, Some(name)).to_json();
    match out {
        Some(path) => {
            fs::write(&path, json).map_err(|e| {
                CliError::InvalidInput(format!("cannot write {}: {e}", path.display()))
            })?;
            println!("wrote {}", path.display());
        }
        None => print!("{json}"),
    }
    Ok(0)
}

fn cmd_verify(file: &Path) -> Result<i32, CliError> {
    let (dfa, _) = parse_automaton(file)?;
    let verdict = decide_with(&dfa, &decide_options()?)?;
    let table = reachable_family(&dfa)?;
    let n = dfa.state_count();
    let complete = table.reachable_count() == (1usize << n) - 1;
    println!("decision: {} at level {}", verdict.status, verdict.level);
    println!("oracle: completely reachable = {complete}");
    if verdict.is_success() != complete {
        println!("MISMATCH: decision and oracle disagree");
        return Ok(3);
    }
    println!("agreement: ok");
    if !verdict.is_success() {
        let mut confirmed = 0;
        for w in &verdict.failure_witnesses {
            if w.provenance == WitnessProvenance::ProofDerived {
                if table.is_reachable(w.subset) {
                    println!(
                        "MISMATCH: proof-derived witness {} is reachable",
                        set_label(w.subset)
                    );
                    return Ok(3);
                }
                confirmed += 1;
            }
        }
        println!("proof-derived witnesses confirmed unreachable: {confirmed}");
        return Ok(3);
    }
    Ok(0)
}
