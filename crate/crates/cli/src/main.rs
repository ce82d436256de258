use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use homlie::algebra::checks::{self, CheckReport, SuiteReport};
use homlie::format::{self, ReportFile};
use homlie::linalg::EliminationStrategy;
use homlie::replay::{self, FixtureSet, ReplayReport};
use homlie::solver::linear::FiltrationMode;
use homlie::solver::{self, SolutionReport, SolverConfig};
use homlie::{AlgebraId, Error, GradedSuperalgebra};

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Environment variable naming a directory that holds a `replay.json`
/// to use instead of the shipped fixtures.
const FIXTURE_DIR_VAR: &str = "HOMLIE_FIXTURES";

#[derive(Parser)]
#[command(
    name = "homlie",
    version,
    about = "Exceptional Lie superalgebras of vector fields: build, check, classify Hom-structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mask {
    Filtered,
    FilteredExceptMinusOne,
    Graded,
    Off,
}

impl From<Mask> for FiltrationMode {
    fn from(m: Mask) -> Self {
        match m {
            Mask::Filtered => FiltrationMode::Filtered,
            Mask::FilteredExceptMinusOne => FiltrationMode::FilteredExceptMinusOne,
            Mask::Graded => FiltrationMode::Graded,
            Mask::Off => FiltrationMode::Off,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    FractionFree,
    Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and write its structure constants.
    Build {
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite on a shipped algebra or an algebra file.
    Check {
        target: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Classify Hom-Lie superalgebra structures on the nonpositive part.
    Solve {
        algebra: String,
        #[arg(long)]
        linear_only: bool,
        /// Parity mask only (exploratory; no certificate).
        #[arg(long, conflicts_with = "mask")]
        no_filtration: bool,
        #[arg(long, value_enum)]
        mask: Option<Mask>,
        #[arg(long, value_enum, default_value = "fraction-free")]
        strategy: Strategy,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Replay the bracket-identity fixtures.
    Replay {
        algebra: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the basis with parities and degrees.
    DumpBasis { algebra: String },
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

fn parse_id(s: &str) -> Result<AlgebraId, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Run(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_report(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Run(e.into())),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct Gradation {
    expected_consistent: Option<bool>,
    consistent: bool,
    inconsistent_elements: Vec<String>,
}

#[derive(Serialize)]
struct CheckOutput {
    passed: bool,
    suite: SuiteReport,
    gradation: Gradation,
    /// Not part of the pass/fail verdict.
    irreducibility: CheckReport,
}

#[derive(Serialize)]
struct CheckConfig {
    target: String,
    algebra_id: Option<&'static str>,
    generation_out_of_scope: Vec<i32>,
}

fn check(target: &str, report: Option<&Path>) -> Result<u8, Failure> {
    let (alg, id): (GradedSuperalgebra, Option<AlgebraId>) = match target.parse::<AlgebraId>() {
        Ok(id) => (homlie::build(id)?, Some(id)),
        Err(_) if Path::new(target).is_file() => {
            let text = fs::read_to_string(target).map_err(|e| Failure::Run(e.into()))?;
            (format::algebra_from_json(&text)?, None)
        }
        Err(e) => return Err(Failure::Usage(format!("{e}; not a file either: {target}"))),
    };
    let out_of_scope = id.map_or(Vec::new(), |i| i.excluded_degrees().to_vec());
    let suite = checks::run_suite(&alg, &out_of_scope);
    let witnesses = checks::inconsistency_witnesses(&alg);
    let gradation = Gradation {
        expected_consistent: id.map(|i| i.consistent_gradation()),
        consistent: witnesses.is_empty(),
        inconsistent_elements: witnesses.iter().map(|&i| alg.label(i).to_string()).collect(),
    };
    let gradation_ok = gradation.expected_consistent.is_none_or(|e| e == gradation.consistent);
    let out = CheckOutput {
        passed: suite.passed && gradation_ok,
        suite,
        gradation,
        irreducibility: checks::check_irreducibility(&alg),
    };
    println!("{} (dim {})", alg.name(), alg.dim());
    for c in &out.suite.checks {
        println!("  {:<14} {}", c.check, if c.passed { "pass" } else { "FAIL" });
        for w in &c.witnesses {
            println!("    {}", w.detail);
        }
    }
    println!(
        "  {:<14} {}{}",
        "gradation",
        if out.gradation.consistent {
            "consistent"
        } else {
            "inconsistent"
        },
        if gradation_ok { "" } else { " (unexpected)" }
    );
    println!(
        "  {:<14} {}",
        "irreducible",
        if out.irreducibility.passed { "yes" } else { "no" }
    );
    let config = CheckConfig {
        target: target.to_string(),
        algebra_id: id.map(|i| i.id()),
        generation_out_of_scope: out_of_scope,
    };
    let passed = out.passed;
    write_report(report, &ReportFile::new("check", config, out).to_json()?)?;
    Ok(if passed { EXIT_OK } else { EXIT_FAILURE })
}

fn solve(id: AlgebraId, config: SolverConfig, report: Option<&Path>) -> Result<u8, Failure> {
    let r: SolutionReport = solver::classify(id, &config)?;
    println!("{} (dim {} after exclusions)", r.algebra, r.dim);
    println!("  mask               {}", config.filtration.id());
    println!("  unknowns           {}", r.linear.unknowns);
    println!("  rank               {}", r.linear.rank);
    println!("  nullspace dim      {}", r.nullspace_dim);
    if let Some(cc) = &r.linear.cross_check {
        println!(
            "  cross-check        {} agrees: {}",
            cc.strategy.id(),
            cc.identical_basis
        );
    }
    for (n, c) in r.variety_components.iter().enumerate() {
        let inv = c
            .invertibility
            .as_ref()
            .map_or("-".to_string(), |i| format!("{:?}", i.verdict).to_lowercase());
        println!(
            "  component {n}: {:?} dim {} invertible {inv} identity {} zero {}",
            c.kind,
            c.dimension.map_or("?".into(), |d| d.to_string()),
            c.contains_identity,
            c.contains_zero
        );
        let invertible = c
            .invertibility
            .as_ref()
            .is_some_and(|i| i.verdict == solver::invert::Verdict::Invertible);
        if invertible {
            for (t, d) in c.direction_maps.iter().enumerate() {
                let entries: Vec<String> = d
                    .entries()
                    .map(|((target, source), v)| {
                        format!(
                            "{} -> {}*{}",
                            r.labels[source],
                            homlie::rational::to_string(v),
                            r.labels[target]
                        )
                    })
                    .collect();
                println!("    direction t{}: {}", t + 1, entries.join(", "));
            }
        }
    }
    for note in &r.notes {
        println!("  note: {note}");
    }
    let cert = match r.trivial_certificate {
        Some(true) => "true",
        Some(false) => "false",
        None => "not evaluated",
    };
    println!("  trivial certificate {cert}");
    let code = if r.is_inconclusive() {
        EXIT_INCONCLUSIVE
    } else if r.trivial_certificate == Some(false) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    write_report(report, &ReportFile::new("solve", config, r).to_json()?)?;
    Ok(code)
}

fn fixtures() -> Result<FixtureSet, Failure> {
    match std::env::var_os(FIXTURE_DIR_VAR) {
        Some(dir) => {
            let path = Path::new(&dir).join("replay.json");
            let text = fs::read_to_string(&path).map_err(|e| Failure::Run(e.into()))?;
            Ok(FixtureSet::parse(&text)?)
        }
        None => Ok(replay::shipped()),
    }
}

fn run_replay(id: AlgebraId, report: Option<&Path>) -> Result<u8, Failure> {
    let set = fixtures()?;
    let alg = homlie::build(id)?;
    let r: ReplayReport = replay::replay_on(&alg, &set.for_algebra(id))?;
    for o in &r.outcomes {
        if o.passed {
            println!("pass {}", o.name);
        } else {
            println!("FAIL {}: expected {}, got {}", o.name, o.expected, o.actual);
        }
    }
    println!(
        "{}/{} fixtures pass",
        r.outcomes.iter().filter(|o| o.passed).count(),
        r.outcomes.len()
    );
    let code = if r.passed { EXIT_OK } else { EXIT_FAILURE };
    write_report(report, &ReportFile::new("replay", id.id(), r).to_json()?)?;
    Ok(code)
}

fn dump_basis(id: AlgebraId) -> Result<u8, Failure> {
    let alg = homlie::build(id)?;
    println!("{}", alg.name());
    for b in alg.basis() {
        println!("{:>3}  {:<24} {}  {:>2}", b.index, b.label, b.parity, b.degree);
    }
    Ok(EXIT_OK)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Build { algebra, out } => {
            let id = parse_id(&algebra)?;
            let alg = homlie::build(id)?;
            write_or_print(out.as_deref(), &format::algebra_to_json(&alg)?)?;
            Ok(EXIT_OK)
        }
        Command::Check { target, report } => check(&target, report.as_deref()),
        Command::Solve {
            algebra,
            linear_only,
            no_filtration,
            mask,
            strategy,
            report,
        } => {
            let id = parse_id(&algebra)?;
            let filtration = if no_filtration {
                FiltrationMode::Off
            } else {
                mask.map_or(FiltrationMode::Filtered, Into::into)
            };
            let config = SolverConfig {
                filtration,
                strategy: match strategy {
                    Strategy::FractionFree => EliminationStrategy::FractionFree,
                    Strategy::Rational => EliminationStrategy::Rational,
                },
                linear_only,
                ..SolverConfig::default()
            };
            solve(id, config, report.as_deref())
        }
        Command::Replay { algebra, report } => run_replay(parse_id(&algebra)?, report.as_deref()),
        Command::DumpBasis { algebra } => dump_basis(parse_id(&algebra)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{}", Cli::command().render_usage());
            eprintln!("known algebras: {}", AlgebraId::ALL.map(|a| a.id()).join(", "));
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
