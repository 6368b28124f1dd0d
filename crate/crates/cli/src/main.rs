mod args;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dehnplus::io::{parse, serialize_report};
use dehnplus::poset::DEFAULT_BOX_CAP;
use dehnplus::report::{BoxResult, OrbitSummary, QueryResult};
use dehnplus::{
    classify, compose_twists, contains, correcting_exponent_bound, criterion, enumerate_box, essential_inclusion_check,
    essential_part, is_essential, is_fully_right_veering, known_region, l_multitwist, l_multitwist_power,
    orbit_model_screw, period_data, realizability_warnings, render_text, verify_essential_uniqueness, EntryOutcome,
    NtClass, OrbitModel, Output, Rational, Report, ReportEntry, TwistMove,
};
use num_bigint::BigInt;

use crate::args::{BoxSpec, PointArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Exact invariants and positive-factorization certificates for
/// pseudoperiodic mapping classes.
#[derive(Debug, Parser)]
#[command(name = "dehnplus", version)]
struct Cli {
    /// Output format; `structured` is the stable JSON report.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and check a document.
    Validate { input: String },
    /// Period data, orbit constants and the sign predicates.
    Invariants { input: String },
    /// Essential part and its correcting exponents.
    Essential {
        input: String,
        /// Half-width of the brute-force uniqueness scan.
        #[arg(long, default_value_t = 3)]
        window: u32,
    },
    /// Positive-factorization status.
    Classify { input: String },
    /// The sufficiency criterion with its witness.
    Criterion { input: String },
    /// Compose with powers of Dehn twists.
    Compose {
        input: String,
        /// `B<i>:<m>` for the i-th boundary component or `O<id>:<m>` for an orbit; repeatable.
        #[arg(long = "twist", value_parser = args::twist, required = true)]
        twists: Vec<TwistMove>,
    },
    /// Known region of the correcting poset.
    Poset {
        input: String,
        /// List the minimal generators (the default).
        #[arg(long)]
        generators: bool,
        /// Membership of a point `a1,a2,...`.
        #[arg(long, value_parser = args::point, allow_hyphen_values = true)]
        query: Option<PointArg>,
        /// Evaluate every point of `lo..hi`; a single number stands for all coordinates.
        #[arg(long = "box", value_parser = args::box_spec, allow_hyphen_values = true)]
        box_spec: Option<BoxSpec>,
        /// Compare with the known region of the essential part.
        #[arg(long)]
        essential_check: bool,
        /// Maximum number of box points.
        #[arg(long, default_value_t = DEFAULT_BOX_CAP)]
        cap: u64,
    },
    /// Values of L for boundary multitwists and their powers.
    Ltable {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        boundary: u32,
        #[arg(long, value_parser = args::integer, allow_hyphen_values = true)]
        power: Option<BigInt>,
    },
    /// Least uniform boundary shift certified by the implemented routes.
    CorrectingBound { input: String },
    #[command(hide = true)]
    OracleScrew {
        #[arg(long, value_parser = args::rational, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        twists: Vec<Rational>,
        /// `1` marks an orientation-reversing step.
        #[arg(long, value_delimiter = ',')]
        flips: Vec<u8>,
        /// Image of each curve index; defaults to the cycle `i -> i+1`.
        #[arg(long, value_delimiter = ',')]
        permutation: Vec<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Invariants { .. } => "invariants",
            Command::Essential { .. } => "essential",
            Command::Classify { .. } => "classify",
            Command::Criterion { .. } => "criterion",
            Command::Compose { .. } => "compose",
            Command::Poset { .. } => "poset",
            Command::Ltable { .. } => "ltable",
            Command::CorrectingBound { .. } => "correcting-bound",
            Command::OracleScrew { .. } => "oracle-screw",
        }
    }

    fn input(&self) -> Option<&str> {
        match self {
            Command::Validate { input }
            | Command::Invariants { input }
            | Command::Essential { input, .. }
            | Command::Classify { input }
            | Command::Criterion { input }
            | Command::Compose { input, .. }
            | Command::Poset { input, .. }
            | Command::CorrectingBound { input } => Some(input),
            Command::Ltable { .. } | Command::OracleScrew { .. } => None,
        }
    }
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn read_input(path: &str) -> std::io::Result<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read(path)
    }
}

fn evaluate(command: &Command, phi: &NtClass) -> Result<Output, String> {
    Ok(match command {
        Command::Validate { .. } => Output::Validation {
            surface: phi.surface(),
            orbit_count: phi.orbits().len(),
            warnings: realizability_warnings(phi),
        },
        Command::Invariants { .. } => {
            let pd = period_data(phi);
            Output::Invariants {
                n: pd.n,
                k_boundary: pd.k_boundary,
                k_orbit: pd.k_orbit,
                orbits: phi
                    .orbits()
                    .iter()
                    .map(|o| OrbitSummary { id: o.id.clone(), alpha: o.alpha(), beta: o.kind.beta() })
                    .collect(),
                essential: is_essential(phi),
                fully_right_veering: is_fully_right_veering(phi),
            }
        }
        Command::Essential { window, .. } => {
            let ess = essential_part(phi);
            Output::Essential {
                unique_in_window: verify_essential_uniqueness(phi, *window),
                window: *window,
                boundary_exponents: ess.boundary_exponents,
                orbit_exponents: ess.orbit_exponents,
                essential: ess.essential,
            }
        }
        Command::Classify { .. } => Output::Classification { report: classify(phi) },
        Command::Criterion { .. } => Output::Criterion { result: criterion(phi) },
        Command::Compose { twists, .. } => {
            Output::Composed { class: compose_twists(phi, twists).map_err(|e| e.to_string())? }
        }
        Command::Poset { query, box_spec, essential_check, cap, .. } => {
            let region = known_region(phi);
            let query = match query {
                Some(PointArg(p)) => Some(QueryResult {
                    member: contains(&region, p).map_err(|e| format!("query: {e}"))?,
                    point: p.clone(),
                }),
                None => None,
            };
            let box_result = match box_spec {
                Some(spec) => {
                    let (lo, hi) = spec.corners(phi.fr().len()).map_err(|e| format!("box: {e}"))?;
                    let members = enumerate_box(phi, &lo, &hi, *cap).map_err(|e| format!("box: {e}"))?;
                    Some(BoxResult { lo, hi, members: members.into_iter().collect() })
                }
                None => None,
            };
            let inclusion = essential_check.then(|| essential_inclusion_check(phi));
            Output::Poset { known_region: region, query, box_result, inclusion }
        }
        Command::CorrectingBound { .. } => Output::CorrectingBound { bound: correcting_exponent_bound(phi) },
        Command::Ltable { .. } | Command::OracleScrew { .. } => unreachable!("commands without input"),
    })
}

fn standalone(command: &Command) -> Result<Output, String> {
    match command {
        Command::Ltable { genus, boundary, power } => {
            let value = match power {
                Some(k) => l_multitwist_power(*genus, *boundary, k),
                None => l_multitwist(*genus, *boundary),
            }
            .map_err(|e| e.to_string())?;
            Ok(Output::Ltable { genus: *genus, boundary: *boundary, power: power.clone(), value })
        }
        Command::OracleScrew { twists, flips, permutation } => {
            let a = twists.len();
            let flips: Vec<bool> = if flips.is_empty() { vec![false; a] } else { flips.iter().map(|f| *f != 0).collect() };
            let model = if permutation.is_empty() {
                OrbitModel::cycle(flips, twists.clone())
            } else {
                OrbitModel::new(permutation.clone(), flips, twists.clone())
            }
            .map_err(|e| e.to_string())?;
            Ok(Output::OracleScrew { screw: orbit_model_screw(&model), beta: BigInt::from(model.beta()) })
        }
        _ => unreachable!("commands with input"),
    }
}

fn build_report(command: &Command) -> Result<Report, String> {
    let entries = match command.input() {
        None => vec![match standalone(command) {
            Ok(out) => ReportEntry::ok(None, out),
            Err(e) => ReportEntry::error(None, e),
        }],
        Some(path) => {
            let bytes = read_input(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            let doc = parse(&bytes).map_err(|e| format!("{path}: {e}"))?;
            doc.entries()
                .into_iter()
                .map(|(name, phi)| {
                    let name = name.map(str::to_string);
                    match evaluate(command, phi) {
                        Ok(out) => ReportEntry::ok(name, out),
                        Err(e) => ReportEntry::error(name, e),
                    }
                })
                .collect()
        }
    };
    Ok(Report::new(command.name(), entries))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match build_report(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let text = match cli.format {
        Format::Structured => serialize_report(&report),
        Format::Text => render_text(&report),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(EXIT_INPUT);
    }
    // text output already carries the error lines
    for entry in report.entries.iter().filter(|_| cli.format == Format::Structured) {
        if let EntryOutcome::Error { message } = &entry.outcome {
            match &entry.name {
                Some(name) => eprintln!("error: {name}: {message}"),
                None => eprintln!("error: {message}"),
            }
        }
    }
    if report.has_errors() {
        ExitCode::from(EXIT_DOMAIN)
    } else {
        ExitCode::SUCCESS
    }
}
