//! The `mfperiod` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a window is too
//! small, 2 for usage errors and malformed input.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cosets::Coset;
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::mfring::{constant_term_vanishing, reduce, MfElement};
use crate::pairing::{pair_sqft, pair_sqm, well_definedness_check, PairingResult};
use crate::periodicity::{sqft_lower_bound, sqm_lower_bound, LowerBoundReport};
use crate::qseries::{generator, parse_rational, GeneratorName, QSeries};
use crate::witnesses::{catalog_coherence, derive_uspin76, image_realizer, product_witness, Catalog, Witness};
use crate::{DEFAULT_D_MIN, DEFAULT_TERMS};

#[derive(Parser, Debug)]
#[command(name = "mfperiod", version, about = "Exact modular-form computations behind the SQFT and SQM periodicity bounds")]
pub struct Cli {
    /// Number of determined coefficients for expansions and the catalog
    #[arg(long, global = true, env = "MFPERIOD_TERMS", default_value_t = DEFAULT_TERMS)]
    terms: i64,

    /// Lowest Delta-exponent used for random modular-form members and pole bounds
    #[arg(long, global = true, default_value_t = DEFAULT_D_MIN, allow_hyphen_values = true)]
    d_min: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Random perturbations per well-definedness check
    #[arg(long, global = true, default_value_t = 50)]
    trials: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the q-expansion of a generator (C4, C6, DELTA, DELTA_INV, E2) or an expression
    Expand { what: String },
    /// Reduce a QSeries JSON document against MF_weight
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
        /// Input file, or `-` for stdin
        #[arg(long, default_value = "-")]
        input: PathBuf,
    },
    /// Evaluate a pairing against a catalog witness
    #[command(subcommand)]
    Pair(PairCommand),
    /// Run the built-in verification suites
    Verify,
    /// Print a periodicity lower-bound report
    Prove { spectrum: Spectrum },
    /// List the catalog witnesses
    Catalog,
}

#[derive(Subcommand, Debug)]
enum PairCommand {
    /// SQFT pairing with a relative Witten class
    Sqft(SqftArgs),
    /// SQM pairing with a relative Dirac class
    Sqm {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        witness: String,
    },
}

#[derive(Args, Debug)]
struct SqftArgs {
    /// Modular form, e.g. "Delta^-1"
    #[arg(long, allow_hyphen_values = true)]
    phi: String,
    #[arg(long)]
    witness: String,
    /// Multiply the witness by the minimal string class realizing a multiple of Delta^D
    #[arg(long, allow_hyphen_values = true)]
    realizer: Option<i64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Spectrum {
    Sqft,
    Sqm,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&cli) {
        Ok(Outcome { text, passed }) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InsufficientPrecision { .. } | Error::NotInvertible(_) => 1,
        _ => 2,
    }
}

struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Outcome> {
    if cli.terms < 1 {
        return Err(Error::InvalidArgument(format!("--terms must be positive, got {}", cli.terms)));
    }
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Expand { what } => {
            let s = match what.parse::<GeneratorName>() {
                Ok(name) => generator(name, cli.terms)?,
                Err(_) => parse_element(what)?.expand(cli.terms)?,
            };
            Ok(Outcome::ok(if json { to_json(&s) } else { format!("{s}\n") }))
        }
        Command::Reduce { weight, input } => {
            let mut src = String::new();
            if input.as_os_str() == "-" {
                std::io::stdin()
                    .read_to_string(&mut src)
                    .map_err(|e| Error::Parse(e.to_string()))?;
            } else {
                src = std::fs::read_to_string(input).map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
            }
            let s: QSeries = serde_json::from_str(&src).map_err(|e| Error::Parse(e.to_string()))?;
            let red = reduce(&s, *weight)?;
            let member = red.is_member();
            let text = if json {
                to_json(&json!({
                    "weight": weight,
                    "coords": red.coords,
                    "remainder": red.remainder,
                    "member": member,
                }))
            } else {
                format!(
                    "weight: {weight}\ncoords: {}\nremainder: {}\nmember: {member}\n",
                    red.coords, red.remainder
                )
            };
            Ok(Outcome::ok(text))
        }
        Command::Pair(PairCommand::Sqft(args)) => {
            let cat = Catalog::standard(cli.terms)?;
            let mut w = cat.get(&args.witness)?.clone();
            if let Some(d) = args.realizer {
                w = product_witness(&image_realizer(d), &w)?;
            }
            let phi = parse_element(&args.phi)?;
            let res = pair_sqft(&phi, &w)?;
            Ok(Outcome::ok(pairing_text(&res, json)))
        }
        Command::Pair(PairCommand::Sqm { x, witness }) => {
            let cat = Catalog::standard(cli.terms)?;
            let res = pair_sqm(&parse_rational(x)?, cat.get(witness)?)?;
            Ok(Outcome::ok(pairing_text(&res, json)))
        }
        Command::Verify => verify(cli),
        Command::Prove { spectrum } => {
            let cat = Catalog::standard(cli.terms)?;
            let rep = match spectrum {
                Spectrum::Sqft => sqft_lower_bound(&cat)?,
                Spectrum::Sqm => sqm_lower_bound(&cat)?,
            };
            Ok(Outcome::ok(if json { to_json(&rep) } else { report_text(&rep) }))
        }
        Command::Catalog => {
            let cat = Catalog::standard(cli.terms)?;
            let text = if json {
                to_json(&cat.witnesses())
            } else {
                let mut s = String::new();
                for w in cat.witnesses() {
                    writeln!(s, "{}", witness_line(w)).unwrap();
                    writeln!(s, "    {}", w.provenance()).unwrap();
                }
                s
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn witness_line(w: &Witness) -> String {
    format!("{:<11} degree {:>3}  {:<16} {}", w.name(), w.degree(), w.kind(), w.invariant_summary())
}

fn pairing_text(res: &PairingResult, json: bool) -> String {
    if json {
        return to_json(res);
    }
    let mut s = format!("{}\n", res.value);
    writeln!(s, "d: {}", res.d).unwrap();
    writeln!(s, "integral: {}", res.integral).unwrap();
    if !res.weights.is_empty() {
        let w: Vec<String> = res.weights.iter().map(|w| w.to_string()).collect();
        writeln!(s, "weights: {} (sum {})", w.join(" + "), res.weights.iter().sum::<i64>()).unwrap();
    }
    s
}

fn report_text(rep: &LowerBoundReport) -> String {
    let mut s = format!("{} periodicity lower bound: {}\n", rep.spectrum, rep.bound);
    writeln!(s, "grading step: {}", rep.grading_step).unwrap();
    writeln!(s, "{:>3}  {:<13} {:>3} {:>3} {:>8} {:>8}  chain", "d", "method", "n", "m", "modulus", "pairing").unwrap();
    let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    for c in &rep.cases {
        writeln!(
            s,
            "{:>3}  {:<13} {:>3} {:>3} {:>8} {:>8}  {}",
            c.d,
            c.method,
            opt(c.n),
            opt(c.m),
            opt(c.modulus),
            c.pairing.as_ref().map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
            c.chain
        )
        .unwrap();
    }
    writeln!(s, "boundary: {}", rep.boundary).unwrap();
    writeln!(s, "{}", rep.conclusion).unwrap();
    s
}

#[derive(Serialize)]
struct SuiteResult {
    name: String,
    passed: bool,
    detail: String,
}

fn verify(cli: &Cli) -> Result<Outcome> {
    let terms = cli.terms;
    let mut results = Vec::new();

    let c4 = generator(GeneratorName::C4, terms)?;
    let c6 = generator(GeneratorName::C6, terms)?;
    let delta = generator(GeneratorName::Delta, terms)?;
    let lhs = c4.pow(3)?.sub(&c6.mul(&c6));
    let rhs = delta.scale(&num_rational::BigRational::from_integer(1728.into()));
    results.push(SuiteResult {
        name: "c4^3 - c6^2 = 1728 Delta".into(),
        passed: lhs.agrees_with(&rhs),
        detail: format!("{terms} terms"),
    });
    let unit = delta.mul(&delta.invert()?);
    results.push(SuiteResult {
        name: "Delta * Delta^-1 = 1".into(),
        passed: unit.agrees_with(&QSeries::one(terms)?),
        detail: format!("{terms} terms"),
    });

    let max_pole = -cli.d_min;
    let vanishing = constant_term_vanishing(2, max_pole.max(1))?;
    results.push(SuiteResult {
        name: "weight-2 constant terms vanish".into(),
        passed: vanishing.passed,
        detail: format!("{} monomials, pole order <= {}", vanishing.entries.len(), vanishing.max_pole),
    });

    let cat = Catalog::standard(terms)?;
    let d4s3 = cat.get("D4S3")?;
    let cases = [
        (MfElement::delta_power(-1), d4s3.clone()),
        (
            MfElement::delta_power(-16),
            product_witness(&image_realizer(15), d4s3)?,
        ),
        (
            MfElement::delta_power(-12),
            product_witness(&image_realizer(8), cat.get("USPIN76")?)?,
        ),
    ];
    for (phi, w) in &cases {
        let rec = well_definedness_check(phi, w, cli.trials, cli.seed, cli.d_min)?;
        results.push(SuiteResult {
            name: format!("pairing <{phi}, {}> is representative-independent", w.name()),
            passed: rec.passed && rec.control_detected,
            detail: format!(
                "value {}, {} trials, E2 control moves it by {}",
                rec.base, rec.trials, rec.control_delta
            ),
        });
    }

    for check in catalog_coherence(&cat)? {
        results.push(SuiteResult {
            name: check.name,
            passed: check.passed,
            detail: check.detail,
        });
    }
    let derived = derive_uspin76(&cat)?;
    let target = Coset::new(38, generator(GeneratorName::E2, terms)?.mul(&delta.pow(3)?))?;
    results.push(SuiteResult {
        name: "derived degree-76 class = E2 Delta^3 mod MF_38".into(),
        passed: crate::cosets::coset_equal(&derived.result, &target)?,
        detail: derived
            .steps
            .iter()
            .map(|s| s.description.clone())
            .collect::<Vec<_>>()
            .join("; "),
    });

    let passed = results.iter().all(|r| r.passed);
    let text = if cli.format == Format::Json {
        to_json(&json!({ "passed": passed, "checks": results }))
    } else {
        let mut s = String::new();
        for r in &results {
            writeln!(s, "[{}] {} ({})", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail).unwrap();
        }
        writeln!(s, "{}", if passed { "all checks passed" } else { "some checks failed" }).unwrap();
        s
    };
    Ok(Outcome { text, passed })
}
