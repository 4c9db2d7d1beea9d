mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use coderco::catalog;
use coderco::coalg::{new_coder_pair, CoderPair};
use coderco::cohomology::{coder_cohomology, hochschild_cohomology, les_check};
use coderco::comodule::{check_bicomodule, check_comodule_pair_parts, coadjoint, new_bicomodule_pair, BicomodulePair};
use coderco::deform::{
    apply_gauge, check_equivalence, equivalent_infinitesimals_check, extend, infinitesimal, obstruction, trivialize,
    validate_deformation, Deformation, Extension, Trivialization,
};
use coderco::duality::{check_der_pair, dual_coder_pair, dual_der_pair, new_der_pair};
use coderco::format::{self, Document, FormatError, RawCoderPair, RawDeformation};
use coderco::random::{item_rng, Order1Sampler};
use coderco::Error;

#[derive(Parser)]
#[command(name = "coderco", version, about = "Cohomology and formal deformations of coalgebras with a coderivation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a structure file
    Validate {
        path: PathBuf,
        /// Coder pair the bicomodule pair lives over (bicomodule files only)
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    /// Hochschild and Coder cohomology of a Coder pair
    Cohomology {
        path: PathBuf,
        /// `coadjoint` or a bicomodule_pair file
        #[arg(long, default_value = "coadjoint")]
        module: String,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// Include the long exact sequence table
        #[arg(long)]
        les: bool,
        /// Include per-degree wall-clock times (not deterministic)
        #[arg(long)]
        timings: bool,
    },
    /// Formal deformations over the coadjoint bicomodule
    Deform {
        #[command(subcommand)]
        command: DeformCommand,
    },
    /// Transpose a coder_pair into a der_pair or back
    Dualize {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a built-in example Coder pair
    Example {
        /// divided_power, binomial_bialgebra, comatrix, tensor, grouplike or zero_coproduct
        name: String,
        params: Vec<usize>,
        /// Use the zero coderivation instead of the family default
        #[arg(long)]
        zero_psi: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DeformCommand {
    /// Check the deformation equations order by order
    Validate { path: PathBuf },
    /// First nonzero coefficient pair and its cocycle certificate
    Infinitesimal { path: PathBuf },
    /// Obstruction cochains to the next order
    Obstruct { path: PathBuf },
    /// Extend by one order, or report the obstruction class
    Extend {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gauge the deformation to the trivial one order by order
    Trivialize {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a gauge and check the equivalence
    Gauge {
        path: PathBuf,
        gauge: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a valid deformation of a Coder pair
    Sample {
        path: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, env = "CODERCO_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code: 1 axioms or limits, 2 input, 3 internal.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Axiom(_) | Error::IndexOverflow { .. } | Error::DegreeBound { .. } => 1,
            Error::ShapeMismatch { .. } | Error::OutOfBounds { .. } | Error::Invalid(_) => 2,
            Error::NotContained | Error::Internal(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::input(format!("parse error: {e}"))
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    format::parse_document(&text).map_err(|e| Failure::input(format!("{}: parse error: {e}", path.display())))
}

fn write_doc(path: &Path, v: &Value) -> Result<(), Failure> {
    std::fs::write(path, format::to_pretty(v))
        .map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })
}

fn emit(v: &Value) {
    print!("{}", format::to_pretty(v));
}

fn coder_pair(raw: RawCoderPair) -> Result<CoderPair, Failure> {
    Ok(new_coder_pair(raw.coalgebra, raw.psi)?)
}

fn read_pair(path: &Path) -> Result<CoderPair, Failure> {
    match read(path)? {
        Document::CoderPair(raw) => coder_pair(raw),
        other => Err(Failure::input(format!("{}: expected a coder_pair, found {}", path.display(), other.kind()))),
    }
}

fn deformation(raw: RawDeformation) -> Result<Deformation, Failure> {
    let base = coder_pair(raw.base)?;
    Ok(Deformation::new(base, raw.deltas, raw.psis)?)
}

fn read_deformation(path: &Path) -> Result<Deformation, Failure> {
    match read(path)? {
        Document::Deformation(raw) => deformation(raw),
        other => Err(Failure::input(format!("{}: expected a deformation, found {}", path.display(), other.kind()))),
    }
}

fn module(cp: &CoderPair, spec: &str) -> Result<BicomodulePair, Failure> {
    if spec == "coadjoint" {
        return Ok(coadjoint(cp));
    }
    match read(Path::new(spec))? {
        Document::BicomodulePair(raw) => {
            let (b, psi_m) = raw.resolve(cp.dim())?;
            Ok(new_bicomodule_pair(cp, b, psi_m)?)
        }
        other => Err(Failure::input(format!("{spec}: expected a bicomodule_pair, found {}", other.kind()))),
    }
}

fn report_validation(what: &str, report: &coderco::report::ValidationReport) -> u8 {
    if report.passed() {
        println!("pass: {what}");
        0
    } else {
        print!("{report}");
        1
    }
}

fn cmd_validate(path: &Path, pair: Option<&Path>) -> Outcome {
    match read(path)? {
        Document::CoderPair(raw) => {
            let mut report = coderco::coalg::check_coassoc(&raw.coalgebra)?;
            report.merge(coderco::coalg::check_coderivation(&raw.coalgebra, &raw.psi)?);
            Ok(report_validation(&format!("coder_pair of dimension {}", raw.coalgebra.dim()), &report))
        }
        Document::BicomodulePair(raw) => {
            let Some(pair) = pair else {
                return Err(Failure::input("validating a bicomodule_pair needs --pair <coder_pair file>"));
            };
            let cp = read_pair(pair)?;
            let (b, psi_m) = raw.resolve(cp.dim())?;
            let mut report = check_bicomodule(cp.coalgebra(), &b)?;
            report.merge(check_comodule_pair_parts(&cp, &b, &psi_m)?);
            Ok(report_validation(&format!("bicomodule_pair of dimension {}", b.dim_m()), &report))
        }
        Document::Deformation(raw) => {
            let mut report = coderco::coalg::check_coassoc(&raw.base.coalgebra)?;
            report.merge(coderco::coalg::check_coderivation(&raw.base.coalgebra, &raw.base.psi)?);
            if !report.passed() {
                return Ok(report_validation("deformation base", &report));
            }
            let def = deformation(raw)?;
            Ok(report_validation(&format!("deformation of order {}", def.order()), &validate_deformation(&def)?))
        }
        Document::Gauge(g) => {
            println!("pass: gauge of order {}", g.order());
            Ok(0)
        }
        Document::DerPair(a) => {
            Ok(report_validation(&format!("der_pair of dimension {}", a.dim()), &check_der_pair(&a)?))
        }
    }
}

fn cmd_cohomology(path: &Path, module_spec: &str, nmax: usize, les: bool, timings: bool) -> Outcome {
    if nmax == 0 {
        return Err(Failure::input("--nmax must be at least 1"));
    }
    let cp = read_pair(path)?;
    let mp = module(&cp, module_spec)?;
    let hoch = hochschild_cohomology(cp.coalgebra(), mp.bicomodule(), nmax)?;
    let coder = coder_cohomology(&cp, &mp, nmax)?;
    let les = if les { Some(les_check(&cp, &mp, nmax)?) } else { None };
    emit(&output::cohomology(module_spec, nmax, &hoch, &coder, les.as_ref(), timings));
    Ok(0)
}

fn cmd_deform(command: DeformCommand) -> Outcome {
    match command {
        DeformCommand::Validate { path } => {
            let def = read_deformation(&path)?;
            let report = validate_deformation(&def)?;
            emit(&output::validation("deformation_validation", &report));
            Ok(if report.passed() { 0 } else { 1 })
        }
        DeformCommand::Infinitesimal { path } => {
            let def = read_deformation(&path)?;
            emit(&output::infinitesimal(&infinitesimal(&def)?));
            Ok(0)
        }
        DeformCommand::Obstruct { path } => {
            let def = read_deformation(&path)?;
            emit(&output::obstruction(def.order(), &obstruction(&def)?));
            Ok(0)
        }
        DeformCommand::Extend { path, out } => {
            let def = read_deformation(&path)?;
            let result = extend(&def)?;
            if let (Extension::Extended(next), Some(out)) = (&result, &out) {
                write_doc(out, &format::deformation_json(next))?;
            }
            emit(&output::extension(def.order(), &result));
            Ok(0)
        }
        DeformCommand::Trivialize { path, budget, out } => {
            let def = read_deformation(&path)?;
            let result = trivialize(&def, budget)?;
            if let (Trivialization::Trivialized(g), Some(out)) = (&result, &out) {
                write_doc(out, &format::gauge_json(g))?;
            }
            emit(&output::trivialization(&result));
            Ok(0)
        }
        DeformCommand::Gauge { path, gauge, out } => {
            let def = read_deformation(&path)?;
            let g = match read(&gauge)? {
                Document::Gauge(g) => g,
                other => {
                    return Err(Failure::input(format!(
                        "{}: expected a gauge, found {}",
                        gauge.display(),
                        other.kind()
                    )))
                }
            };
            let image = apply_gauge(&def, &g)?;
            let equivalence = check_equivalence(&def, &image, &g)?;
            let first_order =
                if def.order() >= 1 { Some(equivalent_infinitesimals_check(&def, &image, &g)?) } else { None };
            if let Some(out) = &out {
                write_doc(out, &format::deformation_json(&image))?;
            }
            emit(&output::gauge_application(&image, &equivalence, first_order.as_ref()));
            Ok(if equivalence.passed() { 0 } else { 3 })
        }
        DeformCommand::Sample { path, order, seed, out } => {
            if order == 0 {
                return Err(Failure::input("--order must be at least 1"));
            }
            let cp = read_pair(&path)?;
            let sampler = Order1Sampler::new(&cp)?;
            let (def, blocked) = sampler.sample_to_order(&mut item_rng(seed, 0), order)?;
            if let Some(out) = &out {
                write_doc(out, &format::deformation_json(&def))?;
            }
            emit(&output::sample(seed, &def, blocked));
            Ok(0)
        }
    }
}

fn cmd_dualize(path: &Path, out: Option<&Path>) -> Outcome {
    let doc = match read(path)? {
        Document::CoderPair(raw) => format::der_pair_json(&dual_der_pair(&coder_pair(raw)?)?),
        Document::DerPair(a) => {
            let a = new_der_pair(a.dim(), a.mult().clone(), a.phi().clone())?;
            format::coder_pair_json(&dual_coder_pair(&a)?)
        }
        other => return Err(Failure::input(format!("{}: cannot dualize a {}", path.display(), other.kind()))),
    };
    match out {
        Some(out) => write_doc(out, &doc)?,
        None => emit(&doc),
    }
    Ok(0)
}

fn cmd_example(name: &str, params: &[usize], zero_psi: bool, out: Option<&Path>) -> Outcome {
    if !catalog::FAMILIES.contains(&name) {
        return Err(Failure::input(format!("unknown example '{name}'; known: {}", catalog::FAMILIES.join(", "))));
    }
    let ex = catalog::build(name, params, zero_psi)?;
    let doc = format::coder_pair_json(&ex.pair);
    match out {
        Some(out) => write_doc(out, &doc)?,
        None => emit(&doc),
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { path, pair } => cmd_validate(&path, pair.as_deref()),
        Command::Cohomology { path, module, nmax, les, timings } => cmd_cohomology(&path, &module, nmax, les, timings),
        Command::Deform { command } => cmd_deform(command),
        Command::Dualize { path, out } => cmd_dualize(&path, out.as_deref()),
        Command::Example { name, params, zero_psi, out } => cmd_example(&name, &params, zero_psi, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(cli))
        .unwrap_or_else(|_| Err(Failure { code: 3, message: "internal error".into() }));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
