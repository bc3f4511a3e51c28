//! Command-line front end: argument parsing, command dispatch and report
//! emission. [`run`] is the whole program minus process exit.

pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nsla_core::catalog::{brute_force_enumerate, CatalogName, DEFAULT_ENUMERATION_BUDGET};
use nsla_core::conformance::{theorem_conformance, ConformanceConfig};
use nsla_core::engel::{condition_star_star, engel_scan, ScanConfig};
use nsla_core::format::{algebra_to_json, representation_to_json, AlgebraFile};
use nsla_core::lattice::{LatticeCatalog, DEFAULT_LATTICE_BUDGET};
use nsla_core::representation::{regular_representation, validate_representation};
use nsla_core::series::{derived_k_series, lower_central_series, nilpotency_class};
use nsla_core::{Error, Field, NLieSuperalgebra, Parity};

use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportMode {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "nsla",
    version,
    about = "Exact computations with n-Lie superalgebras"
)]
pub struct Cli {
    /// Human-readable text or JSON.
    #[arg(long, global = true, value_enum, default_value_t = ReportMode::Text)]
    pub report: ReportMode,
    /// Cap on exhaustive work: tuple scans, subspace lattices and enumerations.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Seed for sampled scans.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the parity rule, skew-symmetry and the Filippov-Jacobi identity
    /// (and the representation relations when the file has a module).
    Validate { file: PathBuf },
    /// Series, nilpotency, Engel scan, conditions and, when the lattice is
    /// enumerable, Frattini/Jacobson radicals and the invariance number.
    Analyze { file: PathBuf },
    /// Every graded subspace with its structural flags.
    Lattice { file: PathBuf },
    /// Evaluate the theorem suite on one file or on every file of a directory.
    Conformance {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        corpus: Option<PathBuf>,
        /// Accept inhomogeneous generators when testing one-generation.
        #[arg(long)]
        allow_mixed_generators: bool,
    },
    /// Write a catalog algebra, e.g. `catalog paper_bc 4 --field F3 --out bc.nsla`.
    Catalog {
        name: String,
        params: Vec<usize>,
        #[arg(long, default_value = "F3")]
        field: String,
        #[arg(long)]
        out: PathBuf,
        /// Also write the regular representation.
        #[arg(long)]
        regular_representation: bool,
    },
    /// Write every algebra with the given shape over F_p, one file per algebra.
    Enumerate {
        #[arg(long)]
        dim_even: usize,
        #[arg(long)]
        dim_odd: usize,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        prime: u32,
        /// Bracket parity; both when omitted.
        #[arg(long)]
        alpha: Option<u8>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// What a command produced: an exit code and the report text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Outcome {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    match execute(&cli) {
        Ok((passed, stdout)) => Outcome {
            code: if passed { EXIT_OK } else { EXIT_FAILURE },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::usage(format!("error: {e:#}\n")),
    }
}

fn emit<T: Serialize>(mode: ReportMode, report: &T, text: impl FnOnce(&T) -> String) -> String {
    match mode {
        ReportMode::Text => text(report),
        ReportMode::Machine => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn read_file(path: &Path) -> anyhow::Result<AlgebraFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    AlgebraFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_algebra(path: &Path) -> anyhow::Result<NLieSuperalgebra> {
    read_file(path)?
        .to_algebra()
        .with_context(|| format!("loading {}", path.display()))
}

impl Cli {
    fn scan_config(&self) -> ScanConfig {
        let mut cfg = ScanConfig {
            seed: self.seed,
            ..ScanConfig::default()
        };
        if let Some(b) = self.budget {
            cfg.budget = b;
        }
        cfg
    }

    fn lattice_budget(&self) -> u128 {
        self.budget.unwrap_or(DEFAULT_LATTICE_BUDGET)
    }
}

/// Returns whether everything passed, and the rendered report.
fn execute(cli: &Cli) -> anyhow::Result<(bool, String)> {
    match &cli.command {
        Command::Validate { file } => {
            let report = validate(&read_file(file)?)?;
            Ok((
                report.passed(),
                emit(cli.report, &report, ValidateReport::text),
            ))
        }
        Command::Analyze { file } => {
            let report = analyze(cli, &load_algebra(file)?);
            Ok((
                report.validation.valid,
                emit(cli.report, &report, AnalyzeReport::text),
            ))
        }
        Command::Lattice { file } => {
            let mut a = load_algebra(file)?;
            let validation = a.validate();
            if !validation.is_valid() {
                let report = ValidateReport {
                    algebra: AlgebraSummary::new(&a),
                    validation: ValidationView::new(&a, &validation),
                    representation: None,
                };
                return Ok((false, emit(cli.report, &report, ValidateReport::text)));
            }
            let lat = LatticeCatalog::build(&a, cli.lattice_budget())?;
            let dump = LatticeDump::new(&lat, false);
            Ok((true, emit(cli.report, &dump, LatticeDump::text)))
        }
        Command::Conformance {
            file,
            corpus,
            allow_mixed_generators,
        } => {
            let files = match (file, corpus) {
                (Some(f), None) => vec![f.clone()],
                (None, Some(dir)) => corpus_files(dir)?,
                _ => return Err(anyhow!("give either FILE or --corpus DIR")),
            };
            let cfg = ConformanceConfig {
                scan: cli.scan_config(),
                lattice_budget: cli.lattice_budget(),
                allow_mixed_generators: *allow_mixed_generators,
            };
            let mut algebras = Vec::with_capacity(files.len());
            for f in &files {
                algebras.push(conformance(
                    &f.display().to_string(),
                    load_algebra(f)?,
                    &cfg,
                ));
            }
            let suite = ConformanceSuite {
                passed: algebras.iter().all(|c| c.passed),
                algebras,
            };
            Ok((
                suite.passed,
                emit(cli.report, &suite, ConformanceSuite::text),
            ))
        }
        Command::Catalog {
            name,
            params,
            field,
            out,
            regular_representation: with_rep,
        } => {
            let field: Field = field.parse()?;
            let entry = if params.is_empty() && name.contains('(') {
                name.parse::<CatalogName>()?
            } else {
                CatalogName::parse(name, params)?
            };
            let a = entry.build(field)?;
            let text = if *with_rep {
                representation_to_json(&regular_representation(&a))
            } else {
                algebra_to_json(&a)
            };
            fs::write(out, text).with_context(|| format!("writing {}", out.display()))?;
            let report = WriteReport {
                written: vec![out.display().to_string()],
                note: format!("{entry} over {field}"),
            };
            Ok((true, emit(cli.report, &report, WriteReport::text)))
        }
        Command::Enumerate {
            dim_even,
            dim_odd,
            arity,
            prime,
            alpha,
            out,
        } => {
            let alpha = match alpha {
                None => None,
                Some(0) => Some(Parity::Even),
                Some(1) => Some(Parity::Odd),
                Some(x) => return Err(anyhow!("alpha must be 0 or 1, got {x}")),
            };
            let budget = cli.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
            let stream = brute_force_enumerate(*dim_even, *dim_odd, *arity, *prime, alpha, budget)?;
            fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            let mut written = Vec::with_capacity(stream.len());
            for e in &stream {
                let path = out.join(format!("{:08}.nsla", e.index));
                fs::write(&path, algebra_to_json(&e.algebra))
                    .with_context(|| format!("writing {}", path.display()))?;
                written.push(path.display().to_string());
            }
            let note = format!(
                "{} algebras of shape ({dim_even}|{dim_odd}), arity {arity}, over F{prime}",
                stream.len()
            );
            let report = WriteReport { written, note };
            Ok((true, emit(cli.report, &report, WriteReport::text)))
        }
    }
}

fn corpus_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|x| x == "nsla" || x == "json"));
    files.sort();
    if files.is_empty() {
        return Err(anyhow!("no .nsla files in {}", dir.display()));
    }
    Ok(files)
}

pub fn validate(file: &AlgebraFile) -> anyhow::Result<ValidateReport> {
    let mut a = file.to_algebra()?;
    let validation = a.validate();
    let representation = match &file.representation {
        None => None,
        Some(_) => {
            let rho = file.to_representation()?;
            let r = validate_representation(&rho);
            let (kernel, faithful) = rho.kernel_and_faithful();
            Some(RepresentationView::new(
                &a,
                rho.module_dims(),
                &r,
                &kernel,
                faithful,
            ))
        }
    };
    Ok(ValidateReport {
        algebra: AlgebraSummary::new(&a),
        validation: ValidationView::new(&a, &validation),
        representation,
    })
}

/// The `analyze` report. Invariants are still computed for an invalid algebra,
/// but the command exits with a failure.
pub fn analyze(cli: &Cli, a: &NLieSuperalgebra) -> AnalyzeReport {
    let mut a = a.clone();
    let validation = a.validate();
    let cfg = cli.scan_config();
    let full = a.full_space();
    let solvability = (2..=a.arity())
        .map(|k| SolvabilityView {
            k,
            solvable: derived_k_series(&a, &full, k).is_ok_and(|s| s.terminates()),
        })
        .collect();
    let (lattice, lattice_skipped) = if !validation.is_valid() {
        (None, Some("algebra is invalid".to_string()))
    } else {
        match LatticeCatalog::build(&a, cli.lattice_budget()) {
            Ok(lat) => (Some(LatticeSummary::new(&lat, false)), None),
            Err(Error::FiniteFieldRequired) => (None, Some("the field is infinite".to_string())),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    AnalyzeReport {
        algebra: AlgebraSummary::new(&a),
        validation: ValidationView::new(&a, &validation),
        derived_algebra: SubspaceView::new(&a, &a.derived_algebra()),
        lower_central_series: SeriesView::new(&a, &lower_central_series(&a)),
        nilpotency_class: nilpotency_class(&a),
        solvability,
        engel: ScanView::engel(&a, &engel_scan(&a, &cfg)),
        condition_star_star: ScanView::star_star(&a, &condition_star_star(&a, &cfg)),
        lattice,
        lattice_skipped,
    }
}

fn label<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x).expect("labels serialize") {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

pub fn conformance(
    source: &str,
    mut a: NLieSuperalgebra,
    cfg: &ConformanceConfig,
) -> ConformanceView {
    let valid = a.validate().is_valid();
    let records = if valid {
        theorem_conformance(&a, cfg)
            .records
            .iter()
            .map(|r| RecordView {
                id: r.id.to_string(),
                statement: r.statement.to_string(),
                hypothesis: label(&r.hypothesis),
                conclusion: label(&r.conclusion),
                instances: r.instances,
                witnesses: r.witnesses.clone(),
            })
            .collect()
    } else {
        Vec::new()
    };
    let passed = valid && records.iter().all(|r| r.conclusion != "fail");
    ConformanceView {
        source: source.to_string(),
        algebra: AlgebraSummary::new(&a),
        valid,
        passed,
        records,
    }
}
