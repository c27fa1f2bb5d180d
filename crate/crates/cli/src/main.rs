//! `hopfnorm`: normality and simplicity verdicts for cocycle deformations of
//! finite groups.
//!
//! Exit codes: 0 computed, 1 parse or usage error, 2 hypothesis violated,
//! 3 size limit exceeded, 4 a self-check failed.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hopfnorm::catalog;
use hopfnorm::instance::{Instance, InstanceError, InstanceSpec};
use hopfnorm::normality::{is_simple_deformation, NormalityError};
use hopfnorm::suite::{self, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "hopfnorm", version, about = "Normal Hopf subalgebras of cocycle deformations of finite groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    machine: bool,

    /// Also run the direct homogeneous-component check.
    #[arg(long, global = true)]
    oracle: bool,

    /// Largest group order to construct; overrides the instance file.
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide stability for the subgroup F given in the instance file.
    Analyze { file: PathBuf },
    /// Verdicts for every normal subgroup, and whether the deformation is simple.
    Classify { file: PathBuf },
    /// F-orbits on the induced basis and the basis of the invariants.
    InvariantBasis { file: PathBuf },
    /// Run the property suites over the built-in catalog or given files.
    Verify {
        /// `all` or a comma-separated list of checks.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Perturb one cocycle entry per instance; every run should then fail.
        #[arg(long)]
        inject_fault: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples drawn where a check is not exhaustive.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Instance files; the built-in catalog when empty.
        files: Vec<PathBuf>,
    },
    /// Write ready-to-run instance files for a named family.
    ///
    /// Names: klein-dihedral, catalog, symmetric:N, nonsolvable:P,
    /// supersolvable:P,Q,R.
    Examples {
        name: String,
        /// Directory to write into; prints to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure { code: e.exit_code() as u8, message: e.to_string() }
    }
}

impl From<NormalityError> for Failure {
    fn from(e: NormalityError) -> Self {
        match e {
            NormalityError::Group(g) => InstanceError::from(g).into(),
            other => Failure { code: 2, message: other.to_string() },
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn read_spec(path: &Path) -> Result<InstanceSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(InstanceSpec::parse(&text)?)
}

fn load(path: &Path, max_order: Option<usize>) -> Result<(InstanceSpec, Instance), Failure> {
    let spec = read_spec(path)?;
    let inst = spec.resolve(max_order)?;
    Ok((spec, inst))
}

fn emit<T: serde::Serialize>(machine: bool, json: &T, text: &str) {
    if machine {
        println!("{}", serde_json::to_string_pretty(json).expect("serializable"));
    } else {
        print!("{text}");
    }
}

fn self_check_failed(message: &str) -> Failure {
    Failure { code: 4, message: message.to_string() }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze { file } => {
            let (spec, inst) = load(file, cli.max_order)?;
            let f = inst
                .f
                .as_ref()
                .ok_or_else(|| usage("analyze needs an [f] section in the instance file"))?;
            let oracle = cli.oracle || inst.options.oracle;
            let out = report::analyze(&inst, &spec.group, f, oracle).map_err(|m| self_check_failed(&m))?;
            emit(cli.machine, &out.json, &out.text);
            if out.json.oracle.is_some_and(|o| o != out.json.stable) {
                return Err(self_check_failed("oracle disagrees with the criterion"));
            }
        }
        Command::Classify { file } => {
            let (spec, inst) = load(file, cli.max_order)?;
            let a = inst.galois()?;
            let rep = is_simple_deformation(&a, inst.options.lattice_cap)?;
            let oracle = cli.oracle || inst.options.oracle;
            let (json, text) = report::classify(&inst, &spec.group, &a, &rep, oracle);
            emit(cli.machine, &json, &text);
            if json.rows.iter().any(|r| r.oracle.is_some_and(|o| o != r.stable)) {
                return Err(self_check_failed("oracle disagrees with the criterion"));
            }
        }
        Command::InvariantBasis { file } => {
            let (spec, inst) = load(file, cli.max_order)?;
            let f = inst
                .f
                .as_ref()
                .ok_or_else(|| usage("invariant-basis needs an [f] section in the instance file"))?;
            let (json, text) = report::invariant_basis(&inst, &spec.group, f).map_err(|m| usage(m))?;
            emit(cli.machine, &json, &text);
        }
        Command::Verify { suite: selector, inject_fault, seed, samples, files } => {
            let checks = suite::select(selector)?;
            let mut specs = if files.is_empty() {
                catalog::small_catalog()
            } else {
                files.iter().map(|p| read_spec(p)).collect::<Result<Vec<_>, _>>()?
            };
            if let Some(m) = cli.max_order {
                for s in &mut specs {
                    s.options.max_order = m;
                }
            }
            let cfg = SuiteConfig { seed: *seed, samples: *samples, ..SuiteConfig::default() };
            let rep = suite::run_suite(&specs, &checks, &cfg, *inject_fault)?;
            let (json, text) = report::verify(&rep);
            emit(cli.machine, &json, &text);
            if !rep.passed() {
                return Err(self_check_failed(&format!("{} checks failed", json.failed)));
            }
        }
        Command::Examples { name, out } => {
            let specs = catalog::by_name(name)?;
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(dir)
                        .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
                    for s in &specs {
                        let path = dir.join(format!("{}.inst", s.name));
                        std::fs::write(&path, s.to_text())
                            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                        println!("{}", path.display());
                    }
                }
                None => {
                    let texts: Vec<String> = specs.iter().map(InstanceSpec::to_text).collect();
                    print!("{}", texts.join("\n"));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
