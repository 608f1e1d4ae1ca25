//! Command-line front end: parses action documents, dispatches to the
//! library computations, and renders reports in aligned-text or canonical
//! JSON form.

pub mod document;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use torusq_core::analysis::{analyze, Tier, DEFAULT_GROUP_CAP};
use torusq_core::catalog::{
    abelian_submanifold, complete_intersection, surface_invariants, CatalogError, CiVerdict,
    Nu1Verdict, SurfaceKodaira, SurfaceOutcome, SurfaceSpec,
};
use torusq_core::exactmath::rat::{format_rat, rat_int, Rat};
use torusq_core::symdiff::{
    clebsch_gordan_dims, cyclic_descent_dim, isotrivial_descent_basis, sym_intersection_dim,
    SymdiffError,
};
use torusq_core::torus::TorusError;

use report::*;

pub const CAP_ENV_VAR: &str = "TORUSQ_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("computation failed: {0}")]
    Math(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    /// Process exit status: 1 for input problems, 2 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Resource(_) => 2,
            _ => 1,
        }
    }
}

impl From<torusq_core::analysis::AnalysisError> for CliError {
    fn from(e: torusq_core::analysis::AnalysisError) -> Self {
        use torusq_core::analysis::AnalysisError as A;
        match &e {
            A::Torus(TorusError::GroupTooLarge(cap)) => {
                CliError::Resource(format!("group closure exceeded the cap of {cap} elements"))
            }
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<SymdiffError> for CliError {
    fn from(e: SymdiffError) -> Self {
        CliError::Validation {
            field: "arguments".into(),
            reason: e.to_string(),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Validation {
            field: "arguments".into(),
            reason: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "torusq",
    about = "Exact invariants of quotients of complex tori by finite groups",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyse a torus action document.
    Analyze {
        file: PathBuf,
        /// Force a tier; default is analytic when a period matrix is present.
        #[arg(long)]
        tier: Option<String>,
        /// Emit the canonical JSON report instead of aligned text.
        #[arg(long)]
        json: bool,
        /// Group enumeration cap (default 10000; TORUSQ_CAP overrides).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Dimensions of invariant symmetric differentials descending through
    /// a cyclic quotient singularity chart.
    VerifyCyclic {
        #[arg(long)]
        order: u64,
        /// Comma-separated weights, e.g. 1,1,2.
        #[arg(long)]
        weights: String,
        #[arg(long = "max-degree")]
        max_degree: u32,
        #[arg(long)]
        pole: u32,
        #[arg(long)]
        json: bool,
    },
    /// Basis of sections descending through an isotrivial elliptic chart.
    DescentIsotrivial {
        #[arg(long)]
        order: u64,
        /// +1 or -1.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
        #[arg(long = "max-degree")]
        max_degree: u32,
        /// Polynomial coefficient degree bound (default 2*N*m per degree).
        #[arg(long = "degree-bound")]
        degree_bound: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Section counts for symmetric powers of the non-split self-extension.
    ClebschGordan {
        #[arg(long = "max-degree")]
        max_degree: u32,
        #[arg(long)]
        json: bool,
    },
    /// Randomised check that symmetric powers commute with intersections.
    CapCheck {
        #[arg(long)]
        dims: usize,
        #[arg(long)]
        count: usize,
        #[arg(long = "max-degree")]
        max_degree: u32,
        #[arg(long)]
        trials: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Cotangent dimensions of a surface not of general type.
    Surface {
        /// -inf, 0 or 1.
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        isotrivial: bool,
        /// Number of singular fibres (presence is what matters).
        #[arg(long = "singular-fibers", default_value_t = 0)]
        singular_fibers: u32,
        /// Comma-separated multiplicities of multiple fibres.
        #[arg(long = "multiple-fibers")]
        multiple_fibers: Option<String>,
        /// For kappa = 0: 2 for torus/bielliptic, 0 for K3/Enriques.
        #[arg(long = "q-prime-hint")]
        q_prime_hint: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form dimension formulas.
    Formula {
        #[command(subcommand)]
        which: FormulaCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum FormulaCommand {
    /// Submanifold with ample normal bundle in an abelian variety.
    AbelianSub {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        ambient: u32,
        #[arg(long)]
        json: bool,
    },
    /// Complete intersection in projective space.
    Ci {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        ambient: u32,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    pub fn wants_json(&self) -> bool {
        match self {
            Command::Analyze { json, .. }
            | Command::VerifyCyclic { json, .. }
            | Command::DescentIsotrivial { json, .. }
            | Command::ClebschGordan { json, .. }
            | Command::CapCheck { json, .. }
            | Command::Surface { json, .. } => *json,
            Command::Formula { which } => match which {
                FormulaCommand::AbelianSub { json, .. } | FormulaCommand::Ci { json, .. } => *json,
            },
        }
    }
}

fn resolve_cap(flag: Option<usize>) -> usize {
    if let Some(c) = flag {
        return c;
    }
    if let Ok(v) = std::env::var(CAP_ENV_VAR) {
        if let Ok(c) = v.parse() {
            return c;
        }
    }
    DEFAULT_GROUP_CAP
}

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Analyze { file, tier, cap, .. } => {
            let text = std::fs::read_to_string(file).map_err(|e| CliError::Io {
                path: file.display().to_string(),
                message: e.to_string(),
            })?;
            let action = document::parse_action(&text)?;
            let tier = match tier.as_deref() {
                None => None,
                Some("lattice") => Some(Tier::Lattice),
                Some("analytic") => Some(Tier::Analytic),
                Some(other) => {
                    return Err(CliError::Validation {
                        field: "--tier".into(),
                        reason: format!("expected lattice or analytic, got {other:?}"),
                    })
                }
            };
            let analysis = analyze(&action, resolve_cap(*cap), tier)?;
            Ok(Report::Analyze(AnalyzeReport::from_analysis(&analysis)))
        }
        Command::VerifyCyclic {
            order,
            weights,
            max_degree,
            pole,
            ..
        } => {
            let weights = parse_u64_list(weights, "--weights")?;
            let mut rows = Vec::new();
            let mut all_agree = true;
            for m in 0..=*max_degree {
                let d = cyclic_descent_dim(*order, &weights, m, *pole)?;
                all_agree &= d.agrees;
                rows.push(CyclicRow {
                    degree: m,
                    dimension: d.dimension,
                    closed_form: d.closed_form_dimension,
                    agrees: d.agrees,
                    vanishing_forced: m as u64 > *pole as u64 * *order,
                });
            }
            Ok(Report::VerifyCyclic(VerifyCyclicReport {
                order: *order,
                weights,
                pole: *pole,
                rows,
                all_agree,
            }))
        }
        Command::DescentIsotrivial {
            order,
            epsilon,
            max_degree,
            degree_bound,
            ..
        } => {
            let epsilon = match epsilon.as_str() {
                "+1" | "1" => 1i8,
                "-1" => -1i8,
                other => {
                    return Err(CliError::Validation {
                        field: "--epsilon".into(),
                        reason: format!("expected +1 or -1, got {other:?}"),
                    })
                }
            };
            let mut rows = Vec::new();
            let mut all_match = true;
            for m in 0..=*max_degree {
                let d = isotrivial_descent_basis(*order, epsilon, m, *degree_bound)?;
                all_match &= d.matches_expected;
                let basis = d
                    .basis
                    .iter()
                    .map(|combo| {
                        combo
                            .iter()
                            .map(|(c, coeff)| {
                                let mut term = String::new();
                                if coeff != &rat_int(1) {
                                    term.push_str(&format!("{} ", format_rat(coeff)));
                                }
                                term.push_str(&format!(
                                    "s^{} (ds)^{} (dx)^{}",
                                    c.s_power,
                                    m - c.dx_power,
                                    c.dx_power
                                ));
                                term
                            })
                            .collect::<Vec<_>>()
                            .join(" + ")
                    })
                    .collect();
                rows.push(DescentRow {
                    degree: m,
                    dimension: d.basis.len(),
                    matches_expected: d.matches_expected,
                    basis,
                });
            }
            Ok(Report::Descent(DescentReport {
                order: *order,
                epsilon,
                degree_bound: *degree_bound,
                rows,
                all_match,
            }))
        }
        Command::ClebschGordan { max_degree, .. } => {
            let rows = clebsch_gordan_dims(*max_degree)
                .into_iter()
                .enumerate()
                .map(|(m, (a, b))| ClebschRow {
                    degree: m as u32,
                    sym_sections: a,
                    twisted_ratio: b,
                })
                .collect();
            Ok(Report::Clebsch(ClebschReport {
                max_degree: *max_degree,
                rows,
            }))
        }
        Command::CapCheck {
            dims,
            count,
            max_degree,
            trials,
            seed,
            ..
        } => {
            if *dims == 0 || *dims > 6 {
                return Err(CliError::Validation {
                    field: "--dims".into(),
                    reason: "ambient dimension must be between 1 and 6".into(),
                });
            }
            if *max_degree == 0 || *max_degree > 5 {
                return Err(CliError::Validation {
                    field: "--max-degree".into(),
                    reason: "degree must be between 1 and 5".into(),
                });
            }
            let mut rng = StdRng::seed_from_u64(*seed);
            let mut failures = Vec::new();
            for trial in 0..*trials {
                let m = rng.gen_range(1..=*max_degree);
                let subspaces: Vec<Vec<Vec<Rat>>> = (0..*count)
                    .map(|_| {
                        let sub_dim = rng.gen_range(1..=*dims);
                        (0..sub_dim)
                            .map(|_| {
                                (0..*dims)
                                    .map(|_| rat_int(rng.gen_range(-3..=3)))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                let (lhs, rhs) = sym_intersection_dim(&subspaces, *dims, m);
                if lhs != rhs {
                    failures.push(format!(
                        "trial {trial}: degree {m}, binomial {lhs} != intersection {rhs}"
                    ));
                }
            }
            Ok(Report::CapCheck(CapCheckReport {
                dims: *dims,
                count: *count,
                max_degree: *max_degree,
                trials: *trials,
                seed: *seed,
                all_equal: failures.is_empty(),
                failures,
            }))
        }
        Command::Surface {
            kappa,
            genus,
            isotrivial,
            singular_fibers,
            multiple_fibers,
            q_prime_hint,
            ..
        } => {
            let kappa_parsed = match kappa.as_str() {
                "-inf" | "-infinity" | "-oo" => SurfaceKodaira::MinusInfinity,
                "0" => SurfaceKodaira::Zero,
                "1" => SurfaceKodaira::One,
                "2" => return Err(CatalogError::GeneralType.into()),
                other => {
                    return Err(CliError::Validation {
                        field: "--kappa".into(),
                        reason: format!("expected -inf, 0 or 1, got {other:?}"),
                    })
                }
            };
            let multiples = match multiple_fibers {
                None => Vec::new(),
                Some(s) => parse_u64_list(s, "--multiple-fibers")?
                    .into_iter()
                    .map(|x| x as u32)
                    .collect(),
            };
            let spec = SurfaceSpec {
                kappa: kappa_parsed,
                genus: *genus,
                isotrivial: *isotrivial,
                has_singular_fiber: *singular_fibers > 0,
                multiple_fibers: multiples.clone(),
                q_prime_hint: *q_prime_hint,
            };
            let outcome = surface_invariants(&spec)?;
            let doc = match outcome {
                SurfaceOutcome::NeedsEtaleReduction => SurfaceReportDoc {
                    kappa: kappa.clone(),
                    genus: *genus,
                    isotrivial: *isotrivial,
                    singular_fibers: *singular_fibers,
                    multiple_fibers: multiples,
                    q_prime_hint: *q_prime_hint,
                    outcome: "needs-etale-reduction".into(),
                    kappa1: None,
                    kappa1_starred: None,
                    nu1: None,
                    nu1_starred: None,
                    nu1_status: "unresolved".into(),
                    rationale: None,
                },
                SurfaceOutcome::Report(r) => {
                    let (nu1, nu1_starred, status) = match r.nu1 {
                        Nu1Verdict::Known(v) => {
                            (v.unstarred().to_string(), v.starred(), "known".to_string())
                        }
                        Nu1Verdict::Open { conjectured } => (
                            format!("OPEN({})", conjectured.unstarred()),
                            conjectured.starred(),
                            "open".to_string(),
                        ),
                    };
                    SurfaceReportDoc {
                        kappa: kappa.clone(),
                        genus: *genus,
                        isotrivial: *isotrivial,
                        singular_fibers: *singular_fibers,
                        multiple_fibers: multiples,
                        q_prime_hint: *q_prime_hint,
                        outcome: "report".into(),
                        kappa1: Some(r.kappa1.unstarred().to_string()),
                        kappa1_starred: Some(r.kappa1.starred()),
                        nu1: Some(nu1),
                        nu1_starred: Some(nu1_starred),
                        nu1_status: status,
                        rationale: Some(r.rationale),
                    }
                }
            };
            Ok(Report::Surface(doc))
        }
        Command::Formula { which } => match which {
            FormulaCommand::AbelianSub { dim, ambient, .. } => {
                let (k, n) = abelian_submanifold(*dim, *ambient)?;
                Ok(Report::Formula(FormulaReport {
                    formula: "abelian-submanifold".into(),
                    dim: *dim,
                    ambient: *ambient,
                    kappa1: k.to_string(),
                    nu1: n.to_string(),
                    note: Some("value is min(dim, codim); requires an ample normal bundle".into()),
                }))
            }
            FormulaCommand::Ci { dim, ambient, .. } => {
                let verdict = complete_intersection(*dim, *ambient)?;
                let (k, n, note) = match verdict {
                    CiVerdict::NotPseudoeffective => {
                        ("-inf".to_string(), "-inf".to_string(), None)
                    }
                    CiVerdict::OutOfScope => (
                        "out-of-scope".to_string(),
                        "out-of-scope".to_string(),
                        Some("closed form requires 2*dim > ambient".to_string()),
                    ),
                };
                Ok(Report::Formula(FormulaReport {
                    formula: "complete-intersection".into(),
                    dim: *dim,
                    ambient: *ambient,
                    kappa1: k,
                    nu1: n,
                    note,
                }))
            }
        },
    }
}

fn parse_u64_list(s: &str, field: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| CliError::Validation {
                field: field.into(),
                reason: format!("expected a comma-separated integer list, bad entry {part:?}"),
            })
        })
        .collect()
}

/// Run a full command line; returns the rendered output and exit status.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return (e.to_string(), if e.use_stderr() { 1 } else { 0 }),
    };
    match execute(&cli.command) {
        Ok(report) => {
            let rendered = if cli.command.wants_json() {
                report.to_json()
            } else {
                report.to_text()
            };
            (rendered, 0)
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_resolution_prefers_flag() {
        assert_eq!(resolve_cap(Some(42)), 42);
    }

    #[test]
    fn weight_list_parsing() {
        assert_eq!(parse_u64_list("1,1,2", "w").unwrap(), vec![1, 1, 2]);
        assert!(parse_u64_list("1,x", "w").is_err());
    }
}
