//! Report types for every command, with two renderings: a canonical JSON
//! document (stable field order, so re-parsing and re-rendering is
//! byte-identical) and an aligned text form that contains every field of
//! the JSON form.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use torusq_core::analysis::{max_isolated_fixpoints, Analysis, Tier};
use torusq_core::exactmath::rat::format_rat;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassificationSection {
    pub fixpoint_free_elements: usize,
    pub fixpoint_elements: usize,
    pub f_prime_order: usize,
    pub f_star_size: usize,
    pub quotient_order: usize,
    pub f_star_generates_f_prime: bool,
    pub g_equals_e_prime: bool,
    pub g_equals_f_prime: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Pi1Section {
    pub image_rank: usize,
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abelian_exponent_bound: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlbaneseSection {
    pub base_dim: usize,
    pub fiber_lattice_rank: usize,
    pub fiber_group_order: usize,
    pub fiber_q_prime: usize,
    pub outer_quotient_order: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementSection {
    pub index: usize,
    pub order: u64,
    pub has_fixpoint: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fix_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolated_fixpoints: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_torsion: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singularity_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub age: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MinAgeSection {
    pub element: usize,
    pub age: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalyzeReport {
    pub name: String,
    pub tier: String,
    pub rank: usize,
    pub n: usize,
    pub group_order: usize,
    pub translation_index: usize,
    pub classification: ClassificationSection,
    pub q_prime: usize,
    pub kappa1_star: i64,
    pub nu1_star: i64,
    pub etale: bool,
    pub reduced_to_f_prime: bool,
    pub pi1: Pi1Section,
    pub albanese: AlbaneseSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_isolated_fixpoints: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kodaira_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniruled: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_age: Option<MinAgeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_torsion_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_reflections: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_reflections_present: Option<bool>,
    /// Caveats attached to the invariants (e.g. the quasi-etale
    /// irregularity can exceed q' when quasi-reflections are present).
    pub notes: Vec<String>,
    pub elements: Vec<ElementSection>,
}

impl AnalyzeReport {
    pub fn from_analysis(a: &Analysis) -> Self {
        let cls = &a.classification;
        let elements = a
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| ElementSection {
                index: i,
                order: e.order,
                has_fixpoint: e.fix.nonempty,
                fix_dim: e.fix.dim,
                isolated_fixpoints: e.fix.isolated_count.as_ref().map(|c| c.to_string()),
                lattice_torsion: e
                    .fix
                    .torsion
                    .as_ref()
                    .map(|t| t.invariant_factors().iter().map(|f| f.to_string()).collect()),
                singularity_order: e.weights.as_ref().map(|(o, _)| *o),
                weights: e.weights.as_ref().map(|(_, w)| w.clone()),
                age: e.age.as_ref().map(format_rat),
            })
            .collect();
        AnalyzeReport {
            name: a.name.clone(),
            tier: match a.tier {
                Tier::Lattice => "lattice".into(),
                Tier::Analytic => "analytic".into(),
            },
            rank: a.rank,
            n: a.n,
            group_order: a.group_order,
            translation_index: a.translation_index,
            classification: ClassificationSection {
                fixpoint_free_elements: cls.e.len(),
                fixpoint_elements: cls.f.len(),
                f_prime_order: cls.f_prime.len(),
                f_star_size: cls.f_star.len(),
                quotient_order: cls.quotient_order,
                f_star_generates_f_prime: cls.fstar_generates_fprime,
                g_equals_e_prime: cls.g_equals_eprime,
                g_equals_f_prime: cls.g_equals_fprime,
            },
            q_prime: a.invariants.q_prime,
            kappa1_star: a.invariants.kappa1_star,
            nu1_star: a.invariants.nu1_star,
            etale: a.invariants.etale,
            reduced_to_f_prime: a.invariants.reduced_to_f_prime,
            pi1: Pi1Section {
                image_rank: a.invariants.pi1.image_rank,
                finite: a.invariants.pi1.finite,
                abelian_exponent_bound: a.invariants.pi1.abelian_exponent_bound,
            },
            albanese: AlbaneseSection {
                base_dim: a.albanese.base_half_dim,
                fiber_lattice_rank: a.albanese.fiber_table.rank(),
                fiber_group_order: a.albanese.fiber_table.order(),
                fiber_q_prime: a.albanese.fiber_report.q_prime,
                outer_quotient_order: a.albanese.outer_quotient_order,
            },
            max_isolated_fixpoints: max_isolated_fixpoints(a).map(|c| c.to_string()),
            hodge: a
                .invariants
                .hodge
                .as_ref()
                .map(|h| h.iter().map(|x| x.to_string()).collect()),
            euler_characteristic: a.invariants.euler_char.as_ref().map(|x| x.to_string()),
            canonical: a.canonicity.as_ref().map(|c| c.canonical),
            kodaira_zero: a.canonicity.as_ref().map(|c| c.kodaira_zero),
            uniruled: a.canonicity.as_ref().map(|c| c.uniruled),
            min_age: a.canonicity.as_ref().and_then(|c| {
                c.min_age_witness.as_ref().map(|(i, age)| MinAgeSection {
                    element: *i,
                    age: format_rat(age),
                })
            }),
            canonical_torsion_order: a.canonicity.as_ref().map(|c| c.canonical_torsion_order),
            quasi_reflections: a.canonicity.as_ref().map(|c| c.quasi_reflections.clone()),
            quasi_reflections_present: a
                .canonicity
                .as_ref()
                .map(|c| !c.quasi_reflections.is_empty()),
            notes: {
                let mut notes = Vec::new();
                if a
                    .canonicity
                    .as_ref()
                    .map(|c| !c.quasi_reflections.is_empty())
                    .unwrap_or(false)
                {
                    notes.push(
                        "quasi-reflections present: the quasi-etale irregularity q+ may exceed q_prime"
                            .to_string(),
                    );
                }
                notes
            },
            elements,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CyclicRow {
    pub degree: u32,
    pub dimension: usize,
    pub closed_form: usize,
    pub agrees: bool,
    pub vanishing_forced: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifyCyclicReport {
    pub order: u64,
    pub weights: Vec<u64>,
    pub pole: u32,
    pub rows: Vec<CyclicRow>,
    pub all_agree: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DescentRow {
    pub degree: u32,
    pub dimension: usize,
    pub matches_expected: bool,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DescentReport {
    pub order: u64,
    pub epsilon: i8,
    pub degree_bound: Option<u32>,
    pub rows: Vec<DescentRow>,
    pub all_match: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClebschRow {
    pub degree: u32,
    pub sym_sections: u64,
    pub twisted_ratio: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClebschReport {
    pub max_degree: u32,
    pub rows: Vec<ClebschRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CapCheckReport {
    pub dims: usize,
    pub count: usize,
    pub max_degree: u32,
    pub trials: u32,
    pub seed: u64,
    pub all_equal: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SurfaceReportDoc {
    pub kappa: String,
    pub genus: u32,
    pub isotrivial: bool,
    pub singular_fibers: u32,
    pub multiple_fibers: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_prime_hint: Option<u32>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa1_starred: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu1_starred: Option<i64>,
    pub nu1_status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rationale: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormulaReport {
    pub formula: String,
    pub dim: u32,
    pub ambient: u32,
    pub kappa1: String,
    pub nu1: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    Analyze(AnalyzeReport),
    VerifyCyclic(VerifyCyclicReport),
    Descent(DescentReport),
    Clebsch(ClebschReport),
    CapCheck(CapCheckReport),
    Surface(SurfaceReportDoc),
    Formula(FormulaReport),
}

impl Report {
    fn to_value(&self) -> Value {
        match self {
            Report::Analyze(r) => serde_json::to_value(r),
            Report::VerifyCyclic(r) => serde_json::to_value(r),
            Report::Descent(r) => serde_json::to_value(r),
            Report::Clebsch(r) => serde_json::to_value(r),
            Report::CapCheck(r) => serde_json::to_value(r),
            Report::Surface(r) => serde_json::to_value(r),
            Report::Formula(r) => serde_json::to_value(r),
        }
        .expect("reports serialise")
    }

    /// Canonical machine rendering: pretty JSON plus a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialise");
        s.push('\n');
        s
    }

    /// Aligned text rendering containing every machine field.  On the
    /// lattice tier the analytic-only outputs are listed explicitly as
    /// unavailable.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        flatten("", &self.to_value(), &mut lines);
        if let Report::Analyze(r) = self {
            if r.tier == "lattice" {
                for field in [
                    "hodge",
                    "euler_characteristic",
                    "canonical",
                    "kodaira_zero",
                    "uniruled",
                    "min_age",
                    "canonical_torsion_order",
                    "quasi_reflections",
                ] {
                    lines.push((field.to_string(), "unavailable (lattice tier)".to_string()));
                }
            }
        }
        let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in lines {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, val, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|i| !i.is_object() && !i.is_array()) {
                let rendered: Vec<String> = items.iter().map(render_scalar).collect();
                out.push((prefix.to_string(), format!("[{}]", rendered.join(", "))));
            } else {
                for (i, item) in items.iter().enumerate() {
                    flatten(&format!("{prefix}[{i}]"), item, out);
                }
            }
        }
        other => out.push((prefix.to_string(), render_scalar(other))),
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
