//! The JSON report. Field order is fixed by the struct layout and maps are
//! sorted, so equal inputs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;
use tfa_core::groebner::Degree;
use tfa_core::model::{InputSet, Severity, StructureSpec, Violation};
use tfa_core::sgi::{SeedOutcome, Solution, SolutionValue, Verdict};
use tfa_core::transfer::{InvariantVector, RatFun, TransferData};
use tfa_core::Rat;

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: Tool,
    pub structure: StructureSummary,
    pub input_set: InputSet,
    pub compartmental_check: ClassCheck,
    pub transfer: TransferSection,
    pub invariants: InvariantSection,
    pub verdict: VerdictSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<SolutionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering_experiment: Option<OrderingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct StructureSummary {
    pub name: String,
    pub states: usize,
    pub inputs: usize,
    pub outputs: usize,
    pub n_params: usize,
    pub parameters: Vec<String>,
    pub class: String,
}

impl StructureSummary {
    pub fn of(spec: &StructureSpec) -> Self {
        StructureSummary {
            name: spec.name().to_string(),
            states: spec.n_states(),
            inputs: spec.n_inputs(),
            outputs: spec.n_outputs(),
            n_params: spec.n_params(),
            parameters: spec.params().to_vec(),
            class: spec.class().name().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassCheck {
    /// Whether the syntactic compartmental test passed.
    pub compartmental: bool,
    pub violations: Vec<ViolationEntry>,
    pub nondegenerate_start: bool,
}

#[derive(Debug, Serialize)]
pub struct ViolationEntry {
    pub severity: Severity,
    pub message: String,
}

impl ClassCheck {
    pub fn new(violations: &[Violation], nondegenerate_start: bool) -> Self {
        ClassCheck {
            compartmental: violations.is_empty(),
            violations: violations
                .iter()
                .map(|v| ViolationEntry {
                    severity: v.severity,
                    message: v.message.clone(),
                })
                .collect(),
            nondegenerate_start,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RatFunEntry {
    pub entry: String,
    pub numerator: String,
    pub denominator: String,
}

impl RatFunEntry {
    fn new(entry: String, f: &RatFun) -> Self {
        RatFunEntry {
            entry,
            numerator: f.num().to_string(),
            denominator: f.den().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CancellationEntry {
    pub entry: String,
    pub degree: u32,
    pub factor: String,
    pub all: bool,
}

#[derive(Debug, Serialize)]
pub struct TransferSection {
    pub char_poly: String,
    pub v: Vec<RatFunEntry>,
    pub w: Option<Vec<RatFunEntry>>,
    pub cancellations: Vec<CancellationEntry>,
    pub generically_minimal: bool,
}

impl TransferSection {
    pub fn of(td: &TransferData) -> Self {
        let v =
            td.v.iter()
                .enumerate()
                .map(|(i, f)| RatFunEntry::new(format!("V({},1)", i + 1), f))
                .collect();
        let w = td.w.as_ref().map(|rows| {
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(move |(j, f)| RatFunEntry::new(format!("W({},{})", i + 1, j + 1), f))
                })
                .collect()
        });
        TransferSection {
            char_poly: td.char_poly.to_string(),
            v,
            w,
            cancellations: td
                .cancellations
                .iter()
                .map(|c| CancellationEntry {
                    entry: c.entry.clone(),
                    degree: c.degree,
                    factor: c.factor.to_string(),
                    all: c.all,
                })
                .collect(),
            generically_minimal: td.generically_minimal,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantEntry {
    pub symbol: String,
    pub label: String,
    pub poly: String,
}

#[derive(Debug, Serialize)]
pub struct DuplicateEntry {
    pub label: String,
    pub same_as: String,
}

#[derive(Debug, Serialize)]
pub struct InvariantSection {
    pub count: usize,
    pub entries: Vec<InvariantEntry>,
    pub duplicates: Vec<DuplicateEntry>,
    pub constants: Vec<String>,
}

impl InvariantSection {
    pub fn of(inv: &InvariantVector) -> Self {
        InvariantSection {
            count: inv.len(),
            entries: inv
                .entries
                .iter()
                .enumerate()
                .map(|(i, e)| InvariantEntry {
                    symbol: format!("phi{i}"),
                    label: e.label.clone(),
                    poly: e.poly.to_string(),
                })
                .collect(),
            duplicates: inv
                .duplicates
                .iter()
                .map(|(label, same_as)| DuplicateEntry {
                    label: label.clone(),
                    same_as: same_as.clone(),
                })
                .collect(),
            constants: inv.constants.clone(),
        }
    }
}

fn named_values(names: &[String], values: &[Rat]) -> BTreeMap<String, String> {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| (n.clone(), v.to_string()))
        .collect()
}

#[derive(Debug, Serialize)]
pub struct SeedSection {
    pub seed: u64,
    pub theta_star: BTreeMap<String, String>,
    pub classification: String,
    pub dimension: i64,
    pub degree: Degree,
    pub globally_identifiable: Vec<String>,
    pub reduced_basis: Vec<String>,
}

impl SeedSection {
    fn of(o: &SeedOutcome, params: &[String]) -> Self {
        SeedSection {
            seed: o.system.seed,
            theta_star: named_values(params, &o.system.theta_star),
            classification: o.classification.name().to_string(),
            dimension: o.dimension,
            degree: o.degree,
            globally_identifiable: o.globally_identifiable.clone(),
            reduced_basis: o.reduced_basis.iter().map(|p| p.to_string()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ParamVerdict {
    pub name: String,
    pub globally_identifiable: bool,
}

#[derive(Debug, Serialize)]
pub struct VerdictSection {
    pub classification: String,
    pub label: String,
    pub input_qualified: bool,
    pub dimension: i64,
    pub degree: Degree,
    pub globally_identifiable: Vec<String>,
    pub parameters: Vec<ParamVerdict>,
    pub jacobian_rank: usize,
    pub n_params: usize,
    pub order: String,
    pub seed: u64,
    pub seed_from_entropy: bool,
    pub seeds: Vec<SeedSection>,
    pub warnings: Vec<String>,
}

impl VerdictSection {
    pub fn of(v: &Verdict, spec: &StructureSpec, seed_from_entropy: bool) -> Self {
        let params = spec.params();
        VerdictSection {
            classification: v.classification.name().to_string(),
            label: v.label(),
            input_qualified: v.input_qualified,
            dimension: v.dimension,
            degree: v.degree,
            globally_identifiable: v.globally_identifiable.clone(),
            parameters: params
                .iter()
                .map(|p| ParamVerdict {
                    name: p.clone(),
                    globally_identifiable: v.globally_identifiable.contains(p),
                })
                .collect(),
            jacobian_rank: v.jacobian_rank,
            n_params: v.n_params,
            order: v
                .outcomes
                .first()
                .map(|o| o.order.describe(spec.ring()))
                .unwrap_or_default(),
            seed: v.seeds_used.first().copied().unwrap_or_default(),
            seed_from_entropy,
            seeds: v
                .outcomes
                .iter()
                .map(|o| SeedSection::of(o, params))
                .collect(),
            warnings: v.warnings.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ValueEntry {
    Exact { value: String },
    Interval { lo: String, hi: String, approx: f64 },
    Unresolved,
}

impl From<&SolutionValue> for ValueEntry {
    fn from(v: &SolutionValue) -> Self {
        match v {
            SolutionValue::Exact(x) => ValueEntry::Exact {
                value: x.to_string(),
            },
            SolutionValue::Interval { lo, hi } => ValueEntry::Interval {
                lo: lo.to_string(),
                hi: hi.to_string(),
                approx: v.approx().unwrap_or(f64::NAN),
            },
            SolutionValue::Unresolved => ValueEntry::Unresolved,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolutionEntry {
    pub values: BTreeMap<String, ValueEntry>,
    pub feasible: Option<bool>,
    pub verified: bool,
    pub is_true_point: bool,
}

#[derive(Debug, Serialize)]
pub struct SolutionSection {
    pub seed: u64,
    pub enumerated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub count: usize,
    pub feasible_count: usize,
    pub solutions: Vec<SolutionEntry>,
}

impl SolutionSection {
    pub fn enumerated(seed: u64, params: &[String], sols: &[Solution]) -> Self {
        SolutionSection {
            seed,
            enumerated: true,
            reason: None,
            count: sols.len(),
            feasible_count: sols.iter().filter(|s| s.feasible == Some(true)).count(),
            solutions: sols
                .iter()
                .map(|s| SolutionEntry {
                    values: params
                        .iter()
                        .zip(&s.values)
                        .map(|(n, v)| (n.clone(), ValueEntry::from(v)))
                        .collect(),
                    feasible: s.feasible,
                    verified: s.verified,
                    is_true_point: s.is_true_point,
                })
                .collect(),
        }
    }

    pub fn skipped(seed: u64, reason: String) -> Self {
        SolutionSection {
            seed,
            enumerated: false,
            reason: Some(reason),
            count: 0,
            feasible_count: 0,
            solutions: Vec::new(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CandidateEntry {
    pub solution: usize,
    pub coincides: bool,
    pub max_relative_deviation: f64,
}

#[derive(Debug, Serialize)]
pub struct ValidationSection {
    pub experiments: Vec<Vec<String>>,
    pub t_end: f64,
    pub points: usize,
    pub tolerance: f64,
    pub candidates: Vec<CandidateEntry>,
    pub all_coincide: bool,
}

#[derive(Debug, Serialize)]
pub struct BasisEntry {
    pub order: String,
    pub basis: Vec<String>,
    pub independent_conditions: usize,
}

#[derive(Debug, Serialize)]
pub struct OrderingSection {
    pub bases: Vec<BasisEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub same_ideal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_elements: Option<Vec<String>>,
}
