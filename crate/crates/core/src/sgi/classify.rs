//! Classification of a test system by the dimension and degree of its
//! solution set.

use crate::groebner::{buchberger, dimension_and_degree, Degree, GroebnerConfig};
use crate::model::{InputSet, StructureSpec};
use crate::polycore::{MonomialOrder, MultiPoly};
use crate::transfer::InvariantVector;

use super::{
    build_test_system, jacobian_rank_test, Classification, SgiConfig, SgiError, TestSystem,
};

/// Result for one specialization `θ*`.
#[derive(Debug, Clone)]
pub struct SeedOutcome {
    pub system: TestSystem,
    pub classification: Classification,
    pub dimension: i64,
    pub degree: Degree,
    /// Parameters whose primed value is forced to `θ*`.
    pub globally_identifiable: Vec<String>,
    pub reduced_basis: Vec<MultiPoly>,
    pub order: MonomialOrder,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub classification: Classification,
    /// The verdict holds for a restricted input set only.
    pub input_qualified: bool,
    pub dimension: i64,
    pub degree: Degree,
    pub globally_identifiable: Vec<String>,
    pub jacobian_rank: usize,
    pub n_params: usize,
    pub seeds_used: Vec<u64>,
    pub outcomes: Vec<SeedOutcome>,
    pub warnings: Vec<String>,
}

impl Verdict {
    /// `SGI`, `SLI`, `SU`, prefixed `𝒰-` for a restricted input set.
    pub fn label(&self) -> String {
        if self.input_qualified {
            format!("𝒰-{}", self.classification)
        } else {
            self.classification.to_string()
        }
    }

    /// Plain-ASCII variant of [`Verdict::label`].
    pub fn ascii_label(&self) -> String {
        if self.input_qualified {
            format!("U-{}", self.classification)
        } else {
            self.classification.to_string()
        }
    }
}

/// Classifies one test system with a Gröbner basis under `order`.
pub fn classify(
    ts: &TestSystem,
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<SeedOutcome, SgiError> {
    let order = order.clone();
    let ideal = buchberger(ts.equations.clone(), order.clone(), config)?;
    let analysis = dimension_and_degree(&ideal)?;
    if analysis.dimension < 0 {
        return Err(SgiError::Inconsistent);
    }
    let classification = match (analysis.dimension, analysis.degree) {
        (0, Degree::Finite(1)) => Classification::Sgi,
        (0, _) => Classification::Sli,
        _ => Classification::Su,
    };
    let params = ts.params();
    let mut globally_identifiable = Vec::new();
    for (i, name) in params.iter().enumerate() {
        let probe = &MultiPoly::var_index(&ts.primed, i)
            - &MultiPoly::constant(&ts.primed, ts.theta_star[i].clone());
        if ideal.normal_form(&probe)?.is_zero() {
            globally_identifiable.push(name.clone());
        }
    }
    Ok(SeedOutcome {
        system: ts.clone(),
        classification,
        dimension: analysis.dimension,
        degree: analysis.degree,
        globally_identifiable,
        reduced_basis: analysis.reduced_basis,
        order,
    })
}

/// Full analysis: classification at `config.seeds` independent
/// specializations plus the Jacobian rank cross-check. Seeds that disagree
/// yield the weaker verdict and a warning.
pub fn identifiability(
    inv: &InvariantVector,
    spec: &StructureSpec,
    inputs: &InputSet,
    config: &SgiConfig,
) -> Result<Verdict, SgiError> {
    let order = config
        .order
        .clone()
        .unwrap_or_else(|| MonomialOrder::grevlex(spec.n_params()));
    let mut outcomes = Vec::new();
    for k in 0..config.seeds.max(1) as u64 {
        let ts = build_test_system(inv, spec, config.seed.wrapping_add(k))?;
        outcomes.push(classify(&ts, &order, &config.groebner)?);
    }
    let mut warnings = Vec::new();
    let first = &outcomes[0];
    if outcomes
        .iter()
        .any(|o| o.dimension != first.dimension || o.degree != first.degree)
    {
        warnings.push(format!(
            "specializations disagree (dimension/degree: {}); reporting the weaker verdict, \
             result is inconclusive",
            outcomes
                .iter()
                .map(|o| format!("{}/{}", o.dimension, o.degree))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    let weakest = outcomes
        .iter()
        .min_by(|a, b| {
            a.classification.cmp(&b.classification).then_with(|| {
                let da = a.degree.finite().unwrap_or(u64::MAX);
                let db = b.degree.finite().unwrap_or(u64::MAX);
                db.cmp(&da).then(b.dimension.cmp(&a.dimension))
            })
        })
        .expect("at least one outcome");
    let globally_identifiable: Vec<String> = first
        .globally_identifiable
        .iter()
        .filter(|p| outcomes.iter().all(|o| o.globally_identifiable.contains(p)))
        .cloned()
        .collect();

    let n_params = spec.n_params();
    let jacobian_rank = jacobian_rank_test(inv, spec, config.jacobian_trials, config.seed);
    if (jacobian_rank == n_params) != (weakest.dimension == 0) {
        warnings.push(format!(
            "Jacobian rank {jacobian_rank} of {n_params} disagrees with solution-set dimension {}",
            weakest.dimension
        ));
    }
    Ok(Verdict {
        classification: weakest.classification,
        input_qualified: inputs.is_restricted(),
        dimension: weakest.dimension,
        degree: weakest.degree,
        globally_identifiable,
        jacobian_rank,
        n_params,
        seeds_used: outcomes.iter().map(|o| o.system.seed).collect(),
        outcomes,
        warnings,
    })
}
