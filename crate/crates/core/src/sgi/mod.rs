//! Identifiability test systems `φ(θ′) = φ(θ*)` and their classification.
//!
//! The true parameter `θ*` is a random rational point; the structure is
//! classified by the dimension and degree of the solution set in `θ′`,
//! which holds for almost all `θ*` when the draw is generic. Two
//! independent draws guard against unlucky specializations.

mod classify;
mod solve;
mod univariate;

use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::groebner::{GroebnerConfig, GroebnerError};
use crate::model::StructureSpec;
use crate::polycore::{MonomialOrder, MultiPoly, Rat, Ring};
use crate::transfer::InvariantVector;

pub use classify::{classify, identifiability, SeedOutcome, Verdict};
pub use solve::{enumerate_solutions, Solution, SolutionValue};
pub use univariate::{simplest_between, RealRoot, UPoly};

/// Draws of `θ*` tried before giving up on a degenerate specialization.
pub const MAX_SPECIALIZATION_ATTEMPTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SgiError {
    #[error("no informative output: the invariant vector is empty")]
    NoInvariants,
    #[error("every one of {attempts} random specializations was degenerate")]
    DegenerateSpecialization { attempts: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("solution set has dimension {dimension}; enumeration needs finitely many solutions")]
    NotZeroDimensional { dimension: i64 },
    #[error("solution count {degree} exceeds the enumeration bound {bound}")]
    DegreeBoundExceeded { degree: u64, bound: u64 },
    #[error("the test system has no solution although θ* solves it")]
    Inconsistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Classification {
    /// Infinitely many solutions.
    #[serde(rename = "SU")]
    Su,
    /// Finitely many, more than one.
    #[serde(rename = "SLI")]
    Sli,
    /// Exactly one.
    #[serde(rename = "SGI")]
    Sgi,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Sgi => "SGI",
            Classification::Sli => "SLI",
            Classification::Su => "SU",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Settings for a full identifiability analysis.
#[derive(Debug, Clone)]
pub struct SgiConfig {
    pub seed: u64,
    /// Independent specializations (`seed`, `seed + 1`, …).
    pub seeds: usize,
    /// Order on the primed parameters (same indices as the parameters);
    /// grevlex in declaration order when absent.
    pub order: Option<MonomialOrder>,
    pub groebner: GroebnerConfig,
    pub jacobian_trials: usize,
    /// Largest solution count [`enumerate_solutions`] accepts.
    pub max_solution_degree: u64,
}

impl Default for SgiConfig {
    fn default() -> Self {
        SgiConfig {
            seed: 1,
            seeds: 2,
            order: None,
            groebner: GroebnerConfig::default(),
            jacobian_trials: 3,
            max_solution_degree: 8,
        }
    }
}

/// `φᵢ(θ′) − φᵢ(θ*)` for every invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSystem {
    /// `θ′` variables, named after the parameters with a trailing `'`.
    pub primed: Arc<Ring>,
    pub equations: Vec<MultiPoly>,
    pub labels: Vec<String>,
    /// `θ*` in parameter declaration order.
    pub theta_star: Vec<Rat>,
    pub seed: u64,
    /// The symbolic invariants the system was built from.
    pub invariants: Vec<MultiPoly>,
}

impl TestSystem {
    pub fn params(&self) -> Vec<String> {
        self.primed
            .vars()
            .iter()
            .map(|v| v.trim_end_matches('\'').to_string())
            .collect()
    }

    /// `φ(θ*)`.
    pub fn target_values(&self) -> Vec<Rat> {
        self.invariants
            .iter()
            .map(|p| p.eval_indexed(&self.theta_star))
            .collect()
    }
}

pub fn primed_ring(params: &Arc<Ring>) -> Arc<Ring> {
    Ring::new(params.vars().iter().map(|v| format!("{v}'"))).expect("distinct names")
}

/// Builds the test system at a random `θ*` drawn from the structure's
/// parameter domain. A draw at which some invariant vanishes is treated as
/// non-generic and redrawn.
pub fn build_test_system(
    inv: &InvariantVector,
    spec: &StructureSpec,
    seed: u64,
) -> Result<TestSystem, SgiError> {
    if inv.is_empty() {
        return Err(SgiError::NoInvariants);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_SPECIALIZATION_ATTEMPTS {
        let theta = spec.sample_parameters(&mut rng);
        if inv
            .entries
            .iter()
            .any(|e| e.poly.eval_indexed(&theta).is_zero())
        {
            continue;
        }
        return Ok(test_system_at(inv, theta, seed));
    }
    Err(SgiError::DegenerateSpecialization {
        attempts: MAX_SPECIALIZATION_ATTEMPTS,
    })
}

/// The test system at a given `θ*`.
pub fn test_system_at(inv: &InvariantVector, theta_star: Vec<Rat>, seed: u64) -> TestSystem {
    let primed = primed_ring(&inv.params);
    let equations = inv
        .entries
        .iter()
        .map(|e| {
            let target = e.poly.eval_indexed(&theta_star);
            let lifted = e.poly.rename(&primed).expect("same arity");
            &lifted - &MultiPoly::constant(&primed, target)
        })
        .collect();
    TestSystem {
        primed,
        equations,
        labels: inv.entries.iter().map(|e| e.label.clone()).collect(),
        theta_star,
        seed,
        invariants: inv.polys(),
    }
}

/// Largest rank of the invariant Jacobian `∂φᵢ/∂θⱼ` over `trials` random
/// rational points, computed exactly.
pub fn jacobian_rank_test(
    inv: &InvariantVector,
    spec: &StructureSpec,
    trials: usize,
    seed: u64,
) -> usize {
    let p = spec.n_params();
    let jac: Vec<Vec<MultiPoly>> = inv
        .entries
        .iter()
        .map(|e| (0..p).map(|j| e.poly.diff_index(j)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let theta = spec.sample_parameters(&mut rng);
        let m: Vec<Vec<Rat>> = jac
            .iter()
            .map(|row| row.iter().map(|d| d.eval_indexed(&theta)).collect())
            .collect();
        best = best.max(rank(m));
        if best == p {
            break;
        }
    }
    best
}

/// Rank by Gaussian elimination over ℚ.
pub fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        let (top, below) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut().filter(|row| !row[c].is_zero()) {
            let f = &row[c] * &inv;
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * p;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
