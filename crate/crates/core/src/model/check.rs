//! Class and start-condition checks on a structure.

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::polycore::{MultiPoly, Rat};

use super::{InputKind, InputSet, ParamDomain, StructureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    /// The entry has the wrong sign everywhere on the parameter domain.
    Definite,
    /// The syntactic test failed but no sign error is certain.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub severity: Severity,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.severity {
            Severity::Definite => f.write_str(&self.message),
            Severity::Unverified => write!(f, "could not verify: {}", self.message),
        }
    }
}

enum Sign {
    NonNegative,
    Negative,
    Unknown,
}

/// Coefficient-wise sign of `p` over the declared parameter domains.
fn sign_of(p: &MultiPoly, domains: &[ParamDomain]) -> Sign {
    if p.is_zero() {
        return Sign::NonNegative;
    }
    let signed_vars = p
        .vars_used()
        .into_iter()
        .any(|v| domains[v] == ParamDomain::Real);
    if signed_vars {
        return Sign::Unknown;
    }
    if p.terms().all(|(_, c)| !c.is_negative()) {
        Sign::NonNegative
    } else if p.terms().all(|(_, c)| c.is_negative()) {
        // With strictly positive parameters every term is negative; with
        // non-negative ones the sum could still vanish, which is allowed.
        let all_positive_domain = p
            .vars_used()
            .into_iter()
            .all(|v| domains[v] == ParamDomain::Positive);
        if all_positive_domain || p.is_constant() {
            Sign::Negative
        } else {
            Sign::Unknown
        }
    } else {
        Sign::Unknown
    }
}

fn require_nonnegative(
    p: &MultiPoly,
    domains: &[ParamDomain],
    negative: impl FnOnce() -> String,
    unknown: impl FnOnce() -> String,
    out: &mut Vec<Violation>,
) {
    match sign_of(p, domains) {
        Sign::NonNegative => {}
        Sign::Negative => out.push(Violation {
            severity: Severity::Definite,
            message: negative(),
        }),
        Sign::Unknown => out.push(Violation {
            severity: Severity::Unverified,
            message: unknown(),
        }),
    }
}

fn entry_checks(s: &StructureSpec, off_diagonal_a: bool, out: &mut Vec<Violation>) {
    let d = s.domains();
    let n = s.n_states();
    for i in 0..n {
        for j in 0..n {
            if off_diagonal_a && i == j {
                continue;
            }
            require_nonnegative(
                s.a().get(i, j),
                d,
                || format!("negative entry A({}, {})", i + 1, j + 1),
                || format!("sign of A({}, {})", i + 1, j + 1),
                out,
            );
        }
    }
    for (name, m) in [("B", s.b()), ("C", s.c())] {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                require_nonnegative(
                    m.get(i, j),
                    d,
                    || format!("negative entry {name}({}, {})", i + 1, j + 1),
                    || format!("sign of {name}({}, {})", i + 1, j + 1),
                    out,
                );
            }
        }
    }
    for (i, x) in s.x0().iter().enumerate() {
        require_nonnegative(
            x,
            d,
            || format!("negative initial state x0({})", i + 1),
            || format!("sign of x0({})", i + 1),
            out,
        );
    }
}

/// Syntactic compartmental test: off-diagonal `A`, all of `B`, `C`, `x₀`
/// coefficient-wise non-negative, and every column of `A` losing at least
/// as much as it passes on.
pub fn check_compartmental(s: &StructureSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    entry_checks(s, true, &mut out);
    let n = s.n_states();
    for col in 0..n {
        let mut excess = -s.a().get(col, col);
        for row in (0..n).filter(|&r| r != col) {
            excess = &excess - s.a().get(row, col);
        }
        require_nonnegative(
            &excess,
            s.domains(),
            || format!("diagonal excess in column {}", col + 1),
            || format!("mass balance of column {}", col + 1),
            &mut out,
        );
    }
    out
}

/// Positive-system test: off-diagonal `A` (Metzler), `B`, `C` and `x₀`
/// coefficient-wise non-negative.
pub fn check_positive(s: &StructureSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    entry_checks(s, true, &mut out);
    out
}

/// True when the start is away from equilibrium at `trials` random
/// parameter draws: `A x₀ ≠ 0`, or an available input moves the state.
pub fn check_nondegenerate_start(
    s: &StructureSpec,
    inputs: &InputSet,
    trials: usize,
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = s.n_states();
    (0..trials.max(1)).all(|_| {
        let theta = s.sample_parameters(&mut rng);
        let ev = |p: &MultiPoly| p.eval_indexed(&theta);
        let x0: Vec<Rat> = s.x0().iter().map(ev).collect();
        let mut dx: Vec<Rat> = (0..n)
            .map(|i| (0..n).fold(Rat::zero(), |acc, j| acc + ev(s.a().get(i, j)) * &x0[j]))
            .collect();
        let column_moves = |j: usize| (0..n).any(|i| !ev(s.b().get(i, j)).is_zero());
        match inputs {
            InputSet::Uncontrolled => {}
            InputSet::Full => {
                if (0..s.n_inputs()).any(column_moves) {
                    return true;
                }
            }
            InputSet::Restricted(signals) => {
                for (j, sig) in signals.iter().enumerate() {
                    if sig.kind == InputKind::Impulse {
                        if column_moves(j) {
                            return true;
                        }
                    } else if let Some(u0) = sig.initial_value() {
                        for (i, d) in dx.iter_mut().enumerate() {
                            *d += ev(s.b().get(i, j)) * &u0;
                        }
                    }
                }
            }
        }
        dx.iter().any(|d| !d.is_zero())
    })
}
