//! Explicit solutions of zero-dimensional test systems.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::groebner::{buchberger, dimension_and_degree, GroebnerConfig};
use crate::model::ParamDomain;
use crate::polycore::{MonomialOrder, MultiPoly, Rat};

use super::univariate::{RealRoot, UPoly};
use super::{SgiError, TestSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionValue {
    Exact(Rat),
    /// An irrational value inside `[lo, hi]`.
    Interval {
        lo: Rat,
        hi: Rat,
    },
    /// Not determined: the system is not in shape position below an
    /// irrational coordinate.
    Unresolved,
}

impl SolutionValue {
    pub fn approx(&self) -> Option<f64> {
        match self {
            SolutionValue::Exact(x) => Some(crate::polycore::to_f64(x)),
            SolutionValue::Interval { lo, hi } => Some(crate::polycore::to_f64(
                &((lo + hi) / Rat::from_integer(2.into())),
            )),
            SolutionValue::Unresolved => None,
        }
    }
}

impl std::fmt::Display for SolutionValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolutionValue::Exact(x) => write!(f, "{x}"),
            SolutionValue::Interval { .. } => {
                write!(f, "~{:.12}", self.approx().unwrap_or(f64::NAN))
            }
            SolutionValue::Unresolved => f.write_str("?"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// `θ′` in parameter order.
    pub values: Vec<SolutionValue>,
    /// Inside the declared parameter domain; `None` when an interval
    /// straddles the boundary.
    pub feasible: Option<bool>,
    /// Substituting into the invariants reproduces `φ(θ*)` (exactly, or
    /// within interval bounds).
    pub verified: bool,
    /// The solution equals `θ*`.
    pub is_true_point: bool,
}

/// Real solutions of a zero-dimensional test system, by lex-basis back
/// substitution.
pub fn enumerate_solutions(
    ts: &TestSystem,
    domains: &[ParamDomain],
    bound: u64,
    config: &GroebnerConfig,
) -> Result<Vec<Solution>, SgiError> {
    let n = ts.primed.len();
    let order = MonomialOrder::lex(n);
    let ideal = buchberger(ts.equations.clone(), order, config)?;
    let analysis = dimension_and_degree(&ideal)?;
    if analysis.dimension != 0 {
        return Err(SgiError::NotZeroDimensional {
            dimension: analysis.dimension,
        });
    }
    let degree = analysis.degree.finite().expect("zero-dimensional");
    if degree > bound {
        return Err(SgiError::DegreeBoundExceeded { degree, bound });
    }
    let basis = analysis.reduced_basis;

    // Partial solutions for variables k..n, built from the last variable.
    let mut partial: Vec<Vec<SolutionValue>> = vec![Vec::new()];
    for k in (0..n).rev() {
        let mut next = Vec::new();
        for tail in partial {
            if tail.iter().any(|v| !matches!(v, SolutionValue::Exact(_))) {
                let mut vals = vec![shape_value(&basis, k, n, &tail)];
                vals.extend(tail);
                next.push(vals);
                continue;
            }
            let known: Vec<Rat> = tail
                .iter()
                .map(|v| match v {
                    SolutionValue::Exact(x) => x.clone(),
                    _ => unreachable!(),
                })
                .collect();
            let uni = univariate_at(&basis, k, &known);
            for root in uni.real_roots() {
                let v = match root {
                    RealRoot::Exact(x) => SolutionValue::Exact(x),
                    RealRoot::Isolated { lo, hi } => {
                        let width = Rat::new(BigInt::one(), BigInt::from(10).pow(30));
                        let (lo, hi) = uni.refine(&lo, &hi, &width);
                        SolutionValue::Interval { lo, hi }
                    }
                };
                let mut vals = vec![v];
                vals.extend(tail.iter().cloned());
                next.push(vals);
            }
        }
        partial = next;
    }

    let targets = ts.target_values();
    Ok(partial
        .into_iter()
        .map(|values| {
            let feasible = feasibility(&values, domains);
            let verified = verify(&ts.invariants, &values, &targets);
            let is_true_point = values
                .iter()
                .zip(&ts.theta_star)
                .all(|(v, t)| *v == SolutionValue::Exact(t.clone()));
            Solution {
                values,
                feasible,
                verified,
                is_true_point,
            }
        })
        .collect())
}

/// GCD of the basis elements in `x_k … x_{n-1}` after substituting the
/// known values of `x_{k+1} …`.
fn univariate_at(basis: &[MultiPoly], k: usize, known: &[Rat]) -> UPoly {
    let mut acc: Option<UPoly> = None;
    for g in basis {
        let vars = g.vars_used();
        if vars.iter().any(|&v| v < k) || !vars.contains(&k) {
            continue;
        }
        let mut h = g.clone();
        for (offset, val) in known.iter().enumerate() {
            h = h.substitute(k + 1 + offset, val);
        }
        debug_assert!(h.vars_used().iter().all(|&v| v == k) || h.is_constant());
        let u = UPoly::from_multi(&h, k);
        if u.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => u,
            Some(a) => a.gcd(&u),
        });
    }
    acc.unwrap_or_else(|| UPoly::new(vec![]))
}

/// In shape position `x_k − g(x_{n-1})` gives `x_k` from the interval of
/// the last coordinate.
fn shape_value(basis: &[MultiPoly], k: usize, n: usize, tail: &[SolutionValue]) -> SolutionValue {
    let last = n - 1;
    let SolutionValue::Interval { lo, hi } = &tail[tail.len() - 1] else {
        return SolutionValue::Unresolved;
    };
    if tail[..tail.len() - 1]
        .iter()
        .any(|v| matches!(v, SolutionValue::Unresolved))
    {
        return SolutionValue::Unresolved;
    }
    for g in basis {
        let vars = g.vars_used();
        if !vars.iter().all(|&v| v == k || v == last) || g.degree_in(k) != 1 {
            continue;
        }
        let coeffs = g.coefficients_in(k);
        let Some(lead) = coeffs[1].constant_value() else {
            continue;
        };
        let rest = coeffs[0].scale(&-lead.recip());
        let (a, b) = interval_eval(&rest, &|v| {
            if v == last {
                (lo.clone(), hi.clone())
            } else {
                (Rat::zero(), Rat::zero())
            }
        });
        return SolutionValue::Interval { lo: a, hi: b };
    }
    SolutionValue::Unresolved
}

/// Bounds of `p` over a box given per variable.
fn interval_eval(p: &MultiPoly, range: &dyn Fn(usize) -> (Rat, Rat)) -> (Rat, Rat) {
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    for (m, c) in p.terms() {
        let mut t = (c.clone(), c.clone());
        for v in m.support() {
            let (a, b) = range(v);
            t = imul(&t, &ipow(&(a, b), m.exponent(v)));
        }
        lo += &t.0;
        hi += &t.1;
    }
    (lo, hi)
}

fn imul(x: &(Rat, Rat), y: &(Rat, Rat)) -> (Rat, Rat) {
    let c = [&x.0 * &y.0, &x.0 * &y.1, &x.1 * &y.0, &x.1 * &y.1];
    let lo = c.iter().min().expect("four").clone();
    let hi = c.iter().max().expect("four").clone();
    (lo, hi)
}

fn ipow(x: &(Rat, Rat), e: u32) -> (Rat, Rat) {
    let mut acc = (Rat::one(), Rat::one());
    for _ in 0..e {
        acc = imul(&acc, x);
    }
    acc
}

fn feasibility(values: &[SolutionValue], domains: &[ParamDomain]) -> Option<bool> {
    let mut unknown = false;
    for (v, d) in values.iter().zip(domains) {
        match v {
            SolutionValue::Exact(x) => {
                if !d.contains(x) {
                    return Some(false);
                }
            }
            SolutionValue::Interval { lo, hi } => {
                if d.contains(lo) && d.contains(hi) {
                    continue;
                }
                if !d.contains(lo) && !d.contains(hi) {
                    return Some(false);
                }
                unknown = true;
            }
            SolutionValue::Unresolved => unknown = true,
        }
    }
    (!unknown).then_some(true)
}

fn verify(invariants: &[MultiPoly], values: &[SolutionValue], targets: &[Rat]) -> bool {
    if values
        .iter()
        .any(|v| matches!(v, SolutionValue::Unresolved))
    {
        return false;
    }
    if values.iter().all(|v| matches!(v, SolutionValue::Exact(_))) {
        let point: Vec<Rat> = values
            .iter()
            .map(|v| match v {
                SolutionValue::Exact(x) => x.clone(),
                _ => unreachable!(),
            })
            .collect();
        return invariants
            .iter()
            .zip(targets)
            .all(|(p, t)| &p.eval_indexed(&point) == t);
    }
    let range = |i: usize| match &values[i] {
        SolutionValue::Exact(x) => (x.clone(), x.clone()),
        SolutionValue::Interval { lo, hi } => (lo.clone(), hi.clone()),
        SolutionValue::Unresolved => unreachable!(),
    };
    invariants.iter().zip(targets).all(|(p, t)| {
        let (lo, hi) = interval_eval(p, &range);
        &lo <= t && t <= &hi
    })
}
