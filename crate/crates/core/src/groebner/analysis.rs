//! Krull dimension and quotient-ring degree from leading monomials.

use serde::{Serialize, Serializer};

use crate::polycore::{Monomial, MultiPoly};

use super::{GroebnerError, Ideal};

/// Vector-space dimension of the quotient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Finite(u64),
    Infinite,
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::Infinite => None,
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(d) => s.serialize_u64(*d),
            Degree::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdealAnalysis {
    pub reduced_basis: Vec<MultiPoly>,
    /// Krull dimension; −1 for the unit ideal.
    pub dimension: i64,
    pub degree: Degree,
}

pub fn dimension_and_degree(ideal: &Ideal) -> Result<IdealAnalysis, GroebnerError> {
    let basis = ideal.sorted_basis()?;
    let reduced_basis = ideal.basis()?;
    let n = ideal.ring().len();
    let lms: Vec<&Monomial> = basis.iter().map(|p| p.leading_monomial()).collect();

    if lms.iter().any(|m| m.is_one()) {
        return Ok(IdealAnalysis {
            reduced_basis,
            dimension: -1,
            degree: Degree::Finite(0),
        });
    }

    let dimension = max_independent_set(&lms, n) as i64;
    let degree = if dimension == 0 {
        Degree::Finite(count_standard_monomials(&lms, n))
    } else {
        Degree::Infinite
    };
    Ok(IdealAnalysis {
        reduced_basis,
        dimension,
        degree,
    })
}

/// Size of the largest variable subset containing the support of no
/// leading monomial.
fn max_independent_set(lms: &[&Monomial], n: usize) -> usize {
    let supports: Vec<Vec<bool>> = lms
        .iter()
        .map(|m| (0..n).map(|i| m.exponent(i) > 0).collect())
        .collect();
    let mut best = 0;
    let mut chosen = vec![false; n];
    search(&supports, n, 0, 0, &mut chosen, &mut best);
    best
}

fn search(
    supports: &[Vec<bool>],
    n: usize,
    var: usize,
    size: usize,
    chosen: &mut Vec<bool>,
    best: &mut usize,
) {
    if size + (n - var) <= *best {
        return;
    }
    if var == n {
        *best = size;
        return;
    }
    chosen[var] = true;
    let independent = supports.iter().all(|s| (0..n).any(|i| s[i] && !chosen[i]));
    if independent {
        search(supports, n, var + 1, size + 1, chosen, best);
    }
    chosen[var] = false;
    search(supports, n, var + 1, size, chosen, best);
}

/// Monomials divisible by no leading monomial; the ideal must be
/// zero-dimensional so every variable has a pure-power leading monomial.
fn count_standard_monomials(lms: &[&Monomial], n: usize) -> u64 {
    let bounds: Vec<u32> = (0..n)
        .map(|i| {
            lms.iter()
                .filter(|m| m.support().all(|v| v == i))
                .map(|m| m.exponent(i))
                .min()
                .expect("zero-dimensional ideal has a pure power in every variable")
        })
        .collect();
    let mut exps = vec![0u32; n];
    let mut count = 0;
    walk(lms, &bounds, 0, &mut exps, &mut count);
    count
}

fn walk(lms: &[&Monomial], bounds: &[u32], var: usize, exps: &mut Vec<u32>, count: &mut u64) {
    let m = Monomial::from_exponents(exps.clone());
    if lms.iter().any(|l| l.divides(&m)) {
        // Raising any exponent keeps it divisible.
        return;
    }
    if var == bounds.len() {
        *count += 1;
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        walk(lms, bounds, var + 1, exps, count);
    }
    exps[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, GroebnerConfig};
    use crate::polycore::{MonomialOrder, Ring};

    fn analyze(vars: &[&str], gens: &[&str]) -> IdealAnalysis {
        let r = Ring::new(vars.iter().copied()).unwrap();
        let gens = gens
            .iter()
            .map(|s| MultiPoly::parse(s, &r).unwrap())
            .collect();
        let ideal = buchberger(
            gens,
            MonomialOrder::grevlex(r.len()),
            &GroebnerConfig::default(),
        )
        .unwrap();
        dimension_and_degree(&ideal).unwrap()
    }

    #[test]
    fn point() {
        let a = analyze(&["x", "y"], &["x - 1", "y - 2"]);
        assert_eq!((a.dimension, a.degree), (0, Degree::Finite(1)));
    }

    #[test]
    fn union_of_axes() {
        let a = analyze(&["x", "y"], &["x*y"]);
        assert_eq!((a.dimension, a.degree), (1, Degree::Infinite));
    }

    #[test]
    fn degree_counts_multiplicity() {
        let a = analyze(&["x", "y"], &["x^2 - 1", "y^3 - x"]);
        assert_eq!((a.dimension, a.degree), (0, Degree::Finite(6)));
        let a = analyze(&["x", "y"], &["x^2", "y"]);
        assert_eq!(a.degree, Degree::Finite(2));
    }

    #[test]
    fn unit_and_free_variables() {
        let a = analyze(&["x", "y"], &["x", "x - 1"]);
        assert_eq!(a.dimension, -1);
        let a = analyze(&["x", "y", "z"], &["x - y"]);
        assert_eq!(a.dimension, 2);
    }
}
