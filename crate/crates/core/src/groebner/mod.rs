//! Gröbner bases over ℚ.
//!
//! Classical Buchberger with the Gebauer–Möller update (product and chain
//! criteria) and sugar-degree pair selection. Bases are returned fully
//! reduced and monic, so the basis of an ideal under a fixed order is
//! unique and can be compared term by term.

mod analysis;
mod buchberger;
mod sorted;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::polycore::{MonomialOrder, MultiPoly, Ring};

pub use analysis::{dimension_and_degree, Degree, IdealAnalysis};
use sorted::SortedPoly;

/// Default cap on reduction steps for one basis computation.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(
        "step budget of {budget} reductions exhausted ({basis_len} basis elements, \
         {pairs_left} critical pairs pending)"
    )]
    BudgetExceeded {
        budget: u64,
        basis_len: usize,
        pairs_left: usize,
    },
    #[error("ideal has no computed Gröbner basis")]
    BasisNotComputed,
    #[error("generators or ideals live in different rings")]
    RingMismatch,
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("monomial order does not match the ring")]
    OrderMismatch,
}

/// Limits for a basis computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroebnerConfig {
    pub step_budget: u64,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

/// A polynomial ideal with a fixed monomial order.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    order: MonomialOrder,
    generators: Vec<MultiPoly>,
    basis: Option<Vec<SortedPoly>>,
}

impl Ideal {
    pub fn new(generators: Vec<MultiPoly>, order: MonomialOrder) -> Result<Ideal, GroebnerError> {
        let ring = generators
            .first()
            .ok_or(GroebnerError::NoGenerators)?
            .ring()
            .clone();
        if generators.iter().any(|g| g.ring() != &ring) {
            return Err(GroebnerError::RingMismatch);
        }
        if order.nvars() != ring.len() {
            return Err(GroebnerError::OrderMismatch);
        }
        Ok(Ideal {
            ring,
            order,
            generators,
            basis: None,
        })
    }

    /// Computes (or recomputes) the reduced basis.
    pub fn compute_basis(&mut self, config: &GroebnerConfig) -> Result<(), GroebnerError> {
        let input: Vec<SortedPoly> = self
            .generators
            .iter()
            .map(|g| SortedPoly::from_poly(g, &self.order))
            .collect();
        self.basis = Some(buchberger::reduced_basis(input, &self.order, config)?);
        Ok(())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn has_basis(&self) -> bool {
        self.basis.is_some()
    }

    /// The reduced basis, sorted by increasing leading monomial.
    pub fn basis(&self) -> Result<Vec<MultiPoly>, GroebnerError> {
        let b = self.basis.as_ref().ok_or(GroebnerError::BasisNotComputed)?;
        Ok(b.iter().map(|p| p.to_poly(&self.ring)).collect())
    }

    /// Remainder of `p` modulo the reduced basis; zero iff `p` is in the
    /// ideal.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly, GroebnerError> {
        let b = self.basis.as_ref().ok_or(GroebnerError::BasisNotComputed)?;
        let p = p
            .embed(&self.ring)
            .map_err(|_| GroebnerError::RingMismatch)?;
        let sp = SortedPoly::from_poly(&p, &self.order);
        let mut steps = 0;
        let r = sorted::normal_form(sp, b, &self.order, &mut steps, u64::MAX)
            .expect("unbounded reduction cannot run out of budget");
        Ok(r.to_poly(&self.ring))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> Result<bool, GroebnerError> {
        let b = self.basis.as_ref().ok_or(GroebnerError::BasisNotComputed)?;
        Ok(b.iter().any(|p| p.leading_monomial().is_one()))
    }

    /// Buchberger's criterion on the stored basis: every S-polynomial of
    /// a basis pair reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> Result<bool, GroebnerError> {
        Ok(buchberger::satisfies_s_pair_criterion(
            self.sorted_basis()?,
            &self.order,
        ))
    }

    pub(crate) fn sorted_basis(&self) -> Result<&[SortedPoly], GroebnerError> {
        self.basis.as_deref().ok_or(GroebnerError::BasisNotComputed)
    }
}

/// Computes the reduced Gröbner basis of `gens` under `order`.
pub fn buchberger(
    gens: Vec<MultiPoly>,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<Ideal, GroebnerError> {
    let mut ideal = Ideal::new(gens, order)?;
    ideal.compute_basis(config)?;
    Ok(ideal)
}

/// Membership-based equality: every basis element of each ideal reduces
/// to zero modulo the other. The two orders may differ.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool, GroebnerError> {
    if a.ring != b.ring {
        return Err(GroebnerError::RingMismatch);
    }
    for g in a.basis()? {
        if !b.contains(&g)? {
            return Ok(false);
        }
    }
    for g in b.basis()? {
        if !a.contains(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Elements of `a` that also occur in `b`, compared after scaling both
/// monic in the display order.
pub fn common_elements(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let keys: Vec<MultiPoly> = b.iter().map(MultiPoly::monic_default).collect();
    a.iter()
        .filter(|p| keys.contains(&p.monic_default()))
        .cloned()
        .collect()
}

/// S-polynomial of two polynomials under `order`.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: &MonomialOrder) -> MultiPoly {
    let (mf, cf) = f.leading_term(order).expect("nonzero");
    let (mg, cg) = g.leading_term(order).expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).expect("lcm"), &cf.recip());
    let b = g.mul_term(&l.div(mg).expect("lcm"), &cg.recip());
    &a - &b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::OrderKind;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars.iter().copied()).unwrap()
    }

    fn polys(r: &Arc<Ring>, src: &[&str]) -> Vec<MultiPoly> {
        src.iter()
            .map(|s| MultiPoly::parse(s, r).unwrap())
            .collect()
    }

    #[test]
    fn linear_example_lex() {
        let r = ring(&["x", "y"]);
        let ideal = buchberger(
            polys(&r, &["x - 1", "y - x"]),
            MonomialOrder::lex(2),
            &GroebnerConfig::default(),
        )
        .unwrap();
        let b: Vec<String> = ideal
            .basis()
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(b, vec!["y - 1", "x - 1"]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let g = MultiPoly::parse("x^2*y - y + 3", &r).unwrap();
        let ideal = buchberger(
            vec![g.clone()],
            MonomialOrder::grevlex(2),
            &Default::default(),
        )
        .unwrap();
        assert!(ideal.normal_form(&g).unwrap().is_zero());

        let ideal = buchberger(
            polys(&r, &["x - 1"]),
            MonomialOrder::grevlex(2),
            &Default::default(),
        )
        .unwrap();
        assert_eq!(
            ideal.normal_form(&MultiPoly::one(&r)).unwrap(),
            MultiPoly::one(&r)
        );

        let bare = Ideal::new(polys(&r, &["x"]), MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(
            bare.normal_form(&MultiPoly::one(&r)),
            Err(GroebnerError::BasisNotComputed)
        );
    }

    #[test]
    fn equality_examples() {
        let r = ring(&["x", "y"]);
        let cfg = GroebnerConfig::default();
        let a = buchberger(
            polys(&r, &["x - 1", "y - 1"]),
            MonomialOrder::grevlex(2),
            &cfg,
        )
        .unwrap();
        let b = buchberger(polys(&r, &["y - 1", "x - 1"]), MonomialOrder::lex(2), &cfg).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());

        let a = buchberger(polys(&r, &["x"]), MonomialOrder::grevlex(2), &cfg).unwrap();
        let b = buchberger(polys(&r, &["x^2"]), MonomialOrder::grevlex(2), &cfg).unwrap();
        assert!(!ideal_equal(&a, &b).unwrap());

        let other = ring(&["x", "z"]);
        let c = buchberger(polys(&other, &["x"]), MonomialOrder::grevlex(2), &cfg).unwrap();
        assert_eq!(ideal_equal(&a, &c), Err(GroebnerError::RingMismatch));
    }

    #[test]
    fn unit_ideal_detected() {
        let r = ring(&["x", "y"]);
        let ideal = buchberger(
            polys(&r, &["x*y - 1", "x", "y + 2"]),
            MonomialOrder::grevlex(2),
            &Default::default(),
        )
        .unwrap();
        assert!(ideal.is_unit().unwrap());
        assert_eq!(ideal.basis().unwrap(), vec![MultiPoly::one(&r)]);
    }

    #[test]
    fn cyclic3_reduces_to_known_lex_basis() {
        let r = ring(&["x", "y", "z"]);
        let ideal = buchberger(
            polys(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]),
            MonomialOrder::lex(3),
            &Default::default(),
        )
        .unwrap();
        let b: Vec<String> = ideal
            .basis()
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(b, vec!["z^3 - 1", "y^2 + y*z + z^2", "x + y + z"]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = ring(&["x", "y", "z"]);
        let err = buchberger(
            polys(&r, &["x^3 - y*z + 1", "y^3 - x*z + 2", "z^3 - x*y + 3"]),
            MonomialOrder::new(OrderKind::Lex, vec![0, 1, 2]).unwrap(),
            &GroebnerConfig { step_budget: 5 },
        )
        .unwrap_err();
        assert!(matches!(
            err,
            GroebnerError::BudgetExceeded { budget: 5, .. }
        ));
    }

    #[test]
    fn common_elements_up_to_scale() {
        let r = ring(&["x", "y"]);
        let a = polys(&r, &["x + y", "2*x*y", "y"]);
        let b = polys(&r, &["-x - y", "x*y", "x"]);
        assert_eq!(common_elements(&a, &b), polys(&r, &["x + y", "2*x*y"]));
    }

    #[test]
    fn rejects_mixed_rings() {
        let a = MultiPoly::parse("x", &ring(&["x"])).unwrap();
        let b = MultiPoly::parse("y", &ring(&["y"])).unwrap();
        assert_eq!(
            Ideal::new(vec![a, b], MonomialOrder::grevlex(1)).unwrap_err(),
            GroebnerError::RingMismatch
        );
    }
}
