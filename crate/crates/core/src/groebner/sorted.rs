//! Term lists kept sorted by a monomial order, used inside reductions.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::polycore::{Monomial, MonomialOrder, MultiPoly, Rat, Ring};

/// Polynomial as a list of terms in strictly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SortedPoly {
    pub terms: Vec<(Monomial, Rat)>,
}

impl SortedPoly {
    pub fn from_poly(p: &MultiPoly, order: &MonomialOrder) -> Self {
        SortedPoly {
            terms: p
                .sorted_terms(order)
                .into_iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_poly(&self, ring: &Arc<Ring>) -> MultiPoly {
        MultiPoly::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn leading_coefficient(&self) -> &Rat {
        &self.terms[0].1
    }

    pub fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.recip();
                for (_, c) in &mut self.terms {
                    *c *= &inv;
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }
}

/// `p - c * m * q`, all lists sorted under `order`.
pub(crate) fn sub_scaled(
    p: &[(Monomial, Rat)],
    c: &Rat,
    m: &Monomial,
    q: &[(Monomial, Rat)],
    order: &MonomialOrder,
) -> Vec<(Monomial, Rat)> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let mut i = 0;
    let mut j = 0;
    let mut qj: Option<(Monomial, Rat)> = q.first().map(|(qm, qc)| (qm.mul(m), -(qc * c)));
    while i < p.len() || qj.is_some() {
        let take = match (&p.get(i), &qj) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(qj.take().expect("present"));
                j += 1;
                qj = q.get(j).map(|(qm, qc)| (qm.mul(m), -(qc * c)));
            }
            Ordering::Equal => {
                let (mono, b) = qj.take().expect("present");
                let s = &p[i].1 + b;
                if !s.is_zero() {
                    out.push((mono, s));
                }
                i += 1;
                j += 1;
                qj = q.get(j).map(|(qm, qc)| (qm.mul(m), -(qc * c)));
            }
        }
    }
    out
}

/// Full reduction of `p` by `basis`. Returns `None` once `steps` would
/// exceed `budget`.
pub(crate) fn normal_form(
    p: SortedPoly,
    basis: &[SortedPoly],
    order: &MonomialOrder,
    steps: &mut u64,
    budget: u64,
) -> Option<SortedPoly> {
    let refs: Vec<&SortedPoly> = basis.iter().collect();
    normal_form_refs(p, &refs, order, steps, budget)
}

pub(crate) fn normal_form_refs(
    p: SortedPoly,
    basis: &[&SortedPoly],
    order: &MonomialOrder,
    steps: &mut u64,
    budget: u64,
) -> Option<SortedPoly> {
    let mut rem: Vec<(Monomial, Rat)> = Vec::new();
    let mut cur = p.terms;
    let mut start = 0;
    while start < cur.len() {
        let (lm, lc) = &cur[start];
        let divisor = basis.iter().find(|g| g.leading_monomial().divides(lm));
        match divisor {
            Some(g) => {
                *steps += 1;
                if *steps > budget {
                    return None;
                }
                let m = lm.div(g.leading_monomial()).expect("divides");
                let c = lc / g.leading_coefficient();
                cur = sub_scaled(&cur[start..], &c, &m, &g.terms, order);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Some(SortedPoly { terms: rem })
}
