//! Buchberger's algorithm with Gebauer–Möller pair management.

use std::cmp::Ordering;

use crate::polycore::{Monomial, MonomialOrder};

use super::sorted::{normal_form, normal_form_refs, sub_scaled, SortedPoly};
use super::{GroebnerConfig, GroebnerError};

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<'a> {
    order: &'a MonomialOrder,
    polys: Vec<SortedPoly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let d = lcm.degree();
        let si = self.sugar[i] + d - self.polys[i].leading_monomial().degree();
        let sj = self.sugar[j] + d - self.polys[j].leading_monomial().degree();
        si.max(sj)
    }

    /// Gebauer–Möller update for a new basis element `h` (index).
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].leading_monomial().clone();

        let mut candidates: Vec<Pair> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lcm = lm_h.lcm(self.polys[g].leading_monomial());
                let sugar = self.pair_sugar(g, h, &lcm);
                Pair {
                    i: g,
                    j: h,
                    lcm,
                    sugar,
                }
            })
            .collect();

        // Keep a pair unless another new pair's lcm properly divides it
        // (coprime pairs are kept here and dropped by the product criterion).
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = lm_h.is_coprime(self.polys[p.i].leading_monomial());
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|p| !lm_h.is_coprime(self.polys[p.i].leading_monomial()))
            .collect();

        // Chain criterion on old pairs.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !lm_h.divides(&p.lcm) {
                return true;
            }
            let li = lm_h.lcm(polys[p.i].leading_monomial());
            let lj = lm_h.lcm(polys[p.j].leading_monomial());
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..h {
            if self.active[g] && lm_h.divides(self.polys[g].leading_monomial()) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn push(&mut self, mut p: SortedPoly, sugar: u32) {
        p.make_monic();
        self.polys.push(p);
        self.sugar.push(sugar);
        self.active.push(false);
        self.update(self.polys.len() - 1);
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_refs(&self) -> Vec<&SortedPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }
}

fn spoly(f: &SortedPoly, g: &SortedPoly, lcm: &Monomial, order: &MonomialOrder) -> SortedPoly {
    let mf = lcm.div(f.leading_monomial()).expect("lcm");
    let mg = lcm.div(g.leading_monomial()).expect("lcm");
    // Both inputs are monic.
    let fm: Vec<_> = f
        .terms
        .iter()
        .map(|(m, c)| (m.mul(&mf), c.clone()))
        .collect();
    let one = num_traits::One::one();
    SortedPoly {
        terms: sub_scaled(&fm, &one, &mg, &g.terms, order),
    }
}

/// Reduced, monic basis sorted by increasing leading monomial.
pub(crate) fn reduced_basis(
    input: Vec<SortedPoly>,
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<Vec<SortedPoly>, GroebnerError> {
    let budget = config.step_budget;
    let mut steps = 0u64;
    let mut st = State {
        order,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    let exhausted = |st: &State| GroebnerError::BudgetExceeded {
        budget,
        basis_len: st.active.iter().filter(|&&a| a).count(),
        pairs_left: st.pairs.len(),
    };

    // Inputs are reduced against what has been accepted so far, which keeps
    // duplicates and multiples out of the pair queue.
    let mut input: Vec<SortedPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
    input.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| order.cmp(a.leading_monomial(), b.leading_monomial()))
    });
    for p in input {
        let sugar = p.degree();
        let h = normal_form_refs(p, &st.active_refs(), order, &mut steps, budget)
            .ok_or_else(|| exhausted(&st))?;
        if !h.is_zero() {
            st.push(h, sugar);
        }
    }

    while let Some(pair) = st.select_pair() {
        let s = spoly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm, order);
        let h = normal_form_refs(s, &st.active_refs(), order, &mut steps, budget)
            .ok_or_else(|| exhausted(&st))?;
        if !h.is_zero() {
            if h.leading_monomial().is_one() {
                let mut one = h;
                one.make_monic();
                return Ok(vec![SortedPoly {
                    terms: vec![one.terms[0].clone()],
                }]);
            }
            st.push(h, pair.sugar);
        }
    }

    let mut basis: Vec<SortedPoly> = st
        .polys
        .into_iter()
        .zip(st.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    if basis.is_empty() {
        // Only zero generators: the zero ideal.
        return Ok(basis);
    }

    // Inter-reduce tails; leading monomials are already pairwise
    // non-divisible, so only lower terms change.
    for k in 0..basis.len() {
        let p = basis[k].clone();
        let others: Vec<&SortedPoly> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, q)| q)
            .collect();
        let lead = SortedPoly {
            terms: vec![p.terms[0].clone()],
        };
        let tail = SortedPoly {
            terms: p.terms[1..].to_vec(),
        };
        let reduced_tail = normal_form_refs(tail, &others, order, &mut steps, budget).ok_or(
            GroebnerError::BudgetExceeded {
                budget,
                basis_len: basis.len(),
                pairs_left: 0,
            },
        )?;
        let mut terms = lead.terms;
        terms.extend(reduced_tail.terms);
        basis[k] = SortedPoly { terms };
        basis[k].make_monic();
    }
    basis.sort_by(|a, b| order.cmp(a.leading_monomial(), b.leading_monomial()));
    debug_assert!(basis
        .windows(2)
        .all(|w| order.cmp(w[0].leading_monomial(), w[1].leading_monomial()) == Ordering::Less));
    Ok(basis)
}

/// True when every S-polynomial of `basis` reduces to zero.
pub(crate) fn satisfies_s_pair_criterion(basis: &[SortedPoly], order: &MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].leading_monomial().lcm(basis[j].leading_monomial());
            let mut a = basis[i].clone();
            let mut b = basis[j].clone();
            a.make_monic();
            b.make_monic();
            let s = spoly(&a, &b, &lcm, order);
            let mut steps = 0;
            if !normal_form(s, basis, order, &mut steps, u64::MAX)
                .expect("unbounded")
                .is_zero()
            {
                return false;
            }
        }
    }
    true
}
