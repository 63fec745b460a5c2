//! Invariants: the parameter-dependent coefficients of canonical transfer
//! functions.

use std::sync::Arc;

use crate::model::{InputSet, InputSignal};
use crate::polycore::{gcd, MultiPoly, Ring};

use super::{RatFun, TransferData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariant {
    /// Where the coefficient came from, e.g. `V(1,1) numerator s^0`.
    pub label: String,
    pub poly: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVector {
    pub params: Arc<Ring>,
    pub entries: Vec<Invariant>,
    /// `(dropped label, kept label)` for coefficients equal to an earlier
    /// one up to a constant factor.
    pub duplicates: Vec<(String, String)>,
    /// Labels of parameter-free coefficients, which constrain nothing.
    pub constants: Vec<String>,
}

impl InvariantVector {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.entries.iter().map(|e| e.poly.clone()).collect()
    }

    fn push(&mut self, label: String, poly: MultiPoly) {
        if poly.is_constant() {
            self.constants.push(label);
            return;
        }
        let key = poly.monic_default();
        if let Some(kept) = self.entries.iter().find(|e| e.poly.monic_default() == key) {
            self.duplicates.push((label, kept.label.clone()));
            return;
        }
        self.entries.push(Invariant { label, poly });
    }

    /// Denominator coefficients below the leading one, then numerator
    /// coefficients, each by increasing power of `s`.
    fn push_ratfun(&mut self, source: &str, f: &RatFun) {
        let den = f.denominator_coefficients(&self.params);
        for (i, c) in den.iter().enumerate().take(den.len().saturating_sub(1)) {
            self.push(format!("{source} denominator s^{i}"), c.clone());
        }
        for (i, c) in f
            .numerator_coefficients(&self.params)
            .into_iter()
            .enumerate()
        {
            self.push(format!("{source} numerator s^{i}"), c);
        }
    }
}

impl std::fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            writeln!(f, "phi{i} = {}    [{}]", e.poly, e.label)?;
        }
        Ok(())
    }
}

pub fn extract_invariants(td: &TransferData, inputs: &InputSet) -> InvariantVector {
    let mut out = InvariantVector {
        params: td.params.clone(),
        entries: Vec::new(),
        duplicates: Vec::new(),
        constants: Vec::new(),
    };
    match inputs {
        InputSet::Uncontrolled => {
            for (i, v) in td.v.iter().enumerate() {
                out.push_ratfun(&format!("V({},1)", i + 1), v);
            }
        }
        InputSet::Full => {
            for (i, v) in td.v.iter().enumerate() {
                out.push_ratfun(&format!("V({},1)", i + 1), v);
            }
            for (i, row) in td.w.iter().flatten().enumerate() {
                for (j, w) in row.iter().enumerate() {
                    out.push_ratfun(&format!("W({},{})", i + 1, j + 1), w);
                }
            }
        }
        InputSet::Restricted(signals) => {
            for i in 0..td.v.len() {
                out.push_ratfun(&format!("Y({})", i + 1), &restricted_output(td, i, signals));
            }
        }
    }
    out
}

/// `Vᵢ + Σⱼ Wᵢⱼ ℒ{uⱼ}` over `det(sI − A)·D`, with `D` the lcm of the input
/// denominators, canonicalized once.
fn restricted_output(td: &TransferData, i: usize, signals: &[InputSignal]) -> RatFun {
    let lift = |p: &MultiPoly| p.embed(&td.ring).expect("s embeds");
    let transforms: Vec<(MultiPoly, MultiPoly)> = signals
        .iter()
        .map(|sig| {
            let (n, d) = sig.laplace();
            (lift(&n), lift(&d))
        })
        .collect();
    let mut common = MultiPoly::one(&td.ring);
    for (n, d) in &transforms {
        if !n.is_zero() {
            let g = gcd(&common, d).expect("nonzero");
            common = (&common * d).div_exact(&g).expect("gcd divides");
        }
    }
    let mut num = &td.raw_v[i] * &common;
    if let Some(raw_w) = &td.raw_w {
        for (j, (n, d)) in transforms.iter().enumerate() {
            if !n.is_zero() {
                let scale = common.div_exact(d).expect("lcm is a multiple");
                num = &num + &(&raw_w[i][j] * &(n * &scale));
            }
        }
    }
    RatFun::new(num, &td.char_poly * &common).canonical()
}
