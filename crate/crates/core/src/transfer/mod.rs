//! Transfer matrices `V(s; θ) = C (sI − A)⁻¹ x₀` and
//! `W(s; θ) = C (sI − A)⁻¹ B`, their canonical forms, and the invariants
//! read off the canonical coefficients.

mod faddeev;
mod invariants;
mod ratfun;

use std::sync::Arc;

use crate::model::{StructureSpec, LAPLACE_VAR};
use crate::polycore::{gcd, MultiPoly, PolyMatrix, Ring};

pub use faddeev::{faddeev_leverrier, CharAdjugate};
pub use invariants::{extract_invariants, Invariant, InvariantVector};
pub use ratfun::{Cancelled, RatFun};

/// Record of a factor cancelled from one transfer-matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cancellation {
    /// `V(i,1)` or `W(i,j)`, 1-based.
    pub entry: String,
    pub degree: u32,
    pub factor: MultiPoly,
    /// The whole entry vanished.
    pub all: bool,
}

#[derive(Debug, Clone)]
pub struct TransferData {
    /// `s` followed by the structure parameters.
    pub ring: Arc<Ring>,
    pub params: Arc<Ring>,
    /// `det(sI − A)`.
    pub char_poly: MultiPoly,
    /// Canonical `V`, one entry per output.
    pub v: Vec<RatFun>,
    /// Canonical `W` (`k × m`), absent without inputs.
    pub w: Option<Vec<Vec<RatFun>>>,
    /// Entries over `char_poly` before cancellation.
    pub raw_v: Vec<MultiPoly>,
    pub raw_w: Option<Vec<Vec<MultiPoly>>>,
    pub cancellations: Vec<Cancellation>,
    /// False when every entry lost a common factor of positive degree.
    pub generically_minimal: bool,
}

impl TransferData {
    pub fn n_outputs(&self) -> usize {
        self.v.len()
    }

    /// Ring `s, params…` for a parameter ring.
    pub fn ring_for(params: &Arc<Ring>) -> Arc<Ring> {
        Ring::new(std::iter::once(LAPLACE_VAR).chain(params.vars().iter().map(String::as_str)))
            .expect("parameter names exclude s")
    }
}

pub fn derive_transfer(spec: &StructureSpec) -> TransferData {
    let params = spec.ring().clone();
    let ring = TransferData::ring_for(&params);
    let n = spec.n_states();
    let lift = |p: &MultiPoly| p.embed(&ring).expect("parameter ring embeds");

    let fl = faddeev_leverrier(spec.a());
    let char_coeffs: Vec<MultiPoly> = fl.char_coeffs.iter().map(lift).collect();
    let char_poly = MultiPoly::from_coefficients_in(&ring, 0, &char_coeffs);
    let mut adj = PolyMatrix::zeros(&ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let c: Vec<MultiPoly> = fl.adjugate.iter().map(|m| lift(m.get(i, j))).collect();
            adj.set(i, j, MultiPoly::from_coefficients_in(&ring, 0, &c));
        }
    }
    let c_adj = spec.c().map(lift).mul(&adj);

    let x0: Vec<MultiPoly> = spec.x0().iter().map(lift).collect();
    let raw_v = c_adj.apply(&x0);
    let raw_w = (spec.n_inputs() > 0).then(|| {
        let cab = c_adj.mul(&spec.b().map(lift));
        (0..cab.rows())
            .map(|i| cab.row(i).to_vec())
            .collect::<Vec<_>>()
    });

    let mut cancellations = Vec::new();
    let mut factors = Vec::new();
    let mut canon = |label: String, raw: &MultiPoly| {
        let (f, info) = RatFun::new(raw.clone(), char_poly.clone()).canonicalize();
        if info.degree > 0 || info.all {
            cancellations.push(Cancellation {
                entry: label,
                degree: info.degree,
                factor: info.factor.clone(),
                all: info.all,
            });
        }
        factors.push(info.factor);
        f
    };
    let v: Vec<RatFun> = raw_v
        .iter()
        .enumerate()
        .map(|(i, r)| canon(format!("V({},1)", i + 1), r))
        .collect();
    let w = raw_w.as_ref().map(|rows| {
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, r)| canon(format!("W({},{})", i + 1, j + 1), r))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });

    let common = factors
        .iter()
        .skip(1)
        .try_fold(factors[0].clone(), |acc, f| {
            let g = gcd(&acc, f).expect("factors are nonzero");
            (g.degree_in(0) > 0).then_some(g)
        });
    let generically_minimal = common.is_none_or(|g| g.degree_in(0) == 0);

    TransferData {
        ring,
        params,
        char_poly,
        v,
        w,
        raw_v,
        raw_w,
        cancellations,
        generically_minimal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{bundled, parse_structure};

    fn p(t: &str, r: &Arc<Ring>) -> MultiPoly {
        MultiPoly::parse(t, r).unwrap()
    }

    #[test]
    fn s0_output_transfer() {
        let spec = parse_structure(bundled::S0).unwrap();
        let td = derive_transfer(&spec);
        let r = &td.params;
        let v = &td.v[0];
        let num = v.numerator_coefficients(r);
        assert_eq!(num, vec![p("k12*k23*x20", r), p("k12*x20", r)]);
        let den = v.denominator_coefficients(r);
        assert_eq!(den[2], p("k01 + k12 + k21 + k23 + k32", r));
        assert_eq!(den[3], p("1", r));
        assert!(td.cancellations.is_empty());
        assert!(td.generically_minimal);
        assert!(td.w.is_none());
    }

    #[test]
    fn s1_input_transfer() {
        let spec = parse_structure(bundled::S1).unwrap();
        let td = derive_transfer(&spec);
        let w = &td.w.as_ref().unwrap()[0][0];
        assert_eq!(
            w.numerator_coefficients(&td.params),
            vec![p("k12*k23", &td.params)]
        );
        assert_eq!(w.den(), &td.char_poly);
    }

    #[test]
    fn zero_output_row_is_fully_cancelled() {
        let text = "name t\nparams a\nstates 1\noutputs 1\nA 1 1 = -a\nx0 1 = 1\n";
        let td = derive_transfer(&parse_structure(text).unwrap());
        assert!(td.v[0].is_zero());
        assert_eq!(td.v[0].den().to_string(), "1");
        assert_eq!(td.cancellations.len(), 1);
        assert!(td.cancellations[0].all);
        assert!(!td.generically_minimal);
    }

    #[test]
    fn unobservable_mode_is_not_minimal() {
        // Compartment 2 is neither observed nor feeds compartment 1.
        let text = "name t\nparams a b\nstates 2\noutputs 1\nA 1 1 = -a\nA 2 2 = -b\nA 2 1 = a\nC 1 1 = 1\nx0 1 = 1\n";
        let td = derive_transfer(&parse_structure(text).unwrap());
        assert_eq!(td.v[0].den().to_string(), "s + a");
        assert_eq!(td.cancellations[0].degree, 1);
        assert!(!td.generically_minimal);
    }
}
