//! Random structure and polynomial generators shared by the integration
//! tests.

#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;
use tfa_core::model::{StructureBuilder, StructureClass, StructureSpec};
use tfa_core::polycore::{rat, Monomial, MultiPoly, PolyMatrix, Ring};
use tfa_core::transfer::faddeev_leverrier;

/// Random polynomial in `ring` with up to `max_terms` terms of total degree
/// at most `max_degree` and small rational coefficients.
pub fn poly(ring: Arc<Ring>, max_degree: u32, max_terms: usize) -> BoxedStrategy<MultiPoly> {
    let n = ring.len();
    let term = (
        proptest::collection::vec(0..=max_degree, n),
        -6i64..=6,
        1i64..=3,
    );
    proptest::collection::vec(term, 0..=max_terms)
        .prop_map(move |terms| {
            let terms = terms.into_iter().filter_map(|(mut e, num, den)| {
                while e.iter().sum::<u32>() > max_degree {
                    let i = e.iter().position(|&x| x > 0).expect("positive degree");
                    e[i] -= 1;
                }
                (num != 0).then(|| (Monomial::from_exponents(e), rat(num, den)))
            });
            MultiPoly::from_terms(&ring, terms)
        })
        .boxed()
}

pub fn nonzero_poly(
    ring: Arc<Ring>,
    max_degree: u32,
    max_terms: usize,
) -> BoxedStrategy<MultiPoly> {
    poly(ring, max_degree, max_terms)
        .prop_filter("nonzero", |p| !p.is_zero())
        .boxed()
}

/// Random compartmental structure with 1 to `max_states` compartments:
/// random flows `kij` (into `i` from `j`), random leaks `k0j`, output from
/// compartment 1, a parametric or unit initial state and optionally one
/// input channel.
pub fn random_compartmental<R: Rng>(
    rng: &mut R,
    max_states: usize,
    allow_inputs: bool,
) -> StructureSpec {
    let n = rng.random_range(1..=max_states);
    let mut flows = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if i != j && rng.random_bool(0.5) {
                flows.push((i, j));
            }
        }
    }
    let mut leaks: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    if flows.is_empty() && leaks.is_empty() {
        leaks.push(0);
    }
    let x0_state = rng.random_range(0..n);
    let x0_param = rng.random_bool(0.5);
    let inputs = usize::from(allow_inputs && rng.random_bool(0.5));
    let input_state = rng.random_range(0..n);

    let mut params: Vec<String> = flows
        .iter()
        .map(|(i, j)| format!("k{}{}", i + 1, j + 1))
        .chain(leaks.iter().map(|j| format!("k0{}", j + 1)))
        .collect();
    if x0_param {
        params.push(format!("x{}0", x0_state + 1));
    }
    let mut b = StructureBuilder::new("R", &params, n, inputs, 1)
        .expect("valid names")
        .class(StructureClass::Compartmental);
    let var = |b: &StructureBuilder, name: &str| MultiPoly::var(b.ring(), name).expect("declared");
    let mut diag: Vec<MultiPoly> = (0..n).map(|_| MultiPoly::zero(b.ring())).collect();
    for &(i, j) in &flows {
        let k = var(&b, &format!("k{}{}", i + 1, j + 1));
        b.set_a(i, j, k.clone()).unwrap();
        diag[j] = &diag[j] - &k;
    }
    for &j in &leaks {
        let k = var(&b, &format!("k0{}", j + 1));
        diag[j] = &diag[j] - &k;
    }
    for (j, d) in diag.into_iter().enumerate() {
        b.set_a(j, j, d).unwrap();
    }
    let one = MultiPoly::one(b.ring());
    b.set_c(0, 0, one.clone()).unwrap();
    let x0 = if x0_param {
        var(&b, &format!("x{}0", x0_state + 1))
    } else {
        one.clone()
    };
    b.set_x0(x0_state, x0).unwrap();
    if inputs == 1 {
        b.set_b(input_state, 0, one).unwrap();
    }
    b.build().expect("generator respects mass balance")
}

/// Strategy wrapper: a seed drives the structure generator.
pub fn compartmental_strategy(
    max_states: usize,
    allow_inputs: bool,
) -> BoxedStrategy<StructureSpec> {
    any::<u64>()
        .prop_map(move |seed| {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            random_compartmental(&mut rng, max_states, allow_inputs)
        })
        .boxed()
}

/// `sI − A` and `adj(sI − A)` as polynomial matrices over `s, params…`.
pub fn resolvent_parts(spec: &StructureSpec, ring: &Arc<Ring>) -> (PolyMatrix, PolyMatrix) {
    let n = spec.n_states();
    let lift = |p: &MultiPoly| p.embed(ring).unwrap();
    let s = MultiPoly::var_index(ring, 0);
    let fl = faddeev_leverrier(spec.a());
    let mut si_a = PolyMatrix::zeros(ring, n, n);
    let mut adj = PolyMatrix::zeros(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let a = lift(spec.a().get(i, j));
            si_a.set(i, j, if i == j { &s - &a } else { -a });
            let c: Vec<MultiPoly> = fl.adjugate.iter().map(|m| lift(m.get(i, j))).collect();
            adj.set(i, j, MultiPoly::from_coefficients_in(ring, 0, &c));
        }
    }
    (si_a, adj)
}
