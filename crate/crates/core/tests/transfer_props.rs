mod common;

use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tfa_core::model::StructureSpec;
use tfa_core::polycore::int;
use tfa_core::transfer::derive_transfer;
use tfa_core::Rat;

/// Solves `m x = rhs` over ℚ; `m` is assumed nonsingular.
fn solve(mut m: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Vec<Rat> {
    let n = m.len();
    for c in 0..n {
        let piv = (c..n).find(|&i| !m[i][c].is_zero()).expect("nonsingular");
        m.swap(c, piv);
        rhs.swap(c, piv);
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for k in c..n {
                    let sub = &f * &m[c][k];
                    m[i][k] -= sub;
                }
                let sub = &f * &rhs[c];
                rhs[i] -= sub;
            }
        }
    }
    (0..n).map(|i| &rhs[i] / &m[i][i]).collect()
}

/// `C (sI − A)⁻¹ v` at a numeric point.
fn resolvent_output(spec: &StructureSpec, theta: &[Rat], s: &Rat, v: &[Rat]) -> Vec<Rat> {
    let n = spec.n_states();
    let m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = spec.a().get(i, j).eval_indexed(theta);
                    if i == j {
                        s - a
                    } else {
                        -a
                    }
                })
                .collect()
        })
        .collect();
    let x = solve(m, v.to_vec());
    (0..spec.n_outputs())
        .map(|i| {
            (0..n).fold(Rat::zero(), |acc, j| {
                acc + spec.c().get(i, j).eval_indexed(theta) * &x[j]
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn specialization_commutes_with_derivation(
        spec in common::compartmental_strategy(3, true),
        seed in any::<u64>(),
    ) {
        let td = derive_transfer(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = spec.sample_parameters(&mut rng);
        let x0: Vec<Rat> = spec.x0().iter().map(|p| p.eval_indexed(&theta)).collect();
        for s in [int(1), int(3), Rat::new(7.into(), 2.into())] {
            let direct = resolvent_output(&spec, &theta, &s, &x0);
            for (f, want) in td.v.iter().zip(&direct) {
                prop_assert_eq!(f.eval(&s, &theta).unwrap(), want.clone());
            }
            if let Some(w) = &td.w {
                for j in 0..spec.n_inputs() {
                    let col: Vec<Rat> = (0..spec.n_states())
                        .map(|i| spec.b().get(i, j).eval_indexed(&theta))
                        .collect();
                    let direct = resolvent_output(&spec, &theta, &s, &col);
                    for (row, want) in w.iter().zip(&direct) {
                        prop_assert_eq!(row[j].eval(&s, &theta).unwrap(), want.clone());
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_forms_are_monic_and_reduced(spec in common::compartmental_strategy(3, false)) {
        let td = derive_transfer(&spec);
        for f in &td.v {
            prop_assert!(f.is_canonical());
            let lead = f.den().coefficients_in(0).last().cloned().unwrap();
            prop_assert_eq!(lead.constant_value(), Some(int(1)));
            prop_assert!(f.den().degree_in(0) <= spec.n_states() as u32);
        }
    }
}
