//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tfa_core::groebner::{buchberger, common_elements, ideal_equal, GroebnerConfig};
use tfa_core::model::{bundled, parse_structure, InputSet, InputSignal, StructureSpec};
use tfa_core::polycore::{gcd, int, MonomialOrder, MultiPoly, PolyMatrix, Ring};
use tfa_core::sgi::{
    enumerate_solutions, identifiability, test_system_at, Classification, SgiConfig, SgiError,
    SolutionValue,
};
use tfa_core::simcheck::{cross_validate, SimConfig};
use tfa_core::transfer::{derive_transfer, extract_invariants, InvariantVector, TransferData};
use tfa_core::Rat;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:.2?}, limit {limit:?}");
    Ok(())
}

fn s0() -> StructureSpec {
    parse_structure(bundled::S0).unwrap()
}

fn s1() -> StructureSpec {
    parse_structure(bundled::S1).unwrap()
}

fn invariants(spec: &StructureSpec, inputs: &InputSet) -> (TransferData, InvariantVector) {
    let td = derive_transfer(spec);
    let inv = extract_invariants(&td, inputs);
    (td, inv)
}

fn p(text: &str, spec: &StructureSpec) -> MultiPoly {
    MultiPoly::parse(text, spec.ring()).unwrap()
}

fn ints(values: &[i64]) -> Vec<Rat> {
    values.iter().map(|&v| int(v)).collect()
}

fn s0_invariants_golden() -> Outcome {
    let start = Instant::now();
    let spec = s0();
    let (_, inv) = invariants(&spec, &InputSet::Uncontrolled);
    let expected = [
        "k01*k12*k23",
        "k01*k12 + k01*k23 + k01*k32 + k12*k23 + k21*k23 + k21*k32",
        "k01 + k12 + k21 + k23 + k32",
        "k12*k23*x20",
        "k12*x20",
    ];
    ensure!(inv.len() == 5, "expected 5 invariants, got {}", inv.len());
    for (i, (e, want)) in inv.entries.iter().zip(expected).enumerate() {
        let want = p(want, &spec);
        ensure!(
            e.poly.monic_default() == want.monic_default(),
            "phi{i} = {} differs from {want}",
            e.poly
        );
    }
    within(start, Duration::from_secs(1))?;
    Ok("5 invariants, term-for-term".into())
}

fn s1_w_invariant_golden() -> Outcome {
    let start = Instant::now();
    let (td0, _) = invariants(&s0(), &InputSet::Uncontrolled);
    let spec = s1();
    let (td1, inv) = invariants(&spec, &InputSet::Full);
    let w = &td1.w.as_ref().ok_or("S1 has no W")?[0][0];
    ensure!(
        w.den() == td0.v[0].den(),
        "W denominator {} differs from S0's",
        w.den()
    );
    let omega = inv
        .entries
        .iter()
        .find(|e| e.label == "W(1,1) numerator s^0")
        .ok_or("no W numerator invariant")?;
    ensure!(omega.poly == p("k12*k23", &spec), "omega0 = {}", omega.poly);
    within(start, Duration::from_secs(1))?;
    Ok("omega0 = k12*k23, shared denominator".into())
}

fn verdict(spec: &StructureSpec, inputs: InputSet) -> Result<tfa_core::sgi::Verdict, String> {
    let (_, inv) = invariants(spec, &inputs);
    let config = SgiConfig {
        seed: 1,
        seeds: 2,
        ..SgiConfig::default()
    };
    let v = identifiability(&inv, spec, &inputs, &config).map_err(|e| e.to_string())?;
    ensure!(v.seeds_used == vec![1, 2], "seeds used {:?}", v.seeds_used);
    ensure!(v.warnings.is_empty(), "seed disagreement: {:?}", v.warnings);
    Ok(v)
}

fn classification_triple() -> Outcome {
    let start = Instant::now();
    let a = verdict(&s0(), InputSet::Uncontrolled)?;
    ensure!(a.classification == Classification::Su, "S0: {}", a.label());
    ensure!(a.dimension == 1, "S0 dimension {}", a.dimension);
    ensure!(
        a.globally_identifiable == ["k23"],
        "S0 identifiable {:?}",
        a.globally_identifiable
    );

    let b = verdict(&s1(), InputSet::Full)?;
    ensure!(
        b.classification == Classification::Sli,
        "S1 full: {}",
        b.label()
    );
    ensure!(b.degree.finite() == Some(2), "S1 full degree {}", b.degree);
    ensure!(
        b.globally_identifiable == ["k01", "k12", "k23", "x20"],
        "S1 full identifiable {:?}",
        b.globally_identifiable
    );

    let c = verdict(&s1(), InputSet::Restricted(vec![InputSignal::impulse()]))?;
    ensure!(c.label() == "𝒰-SU", "S1 impulse: {}", c.label());
    ensure!(c.dimension >= 1, "S1 impulse dimension {}", c.dimension);
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "S0 {}, S1 {} (degree 2), S1 impulse {}",
        a.label(),
        b.label(),
        c.label()
    ))
}

const THETA_STAR: [i64; 6] = [1, 1, 3, 2, 1, 1];
const MIRROR: [i64; 6] = [1, 1, 2, 2, 2, 1];

fn mirror_solutions() -> Outcome {
    let spec = s1();
    let (_, inv) = invariants(&spec, &InputSet::Full);
    let ts = test_system_at(&inv, ints(&THETA_STAR), 0);
    let sols = enumerate_solutions(&ts, spec.domains(), 8, &GroebnerConfig::default())
        .map_err(|e| e.to_string())?;
    let exact: Vec<Vec<Rat>> = sols
        .iter()
        .map(|s| {
            s.values
                .iter()
                .map(|v| match v {
                    SolutionValue::Exact(x) => Ok(x.clone()),
                    other => Err(format!("non-rational value {other}")),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    ensure!(exact.len() == 2, "{} solutions", exact.len());
    ensure!(
        exact.contains(&ints(&THETA_STAR)),
        "theta* missing: {exact:?}"
    );
    ensure!(exact.contains(&ints(&MIRROR)), "mirror missing: {exact:?}");
    ensure!(
        sols.iter().all(|s| s.feasible == Some(true)),
        "not all feasible"
    );
    Ok("{(1,1,3,2,1,1), (1,1,2,2,2,1)}, both feasible".into())
}

fn impulse_collapse() -> Outcome {
    let spec = s1();
    let (_, inv) = invariants(&spec, &InputSet::Restricted(vec![InputSignal::impulse()]));
    let polys = inv.polys();
    let beta = p("k12*k23*(x20 + 1)", &spec);
    ensure!(polys.contains(&beta), "beta missing from {polys:?}");
    for gone in ["k12*k23*x20", "k12*k23"] {
        ensure!(!polys.contains(&p(gone, &spec)), "{gone} still present");
    }
    Ok("beta = k12*k23*x20 + k12*k23 replaces phi3, omega0".into())
}

fn ordering_experiment() -> Outcome {
    let start = Instant::now();
    let spec = s1();
    let (_, inv) = invariants(&spec, &InputSet::Full);
    let cfg = GroebnerConfig::default();
    let order1 = MonomialOrder::parse("lex:k21,k32,k01,k12,k23,x20", spec.ring()).unwrap();
    let order2 = MonomialOrder::parse("lex:k23,k32,x20,k21,k12,k01", spec.ring()).unwrap();
    let b1: Vec<MultiPoly> = [
        "k12*x20",
        "k12*k23",
        "-k01*k12 + k12*k32 + k23^2 + 2*k23*k32 + k32^2",
        "k01 + k12 + k21 + k23 + k32",
    ]
    .iter()
    .map(|t| p(t, &spec))
    .collect();
    let b2: Vec<MultiPoly> = [
        "k01^2 + 2*k01*k21 + k21*k12 + k21^2",
        "k12*x20",
        "k01*k12 + k12^2 + k21*k12 + k12*k32",
        "k01 + k12 + k21 + k23 + k32",
    ]
    .iter()
    .map(|t| p(t, &spec))
    .collect();
    let err = |e: tfa_core::groebner::GroebnerError| e.to_string();
    let g1 = buchberger(inv.polys(), order1.clone(), &cfg).map_err(err)?;
    let g2 = buchberger(inv.polys(), order2.clone(), &cfg).map_err(err)?;
    let reference1 = buchberger(b1.clone(), order1, &cfg).map_err(err)?;
    let reference2 = buchberger(b2.clone(), order2, &cfg).map_err(err)?;
    ensure!(
        ideal_equal(&g1, &reference1).map_err(err)?,
        "first order: ideal differs from b1"
    );
    ensure!(
        ideal_equal(&g2, &reference2).map_err(err)?,
        "second order: ideal differs from b2"
    );
    ensure!(ideal_equal(&g1, &g2).map_err(err)?, "the two ideals differ");
    let common = common_elements(&b1, &b2).len();
    ensure!(common == 2, "{common} reference-basis elements in common");
    let conditions = g1.basis().map_err(err)?.len();
    ensure!(conditions == 4, "{conditions} independent conditions");
    ensure!(g2.basis().map_err(err)?.len() == 4, "second basis size");
    within(start, Duration::from_secs(10))?;
    Ok("<b1> = <b2>, 2 common elements, 4 independent conditions".into())
}

fn numeric_coincidence() -> Outcome {
    let start = Instant::now();
    let spec = s1();
    let cfg = SimConfig::default();
    ensure!(
        cfg.t_grid.len() == 201 && cfg.t_grid[200] == 10.0,
        "grid is not 201 points on [0,10]"
    );
    ensure!(cfg.tolerance == 1e-9, "tolerance {}", cfg.tolerance);
    let mut perturbed = ints(&THETA_STAR);
    perturbed[3] += Rat::new(1.into(), 10.into());
    let mut report = Vec::new();
    for signal in [InputSignal::impulse(), InputSignal::step()] {
        let inputs = InputSet::Restricted(vec![signal.clone()]);
        let checks = cross_validate(
            &spec,
            &ints(&THETA_STAR),
            &[ints(&MIRROR), perturbed.clone()],
            &inputs,
            &cfg,
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            checks[0].coincides,
            "{}: mirror deviates by {:e}",
            signal.label(),
            checks[0].max_relative_deviation
        );
        ensure!(
            checks[1].max_relative_deviation > 1e-3,
            "{}: perturbed deviates by only {:e}",
            signal.label(),
            checks[1].max_relative_deviation
        );
        report.push(format!(
            "{} mirror {:.1e} / perturbed {:.1e}",
            signal.label(),
            checks[0].max_relative_deviation,
            checks[1].max_relative_deviation
        ));
    }
    within(start, Duration::from_secs(5))?;
    Ok(report.join(", "))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            failure_persistence: None,
            ..Config::with_cases(cases)
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn polycore_properties() -> Result<(), String> {
    let ring = Ring::new(["x", "y", "z"]).unwrap();
    let poly = || common::poly(ring.clone(), 3, 4);
    let point = proptest::collection::vec((-9i64..=9, 1i64..=4), 3).prop_map(|v| {
        v.into_iter()
            .map(|(n, d)| Rat::new(n.into(), d.into()))
            .collect::<Vec<_>>()
    });

    run_property(
        "ring axioms",
        1000,
        (poly(), poly(), poly()),
        |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            Ok(())
        },
    )?;
    run_property(
        "evaluation",
        1000,
        (poly(), poly(), point.clone()),
        |(a, b, x)| {
            prop_assert_eq!(
                (&a + &b).eval_indexed(&x),
                a.eval_indexed(&x) + b.eval_indexed(&x)
            );
            prop_assert_eq!(
                (&a * &b).eval_indexed(&x),
                a.eval_indexed(&x) * b.eval_indexed(&x)
            );
            Ok(())
        },
    )?;
    run_property(
        "differentiation",
        1000,
        (poly(), poly(), 0usize..3),
        |(a, b, v)| {
            let lhs = (&a * &b).diff_index(v);
            let rhs = &(&a.diff_index(v) * &b) + &(&a * &b.diff_index(v));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!((&a + &b).diff_index(v), &a.diff_index(v) + &b.diff_index(v));
            Ok(())
        },
    )?;
    let small = || common::nonzero_poly(ring.clone(), 2, 3);
    run_property("gcd", 1000, (small(), small(), small()), |(a, b, c)| {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc).unwrap();
        prop_assert!(ac.div_exact(&g).is_some(), "gcd does not divide a*c");
        prop_assert!(bc.div_exact(&g).is_some(), "gcd does not divide b*c");
        prop_assert!(g.div_exact(&c).is_some(), "common factor c not in gcd");
        Ok(())
    })?;
    Ok(())
}

fn buchberger_properties() -> Result<(), String> {
    let rings: Vec<_> = (1..=3)
        .map(|n| Ring::new(["x", "y", "z"].into_iter().take(n)).unwrap())
        .collect();
    let ideal = (0usize..3, 0usize..3).prop_flat_map(move |(r, k)| {
        let ring = rings[r].clone();
        let n = ring.len();
        let kinds = if n <= 2 { 3 } else { 2 };
        (
            proptest::collection::vec(common::nonzero_poly(ring, 3, 3), 1..=3),
            Just(k % kinds),
        )
    });
    let cfg = GroebnerConfig::default();
    run_property("buchberger", 200, ideal, |(gens, kind)| {
        let n = gens[0].ring().len();
        let order = match kind {
            0 => MonomialOrder::grevlex(n),
            1 => MonomialOrder::parse("grlex", gens[0].ring()).unwrap(),
            _ => MonomialOrder::lex(n),
        };
        let ideal = buchberger(gens.clone(), order.clone(), &cfg).unwrap();
        prop_assert!(
            ideal.s_pairs_reduce_to_zero().unwrap(),
            "S-pair criterion fails"
        );
        for g in &gens {
            prop_assert!(ideal.contains(g).unwrap(), "generator not in ideal");
        }
        let basis = ideal.basis().unwrap();
        let again = buchberger(basis.clone(), order, &cfg).unwrap();
        prop_assert_eq!(again.basis().unwrap(), basis, "basis of basis differs");
        Ok(())
    })
}

fn transfer_identity(spec: &StructureSpec) -> Result<(), TestCaseError> {
    let td = derive_transfer(spec);
    let (si_a, adj) = common::resolvent_parts(spec, &td.ring);
    let n = spec.n_states();
    let chi_i = PolyMatrix::identity(&td.ring, n).map(|e| e * &td.char_poly);
    prop_assert_eq!(si_a.mul(&adj), chi_i.clone());
    prop_assert_eq!(adj.mul(&si_a), chi_i);
    for (f, raw) in td.v.iter().zip(&td.raw_v) {
        prop_assert_eq!(f.num() * &td.char_poly, f.den() * raw);
    }
    if let (Some(w), Some(raw_w)) = (&td.w, &td.raw_w) {
        for (row, raw_row) in w.iter().zip(raw_w) {
            for (f, raw) in row.iter().zip(raw_row) {
                prop_assert_eq!(f.num() * &td.char_poly, f.den() * raw);
            }
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    polycore_properties()?;
    buchberger_properties()?;
    run_property(
        "transfer identity",
        50,
        common::compartmental_strategy(4, true),
        |spec| transfer_identity(&spec),
    )?;
    within(start, Duration::from_secs(120))?;
    Ok("4 x 1000 polycore, 200 ideals, 50 structures".into())
}

/// Whether `rank = p` agrees with a zero-dimensional ideal, and the ideal
/// dimension.
fn jacobian_consistent(spec: &StructureSpec, inputs: InputSet) -> Result<(bool, i64), SgiError> {
    let (_, inv) = invariants(spec, &inputs);
    let v = identifiability(&inv, spec, &inputs, &SgiConfig::default())?;
    Ok((
        (v.jacobian_rank == v.n_params) == (v.dimension == 0),
        v.dimension,
    ))
}

fn jacobian_groebner_consistency() -> Outcome {
    let bundled_cases = [
        (s0(), InputSet::Uncontrolled),
        (s1(), InputSet::Full),
        (s1(), InputSet::Restricted(vec![InputSignal::impulse()])),
    ];
    for (spec, inputs) in bundled_cases {
        let (ok, _) = jacobian_consistent(&spec, inputs.clone()).map_err(|e| e.to_string())?;
        ensure!(ok, "{} ({}) inconsistent", spec.name(), inputs.mode_name());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (mut checked, mut skipped, mut identifiable) = (0, 0, 0);
    while checked < 20 {
        let spec = common::random_compartmental(&mut rng, 3, true);
        let inputs = InputSet::default_for(spec.n_inputs());
        match jacobian_consistent(&spec, inputs) {
            Ok((true, dimension)) => {
                checked += 1;
                identifiable += usize::from(dimension == 0);
            }
            Ok((false, _)) => return Err(format!("inconsistent on\n{}", spec.to_model_text())),
            Err(SgiError::NoInvariants) => skipped += 1,
            Err(e) => return Err(format!("{e} on\n{}", spec.to_model_text())),
        }
    }
    Ok(format!(
        "3 bundled + 20 random ({identifiable} finite, {} infinite; {skipped} without output skipped)",
        20 - identifiable
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("S0 invariants golden test", s0_invariants_golden),
        ("S1 W-invariant golden test", s1_w_invariant_golden),
        ("classification triple", classification_triple),
        ("mirror-solution verification", mirror_solutions),
        ("impulse collapse", impulse_collapse),
        ("Groebner ordering experiment", ordering_experiment),
        ("numeric coincidence", numeric_coincidence),
        ("property suites", property_suites),
        (
            "Jacobian/Groebner consistency",
            jacobian_groebner_consistency,
        ),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("{}", i + 1);
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{id}] {name} ({secs:.2} s): {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL [{id}] {name} ({secs:.2} s): {why}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
