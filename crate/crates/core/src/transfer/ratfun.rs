//! Rational functions in `s` with parameter-polynomial coefficients.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::polycore::{gcd, MultiPoly, Rat, Ring};

/// `num / den`, both over a ring whose variable 0 is `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: MultiPoly,
    den: MultiPoly,
    canonical: bool,
}

/// Common factor removed during canonicalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cancelled {
    /// The removed factor, monic in `s`; `1` when nothing cancelled.
    pub factor: MultiPoly,
    /// `s`-degree of the removed factor.
    pub degree: u32,
    /// The numerator vanished identically.
    pub all: bool,
}

impl RatFun {
    /// `num / den`; the leading `s`-coefficient of `den` must be a nonzero
    /// constant.
    pub fn new(num: MultiPoly, den: MultiPoly) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        assert!(
            leading_s_coefficient(&den).is_some(),
            "denominator must have a constant leading coefficient in s"
        );
        let ring = Ring::union(num.ring(), den.ring());
        assert_eq!(ring.vars()[0], "s", "variable 0 must be s");
        RatFun {
            num: num.embed(&ring).expect("union ring"),
            den: den.embed(&ring).expect("union ring"),
            canonical: false,
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> RatFun {
        RatFun {
            num: MultiPoly::zero(ring),
            den: MultiPoly::one(ring),
            canonical: true,
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.num.ring()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels the common factor in `s` and scales the denominator monic
    /// in `s`.
    pub fn canonicalize(&self) -> (RatFun, Cancelled) {
        let ring = self.ring().clone();
        if self.num.is_zero() {
            let factor = make_monic_in_s(&self.den);
            return (
                RatFun::zero(&ring),
                Cancelled {
                    degree: factor.degree_in(0),
                    factor,
                    all: true,
                },
            );
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let mut factor = MultiPoly::one(&ring);
        if den.degree_in(0) > 0 && num.degree_in(0) > 0 && may_share_factor(&num, &den) {
            let g = gcd(&num, &den).expect("nonzero");
            if g.degree_in(0) > 0 {
                num = num.div_exact(&g).expect("gcd divides");
                den = den.div_exact(&g).expect("gcd divides");
                factor = make_monic_in_s(&g);
            }
        }
        let lc = leading_s_coefficient(&den).expect("constant leading coefficient");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        (
            RatFun {
                num,
                den,
                canonical: true,
            },
            Cancelled {
                degree: factor.degree_in(0),
                factor,
                all: false,
            },
        )
    }

    pub fn canonical(&self) -> RatFun {
        if self.canonical {
            self.clone()
        } else {
            self.canonicalize().0
        }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.den == other.den {
            return RatFun::new(&self.num + &other.num, self.den.clone()).canonical();
        }
        RatFun::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .canonical()
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(&self.num * &other.num, &self.den * &other.den).canonical()
    }

    /// Coefficients `[s⁰, s¹, …]` of the numerator in `params`.
    pub fn numerator_coefficients(&self, params: &Arc<Ring>) -> Vec<MultiPoly> {
        coefficients(&self.num, params)
    }

    /// Coefficients `[s⁰, s¹, …]` of the denominator in `params`.
    pub fn denominator_coefficients(&self, params: &Arc<Ring>) -> Vec<MultiPoly> {
        coefficients(&self.den, params)
    }

    /// Value at `s` and the parameter point `theta` (ring variables
    /// `1..`); `None` on a pole.
    pub fn eval(&self, s: &Rat, theta: &[Rat]) -> Option<Rat> {
        let mut point = Vec::with_capacity(theta.len() + 1);
        point.push(s.clone());
        point.extend_from_slice(theta);
        let d = self.den.eval_indexed(&point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_indexed(&point) / d)
    }
}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

fn coefficients(p: &MultiPoly, params: &Arc<Ring>) -> Vec<MultiPoly> {
    p.coefficients_in(0)
        .into_iter()
        .map(|c| c.embed(params).expect("coefficient free of s"))
        .collect()
}

fn leading_s_coefficient(p: &MultiPoly) -> Option<Rat> {
    p.coefficients_in(0).last()?.constant_value()
}

fn make_monic_in_s(p: &MultiPoly) -> MultiPoly {
    match leading_s_coefficient(p) {
        Some(c) if !c.is_zero() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

/// Cheap screen: the `s`-gcd at a fixed parameter point. The denominator
/// keeps its `s`-degree under specialization, so a trivial gcd there
/// rules out a symbolic common factor.
fn may_share_factor(num: &MultiPoly, den: &MultiPoly) -> bool {
    let n = num.ring().len();
    let point: Vec<Rat> = (1..n)
        .map(|i| Rat::new(((7 * i + 3) as i64).into(), ((5 * i + 2) as i64).into()))
        .collect();
    let mut a = num.clone();
    let mut b = den.clone();
    for (k, v) in point.iter().enumerate() {
        a = a.substitute(k + 1, v);
        b = b.substitute(k + 1, v);
    }
    if a.is_zero() {
        return true;
    }
    gcd(&a, &b).map_or(true, |g| g.degree_in(0) > 0)
}
