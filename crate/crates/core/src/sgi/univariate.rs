//! Dense univariate polynomials over ℚ: real-root isolation and exact
//! rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polycore::{MultiPoly, Rat};

/// Coefficients by increasing power, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(pub Vec<Rat>);

/// A real root: exact, or the only root in an open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rat),
    Isolated { lo: Rat, hi: Rat },
}

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    /// From a polynomial in which only variable `var` occurs.
    pub fn from_multi(p: &MultiPoly, var: usize) -> Self {
        let coeffs = p
            .coefficients_in(var)
            .into_iter()
            .map(|c| c.constant_value().expect("univariate"))
            .collect();
        UPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("nonzero")
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        let mut r = self.0.clone();
        let dl = d.lead().clone();
        let dd = d.degree();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r.last().expect("nonempty") / &dl;
            for (i, c) in d.0.iter().enumerate() {
                r[i + shift] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let mut r = self.0.clone();
        let dd = d.degree();
        if r.len() <= dd {
            return UPoly::new(vec![]);
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        let dl = d.lead().clone();
        for shift in (0..q.len()).rev() {
            let c = &r[shift + dd] / &dl;
            for (i, x) in d.0.iter().enumerate() {
                r[i + shift] -= &c * x;
            }
            q[shift] = c;
        }
        UPoly::new(q)
    }

    pub fn monic(&self) -> UPoly {
        let l = self.lead().recip();
        UPoly(self.0.iter().map(|c| c * &l).collect())
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Product of the distinct irreducible factors.
    pub fn square_free(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.monic()
        } else {
            self.div_exact(&g).monic()
        }
    }

    fn sturm(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(UPoly(r.0.iter().map(|c| -c).collect()));
        }
        seq
    }

    /// Real roots of the square-free part, increasing.
    pub fn real_roots(&self) -> Vec<RealRoot> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let p = self.square_free();
        let seq = p.sturm();
        let changes = |x: &Rat| {
            let signs: Vec<bool> = seq
                .iter()
                .map(|q| q.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        // Cauchy bound.
        let lead = p.lead().abs();
        let bound = Rat::one()
            + p.0[..p.0.len() - 1]
                .iter()
                .map(|c| c.abs() / &lead)
                .fold(Rat::zero(), |a, b| if b > a { b } else { a });
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count = changes(&lo) - changes(&hi);
            if count == 0 {
                continue;
            }
            if p.eval(&hi).is_zero() {
                // (lo, hi] contains hi; split it off.
                out.push(RealRoot::Exact(hi.clone()));
                if count > 1 {
                    let mid = (&lo + &hi) / Rat::from_integer(2.into());
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                    out.pop();
                }
                continue;
            }
            if count == 1 {
                out.push(RealRoot::Isolated { lo, hi });
                continue;
            }
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        for r in &mut out {
            if let RealRoot::Isolated { lo, hi } = r {
                if let Some(x) = p.rational_root_in(lo, hi) {
                    *r = RealRoot::Exact(x);
                }
            }
        }
        out.sort_by_key(|r| r.midpoint());
        out.dedup();
        out
    }

    /// The rational root in `(lo, hi)` if there is one, where `self` is
    /// square-free with exactly one root in that interval.
    fn rational_root_in(&self, lo: &Rat, hi: &Rat) -> Option<Rat> {
        // A rational root p/q has q | lead of the primitive integer form;
        // distinct such fractions are at least 1/lead² apart.
        let den_lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let lead = (self.lead() * Rat::from_integer(den_lcm))
            .to_integer()
            .abs();
        let width = Rat::new(BigInt::one(), &lead * &lead * 2);
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        // `hi` is never a root of an isolating interval; `lo` may be one.
        let sign_hi = self.eval(&hi).is_positive();
        while &hi - &lo > width {
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            let v = self.eval(&mid);
            if v.is_zero() {
                return Some(mid);
            }
            if v.is_positive() == sign_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let cand = simplest_between(&lo, &hi);
        self.eval(&cand).is_zero().then_some(cand)
    }

    /// Narrows an isolating interval below `width` by bisection.
    pub fn refine(&self, lo: &Rat, hi: &Rat, width: &Rat) -> (Rat, Rat) {
        let p = self.square_free();
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        // `hi` is never a root of an isolating interval; `lo` may be one.
        let sign_hi = p.eval(&hi).is_positive();
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            let v = p.eval(&mid);
            if v.is_zero() {
                return (mid.clone(), mid);
            }
            if v.is_positive() == sign_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}

impl RealRoot {
    pub fn midpoint(&self) -> Rat {
        match self {
            RealRoot::Exact(x) => x.clone(),
            RealRoot::Isolated { lo, hi } => (lo + hi) / Rat::from_integer(2.into()),
        }
    }
}

/// Fraction with the smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl < hi.floor() || hi.is_integer() {
        return fl + Rat::one();
    }
    // lo and hi share the integer part; recurse on reciprocals.
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}
