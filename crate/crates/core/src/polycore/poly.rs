//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::rat::Rat;
use super::PolyError;

/// Variable assignment keyed by variable name.
pub type Assignment = BTreeMap<String, Rat>;

/// An ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<I, S>(vars: I) -> Result<Arc<Ring>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    pub fn empty() -> Arc<Ring> {
        Arc::new(Ring { vars: Vec::new() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Variables of `a` followed by those of `b` not already present.
    pub fn union(a: &Arc<Ring>, b: &Arc<Ring>) -> Arc<Ring> {
        if a == b {
            return a.clone();
        }
        let mut vars = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        Arc::new(Ring { vars })
    }
}

/// Multivariate polynomial over ℚ.
///
/// Terms are kept in a map keyed by dense exponent vectors; zero
/// coefficients are never stored. Binary operations between polynomials
/// on different rings promote both operands to the union ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rat::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.len()), c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self, PolyError> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(ring, i))
    }

    pub fn var_index(ring: &Arc<Ring>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.len(), index, 1), Rat::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rat) -> Self {
        debug_assert_eq!(m.nvars(), ring.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Sums duplicate monomials and drops zero coefficients.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut out: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.len());
            accumulate(&mut out, m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rat::zero),
            )
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    /// Indices of variables that occur in some term.
    pub fn vars_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.len()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Re-expresses `self` over `target`, which must contain every
    /// variable that actually occurs.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<MultiPoly, PolyError> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let mut map = vec![usize::MAX; self.ring.len()];
        for i in self.vars_used() {
            let name = &self.ring.vars[i];
            map[i] = target
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
        }
        Ok(MultiPoly {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.remap(&map, target.len()), c.clone()))
                .collect(),
        })
    }

    /// Reinterprets the polynomial in a ring with the same number of
    /// variables, variable `i` becoming `target.vars()[i]`.
    pub fn rename(&self, target: &Arc<Ring>) -> Result<MultiPoly, PolyError> {
        if target.len() != self.ring.len() {
            return Err(PolyError::RingMismatch);
        }
        Ok(MultiPoly {
            ring: target.clone(),
            terms: self.terms.clone(),
        })
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value under `assignment`; every variable that occurs must be
    /// assigned.
    pub fn eval(&self, assignment: &Assignment) -> Result<Rat, PolyError> {
        let mut values = Vec::with_capacity(self.ring.len());
        let used = self.vars_used();
        for (i, name) in self.ring.vars.iter().enumerate() {
            match assignment.get(name) {
                Some(v) => values.push(v.clone()),
                None if used.contains(&i) => return Err(PolyError::MissingVariable(name.clone())),
                None => values.push(Rat::zero()),
            }
        }
        Ok(self.eval_indexed(&values))
    }

    /// Evaluation with one value per ring variable.
    pub fn eval_indexed(&self, values: &[Rat]) -> Rat {
        debug_assert_eq!(values.len(), self.ring.len());
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t *= num_traits::pow(values[i].clone(), m.exponent(i) as usize);
            }
            total += t;
        }
        total
    }

    /// Substitutes a rational for one variable; the ring is unchanged.
    pub fn substitute(&self, var: usize, value: &Rat) -> MultiPoly {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let c = if e == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), e as usize)
            };
            accumulate(&mut out, m.without(var), c);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Substitutes a polynomial for one variable.
    pub fn substitute_poly(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        let value = value
            .embed(&self.ring)
            .expect("substituted polynomial must live in the same ring");
        let coeffs = self.coefficients_in(var);
        // Horner in `value`.
        let mut acc = MultiPoly::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &value) + c;
        }
        acc
    }

    /// Formal partial derivative by variable name.
    pub fn diff(&self, var: &str) -> Result<MultiPoly, PolyError> {
        let i = self
            .ring
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.diff_index(i))
    }

    pub fn diff_index(&self, var: usize) -> MultiPoly {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            accumulate(
                &mut out,
                Monomial::from_exponents(exps),
                c * Rat::from_integer(e.into()),
            );
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`;
    /// entry `i` multiplies `var^i`. Coefficients stay in the same ring
    /// but no longer contain `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut coeffs = vec![MultiPoly::zero(&self.ring); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            coeffs[e].terms.insert(m.without(var), c.clone());
        }
        coeffs
    }

    /// Inverse of [`MultiPoly::coefficients_in`].
    pub fn from_coefficients_in(ring: &Arc<Ring>, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(ring.len(), var, i as u32);
            for (m, x) in &c.terms {
                accumulate(&mut out, m.mul(&shift), x.clone());
            }
        }
        MultiPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rat)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.cmp(b.0, a.0));
        t
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Scales so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: &MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Scales so the leading coefficient in the display order is 1.
    pub fn monic_default(&self) -> MultiPoly {
        self.monic(&MonomialOrder::grevlex(self.ring.len()))
    }

    /// `self / divisor` if the division is exact.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (a, d) = promote(self, divisor);
        let order = MonomialOrder::lex(a.ring.len());
        let (lm_d, lc_d) = d.leading_term(&order)?;
        let (lm_d, lc_inv) = (lm_d.clone(), lc_d.recip());
        let mut rem = a.into_owned();
        let mut quot = BTreeMap::new();
        while let Some((lm, lc)) = rem.leading_term(&order) {
            let m = lm.div(&lm_d)?;
            let c = lc * &lc_inv;
            rem = &rem - &d.mul_term(&m, &c);
            accumulate(&mut quot, m, c);
        }
        Some(MultiPoly {
            ring: rem.ring,
            terms: quot,
        })
    }

    /// Printed with a given order instead of the display default.
    pub fn to_string_with(&self, order: &MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if m.is_one() {
                out.push_str(&a.to_string());
                continue;
            }
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            let factors: Vec<String> = m
                .support()
                .map(|v| {
                    let e = m.exponent(v);
                    if e == 1 {
                        self.ring.vars[v].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[v], e)
                    }
                })
                .collect();
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rat>, m: Monomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Both operands over a common ring.
fn promote<'a>(
    a: &'a MultiPoly,
    b: &'a MultiPoly,
) -> (
    std::borrow::Cow<'a, MultiPoly>,
    std::borrow::Cow<'a, MultiPoly>,
) {
    use std::borrow::Cow;
    if a.ring == b.ring {
        return (Cow::Borrowed(a), Cow::Borrowed(b));
    }
    let ring = Ring::union(&a.ring, &b.ring);
    let ea = a.embed(&ring).expect("union ring contains all variables");
    let eb = b.embed(&ring).expect("union ring contains all variables");
    (Cow::Owned(ea), Cow::Owned(eb))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&MonomialOrder::grevlex(self.ring.len())))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = promote(self, rhs);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        MultiPoly {
            ring: a.ring.clone(),
            terms,
        }
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = promote(self, rhs);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        MultiPoly {
            ring: a.ring.clone(),
            terms,
        }
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = promote(self, rhs);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        MultiPoly {
            ring: a.ring.clone(),
            terms,
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
