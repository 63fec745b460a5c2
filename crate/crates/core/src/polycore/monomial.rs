//! Dense exponent vectors over a fixed ring.

use std::fmt;

/// Power product `x_0^e_0 * ... * x_{n-1}^e_{n-1}`.
///
/// Exponents are stored densely, one slot per ring variable; a zero slot
/// means the variable is absent. Two monomials are only comparable when
/// they belong to the same ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, exponent: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exponent;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True if `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if exact.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Same monomial with the exponent of `index` cleared.
    pub fn without(&self, index: usize) -> Monomial {
        let mut e = self.0.clone();
        e[index] = 0;
        Monomial(e)
    }

    /// Re-indexes exponents into a ring of `nvars` variables; `map[i]` is
    /// the new slot of old variable `i`.
    pub(crate) fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut e = vec![0; nvars];
        for (i, &x) in self.0.iter().enumerate() {
            if x > 0 {
                e[map[i]] = x;
            }
        }
        Monomial(e)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
