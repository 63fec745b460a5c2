//! Exact rational numbers.
//!
//! `BigRational` already keeps its values reduced with a positive
//! denominator, so it is used directly as the coefficient type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest `f64`; saturates to ±inf for values outside the `f64` range.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.numer().sign() == num_bigint::Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_reduced_with_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(int(7).to_string(), "7");
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&rat(1, 4)), 0.25);
    }
}
