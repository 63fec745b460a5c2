//! Characteristic polynomial and adjugate of `sI − A` without division by
//! polynomials.

use num_traits::One;

use crate::polycore::{int, MultiPoly, PolyMatrix};

/// `det(sI − A) = Σ coeffs[i] sⁱ` and `adj(sI − A) = Σ adjugate[i] sⁱ`,
/// all coefficients in the ring of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharAdjugate {
    /// `c₀ … cₙ` with `cₙ = 1`.
    pub char_coeffs: Vec<MultiPoly>,
    /// `M₀ … Mₙ₋₁`.
    pub adjugate: Vec<PolyMatrix>,
}

impl CharAdjugate {
    pub fn dimension(&self) -> usize {
        self.adjugate.len()
    }
}

pub fn faddeev_leverrier(a: &PolyMatrix) -> CharAdjugate {
    assert_eq!(a.rows(), a.cols(), "matrix must be square");
    let n = a.rows();
    let ring = a.get(0, 0).ring().clone();
    let identity = PolyMatrix::identity(&ring, n);

    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k.
    let mut coeffs = vec![MultiPoly::zero(&ring); n + 1];
    coeffs[n] = MultiPoly::one(&ring);
    let mut adj = vec![PolyMatrix::zeros(&ring, n, n); n];
    let mut m = PolyMatrix::zeros(&ring, n, n);
    for k in 1..=n {
        let c_prev = coeffs[n - k + 1].clone();
        m = a.mul(&m).add(&identity.map(|e| e * &c_prev));
        let am = a.mul(&m);
        coeffs[n - k] = am.trace().scale(&-(int(k as i64).recip()));
        adj[n - k] = m.clone();
    }
    debug_assert!(coeffs[n].constant_value().is_some_and(|c| c.is_one()));
    CharAdjugate {
        char_coeffs: coeffs,
        adjugate: adj,
    }
}
