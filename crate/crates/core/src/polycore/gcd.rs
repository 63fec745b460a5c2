//! Multivariate GCD over ℚ.
//!
//! Polynomials are viewed as univariate in their first occurring ring
//! variable with coefficients in the remaining variables. Contents are
//! handled recursively and primitive parts by the subresultant PRS, so
//! all intermediate divisions are exact.

use num_traits::One;

use super::order::MonomialOrder;
use super::poly::MultiPoly;
use super::PolyError;

/// Greatest common divisor of two nonzero polynomials, monic under the
/// display order (grevlex, declaration priority).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let sum = a + b;
    let ring = sum.ring().clone();
    let a = a.embed(&ring)?;
    let b = b.embed(&ring)?;
    Ok(gcd_rec(&a, &b).monic(&MonomialOrder::grevlex(ring.len())))
}

/// Like [`gcd`] but normalized under `order`.
pub fn gcd_with_order(
    a: &MultiPoly,
    b: &MultiPoly,
    order: &MonomialOrder,
) -> Result<MultiPoly, PolyError> {
    Ok(gcd(a, b)?.monic(order))
}

/// GCD up to a unit; zero inputs allowed.
pub(crate) fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.ring());
    }
    let var = first_var(a, b);
    let ca = a.coefficients_in(var);
    let cb = b.coefficients_in(var);
    let cont_a = content_of(&ca);
    let cont_b = content_of(&cb);
    let cont = gcd_rec(&cont_a, &cont_b);
    let pa = divide_all(&ca, &cont_a);
    let pb = divide_all(&cb, &cont_b);
    let g = if pa.len() <= 1 || pb.len() <= 1 {
        MultiPoly::one(a.ring())
    } else {
        let g = subresultant_gcd(pa, pb);
        let gc = content_of(&g);
        MultiPoly::from_coefficients_in(a.ring(), var, &divide_all(&g, &gc))
    };
    &g * &cont
}

fn first_var(a: &MultiPoly, b: &MultiPoly) -> usize {
    let ua = a.vars_used();
    let ub = b.vars_used();
    // Prefer a variable shared by both; otherwise any occurring one.
    ua.iter()
        .copied()
        .find(|v| ub.contains(v))
        .or_else(|| ua.first().copied())
        .or_else(|| ub.first().copied())
        .expect("non-constant polynomial has a variable")
}

/// GCD of a list of coefficients.
pub(crate) fn content_of(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut acc: Option<MultiPoly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.clone(),
            Some(g) => {
                let g = gcd_rec(&g, c);
                if g.is_constant() {
                    return MultiPoly::one(c.ring());
                }
                g
            }
        });
    }
    match acc {
        Some(g) if g.is_constant() => MultiPoly::one(g.ring()),
        Some(g) => g,
        None => MultiPoly::one(coeffs[0].ring()),
    }
}

fn divide_all(coeffs: &[MultiPoly], d: &MultiPoly) -> Vec<MultiPoly> {
    if d.constant_value().is_some_and(|c| c.is_one()) {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

type Uni = Vec<MultiPoly>;

fn degree(p: &Uni) -> usize {
    p.len() - 1
}

fn trim(mut p: Uni) -> Uni {
    while p.len() > 1 && p.last().is_some_and(MultiPoly::is_zero) {
        p.pop();
    }
    p
}

fn is_zero(p: &Uni) -> bool {
    p.iter().all(MultiPoly::is_zero)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = degree(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut steps = a.len() as isize - db as isize + 1;
    while !is_zero(&r) && r.len() > db {
        let dr = degree(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Uni = r.iter().map(|c| c * lb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(bc * &lr);
        }
        next.pop();
        r = trim(next);
        steps -= 1;
    }
    // Complete the power of lc(b) so the result is the true pseudo-remainder.
    while steps > 0 {
        r = r.iter().map(|c| c * lb).collect();
        steps -= 1;
    }
    r
}

/// GCD of two primitive univariate polynomials (degree ≥ 1) by the
/// subresultant PRS. Returned up to a factor in the coefficient ring.
fn subresultant_gcd(a: Uni, b: Uni) -> Uni {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let ring = a[0].ring().clone();
    let mut g = MultiPoly::one(&ring);
    let mut h = MultiPoly::one(&ring);
    loop {
        let d = (degree(&a) - degree(&b)) as u32;
        let r = prem(&a, &b);
        if is_zero(&r) {
            return b;
        }
        if r.len() == 1 {
            return vec![MultiPoly::one(&ring)];
        }
        let divisor = &g * &h.pow(d);
        a = b;
        b = r
            .iter()
            .map(|c| {
                c.div_exact(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        g = a[degree(&a)].clone();
        h = if d == 0 {
            h
        } else {
            g.pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant division is exact")
        };
    }
}
