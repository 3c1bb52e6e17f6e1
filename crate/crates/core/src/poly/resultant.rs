//! Resultants by the subresultant pseudo-remainder sequence.
//!
//! Sign convention: `Res(A, B)` is the determinant of the Sylvester matrix,
//! so for monic `A` it equals the product of `B(α)` over the roots `α` of `A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{cyclotomic, IntPoly};
use crate::error::{domain, Result};

fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().unwrap().clone();
    let mut r = a.clone();
    let mut e = a.degree().unwrap_or(0) as i64 - db as i64 + 1;
    while let Some(dr) = r.degree().filter(|&d| d >= db) {
        let t = IntPoly::monomial(r.leading().unwrap().clone(), dr - db);
        r = &r.scale(&lb) - &(&t * b);
        e -= 1;
    }
    if e > 0 {
        r = r.scale(&num_traits::pow(lb, e as usize));
    }
    r
}

fn exact_div(p: &IntPoly, d: &BigInt) -> IntPoly {
    IntPoly::new(
        p.coeffs()
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(d);
                debug_assert!(r.is_zero(), "subresultant division not exact");
                q
            })
            .collect(),
    )
}

/// Resultant of arbitrary nonzero polynomials (zero input gives zero).
pub fn resultant_any(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = BigInt::one();
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if db == 0 {
        return s * num_traits::pow(b.leading().unwrap().clone(), da);
    }

    let (ca, cb) = (a.content(), b.content());
    a = exact_div(&a, &ca);
    b = exact_div(&b, &cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut g = BigInt::one();
    let mut h = BigInt::one();

    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        b = exact_div(&r, &(&g * num_traits::pow(h.clone(), delta)));
        g = a.leading().unwrap().clone();
        // h <- h^(1 - delta) g^delta
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h, delta - 1);
            num / den
        };
        let db = b.degree().unwrap();
        if db == 0 {
            let da = a.degree().unwrap();
            let num = num_traits::pow(b.leading().unwrap().clone(), da);
            let den = num_traits::pow(h, da - 1);
            return s * t * (num / den);
        }
    }
}

/// `Res(f, g)` for monic, nonconstant `f` and `g`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    for (name, p) in [("f", f), ("g", g)] {
        if !p.is_monic() {
            return domain(format!("resultant: {name} = {} is not monic", p.pretty()));
        }
        if p.degree() == Some(0) {
            return domain(format!("resultant: {name} is constant"));
        }
    }
    Ok(resultant_any(f, g))
}

/// `Res(f(εX), Φ_m(X))` for a monic quadratic `f`.
pub fn res_eps(f: &IntPoly, m: u64, eps: i8) -> Result<BigInt> {
    if f.degree() != Some(2) || !f.is_monic() {
        return domain("res_eps: f must be a monic quadratic");
    }
    if eps != 1 && eps != -1 {
        return domain("res_eps: eps must be ±1");
    }
    resultant(&f.scale_var(eps), &cyclotomic(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Bareiss determinant of the Sylvester matrix.
    fn sylvester_det(a: &IntPoly, b: &IntPoly) -> BigInt {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                mat[i][i + j] = a.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                mat[n + i][i + j] = b.coeff(n - j);
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if mat[k][k].is_zero() {
                match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                    Some(r) => {
                        mat.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = v / &prev;
                }
            }
            prev = mat[k][k].clone();
        }
        sign * &mat[size - 1][size - 1]
    }

    /// Norm of `g(θ)` in `Z[X]/(f)` for monic quadratic `f = X^2 + bX + c`:
    /// reduce `g` to `u + vθ`, then `N = u^2 - b·u·v + c·v^2`.
    fn quadratic_norm(f: &IntPoly, g: &IntPoly) -> BigInt {
        let (b, c) = (f.coeff(1), f.coeff(0));
        let r = g.div_rem_monic(f).unwrap().1;
        let (u, v) = (r.coeff(0), r.coeff(1));
        &u * &u - &b * &u * &v + &c * &v * &v
    }

    #[test]
    fn examples() {
        let f = p(&[-1, -1, 1]);
        let r = resultant(&f, &cyclotomic(7)).unwrap();
        assert_eq!(r, BigInt::from(29));
        assert_eq!(
            resultant(&p(&[-2, 1]), &p(&[-2, 1])).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            resultant(&p(&[1, -3, 1]), &cyclotomic(1)).unwrap(),
            BigInt::from(-1)
        );
        assert!(resultant(&p(&[3]), &f).is_err());
        assert!(resultant(&p(&[1, 2]), &f).is_err());
    }

    #[test]
    fn res_eps_examples() {
        let f = p(&[-1, -1, 1]);
        assert_eq!(res_eps(&f, 7, 1).unwrap(), BigInt::from(29));
        assert_eq!(res_eps(&f, 1, 1).unwrap(), BigInt::from(-1));
        let prod = res_eps(&f, 7, 1).unwrap() * res_eps(&f, 7, -1).unwrap();
        assert_eq!(prod.magnitude(), &num_bigint::BigUint::from(29u32 * 29));
    }

    #[test]
    fn matches_sylvester_on_fixed_cases() {
        let cases = [
            (p(&[1, 2, 3]), p(&[4, 5])),
            (p(&[-1, 0, 0, 1]), p(&[1, 1, 1])),
            (p(&[2, 0, 1, 0, 1]), p(&[0, 3, 0, 1])),
            (p(&[5]), p(&[1, 2, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(resultant_any(&a, &b), sylvester_det(&a, &b), "{a} / {b}");
            assert_eq!(resultant_any(&b, &a), sylvester_det(&b, &a), "{b} / {a}");
        }
    }

    #[test]
    fn quotient_ring_norm_agrees() {
        for b in -9i64..=9 {
            for c in -9i64..=9 {
                let f = p(&[c, b, 1]);
                for m in 1..=60 {
                    let phi = cyclotomic(m);
                    assert_eq!(
                        resultant(&f, &phi).unwrap(),
                        quadratic_norm(&f, &phi),
                        "f = {f}, m = {m}"
                    );
                }
            }
        }
    }

    fn monic(coeffs: Vec<i64>) -> IntPoly {
        let mut c = coeffs;
        c.push(1);
        IntPoly::from_i64s(&c)
    }

    /// gcd over Q by the Euclidean algorithm on rational-free monic remainders.
    fn has_common_factor(a: &IntPoly, b: &IntPoly) -> bool {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = pseudo_rem(&x, &y);
            let c = r.content();
            let r = if r.is_zero() { r } else { exact_div(&r, &c) };
            x = y;
            y = r;
        }
        x.degree().unwrap_or(0) > 0
    }

    proptest! {
        #[test]
        fn zero_iff_common_factor(
            a in proptest::collection::vec(-9i64..=9, 0..4),
            b in proptest::collection::vec(-9i64..=9, 0..4),
            shared in proptest::option::of(-3i64..=3),
        ) {
            let (mut fa, mut fb) = (monic(a), monic(b));
            if let Some(r) = shared {
                let lin = p(&[-r, 1]);
                fa = &fa * &lin;
                fb = &fb * &lin;
            }
            let res = resultant_any(&fa, &fb);
            prop_assert_eq!(res.is_zero(), has_common_factor(&fa, &fb));
            prop_assert_eq!(res, sylvester_det(&fa, &fb));
        }
    }
}
