//! Aurifeuillian pairs `Φ_n(X, Y) = F^2 - k (XY)^q G^2` and their use in
//! writing `Φ_ℓ(γ, δ)` as a sum of two squares.
//!
//! The pair is not looked up. With `x = k z^2`, the polynomial
//! `P(z) = F(k z^2) - k^{(q+1)/2} z^q G(k z^2)` is `k^d` times the minimal
//! polynomial of `ζ_{2n} / √k`, whose conjugates are `χ_D(a) ζ_{2n}^a / √k`.
//! `P` is computed modulo primes `ℓ ≡ 1 (mod N)`, with `√k` realised as a
//! Gauss sum, and recovered by CRT. [`verify_pair`] then checks the identity
//! exactly, so the construction certifies itself.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, invariant, Result};
use crate::lehmer::{self, phi_value, strip_support, LehmerParams};
use crate::nt::{self, euler_phi, is_prime_u64, is_squarefree_i64, kronecker, mul_mod, pow_mod};
use crate::poly::{homogenized_cyclotomic, HomPoly};

/// `q_n`: product of `p^(v-1)` over odd primes `p` with `p^v || n`.
pub fn q_of(n: u64) -> u64 {
    assert!(n >= 1, "q_of(0)");
    nt::factor_u64(n)
        .into_iter()
        .filter(|&(p, _)| p > 2)
        .map(|(p, e)| p.pow(e - 1))
        .product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuriCondition {
    /// `k ≡ 1 (mod 4)`, `k | n`, `2k ∤ n`
    C1,
    /// `k ≢ 1 (mod 4)`, `2k | n`, `4k ∤ n`
    C2,
}

/// Which condition admits a pair for `(n, k)`. Divisibility by `k` is read
/// on `|k|`.
pub fn applicable(n: u64, k: i64) -> Result<Option<AuriCondition>> {
    if !is_squarefree_i64(k) {
        return domain(format!("aurifeuille: k = {k} is not squarefree"));
    }
    if n < 3 {
        return domain(format!("aurifeuille: n = {n} < 3"));
    }
    let a = k.unsigned_abs();
    let divides = |m: u64| m.checked_mul(a).is_some_and(|x| n.is_multiple_of(x));
    Ok(if k.rem_euclid(4) == 1 {
        (divides(1) && !divides(2)).then_some(AuriCondition::C1)
    } else {
        (divides(2) && !divides(4)).then_some(AuriCondition::C2)
    })
}

/// Symmetry types `(s(F), s(G))` required for a pair.
pub fn expected_symmetry(n: u64, k: i64) -> (i8, i8) {
    let half = euler_phi(n) / 2;
    let sf = if k == 1 || (k > 1 && n.is_multiple_of(2)) || half.is_multiple_of(2) {
        1
    } else {
        -1
    };
    (sf, k.signum() as i8 * sf)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuriPair {
    pub n: u64,
    pub k: i64,
    pub q: u64,
    pub condition: AuriCondition,
    #[serde(rename = "F")]
    pub f: HomPoly,
    #[serde(rename = "G")]
    pub g: HomPoly,
    #[serde(rename = "sF")]
    pub s_f: i8,
    #[serde(rename = "sG")]
    pub s_g: i8,
}

fn inv_mod(x: u64, l: u64) -> u64 {
    pow_mod(x, l - 2, l)
}

fn signed_mod(x: i64, l: u64) -> u64 {
    x.rem_euclid(l as i64) as u64
}

/// `P mod ℓ`, or `None` if `ℓ` is unlucky.
fn p_mod(n: u64, k: i64, big_n: u64, disc: i64, l: u64) -> Option<Vec<u64>> {
    let d = (euler_phi(n) / 2) as usize;
    let n_primes = nt::prime_factors_u64(big_n);
    let cofactor = (l - 1) / big_n;
    let w = (2..)
        .map(|g| pow_mod(g, cofactor, l))
        .find(|&w| n_primes.iter().all(|&q| pow_mod(w, big_n / q, l) != 1))?;

    let dabs = disc.unsigned_abs();
    let zeta_d = pow_mod(w, big_n / dabs, l);
    let mut gauss = 0u64;
    let mut zb = 1u64;
    for b in 0..dabs {
        match kronecker(disc, b) {
            1 => gauss = (gauss + zb) % l,
            -1 => gauss = (gauss + l - zb) % l,
            _ => {}
        }
        zb = mul_mod(zb, zeta_d, l);
    }
    if mul_mod(gauss, gauss, l) != signed_mod(disc, l) {
        return None;
    }
    let sqrt_k = if disc == k {
        gauss
    } else {
        mul_mod(gauss, inv_mod(2, l), l)
    };
    if sqrt_k == 0 {
        return None;
    }
    let s_inv = inv_mod(sqrt_k, l);

    let zeta_2n = pow_mod(w, big_n / (2 * n), l);
    let mut roots = BTreeSet::new();
    for a in 1..big_n {
        if a.gcd(&big_n) != 1 {
            continue;
        }
        let mut r = mul_mod(pow_mod(zeta_2n, a, l), s_inv, l);
        if kronecker(disc, a) == -1 {
            r = (l - r) % l;
        }
        roots.insert(r);
    }
    if roots.len() != 2 * d {
        return None;
    }

    let mut poly = vec![1u64];
    for r in roots {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % l;
            next[i] = (next[i] + l - mul_mod(c, r, l)) % l;
        }
        poly = next;
    }
    let kd = pow_mod(signed_mod(k, l), d as u64, l);
    Some(poly.into_iter().map(|c| mul_mod(c, kd, l)).collect())
}

/// Integer coefficients of `P`, by CRT over enough primes `ℓ ≡ 1 (mod N)`.
fn p_exact(n: u64, k: i64, disc: i64) -> Result<Vec<BigInt>> {
    let d = euler_phi(n) / 2;
    let big_n = (2 * n).lcm(&disc.unsigned_abs());
    // |P_i| <= binom(2d, i) |k|^(d - i/2) < 4^d |k|^d
    let bound = BigInt::from(2) * num_traits::pow(BigInt::from(4 * k.unsigned_abs()), d as usize);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut l = (1u64 << 62) / big_n * big_n + 1;
    while modulus <= bound {
        if l >= 1 << 63 {
            return invariant("aurifeuille: ran out of CRT primes");
        }
        let cand = l;
        l += big_n;
        if !is_prime_u64(cand) {
            continue;
        }
        let Some(res) = p_mod(n, k, big_n, disc, cand) else {
            continue;
        };
        let lb = BigInt::from(cand);
        if acc.is_empty() {
            acc = res.into_iter().map(BigInt::from).collect();
        } else {
            // x ≡ acc (mod modulus), x ≡ res (mod ℓ)
            let inv = BigInt::from(inv_mod((&modulus % cand).to_u64().unwrap(), cand));
            for (a, r) in acc.iter_mut().zip(res) {
                let t = ((BigInt::from(r) - &*a) * &inv).mod_floor(&lb);
                *a += t * &modulus;
            }
        }
        modulus *= &lb;
    }
    let half = &modulus >> 1;
    Ok(acc
        .into_iter()
        .map(|c| if c > half { c - &modulus } else { c })
        .collect())
}

fn exact_quotient(a: &BigInt, b: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return invariant(format!("aurifeuille: {what}: {a} not divisible by {b}"));
    }
    Ok(q)
}

fn top_sign(h: &HomPoly) -> i8 {
    h.coeffs()
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .map_or(1, |c| if c.is_negative() { -1 } else { 1 })
}

/// The pair for `(n, k)`, normalised so that the top `X`-coefficients of
/// both `F` and `G` are positive.
pub fn aurifeuillian_pair(n: u64, k: i64) -> Result<AuriPair> {
    let Some(condition) = applicable(n, k)? else {
        return domain(format!(
            "aurifeuille: neither condition holds for n = {n}, k = {k}"
        ));
    };
    let disc = if k.rem_euclid(4) == 1 { k } else { 4 * k };
    let d = (euler_phi(n) / 2) as usize;
    let q = q_of(n);
    let qu = q as usize;
    if qu > d {
        return invariant(format!("aurifeuille: q = {q} exceeds φ(n)/2 = {d}"));
    }
    let p = p_exact(n, k, disc)?;
    let kb = BigInt::from(k);

    let mut f = Vec::with_capacity(d + 1);
    for i in 0..=d {
        f.push(exact_quotient(
            &p[2 * i],
            &num_traits::pow(kb.clone(), i),
            "F",
        )?);
    }
    let mut g = Vec::with_capacity(d - qu + 1);
    for (j, c) in p.iter().enumerate().filter(|(j, _)| j % 2 == 1) {
        if j < qu || j > 2 * d - qu {
            if !c.is_zero() {
                return invariant(format!("aurifeuille: stray coefficient at z^{j}"));
            }
            continue;
        }
        let i = (j - qu) / 2;
        let scale = num_traits::pow(kb.clone(), qu.div_ceil(2) + i);
        g.push(-exact_quotient(c, &scale, "G")?);
    }

    let mut f = HomPoly::new(d, f);
    let mut g = HomPoly::new(d - qu, g);
    if top_sign(&f) < 0 {
        f = -&f;
    }
    if top_sign(&g) < 0 {
        g = -&g;
    }
    let (s_f, s_g) = match (f.symmetry_type(), g.symmetry_type()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return invariant(format!(
                "aurifeuille: pair for ({n}, {k}) lacks a symmetry type"
            ))
        }
    };
    let pair = AuriPair {
        n,
        k,
        q,
        condition,
        f,
        g,
        s_f,
        s_g,
    };
    if !verify_pair(&pair) {
        return invariant(format!(
            "aurifeuille: constructed pair for ({n}, {k}) fails verification"
        ));
    }
    Ok(pair)
}

/// Re-expands `F^2 - k (XY)^q G^2` and compares with `Φ_n(X, Y)`; also checks
/// the degrees and symmetry types against the expected table.
pub fn verify_pair(pair: &AuriPair) -> bool {
    let n = pair.n;
    if !matches!(applicable(n, pair.k), Ok(Some(_))) || pair.q != q_of(n) {
        return false;
    }
    let d = (euler_phi(n) / 2) as usize;
    let q = pair.q as usize;
    if pair.f.degree() != d || q > d || pair.g.degree() != d - q {
        return false;
    }
    let (sf, sg) = expected_symmetry(n, pair.k);
    if pair.f.symmetry_type() != Some(sf) || pair.g.symmetry_type() != Some(sg) {
        return false;
    }
    if pair.s_f != sf || pair.s_g != sg {
        return false;
    }
    let f2 = &pair.f * &pair.f;
    let g2 = &(&pair.g * &pair.g) * &HomPoly::xy_power(q);
    let rhs = &f2 - &g2.scale(&BigInt::from(pair.k));
    rhs == homogenized_cyclotomic(n)
}

impl AuriPair {
    /// Every prime dividing both `F(x, y)` and `G(x, y)` divides `2n·x·y`.
    pub fn common_divisor_ok(&self, x: &BigInt, y: &BigInt) -> bool {
        let support = BigInt::from(2 * self.n) * x * y;
        if support.is_zero() {
            return true;
        }
        let g = self.f.eval(x, y).gcd(&self.g.eval(x, y));
        strip_support(&g, &support).is_one()
    }
}

pub fn common_divisor_check(n: u64, k: i64, x: &BigInt, y: &BigInt) -> Result<bool> {
    Ok(aurifeuillian_pair(n, k)?.common_divisor_ok(x, y))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoSquares {
    pub ell: u64,
    /// `ℓ = 2^v n`
    pub v: u32,
    pub n: u64,
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub b: BigInt,
}

/// `Φ_ℓ(γ, δ) = A^2 + B^2` for `Q = 1` and `R(R - 4) = d0 d1^2` with
/// `d0 >= 5`, `d0 ≡ 1 (mod 4)` squarefree and `4 d0 | ℓ`.
pub fn two_squares(params: &LehmerParams, ell: u64, d0: i64, d1: &BigInt) -> Result<TwoSquares> {
    if !params.q.is_one() {
        return domain("two_squares: needs Q = 1");
    }
    if d0 < 5 || d0 % 4 != 1 || !is_squarefree_i64(d0) {
        return domain(format!(
            "two_squares: d0 = {d0} must be squarefree, >= 5 and ≡ 1 (mod 4)"
        ));
    }
    if BigInt::from(d0) * d1 * d1 != params.discriminant_product() {
        return domain(format!(
            "two_squares: d0·d1² = {} but R(R-4Q) = {}",
            BigInt::from(d0) * d1 * d1,
            params.discriminant_product()
        ));
    }
    if ell == 0 || !ell.is_multiple_of(4 * d0 as u64) {
        return domain(format!(
            "two_squares: 4·d0 = {} must divide ell = {ell}",
            4 * d0
        ));
    }
    let v = ell.trailing_zeros() - 1;
    let n = ell >> v;
    let pair = aurifeuillian_pair(n, -d0)?;

    // G = (X - Y) H
    let x_minus_y = crate::poly::IntPoly::from_i64s(&[-1, 1]);
    let h = pair
        .g
        .dehomogenize()
        .div_exact_monic(&x_minus_y)
        .map_err(|_| crate::Error::Invariant("two_squares: X - Y does not divide G".into()))?;
    let h = HomPoly::homogenize(&h, pair.g.degree() - 1);

    // e1 = γ^(2^v) + δ^(2^v) = x_v, with x_1 = R - 2, and e2 = 1.
    let mut e1 = &params.r - 2;
    for _ in 1..v {
        e1 = &e1 * &e1 - 2;
    }
    let one = BigInt::one();
    let (Some(a), Some(h_val)) = (
        pair.f.eval_symmetric(&e1, &one),
        h.eval_symmetric(&e1, &one),
    ) else {
        return invariant("two_squares: F or H is not symmetric");
    };
    let b = BigInt::from(d0) * d1 * lehmer::u(params, 1 << v) * h_val;
    let phi = phi_value(params, ell)?;
    if &a * &a + &b * &b != phi {
        return invariant(format!("two_squares: {a}² + {b}² != Φ_{ell} = {phi}"));
    }
    Ok(TwoSquares { ell, v, n, a, b })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: usize, c: &[i64]) -> HomPoly {
        HomPoly::new(d, c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_of(20), 1);
        assert_eq!(q_of(9), 3);
        assert_eq!(q_of(45), 3);
        assert_eq!(q_of(1), 1);
    }

    #[test]
    fn applicability_examples() {
        assert_eq!(applicable(5, 5).unwrap(), Some(AuriCondition::C1));
        assert_eq!(applicable(10, -5).unwrap(), Some(AuriCondition::C2));
        assert_eq!(applicable(20, 5).unwrap(), None);
        assert!(applicable(20, 12).is_err());
        assert!(applicable(20, 0).is_err());
    }

    #[test]
    fn pair_examples() {
        let p = aurifeuillian_pair(5, 5).unwrap();
        assert_eq!(p.f, h(2, &[1, 3, 1]));
        assert_eq!(p.g, h(1, &[1, 1]));
        assert_eq!(p.q, 1);
        let p = aurifeuillian_pair(10, -5).unwrap();
        assert_eq!(p.f, h(2, &[1, -3, 1]));
        assert_eq!(p.g, h(1, &[-1, 1]));
        assert_eq!(aurifeuillian_pair(13, 13).unwrap().f.degree(), 6);
        assert!(aurifeuillian_pair(20, 5).is_err());
    }

    #[test]
    fn verify_is_sign_insensitive_but_catches_corruption() {
        let mut p = aurifeuillian_pair(10, -5).unwrap();
        assert!(verify_pair(&p));
        p.g = -&p.g;
        assert!(verify_pair(&p));
        let mut c = p.f.coeffs().to_vec();
        c[1] += 1;
        p.f = HomPoly::new(2, c);
        assert!(!verify_pair(&p));
    }

    #[test]
    fn common_divisor_examples() {
        let b = |v: i64| BigInt::from(v);
        assert!(common_divisor_check(5, 5, &b(2), &b(1)).unwrap());
        assert!(common_divisor_check(5, 5, &b(1), &b(1)).unwrap());
        assert!(common_divisor_check(10, -5, &b(3), &b(1)).unwrap());
    }

    #[test]
    fn two_squares_examples() {
        let p = LehmerParams::from_i64(5, 1).unwrap();
        let one = BigInt::one();
        let t = two_squares(&p, 20, 5, &one).unwrap();
        assert_eq!((t.a.abs(), t.b.abs()), (BigInt::from(4), BigInt::from(5)));
        let t = two_squares(&p, 40, 5, &one).unwrap();
        assert_eq!(&t.a * &t.a + &t.b * &t.b, BigInt::from(2161));
        assert!(two_squares(&p, 20, 3, &one).is_err());
        assert!(two_squares(&p, 30, 5, &one).is_err());
    }
}
