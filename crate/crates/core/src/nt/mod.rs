//! Integer number theory used by every other module.

mod factor;
mod prime;

pub use factor::{
    factor_u64, factorize, is_squarefree_i64, squarefree_split, FactorBudget, FactorError,
    Factorization, PartialFactorization, SquarefreeSplit, BUDGET_ENV,
};
pub use prime::{is_prime, is_prime_u64, next_prime, primes_below};

pub(crate) use prime::{mul_mod, pow_mod};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Below this modulus, [`mult_order`] scans powers directly.
pub const ORDER_SCAN_LIMIT: u64 = 1_000_000;

pub(crate) fn ser_bigint<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Least nonnegative residue of `a` modulo `m > 0`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0);
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn prime_factors_u64(n: u64) -> Vec<u64> {
    factor_u64(n).into_iter().map(|(p, _)| p).collect()
}

pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius(0)");
    let mut mu = 1i8;
    for (_, e) in factor_u64(n) {
        if e > 1 {
            return 0;
        }
        mu = -mu;
    }
    mu
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi(0)");
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    assert!(n.is_positive() && n.is_odd(), "jacobi needs odd positive n");
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let n8 = (&n % 8u32).to_u8().unwrap();
            if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u8() == Some(3) && (&n % 4u32).to_u8() == Some(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Legendre symbol `(a / p)`. Fails unless `p` is an odd prime.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    if !p.is_positive() || p.is_even() || !is_prime(p) {
        return domain(format!("legendre: {p} is not an odd prime"));
    }
    Ok(jacobi(a, p))
}

/// Kronecker symbol `(d / n)` for `n >= 0`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let tz = n.trailing_zeros();
    let odd = n >> tz;
    let mut result = 1i8;
    if tz > 0 {
        if d % 2 == 0 {
            return 0;
        }
        let d8 = d.rem_euclid(8);
        if tz % 2 == 1 && (d8 == 3 || d8 == 5) {
            result = -result;
        }
    }
    if odd == 1 {
        return result;
    }
    result * jacobi(&BigInt::from(d), &BigInt::from(odd))
}

/// Multiplicative order of `a` modulo `m`.
///
/// Moduli below [`ORDER_SCAN_LIMIT`] are handled by scanning powers. Larger
/// moduli go through the Carmichael function, which needs `m` and `λ(m)` to
/// factor within `budget`.
pub fn mult_order(a: &BigInt, m: &BigInt, budget: &FactorBudget) -> Result<BigInt> {
    if m < &BigInt::from(2) {
        return domain(format!("mult_order: modulus {m} < 2"));
    }
    if !a.gcd(m).is_one() {
        return domain(format!("mult_order: gcd({a}, {m}) != 1"));
    }
    if let Some(small) = m.to_u64().filter(|&v| v < ORDER_SCAN_LIMIT) {
        let a = a.mod_floor(m).to_u64().unwrap();
        let mut x = a;
        let mut k = 1u64;
        while x != 1 {
            x = mul_mod(x, a, small);
            k += 1;
        }
        return Ok(BigInt::from(k));
    }
    let lambda = carmichael(m, budget)?;
    let lambda_fac = full_factorization(&lambda, budget)?;
    let mut order = lambda;
    let a = a.mod_floor(m);
    for (q, e) in lambda_fac.factors {
        for _ in 0..e {
            let cand = &order / &q;
            if a.modpow(&cand, m).is_one() {
                order = cand;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

fn full_factorization(n: &BigInt, budget: &FactorBudget) -> Result<Factorization> {
    match factorize(n, budget) {
        Ok(f) => Ok(f),
        Err(FactorError::Zero) => domain("cannot factor zero"),
        Err(FactorError::Partial(p)) => Err(crate::Error::Budget {
            cofactor: p.unfactored[0].clone(),
        }),
    }
}

fn carmichael(m: &BigInt, budget: &FactorBudget) -> Result<BigInt> {
    let fac = full_factorization(m, budget)?;
    let two = BigInt::from(2);
    let mut lambda = BigInt::one();
    for (p, e) in fac.factors {
        let term = if p == two {
            match e {
                1 => BigInt::one(),
                2 => two.clone(),
                _ => BigInt::one() << (e - 2),
            }
        } else {
            num_traits::pow(p.clone(), (e - 1) as usize) * (&p - 1)
        };
        lambda = lambda.lcm(&term);
    }
    Ok(lambda)
}

/// True iff `a` has multiplicative order exactly `order` modulo `m`.
/// Needs only the factorization of `order`, never of `m`.
pub fn has_order(a: &BigInt, order: u64, m: &BigInt) -> bool {
    if order == 0 || m < &BigInt::from(2) || !a.gcd(m).is_one() {
        return false;
    }
    let a = a.mod_floor(m);
    if !a.modpow(&BigInt::from(order), m).is_one() {
        return false;
    }
    prime_factors_u64(order)
        .into_iter()
        .all(|q| !a.modpow(&BigInt::from(order / q), m).is_one())
}

/// A square root of `a` modulo the prime `p`, or `None` for non-residues.
/// Tonelli-Shanks with the smallest quadratic non-residue; the answer is
/// re-checked by squaring.
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Result<Option<BigInt>> {
    if !is_prime(p) || !p.is_positive() {
        return domain(format!("sqrt_mod: {p} is not prime"));
    }
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Ok(Some(a));
    }
    if p == &BigInt::from(2) {
        return Ok(Some(a));
    }
    if jacobi(&a, p) != 1 {
        return Ok(None);
    }
    let p_minus_1: BigInt = p - 1;
    let s = p_minus_1.trailing_zeros().unwrap_or(0);
    let q = &p_minus_1 >> s;
    let mut z = BigInt::from(2);
    while jacobi(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    if (&r * &r).mod_floor(p) != a {
        return crate::error::invariant(format!("sqrt_mod({a}, {p}) produced {r}"));
    }
    Ok(Some(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn brute_order(a: u64, m: u64) -> u64 {
        let mut x = a % m;
        let mut k = 1;
        while x != 1 {
            x = x * a % m;
            k += 1;
        }
        k
    }

    #[test]
    fn arithmetic_function_examples() {
        assert_eq!((moebius(1), euler_phi(1)), (1, 1));
        assert_eq!((moebius(10), euler_phi(10)), (1, 4));
        assert_eq!(moebius(12), 0);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn divisor_sums() {
        for n in 1..=10_000u64 {
            let ds = divisors(n);
            let mu: i64 = ds.iter().map(|&d| moebius(d) as i64).sum();
            assert_eq!(mu, (n == 1) as i64, "n = {n}");
            let phi: u64 = ds.iter().map(|&d| euler_phi(d)).sum();
            assert_eq!(phi, n);
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&big(5), &big(29)).unwrap(), 1);
        assert_eq!(legendre(&big(0), &big(7)).unwrap(), 0);
        assert_eq!(legendre(&big(2), &big(5)).unwrap(), -1);
        assert!(legendre(&big(2), &big(9)).is_err());
        assert!(legendre(&big(2), &big(2)).is_err());
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for p in primes_below(500).into_iter().skip(1) {
            let pb = big(p as i64);
            for a in 0..p {
                let e = pow_mod(a as u64, (p as u64 - 1) / 2, p as u64);
                let expected = match e {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(legendre(&big(a as i64), &pb).unwrap(), expected);
            }
        }
    }

    #[test]
    fn kronecker_small() {
        // (D/.) for D = 5 is the character mod 5 with values 1, -1, -1, 1.
        let v: Vec<i8> = (0..5).map(|n| kronecker(5, n)).collect();
        assert_eq!(v, vec![0, 1, -1, -1, 1]);
        // D = -4: chi(1) = 1, chi(3) = -1, even -> 0.
        let v: Vec<i8> = (0..4).map(|n| kronecker(-4, n)).collect();
        assert_eq!(v, vec![0, 1, 0, -1]);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(8, 3), -1);
    }

    #[test]
    fn mult_order_examples() {
        let b = FactorBudget::default();
        assert_eq!(mult_order(&big(24), &big(29), &b).unwrap(), big(7));
        assert_eq!(mult_order(&big(1), &big(13), &b).unwrap(), big(1));
        assert_eq!(mult_order(&big(7), &big(41), &b).unwrap(), big(40));
        assert!(mult_order(&big(6), &big(9), &b).is_err());
    }

    #[test]
    fn mult_order_divides_p_minus_one() {
        let b = FactorBudget::default();
        for p in primes_below(1000) {
            for a in 1..p {
                let o = mult_order(&big(a as i64), &big(p as i64), &b).unwrap();
                assert!((p as u64 - 1).is_multiple_of(o.to_u64().unwrap()));
            }
        }
    }

    #[test]
    fn carmichael_path_agrees_with_scan() {
        let b = FactorBudget::default();
        // Above the scan threshold the Carmichael route is used.
        let p = big(1_000_003);
        for a in [2i64, 3, 5, 10, 999_999] {
            let fast = mult_order(&big(a), &p, &b).unwrap();
            assert_eq!(fast.to_u64().unwrap(), brute_order(a as u64, 1_000_003));
            assert!(has_order(&big(a), fast.to_u64().unwrap(), &p));
        }
        let composite = big(1_000_003 * 7);
        let o = mult_order(&big(2), &composite, &b).unwrap();
        assert_eq!(o.to_u64().unwrap(), brute_order(2, 7_000_021));
    }

    #[test]
    fn sqrt_mod_roundtrip() {
        for p in primes_below(300) {
            let pb = big(p as i64);
            for a in 0..p as i64 {
                match sqrt_mod(&big(a), &pb).unwrap() {
                    Some(r) => assert_eq!((&r * &r) % &pb, big(a)),
                    None => assert_eq!(jacobi(&big(a), &pb), -1),
                }
            }
        }
        let big_p = next_prime(&(BigInt::one() << 80));
        let r = sqrt_mod(&big(5), &big_p).unwrap();
        if let Some(r) = r {
            assert_eq!((&r * &r) % &big_p, big(5));
        }
    }
}
