use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::prime::{is_prime, is_prime_u64, mul_mod, small_primes, SIEVE_LIMIT};

/// Name of the environment variable that overrides the rho iteration cap.
pub const BUDGET_ENV: &str = "MSETFORGE_FACTOR_BUDGET";

/// How hard [`factorize`] tries before giving up on a composite cofactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division runs over primes up to this bound (at most 10^6).
    pub trial_bound: u32,
    /// Total Pollard-rho iterations allowed per composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: SIEVE_LIMIT,
            rho_iterations: 4_000_000,
        }
    }
}

impl FactorBudget {
    /// Default budget, with `rho_iterations` taken from
    /// `MSETFORGE_FACTOR_BUDGET` when it parses as an integer.
    pub fn from_env() -> Self {
        let mut budget = FactorBudget::default();
        if let Some(v) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            budget.rho_iterations = v;
        }
        budget
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub value: BigInt,
    pub sign: i8,
    /// `(prime, exponent)` in strictly increasing prime order.
    #[serde(serialize_with = "ser_factor_list")]
    pub factors: Vec<(BigInt, u32)>,
}

fn ser_factor_list<S: serde::Serializer>(
    v: &[(BigInt, u32)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, e) in v {
        seq.serialize_element(&(p.to_string(), e))?;
    }
    seq.end()
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Multiplies the factorization back out.
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// What was found before the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFactorization {
    pub sign: i8,
    pub found: Vec<(BigInt, u32)>,
    /// Composite cofactors that could not be split.
    pub unfactored: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot factor zero")]
    Zero,
    #[error("factoring budget exhausted; unfactored: {unfactored:?}", unfactored = .0.unfactored)]
    Partial(PartialFactorization),
}

fn rem_digits(digits: &[u32], p: u32) -> u32 {
    let p = p as u64;
    digits
        .iter()
        .rev()
        .fold(0u64, |r, &d| ((r << 32) | d as u64) % p) as u32
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho on a 64-bit composite. Always returns a
/// nontrivial divisor because it cycles through polynomial constants.
fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut BTreeMap<BigInt, u32>) {
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n.is_multiple_of(p) {
            *out.entry(BigInt::from(p)).or_default() += 1;
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *out.entry(BigInt::from(m)).or_default() += 1;
            continue;
        }
        let d = rho_u64(m);
        stack.push(d);
        stack.push(m / d);
    }
}

/// Complete factorization of a nonzero 64-bit integer as `(prime, exponent)`.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n != 0, "factor_u64(0)");
    let mut map = BTreeMap::new();
    factor_u64_into(n, &mut map);
    map.into_iter()
        .map(|(p, e)| (p.to_u64().expect("64-bit prime"), e))
        .collect()
}

/// Pollard-Brent on a big composite, spending at most `*budget` iterations.
fn rho_big(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut c = BigUint::one();
    while *budget > 0 {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r) = (BigUint::from(2u32), 1u64);
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        while g == one && *budget > 0 {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let batch = 64.min(r - k);
                for _ in 0..batch {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                *budget = budget.saturating_sub(batch);
                g = q.gcd(n);
                k += 64;
                if *budget == 0 {
                    break;
                }
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && &g != n {
            return Some(g);
        }
        c += 1u32;
    }
    None
}

/// Factors `n`, returning a partial result when the budget runs out.
pub fn factorize(n: &BigInt, budget: &FactorBudget) -> Result<Factorization, FactorError> {
    if n.is_zero() {
        return Err(FactorError::Zero);
    }
    let sign: i8 = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut found: BTreeMap<BigInt, u32> = BTreeMap::new();
    let mut m = n.magnitude().clone();
    let mut unfactored = Vec::new();

    if let Some(small) = m.to_u64() {
        factor_u64_into(small, &mut found);
    } else {
        let mut digits = m.to_u32_digits();
        for &p in small_primes() {
            if p > budget.trial_bound {
                break;
            }
            if m.to_u64().is_some() {
                break;
            }
            let pp = BigUint::from(p) * p;
            if pp > m {
                break;
            }
            if rem_digits(&digits, p) == 0 {
                while (&m % p).is_zero() {
                    m /= p;
                    *found.entry(BigInt::from(p)).or_default() += 1;
                }
                digits = m.to_u32_digits();
            }
        }
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if let Some(small) = c.to_u64() {
                factor_u64_into(small, &mut found);
                continue;
            }
            let ci = BigInt::from(c.clone());
            if is_prime(&ci) {
                *found.entry(ci).or_default() += 1;
                continue;
            }
            let mut iters = budget.rho_iterations;
            match rho_big(&c, &mut iters) {
                Some(d) => {
                    let other = &c / &d;
                    stack.push(d);
                    stack.push(other);
                }
                None => unfactored.push(ci),
            }
        }
    }

    let factors: Vec<(BigInt, u32)> = found.into_iter().collect();
    if unfactored.is_empty() {
        Ok(Factorization {
            value: n.clone(),
            sign,
            factors,
        })
    } else {
        unfactored.sort();
        Err(FactorError::Partial(PartialFactorization {
            sign,
            found: factors,
            unfactored,
        }))
    }
}

/// `n = d0 · d1^2` with `d0` squarefree and carrying the sign of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquarefreeSplit {
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub d0: BigInt,
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub d1: BigInt,
}

pub fn squarefree_split(n: &BigInt, budget: &FactorBudget) -> crate::Result<SquarefreeSplit> {
    let fac = match factorize(n, budget) {
        Ok(f) => f,
        Err(FactorError::Zero) => return crate::error::domain("squarefree_split(0)"),
        Err(FactorError::Partial(p)) => {
            return Err(crate::Error::Budget {
                cofactor: p.unfactored[0].clone(),
            })
        }
    };
    let mut d0 = BigInt::from(fac.sign);
    let mut d1 = BigInt::one();
    for (p, e) in &fac.factors {
        if e % 2 == 1 {
            d0 *= p;
        }
        d1 *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    debug_assert_eq!(&d0 * &d1 * &d1, *n);
    debug_assert!(d1.is_positive());
    Ok(SquarefreeSplit { d0, d1 })
}

/// True iff no square of a prime divides `n`. Zero is not squarefree.
pub fn is_squarefree_i64(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factor_u64(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn spec_examples() {
        let f = factorize(&big(6765), &FactorBudget::default()).unwrap();
        let ps: Vec<_> = f
            .factors
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect();
        assert_eq!(ps, vec![(3, 1), (5, 1), (11, 1), (41, 1)]);
        assert_eq!(ps, trial_factor(6765));

        let f = factorize(&big(-4), &FactorBudget::default()).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(big(2), 2)]);

        let f = factorize(&big(29), &FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![(big(29), 1)]);

        assert_eq!(
            factorize(&big(0), &FactorBudget::default()),
            Err(FactorError::Zero)
        );
    }

    #[test]
    fn roundtrip_small_range() {
        let budget = FactorBudget::default();
        for n in (-1_000_000i64..=1_000_000).filter(|&n| n != 0) {
            let f = factorize(&big(n), &budget).unwrap();
            assert_eq!(f.product(), big(n));
            assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.primes().all(is_prime));
        }
    }

    #[test]
    fn big_semiprime() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let r = BigInt::from(18_446_744_073_709_551_557u64);
        let n = &p * &q * &r;
        let f = factorize(&n, &FactorBudget::default()).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn budget_exhaustion_is_partial() {
        let p = super::super::prime::next_prime(&(BigInt::one() << 70));
        let q = super::super::prime::next_prime(&p);
        let n = &p * &q * 12;
        let tight = FactorBudget {
            trial_bound: 1000,
            rho_iterations: 10,
        };
        match factorize(&n, &tight) {
            Err(FactorError::Partial(part)) => {
                assert_eq!(part.found, vec![(big(2), 2), (big(3), 1)]);
                assert_eq!(part.unfactored, vec![&p * &q]);
            }
            other => panic!("expected partial, got {other:?}"),
        }
    }

    #[test]
    fn squarefree_split_examples() {
        let b = FactorBudget::default();
        let s = squarefree_split(&big(5), &b).unwrap();
        assert_eq!((s.d0, s.d1), (big(5), big(1)));
        let s = squarefree_split(&big(45), &b).unwrap();
        assert_eq!((s.d0, s.d1), (big(5), big(3)));
        let s = squarefree_split(&big(-12), &b).unwrap();
        assert_eq!((s.d0, s.d1), (big(-3), big(2)));
        assert!(squarefree_split(&big(0), &b).is_err());
    }

    #[test]
    fn squarefree_predicate() {
        assert!(is_squarefree_i64(-15));
        assert!(is_squarefree_i64(1));
        assert!(!is_squarefree_i64(12));
        assert!(!is_squarefree_i64(0));
    }
}
