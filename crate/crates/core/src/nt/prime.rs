//! Primality: deterministic Miller-Rabin below 2^64, seeded random rounds above.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Witness set that makes Miller-Rabin exact for every 64-bit input.
const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const RANDOM_ROUNDS: usize = 40;
const RNG_SEED: u64 = 0x6d73_6574_666f_7267;

pub(crate) const SIEVE_LIMIT: u32 = 1_000_000;

/// Primes below [`SIEVE_LIMIT`], computed once.
pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_below(SIEVE_LIMIT))
}

pub fn primes_below(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    if limit < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; limit];
    let mut out = Vec::new();
    for i in 2..limit {
        if composite[i] {
            continue;
        }
        out.push(i as u32);
        let mut j = i * i;
        while j < limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &DETERMINISTIC_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let n_minus_1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// True iff `|n|` is prime.
///
/// Exact for `|n| < 2^64`. Above that, base 2 plus 40 rounds with bases drawn
/// from a fixed-seed generator, so repeated calls agree.
pub fn is_prime(n: &BigInt) -> bool {
    let m = n.magnitude();
    if let Some(small) = m.to_u64() {
        return is_prime_u64(small);
    }
    for &p in small_primes().iter().take(200) {
        if (m % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = m - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    if !strong_probable_prime(m, &BigUint::from(2u32), &d, s) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let low = BigUint::from(3u32);
    for _ in 0..RANDOM_ROUNDS {
        let a = rng.gen_biguint_range(&low, &n_minus_1);
        if !strong_probable_prime(m, &a, &d, s) {
            return false;
        }
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c: BigInt = if n.sign() == Sign::Minus {
        BigInt::from(1)
    } else {
        n.clone()
    };
    loop {
        c += 1;
        if c.is_even() && c != BigInt::from(2) {
            continue;
        }
        if is_prime(&c) {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_cases() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(0)));
        assert!(!is_prime(&BigInt::from(6765)));
        assert!(is_prime(&BigInt::from(-29)));
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // 3215031751 is a strong pseudoprime to bases 2, 3, 5, 7.
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn big_inputs() {
        let m127: BigInt = (BigInt::one() << 127) - 1;
        assert!(is_prime(&m127));
        let composite = &m127 * BigInt::from(18_446_744_073_709_551_557u64);
        assert!(!is_prime(&composite));
        // Carmichael-style product of three primes above 2^64.
        let p = next_prime(&(BigInt::one() << 64));
        let q = next_prime(&p);
        assert!(!is_prime(&(&p * &q)));
    }

    #[test]
    fn sieve_counts() {
        assert_eq!(primes_below(100).len(), 25);
        assert_eq!(small_primes().len(), 78_498);
    }
}
