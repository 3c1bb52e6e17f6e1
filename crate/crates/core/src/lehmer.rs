//! Lehmer sequences through their invariants `R = (γ+δ)^2` and `Q = γδ`.
//!
//! Everything stays in the integers: `u_n` obeys
//! `u_{n+4} = (R - 2Q) u_{n+2} - Q^2 u_n` with `u_0, u_1, u_2, u_3 = 0, 1, 1, R - Q`,
//! and the even and odd subsequences are Lucas sequences in `(R - 2Q, Q^2)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, invariant, Result};
use crate::nt::{self, divisors, factorize, moebius, FactorBudget, FactorError};
use crate::poly::HomogValue;

/// Indices for which a Lehmer sequence with `Q = 1` may lack a primitive divisor.
pub const EXCEPTIONAL_INDICES: [u64; 8] = [1, 2, 3, 4, 5, 6, 10, 12];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LehmerParams {
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub r: BigInt,
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub q: BigInt,
}

impl LehmerParams {
    /// Rejects `R = 0`, `Q = 0`, `gcd(R, Q) > 1`, and pairs whose ratio
    /// `γ/δ` is a root of unity.
    pub fn new(r: BigInt, q: BigInt) -> Result<Self> {
        if r.is_zero() || q.is_zero() {
            return domain(format!("Lehmer params ({r}, {q}): R and Q must be nonzero"));
        }
        if !r.gcd(&q).is_one() {
            return domain(format!("Lehmer params ({r}, {q}): gcd(R, Q) != 1"));
        }
        // γ/δ + δ/γ = (R - 2Q)/Q; it is a root of unity iff that lies in {-2..2}.
        let s = &r - &q * 2u32;
        if s.is_multiple_of(&q) {
            let ratio = &s / &q;
            if ratio.abs() <= BigInt::from(2) {
                return domain(format!("Lehmer params ({r}, {q}): γ/δ is a root of unity"));
            }
        }
        Ok(LehmerParams { r, q })
    }

    pub fn from_i64(r: i64, q: i64) -> Result<Self> {
        Self::new(BigInt::from(r), BigInt::from(q))
    }

    /// `(γ^2 - δ^2)^2 = R (R - 4Q)`.
    pub fn discriminant_product(&self) -> BigInt {
        &self.r * (&self.r - &self.q * 4u32)
    }

    fn step_coeffs(&self) -> (BigInt, BigInt) {
        (&self.r - &self.q * 2u32, &self.q * &self.q)
    }
}

/// `u_0, ..., u_n`.
pub fn u_terms(params: &LehmerParams, n: u64) -> Vec<BigInt> {
    let (a, b) = params.step_coeffs();
    let mut out = vec![
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        &params.r - &params.q,
    ];
    for i in 4..=n as usize {
        let next = &a * &out[i - 2] - &b * &out[i - 4];
        out.push(next);
    }
    out.truncate(n as usize + 1);
    out
}

pub fn u(params: &LehmerParams, n: u64) -> BigInt {
    u_terms(params, n).pop().unwrap()
}

/// `v_n = (γ^n + δ^n) / (γ + δ)` for odd `n`.
pub fn v_odd(params: &LehmerParams, n: u64) -> Result<BigInt> {
    if n.is_multiple_of(2) {
        return domain(format!("v_odd: index {n} is even"));
    }
    let (a, b) = params.step_coeffs();
    let (mut lo, mut hi) = (BigInt::one(), &params.r - &params.q * 3u32);
    if n == 1 {
        return Ok(lo);
    }
    for _ in 0..(n - 3) / 2 {
        let next = &a * &hi - &b * &lo;
        lo = hi;
        hi = next;
    }
    Ok(hi)
}

/// `(U_k, U_{k+1})` of the Lucas sequence with parameters `(p, q)` modulo `m`.
fn lucas_u_mod(p: &BigInt, q: &BigInt, k: &BigInt, m: &BigInt) -> (BigInt, BigInt) {
    // [[U_{k+1}, -q U_k], [U_k, -q U_{k-1}]] = [[p, -q], [1, 0]]^k
    type Mat = [BigInt; 4];
    let mul = |x: &Mat, y: &Mat| -> Mat {
        [
            (&x[0] * &y[0] + &x[1] * &y[2]).mod_floor(m),
            (&x[0] * &y[1] + &x[1] * &y[3]).mod_floor(m),
            (&x[2] * &y[0] + &x[3] * &y[2]).mod_floor(m),
            (&x[2] * &y[1] + &x[3] * &y[3]).mod_floor(m),
        ]
    };
    let mut acc: Mat = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    let base: Mat = [
        p.mod_floor(m),
        (-q).mod_floor(m),
        BigInt::one(),
        BigInt::zero(),
    ];
    for i in (0..k.bits()).rev() {
        acc = mul(&acc, &acc);
        if k.bit(i) {
            acc = mul(&acc, &base);
        }
    }
    (acc[2].mod_floor(m), acc[0].mod_floor(m))
}

/// `u_n mod m` in `O(log n)` steps, for indices too large to expand.
pub fn u_mod(params: &LehmerParams, n: &BigInt, m: &BigInt) -> BigInt {
    let (a, b) = params.step_coeffs();
    let (k, odd) = n.div_rem(&BigInt::from(2));
    let (uk, uk1) = lucas_u_mod(&a, &b, &k, m);
    if odd.is_zero() {
        uk
    } else {
        (uk1 + &params.q * uk).mod_floor(m)
    }
}

/// `Φ_n(γ, δ)` as the Möbius product of `u_d^{μ(n/d)}`, which is integral
/// for `n >= 3`.
pub fn phi_value(params: &LehmerParams, n: u64) -> Result<BigInt> {
    if n < 3 {
        return domain(format!("phi_value: index {n} < 3"));
    }
    let terms = u_terms(params, n);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in divisors(n) {
        match moebius(n / d) {
            1 => num *= &terms[d as usize],
            -1 => den *= &terms[d as usize],
            _ => {}
        }
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return invariant(format!("phi_value: {num}/{den} is not integral at n = {n}"));
    }
    Ok(q)
}

pub fn homog_value(params: &LehmerParams, n: u64) -> Result<HomogValue> {
    Ok(HomogValue {
        n,
        value: phi_value(params, n)?,
    })
}

fn to_rank(k: &BigInt) -> Result<u64> {
    match k.to_u64() {
        Some(v) => Ok(v),
        None => domain(format!("rank of appearance {k} does not fit in 64 bits")),
    }
}

fn big_divisors(fac: &nt::Factorization) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in &fac.factors {
        let len = out.len();
        let mut pk = BigInt::one();
        for _ in 0..*e {
            pk *= p;
            for i in 0..len {
                out.push(&out[i] * &pk);
            }
        }
    }
    out.sort();
    out
}

/// Least `k >= 1` with `p | u_k`, or `None` when `p | Q` (then no term is
/// divisible by `p`).
pub fn rank_of_appearance(params: &LehmerParams, p: &BigInt) -> Result<Option<u64>> {
    if !p.is_positive() || !nt::is_prime(p) {
        return domain(format!("rank_of_appearance: {p} is not prime"));
    }
    if params.q.is_multiple_of(p) {
        return Ok(None);
    }
    let two_qr = &params.q * &params.r * 2u32;
    if !two_qr.is_multiple_of(p) {
        // The rank divides p - (R(R-4Q) / p).
        let e = p - nt::jacobi(&params.discriminant_product(), p);
        let fac = match factorize(&e, &FactorBudget::from_env()) {
            Ok(f) => f,
            Err(FactorError::Partial(part)) => {
                return Err(crate::Error::Budget {
                    cofactor: part.unfactored[0].clone(),
                })
            }
            Err(FactorError::Zero) => return invariant("rank_of_appearance: p - legendre = 0"),
        };
        for d in big_divisors(&fac) {
            if u_mod(params, &d, p).is_zero() {
                return Ok(Some(to_rank(&d)?));
            }
        }
        return invariant(format!(
            "rank_of_appearance: no divisor of {e} works for p = {p}"
        ));
    }
    // p = 2 or p | R. Here p <= 2|R|, and the rank is at most 2p.
    let (a, b) = params.step_coeffs();
    let (a, b) = (a.mod_floor(p), b.mod_floor(p));
    // t[k % 4] holds u_k
    let mut t = [
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        (&params.r - &params.q).mod_floor(p),
    ];
    let bound = to_rank(p)?.saturating_mul(4).saturating_add(8);
    for k in 1..=bound {
        let i = (k % 4) as usize;
        if k >= 4 {
            t[i] = (&a * &t[(i + 2) % 4] - &b * &t[i]).mod_floor(p);
        }
        if t[i].is_zero() {
            return Ok(Some(k));
        }
    }
    invariant(format!(
        "rank_of_appearance: scan bound exceeded for p = {p}"
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimitivityReason {
    Primitive,
    /// `p | u_n`, but already `p | u_d` for a proper divisor `d`.
    RankMismatch,
    /// `p | (γ^2 - δ^2)^2 = R(R - 4Q)`.
    DividesDiscriminant,
    DoesNotDivide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitivityReport {
    pub n: u64,
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub prime: BigInt,
    pub is_primitive: bool,
    pub rank: Option<u64>,
    pub reason: PrimitivityReason,
}

pub fn is_primitive_divisor(
    params: &LehmerParams,
    p: &BigInt,
    n: u64,
) -> Result<PrimitivityReport> {
    if !p.is_positive() || !nt::is_prime(p) {
        return domain(format!("is_primitive_divisor: {p} is not prime"));
    }
    if n == 0 {
        return domain("is_primitive_divisor: n must be positive");
    }
    let report = |is_primitive, rank, reason| PrimitivityReport {
        n,
        prime: p.clone(),
        is_primitive,
        rank,
        reason,
    };
    let cheap_rank = || -> Result<Option<u64>> {
        if p.bits() <= 62 {
            rank_of_appearance(params, p)
        } else {
            Ok(None)
        }
    };
    if params.discriminant_product().is_multiple_of(p) {
        return Ok(report(
            false,
            cheap_rank()?,
            PrimitivityReason::DividesDiscriminant,
        ));
    }
    if !u_mod(params, &BigInt::from(n), p).is_zero() {
        return Ok(report(
            false,
            cheap_rank()?,
            PrimitivityReason::DoesNotDivide,
        ));
    }
    // p | u_n, so the rank is the least divisor d of n with p | u_d.
    let rank = divisors(n)
        .into_iter()
        .find(|&d| u_mod(params, &BigInt::from(d), p).is_zero())
        .expect("n itself qualifies");
    if rank == n {
        Ok(report(true, Some(rank), PrimitivityReason::Primitive))
    } else {
        Ok(report(false, Some(rank), PrimitivityReason::RankMismatch))
    }
}

/// Primitive divisors of `u_n`, found without factoring `u_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveDivisors {
    pub n: u64,
    /// Primitive primes, increasing. Complete unless `unfactored` is nonempty.
    #[serde(serialize_with = "ser_big_list")]
    pub primes: Vec<BigInt>,
    /// `|Φ_n(γ, δ)|` with every prime of `n R (R - 4Q)` removed; its prime
    /// factors are exactly the primitive divisors.
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub primitive_part: BigInt,
    #[serde(serialize_with = "ser_big_list")]
    pub unfactored: Vec<BigInt>,
}

impl PrimitiveDivisors {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    pub fn exists(&self) -> bool {
        !self.primitive_part.is_one()
    }
}

pub(crate) fn ser_big_list<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Removes from `value` every prime that divides `by`.
pub(crate) fn strip_support(value: &BigInt, by: &BigInt) -> BigInt {
    let mut v = value.abs();
    loop {
        let g = v.gcd(by);
        if g.is_one() || g.is_zero() {
            return v;
        }
        v /= g;
    }
}

fn primitive_part(params: &LehmerParams, n: u64) -> Result<BigInt> {
    let phi = phi_value(params, n)?;
    let support = params.discriminant_product() * n;
    Ok(strip_support(&phi, &support))
}

pub fn primitive_divisors(params: &LehmerParams, n: u64) -> Result<PrimitiveDivisors> {
    let part = primitive_part(params, n)?;
    let (primes, unfactored) = if part.is_one() {
        (Vec::new(), Vec::new())
    } else {
        match factorize(&part, &FactorBudget::from_env()) {
            Ok(f) => (f.factors.into_iter().map(|(p, _)| p).collect(), Vec::new()),
            Err(FactorError::Partial(pf)) => (
                pf.found.into_iter().map(|(p, _)| p).collect(),
                pf.unfactored,
            ),
            Err(FactorError::Zero) => return invariant("primitive part is zero"),
        }
    };
    Ok(PrimitiveDivisors {
        n,
        primes,
        primitive_part: part,
        unfactored,
    })
}

/// Whether `u_n` has a primitive divisor. With `Q = 1` and `n` outside
/// [`EXCEPTIONAL_INDICES`] the answer is known to be yes without computing.
pub fn has_primitive_divisor(params: &LehmerParams, n: u64) -> Result<bool> {
    if params.q.is_one() && !EXCEPTIONAL_INDICES.contains(&n) {
        return Ok(true);
    }
    has_primitive_divisor_computed(params, n)
}

/// Same question, always decided by computation.
pub fn has_primitive_divisor_computed(params: &LehmerParams, n: u64) -> Result<bool> {
    match n {
        0 => domain("has_primitive_divisor: n must be positive"),
        // u_1 = u_2 = 1
        1 | 2 => Ok(false),
        _ => Ok(!primitive_part(params, n)?.is_one()),
    }
}
