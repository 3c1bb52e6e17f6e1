//! Witnesses `(m, p, a, g)` with `p | f(a)`, `ord_p(a) = m` and `f | g`.
//!
//! Search order for a seed `f = X^2 - tX + c`:
//!
//! 1. If `m` is covered by one of the existence theorems (odd-type `m` for
//!    `c = -1`, or `m` a multiple of `8 D_0` / `4 D_0`), `p` is the smallest
//!    suitable primitive divisor of the matching Lehmer term.
//! 2. Otherwise the primes `p ≡ 1 (mod m)` of `Res(f, Φ_m)` are tried.
//! 3. Failing both, the result is "not covered", never a non-membership claim.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, invariant, Error, Result};
use crate::lehmer::{self, is_primitive_divisor, primitive_divisors, LehmerParams};
use crate::nt::{
    self, factorize, has_order, is_prime, sqrt_mod, squarefree_split, FactorBudget, FactorError,
};
use crate::poly::{cyclotomic, res_eps, IntPoly};
use crate::recsim;

/// `f = X^2 - tX + c` with `c = ±1` and `α/β` not a root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticSeed {
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub t: BigInt,
    pub c: i8,
}

impl QuadraticSeed {
    pub fn new(t: BigInt, c: i8) -> Result<Self> {
        match c {
            -1 if t.is_zero() => domain("seed: t = 0 with c = -1 makes α/β = -1"),
            1 if t.abs() < BigInt::from(3) => domain(format!(
                "seed: |t| = {} < 3 with c = +1 makes α/β a root of unity",
                t.abs()
            )),
            -1 | 1 => Ok(QuadraticSeed { t, c }),
            _ => domain(format!("seed: c = {c} must be ±1")),
        }
    }

    pub fn from_i64(t: i64, c: i8) -> Result<Self> {
        Self::new(BigInt::from(t), c)
    }

    /// Reads `t` and `c` off a monic quadratic.
    pub fn from_poly(f: &IntPoly) -> Result<Self> {
        if f.degree() != Some(2) || !f.is_monic() {
            return domain(format!("seed: {} is not a monic quadratic", f.pretty()));
        }
        let c = f.coeff(0).to_i8().filter(|c| c.abs() == 1);
        match c {
            Some(c) => Self::new(-f.coeff(1), c),
            None => domain(format!("seed: constant term of {} is not ±1", f.pretty())),
        }
    }

    pub fn f(&self) -> IntPoly {
        IntPoly::new(vec![BigInt::from(self.c), -&self.t, BigInt::one()])
    }

    /// `(α - β)^2 = t^2 - 4c`
    pub fn discriminant(&self) -> BigInt {
        &self.t * &self.t - 4 * self.c as i32
    }

    pub fn n_of_m(&self, m: u64) -> u64 {
        if self.c == -1 {
            m / m.gcd(&2)
        } else {
            m
        }
    }

    fn f_mod(&self, x: u64, p: u64) -> u64 {
        let p = p as i128;
        let t = self.t.mod_floor(&BigInt::from(p)).to_i128().unwrap();
        let x = x as i128;
        (x * x - t * x + self.c as i128).rem_euclid(p) as u64
    }
}

impl fmt::Display for QuadraticSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t = {}, c = {:+})", self.t, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Mapping {
    pub params: LehmerParams,
    /// `true` when `n = m / (m, 2)`, `false` when `n = m`.
    pub halve_even: bool,
}

impl Theorem2Mapping {
    pub fn n_of_m(&self, m: u64) -> u64 {
        if self.halve_even {
            m / m.gcd(&2)
        } else {
            m
        }
    }
}

/// `c = -1`: `γ = α`, `δ = -β`, so `R = t^2 + 4`. `c = +1`: `γ = √α`,
/// `δ = 1/√α`, so `R = t + 2`. In both cases `Q = 1`.
pub fn mapping(seed: &QuadraticSeed) -> Result<Theorem2Mapping> {
    let seed = QuadraticSeed::new(seed.t.clone(), seed.c)?;
    let r = if seed.c == -1 {
        &seed.t * &seed.t + 4
    } else {
        &seed.t + 2
    };
    Ok(Theorem2Mapping {
        params: LehmerParams::new(r, BigInt::one())?,
        halve_even: seed.c == -1,
    })
}

fn congruent_one(p: &BigInt, m: u64) -> bool {
    p.mod_floor(&BigInt::from(m)).is_one() || m == 1
}

/// `p | Res(f, Φ_m)` and `p ≡ 1 (mod m)`.
pub fn criterion_resultant(seed: &QuadraticSeed, m: u64, p: &BigInt) -> Result<bool> {
    if m == 0 {
        return domain("criterion_resultant: m must be positive");
    }
    let res = res_eps(&seed.f(), m, 1)?;
    Ok(res.is_multiple_of(p) && congruent_one(p, m))
}

/// `p` is a primitive divisor of `u_n` and `p ≡ 1 (mod m)`.
pub fn condition2(seed: &QuadraticSeed, m: u64, p: &BigInt) -> Result<bool> {
    if m == 0 {
        return domain("condition2: m must be positive");
    }
    let map = mapping(seed)?;
    let rep = is_primitive_divisor(&map.params, p, map.n_of_m(m))?;
    Ok(rep.is_primitive && congruent_one(p, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Cond3,
    Cond4,
    Cond5,
    Resultant,
    Zsigmondy,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Route::Cond3 => "cond3",
            Route::Cond4 => "cond4",
            Route::Cond5 => "cond5",
            Route::Resultant => "resultant",
            Route::Zsigmondy => "zsigmondy",
        };
        f.write_str(s)
    }
}

/// The first sufficient route whose hypotheses hold literally:
/// `cond3` (c = -1, 4 ∤ m, m ∉ {3, 6}, p primitive for `u_{m/(m,2)}`),
/// `cond4` (c = -1, 8 | m, p primitive for `u_{m/2}`, p ≡ 1 mod 4),
/// `cond5` (c = +1, 4 | m, p primitive for `u_m`, p ≡ 1 mod 4).
pub fn sufficient_route(seed: &QuadraticSeed, m: u64, p: &BigInt) -> Result<Option<Route>> {
    if m == 0 {
        return domain("sufficient_route: m must be positive");
    }
    let params = mapping(seed)?.params;
    let prim =
        |n: u64| -> Result<bool> { Ok(n > 0 && is_primitive_divisor(&params, p, n)?.is_primitive) };
    let one_mod_4 = p.mod_floor(&BigInt::from(4)).is_one();
    if seed.c == -1 {
        if !m.is_multiple_of(4) && m != 3 && m != 6 && prim(m / m.gcd(&2))? {
            return Ok(Some(Route::Cond3));
        }
        if m.is_multiple_of(8) && one_mod_4 && prim(m / 2)? {
            return Ok(Some(Route::Cond4));
        }
    } else if m.is_multiple_of(4) && one_mod_4 && prim(m)? {
        return Ok(Some(Route::Cond5));
    }
    Ok(None)
}

/// Smallest root `a` of `f` modulo `p` with `ord_p(a) = m`.
pub fn find_a(seed: &QuadraticSeed, m: u64, p: &BigInt) -> Result<BigInt> {
    if !p.is_positive() || !is_prime(p) {
        return domain(format!("find_a: {p} is not prime"));
    }
    let mut roots: Vec<BigInt> = if p == &BigInt::from(2) {
        (0u64..2)
            .filter(|&x| seed.f_mod(x, 2) == 0)
            .map(BigInt::from)
            .collect()
    } else {
        match sqrt_mod(&seed.discriminant(), p)? {
            None => Vec::new(),
            Some(s) => {
                let half: BigInt = (p + 1u32) / 2u32;
                let r1 = ((&seed.t + &s) * &half).mod_floor(p);
                let r2 = ((&seed.t - &s) * &half).mod_floor(p);
                vec![r1, r2]
            }
        }
    };
    roots.sort();
    roots.dedup();
    for a in &roots {
        if !seed.f().eval_mod(a, p).is_zero() {
            return invariant(format!("find_a: {a} is not a root of f modulo {p}"));
        }
    }
    match roots.into_iter().find(|a| has_order(a, m, p)) {
        Some(a) => Ok(a),
        None => invariant(format!("find_a: no root of f modulo {p} has order {m}")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

/// A certified member `m` of the residue-count set of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub m: u64,
    pub p: BigInt,
    pub a: BigInt,
    pub g: IntPoly,
    pub route: Route,
    pub checks: Vec<Check>,
}

impl Witness {
    /// `1, a, ..., a^{r-1}` modulo `p`.
    pub fn init(&self) -> Result<Vec<BigInt>> {
        Ok(recsim::lemma1_spec(&self.g, &self.a, &self.p)?.init)
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("witness JSON: {e}")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Int(i64),
    Str(String),
}

impl IntRepr {
    fn to_big(&self) -> std::result::Result<BigInt, String> {
        match self {
            IntRepr::Int(v) => Ok(BigInt::from(*v)),
            IntRepr::Str(s) => s
                .trim()
                .parse()
                .map_err(|e| format!("bad integer {s:?}: {e}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    m: u64,
    p: IntRepr,
    a: IntRepr,
    g: Vec<IntRepr>,
    route: Route,
    checks: Vec<Check>,
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessJson {
            m: self.m,
            p: IntRepr::Str(self.p.to_string()),
            a: IntRepr::Str(self.a.to_string()),
            g: self
                .g
                .coeffs()
                .iter()
                .map(|c| IntRepr::Str(c.to_string()))
                .collect(),
            route: self.route,
            checks: self.checks.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = WitnessJson::deserialize(d)?;
        let g =
            j.g.iter()
                .map(IntRepr::to_big)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(D::Error::custom)?;
        Ok(Witness {
            m: j.m,
            p: j.p.to_big().map_err(D::Error::custom)?,
            a: j.a.to_big().map_err(D::Error::custom)?,
            g: IntPoly::new(g),
            route: j.route,
            checks: j.checks,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotCovered {
    pub m: u64,
    pub reasons: Vec<String>,
    /// Set when a factoring budget ran out before a decision.
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(Witness),
    NotCovered(NotCovered),
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WitnessOutcome::Found(w) => Some(w),
            WitnessOutcome::NotCovered(_) => None,
        }
    }
}

/// Which existence theorem covers `m`, if any, with the Lehmer index and
/// whether `p ≡ 1 (mod 4)` is required.
fn theorem_route(
    seed: &QuadraticSeed,
    m: u64,
    reasons: &mut Vec<String>,
) -> Result<Option<(Route, u64, bool)>> {
    if seed.c == -1 {
        if m >= 7 && m != 10 && !m.is_multiple_of(4) {
            return Ok(Some((Route::Cond3, m / m.gcd(&2), false)));
        }
        reasons.push(format!(
            "odd-type theorem needs m >= 7, m != 10 and 4 ∤ m; got m = {m}"
        ));
    } else {
        reasons.push("odd-type theorem needs c = -1".into());
    }
    let split = squarefree_split(&seed.discriminant(), &FactorBudget::from_env())?;
    let d0 = split.d0;
    if d0 < BigInt::from(5) || !d0.mod_floor(&BigInt::from(4)).is_one() {
        reasons.push(format!(
            "discriminant theorem needs D0 >= 5, D0 ≡ 1 (mod 4); D0 = {d0}"
        ));
        return Ok(None);
    }
    let (mult, route, n) = if seed.c == -1 {
        (8, Route::Cond4, m / 2)
    } else {
        (4, Route::Cond5, m)
    };
    let step = &d0 * mult;
    if BigInt::from(m).is_multiple_of(&step) {
        return Ok(Some((route, n, true)));
    }
    reasons.push(format!(
        "discriminant theorem needs {step} | m; got m = {m}"
    ));
    Ok(None)
}

fn primes_of(n: &BigInt) -> (Vec<BigInt>, bool) {
    if n.is_zero() {
        return (Vec::new(), false);
    }
    match factorize(n, &FactorBudget::from_env()) {
        Ok(f) => (f.factors.into_iter().map(|(p, _)| p).collect(), true),
        Err(FactorError::Partial(pf)) => (pf.found.into_iter().map(|(p, _)| p).collect(), false),
        Err(FactorError::Zero) => (Vec::new(), false),
    }
}

/// Builds and checks a witness for a chosen `p`. Any failing check is a bug.
fn assemble(seed: &QuadraticSeed, g: &IntPoly, m: u64, p: BigInt, route: Route) -> Result<Witness> {
    let a = find_a(seed, m, &p)?;
    let mut checks = vec![
        Check {
            name: "f-divides-g".into(),
            ok: g.divisible_by_monic(&seed.f())?,
        },
        Check {
            name: "p-prime".into(),
            ok: is_prime(&p),
        },
        Check {
            name: "p-divides-g(a)".into(),
            ok: g.eval_mod(&a, &p).is_zero(),
        },
        Check {
            name: "order-of-a-is-m".into(),
            ok: has_order(&a, m, &p),
        },
        Check {
            name: "p-congruent-1-mod-m".into(),
            ok: congruent_one(&p, m),
        },
        Check {
            name: "resultant-criterion".into(),
            ok: criterion_resultant(seed, m, &p)?,
        },
    ];
    // below index 3 there are no primitive divisors, so the primitive-divisor condition cannot apply
    if seed.n_of_m(m) >= 3 {
        checks.push(Check {
            name: "primitive-divisor-condition".into(),
            ok: condition2(seed, m, &p)?,
        });
    }
    match route {
        Route::Cond3 | Route::Cond4 | Route::Cond5 => checks.push(Check {
            name: "route-hypotheses".into(),
            ok: sufficient_route(seed, m, &p)? == Some(route),
        }),
        _ => {}
    }
    let mut w = Witness {
        m,
        p,
        a,
        g: g.clone(),
        route,
        checks,
    };
    let sim = recsim::verify_witness(&w);
    w.checks.push(Check {
        name: "recurrence-simulation".into(),
        ok: sim,
    });
    if !w.all_ok() {
        let failed: Vec<_> = w
            .checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.name.as_str())
            .collect();
        return invariant(format!(
            "witness for m = {m}, p = {} failed {failed:?}",
            w.p
        ));
    }
    Ok(w)
}

pub fn find_witness(seed: &QuadraticSeed, g: &IntPoly, m: u64) -> Result<WitnessOutcome> {
    if m == 0 {
        return domain("find_witness: m must be positive");
    }
    let f = seed.f();
    if !g.is_monic() {
        return domain(format!("find_witness: g = {} is not monic", g.pretty()));
    }
    if !g.divisible_by_monic(&f)? {
        return domain(format!(
            "find_witness: f = {} does not divide g = {}",
            f.pretty(),
            g.pretty()
        ));
    }
    let map = mapping(seed)?;
    let mut reasons = Vec::new();
    let mut budget_exhausted = false;

    let covered = match theorem_route(seed, m, &mut reasons) {
        Ok(r) => r,
        Err(Error::Budget { cofactor }) => {
            budget_exhausted = true;
            reasons.push(format!(
                "could not split the discriminant (cofactor {cofactor})"
            ));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some((route, n, need_1_mod_4)) = covered {
        let prim = primitive_divisors(&map.params, n)?;
        let four = BigInt::from(4);
        let pick = prim
            .primes
            .iter()
            .filter(|p| !need_1_mod_4 || p.mod_floor(&four).is_one())
            .find(|p| congruent_one(p, m))
            .cloned();
        if let Some(p) = pick {
            return Ok(WitnessOutcome::Found(assemble(seed, g, m, p, route)?));
        }
        if !prim.is_complete() {
            budget_exhausted = true;
        }
        reasons.push(format!(
            "{route}: no qualifying primitive divisor of u_{n} found"
        ));
    }

    let res = res_eps(&f, m, 1)?;
    let (primes, complete) = primes_of(&res);
    if !complete {
        budget_exhausted = true;
    }
    if let Some(p) = primes.into_iter().find(|p| congruent_one(p, m)) {
        return Ok(WitnessOutcome::Found(assemble(
            seed,
            g,
            m,
            p,
            Route::Resultant,
        )?));
    }
    reasons.push(format!(
        "resultant: no prime p ≡ 1 (mod {m}) divides Res(f, Φ_{m}) = {res}"
    ));
    Ok(WitnessOutcome::NotCovered(NotCovered {
        m,
        reasons,
        budget_exhausted,
    }))
}

/// Whether `(a, m)` is one of the listed exceptions to the existence of a
/// prime of order `m`: `m = 2` with `a = ±2^v - 1` (`v >= 1`), `(-2, 3)`,
/// `(2, 6)`.
pub fn is_listed_exception(a: &BigInt, m: u64) -> bool {
    let pow2 = |x: &BigInt| x.is_positive() && (x & (x - 1u32)).is_zero() && x > &BigInt::one();
    match m {
        2 => pow2(&(a + 1u32)) || pow2(&(-(a + 1u32))),
        3 => a == &BigInt::from(-2),
        6 => a == &BigInt::from(2),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ZsigmondyOutcome {
    Prime {
        #[serde(serialize_with = "crate::nt::ser_bigint")]
        p: BigInt,
    },
    /// No prime has order `m` at `a`; `listed` says whether the pair is one of
    /// the named exceptions.
    Exception { listed: bool },
}

/// The smallest prime `p` with `ord_p(a) = m`. These are exactly the primes of
/// `Φ_m(a)` not dividing `m`.
pub fn zsigmondy_witness(a: &BigInt, m: u64) -> Result<ZsigmondyOutcome> {
    if a.abs() <= BigInt::one() {
        return domain(format!("zsigmondy: a = {a} must avoid -1, 0, 1"));
    }
    if m == 0 {
        return domain("zsigmondy: m must be positive");
    }
    let value = cyclotomic(m).eval(a);
    let part = lehmer::strip_support(&value, &BigInt::from(m));
    if part.is_one() {
        return Ok(ZsigmondyOutcome::Exception {
            listed: is_listed_exception(a, m),
        });
    }
    let (primes, _) = primes_of(&part);
    let Some(p) = primes.into_iter().next() else {
        return Err(Error::Budget { cofactor: part });
    };
    if !has_order(a, m, &p) {
        return invariant(format!("zsigmondy: ord_{p}({a}) != {m}"));
    }
    Ok(ZsigmondyOutcome::Prime { p })
}

/// Witness through a linear factor `X - root` of `g`.
pub fn zsigmondy_certificate(g: &IntPoly, root: &BigInt, m: u64) -> Result<WitnessOutcome> {
    if !g.is_monic() || !g.eval(root).is_zero() {
        return domain(format!(
            "zsigmondy: {root} is not a root of monic {}",
            g.pretty()
        ));
    }
    match zsigmondy_witness(root, m)? {
        ZsigmondyOutcome::Prime { p } => {
            let a = root.mod_floor(&p);
            let mut w = Witness {
                m,
                p: p.clone(),
                a: a.clone(),
                g: g.clone(),
                route: Route::Zsigmondy,
                checks: vec![
                    Check {
                        name: "p-prime".into(),
                        ok: is_prime(&p),
                    },
                    Check {
                        name: "p-divides-g(a)".into(),
                        ok: g.eval_mod(&a, &p).is_zero(),
                    },
                    Check {
                        name: "order-of-a-is-m".into(),
                        ok: has_order(&a, m, &p),
                    },
                ],
            };
            let sim = recsim::verify_witness(&w);
            w.checks.push(Check {
                name: "recurrence-simulation".into(),
                ok: sim,
            });
            if !w.all_ok() {
                return invariant(format!("zsigmondy witness for m = {m} failed its checks"));
            }
            Ok(WitnessOutcome::Found(w))
        }
        ZsigmondyOutcome::Exception { listed } => Ok(WitnessOutcome::NotCovered(NotCovered {
            m,
            reasons: vec![format!(
                "no prime has order {m} at {root} ({} exception)",
                if listed { "listed" } else { "unlisted" }
            )],
            budget_exhausted: false,
        })),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub m: u64,
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub p: BigInt,
    /// Smallest `a` with `p | f(a)` and `ord_p(a) = m`, by exhaustive scan.
    pub brute_a: Option<u64>,
    pub condition2: bool,
    pub resultant_criterion: bool,
    pub agree: bool,
}

/// Residues below `p` that are roots of `f` with order `m`, by scanning.
pub fn brute_force_a(seed: &QuadraticSeed, m: u64, p: u64) -> Option<u64> {
    (1..p).find(|&x| {
        if seed.f_mod(x, p) != 0 {
            return false;
        }
        let mut y = x;
        let mut k = 1;
        while y != 1 && k <= m {
            y = nt::mul_mod(y, x, p);
            k += 1;
        }
        y == 1 && k == m
    })
}

/// Compares an exhaustive scan for a root of order `m` with the
/// primitive-divisor condition.
pub fn equivalence_harness(seed: &QuadraticSeed, m: u64, p: &BigInt) -> Result<EquivalenceReport> {
    let Some(pu) = p.to_u64().filter(|&v| v < 1 << 32) else {
        return domain(format!("equivalence_harness: p = {p} is too large to scan"));
    };
    if !nt::is_prime_u64(pu) {
        return domain(format!("equivalence_harness: {p} is not prime"));
    }
    let brute_a = brute_force_a(seed, m, pu);
    let c2 = condition2(seed, m, p)?;
    Ok(EquivalenceReport {
        m,
        p: p.clone(),
        brute_a,
        condition2: c2,
        resultant_criterion: criterion_resultant(seed, m, p)?,
        agree: brute_a.is_some() == c2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn seed(t: i64, c: i8) -> QuadraticSeed {
        QuadraticSeed::from_i64(t, c).unwrap()
    }

    #[test]
    fn mapping_examples() {
        let m = mapping(&seed(1, -1)).unwrap();
        assert_eq!((m.params.r.clone(), m.n_of_m(14)), (big(5), 7));
        let m = mapping(&seed(3, 1)).unwrap();
        assert_eq!((m.params.r.clone(), m.n_of_m(20)), (big(5), 20));
        assert!(QuadraticSeed::from_i64(0, -1).is_err());
        assert!(QuadraticSeed::from_i64(2, 1).is_err());
        assert!(QuadraticSeed::from_i64(1, 2).is_err());
    }

    #[test]
    fn from_poly_roundtrip() {
        let s = QuadraticSeed::from_poly(&IntPoly::from_i64s(&[-1, -1, 1])).unwrap();
        assert_eq!(s, seed(1, -1));
        assert!(QuadraticSeed::from_poly(&IntPoly::from_i64s(&[2, -1, 1])).is_err());
    }

    #[test]
    fn criteria_examples() {
        let s = seed(1, -1);
        assert!(criterion_resultant(&s, 7, &big(29)).unwrap());
        assert!(!criterion_resultant(&s, 7, &big(13)).unwrap());
        assert!(!criterion_resultant(&s, 5, &big(29)).unwrap());
        assert!(condition2(&s, 7, &big(29)).unwrap());
        assert!(condition2(&s, 14, &big(29)).unwrap());
        assert!(condition2(&seed(3, 1), 20, &big(41)).unwrap());
    }

    #[test]
    fn route_examples() {
        let s = seed(1, -1);
        assert_eq!(
            sufficient_route(&s, 7, &big(29)).unwrap(),
            Some(Route::Cond3)
        );
        assert_eq!(
            sufficient_route(&s, 40, &big(41)).unwrap(),
            Some(Route::Cond4)
        );
        assert_eq!(
            sufficient_route(&seed(3, 1), 20, &big(41)).unwrap(),
            Some(Route::Cond5)
        );
        assert_eq!(sufficient_route(&s, 7, &big(13)).unwrap(), None);
    }

    #[test]
    fn find_a_examples() {
        let s = seed(1, -1);
        assert_eq!(find_a(&s, 7, &big(29)).unwrap(), big(24));
        assert_eq!(find_a(&s, 14, &big(29)).unwrap(), big(6));
        assert_eq!(find_a(&seed(3, 1), 20, &big(41)).unwrap(), big(8));
        assert!(find_a(&s, 5, &big(29)).is_err());
    }

    #[test]
    fn find_witness_examples() {
        let s = seed(1, -1);
        let f = s.f();
        let w = find_witness(&s, &f, 7).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(
            (w.p.clone(), w.a.clone(), w.route),
            (big(29), big(24), Route::Cond3)
        );
        let w = find_witness(&s, &f, 40).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(
            (w.p.clone(), w.a.clone(), w.route),
            (big(41), big(7), Route::Cond4)
        );

        let w = find_witness(&s, &f, 10).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(
            (w.p.clone(), w.a.clone(), w.route),
            (big(11), big(8), Route::Resultant)
        );

        match find_witness(&s, &f, 2).unwrap() {
            WitnessOutcome::NotCovered(nc) => assert!(!nc.reasons.is_empty()),
            other => panic!("expected not-covered, got {other:?}"),
        }
        assert!(find_witness(&s, &IntPoly::from_i64s(&[1, 1, 1]), 7).is_err());
    }

    #[test]
    fn witness_json_roundtrip() {
        let s = seed(1, -1);
        let w = find_witness(&s, &s.f(), 7)
            .unwrap()
            .witness()
            .unwrap()
            .clone();
        let json = w.to_json();
        assert!(json.starts_with(
            r#"{"m":7,"p":"29","a":"24","g":["-1","-1","1"],"route":"cond3","checks":["#
        ));
        assert_eq!(Witness::from_json(&json).unwrap(), w);
        let loose = r#"{"m":7,"p":29,"a":"24","g":[-1,-1,1],"route":"cond3","checks":[]}"#;
        let w2 = Witness::from_json(loose).unwrap();
        assert!(recsim::verify_witness(&w2));
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(
            zsigmondy_witness(&big(2), 4).unwrap(),
            ZsigmondyOutcome::Prime { p: big(5) }
        );
        assert_eq!(
            zsigmondy_witness(&big(2), 6).unwrap(),
            ZsigmondyOutcome::Exception { listed: true }
        );
        assert_eq!(
            zsigmondy_witness(&big(3), 2).unwrap(),
            ZsigmondyOutcome::Exception { listed: true }
        );
        assert!(is_listed_exception(&big(-3), 2));
        assert!(is_listed_exception(&big(7), 2));
        assert!(!is_listed_exception(&big(5), 2));
        assert!(zsigmondy_witness(&big(1), 3).is_err());
    }

    #[test]
    fn harness_examples() {
        let r = equivalence_harness(&seed(1, -1), 7, &big(29)).unwrap();
        assert!(r.agree && r.condition2 && r.brute_a == Some(24));
        let r = equivalence_harness(&seed(1, -1), 7, &big(13)).unwrap();
        assert!(r.agree && !r.condition2 && r.brute_a.is_none());
        let r = equivalence_harness(&seed(3, 1), 20, &big(41)).unwrap();
        assert!(r.agree && r.condition2);
    }
}
