//! The acceptance criteria as runnable checks.
//!
//! Each criterion returns a [`CriterionOutcome`] instead of panicking, so the
//! CLI and the test harness can report every result.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::aurifeuille::{
    applicable, aurifeuillian_pair, expected_symmetry, q_of, two_squares, verify_pair,
};
use crate::lehmer::{
    self, has_primitive_divisor_computed, is_primitive_divisor, phi_value, primitive_divisors,
    rank_of_appearance, u_terms, v_odd, LehmerParams, EXCEPTIONAL_INDICES,
};
use crate::nt::{euler_phi, has_order, is_prime, is_squarefree_i64, legendre, primes_below};
use crate::poly::reflect_identity;
use crate::recsim::{mset_scan, verify_witness, ScanBudget};
use crate::witness::{
    equivalence_harness, find_witness, zsigmondy_witness, QuadraticSeed, Route, Witness,
    WitnessOutcome, ZsigmondyOutcome,
};
use crate::Result;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "odd-type membership for X^2 - X - 1, m in [7, 120]"),
    (2, "discriminant-5 membership, p = 1 mod 4"),
    (
        3,
        "root of order m <=> primitive divisor, |t| <= 5, m <= 40, p <= 600",
    ),
    (4, "reflection, Aurifeuillian and common-divisor grids"),
    (5, "sums of two squares for R = 5"),
    (6, "primitive divisors for Q = 1, |R| <= 20, n <= 40"),
    (7, "prime of order m at a, |a| <= 10, m <= 30"),
    (8, "witnesses with p <= 60 against exhaustive scans"),
    (9, "Lehmer consistency grids"),
];

const KEPT_FAILURES: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub failure_count: u64,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} criterion {}: {} ({} cases, {} failed)",
            self.id, self.title, self.cases, self.failure_count
        );
        for f in &self.failures {
            s.push_str("\n    ");
            s.push_str(f);
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failures: Vec<String>,
    failure_count: u64,
}

impl Tally {
    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(label());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }

    fn finish(self, id: u8) -> CriterionOutcome {
        CriterionOutcome {
            id,
            title: CRITERIA[id as usize - 1].1,
            passed: self.failure_count == 0,
            cases: self.cases,
            failure_count: self.failure_count,
            failures: self.failures,
        }
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn seed(t: i64, c: i8) -> QuadraticSeed {
    QuadraticSeed::from_i64(t, c).expect("valid seed")
}

pub fn odd_type_witnesses() -> Vec<(u64, Result<WitnessOutcome>)> {
    let s = seed(1, -1);
    let g = s.f();
    (7..=120u64)
        .filter(|&m| m != 10 && m % 4 != 0)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| (m, find_witness(&s, &g, m)))
        .collect()
}

pub fn discriminant_witnesses() -> Vec<(QuadraticSeed, u64, Result<WitnessOutcome>)> {
    let cases: Vec<(QuadraticSeed, u64)> = [40u64, 80, 120]
        .into_iter()
        .map(|m| (seed(1, -1), m))
        .chain([20u64, 40, 60].into_iter().map(|m| (seed(3, 1), m)))
        .collect();
    cases
        .into_par_iter()
        .map(|(s, m)| {
            let out = find_witness(&s, &s.f(), m);
            (s, m, out)
        })
        .collect()
}

fn found(out: &Result<WitnessOutcome>) -> Option<&Witness> {
    out.as_ref().ok().and_then(WitnessOutcome::witness)
}

fn describe(out: &Result<WitnessOutcome>) -> String {
    match out {
        Ok(WitnessOutcome::Found(w)) => format!("p = {}, a = {}, route {}", w.p, w.a, w.route),
        Ok(WitnessOutcome::NotCovered(nc)) => format!("not covered: {}", nc.reasons.join("; ")),
        Err(e) => format!("error: {e}"),
    }
}

pub fn criterion1() -> CriterionOutcome {
    let mut t = Tally::default();
    for (m, out) in odd_type_witnesses() {
        let ok = found(&out).is_some_and(|w| w.route == Route::Cond3 && verify_witness(w));
        t.check(ok, || format!("m = {m}: {}", describe(&out)));
    }
    t.finish(1)
}

pub fn criterion2() -> CriterionOutcome {
    let mut t = Tally::default();
    let four = big(4);
    for (s, m, out) in discriminant_witnesses() {
        let ok = found(&out).is_some_and(|w| w.p.mod_floor(&four).is_one() && verify_witness(w));
        t.check(ok, || format!("{s}, m = {m}: {}", describe(&out)));
        let spot = match (s.c, m) {
            (-1, 40) => Some((41, 7)),
            (1, 20) => Some((41, 8)),
            _ => None,
        };
        if let Some((p, a)) = spot {
            let ok = found(&out).is_some_and(|w| w.p == big(p) && w.a == big(a));
            t.check(ok, || {
                format!(
                    "{s}, m = {m}: expected p = {p}, a = {a}; {}",
                    describe(&out)
                )
            });
        }
    }
    t.finish(2)
}

pub fn valid_seeds(t_max: i64) -> Vec<QuadraticSeed> {
    let mut out = Vec::new();
    for t in -t_max..=t_max {
        for c in [-1i8, 1] {
            if let Ok(s) = QuadraticSeed::from_i64(t, c) {
                out.push(s);
            }
        }
    }
    out
}

pub fn criterion3() -> CriterionOutcome {
    let primes: Vec<BigInt> = primes_below(601).into_iter().map(BigInt::from).collect();
    let jobs: Vec<(QuadraticSeed, u64)> = valid_seeds(5)
        .into_iter()
        .flat_map(|s| (1..=40u64).map(move |m| (s.clone(), m)))
        .collect();
    let parts: Vec<Tally> = jobs
        .into_par_iter()
        .map(|(s, m)| {
            let mut t = Tally::default();
            for p in &primes {
                match equivalence_harness(&s, m, p) {
                    Ok(r) => t.check(r.agree, || {
                        format!(
                            "{s}, m = {m}, p = {p}: scan {} vs primitive-divisor condition {}",
                            r.brute_a.map_or("none".into(), |a| format!("a = {a}")),
                            r.condition2
                        )
                    }),
                    Err(e) => t.check(false, || format!("{s}, m = {m}, p = {p}: {e}")),
                }
            }
            t
        })
        .collect();
    let mut t = Tally::default();
    parts.into_iter().for_each(|p| t.merge(p));
    t.finish(3)
}

pub fn aurifeuille_grid() -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    for n in 3..=60u64 {
        for k in -15i64..=15 {
            if is_squarefree_i64(k) && matches!(applicable(n, k), Ok(Some(_))) {
                out.push((n, k));
            }
        }
    }
    out
}

pub fn criterion4() -> CriterionOutcome {
    let mut t = Tally::default();
    for m in 1..=200u64 {
        t.check(reflect_identity(m).holds(), || {
            format!("reflection identity at m = {m}")
        });
    }
    let parts: Vec<Tally> = aurifeuille_grid()
        .into_par_iter()
        .map(|(n, k)| {
            let mut t = Tally::default();
            let pair = match aurifeuillian_pair(n, k) {
                Ok(p) => p,
                Err(e) => {
                    t.check(false, || format!("({n}, {k}): {e}"));
                    return t;
                }
            };
            t.check(verify_pair(&pair), || format!("({n}, {k}): identity"));
            let d = euler_phi(n) as usize / 2;
            let degrees = pair.f.degree() == d && pair.g.degree() + q_of(n) as usize == d;
            t.check(degrees, || format!("({n}, {k}): degrees"));
            t.check((pair.s_f, pair.s_g) == expected_symmetry(n, k), || {
                format!("({n}, {k}): symmetry")
            });
            for x in -5i64..=5 {
                for y in -5i64..=5 {
                    let ok = pair.common_divisor_ok(&big(x), &big(y));
                    t.check(ok, || format!("({n}, {k}): common divisor at ({x}, {y})"));
                }
            }
            t
        })
        .collect();
    parts.into_iter().for_each(|p| t.merge(p));
    t.finish(4)
}

pub fn criterion5() -> CriterionOutcome {
    let mut t = Tally::default();
    let params = LehmerParams::from_i64(5, 1).expect("valid");
    let four = big(4);
    for ell in [20u64, 40, 60] {
        match (
            two_squares(&params, ell, 5, &BigInt::one()),
            phi_value(&params, ell),
        ) {
            (Ok(ts), Ok(phi)) => {
                t.check(&ts.a * &ts.a + &ts.b * &ts.b == phi, || {
                    format!("ell = {ell}: A^2 + B^2 != {phi}")
                });
                if ell == 20 {
                    let ok = phi == big(41) && {
                        let mut ab = [ts.a.abs(), ts.b.abs()];
                        ab.sort();
                        ab == [big(4), big(5)]
                    };
                    t.check(ok, || {
                        format!("ell = 20: got {phi} = {}^2 + {}^2", ts.a, ts.b)
                    });
                }
            }
            (a, b) => t.check(false, || {
                format!("ell = {ell}: {:?} / {:?}", a.err(), b.err())
            }),
        }
        match primitive_divisors(&params, ell) {
            Ok(pd) => {
                t.check(pd.is_complete(), || {
                    format!("ell = {ell}: primitive part not fully factored")
                });
                for p in pd.primes.iter().filter(|p| p.is_odd()) {
                    t.check(p.mod_floor(&four).is_one(), || {
                        format!("ell = {ell}: {p} is 3 mod 4")
                    });
                }
            }
            Err(e) => t.check(false, || format!("ell = {ell}: {e}")),
        }
    }
    t.finish(5)
}

pub fn criterion6() -> CriterionOutcome {
    let mut t = Tally::default();
    for r in -20i64..=20 {
        let Ok(params) = LehmerParams::from_i64(r, 1) else {
            continue;
        };
        for n in (3..=40u64).filter(|n| !EXCEPTIONAL_INDICES.contains(n)) {
            let ok = matches!(has_primitive_divisor_computed(&params, n), Ok(true));
            t.check(ok, || format!("R = {r}, n = {n}: no primitive divisor"));
        }
    }
    for (r, n) in [(5, 6), (5, 10), (5, 12), (-2, 3), (-2, 4), (-1, 5)] {
        let params = LehmerParams::from_i64(r, 1).expect("valid");
        let ok = matches!(has_primitive_divisor_computed(&params, n), Ok(false));
        t.check(ok, || {
            format!("R = {r}, n = {n}: expected no primitive divisor")
        });
    }
    t.finish(6)
}

pub fn criterion7() -> CriterionOutcome {
    let mut t = Tally::default();
    for a in (-10i64..=10).filter(|a| a.abs() > 1) {
        let ab = big(a);
        for m in 1..=30u64 {
            match zsigmondy_witness(&ab, m) {
                Ok(ZsigmondyOutcome::Prime { p }) => {
                    let ok = is_prime(&p)
                        && has_order(&ab, m, &p)
                        && !crate::witness::is_listed_exception(&ab, m);
                    t.check(ok, || format!("(a, m) = ({a}, {m}): p = {p}"));
                }
                Ok(ZsigmondyOutcome::Exception { listed }) => {
                    t.check(listed, || {
                        format!("(a, m) = ({a}, {m}): no prime of order m, pair not listed")
                    });
                }
                Err(e) => t.check(false, || format!("(a, m) = ({a}, {m}): {e}")),
            }
        }
    }
    t.finish(7)
}

pub fn criterion8() -> CriterionOutcome {
    let mut t = Tally::default();
    let limit = 60u64;
    let mut by_g: BTreeMap<String, Vec<Witness>> = BTreeMap::new();
    let all = odd_type_witnesses()
        .into_iter()
        .map(|(_, o)| o)
        .chain(discriminant_witnesses().into_iter().map(|(_, _, o)| o));
    for out in all {
        match out {
            Ok(WitnessOutcome::Found(w)) if w.p <= big(limit as i64) => {
                by_g.entry(w.g.to_string()).or_default().push(w)
            }
            Ok(_) => {}
            Err(e) => t.check(false, || format!("witness search failed: {e}")),
        }
    }
    for ws in by_g.values() {
        let g = &ws[0].g;
        match mset_scan(g, limit, &ScanBudget::default()) {
            Ok(scan) => {
                t.check(!scan.partial, || {
                    format!("scan of {} incomplete", g.pretty())
                });
                for w in ws {
                    let p = w.p.to_string().parse::<u64>().unwrap_or(0);
                    t.check(scan.has_count_at(p, w.m), || {
                        format!("{}: m = {} not seen at modulus {p}", g.pretty(), w.m)
                    });
                }
            }
            Err(e) => t.check(false, || format!("scan of {}: {e}", g.pretty())),
        }
    }
    t.check(!by_g.is_empty(), || "no witnesses with small p".into());
    t.finish(8)
}

fn lehmer_grid(r_max: i64) -> Vec<LehmerParams> {
    let mut out = Vec::new();
    for r in -r_max..=r_max {
        for q in [-1i64, 1] {
            if let Ok(p) = LehmerParams::from_i64(r, q) {
                out.push(p);
            }
        }
    }
    out
}

fn product_formula(t: &mut Tally, params: &LehmerParams) {
    let terms = u_terms(params, 40);
    let phis: Vec<Option<BigInt>> = (0..=40u64)
        .map(|d| {
            if d >= 3 {
                phi_value(params, d).ok()
            } else {
                None
            }
        })
        .collect();
    for n in 1..=40u64 {
        let lo = if n % 2 == 1 { 2 } else { 3 };
        let mut prod = Some(BigInt::one());
        for d in crate::nt::divisors(n).into_iter().filter(|&d| d >= lo) {
            prod = match (prod, &phis[d as usize]) {
                (Some(acc), Some(v)) => Some(acc * v),
                _ => None,
            };
        }
        let ok = prod.as_ref() == Some(&terms[n as usize]);
        t.check(ok, || {
            format!(
                "(R, Q) = ({}, {}), n = {n}: product formula",
                params.r, params.q
            )
        });
    }
}

fn p1_p3_p4_p6(t: &mut Tally, params: &LehmerParams) {
    let terms = u_terms(params, 60);
    let phis: Vec<Option<BigInt>> = (0..=60u64)
        .map(|d| {
            if d >= 3 {
                phi_value(params, d).ok()
            } else {
                None
            }
        })
        .collect();
    let (r, q) = (&params.r, &params.q);
    let disc = params.discriminant_product();
    for p in primes_below(101).into_iter().map(u64::from) {
        let pb = BigInt::from(p);
        let rank = match rank_of_appearance(params, &pb) {
            Ok(r) => r,
            Err(e) => {
                t.check(false, || format!("({r}, {q}), p = {p}: {e}"));
                continue;
            }
        };
        let q_div = q.is_multiple_of(&pb);
        for n in 1..=60u64 {
            let lhs = terms[n as usize].is_multiple_of(&pb);
            let rhs = !q_div && rank.is_some_and(|k| n % k == 0);
            t.check(lhs == rhs, || format!("p1 at ({r}, {q}), p = {p}, n = {n}"));
        }
        if p == 2 && r.is_odd() && q.is_odd() && (r - q * 4u32).is_odd() {
            t.check(rank == Some(3), || {
                format!("p3 at ({r}, {q}): rank {rank:?}")
            });
        }
        if p != 2 && !q_div && !r.is_multiple_of(&pb) {
            let ok = match (legendre(&disc, &pb), rank) {
                (Ok(l), Some(k)) => (p as i64 - l as i64).rem_euclid(k as i64) == 0,
                _ => false,
            };
            t.check(ok, || format!("p4 at ({r}, {q}), p = {p}: rank {rank:?}"));
        }
        for n in 3..=60u64 {
            let prim = is_primitive_divisor(params, &pb, n).map(|rep| rep.is_primitive);
            let rhs = phis[n as usize]
                .as_ref()
                .map(|v| v.is_multiple_of(&pb) && (p % n == 1 || p % n == n - 1));
            let ok = matches!((prim, rhs), (Ok(a), Some(b)) if a == b);
            t.check(ok, || format!("p6 at ({r}, {q}), p = {p}, n = {n}"));
        }
    }
}

fn odd_identity(t: &mut Tally, params: &LehmerParams) {
    let (r, q) = (&params.r, &params.q);
    for n in (1..=39u64).step_by(2) {
        let ok = match v_odd(params, n) {
            Ok(v) => {
                let u = lehmer::u(params, n);
                r * &v * &v - (r - q * 4u32) * &u * &u == BigInt::from(4) * q.pow(n as u32)
            }
            Err(_) => false,
        };
        t.check(ok, || format!("odd identity at ({r}, {q}), n = {n}"));
    }
}

pub fn criterion9() -> CriterionOutcome {
    let mut parts: Vec<Tally> = lehmer_grid(20)
        .into_par_iter()
        .map(|params| {
            let mut t = Tally::default();
            product_formula(&mut t, &params);
            odd_identity(&mut t, &params);
            t
        })
        .collect();
    parts.extend(
        lehmer_grid(12)
            .into_par_iter()
            .map(|params| {
                let mut t = Tally::default();
                p1_p3_p4_p6(&mut t, &params);
                t
            })
            .collect::<Vec<_>>(),
    );
    let mut t = Tally::default();
    parts.into_iter().for_each(|p| t.merge(p));
    t.finish(9)
}

pub fn run(id: u8) -> Option<CriterionOutcome> {
    Some(match id {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(),
        5 => criterion5(),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        9 => criterion9(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|&(id, _)| run(id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn tally_keeps_first_failures() {
        let mut t = Tally::default();
        for i in 0..20 {
            t.check(i % 2 == 0, || format!("case {i}"));
        }
        let out = t.finish(1);
        assert!(!out.passed);
        assert_eq!(
            (out.cases, out.failure_count, out.failures.len()),
            (20, 10, 10)
        );
        assert_eq!(out.failures[0], "case 1");
    }

    #[test]
    fn seed_grid_size() {
        // c = -1: t in ±1..±5; c = +1: |t| in 3..5
        assert_eq!(valid_seeds(5).len(), 16);
    }

    #[test]
    fn zero_not_in_grid() {
        assert!(valid_seeds(5).iter().all(|s| !s.t.is_zero()));
    }
}
