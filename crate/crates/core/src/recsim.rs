//! Integer linear recurrences modulo `M`: orbits, residue counts, and the
//! exhaustive scan used as an independent oracle for witnesses.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::poly::IntPoly;
use crate::witness::Witness;

/// `s_n = c_1 s_{n-1} + ... + c_r s_{n-r}` modulo `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceSpec {
    #[serde(serialize_with = "crate::lehmer::ser_big_list")]
    pub coeffs: Vec<BigInt>,
    #[serde(serialize_with = "crate::lehmer::ser_big_list")]
    pub init: Vec<BigInt>,
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub modulus: BigInt,
}

impl RecurrenceSpec {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// The first `count` terms, reduced modulo `M`.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        let m = &self.modulus;
        let r = self.order();
        let mut s: Vec<BigInt> = self.init.iter().map(|x| x.mod_floor(m)).collect();
        while s.len() < count {
            let n = s.len();
            let next = (1..=r).fold(BigInt::zero(), |acc, i| {
                acc + &self.coeffs[i - 1] * &s[n - i]
            });
            s.push(next.mod_floor(m));
        }
        s.truncate(count);
        s
    }
}

/// Coefficients of `g = X^r - c_1 X^{r-1} - ... - c_r`.
pub fn coeffs_of(g: &IntPoly) -> Result<Vec<BigInt>> {
    if !g.is_monic() {
        return domain(format!("recurrence: g = {} is not monic", g.pretty()));
    }
    let r = g.degree().unwrap();
    if r == 0 {
        return domain("recurrence: g is constant");
    }
    Ok((1..=r).map(|i| -g.coeff(r - i)).collect())
}

pub fn spec_from_poly(g: &IntPoly, init: &[BigInt], modulus: &BigInt) -> Result<RecurrenceSpec> {
    let coeffs = coeffs_of(g)?;
    if init.len() != coeffs.len() {
        return domain(format!(
            "recurrence: {} initial terms for a polynomial of degree {}",
            init.len(),
            coeffs.len()
        ));
    }
    if modulus < &BigInt::from(2) {
        return domain(format!("recurrence: modulus {modulus} < 2"));
    }
    Ok(RecurrenceSpec {
        coeffs,
        init: init.to_vec(),
        modulus: modulus.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub distinct: usize,
    #[serde(serialize_with = "crate::lehmer::ser_big_list")]
    pub residues: Vec<BigInt>,
    pub tail_length: u64,
    pub period: u64,
}

/// Walks the state vectors until one repeats.
pub fn orbit(spec: &RecurrenceSpec) -> OrbitSummary {
    let m = &spec.modulus;
    let r = spec.order();
    let mut state: Vec<BigInt> = spec.init.iter().map(|x| x.mod_floor(m)).collect();
    let mut seen: HashMap<Vec<BigInt>, u64> = HashMap::new();
    let mut residues = BTreeSet::new();
    let mut step = 0u64;
    loop {
        if let Some(&first) = seen.get(&state) {
            return OrbitSummary {
                distinct: residues.len(),
                residues: residues.into_iter().collect(),
                tail_length: first,
                period: step - first,
            };
        }
        residues.insert(state[0].clone());
        let next = (1..=r).fold(BigInt::zero(), |acc, i| {
            acc + &spec.coeffs[i - 1] * &state[r - i]
        });
        let mut succ = state[1..].to_vec();
        succ.push(next.mod_floor(m));
        seen.insert(std::mem::replace(&mut state, succ), step);
        step += 1;
    }
}

/// Initial terms `1, a, ..., a^{r-1}` modulo `p`, requiring `p | g(a)`.
pub fn lemma1_spec(g: &IntPoly, a: &BigInt, p: &BigInt) -> Result<RecurrenceSpec> {
    let r = coeffs_of(g)?.len();
    if !g.eval_mod(a, p).is_zero() {
        return domain(format!("lemma1_spec: {p} does not divide g({a})"));
    }
    let mut init = Vec::with_capacity(r);
    let mut x = BigInt::one();
    for _ in 0..r {
        init.push(x.clone());
        x = (x * a).mod_floor(p);
    }
    spec_from_poly(g, &init, p)
}

/// Re-derives the witness claim by simulation: the recurrence takes exactly
/// the residues `1, a, ..., a^{m-1}` modulo `p`, and `s_n ≡ a^n` throughout.
pub fn verify_witness(w: &Witness) -> bool {
    let Ok(spec) = lemma1_spec(&w.g, &w.a, &w.p) else {
        return false;
    };
    if w.m == 0 {
        return false;
    }
    let orb = orbit(&spec);
    if orb.distinct as u64 != w.m {
        return false;
    }
    let a = w.a.mod_floor(&w.p);
    let mut powers = BTreeSet::new();
    let mut x = BigInt::one().mod_floor(&w.p);
    for _ in 0..w.m {
        powers.insert(x.clone());
        x = (x * &a).mod_floor(&w.p);
    }
    if orb.residues.iter().cloned().collect::<BTreeSet<_>>() != powers {
        return false;
    }
    let len = (orb.tail_length + orb.period) as usize;
    let mut x = BigInt::one().mod_floor(&w.p);
    for s in spec.terms(len) {
        if s != x {
            return false;
        }
        x = (x * &a).mod_floor(&w.p);
    }
    true
}

/// Cap on the total number of states `Σ M^r` an exhaustive scan may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanBudget {
    pub max_states: u64,
}

impl Default for ScanBudget {
    fn default() -> Self {
        ScanBudget {
            max_states: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanHit {
    pub modulus: u64,
    pub init: Vec<u64>,
    pub tail: u64,
    pub period: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MsetScan {
    pub m_max: u64,
    /// Largest modulus actually scanned.
    pub scanned_to: u64,
    pub partial: bool,
    /// Earliest `(M, init)` realising each residue count.
    pub witnesses: BTreeMap<u64, ScanHit>,
    /// For each modulus, the earliest init realising each count.
    pub by_modulus: BTreeMap<u64, BTreeMap<u64, ScanHit>>,
}

impl MsetScan {
    pub fn counts(&self) -> BTreeSet<u64> {
        self.witnesses.keys().copied().collect()
    }

    pub fn has_count_at(&self, modulus: u64, m: u64) -> bool {
        self.by_modulus
            .get(&modulus)
            .is_some_and(|c| c.contains_key(&m))
    }

    /// Header `M,init,distinct_count,tail,period`; one row per modulus and count.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("M,init,distinct_count,tail,period\n");
        for (modulus, counts) in &self.by_modulus {
            for (m, hit) in counts {
                let init: Vec<String> = hit.init.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(
                    out,
                    "{modulus},{},{m},{},{}",
                    init.join(";"),
                    hit.tail,
                    hit.period
                );
            }
        }
        out
    }
}

fn decode(mut x: u64, modulus: u64, r: usize) -> Vec<u64> {
    let mut out = vec![0; r];
    for slot in out.iter_mut().rev() {
        *slot = x % modulus;
        x /= modulus;
    }
    out
}

/// Distinct-residue count for every initial state modulo `modulus`, indexed
/// by the state read as base-`M` digits `s_0 s_1 ... s_{r-1}`.
pub fn counts_for_modulus(coeffs: &[BigInt], modulus: u64) -> Vec<u32> {
    let r = coeffs.len();
    let mb = BigInt::from(modulus);
    let c: Vec<u64> = coeffs
        .iter()
        .map(|x| x.mod_floor(&mb).to_u64().unwrap())
        .collect();
    let total = modulus.pow(r as u32) as usize;
    let high = modulus.pow(r as u32 - 1);
    let head = |x: usize| (x as u64 / high) as usize;

    let next: Vec<u32> = (0..total)
        .map(|x| {
            let s = decode(x as u64, modulus, r);
            let new = (1..=r).fold(0u64, |acc, i| (acc + c[i - 1] * s[r - i]) % modulus);
            ((x as u64 % high) * modulus + new) as u32
        })
        .collect();

    // Reverse edges in CSR form.
    let mut start = vec![0u32; total + 1];
    for &y in &next {
        start[y as usize + 1] += 1;
    }
    for i in 0..total {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut preds = vec![0u32; total];
    for (x, &y) in next.iter().enumerate() {
        preds[fill[y as usize] as usize] = x as u32;
        fill[y as usize] += 1;
    }

    const UNSEEN: u32 = u32::MAX;
    let mut stamp = vec![UNSEEN; total];
    let mut on_cycle = vec![false; total];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    for x in 0..total {
        if stamp[x] != UNSEEN {
            continue;
        }
        let mut y = x;
        while stamp[y] == UNSEEN {
            stamp[y] = x as u32;
            y = next[y] as usize;
        }
        if stamp[y] == x as u32 {
            let mut cyc = vec![y as u32];
            on_cycle[y] = true;
            let mut z = next[y] as usize;
            while z != y {
                on_cycle[z] = true;
                cyc.push(z as u32);
                z = next[z] as usize;
            }
            cycles.push(cyc);
        }
    }

    let mut count = vec![0u32; total];
    let mut seen = vec![0u32; modulus as usize];
    let mut distinct = 0u32;
    for cyc in &cycles {
        for &z in cyc {
            let h = head(z as usize);
            if seen[h] == 0 {
                distinct += 1;
            }
            seen[h] += 1;
        }
        let base = distinct;
        for &z in cyc {
            count[z as usize] = base;
        }
        for &root in cyc {
            // DFS into the trees hanging off this cycle node.
            let mut stack: Vec<(u32, u32)> = vec![(root, start[root as usize])];
            while let Some(top) = stack.last_mut() {
                let (node, pos) = *top;
                if pos < start[node as usize + 1] {
                    top.1 += 1;
                    let child = preds[pos as usize] as usize;
                    if on_cycle[child] {
                        continue;
                    }
                    let h = head(child);
                    if seen[h] == 0 {
                        distinct += 1;
                    }
                    seen[h] += 1;
                    count[child] = distinct;
                    stack.push((child as u32, start[child]));
                } else {
                    stack.pop();
                    if node != root {
                        let h = head(node as usize);
                        seen[h] -= 1;
                        if seen[h] == 0 {
                            distinct -= 1;
                        }
                    }
                }
            }
        }
        for &z in cyc {
            seen[head(z as usize)] = 0;
        }
        distinct = 0;
    }
    count
}

fn hit(coeffs: &[BigInt], modulus: u64, idx: u64) -> ScanHit {
    let init = decode(idx, modulus, coeffs.len());
    let spec = RecurrenceSpec {
        coeffs: coeffs.to_vec(),
        init: init.iter().map(|&x| BigInt::from(x)).collect(),
        modulus: BigInt::from(modulus),
    };
    let orb = orbit(&spec);
    ScanHit {
        modulus,
        init,
        tail: orb.tail_length,
        period: orb.period,
    }
}

/// Every residue count realised by `g` modulo `M` for `2 <= M <= m_max`,
/// with the earliest `(M, init)` for each. Work is split across moduli.
pub fn mset_scan(g: &IntPoly, m_max: u64, budget: &ScanBudget) -> Result<MsetScan> {
    let coeffs = coeffs_of(g)?;
    let r = coeffs.len() as u32;
    let mut moduli = Vec::new();
    let mut spent = 0u64;
    let mut partial = false;
    for modulus in 2..=m_max {
        let states = modulus.checked_pow(r).filter(|&s| s < u32::MAX as u64);
        match states
            .and_then(|s| spent.checked_add(s))
            .filter(|&t| t <= budget.max_states)
        {
            Some(t) => {
                spent = t;
                moduli.push(modulus);
            }
            None => {
                partial = true;
                break;
            }
        }
    }

    let per_modulus: Vec<(u64, BTreeMap<u64, ScanHit>)> = moduli
        .par_iter()
        .map(|&modulus| {
            let counts = counts_for_modulus(&coeffs, modulus);
            let mut first: BTreeMap<u64, u64> = BTreeMap::new();
            for (idx, &c) in counts.iter().enumerate() {
                first.entry(c as u64).or_insert(idx as u64);
            }
            let hits = first
                .into_iter()
                .map(|(m, idx)| (m, hit(&coeffs, modulus, idx)))
                .collect();
            (modulus, hits)
        })
        .collect();

    let mut witnesses = BTreeMap::new();
    let mut by_modulus = BTreeMap::new();
    for (modulus, hits) in per_modulus {
        for (m, h) in &hits {
            witnesses.entry(*m).or_insert_with(|| h.clone());
        }
        by_modulus.insert(modulus, hits);
    }
    Ok(MsetScan {
        m_max,
        scanned_to: moduli.last().copied().unwrap_or(1),
        partial,
        witnesses,
        by_modulus,
    })
}
