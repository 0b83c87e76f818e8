//! Brute-force and Monte Carlo ground truth for the closed forms.
//!
//! Everything here enumerates codewords, matrices or monomial maps directly
//! and tallies second-order weights with field arithmetic only.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{all_vectors, LinearCode, Matrix, MonomialMap, Vector};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::good::all_matrices;
use crate::ldpc::{EnsembleDistribution, EnsembleKind, EnsembleSpec};
use crate::macwilliams::{transform, KMatrix};
use crate::orbits::{OrbitTable, SowVector};
use crate::poly::{rat, rat_to_f64, rat_to_string, BigRat, Enumerator};

/// Default cap on enumerated ensemble configurations.
pub const DEFAULT_CONFIG_LIMIT: u64 = 1_000_000;
/// Default cap on codewords per sampled code.
pub const DEFAULT_CODEWORD_LIMIT: u64 = 1 << 16;

fn brute_distribution(u: &[Vector], v: &[Vector], table: &OrbitTable) -> Result<BTreeMap<SowVector, u64>> {
    let mut out = BTreeMap::new();
    for a in u {
        for b in v {
            *out.entry(table.sow(a, b)?).or_insert(0u64) += 1;
        }
    }
    Ok(out)
}

fn to_enumerator(nvars: usize, dist: &BTreeMap<SowVector, BigRat>) -> Result<Enumerator> {
    Enumerator::from_terms(nvars, dist.iter().map(|(i, c)| (i.0.clone(), c.clone())))
}

/// Brute-force `W_{U,V}` from codeword lists.
pub fn brute_enumerator(u: &LinearCode, v: &LinearCode, table: &OrbitTable, limit: u64) -> Result<Enumerator> {
    let pairs = u.size().saturating_mul(v.size());
    if pairs > limit {
        return Err(Error::infeasible("pair enumeration", pairs, limit));
    }
    let dist = brute_distribution(&u.codewords(limit)?, &v.codewords(limit)?, table)?;
    to_enumerator(
        table.len(),
        &dist.into_iter().map(|(i, c)| (i, rat(c as i64))).collect(),
    )
}

/// `(P{u ∈ ξ(U), v ∈ ξ(V)}, A_{sow(u,v)}(U,V) / A_{sow(u,v)}(F^n,F^n))`.
pub fn lemma4_exact(
    u_code: &LinearCode,
    v_code: &LinearCode,
    u: &[FieldElement],
    v: &[FieldElement],
    table: &OrbitTable,
    limit: u64,
) -> Result<(BigRat, BigRat)> {
    let f = table.field();
    let n = u_code.length();
    if v_code.length() != n || u.len() != n || v.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: v.len(),
        });
    }
    let maps = MonomialMap::all(n, f, limit)?;
    let mut hits = 0u64;
    for xi in &maps {
        if u_code.contains(&xi.apply_inverse(f, u)?) && v_code.contains(&xi.apply_inverse(f, v)?) {
            hits += 1;
        }
    }
    let lhs = rat(hits as i64) / rat(maps.len() as i64);

    let target = table.sow(u, v)?;
    let count_in = |a: &[Vector], b: &[Vector]| -> Result<u64> {
        let mut c = 0;
        for x in a {
            for y in b {
                if table.sow(x, y)? == target {
                    c += 1;
                }
            }
        }
        Ok(c)
    };
    let pairs = u_code.size().saturating_mul(v_code.size());
    if pairs > limit {
        return Err(Error::infeasible("pair enumeration", pairs, limit));
    }
    let num = count_in(&u_code.codewords(limit)?, &v_code.codewords(limit)?)?;
    let all = all_vectors(f, n, limit)?;
    let space = (all.len() as u64).saturating_mul(all.len() as u64);
    if space > limit {
        return Err(Error::infeasible("pair enumeration", space, limit));
    }
    let den = count_in(&all, &all)?;
    Ok((lhs, rat(num as i64) / rat(den as i64)))
}

/// Parity-check matrix realized by one ensemble configuration.
///
/// Kind I takes `c` maps on `n` coordinates; block row `b` is the stacked
/// single-symbol check matrix composed with map `b`. Kind II takes one map on
/// `c·n` sockets, socket `j·c + t` carrying symbol `j`.
pub fn ldpc_parity_matrix(spec: &EnsembleSpec, field: &Arc<Field>, maps: &[MonomialMap]) -> Result<Matrix> {
    let (c, d, n) = (spec.c as usize, spec.d as usize, spec.n as usize);
    let mut h = Matrix::zeros(field.clone(), spec.check_rows(), n);
    match spec.kind {
        EnsembleKind::One => {
            if maps.len() != c || maps.iter().any(|m| m.len() != n) {
                return Err(Error::InvalidParameter(format!("kind I needs {c} maps on {n} coordinates")));
            }
            let per = n / d;
            for (b, xi) in maps.iter().enumerate() {
                for i in 0..n {
                    let row = b * per + i / d;
                    let col = xi.inverse_permutation()[i];
                    h.set(row, col, xi.scalars()[i]);
                }
            }
        }
        EnsembleKind::Two => {
            if maps.len() != 1 || maps[0].len() != c * n {
                return Err(Error::InvalidParameter(format!("kind II needs one map on {} sockets", c * n)));
            }
            let xi = &maps[0];
            for i in 0..c * n {
                let row = i / d;
                let col = xi.inverse_permutation()[i] / c;
                let cur = h.get(row, col);
                h.set(row, col, field.add(cur, xi.scalars()[i]));
            }
        }
    }
    Ok(h)
}

fn config_count(spec: &EnsembleSpec, q: u32) -> u128 {
    let per = crate::codes::monomial_group_order(
        match spec.kind {
            EnsembleKind::One => spec.n as usize,
            EnsembleKind::Two => (spec.c * spec.n) as usize,
        },
        q,
    );
    match spec.kind {
        EnsembleKind::One => per.saturating_pow(spec.c),
        EnsembleKind::Two => per,
    }
}

/// Exact `E[A_i(C,C)]` by enumerating every ensemble configuration.
pub fn ldpc_exact_expectation(spec: &EnsembleSpec, table: &OrbitTable, limit: u64) -> Result<EnsembleDistribution> {
    let f = table.field();
    if f.order() != spec.q {
        return Err(Error::FieldMismatch(f.order(), spec.q));
    }
    let total = config_count(spec, spec.q);
    if total > limit as u128 {
        return Err(Error::infeasible("ensemble configurations", total, limit));
    }
    let configs: Vec<Vec<MonomialMap>> = match spec.kind {
        EnsembleKind::One => {
            let maps = MonomialMap::all(spec.n as usize, f, limit)?;
            let mut out: Vec<Vec<MonomialMap>> = vec![vec![]];
            for _ in 0..spec.c {
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        maps.iter().map(move |m| {
                            let mut p = prefix.clone();
                            p.push(m.clone());
                            p
                        })
                    })
                    .collect();
            }
            out
        }
        EnsembleKind::Two => MonomialMap::all((spec.c * spec.n) as usize, f, limit)?
            .into_iter()
            .map(|m| vec![m])
            .collect(),
    };
    let mut cache: HashMap<Vec<u32>, BTreeMap<SowVector, u64>> = HashMap::new();
    let mut sums: BTreeMap<SowVector, u64> = BTreeMap::new();
    for cfg in &configs {
        let h = ldpc_parity_matrix(spec, f, cfg)?;
        let code = LinearCode::from_parity_check(&h);
        let key = code.basis().indices();
        if !cache.contains_key(&key) {
            let words = code.codewords(limit)?;
            cache.insert(key.clone(), brute_distribution(&words, &words, table)?);
        }
        for (i, c) in &cache[&key] {
            *sums.entry(i.clone()).or_insert(0) += c;
        }
    }
    let denom = rat(configs.len() as i64);
    Ok(EnsembleDistribution {
        spec: *spec,
        values: sums
            .into_iter()
            .map(|(i, s)| (i, rat(s as i64) / &denom))
            .collect(),
    })
}

/// Per-index Monte Carlo estimates of `E[A_i(C,C)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub trials: u64,
    pub seed: u64,
    /// `(Σ A_i, Σ A_i^2)` over trials.
    pub sums: BTreeMap<SowVector, (u128, u128)>,
    /// `(Σ |C|^2, Σ |C|^4)` over trials.
    pub mass: (u128, u128),
}

fn mean_se(n: u64, s: u128, s2: u128) -> (f64, f64) {
    let nf = n as f64;
    let mean = s as f64 / nf;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = ((s2 as f64) - nf * mean * mean).max(0.0) / (nf - 1.0);
    (mean, (var / nf).sqrt())
}

impl MonteCarloResult {
    pub fn mean_se(&self, i: &SowVector) -> (f64, f64) {
        let (s, s2) = self.sums.get(i).copied().unwrap_or((0, 0));
        mean_se(self.trials, s, s2)
    }

    pub fn mass_mean_se(&self) -> (f64, f64) {
        mean_se(self.trials, self.mass.0, self.mass.1)
    }
}

/// Dense tally of pair sow vectors, keyed by the base-`(n+1)` encoding.
struct Tally {
    counts: Vec<u32>,
    touched: Vec<usize>,
}

impl Tally {
    fn new(size: usize) -> Self {
        Tally {
            counts: vec![0; size],
            touched: Vec::new(),
        }
    }

    #[inline]
    fn bump(&mut self, idx: usize) {
        if self.counts[idx] == 0 {
            self.touched.push(idx);
        }
        self.counts[idx] += 1;
    }

    fn drain(&mut self) -> Vec<(usize, u64)> {
        let out = self
            .touched
            .iter()
            .map(|&i| (i, self.counts[i] as u64))
            .collect();
        for &i in &self.touched {
            self.counts[i] = 0;
        }
        self.touched.clear();
        out
    }
}

fn tally_code(words: &[Vector], table: &OrbitTable, n: usize, tally: &mut Tally) -> Vec<(usize, u64)> {
    let q = table.q() as usize;
    let base = n + 1;
    let nv = table.len();
    let pw: Vec<usize> = (0..nv).map(|k| base.pow(k as u32)).collect();
    if q == 2 && n <= 64 {
        let masks: Vec<u64> = words
            .iter()
            .map(|w| {
                w.iter()
                    .enumerate()
                    .fold(0u64, |m, (k, e)| m | ((e.index() as u64) << k))
            })
            .collect();
        for &a in &masks {
            for &b in &masks {
                let both = (a & b).count_ones() as usize;
                let only_a = (a & !b).count_ones() as usize;
                let only_b = (!a & b).count_ones() as usize;
                let none = n - both - only_a - only_b;
                tally.bump(none * pw[0] + only_b * pw[1] + only_a * pw[2] + both * pw[3]);
            }
        }
    } else {
        let lookup = table.lookup_table();
        let flat: Vec<Vec<usize>> = words
            .iter()
            .map(|w| w.iter().map(|e| e.index() as usize * q).collect())
            .collect();
        let plain: Vec<Vec<usize>> = words
            .iter()
            .map(|w| w.iter().map(|e| e.index() as usize).collect())
            .collect();
        for a in &flat {
            for b in &plain {
                let mut idx = 0;
                for k in 0..n {
                    idx += pw[lookup[a[k] + b[k]] as usize];
                }
                tally.bump(idx);
            }
        }
    }
    tally.drain()
}

fn decode(mut idx: usize, n: usize, nv: usize) -> SowVector {
    let base = n + 1;
    SowVector(
        (0..nv)
            .map(|_| {
                let d = idx % base;
                idx /= base;
                d as u32
            })
            .collect(),
    )
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Seeded Monte Carlo over the ensemble. Trial `t` draws from its own
/// generator stream, so results do not depend on thread count and a longer
/// run extends a shorter one.
pub fn monte_carlo_ldpc(
    spec: &EnsembleSpec,
    table: &OrbitTable,
    trials: u64,
    seed: u64,
    codeword_limit: u64,
) -> Result<MonteCarloResult> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let f = table.field();
    if f.order() != spec.q {
        return Err(Error::FieldMismatch(f.order(), spec.q));
    }
    let n = spec.n as usize;
    let nv = table.len();
    let dense = (n + 1)
        .checked_pow(nv as u32)
        .filter(|&s| s <= 1 << 26)
        .ok_or_else(|| Error::infeasible("tally table", format!("{}^{}", n + 1, nv), 1u64 << 26))?;

    type Acc = (HashMap<usize, (u128, u128)>, (u128, u128));
    let run = |t: u64, tally: &mut Tally| -> Result<(Vec<(usize, u64)>, u64)> {
        let mut rng = trial_rng(seed, t);
        let maps: Vec<MonomialMap> = match spec.kind {
            EnsembleKind::One => (0..spec.c).map(|_| MonomialMap::sample(n, f, &mut rng)).collect(),
            EnsembleKind::Two => vec![MonomialMap::sample(spec.c as usize * n, f, &mut rng)],
        };
        let h = ldpc_parity_matrix(spec, f, &maps)?;
        let code = LinearCode::from_parity_check(&h);
        let words = code.codewords(codeword_limit)?;
        let size = words.len() as u64;
        Ok((tally_code(&words, table, n, tally), size * size))
    };
    let (acc, mass) = (0..trials)
        .into_par_iter()
        .try_fold(
            || (Tally::new(dense), (HashMap::new(), (0u128, 0u128))),
            |(mut tally, (mut map, mut mass)): (Tally, Acc), t| {
                let (counts, sq) = run(t, &mut tally)?;
                for (i, c) in counts {
                    let e = map.entry(i).or_insert((0, 0));
                    e.0 += c as u128;
                    e.1 += (c as u128) * (c as u128);
                }
                mass.0 += sq as u128;
                mass.1 += (sq as u128) * (sq as u128);
                Ok::<_, Error>((tally, (map, mass)))
            },
        )
        .map(|r| r.map(|(_, acc)| acc))
        .try_reduce(
            || (HashMap::new(), (0, 0)),
            |(mut a, ma), (b, mb)| {
                for (i, (s, s2)) in b {
                    let e = a.entry(i).or_insert((0, 0));
                    e.0 += s;
                    e.1 += s2;
                }
                Ok((a, (ma.0 + mb.0, ma.1 + mb.1)))
            },
        )?;
    Ok(MonteCarloResult {
        trials,
        seed,
        sums: acc.into_iter().map(|(i, v)| (decode(i, n, nv), v)).collect(),
        mass,
    })
}

/// Outcome of comparing Monte Carlo estimates against exact values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McComparison {
    pub indices: usize,
    /// Largest `|mean - exact| / se` over all indices and the total mass.
    pub max_z: f64,
    pub failures: Vec<String>,
}

impl McComparison {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every index in the union of both supports, plus `E[|C|^2]`, against
/// `k` standard errors. A zero sample standard error is floored at `1/trials`.
pub fn compare_mc(mc: &MonteCarloResult, exact: &EnsembleDistribution, k: f64) -> McComparison {
    let floor = 1.0 / mc.trials as f64;
    let mut keys: Vec<&SowVector> = exact.values.keys().collect();
    keys.extend(mc.sums.keys().filter(|i| !exact.values.contains_key(*i)));
    let mut max_z: f64 = 0.0;
    let mut failures = Vec::new();
    let mut check = |label: String, mean: f64, se: f64, truth: f64| {
        let z = (mean - truth).abs() / se.max(floor);
        max_z = max_z.max(z);
        if z > k {
            failures.push(format!("{label}: mean {mean} se {se} exact {truth}"));
        }
    };
    for i in &keys {
        let (m, se) = mc.mean_se(i);
        check(i.to_string(), m, se, rat_to_f64(&exact.value(i)));
    }
    let (m, se) = mc.mass_mean_se();
    check("mass".into(), m, se, rat_to_f64(&exact.total_mass()));
    McComparison {
        indices: keys.len(),
        max_z,
        failures,
    }
}

/// Residuals of the two character identities behind the transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterResiduals {
    pub subspace: f64,
    pub pair: f64,
}

/// `|1_{V⊥}(v') - (1/|V|) Σ_{v∈V} χ(v·v')|`.
pub fn subspace_character_residual(code: &LinearCode, v2: &[FieldElement], limit: u64) -> Result<f64> {
    let f = code.field();
    let words = code.codewords(limit)?;
    let avg = words
        .iter()
        .map(|v| f.character(f.dot(v, v2)))
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
        / words.len() as f64;
    let indicator = if code.dual().contains(v2) { 1.0 } else { 0.0 };
    Ok((avg - Complex64::new(indicator, 0.0)).norm())
}

/// Max coefficient deviation between `Σ_{u',v'} χ(u·u'+v·v') x^{sow(u',v')}`
/// and `Π_T (Σ_S x_S K[S][T])^{sow(u,v)_T}`.
pub fn pair_character_residual(u: &[FieldElement], v: &[FieldElement], table: &OrbitTable, k: &KMatrix, limit: u64) -> Result<f64> {
    let f = table.field();
    let n = u.len();
    let all = all_vectors(f, n, limit)?;
    let work = (all.len() as u64).saturating_mul(all.len() as u64);
    if work > limit {
        return Err(Error::infeasible("character sum", work, limit));
    }
    let mut lhs: HashMap<Vec<u32>, Complex64> = HashMap::new();
    for a in &all {
        for b in &all {
            let chi = f.character(f.add(f.dot(u, a), f.dot(v, b)));
            *lhs.entry(table.sow(a, b)?.0).or_insert(Complex64::new(0.0, 0.0)) += chi;
        }
    }
    let i = table.sow(u, v)?;
    let mut rhs = Enumerator::one(table.len());
    for (t, &e) in i.0.iter().enumerate() {
        rhs = rhs.multiply(&k.column_form(t).power(e)?)?;
    }
    let mut worst: f64 = 0.0;
    for (exp, c) in rhs.terms() {
        let l = lhs.remove(exp).unwrap_or(Complex64::new(0.0, 0.0));
        worst = worst.max((l - Complex64::new(rat_to_f64(c), 0.0)).norm());
    }
    for (_, l) in lhs {
        worst = worst.max(l.norm());
    }
    Ok(worst)
}

/// Character-sum residuals: the subspace identity at `v'`, and the pair identity over every `(u, v)` in `V × V`.
pub fn character_checks(code: &LinearCode, v2: &[FieldElement], table: &OrbitTable, limit: u64) -> Result<CharacterResiduals> {
    let k = KMatrix::build(table);
    let subspace = subspace_character_residual(code, v2, limit)?;
    let words = code.codewords(limit)?;
    let mut pair: f64 = 0.0;
    for u in &words {
        for v in &words {
            pair = pair.max(pair_character_residual(u, v, table, &k, limit)?);
        }
    }
    Ok(CharacterResiduals { subspace, pair })
}

/// `(transform of W_{U,V}, brute-force W_{U⊥,V⊥})`.
pub fn macwilliams_brute(u: &LinearCode, v: &LinearCode, table: &OrbitTable, limit: u64) -> Result<(Enumerator, Enumerator)> {
    let k = KMatrix::build(table);
    let w = brute_enumerator(u, v, table, limit)?;
    let transformed = transform(&w, &rat(u.size() as i64), &rat(v.size() as i64), &k)?;
    let direct = brute_enumerator(&u.dual(), &v.dual(), table, limit)?;
    Ok((transformed, direct))
}

/// Average of `W_{B,B}` over every `m × n` parity-check matrix.
pub fn exhaustive_parity_average(m: usize, n: usize, table: &OrbitTable, limit: u64) -> Result<Enumerator> {
    let f = table.field();
    let hs = all_matrices(f, m, n, limit)?;
    let mut sums: BTreeMap<SowVector, BigRat> = BTreeMap::new();
    for h in &hs {
        let words = LinearCode::from_parity_check(h).codewords(limit)?;
        for (i, c) in brute_distribution(&words, &words, table)? {
            *sums.entry(i).or_insert_with(BigRat::zero) += rat(c as i64);
        }
    }
    let count = rat(hs.len() as i64);
    sums.values_mut().for_each(|v| *v /= &count);
    to_enumerator(table.len(), &sums)
}

/// Average of `W_{C,C} / |C|^2` over every `m × n` generator matrix.
pub fn exhaustive_generator_average(m: usize, n: usize, table: &OrbitTable, limit: u64) -> Result<Enumerator> {
    let f = table.field();
    let gs = all_matrices(f, m, n, limit)?;
    let mut sums: BTreeMap<SowVector, BigRat> = BTreeMap::new();
    for g in &gs {
        let words = LinearCode::from_generator(g).codewords(limit)?;
        let norm = rat((words.len() * words.len()) as i64);
        for (i, c) in brute_distribution(&words, &words, table)? {
            *sums.entry(i).or_insert_with(BigRat::zero) += rat(c as i64) / &norm;
        }
    }
    let count = rat(gs.len() as i64);
    sums.values_mut().for_each(|v| *v /= &count);
    to_enumerator(table.len(), &sums)
}

/// Largest absolute coefficient difference.
pub fn max_abs_diff(a: &Enumerator, b: &Enumerator) -> Result<BigRat> {
    let d = a.sub(b)?;
    Ok(d.terms().map(|(_, c)| c.abs()).max().unwrap_or_else(BigRat::zero))
}

pub fn max_abs_diff_dist(a: &BTreeMap<SowVector, BigRat>, b: &BTreeMap<SowVector, BigRat>) -> BigRat {
    let zero = BigRat::zero();
    a.keys()
        .chain(b.keys())
        .map(|i| (a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).abs())
        .max()
        .unwrap_or(zero)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub check: String,
    pub params: serde_json::Value,
    pub max_abs_error: String,
    pub status: String,
}

impl OracleReport {
    pub fn exact(check: &str, params: serde_json::Value, err: &BigRat) -> Self {
        OracleReport {
            check: check.into(),
            params,
            max_abs_error: if err.is_integer() {
                err.numer().to_string()
            } else {
                rat_to_string(err)
            },
            status: if err.is_zero() { "pass" } else { "fail" }.into(),
        }
    }

    pub fn numeric(check: &str, params: serde_json::Value, err: f64, tol: f64) -> Self {
        OracleReport {
            check: check.into(),
            params,
            max_abs_error: format!("{err:e}"),
            status: if err < tol { "pass" } else { "fail" }.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Sanity: the all-ones probability in a distribution equals one.
pub fn is_probability(d: &BTreeMap<(Vec<u32>, Vec<u32>), BigRat>) -> bool {
    d.values().fold(BigRat::zero(), |a, b| a + b) == BigRat::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldpc::{ldpc1_expected, ldpc2_expected};
    use crate::poly::ratio;

    fn t(q: u64) -> OrbitTable {
        OrbitTable::for_order(q).unwrap()
    }

    fn vecs(f: &Field, xs: &[u32]) -> Vector {
        xs.iter().map(|&x| f.element(x).unwrap()).collect()
    }

    #[test]
    fn lemma4_examples() {
        let table = t(2);
        let f = table.field().clone();
        let rep = LinearCode::repetition(f.clone(), 2).unwrap();
        let one = vecs(&f, &[1, 1]);
        assert_eq!(lemma4_exact(&rep, &rep, &one, &one, &table, 1 << 16).unwrap(), (rat(1), rat(1)));
        let z = vecs(&f, &[0, 0]);
        assert_eq!(lemma4_exact(&rep, &rep, &z, &z, &table, 1 << 16).unwrap(), (rat(1), rat(1)));
        let full = LinearCode::full(f.clone(), 2);
        let u = vecs(&f, &[1, 0]);
        assert_eq!(lemma4_exact(&full, &full, &u, &one, &table, 1 << 16).unwrap(), (rat(1), rat(1)));
        let (l, r) = lemma4_exact(&rep, &full, &u, &one, &table, 1 << 16).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, rat(0));
    }

    #[test]
    fn lemma4_random_codes_q3() {
        let table = t(3);
        let f = table.field().clone();
        let g = Matrix::from_indices(f.clone(), 2, 3, &[1, 2, 0, 0, 1, 1]).unwrap();
        let c = LinearCode::from_generator(&g);
        let d = c.dual();
        for u in all_vectors(&f, 3, 27).unwrap().iter().step_by(4) {
            for v in all_vectors(&f, 3, 27).unwrap().iter().step_by(5) {
                let (l, r) = lemma4_exact(&c, &d, u, v, &table, 1 << 16).unwrap();
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn exact_expectation_matches_closed_forms() {
        let table = t(2);
        let k = KMatrix::build(&table);
        for (kind, c, n) in [
            (EnsembleKind::One, 2, 2),
            (EnsembleKind::Two, 1, 2),
            (EnsembleKind::One, 1, 4),
            (EnsembleKind::Two, 2, 2),
        ] {
            let spec = EnsembleSpec::new(kind, 2, c, 2, n).unwrap();
            let exact = ldpc_exact_expectation(&spec, &table, DEFAULT_CONFIG_LIMIT).unwrap();
            let closed = match kind {
                EnsembleKind::One => ldpc1_expected(&spec, &table, &k),
                EnsembleKind::Two => ldpc2_expected(&spec, &table, &k),
            }
            .unwrap();
            assert_eq!(exact.values, closed.values, "{spec:?}");
        }
    }

    #[test]
    fn exact_expectation_limit() {
        let table = t(2);
        let spec = EnsembleSpec::new(EnsembleKind::One, 2, 3, 2, 6).unwrap();
        assert!(ldpc_exact_expectation(&spec, &table, 1000).unwrap_err().is_infeasible());
    }

    #[test]
    fn parity_matrix_row_weights() {
        let table = t(3);
        let f = table.field().clone();
        let spec = EnsembleSpec::new(EnsembleKind::One, 3, 3, 4, 8).unwrap();
        let maps: Vec<MonomialMap> = (0..3).map(|s| MonomialMap::sample_seeded(8, &f, s)).collect();
        let h = ldpc_parity_matrix(&spec, &f, &maps).unwrap();
        assert_eq!(h.rows(), 6);
        for r in 0..6 {
            assert_eq!(h.row(r).iter().filter(|e| !e.is_zero()).count(), 4);
        }
        for c in 0..8 {
            assert_eq!((0..6).filter(|&r| !h.get(r, c).is_zero()).count(), 3);
        }
    }

    #[test]
    fn monte_carlo_deterministic_and_extendable() {
        let table = t(2);
        let spec = EnsembleSpec::new(EnsembleKind::Two, 2, 2, 4, 8).unwrap();
        let a = monte_carlo_ldpc(&spec, &table, 50, 7, DEFAULT_CODEWORD_LIMIT).unwrap();
        let b = monte_carlo_ldpc(&spec, &table, 50, 7, DEFAULT_CODEWORD_LIMIT).unwrap();
        assert_eq!(a, b);
        let zero = SowVector::zero_pair(4, 8);
        assert_eq!(a.mean_se(&zero), (1.0, 0.0));
        // trial t uses the same stream regardless of run length
        let one = monte_carlo_ldpc(&spec, &table, 1, 7, DEFAULT_CODEWORD_LIMIT).unwrap();
        let two = monte_carlo_ldpc(&spec, &table, 2, 7, DEFAULT_CODEWORD_LIMIT).unwrap();
        for (i, (s, _)) in &one.sums {
            assert!(two.sums[i].0 >= *s);
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let c = pool.install(|| monte_carlo_ldpc(&spec, &table, 50, 7, DEFAULT_CODEWORD_LIMIT).unwrap());
        assert_eq!(a, c);
    }

    #[test]
    fn monte_carlo_agrees_with_exact_small() {
        let table = t(2);
        let spec = EnsembleSpec::new(EnsembleKind::One, 2, 1, 2, 4).unwrap();
        let exact = ldpc_exact_expectation(&spec, &table, DEFAULT_CONFIG_LIMIT).unwrap();
        let mc = monte_carlo_ldpc(&spec, &table, 2000, 1, DEFAULT_CODEWORD_LIMIT).unwrap();
        let cmp = compare_mc(&mc, &exact, 5.0);
        assert!(cmp.passed(), "{:?}", cmp.failures);
    }

    #[test]
    fn general_q_tally_matches_sow() {
        let table = t(3);
        let f = table.field().clone();
        let g = Matrix::from_indices(f.clone(), 2, 4, &[1, 2, 0, 1, 0, 1, 1, 2]).unwrap();
        let words = LinearCode::from_generator(&g).codewords(100).unwrap();
        let mut tally = Tally::new(5usize.pow(5));
        let fast: BTreeMap<SowVector, u64> = tally_code(&words, &table, 4, &mut tally)
            .into_iter()
            .map(|(i, c)| (decode(i, 4, 5), c))
            .collect();
        assert_eq!(fast, brute_distribution(&words, &words, &table).unwrap());
        let t2 = t(2);
        let f2 = t2.field().clone();
        let g = Matrix::from_indices(f2, 2, 5, &[1, 1, 0, 1, 0, 0, 1, 1, 1, 1]).unwrap();
        let words = LinearCode::from_generator(&g).codewords(100).unwrap();
        let mut tally = Tally::new(6usize.pow(4));
        let fast: BTreeMap<SowVector, u64> = tally_code(&words, &t2, 5, &mut tally)
            .into_iter()
            .map(|(i, c)| (decode(i, 5, 4), c))
            .collect();
        assert_eq!(fast, brute_distribution(&words, &words, &t2).unwrap());
    }

    #[test]
    fn character_examples() {
        let table = t(2);
        let f = table.field().clone();
        let rep = LinearCode::repetition(f.clone(), 2).unwrap();
        assert!(subspace_character_residual(&rep, &vecs(&f, &[1, 1]), 64).unwrap() < 1e-9);
        // v' = (1,0) is not in V⊥, the character average is 0
        assert!(subspace_character_residual(&rep, &vecs(&f, &[1, 0]), 64).unwrap() < 1e-9);
        let k = KMatrix::build(&table);
        let z = vecs(&f, &[0, 0]);
        assert!(pair_character_residual(&z, &z, &table, &k, 1 << 12).unwrap() < 1e-9);
        let r = character_checks(&rep, &vecs(&f, &[0, 1]), &table, 1 << 12).unwrap();
        assert!(r.subspace < 1e-6 && r.pair < 1e-6);
    }

    #[test]
    fn macwilliams_examples() {
        for q in [2u64, 3] {
            let table = t(q);
            let f = table.field().clone();
            let rep = LinearCode::repetition(f.clone(), 3).unwrap();
            let (a, b) = macwilliams_brute(&rep, &rep, &table, 1 << 16).unwrap();
            assert_eq!(a, b);
            let z = LinearCode::zero(f.clone(), 2);
            let (a, b) = macwilliams_brute(&z, &z, &table, 1 << 16).unwrap();
            assert_eq!(a, b);
            assert_eq!(b, crate::poly::complete_enumerator(&table, 2).unwrap());
        }
    }

    #[test]
    fn theorem4_exhaustive() {
        use crate::good::{theorem4_generator, theorem4_parity};
        let table = t(2);
        assert_eq!(
            exhaustive_generator_average(2, 3, &table, 1 << 16).unwrap(),
            theorem4_generator(2, 3, &table).unwrap()
        );
        let avg = exhaustive_parity_average(1, 2, &table, 1 << 16).unwrap();
        assert_eq!(avg, theorem4_parity(1, 2, &table).unwrap());
        assert_eq!(avg.evaluate(&vec![rat(1); 4]).unwrap(), rat(7));
    }

    #[test]
    fn report_serialization() {
        let r = OracleReport::exact("theorem2", serde_json::json!({"q": 2}), &ratio(0, 1));
        assert!(r.passed());
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"check":"theorem2","params":{"q":2},"max_abs_error":"0","status":"pass"}"#);
        assert!(!OracleReport::numeric("characters", serde_json::Value::Null, 1e-3, 1e-6).passed());
    }
}
