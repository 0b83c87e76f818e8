//! Expected second-order weight distributions of regular LDPC ensembles.
//!
//! Ensemble I intersects `c` independently permuted and scaled copies of
//! the kernel of `n/d` stacked single-symbol checks. Ensemble II repeats every
//! symbol `c` times, applies one random monomial map to the `cn` sockets and
//! checks groups of `d`.

use std::collections::BTreeMap;

use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macwilliams::KMatrix;
use crate::orbits::{OrbitTable, SowVector, E00};
use crate::poly::{
    int, multinomial, rat, rat_to_string, second_moment_pair, BigRat, Enumerator,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnsembleKind {
    #[serde(rename = "I")]
    One,
    #[serde(rename = "II")]
    Two,
}

impl EnsembleKind {
    pub fn label(self) -> &'static str {
        match self {
            EnsembleKind::One => "I",
            EnsembleKind::Two => "II",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub q: u32,
    pub c: u32,
    pub d: u32,
    pub n: u32,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, q: u32, c: u32, d: u32, n: u32) -> Result<Self> {
        if c == 0 || d == 0 || n == 0 {
            return Err(Error::InvalidParameter("c, d and n must be positive".into()));
        }
        let value = match kind {
            EnsembleKind::One => n as u64,
            EnsembleKind::Two => c as u64 * n as u64,
        };
        if value % d as u64 != 0 {
            return Err(Error::Divisibility {
                divisor: d as u64,
                value,
            });
        }
        Ok(EnsembleSpec { kind, q, c, d, n })
    }

    /// Number of check rows in the parity-check matrix.
    pub fn check_rows(&self) -> usize {
        (self.c * self.n / self.d) as usize
    }
}

/// Expected `A_i(C, C)` over an ensemble, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnsembleDistribution {
    pub spec: EnsembleSpec,
    pub values: BTreeMap<SowVector, BigRat>,
}

impl EnsembleDistribution {
    pub fn value(&self, i: &SowVector) -> BigRat {
        self.values.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    /// `E[|C|^2]`.
    pub fn total_mass(&self) -> BigRat {
        self.values.values().fold(BigRat::zero(), |acc, v| acc + v)
    }

    pub fn second_moment(&self, j: u32, k: u32) -> BigRat {
        second_moment_pair(&self.values, j, k, self.spec.n)
    }

    /// `E[A_j(C)] = E[A_j(C) A_0(C)]`.
    pub fn expected_weight_distribution(&self) -> Vec<BigRat> {
        (0..=self.spec.n).map(|j| self.second_moment(j, 0)).collect()
    }

    pub fn to_json(&self, table: &OrbitTable) -> DistributionJson {
        DistributionJson {
            kind: self.spec.kind,
            q: self.spec.q,
            c: self.spec.c,
            d: self.spec.d,
            n: self.spec.n,
            orbit_order: table.labels(),
            entries: self
                .values
                .iter()
                .map(|(i, v)| EntryJson {
                    i: i.0.clone(),
                    value: rat_to_string(v),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub kind: EnsembleKind,
    pub q: u32,
    pub c: u32,
    pub d: u32,
    pub n: u32,
    pub orbit_order: Vec<String>,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: Vec<u32>,
    pub value: String,
}

/// `W_{R_c,R_c} = x_e00^c + (q-1) Σ_{S≠e00} x_S^c`.
pub fn repetition_enumerator(c: u32, table: &OrbitTable) -> Result<Enumerator> {
    if c == 0 {
        return Err(Error::InvalidParameter("repetition length must be >= 1".into()));
    }
    let m = table.len();
    let q = table.q() as i64;
    Enumerator::from_terms(
        m,
        (0..m).map(|s| {
            let mut e = vec![0; m];
            e[s] = c;
            (e, if s == E00 { rat(1) } else { rat(q - 1) })
        }),
    )
}

/// `W_{C_d,C_d} = q^{-2} [ L_e00^d + (q-1) Σ_{T≠e00} L_T^d ]` with
/// `L_T = Σ_S x_S K[S][T]`.
pub fn check_enumerator(d: u32, table: &OrbitTable, k: &KMatrix) -> Result<Enumerator> {
    if d == 0 {
        return Err(Error::InvalidParameter("check length must be >= 1".into()));
    }
    let q = table.q() as i64;
    let m = table.len();
    let mut acc = k.column_form(E00).power(d)?;
    let weight = rat(q - 1);
    for t in 1..m {
        acc = acc.add(&k.column_form(t).power(d)?.scale(&weight))?;
    }
    Ok(acc.scale(&(BigRat::one() / rat(q * q))))
}

/// Denominator `binom(n; i) (q-1)^(n - i_e00)` = `A_i(F_q^n, F_q^n)`.
fn full_count(i: &[u32], n: u32, q: u32) -> Result<BigRat> {
    let m = int(&multinomial(n as u64, i)?);
    Ok(m * Pow::pow(rat(q as i64 - 1), n - i[E00]))
}

fn check_power(spec: &EnsembleSpec, table: &OrbitTable, k: &KMatrix, blocks: u32) -> Result<Enumerator> {
    if table.q() != spec.q {
        return Err(Error::FieldMismatch(table.q(), spec.q));
    }
    check_enumerator(spec.d, table, k)?.power(blocks)
}

pub fn ldpc1_expected(spec: &EnsembleSpec, table: &OrbitTable, k: &KMatrix) -> Result<EnsembleDistribution> {
    if spec.kind != EnsembleKind::One {
        return Err(Error::InvalidParameter("expected an ensemble I spec".into()));
    }
    EnsembleSpec::new(spec.kind, spec.q, spec.c, spec.d, spec.n)?;
    let w = check_power(spec, table, k, spec.n / spec.d)?;
    let terms: Vec<(&Vec<u32>, &BigRat)> = w.terms().collect();
    let values = terms
        .par_iter()
        .map(|(exp, coef)| {
            let num = Pow::pow(*coef, spec.c);
            let den = Pow::pow(full_count(exp, spec.n, spec.q)?, spec.c - 1);
            Ok((SowVector((*exp).clone()), num / den))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleDistribution {
        spec: *spec,
        values: values.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
    })
}

pub fn ldpc2_expected(spec: &EnsembleSpec, table: &OrbitTable, k: &KMatrix) -> Result<EnsembleDistribution> {
    if spec.kind != EnsembleKind::Two {
        return Err(Error::InvalidParameter("expected an ensemble II spec".into()));
    }
    EnsembleSpec::new(spec.kind, spec.q, spec.c, spec.d, spec.n)?;
    let c = spec.c;
    let w = check_power(spec, table, k, c * spec.n / spec.d)?;
    // only exponents that are componentwise multiples of c contribute
    let terms: Vec<(&Vec<u32>, &BigRat)> = w
        .terms()
        .filter(|(exp, _)| exp.iter().all(|&e| e % c == 0))
        .collect();
    let values = terms
        .par_iter()
        .map(|(exp, coef)| {
            let i: Vec<u32> = exp.iter().map(|&e| e / c).collect();
            let num = int(&multinomial(spec.n as u64, &i)?) * *coef;
            let den = int(&multinomial((c * spec.n) as u64, exp)?)
                * Pow::pow(rat(spec.q as i64 - 1), (c - 1) * (spec.n - i[E00]));
            Ok((SowVector(i), num / den))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleDistribution {
        spec: *spec,
        values: values.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
    })
}

pub fn expected_distribution(spec: &EnsembleSpec, table: &OrbitTable, k: &KMatrix) -> Result<EnsembleDistribution> {
    match spec.kind {
        EnsembleKind::One => ldpc1_expected(spec, table, k),
        EnsembleKind::Two => ldpc2_expected(spec, table, k),
    }
}

/// `E[A_j(C) A_k(C)]` through the bivariate reduction of the expected sow
/// distribution.
pub fn expected_second_moment(dist: &EnsembleDistribution, j: u32, k: u32) -> Result<BigRat> {
    if j > dist.spec.n || k > dist.spec.n {
        return Err(Error::InvalidParameter(format!(
            "weights must lie in 0..={}",
            dist.spec.n
        )));
    }
    Ok(dist.second_moment(j, k))
}

/// Closed forms specific to `q = 2`, written directly in terms of
/// `g_d(x) = (1/4) Σ_{signs} (x00 ± x01 ± x10 ± x11)^d`, independently of the
/// K-matrix path.
pub mod binary {
    use super::*;

    /// `g_d` built from its four explicit linear forms.
    pub fn g(d: u32) -> Result<Enumerator> {
        let forms: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];
        let mut acc = Enumerator::zero(4);
        for f in forms {
            let lin = Enumerator::linear(&f.map(rat));
            acc = acc.add(&lin.power(d)?)?;
        }
        Ok(acc.scale(&(BigRat::one() / rat(4))))
    }

    fn multinomial4(n: u32, parts: [u32; 4]) -> BigRat {
        int(&multinomial(n as u64, &parts).expect("parts sum to n"))
    }

    /// `E[A_j A_k]` for ensemble I at `q = 2`.
    pub fn second_moment_one(c: u32, d: u32, n: u32, j: u32, k: u32) -> Result<BigRat> {
        EnsembleSpec::new(EnsembleKind::One, 2, c, d, n)?;
        let gp = g(d)?.power(n / d)?;
        let mut total = BigRat::zero();
        for l in 0..=j.min(k) {
            if j + k > n + l {
                continue;
            }
            let rest = n + l - j - k;
            // variable order (00), (01), (10), (11)
            let coef = gp.coefficient(&[rest, k - l, j - l, l])?;
            let m = multinomial4(n, [l, j - l, k - l, rest]);
            total += Pow::pow(coef, c) / Pow::pow(m, c - 1);
        }
        Ok(total)
    }

    /// `E[A_j A_k]` for ensemble II at `q = 2`.
    pub fn second_moment_two(c: u32, d: u32, n: u32, j: u32, k: u32) -> Result<BigRat> {
        EnsembleSpec::new(EnsembleKind::Two, 2, c, d, n)?;
        let gp = g(d)?.power(c * n / d)?;
        let mut total = BigRat::zero();
        for l in 0..=j.min(k) {
            if j + k > n + l {
                continue;
            }
            let rest = n + l - j - k;
            let coef = gp.coefficient(&[c * rest, c * (k - l), c * (j - l), c * l])?;
            let num = multinomial4(n, [l, j - l, k - l, rest]);
            let den = multinomial4(c * n, [c * l, c * (j - l), c * (k - l), c * rest]);
            total += num * coef / den;
        }
        Ok(total)
    }
}
