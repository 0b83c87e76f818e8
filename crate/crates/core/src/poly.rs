//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! An [`Enumerator`] in `q+2` variables holds a second-order weight
//! enumerator: the exponent of variable `s` counts coordinates whose pair
//! falls in orbit `s`. Terms are kept in a `BTreeMap`, so iteration and
//! serialization are lexicographic in the exponent vector.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::{OrbitTable, SowVector, E00, E01, E10};

pub type BigRat = BigRational;

/// Refuse to build polynomials whose monomial-count bound exceeds this.
pub const DEFAULT_MONOMIAL_LIMIT: u64 = 5_000_000;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: &BigUint) -> BigRat {
    BigRat::from_integer(BigInt::from(n.clone()))
}

/// `num/den` rendering; integers print as `num/1`.
pub fn rat_to_string(r: &BigRat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let parse = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRat::new(parse(n)?, d))
        }
        None => Ok(BigRat::from_integer(parse(s)?)),
    }
}

pub fn rat_to_f64(r: &BigRat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `binom(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// `n! / prod_s i_s!`.
pub fn multinomial(n: u64, i: &[u32]) -> Result<BigUint> {
    let total: u64 = i.iter().map(|&c| c as u64).sum();
    if total != n {
        return Err(Error::SumMismatch {
            expected: n,
            got: total,
        });
    }
    let mut acc = BigUint::one();
    let mut used = 0u64;
    for &c in i {
        used += c as u64;
        acc *= binomial(used, c as u64);
    }
    Ok(acc)
}

/// Number of monomials of total degree exactly `degree` in `nvars` variables.
pub fn monomial_count(nvars: usize, degree: u64) -> BigUint {
    if nvars == 0 {
        return if degree == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(degree + nvars as u64 - 1, nvars as u64 - 1)
}

fn guard(nvars: usize, degree: u64, limit: u64) -> Result<()> {
    let bound = monomial_count(nvars, degree);
    if bound > BigUint::from(limit) {
        return Err(Error::infeasible("monomial count", bound, limit));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
pub struct Enumerator {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRat>,
}

impl fmt::Debug for Enumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Enumerator[{}]({})", self.nvars, self)
    }
}

impl fmt::Display for Enumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (exp, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (s, &e) in exp.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{s}")?,
                    _ => write!(f, "*x{s}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl Enumerator {
    pub fn zero(nvars: usize) -> Self {
        Enumerator {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRat) -> Self {
        let mut e = Self::zero(nvars);
        if !c.is_zero() {
            e.terms.insert(vec![0; nvars], c);
        }
        e
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRat::one())
    }

    pub fn monomial(exp: Vec<u32>, c: BigRat) -> Self {
        let nvars = exp.len();
        let mut e = Self::zero(nvars);
        if !c.is_zero() {
            e.terms.insert(exp, c);
        }
        e
    }

    pub fn variable(nvars: usize, s: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[s] = 1;
        Self::monomial(exp, BigRat::one())
    }

    /// `Σ_s coeffs[s] * x_s`.
    pub fn linear(coeffs: &[BigRat]) -> Self {
        let nvars = coeffs.len();
        let mut e = Self::zero(nvars);
        for (s, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exp = vec![0; nvars];
                exp[s] = 1;
                e.terms.insert(exp, c.clone());
            }
        }
        e
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRat)>,
    {
        let mut out = Self::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    got: exp.len(),
                });
            }
            out.accumulate(exp, c);
        }
        Ok(out)
    }

    /// Enumerator of a sow distribution: `Σ_i A_i x^i`.
    pub fn from_distribution<'a, I>(nvars: usize, dist: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a SowVector, BigRat)>,
    {
        Self::from_terms(nvars, dist.into_iter().map(|(i, c)| (i.0.clone(), c)))
    }

    fn accumulate(&mut self, exp: Vec<u32>, c: BigRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Vec<u32>, BigRat> {
        self.terms
    }

    /// Common total degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.nvars,
                got: other.nvars,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.accumulate(exp.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.accumulate(exp.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Enumerator {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut acc: HashMap<Vec<u32>, BigRat> =
            HashMap::with_capacity(self.terms.len().saturating_mul(other.terms.len()).min(1 << 20));
        let mut exp = vec![0u32; self.nvars];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for s in 0..self.nvars {
                    exp[s] = ea[s] + eb[s];
                }
                let prod = mul_coef(ca, cb);
                match acc.get_mut(exp.as_slice()) {
                    Some(slot) => *slot += prod,
                    None => {
                        acc.insert(exp.clone(), prod);
                    }
                }
            }
        }
        Ok(Enumerator {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        self.power_with_limit(k, DEFAULT_MONOMIAL_LIMIT)
    }

    /// Binary exponentiation; refuses up front when the result could exceed
    /// `limit` monomials.
    pub fn power_with_limit(&self, k: u32, limit: u64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one(self.nvars));
        }
        let degree = self.max_degree() as u64 * k as u64;
        if self.homogeneous_degree().is_some() {
            guard(self.nvars, degree, limit)?;
        } else {
            guard(self.nvars + 1, degree, limit)?;
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.multiply(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.multiply(&base)?;
        }
        Ok(result.expect("k > 0"))
    }

    pub fn coefficient(&self, exp: &[u32]) -> Result<BigRat> {
        if exp.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: exp.len(),
            });
        }
        Ok(self.terms.get(exp).cloned().unwrap_or_else(BigRat::zero))
    }

    pub fn evaluate(&self, point: &[BigRat]) -> Result<BigRat> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut total = BigRat::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exp) {
                if e > 0 {
                    term *= Pow::pow(x, e);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `x_S ← Σ_T x_T m[T][S]` (the row-vector product `x·m`).
    pub fn linear_substitute(&self, m: &[Vec<BigRat>]) -> Result<Self> {
        self.linear_substitute_with_limit(m, DEFAULT_MONOMIAL_LIMIT)
    }

    pub fn linear_substitute_with_limit(&self, m: &[Vec<BigRat>], limit: u64) -> Result<Self> {
        let nv = self.nvars;
        if m.len() != nv || m.iter().any(|row| row.len() != nv) {
            return Err(Error::LengthMismatch {
                expected: nv,
                got: m.len(),
            });
        }
        guard(nv + 1, self.max_degree() as u64, limit)?;
        let forms: Vec<Self> = (0..nv)
            .map(|s| {
                let coeffs: Vec<BigRat> = (0..nv).map(|t| m[t][s].clone()).collect();
                Self::linear(&coeffs)
            })
            .collect();
        // powers[s][e] = forms[s]^e, filled lazily
        let mut powers: Vec<Vec<Self>> = forms.iter().map(|_| vec![Self::one(nv)]).collect();
        let mut out = Self::zero(nv);
        for (exp, c) in &self.terms {
            let mut term = Self::constant(nv, c.clone());
            for (s, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[s].len() <= e as usize {
                    let next = powers[s].last().unwrap().multiply(&forms[s])?;
                    powers[s].push(next);
                }
                term = term.multiply(&powers[s][e as usize])?;
            }
            for (e2, c2) in term.terms {
                out.accumulate(e2, c2);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> EnumeratorJson {
        EnumeratorJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: rat_to_string(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &EnumeratorJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), parse_rat(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.nvars, terms)
    }
}

fn mul_coef(a: &BigRat, b: &BigRat) -> BigRat {
    if a.denom().is_one() && b.denom().is_one() {
        BigRat::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// Canonical JSON form of an enumerator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

/// `W_{F_q^n, F_q^n}` as the `n`-th power of `x_e00 + (q-1) Σ_{S≠e00} x_S`.
pub fn complete_enumerator(table: &OrbitTable, n: u32) -> Result<Enumerator> {
    let q = table.q() as i64;
    let mut coeffs = vec![rat(q - 1); table.len()];
    coeffs[E00] = rat(1);
    Enumerator::linear(&coeffs).power(n)
}

/// Polynomial in `(x, y)` with rational coefficients, keyed by `(deg_x, deg_y)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bivariate {
    pub terms: BTreeMap<(u32, u32), BigRat>,
}

impl Bivariate {
    /// `W_U(x) · W_V(y)` from two weight distributions (index = weight).
    pub fn product_of(wu: &[BigRat], wv: &[BigRat]) -> Self {
        let mut terms = BTreeMap::new();
        for (j, a) in wu.iter().enumerate() {
            for (k, b) in wv.iter().enumerate() {
                let c = a * b;
                if !c.is_zero() {
                    terms.insert((j as u32, k as u32), c);
                }
            }
        }
        Bivariate { terms }
    }

    pub fn coefficient(&self, j: u32, k: u32) -> BigRat {
        self.terms.get(&(j, k)).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Coefficients of `p(x, 1)`, indexed by the power of `x`.
    pub fn at_y_one(&self) -> Vec<BigRat> {
        let len = self.terms.keys().map(|&(j, _)| j as usize + 1).max().unwrap_or(0);
        let mut out = vec![BigRat::zero(); len];
        for (&(j, _), c) in &self.terms {
            out[j as usize] += c;
        }
        out
    }
}

/// Substitutes `e00 → 1`, `e10 → x`, `e01 → y` and every other orbit `→ xy`.
pub fn bivariate_projection(a: &Enumerator, table: &OrbitTable) -> Result<Bivariate> {
    if a.nvars() != table.len() {
        return Err(Error::LengthMismatch {
            expected: table.len(),
            got: a.nvars(),
        });
    }
    if !a.is_zero() && a.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    let mut terms: BTreeMap<(u32, u32), BigRat> = BTreeMap::new();
    for (exp, c) in a.terms() {
        let both: u32 = exp[3..].iter().sum();
        let key = (exp[E10] + both, exp[E01] + both);
        let slot = terms.entry(key).or_insert_with(BigRat::zero);
        *slot += c;
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(Bivariate { terms })
}

/// `Σ_l Σ_{i: i_e10 = j-l, i_e01 = k-l, Σ_{Π11} i_S = l} dist(i)`; yields
/// `A_j(U) A_k(V)` for an exact distribution and `E[A_j A_k]` for an
/// expected one.
pub fn second_moment_pair<'a, I>(dist: I, j: u32, k: u32, n: u32) -> BigRat
where
    I: IntoIterator<Item = (&'a SowVector, &'a BigRat)>,
{
    let mut total = BigRat::zero();
    if j > n || k > n {
        return total;
    }
    for (i, value) in dist {
        let c = &i.0;
        let l: u32 = c[3..].iter().sum();
        if c[E10] + l == j && c[E01] + l == k && i.total() == n as u64 {
            total += value;
        }
    }
    total
}

/// True when every coefficient is a nonnegative integer.
pub fn is_nonnegative_integral(a: &Enumerator) -> bool {
    a.terms().all(|(_, c)| c.is_integer() && !c.is_negative())
}
