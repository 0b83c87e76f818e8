//! k-good random matrices and the enumerators of the code ensembles they
//! generate.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::{all_vectors, matrix_list_to_text, parse_matrix_list, rank_of, Matrix, Vector};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::orbits::{OrbitTable, E00};
use crate::poly::{int, multinomial, rat, rat_to_string, BigRat, Enumerator};

/// Default cap on `|support| * #U` products in exhaustive scans.
pub const DEFAULT_GOOD_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    /// Every matrix of `F_q^{m×n}`.
    Full,
    Explicit(Vec<Matrix>),
}

/// A uniformly distributed random `m × n` matrix over a finite support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixEnsemble {
    field: Arc<Field>,
    m: usize,
    n: usize,
    support: Support,
}

impl MatrixEnsemble {
    pub fn full(field: Arc<Field>, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("matrix dimensions must be positive".into()));
        }
        Ok(MatrixEnsemble {
            field,
            m,
            n,
            support: Support::Full,
        })
    }

    pub fn explicit(field: Arc<Field>, m: usize, n: usize, support: Vec<Matrix>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidParameter("support must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for a in &support {
            if a.field().as_ref() != field.as_ref() {
                return Err(Error::FieldMismatch(a.field().order(), field.order()));
            }
            if a.rows() != m || a.cols() != n {
                return Err(Error::InvalidParameter(format!(
                    "support matrix is {}x{}, expected {m}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !seen.insert(a.indices()) {
                return Err(Error::InvalidParameter("duplicate matrix in support".into()));
            }
        }
        Ok(MatrixEnsemble {
            field,
            m,
            n,
            support: Support::Explicit(support),
        })
    }

    /// Reads a blank-line separated list of matrices.
    pub fn parse(text: &str) -> Result<Self> {
        let ms = parse_matrix_list(text)?;
        let first = ms
            .first()
            .ok_or_else(|| Error::Parse("empty support file".into()))?;
        let (field, m, n) = (first.field().clone(), first.rows(), first.cols());
        Self::explicit(field, m, n, ms)
    }

    pub fn to_text(&self, limit: u64) -> Result<String> {
        Ok(matrix_list_to_text(&self.members(limit)?))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn support_size(&self) -> u128 {
        match &self.support {
            Support::Full => (self.field.order() as u128)
                .checked_pow((self.m * self.n) as u32)
                .unwrap_or(u128::MAX),
            Support::Explicit(v) => v.len() as u128,
        }
    }

    pub fn members(&self, limit: u64) -> Result<Vec<Matrix>> {
        match &self.support {
            Support::Full => all_matrices(&self.field, self.m, self.n, limit),
            Support::Explicit(v) => Ok(v.clone()),
        }
    }
}

/// Every matrix in `F_q^{rows×cols}`, row-major index order.
pub fn all_matrices(field: &Arc<Field>, rows: usize, cols: usize, limit: u64) -> Result<Vec<Matrix>> {
    all_vectors(field, rows * cols, limit)?
        .into_iter()
        .map(|v| Matrix::from_rows(field.clone(), cols, &v.chunks(cols).map(<[_]>::to_vec).collect::<Vec<_>>()))
        .collect()
}

/// All `k × m` matrices of rank `k`.
pub fn full_rank_matrices(field: &Arc<Field>, k: usize, m: usize, limit: u64) -> Result<Vec<Matrix>> {
    Ok(all_matrices(field, k, m, limit)?
        .into_iter()
        .filter(|u| u.rank() == k)
        .collect())
}

fn matrix_index(a: &Matrix, q: u64) -> usize {
    a.indices()
        .iter()
        .rev()
        .fold(0u64, |acc, &x| acc * q + x as u64) as usize
}

/// Whether `U·A` is uniform on `F_q^{k×n}` for every rank-`k` `U`.
pub fn is_k_good(e: &MatrixEnsemble, k: usize, limit: u64) -> Result<bool> {
    if k == 0 || k > e.m.min(e.n) {
        return Err(Error::InvalidParameter(format!(
            "k must lie in 1..={}",
            e.m.min(e.n)
        )));
    }
    let q = e.field.order() as u64;
    let size = e.support_size();
    let cells = (q as u128).checked_pow((k * e.n) as u32).unwrap_or(u128::MAX);
    if !size.is_multiple_of(cells) {
        return Ok(false);
    }
    if cells > limit as u128 {
        return Err(Error::infeasible("output cells", cells, limit));
    }
    let us = full_rank_matrices(&e.field, k, e.m, limit)?;
    let work = size.saturating_mul(us.len() as u128);
    if work > limit as u128 {
        return Err(Error::infeasible("k-good scan", work, limit));
    }
    let members = e.members(limit)?;
    let expect = (size / cells) as u64;
    let mut counts = vec![0u64; cells as usize];
    for u in &us {
        counts.iter_mut().for_each(|c| *c = 0);
        for a in &members {
            counts[matrix_index(&u.mul(a)?, q)] += 1;
        }
        if counts.iter().any(|&c| c != expect) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_mn(m: u32, n: u32) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::InvalidParameter(format!("need 0 < m < n, got m={m}, n={n}")));
    }
    Ok(())
}

/// `E[W_{C,C}(x) / |C|^2]` for the code generated by a 2-good `m × n` matrix.
pub fn theorem4_generator(m: u32, n: u32, table: &OrbitTable) -> Result<Enumerator> {
    check_mn(m, n)?;
    let nv = table.len();
    let q = rat(table.q() as i64);
    let qm: BigRat = Pow::pow(&q, m);
    let q2m = &qm * &qm;
    let one = BigRat::one();
    let x00 = Enumerator::variable(nv, E00);

    let mut acc = x00.power(n)?.scale(&(&one / &q2m));
    let mut coeffs = vec![BigRat::zero(); nv];
    coeffs[E00] = &one / &q;
    for s in 1..nv {
        let mut c = coeffs.clone();
        c[s] = (&q - &one) / &q;
        let term = Enumerator::linear(&c).power(n)?;
        acc = acc.add(&term.scale(&((&qm - &one) / &q2m)))?;
    }
    let mut c = vec![(&q - &one) / (&q * &q); nv];
    c[E00] = &one / (&q * &q);
    let mixed = Enumerator::linear(&c).power(n)?;
    acc.add(&mixed.scale(&((&qm - &one) * (&qm - &q) / &q2m)))
}

/// `E[W_{B,B}(x)]` for the kernel of a 2-good `m × n` parity-check matrix.
pub fn theorem4_parity(m: u32, n: u32, table: &OrbitTable) -> Result<Enumerator> {
    check_mn(m, n)?;
    let nv = table.len();
    let q = rat(table.q() as i64);
    let qm: BigRat = Pow::pow(&q, m);
    let q2m = &qm * &qm;
    let one = BigRat::one();
    let x00 = Enumerator::variable(nv, E00);

    let mut acc = x00.power(n)?.scale(&((&qm - &one) * (&qm - &q) / &q2m));
    let mut coeffs = vec![BigRat::zero(); nv];
    coeffs[E00] = one.clone();
    for s in 1..nv {
        let mut c = coeffs.clone();
        c[s] = &q - &one;
        let term = Enumerator::linear(&c).power(n)?;
        acc = acc.add(&term.scale(&((&qm - &one) / &q2m)))?;
    }
    let mut c = vec![&q - &one; nv];
    c[E00] = one.clone();
    let mixed = Enumerator::linear(&c).power(n)?;
    acc.add(&mixed.scale(&(&one / &q2m)))
}

/// `E[A_{sow(u,v)}] / A_{sow(u,v)}(F_q^n, F_q^n)`, i.e. the probability that
/// both `u` and `v` lie in the random code.
pub fn pairwise_probs(w: &Enumerator, u: &[FieldElement], v: &[FieldElement], table: &OrbitTable) -> Result<BigRat> {
    let i = table.sow(u, v)?;
    let n = u.len() as u32;
    if w.nvars() != table.len() {
        return Err(Error::LengthMismatch {
            expected: table.len(),
            got: w.nvars(),
        });
    }
    match w.homogeneous_degree() {
        Some(d) if d == n => {}
        Some(_) => return Err(Error::InvalidParameter("degree does not match vector length".into())),
        None => return Err(Error::NotHomogeneous),
    }
    let full = int(&multinomial(n as u64, &i.0)?)
        * Pow::pow(rat(table.q() as i64 - 1), n - i.0[E00]);
    Ok(w.coefficient(&i.0)? / full)
}

/// Random-coding quantities for linear intersecting codes drawn from the
/// kernel of a 2-good `(n-m) × n` parity-check matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectingReport {
    pub q: u32,
    pub m: u32,
    pub n: u32,
    pub union_bound: BigRat,
    pub rate: f64,
    pub rate_bound: f64,
    pub expected_size: BigRat,
    pub variance: BigRat,
    pub variance_bound: BigRat,
    pub deviation: f64,
    pub chebyshev_bound: BigRat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectingJson {
    pub q: u32,
    pub m: u32,
    pub n: u32,
    pub union_bound: String,
    pub rate: f64,
    pub rate_bound: f64,
    pub expected_size: String,
    pub variance: String,
    pub variance_bound: String,
    pub deviation: f64,
    pub chebyshev_bound: String,
}

/// `1 - log_q(2q - 1) / 2`.
pub fn rate_bound(q: u32) -> f64 {
    let q = q as f64;
    1.0 - 0.5 * (2.0 * q - 1.0).ln() / q.ln()
}

fn qpow(q: u32, e: i64) -> BigRat {
    let b = rat(q as i64);
    if e >= 0 {
        Pow::pow(b, e as u64)
    } else {
        BigRat::one() / Pow::pow(b, (-e) as u64)
    }
}

pub fn intersecting_report(q: u32, m: u32, n: u32) -> Result<IntersectingReport> {
    check_mn(m, n)?;
    if q < 2 {
        return Err(Error::InvalidParameter("q must be at least 2".into()));
    }
    let (mi, ni) = (m as i64, n as i64);
    let union_bound = Pow::pow(rat(2 * q as i64 - 1), n) * qpow(q, 2 * (mi - ni));
    let expected_size = qpow(q, mi) + BigRat::one() - qpow(q, mi - ni);
    let variance = qpow(q, mi - ni)
        * rat(q as i64 - 1)
        * (qpow(q, ni) - BigRat::one())
        * (BigRat::one() - qpow(q, mi - ni));
    Ok(IntersectingReport {
        q,
        m,
        n,
        union_bound,
        rate: m as f64 / n as f64,
        rate_bound: rate_bound(q),
        expected_size,
        variance,
        variance_bound: qpow(q, mi + 1),
        deviation: 2.0 * n as f64 * (q as f64).powf((m as f64 + 1.0) / 2.0),
        chebyshev_bound: BigRat::one() / rat(ni * ni),
    })
}

impl IntersectingReport {
    pub fn to_json(&self) -> IntersectingJson {
        IntersectingJson {
            q: self.q,
            m: self.m,
            n: self.n,
            union_bound: rat_to_string(&self.union_bound),
            rate: self.rate,
            rate_bound: self.rate_bound,
            expected_size: rat_to_string(&self.expected_size),
            variance: rat_to_string(&self.variance),
            variance_bound: rat_to_string(&self.variance_bound),
            deviation: self.deviation,
            chebyshev_bound: rat_to_string(&self.chebyshev_bound),
        }
    }
}

/// The two matrix sets in `F_2^{3×3}` obtained from `F_8` with
/// `α^3 + α + 1 = 0`: `{x(1,α,α²)}` and `{x(1,α,α²) + y(1,α²,α⁴)}`.
pub fn mrd_examples() -> Result<(MatrixEnsemble, MatrixEnsemble)> {
    let f8 = Field::with_modulus(2, &[1, 1, 0, 1])?;
    let f2 = Arc::new(Field::new(2, 1)?);
    let alpha = f8.element(2)?;
    let pw = |e: u64| f8.pow(alpha, e);
    let to_matrix = |cols: [FieldElement; 3]| -> Result<Matrix> {
        // column j holds the coordinates of cols[j]
        let mut rows = vec![vec![FieldElement::ZERO; 3]; 3];
        for (j, c) in cols.iter().enumerate() {
            for (r, d) in f8.coordinates(*c).into_iter().enumerate() {
                rows[r][j] = f2.element(d)?;
            }
        }
        Matrix::from_rows(f2.clone(), 3, &rows)
    };
    let mut a1 = Vec::new();
    let mut a2 = Vec::new();
    for x in f8.elements() {
        a1.push(to_matrix([0, 1, 2].map(|j| f8.mul(x, pw(j))))?);
        for y in f8.elements() {
            a2.push(to_matrix([0, 1, 2].map(|j| f8.add(f8.mul(x, pw(j)), f8.mul(y, pw(2 * j)))))?);
        }
    }
    Ok((
        MatrixEnsemble::explicit(f2.clone(), 3, 3, a1)?,
        MatrixEnsemble::explicit(f2, 3, 3, a2)?,
    ))
}

/// Key `(y, y')` as element index lists.
pub type PairKey = (Vec<u32>, Vec<u32>);

fn key(y: &[FieldElement], y2: &[FieldElement]) -> PairKey {
    (
        y.iter().map(|e| e.index()).collect(),
        y2.iter().map(|e| e.index()).collect(),
    )
}

/// Joint law of `(xG, x'G)` for uniform `G ∈ F_q^{m×n}`, by enumerating
/// every `G`.
pub fn corollary1_distribution(
    field: &Arc<Field>,
    n: usize,
    x: &[FieldElement],
    x2: &[FieldElement],
    limit: u64,
) -> Result<BTreeMap<PairKey, BigRat>> {
    let m = x.len();
    if x2.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: x2.len(),
        });
    }
    let gs = all_matrices(field, m, n, limit)?;
    let total = rat(gs.len() as i64);
    let mut counts: BTreeMap<PairKey, u64> = BTreeMap::new();
    for g in &gs {
        *counts.entry(key(&g.left_mul(x)?, &g.left_mul(x2)?)).or_insert(0) += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(k, c)| (k, rat(c as i64) / &total))
        .collect())
}

/// Closed-form `P{xG = y, x'G = y'}` from the five-case table.
pub fn corollary1_closed_form(
    field: &Arc<Field>,
    x: &[FieldElement],
    x2: &[FieldElement],
    y: &[FieldElement],
    y2: &[FieldElement],
) -> BigRat {
    let n = y.len() as i64;
    let q = field.order();
    let zero = |v: &[FieldElement]| v.iter().all(|e| e.is_zero());
    let ind = |b: bool| if b { BigRat::one() } else { BigRat::zero() };
    match (zero(x), zero(x2)) {
        (true, true) => ind(zero(y) && zero(y2)),
        (true, false) => qpow(q, -n) * ind(zero(y)),
        (false, true) => qpow(q, -n) * ind(zero(y2)),
        (false, false) => {
            let scalar = field
                .nonzero_elements()
                .find(|&a| x.iter().zip(x2).all(|(&u, &w)| field.mul(a, u) == w));
            match scalar {
                Some(a) => qpow(q, -n) * ind(y.iter().zip(y2).all(|(&u, &w)| field.mul(a, u) == w)),
                None => qpow(q, -2 * n),
            }
        }
    }
}

/// Whether `{U G : G ∈ F_q^{m×n}}` is uniform for every invertible `U`.
pub fn invertible_product_uniform(field: &Arc<Field>, m: usize, n: usize, limit: u64) -> Result<bool> {
    let gs = all_matrices(field, m, n, limit)?;
    let us = full_rank_matrices(field, m, m, limit)?;
    let work = (gs.len() as u128) * (us.len() as u128);
    if work > limit as u128 {
        return Err(Error::infeasible("uniformity scan", work, limit));
    }
    let q = field.order() as u64;
    for u in &us {
        let mut counts = vec![0u32; gs.len()];
        for g in &gs {
            counts[matrix_index(&u.mul(g)?, q)] += 1;
        }
        if counts.iter().any(|&c| c != 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All nonzero vectors of `F_q^n` up to scaling: first nonzero entry 1.
pub fn projective_points(field: &Field, n: usize, limit: u64) -> Result<Vec<Vector>> {
    Ok(all_vectors(field, n, limit)?
        .into_iter()
        .filter(|v| v.iter().find(|e| !e.is_zero()) == Some(&FieldElement::ONE))
        .collect())
}

/// Linear independence of two vectors.
pub fn independent(field: &Arc<Field>, u: &[FieldElement], v: &[FieldElement]) -> bool {
    rank_of(field, &[u.to_vec(), v.to_vec()]) == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn f(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    fn ones(nv: usize) -> Vec<BigRat> {
        vec![BigRat::one(); nv]
    }

    #[test]
    fn mrd_sizes_and_goodness() {
        let (a1, a2) = mrd_examples().unwrap();
        assert_eq!(a1.support_size(), 8);
        assert_eq!(a2.support_size(), 64);
        assert!(a2.support_size() < 512);
        assert!(is_k_good(&a1, 1, DEFAULT_GOOD_LIMIT).unwrap());
        assert!(!is_k_good(&a1, 2, DEFAULT_GOOD_LIMIT).unwrap());
        assert!(is_k_good(&a2, 1, DEFAULT_GOOD_LIMIT).unwrap());
        assert!(is_k_good(&a2, 2, DEFAULT_GOOD_LIMIT).unwrap());
    }

    #[test]
    fn mrd_first_member_columns() {
        let (a1, _) = mrd_examples().unwrap();
        let Support::Explicit(ms) = a1.support() else {
            panic!("explicit support expected")
        };
        // x = 1: columns are 1, α, α², i.e. the identity
        assert_eq!(ms[1].indices(), vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert!(ms[0].indices().iter().all(|&x| x == 0));
    }

    #[test]
    fn full_ensemble_is_good() {
        let e = MatrixEnsemble::full(f(2), 2, 3).unwrap();
        assert!(is_k_good(&e, 1, DEFAULT_GOOD_LIMIT).unwrap());
        assert!(is_k_good(&e, 2, DEFAULT_GOOD_LIMIT).unwrap());
        assert!(is_k_good(&e, 3, DEFAULT_GOOD_LIMIT).is_err());
    }

    #[test]
    fn single_matrix_is_not_good() {
        let fld = f(2);
        let e = MatrixEnsemble::explicit(fld.clone(), 1, 2, vec![Matrix::zeros(fld, 1, 2)]).unwrap();
        assert!(!is_k_good(&e, 1, DEFAULT_GOOD_LIMIT).unwrap());
    }

    #[test]
    fn ensemble_validation() {
        let fld = f(2);
        let z = Matrix::zeros(fld.clone(), 1, 2);
        assert!(MatrixEnsemble::explicit(fld.clone(), 1, 2, vec![]).is_err());
        assert!(MatrixEnsemble::explicit(fld.clone(), 1, 2, vec![z.clone(), z.clone()]).is_err());
        assert!(MatrixEnsemble::explicit(fld.clone(), 2, 2, vec![z.clone()]).is_err());
        assert!(MatrixEnsemble::explicit(f(3), 1, 2, vec![z]).is_err());
    }

    #[test]
    fn support_text_round_trip() {
        let (a1, _) = mrd_examples().unwrap();
        let text = a1.to_text(1 << 10).unwrap();
        assert_eq!(MatrixEnsemble::parse(&text).unwrap(), a1);
    }

    #[test]
    fn generator_side_normalizes() {
        for q in [2u64, 3, 4] {
            let t = OrbitTable::for_order(q).unwrap();
            for n in 2..=6u32 {
                for m in 1..n {
                    let w = theorem4_generator(m, n, &t).unwrap();
                    assert_eq!(w.evaluate(&ones(t.len())).unwrap(), BigRat::one());
                    assert_eq!(w.homogeneous_degree(), Some(n));
                }
            }
        }
    }

    #[test]
    fn parity_side_small_case() {
        let t = OrbitTable::for_order(2).unwrap();
        let w = theorem4_parity(1, 2, &t).unwrap();
        // (1/4)[(x00+x01)²+(x00+x10)²+(x00+x11)²] + (1/4)(x00+x01+x10+x11)²
        let quarter = ratio(1, 4);
        let mut expect = Enumerator::zero(4);
        for s in 1..4 {
            let mut c = vec![rat(0); 4];
            c[0] = rat(1);
            c[s] = rat(1);
            expect = expect.add(&Enumerator::linear(&c).power(2).unwrap().scale(&quarter)).unwrap();
        }
        expect = expect.add(&Enumerator::linear(&ones(4)).power(2).unwrap().scale(&quarter)).unwrap();
        assert_eq!(w, expect);
        assert_eq!(w.evaluate(&ones(4)).unwrap(), rat(7));
    }

    #[test]
    fn parity_side_is_transform_of_generator_side() {
        use crate::macwilliams::{transform, KMatrix};
        for q in [2u64, 3] {
            let t = OrbitTable::for_order(q).unwrap();
            let k = KMatrix::build(&t);
            for (m, n) in [(1, 2), (1, 3), (2, 3), (2, 4)] {
                let g = theorem4_generator(m, n, &t).unwrap();
                let p = theorem4_parity(m, n, &t).unwrap();
                assert_eq!(transform(&g, &rat(1), &rat(1), &k).unwrap(), p);
            }
        }
    }

    #[test]
    fn pairwise_constants() {
        for q in [2u64, 3] {
            let t = OrbitTable::for_order(q).unwrap();
            let fld = t.field().clone();
            for (m, n) in [(1u32, 2u32), (1, 3), (2, 3)] {
                let w = theorem4_parity(m, n, &t).unwrap();
                let qm = Pow::pow(rat(q as i64), m);
                let vs = all_vectors(&fld, n as usize, 1 << 12).unwrap();
                let zero = vec![FieldElement::ZERO; n as usize];
                for u in &vs {
                    let p = pairwise_probs(&w, u, &zero, &t).unwrap();
                    if u == &zero {
                        assert_eq!(p, BigRat::one());
                    } else {
                        assert_eq!(p, BigRat::one() / &qm);
                    }
                    for v in &vs {
                        if independent(&fld, u, v) {
                            assert_eq!(pairwise_probs(&w, u, v, &t).unwrap(), BigRat::one() / (&qm * &qm));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theorem4_rejects_bad_dimensions() {
        let t = OrbitTable::for_order(2).unwrap();
        assert!(theorem4_generator(3, 3, &t).is_err());
        assert!(theorem4_parity(0, 3, &t).is_err());
        assert!(intersecting_report(2, 4, 3).is_err());
    }

    #[test]
    fn intersecting_values() {
        assert!((rate_bound(2) - 0.20751875).abs() < 1e-8);
        assert!((rate_bound(3) - 0.26752).abs() < 1e-5);
        let r = intersecting_report(2, 1, 2).unwrap();
        assert_eq!(r.expected_size, ratio(5, 2));
        assert_eq!(r.union_bound, ratio(9, 4));
        assert_eq!(r.variance, ratio(3, 4));
        assert_eq!(r.variance_bound, rat(4));
        assert_eq!(r.chebyshev_bound, ratio(1, 4));
        for (q, m, n) in [(2, 3, 16), (3, 2, 7), (4, 5, 9)] {
            let r = intersecting_report(q, m, n).unwrap();
            assert!(r.variance < r.variance_bound);
        }
    }

    #[test]
    fn corollary1_matches_table() {
        let fld = f(2);
        for (m, n) in [(2usize, 2usize), (2, 3)] {
            let xs = all_vectors(&fld, m, 64).unwrap();
            let ys = all_vectors(&fld, n, 64).unwrap();
            for x in &xs {
                for x2 in &xs {
                    let d = corollary1_distribution(&fld, n, x, x2, 1 << 12).unwrap();
                    for y in &ys {
                        for y2 in &ys {
                            let got = d.get(&key(y, y2)).cloned().unwrap_or_else(BigRat::zero);
                            assert_eq!(got, corollary1_closed_form(&fld, x, x2, y, y2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corollary1_q3_scaled_case() {
        let fld = f(3);
        let two = fld.element(2).unwrap();
        let x = vec![FieldElement::ONE, FieldElement::ZERO];
        let x2 = vec![two, FieldElement::ZERO];
        let d = corollary1_distribution(&fld, 2, &x, &x2, 1 << 12).unwrap();
        assert_eq!(d.len(), 9);
        assert!(d.values().all(|p| p == &ratio(1, 9)));
        for (y, y2) in d.keys() {
            assert!(y.iter().zip(y2).all(|(&a, &b)| (2 * a) % 3 == b));
        }
    }

    #[test]
    fn theorem5_small() {
        let fld = f(2);
        for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3)] {
            assert!(invertible_product_uniform(&fld, m, n, 1 << 16).unwrap());
        }
    }

    #[test]
    fn projective_point_count() {
        let fld = f(3);
        assert_eq!(projective_points(&fld, 3, 64).unwrap().len(), 13);
    }
}
