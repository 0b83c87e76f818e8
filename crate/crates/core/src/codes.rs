//! Matrices and linear codes over `F_q`, monomial maps, and brute-force
//! second-order weight distributions.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::orbits::{OrbitTable, SowVector};

/// Default cap on enumerated codeword pairs.
pub const DEFAULT_PAIR_LIMIT: u64 = 1 << 20;

pub type Vector = Vec<FieldElement>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(field: Arc<Field>, cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds from raw element indices, row-major.
    pub fn from_indices(field: Arc<Field>, rows: usize, cols: usize, entries: &[u32]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let data = entries
            .iter()
            .map(|&x| field.element(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn indices(&self) -> Vec<u32> {
        self.data.iter().map(|e| e.index()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, f.mul(a, other.get(k, c))));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[FieldElement]) -> Result<Vector> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(a, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let tmp = m.get(p, c);
                    m.set(p, c, m.get(row, c));
                    m.set(row, c, tmp);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                m.set(row, c, f.mul(inv, m.get(row, c)));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of `{v : M vᵀ = 0}`.
    pub fn nullspace(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f.clone(), free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.set(b, fc, FieldElement::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(b, pc, f.neg(r.get(pr, fc)));
            }
        }
        basis
    }

    /// `(rref, rank, nullspace basis)`.
    pub fn rref_rank_nullspace(&self) -> (Matrix, usize, Matrix) {
        let (r, pivots) = self.rref();
        (r, pivots.len(), self.nullspace())
    }

    /// Parses the text format: `q rows cols` followed by row-major indices.
    pub fn parse(text: &str) -> Result<Matrix> {
        let nums = text
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 3 {
            return Err(Error::Parse("expected header `q rows cols`".into()));
        }
        let field = Arc::new(Field::from_order(nums[0])?);
        Self::parse_body(field, &nums)
    }

    fn parse_body(field: Arc<Field>, nums: &[u64]) -> Result<Matrix> {
        let (rows, cols) = (nums[1] as usize, nums[2] as usize);
        let body = &nums[3..];
        if body.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                rows * cols,
                body.len()
            )));
        }
        let entries: Vec<u32> = body.iter().map(|&x| x as u32).collect();
        Self::from_indices(field, rows, cols, &entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.order(), self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.index().to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}

/// Parses blank-line-separated matrix blocks sharing one field.
pub fn parse_matrix_list(text: &str) -> Result<Vec<Matrix>> {
    let mut out: Vec<Matrix> = Vec::new();
    let mut field: Option<Arc<Field>> = None;
    for block in text.split("\n\n").map(str::trim).filter(|b| !b.is_empty()) {
        let nums = block
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 3 {
            return Err(Error::Parse("expected header `q rows cols`".into()));
        }
        let f = match &field {
            Some(f) if f.order() as u64 == nums[0] => f.clone(),
            Some(f) => return Err(Error::FieldMismatch(f.order(), nums[0] as u32)),
            None => {
                let f = Arc::new(Field::from_order(nums[0])?);
                field = Some(f.clone());
                f
            }
        };
        out.push(Matrix::parse_body(f, &nums)?);
    }
    Ok(out)
}

pub fn matrix_list_to_text(ms: &[Matrix]) -> String {
    ms.iter().map(Matrix::to_text).collect::<Vec<_>>().join("\n")
}

/// A linear code stored by a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    basis: Matrix,
}

impl LinearCode {
    /// Row space of `g`.
    pub fn from_generator(g: &Matrix) -> Self {
        let (r, pivots) = g.rref();
        let rows: Vec<Vector> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = Matrix::from_rows(g.field().clone(), g.cols(), &rows).expect("rows have width cols");
        LinearCode { n: g.cols(), basis }
    }

    /// Kernel `{v : H vᵀ = 0}`.
    pub fn from_parity_check(h: &Matrix) -> Self {
        Self::from_generator(&h.nullspace())
    }

    pub fn zero(field: Arc<Field>, n: usize) -> Self {
        LinearCode {
            n,
            basis: Matrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: Arc<Field>, n: usize) -> Self {
        let id = Matrix::identity(field, n);
        Self::from_generator(&id)
    }

    /// Image of `v ↦ (v, …, v)` in `F_q^c`.
    pub fn repetition(field: Arc<Field>, c: usize) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidParameter("repetition length must be >= 1".into()));
        }
        let g = Matrix::from_rows(field, c, &[vec![FieldElement::ONE; c]])?;
        Ok(Self::from_generator(&g))
    }

    /// Kernel of `v ↦ Σ v_i` on `F_q^d`.
    pub fn check(field: Arc<Field>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("check length must be >= 1".into()));
        }
        let h = Matrix::from_rows(field, d, &[vec![FieldElement::ONE; d]])?;
        Ok(Self::from_parity_check(&h))
    }

    pub fn field(&self) -> &Arc<Field> {
        self.basis.field()
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// `q^k`, saturating.
    pub fn size(&self) -> u64 {
        (self.field().order() as u64)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u64::MAX)
    }

    pub fn dual(&self) -> Self {
        if self.dimension() == 0 {
            return Self::full(self.field().clone(), self.n);
        }
        Self::from_parity_check(&self.basis)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut rows = self.basis.row_vectors();
        rows.push(v.to_vec());
        let m = Matrix::from_rows(self.field().clone(), self.n, &rows).expect("width checked");
        m.rank() == self.dimension()
    }

    /// Row space of a uniformly random `k × n` matrix.
    pub fn random<R: Rng + ?Sized>(field: Arc<Field>, n: usize, k: usize, rng: &mut R) -> Self {
        let q = field.order();
        let entries: Vec<u32> = (0..k * n).map(|_| rng.random_range(0..q)).collect();
        let g = Matrix::from_indices(field, k, n, &entries).expect("entries are in range");
        Self::from_generator(&g)
    }

    /// Every codeword exactly once, in the order of the message index with
    /// the first basis row least significant.
    pub fn codewords(&self, limit: u64) -> Result<Vec<Vector>> {
        let size = self.size();
        if size > limit {
            return Err(Error::infeasible("codeword enumeration", size, limit));
        }
        let f = self.field();
        let q = f.order() as u64;
        let k = self.dimension();
        let mut out = Vec::with_capacity(size as usize);
        for idx in 0..size {
            let mut word = vec![FieldElement::ZERO; self.n];
            let mut x = idx;
            for r in 0..k {
                let a = f.elem((x % q) as u32);
                x /= q;
                if a.is_zero() {
                    continue;
                }
                for (c, slot) in word.iter_mut().enumerate() {
                    *slot = f.add(*slot, f.mul(a, self.basis.get(r, c)));
                }
            }
            out.push(word);
        }
        Ok(out)
    }
}

/// All vectors of `F_q^n`, in index order with coordinate 0 least significant.
pub fn all_vectors(field: &Field, n: usize, limit: u64) -> Result<Vec<Vector>> {
    let q = field.order() as u64;
    let size = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > limit {
        return Err(Error::infeasible("vector enumeration", size, limit));
    }
    Ok((0..size)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let a = field.elem((x % q) as u32);
                    x /= q;
                    a
                })
                .collect()
        })
        .collect())
}

/// Every subspace of `F_q^n`, sorted by dimension then basis.
pub fn all_subspaces(field: &Arc<Field>, n: usize, limit: u64) -> Result<Vec<LinearCode>> {
    let q = field.order() as u64;
    let work = q.checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if work > limit {
        return Err(Error::infeasible("subspace enumeration", work, limit));
    }
    let mut seen = BTreeMap::new();
    for k in 0..=n {
        for entries in all_vectors(field, k * n, limit)? {
            let idx: Vec<u32> = entries.iter().map(|e| e.index()).collect();
            let code = LinearCode::from_generator(&Matrix::from_indices(field.clone(), k, n, &idx)?);
            seen.entry((code.dimension(), code.basis().indices())).or_insert(code);
        }
    }
    Ok(seen.into_values().collect())
}

pub fn scale_vector(field: &Field, a: FieldElement, v: &[FieldElement]) -> Vector {
    v.iter().map(|&x| field.mul(a, x)).collect()
}

/// Rank of the matrix whose rows are the given vectors.
pub fn rank_of(field: &Arc<Field>, rows: &[Vector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(field.clone(), rows[0].len(), rows)
        .map(|m| m.rank())
        .unwrap_or(0)
}

/// `A_i(U, V)` for explicit vector lists.
pub fn sow_distribution(
    u: &[Vector],
    v: &[Vector],
    table: &OrbitTable,
    limit: u64,
) -> Result<BTreeMap<SowVector, u64>> {
    let pairs = (u.len() as u64).saturating_mul(v.len() as u64);
    if pairs > limit {
        return Err(Error::infeasible("pair enumeration", pairs, limit));
    }
    let mut dist = BTreeMap::new();
    for a in u {
        for b in v {
            *dist.entry(table.sow(a, b)?).or_insert(0) += 1;
        }
    }
    Ok(dist)
}

/// `A_i(U, V)` for two codes, enumerating both.
pub fn code_sow_distribution(
    u: &LinearCode,
    v: &LinearCode,
    table: &OrbitTable,
    limit: u64,
) -> Result<BTreeMap<SowVector, u64>> {
    let pairs = u.size().saturating_mul(v.size());
    if pairs > limit {
        return Err(Error::infeasible("pair enumeration", pairs, limit));
    }
    sow_distribution(&u.codewords(limit)?, &v.codewords(limit)?, table, limit)
}

/// Classical weight distribution `A_j(C)`, index = Hamming weight.
pub fn weight_distribution(words: &[Vector], n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n + 1];
    for w in words {
        out[w.iter().filter(|x| !x.is_zero()).count()] += 1;
    }
    out
}

/// `ξ_{c,σ}(v)_i = c_i v_{σ^{-1}(i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    scalars: Vec<FieldElement>,
    /// `perm[j] = σ(j)`
    perm: Vec<usize>,
    inverse: Vec<usize>,
}

impl MonomialMap {
    pub fn new(scalars: Vec<FieldElement>, perm: Vec<usize>) -> Result<Self> {
        let n = scalars.len();
        if perm.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        if scalars.iter().any(|s| s.is_zero()) {
            return Err(Error::InvalidParameter("monomial scalars must be nonzero".into()));
        }
        let mut inverse = vec![usize::MAX; n];
        for (j, &s) in perm.iter().enumerate() {
            if s >= n || inverse[s] != usize::MAX {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            inverse[s] = j;
        }
        Ok(MonomialMap {
            scalars,
            perm,
            inverse,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![FieldElement::ONE; n], (0..n).collect()).expect("identity is valid")
    }

    pub fn len(&self) -> usize {
        self.scalars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scalars.is_empty()
    }

    pub fn scalars(&self) -> &[FieldElement] {
        &self.scalars
    }

    /// `σ` as `perm[j] = σ(j)`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// `σ^{-1}`.
    pub fn inverse_permutation(&self) -> &[usize] {
        &self.inverse
    }

    pub fn apply(&self, field: &Field, v: &[FieldElement]) -> Result<Vector> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        Ok((0..v.len())
            .map(|i| field.mul(self.scalars[i], v[self.inverse[i]]))
            .collect())
    }

    /// `ξ^{-1}(w)_j = c_{σ(j)}^{-1} w_{σ(j)}`.
    pub fn apply_inverse(&self, field: &Field, w: &[FieldElement]) -> Result<Vector> {
        if w.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: w.len(),
            });
        }
        (0..w.len())
            .map(|j| {
                let i = self.perm[j];
                field.div(w[i], self.scalars[i])
            })
            .collect()
    }

    /// Uniform over all `n! (q-1)^n` monomial maps.
    pub fn sample<R: Rng + ?Sized>(n: usize, field: &Field, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let q = field.order();
        let scalars = (0..n)
            .map(|_| field.elem(rng.random_range(1..q)))
            .collect();
        Self::new(scalars, perm).expect("sampled map is valid")
    }

    /// Deterministic sample keyed by a 64-bit seed.
    pub fn sample_seeded(n: usize, field: &Field, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::sample(n, field, &mut rng)
    }

    /// Every monomial map on `n` coordinates.
    pub fn all(n: usize, field: &Field, limit: u64) -> Result<Vec<Self>> {
        let count = monomial_group_order(n, field.order());
        if count > limit as u128 {
            return Err(Error::infeasible("monomial maps", count, limit));
        }
        let q = field.order();
        let mut out = Vec::with_capacity(count as usize);
        let perms = permutations(n);
        let scalar_count = ((q - 1) as u64).pow(n as u32);
        for perm in &perms {
            for mut s in 0..scalar_count {
                let scalars = (0..n)
                    .map(|_| {
                        let a = field.elem(1 + (s % (q as u64 - 1)) as u32);
                        s /= q as u64 - 1;
                        a
                    })
                    .collect();
                out.push(Self::new(scalars, perm.clone())?);
            }
        }
        Ok(out)
    }
}

/// `n! (q-1)^n`, saturating.
pub fn monomial_group_order(n: usize, q: u32) -> u128 {
    let mut acc: u128 = 1;
    for k in 1..=n as u128 {
        acc = acc.saturating_mul(k).saturating_mul(q as u128 - 1);
    }
    acc
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    fn v(field: &Field, xs: &[u32]) -> Vector {
        xs.iter().map(|&x| field.element(x).unwrap()).collect()
    }

    fn idx(words: &[Vector]) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = words
            .iter()
            .map(|w| w.iter().map(|e| e.index()).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn rref_rank_nullspace_examples() {
        let f2 = f(2);
        let id = Matrix::identity(f2.clone(), 3);
        let (_, rank, ns) = id.rref_rank_nullspace();
        assert_eq!(rank, 3);
        assert_eq!(ns.rows(), 0);

        let z = Matrix::zeros(f2.clone(), 2, 3);
        let (_, rank, ns) = z.rref_rank_nullspace();
        assert_eq!(rank, 0);
        assert_eq!(ns.rows(), 3);

        let m = Matrix::from_indices(f2.clone(), 1, 2, &[1, 1]).unwrap();
        let ns = m.nullspace();
        assert_eq!(idx(&ns.row_vectors()), vec![vec![1, 1]]);
    }

    #[test]
    fn nullspace_rows_are_annihilated() {
        let f5 = f(5);
        let m = Matrix::from_indices(f5.clone(), 2, 4, &[1, 2, 3, 4, 2, 4, 1, 0]).unwrap();
        let (_, rank, ns) = m.rref_rank_nullspace();
        assert_eq!(rank + ns.rows(), 4);
        for row in ns.row_vectors() {
            let prod = m.mul(&Matrix::from_rows(f5.clone(), 4, &[row]).unwrap().transpose()).unwrap();
            assert!(prod.indices().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn codewords_examples() {
        let f2 = f(2);
        let c = LinearCode::from_generator(&Matrix::from_indices(f2.clone(), 1, 2, &[1, 1]).unwrap());
        assert_eq!(idx(&c.codewords(16).unwrap()), vec![vec![0, 0], vec![1, 1]]);
        let z = LinearCode::zero(f2.clone(), 3);
        assert_eq!(idx(&z.codewords(16).unwrap()), vec![vec![0, 0, 0]]);
        let f3 = f(3);
        let r = LinearCode::repetition(f3.clone(), 3).unwrap();
        assert_eq!(
            idx(&r.codewords(16).unwrap()),
            vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]
        );
        let big = LinearCode::full(f3, 5);
        assert!(big.codewords(100).unwrap_err().is_infeasible());
    }

    #[test]
    fn atomic_codes() {
        let f2 = f(2);
        let r = LinearCode::repetition(f2.clone(), 2).unwrap();
        let c = LinearCode::check(f2.clone(), 2).unwrap();
        assert_eq!(idx(&r.codewords(16).unwrap()), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(r, c);
        // check d=3 over F_3: brute force over all 27 vectors
        let f3 = f(3);
        let c3 = LinearCode::check(f3.clone(), 3).unwrap();
        let brute: Vec<Vector> = all_vectors(&f3, 3, 100)
            .unwrap()
            .into_iter()
            .filter(|w| f3.dot(w, &[FieldElement::ONE; 3]).is_zero())
            .collect();
        assert_eq!(brute.len(), 9);
        assert_eq!(idx(&c3.codewords(100).unwrap()), idx(&brute));
        assert!(LinearCode::check(f3, 0).is_err());
    }

    #[test]
    fn dual_examples() {
        for q in [2u64, 3, 4] {
            let fq = f(q);
            for d in 1..=5 {
                let r = LinearCode::repetition(fq.clone(), d).unwrap();
                assert_eq!(r.dual(), LinearCode::check(fq.clone(), d).unwrap());
            }
            let full = LinearCode::full(fq.clone(), 3);
            assert_eq!(full.dual(), LinearCode::zero(fq.clone(), 3));
            assert_eq!(LinearCode::zero(fq.clone(), 3).dual(), full);
        }
    }

    #[test]
    fn dual_is_involutive_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4] {
            let fq = f(q);
            for _ in 0..40 {
                let n = rng.random_range(1..=6);
                let k = rng.random_range(0..=n);
                let entries: Vec<u32> = (0..n * k).map(|_| rng.random_range(0..q as u32)).collect();
                let g = Matrix::from_indices(fq.clone(), k, n, &entries).unwrap();
                let c = LinearCode::from_generator(&g);
                let d = c.dual();
                assert_eq!(c.dimension() + d.dimension(), n);
                assert_eq!(d.dual(), c);
                for a in c.codewords(1 << 12).unwrap() {
                    for b in d.codewords(1 << 12).unwrap() {
                        assert!(fq.dot(&a, &b).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn sow_distribution_examples() {
        let f2 = f(2);
        let table = OrbitTable::new(f2.clone());
        let c = LinearCode::repetition(f2.clone(), 2).unwrap();
        let dist = code_sow_distribution(&c, &c, &table, 1 << 10).unwrap();
        let expect: BTreeMap<SowVector, u64> = [
            (vec![2, 0, 0, 0], 1),
            (vec![0, 2, 0, 0], 1),
            (vec![0, 0, 2, 0], 1),
            (vec![0, 0, 0, 2], 1),
        ]
        .into_iter()
        .map(|(e, c)| (SowVector(e), c))
        .collect();
        assert_eq!(dist, expect);

        let z = LinearCode::zero(f2.clone(), 3);
        let dist = code_sow_distribution(&z, &z, &table, 16).unwrap();
        assert_eq!(dist.len(), 1);
        assert_eq!(dist[&SowVector(vec![3, 0, 0, 0])], 1);

        let f3 = f(3);
        let t3 = OrbitTable::new(f3.clone());
        let full = LinearCode::full(f3.clone(), 1);
        let dist = code_sow_distribution(&full, &full, &t3, 100).unwrap();
        assert_eq!(dist[&SowVector(vec![1, 0, 0, 0, 0])], 1);
        for s in 1..5 {
            let mut e = vec![0; 5];
            e[s] = 1;
            assert_eq!(dist[&SowVector(e)], 2);
        }
        let big = LinearCode::full(f3, 8);
        assert!(code_sow_distribution(&big, &big, &t3, 1 << 20).unwrap_err().is_infeasible());
    }

    #[test]
    fn monomial_map_examples() {
        let f3 = f(3);
        let x = v(&f3, &[1, 0]);
        assert_eq!(MonomialMap::identity(2).apply(&f3, &x).unwrap(), x);
        let m = MonomialMap::new(v(&f3, &[2, 2]), vec![0, 1]).unwrap();
        assert_eq!(m.apply(&f3, &x).unwrap(), v(&f3, &[2, 0]));
        let f2 = f(2);
        let maps = MonomialMap::all(3, &f2, 1000).unwrap();
        assert_eq!(maps.len(), 6);
        assert!(maps.iter().all(|m| m.scalars().iter().all(|s| *s == FieldElement::ONE)));
        assert_eq!(MonomialMap::all(3, &f3, 1000).unwrap().len(), 48);
        assert!(MonomialMap::new(v(&f3, &[0, 1]), vec![0, 1]).is_err());
        assert!(MonomialMap::new(v(&f3, &[1, 1]), vec![0, 0]).is_err());
    }

    #[test]
    fn monomial_map_definition_and_inverse() {
        let f3 = f(3);
        // σ = (0 -> 2, 1 -> 0, 2 -> 1); ξ(v)_i = c_i v_{σ^{-1}(i)}
        let m = MonomialMap::new(v(&f3, &[1, 2, 2]), vec![2, 0, 1]).unwrap();
        let x = v(&f3, &[1, 2, 0]);
        // σ^{-1}(0)=1, σ^{-1}(1)=2, σ^{-1}(2)=0
        assert_eq!(m.apply(&f3, &x).unwrap(), v(&f3, &[2, 0, 2]));
        for w in all_vectors(&f3, 3, 100).unwrap() {
            assert_eq!(m.apply_inverse(&f3, &m.apply(&f3, &w).unwrap()).unwrap(), w);
        }
    }

    #[test]
    fn sampling_is_seeded_and_uniform() {
        let f3 = f(3);
        assert_eq!(
            MonomialMap::sample_seeded(5, &f3, 42),
            MonomialMap::sample_seeded(5, &f3, 42)
        );
        // all 2! * 2^2 = 8 maps on 2 coordinates should appear roughly equally
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut counts: BTreeMap<(Vec<u32>, Vec<usize>), u32> = BTreeMap::new();
        for _ in 0..8000 {
            let m = MonomialMap::sample(2, &f3, &mut rng);
            let key = (m.scalars().iter().map(|e| e.index()).collect(), m.permutation().to_vec());
            *counts.entry(key).or_default() += 1;
        }
        assert_eq!(counts.len(), 8);
        assert!(counts.values().all(|&c| (850..1150).contains(&c)));
    }

    #[test]
    fn matrix_text_format() {
        let m = Matrix::parse("3 2 3\n1 2 0\n0 1 1\n").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.indices(), vec![1, 2, 0, 0, 1, 1]);
        assert_eq!(Matrix::parse(&m.to_text()).unwrap(), m);
        assert!(Matrix::parse("3 2 3\n1 2 0\n").is_err());
        assert!(Matrix::parse("3 1 1\n3\n").is_err());
        assert!(Matrix::parse("6 1 1\n0\n").is_err());
        let list = parse_matrix_list("2 1 2\n1 0\n\n2 1 2\n0 1\n").unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(parse_matrix_list(&matrix_list_to_text(&list)).unwrap(), list);
        assert!(parse_matrix_list("2 1 1\n1\n\n3 1 1\n1\n").is_err());
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials: 1 + 15 + 35 + 15 + 1 over F_2^4, 1 + 13 + 13 + 1 over F_3^3
        assert_eq!(all_subspaces(&f(2), 4, 1 << 20).unwrap().len(), 67);
        assert_eq!(all_subspaces(&f(3), 3, 1 << 20).unwrap().len(), 28);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = LinearCode::random(f(3), 4, 2, &mut rng);
        assert!(c.dimension() <= 2);
    }
}
