//! Second-order MacWilliams transform.
//!
//! `W_{U⊥,V⊥}(x) = W_{U,V}(x K) / (|U| |V|)` where `K[S][T] = |S|` when the
//! orbit `T` lies in the orthogonal complement of `S` in `F_q^2`, and `-1`
//! otherwise.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::{OrbitTable, E00};
use crate::poly::{rat, BigRat, Enumerator};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl KMatrix {
    pub fn build(table: &OrbitTable) -> Self {
        let f = table.field();
        let m = table.len();
        let mut entries = vec![vec![0i64; m]; m];
        for (s, row) in entries.iter_mut().enumerate() {
            let (a, b) = table.representative(s);
            for (t, slot) in row.iter_mut().enumerate() {
                // T ⊆ S⊥ iff every member of T is orthogonal to ρ(S)
                let inside = table
                    .members(t)
                    .iter()
                    .all(|&(x, y)| f.add(f.mul(a, x), f.mul(b, y)).is_zero());
                *slot = if inside { table.size(s) as i64 } else { -1 };
            }
        }
        KMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, s: usize, t: usize) -> i64 {
        self.entries[s][t]
    }

    pub fn to_rational(&self) -> Vec<Vec<BigRat>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    /// The linear form `Σ_S x_S K[S][t]`.
    pub fn column_form(&self, t: usize) -> Enumerator {
        let coeffs: Vec<BigRat> = self.entries.iter().map(|row| rat(row[t])).collect();
        Enumerator::linear(&coeffs)
    }

    /// Column `e00` equals the orbit sizes.
    pub fn column_e00(&self) -> Vec<i64> {
        self.entries.iter().map(|row| row[E00]).collect()
    }
}

/// `(1 / (|U| |V|)) · W(x K)`.
pub fn transform(w: &Enumerator, size_u: &BigRat, size_v: &BigRat, k: &KMatrix) -> Result<Enumerator> {
    if w.nvars() != k.size() {
        return Err(Error::LengthMismatch {
            expected: k.size(),
            got: w.nvars(),
        });
    }
    if w.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    let denom = size_u * size_v;
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let substituted = w.linear_substitute(&k.to_rational())?;
    Ok(substituted.scale(&(BigRat::from_integer(1.into()) / denom)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{code_sow_distribution, LinearCode};
    use crate::poly::complete_enumerator;
    use std::sync::Arc;

    fn t(q: u64) -> OrbitTable {
        OrbitTable::for_order(q).unwrap()
    }

    #[test]
    fn k_matrix_q2() {
        let k = KMatrix::build(&t(2));
        assert_eq!(
            k.entries,
            vec![
                vec![1, 1, 1, 1],
                vec![1, -1, 1, -1],
                vec![1, 1, -1, -1],
                vec![1, -1, -1, 1]
            ]
        );
    }

    #[test]
    fn k_matrix_q3() {
        let k = KMatrix::build(&t(3));
        assert_eq!(
            k.entries,
            vec![
                vec![1, 1, 1, 1, 1],
                vec![2, -1, 2, -1, -1],
                vec![2, 2, -1, -1, -1],
                vec![2, -1, -1, -1, 2],
                vec![2, -1, -1, 2, -1]
            ]
        );
        // columns are the linear forms printed for the q = 3 check code
        let cols: Vec<Vec<i64>> = (0..5).map(|c| k.entries.iter().map(|r| r[c]).collect()).collect();
        assert_eq!(cols[0], vec![1, 2, 2, 2, 2]);
        assert_eq!(cols[1], vec![1, -1, 2, -1, -1]);
        assert_eq!(cols[2], vec![1, 2, -1, -1, -1]);
        assert_eq!(cols[3], vec![1, -1, -1, -1, 2]);
        assert_eq!(cols[4], vec![1, -1, -1, 2, -1]);
    }

    #[test]
    fn k_matrix_structure() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let table = t(q);
            let k = KMatrix::build(&table);
            assert!(k.entries[E00].iter().all(|&x| x == 1));
            let sizes: Vec<i64> = table.orbits().iter().map(|o| o.size as i64).collect();
            assert_eq!(k.column_e00(), sizes);
            for s in 0..k.size() {
                for tt in 0..k.size() {
                    let x = k.get(s, tt);
                    assert!(x == -1 || x == table.size(s) as i64);
                }
            }
        }
    }

    #[test]
    fn transform_examples() {
        for q in [2u64, 3] {
            let table = t(q);
            let f = table.field().clone();
            let k = KMatrix::build(&table);
            let n = 3;
            // full space -> zero code
            let full = complete_enumerator(&table, n).unwrap();
            let qn = rat((q as i64).pow(n));
            let got = transform(&full, &qn, &qn, &k).unwrap();
            let mut e = vec![0; table.len()];
            e[E00] = n;
            assert_eq!(got, Enumerator::monomial(e.clone(), rat(1)));
            // zero code -> full space
            let zero = Enumerator::monomial(e, rat(1));
            assert_eq!(transform(&zero, &rat(1), &rat(1), &k).unwrap(), full);
            // repetition -> check, against brute force
            for d in 1..=4usize {
                let r = LinearCode::repetition(Arc::clone(&f), d).unwrap();
                let c = LinearCode::check(Arc::clone(&f), d).unwrap();
                let wr = brute(&r, &table);
                let wc = brute(&c, &table);
                let size = rat(r.size() as i64);
                assert_eq!(transform(&wr, &size, &size, &k).unwrap(), wc);
            }
        }
    }

    fn brute(c: &LinearCode, table: &OrbitTable) -> Enumerator {
        let dist = code_sow_distribution(c, c, table, 1 << 20).unwrap();
        Enumerator::from_terms(table.len(), dist.into_iter().map(|(i, a)| (i.0, rat(a as i64)))).unwrap()
    }

    #[test]
    fn transform_rejects_bad_input() {
        let table = t(2);
        let k = KMatrix::build(&table);
        let mixed = Enumerator::from_terms(4, vec![(vec![1, 0, 0, 0], rat(1)), (vec![2, 0, 0, 0], rat(1))]).unwrap();
        assert_eq!(transform(&mixed, &rat(1), &rat(1), &k), Err(Error::NotHomogeneous));
        let wrong = Enumerator::variable(5, 0);
        assert!(transform(&wrong, &rat(1), &rat(1), &k).is_err());
    }
}
