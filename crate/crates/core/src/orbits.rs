//! Orbits of the scalar action of `F_q^*` on `F_q^2` and second-order weights.
//!
//! The orbit order is fixed: index 0 is `{(0,0)}`, index 1 is the orbit of
//! `(0,1)`, index 2 the orbit of `(1,0)`, and index `2 + a` for
//! `a = 1..q` is the orbit of `(1, a)`. Every exponent vector, serialized
//! distribution and K-matrix row in this crate uses that order.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

pub const E00: usize = 0;
pub const E01: usize = 1;
pub const E10: usize = 2;

/// A (q+2)-tuple of per-orbit coordinate counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SowVector(pub Vec<u32>);

impl SowVector {
    pub fn zero_pair(nvars: usize, n: u32) -> Self {
        let mut v = vec![0; nvars];
        v[E00] = n;
        SowVector(v)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Whether the underlying pair is linearly independent: more than one
    /// orbit other than `e00` is occupied.
    pub fn is_independent(&self) -> bool {
        self.0.iter().skip(1).filter(|&&c| c > 0).count() > 1
    }
}

impl fmt::Display for SowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: (FieldElement, FieldElement),
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct OrbitTable {
    field: Arc<Field>,
    orbits: Vec<Orbit>,
    lookup: Vec<u16>,
}

impl OrbitTable {
    pub fn new(field: Arc<Field>) -> Self {
        let q = field.order();
        let mut orbits = Vec::with_capacity(q as usize + 2);
        orbits.push(Orbit {
            representative: (FieldElement::ZERO, FieldElement::ZERO),
            size: 1,
        });
        orbits.push(Orbit {
            representative: (FieldElement::ZERO, FieldElement::ONE),
            size: q as usize - 1,
        });
        orbits.push(Orbit {
            representative: (FieldElement::ONE, FieldElement::ZERO),
            size: q as usize - 1,
        });
        for a in field.nonzero_elements() {
            orbits.push(Orbit {
                representative: (FieldElement::ONE, a),
                size: q as usize - 1,
            });
        }
        let mut lookup = vec![0u16; (q * q) as usize];
        for u in field.elements() {
            for v in field.elements() {
                lookup[(u.index() * q + v.index()) as usize] = classify(&field, u, v) as u16;
            }
        }
        OrbitTable {
            field,
            orbits,
            lookup,
        }
    }

    pub fn for_order(q: u64) -> Result<Self> {
        Ok(Self::new(Arc::new(Field::from_order(q)?)))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Number of orbits, `q + 2`.
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn representative(&self, s: usize) -> (FieldElement, FieldElement) {
        self.orbits[s].representative
    }

    pub fn size(&self, s: usize) -> usize {
        self.orbits[s].size
    }

    /// Orbit index of the pair `(u, v)`.
    #[inline]
    pub fn orbit_of(&self, u: FieldElement, v: FieldElement) -> usize {
        self.lookup[(u.index() * self.q() + v.index()) as usize] as usize
    }

    /// Dense `q*q` table mapping `u*q + v` to the orbit index.
    pub fn lookup_table(&self) -> &[u16] {
        &self.lookup
    }

    /// All members of orbit `s`.
    pub fn members(&self, s: usize) -> Vec<(FieldElement, FieldElement)> {
        let f = &self.field;
        let mut out = Vec::new();
        for u in f.elements() {
            for v in f.elements() {
                if self.orbit_of(u, v) == s {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Orbits other than `e00`, `e01`, `e10`.
    pub fn pi11(&self) -> std::ops::Range<usize> {
        3..self.len()
    }

    /// Text label of orbit `s`, e.g. `(1,2)`.
    pub fn label(&self, s: usize) -> String {
        let (a, b) = self.orbits[s].representative;
        format!("({},{})", a.index(), b.index())
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|s| self.label(s)).collect()
    }

    /// Second-order weight of `(u, v)`.
    pub fn sow(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<SowVector> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: u.len(),
                got: v.len(),
            });
        }
        let mut counts = vec![0u32; self.len()];
        for (&a, &b) in u.iter().zip(v) {
            counts[self.orbit_of(a, b)] += 1;
        }
        Ok(SowVector(counts))
    }
}

fn classify(field: &Field, u: FieldElement, v: FieldElement) -> usize {
    match (u.is_zero(), v.is_zero()) {
        (true, true) => E00,
        (true, false) => E01,
        (false, true) => E10,
        (false, false) => {
            let ratio = field.div(v, u).expect("u is nonzero");
            2 + ratio.index() as usize
        }
    }
}

/// Joint weight `(w00, w10, w01, w11)` of a pair of vectors.
pub fn joint_weight(u: &[FieldElement], v: &[FieldElement]) -> Result<[u32; 4]> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    let mut w = [0u32; 4];
    for (a, b) in u.iter().zip(v) {
        let slot = match (a.is_zero(), b.is_zero()) {
            (true, true) => 0,
            (false, true) => 1,
            (true, false) => 2,
            (false, false) => 3,
        };
        w[slot] += 1;
    }
    Ok(w)
}
