//! Finite fields GF(p^r) backed by dense lookup tables.
//!
//! Elements are identified by a canonical index in `0..q`. The index is the
//! base-`p` number whose digits are the coordinates of the element relative to
//! the basis `1, α, …, α^(r-1)`, with the constant coordinate least
//! significant. Index 0 is zero and index 1 is one; for `r > 1` index `p` is
//! the generator `α` of the modulus.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest field order accepted by [`Field::new`].
pub const DEFAULT_MAX_ORDER: u64 = 256;

/// Fixed default moduli, low coefficient first (monic leading 1 included).
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field with a fixed modulus polynomial.
///
/// Immutable after construction; all arithmetic is table lookup.
#[derive(Clone)]
pub struct Field {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// GF(p^r) with the documented default modulus for that order.
    pub fn new(p: u32, r: u32) -> Result<Self> {
        Self::with_bound(p, r, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(p: u32, r: u32, max_order: u64) -> Result<Self> {
        check_prime(p)?;
        if r == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let order = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
        if order > max_order {
            return Err(Error::FieldTooLarge {
                order,
                bound: max_order,
            });
        }
        let modulus = default_modulus(p, r);
        Self::build(p, modulus)
    }

    /// GF(q) for a prime power `q`, using the default modulus.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, r)
    }

    /// GF(p^r) with a caller-chosen monic modulus of degree `r`, low coefficient first.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        check_prime(p)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficients must lie in 0..{p}")));
        }
        let r = (modulus.len() - 1) as u32;
        let order = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
        if order > DEFAULT_MAX_ORDER {
            return Err(Error::FieldTooLarge {
                order,
                bound: DEFAULT_MAX_ORDER,
            });
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus(modulus.to_vec(), p));
        }
        Self::build(p, modulus.to_vec())
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let r = (modulus.len() - 1) as u32;
        let q = p.pow(r);
        let qs = q as usize;
        let to_coords = |x: u32| -> Vec<u32> {
            let mut c = vec![0; r as usize];
            let mut x = x;
            for slot in c.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            c
        };
        let from_coords = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let ca = to_coords(a);
            for b in 0..q {
                let cb = to_coords(b);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_coords(&sum);
                let prod = poly_mulmod(&ca, &cb, &modulus, p);
                mul[(a * q + b) as usize] = from_coords(&prod);
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..q {
            neg[a as usize] = (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap();
            if a != 0 {
                match (1..q).find(|&b| mul[(a * q + b) as usize] == 1) {
                    Some(b) => inv[a as usize] = b,
                    None => return Err(Error::ReducibleModulus(modulus, p)),
                }
            }
        }
        let mut field = Field {
            p,
            r,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace: Vec::new(),
        };
        let trace = (0..q)
            .map(|a| {
                // v + v^p + ... + v^(p^(r-1))
                let mut acc = FieldElement::ZERO;
                let mut term = FieldElement(a);
                for _ in 0..r {
                    acc = field.add(acc, term);
                    term = field.pow(term, p as u64);
                }
                acc.0
            })
            .collect();
        field.trace = trace;
        Ok(field)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidParameter(format!(
                "element index {index} out of range for GF({})",
                self.q
            )))
        }
    }

    /// Unchecked constructor for indices already known to be in range.
    #[inline]
    pub(crate) fn elem(&self, index: u32) -> FieldElement {
        debug_assert!(index < self.q);
        FieldElement(index)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(FieldElement)
    }

    /// The class of `α` (a root of the modulus).
    pub fn generator(&self) -> FieldElement {
        if self.r == 1 {
            // the modulus is x - a; its root is -modulus[0]
            self.neg(FieldElement(self.modulus[0]))
        } else {
            FieldElement(self.p)
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[(a.0 * self.q + b.0) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[(a.0 * self.q + b.0) as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace onto the prime subfield, returned as an element of `F_q`
    /// whose index is below `p`.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.trace[a.0 as usize])
    }

    /// Canonical additive character `exp(2πi·tr(v)/p)`.
    pub fn character(&self, a: FieldElement) -> Complex64 {
        let t = self.trace[a.0 as usize] as f64;
        Complex64::from_polar(1.0, 2.0 * PI * t / self.p as f64)
    }

    /// Standard bilinear form `Σ u_i v_i`.
    pub fn dot(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        u.iter()
            .zip(v)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Coordinates over `F_p` relative to `1, α, …, α^(r-1)`.
    pub fn coordinates(&self, a: FieldElement) -> Vec<u32> {
        let mut x = a.0;
        (0..self.r)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coordinates(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.r as usize {
            return Err(Error::LengthMismatch {
                expected: self.r as usize,
                got: coords.len(),
            });
        }
        if coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter("coordinate out of range".into()));
        }
        Ok(FieldElement(
            coords.iter().rev().fold(0, |acc, &d| acc * self.p + d),
        ))
    }

    /// Polynomial rendering in `a`, e.g. `a^2+1`.
    pub fn render(&self, x: FieldElement) -> String {
        if self.r == 1 || x.0 < self.p {
            return x.0.to_string();
        }
        let coords = self.coordinates(x);
        let mut parts = Vec::new();
        for (k, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{k}"),
            };
            parts.push(match (c, k) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        parts.join("+")
    }
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decompose `q = p^r` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p as u32, r))
}

fn default_modulus(p: u32, r: u32) -> Vec<u32> {
    if let Some((_, _, m)) = DEFAULT_MODULI.iter().find(|(pp, rr, _)| *pp == p && *rr == r) {
        return m.to_vec();
    }
    if r == 1 {
        return vec![0, 1];
    }
    // smallest irreducible: tail coefficients read as a base-p number
    let count = p.pow(r);
    (0..count)
        .map(|k| {
            let mut m: Vec<u32> = (0..r).scan(k, |x, _| {
                let d = *x % p;
                *x /= p;
                Some(d)
            }).collect();
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists for every degree")
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let r = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let rem = poly_rem(&prod, modulus, p);
    let mut out = vec![0; r];
    for (k, c) in rem.into_iter().enumerate().take(r) {
        out[k] = c;
    }
    out
}

/// Remainder of `a` modulo a monic `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut rem = a.to_vec();
    while rem.len() > dm {
        let lead = rem.pop().unwrap();
        if lead != 0 {
            let shift = rem.len() - dm;
            for (k, &c) in m[..dm].iter().enumerate() {
                let sub = (lead * c) % p;
                rem[shift + k] = (rem[shift + k] + p - sub) % p;
            }
        }
    }
    trim(rem)
}

/// Irreducibility by exhaustive trial division with monic factors of degree
/// up to half the degree.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for fdeg in 1..=deg / 2 {
        let count = p.pow(fdeg as u32);
        for k in 0..count {
            let mut f: Vec<u32> = Vec::with_capacity(fdeg + 1);
            let mut x = k;
            for _ in 0..fdeg {
                f.push(x % p);
                x /= p;
            }
            f.push(1);
            let rem = poly_rem(m, &f, p);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
