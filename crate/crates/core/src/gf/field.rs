//! The base field `F_q = F_p[t]/(m(t))` with table-driven arithmetic.
//!
//! Elements are encoded as integers `sum c_i p^i` over their residue
//! coefficients `c_i` (constant term first). The prime subfield is exactly the
//! codes below `p`, so integer residues embed without conversion.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly::{self, Poly};
use super::prime::{is_prime, prime_divisors};
use crate::error::{Error, Result};

/// Largest supported characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 20;
/// Largest supported base field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;
const ADD_TABLE_LIMIT: u32 = 1 << 10;

/// An element of a base field, stored as its integer code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BaseElem(pub u32);

impl BaseElem {
    pub const ZERO: BaseElem = BaseElem(0);
    pub const ONE: BaseElem = BaseElem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    /// `exp[k] = g^k` for `k < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    /// `Tr_{F_q/F_p}`, as a prime-field code.
    abs_trace: Vec<u32>,
}

/// A finite field `F_q`, `q = p^r`, with a fixed defining modulus.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Serializable description of a field (no tables).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub r: u32,
    pub q: u64,
    /// Residues of the defining modulus, constant term first.
    pub modulus: Vec<u32>,
}

/// Builds `F_{p^r}` with the smallest monic irreducible modulus of degree `r`.
///
/// Candidates are ordered by the integer `sum c_i p^i` of their lower
/// coefficients, so `x^3 + x + 1` precedes `x^3 + x^2 + 1` over `F_2`.
/// For `r = 1` the modulus is `x` and elements are plain residues.
pub fn make_field(p: u64, r: u32) -> Result<FieldSpec> {
    let prime = prime_field(p)?;
    if r == 1 {
        return Ok(prime);
    }
    check_size(p, r)?;
    let modulus = poly::smallest_irreducible(&prime, r as usize);
    let residues = modulus.coeffs().iter().map(|c| c.0).collect::<Vec<_>>();
    Ok(FieldSpec::build(p as u32, r, residues))
}

/// Builds `F_{p^r}` from an explicit modulus (residues, constant term first).
pub fn make_field_with_modulus(p: u64, modulus: &[u32]) -> Result<FieldSpec> {
    let prime = prime_field(p)?;
    if modulus.len() < 2 {
        return Err(Error::InvalidInput("modulus must have degree at least 1".into()));
    }
    if modulus.iter().any(|&c| c as u64 >= p) {
        return Err(Error::InvalidInput(format!("modulus coefficients must be residues mod {p}")));
    }
    let f = Poly::new(modulus.iter().map(|&c| BaseElem(c)).collect());
    if f.coeffs().len() != modulus.len() || !f.is_monic() {
        return Err(Error::NonMonic);
    }
    if !poly::is_irreducible(&f, &prime)? {
        return Err(Error::NotIrreducible);
    }
    let r = (modulus.len() - 1) as u32;
    check_size(p, r)?;
    Ok(FieldSpec::build(p as u32, r, modulus.to_vec()))
}

fn prime_field(p: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p >= MAX_CHARACTERISTIC {
        return Err(Error::InvalidInput(format!(
            "characteristic {p} exceeds the supported limit {MAX_CHARACTERISTIC}"
        )));
    }
    Ok(FieldSpec::build(p as u32, 1, vec![0, 1]))
}

fn check_size(p: u64, r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidInput("extension degree r must be positive".into()));
    }
    match p.checked_pow(r) {
        Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
        _ => Err(Error::InvalidInput(format!(
            "field size {p}^{r} exceeds the supported limit {MAX_FIELD_SIZE}"
        ))),
    }
}

/// Residue-level arithmetic used only while building tables.
struct Builder<'a> {
    p: u32,
    r: usize,
    modulus: &'a [u32],
}

impl Builder<'_> {
    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut d = vec![0; self.r];
        for slot in d.iter_mut() {
            *slot = code % self.p;
            code /= self.p;
        }
        d
    }

    fn code(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.r];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (self.r..2 * self.r).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..self.r {
                let sub = c * self.modulus[j] as u64 % p;
                prod[k - self.r + j] = (prod[k - self.r + j] + p - sub) % p;
            }
            prod[k] = 0;
        }
        let low = prod[..self.r].iter().map(|&c| c as u32).collect::<Vec<_>>();
        self.code(&low)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect::<Vec<_>>();
        self.code(&s)
    }
}

impl FieldSpec {
    fn build(p: u32, r: u32, modulus: Vec<u32>) -> FieldSpec {
        let q = p.pow(r);
        let b = Builder { p, r: r as usize, modulus: &modulus };
        let order = (q - 1) as u64;
        let factors = prime_divisors(order);
        let generator = (1..q)
            .find(|&g| order == 1 || factors.iter().all(|&l| b.pow(g, order / l) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for k in 0..n {
            exp[k] = cur;
            log[cur as usize] = k as u32;
            cur = b.mul(cur, generator);
        }
        for k in n..exp.len() {
            exp[k] = exp[k - n];
        }
        let neg = (0..q)
            .map(|a| {
                let d = b.digits(a).iter().map(|&c| (p - c) % p).collect::<Vec<_>>();
                b.code(&d)
            })
            .collect::<Vec<_>>();
        let add = (r > 1 && p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for x in 0..q {
                for y in 0..q {
                    t[(x * q + y) as usize] = b.add(x, y);
                }
            }
            t
        });
        let abs_trace = (0..q)
            .map(|a| {
                let mut acc = 0u32;
                let mut conj = a;
                for _ in 0..r {
                    acc = b.add(acc, conj);
                    conj = b.pow(conj, p as u64);
                }
                debug_assert!(acc < p);
                acc
            })
            .collect();
        FieldSpec { p, r, q, modulus, tables: Arc::new(Tables { exp, log, neg, add, abs_trace }) }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Residues of the defining modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.r == 1
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, r: self.r, q: self.q as u64, modulus: self.modulus.clone() }
    }

    /// The prime subfield `F_p` as its own field.
    pub fn prime_subfield(&self) -> FieldSpec {
        if self.r == 1 {
            self.clone()
        } else {
            FieldSpec::build(self.p, 1, vec![0, 1])
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = BaseElem> {
        (0..self.q).map(BaseElem)
    }

    /// Nonzero elements in code order.
    pub fn units(&self) -> impl Iterator<Item = BaseElem> {
        (1..self.q).map(BaseElem)
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> BaseElem {
        BaseElem(self.tables.exp[1.min(self.tables.exp.len() - 1)])
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> BaseElem {
        BaseElem(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn element(&self, code: u32) -> Result<BaseElem> {
        if code < self.q {
            Ok(BaseElem(code))
        } else {
            Err(Error::InvalidInput(format!("element code {code} out of range for F_{}", self.q)))
        }
    }

    pub fn to_residues(&self, a: BaseElem) -> Vec<u32> {
        let mut code = a.0;
        (0..self.r)
            .map(|_| {
                let d = code % self.p;
                code /= self.p;
                d
            })
            .collect()
    }

    pub fn from_residues(&self, residues: &[u32]) -> Result<BaseElem> {
        if residues.len() != self.r as usize || residues.iter().any(|&d| d >= self.p) {
            return Err(Error::InvalidInput("residue vector does not match the field".into()));
        }
        Ok(BaseElem(residues.iter().rev().fold(0, |acc, &d| acc * self.p + d)))
    }

    #[inline]
    pub fn add(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        if self.p == 2 {
            return BaseElem(a.0 ^ b.0);
        }
        if self.r == 1 {
            let s = a.0 + b.0;
            return BaseElem(if s >= self.p { s - self.p } else { s });
        }
        if let Some(t) = &self.tables.add {
            return BaseElem(t[(a.0 * self.q + b.0) as usize]);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.r {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        BaseElem(out)
    }

    #[inline]
    pub fn neg(&self, a: BaseElem) -> BaseElem {
        BaseElem(self.tables.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: BaseElem, b: BaseElem) -> BaseElem {
        if a.0 == 0 || b.0 == 0 {
            return BaseElem::ZERO;
        }
        let t = &self.tables;
        BaseElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: BaseElem) -> Result<BaseElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of a known-nonzero element.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: BaseElem) -> BaseElem {
        debug_assert!(!a.is_zero());
        let t = &self.tables;
        let n = self.q - 1;
        BaseElem(t.exp[((n - t.log[a.0 as usize]) % n.max(1)) as usize])
    }

    pub fn div(&self, a: BaseElem, b: BaseElem) -> Result<BaseElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: BaseElem, e: u64) -> BaseElem {
        if e == 0 {
            return BaseElem::ONE;
        }
        if a.is_zero() {
            return BaseElem::ZERO;
        }
        let t = &self.tables;
        let n = (self.q - 1) as u64;
        let k = (t.log[a.0 as usize] as u64 * (e % n)) % n;
        BaseElem(t.exp[k as usize])
    }

    /// `Tr_{F_q/F_p}(a)`, returned as a prime-subfield element.
    #[inline]
    pub fn abs_trace(&self, a: BaseElem) -> BaseElem {
        BaseElem(self.tables.abs_trace[a.0 as usize])
    }

    pub fn is_in_prime_subfield(&self, a: BaseElem) -> bool {
        a.0 < self.p
    }
}
