//! The extension `F_{q^n} = F_q[x]/(f(x))` over a base field `F_q`.

use std::sync::Arc;

use super::field::{BaseElem, FieldSpec};
use super::poly::{self, Poly};
use crate::budget::{saturating_pow, OracleBudget};
use crate::error::{Error, Result};

/// An element of `F_{q^n}`: `n` base-field coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coeffs: Vec<BaseElem>,
}

impl Element {
    pub fn coeffs(&self) -> &[BaseElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The constant coefficient, meaningful when the element lies in `F_q`.
    pub fn constant(&self) -> BaseElem {
        self.coeffs[0]
    }

    pub fn is_in_base(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

struct Precomputed {
    /// `frob[i] = x^{iq} mod f`, the columns of the Frobenius matrix.
    frob: Vec<Vec<BaseElem>>,
    /// `trace_to_base(x^i)` for `i < n`.
    trace_form: Vec<BaseElem>,
}

/// `F_{q^n}` over `F_q` with a fixed monic irreducible modulus of degree `n`.
#[derive(Clone)]
pub struct TowerSpec {
    base: FieldSpec,
    n: usize,
    ext_modulus: Poly,
    pre: Arc<Precomputed>,
}

impl std::fmt::Debug for TowerSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TowerSpec")
            .field("base", &self.base)
            .field("n", &self.n)
            .field("ext_modulus", &self.ext_modulus.codes())
            .finish()
    }
}

/// Builds `F_{q^n}` with the smallest monic irreducible of degree `n` over `F_q`.
pub fn make_tower(base: &FieldSpec, n: usize) -> Result<TowerSpec> {
    if n == 0 {
        return Err(Error::InvalidInput("extension degree n must be positive".into()));
    }
    let modulus = poly::smallest_irreducible(base, n);
    Ok(TowerSpec::build(base.clone(), modulus))
}

impl TowerSpec {
    /// Builds the tower from an explicit monic irreducible modulus.
    pub fn with_modulus(base: &FieldSpec, modulus: Poly) -> Result<TowerSpec> {
        if !poly::is_irreducible(&modulus, base)? {
            return Err(Error::NotIrreducible);
        }
        Ok(TowerSpec::build(base.clone(), modulus))
    }

    fn build(base: FieldSpec, ext_modulus: Poly) -> TowerSpec {
        let n = ext_modulus.degree().expect("positive degree");
        let xq = Poly::x().powmod(base.q() as u64, &ext_modulus, &base);
        let mut frob = Vec::with_capacity(n);
        let mut cur = Poly::one();
        for _ in 0..n {
            frob.push(pad(&cur, n));
            cur = cur.mulmod(&xq, &ext_modulus, &base);
        }
        let mut tower = TowerSpec {
            base,
            n,
            ext_modulus,
            pre: Arc::new(Precomputed { frob, trace_form: Vec::new() }),
        };
        let trace_form = (0..n).map(|i| tower.trace_to_base(&tower.basis(i))).collect();
        let frob = std::mem::take(&mut Arc::get_mut(&mut tower.pre).expect("unique").frob);
        tower.pre = Arc::new(Precomputed { frob, trace_form });
        tower
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ext_modulus(&self) -> &Poly {
        &self.ext_modulus
    }

    /// Number of elements, `q^n`, saturating.
    pub fn size(&self) -> u128 {
        saturating_pow(self.base.q() as u64, self.n)
    }

    pub fn zero(&self) -> Element {
        Element { coeffs: vec![BaseElem::ZERO; self.n] }
    }

    pub fn one(&self) -> Element {
        self.embed(BaseElem::ONE)
    }

    /// The power basis element `x^i`, `i < n`.
    pub fn basis(&self, i: usize) -> Element {
        let mut a = self.zero();
        a.coeffs[i] = BaseElem::ONE;
        a
    }

    /// The image of a base-field element.
    pub fn embed(&self, c: BaseElem) -> Element {
        let mut a = self.zero();
        a.coeffs[0] = c;
        a
    }

    /// The class of the polynomial generator `x`.
    pub fn generator_x(&self) -> Element {
        self.from_poly(&Poly::x())
    }

    pub fn element(&self, coeffs: Vec<BaseElem>) -> Result<Element> {
        if coeffs.len() != self.n || coeffs.iter().any(|c| c.0 >= self.base.q()) {
            return Err(Error::InvalidInput("coefficient vector does not match the tower".into()));
        }
        Ok(Element { coeffs })
    }

    /// Element from nested residue vectors (`n` vectors of length `r`).
    pub fn from_residues(&self, nested: &[Vec<u32>]) -> Result<Element> {
        if nested.len() != self.n {
            return Err(Error::InvalidInput("expected one residue vector per coefficient".into()));
        }
        let coeffs = nested.iter().map(|v| self.base.from_residues(v)).collect::<Result<Vec<_>>>()?;
        Ok(Element { coeffs })
    }

    pub fn to_residues(&self, a: &Element) -> Vec<Vec<u32>> {
        a.coeffs.iter().map(|&c| self.base.to_residues(c)).collect()
    }

    pub fn from_poly(&self, f: &Poly) -> Element {
        pad_element(&f.rem(&self.ext_modulus, &self.base).expect("nonzero modulus"), self.n)
    }

    pub fn to_poly(&self, a: &Element) -> Poly {
        Poly::new(a.coeffs.clone())
    }

    /// The element with enumeration index `k` (coefficient 0 varies fastest).
    pub fn element_at(&self, mut k: u128) -> Element {
        let q = self.base.q() as u128;
        let coeffs = (0..self.n)
            .map(|_| {
                let c = BaseElem((k % q) as u32);
                k /= q;
                c
            })
            .collect();
        Element { coeffs }
    }

    pub fn index_of(&self, a: &Element) -> u128 {
        let q = self.base.q() as u128;
        a.coeffs.iter().rev().fold(0u128, |acc, c| acc * q + c.0 as u128)
    }

    /// Every element exactly once, in increasing [`TowerSpec::index_of`] order.
    pub fn enumerate_elements(&self, budget: &OracleBudget) -> Result<impl Iterator<Item = Element> + '_> {
        budget.check_elements(self.size())?;
        Ok((0..self.size()).map(move |k| self.element_at(k)))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let f = &self.base;
        Element { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        let f = &self.base;
        Element { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.sub(x, y)).collect() }
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element { coeffs: a.coeffs.iter().map(|&x| self.base.neg(x)).collect() }
    }

    pub fn scale(&self, c: BaseElem, a: &Element) -> Element {
        Element { coeffs: a.coeffs.iter().map(|&x| self.base.mul(c, x)).collect() }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = vec![BaseElem::ZERO; self.n];
        self.mul_into(&a.coeffs, &b.coeffs, &mut out);
        Element { coeffs: out }
    }

    /// Product of coefficient slices, written to `out` (length `n`).
    pub fn mul_into(&self, a: &[BaseElem], b: &[BaseElem], out: &mut [BaseElem]) {
        let f = &self.base;
        let n = self.n;
        let mut prod = vec![BaseElem::ZERO; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        let m = self.ext_modulus.coeffs();
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                prod[k - n + j] = f.sub(prod[k - n + j], f.mul(c, m[j]));
            }
        }
        out.copy_from_slice(&prod[..n]);
    }

    pub fn square(&self, a: &Element) -> Element {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Element, mut e: u128) -> Element {
        let (mut base, mut acc) = (a.clone(), self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn invert(&self, a: &Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.base;
        let (mut r0, mut r1) = (self.ext_modulus.clone(), self.to_poly(a));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while r1.degree().is_some_and(|d| d > 0) {
            let (quot, rem) = r0.divrem(&r1, f)?;
            let s2 = s0.sub(&quot.mul(&s1, f), f);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        let c = f.inv_nonzero(r1.leading());
        Ok(pad_element(&s1.scale(c, f), self.n))
    }

    pub fn div(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.mul(a, &self.invert(b)?))
    }

    /// `a^q`, applied as the `F_q`-linear Frobenius matrix.
    pub fn frobenius(&self, a: &Element) -> Element {
        let f = &self.base;
        let mut out = vec![BaseElem::ZERO; self.n];
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(&self.pre.frob[i]) {
                *o = f.add(*o, f.mul(c, m));
            }
        }
        Element { coeffs: out }
    }

    /// `Tr(a) = a + a^q + ... + a^{q^{n-1}}`, an element of `F_q`.
    pub fn trace_to_base(&self, a: &Element) -> BaseElem {
        let mut acc = a.clone();
        let mut conj = a.clone();
        for _ in 1..self.n {
            conj = self.frobenius(&conj);
            acc = self.add(&acc, &conj);
        }
        debug_assert!(acc.is_in_base(), "trace must lie in the base field");
        acc.constant()
    }

    /// `rTr(a) = Tr(a^{-1})`, with `rTr(0) = 0`.
    pub fn rtrace(&self, a: &Element) -> BaseElem {
        match self.invert(a) {
            Ok(inv) => self.trace_to_base(&inv),
            Err(_) => BaseElem::ZERO,
        }
    }

    /// `Tr_{F_{q^n}/F_p}(a)` as `Tr_{F_q/F_p}(Tr_{F_{q^n}/F_q}(a))`.
    pub fn absolute_trace(&self, a: &Element) -> BaseElem {
        self.base.abs_trace(self.trace_to_base(a))
    }

    /// `Tr_{F_{q^n}/F_p}(a)` as `sum_{i < rn} a^{p^i}` in one step.
    pub fn absolute_trace_direct(&self, a: &Element) -> BaseElem {
        let p = self.base.p() as u128;
        let mut acc = self.zero();
        let mut conj = a.clone();
        for _ in 0..self.base.r() as usize * self.n {
            acc = self.add(&acc, &conj);
            conj = self.pow(&conj, p);
        }
        debug_assert!(acc.is_in_base() && self.base.is_in_prime_subfield(acc.constant()));
        acc.constant()
    }

    /// The trace as a linear form: `Tr(sum a_i x^i) = sum a_i Tr(x^i)`.
    /// The form is built from [`TowerSpec::trace_to_base`] on the power basis.
    #[inline]
    pub fn trace_linear(&self, a: &[BaseElem]) -> BaseElem {
        let f = &self.base;
        a.iter()
            .zip(&self.pre.trace_form)
            .fold(BaseElem::ZERO, |acc, (&c, &t)| f.add(acc, f.mul(c, t)))
    }

    /// `trace_to_base(x^i)` for `i < n`.
    pub fn trace_form(&self) -> &[BaseElem] {
        &self.pre.trace_form
    }
}

fn pad(f: &Poly, n: usize) -> Vec<BaseElem> {
    let mut v = f.coeffs().to_vec();
    v.resize(n, BaseElem::ZERO);
    v
}

fn pad_element(f: &Poly, n: usize) -> Element {
    Element { coeffs: pad(f, n) }
}

/// Calls `visit` with every element's coefficients in a chunk of indices,
/// stepping an odometer instead of allocating per element.
pub fn for_each_in_range<F>(tower: &TowerSpec, start: u128, end: u128, mut visit: F)
where
    F: FnMut(&[BaseElem]),
{
    if start >= end {
        return;
    }
    let q = tower.base().q();
    let mut cur = tower.element_at(start).coeffs;
    let mut k = start;
    loop {
        visit(&cur);
        k += 1;
        if k == end {
            break;
        }
        for c in cur.iter_mut() {
            c.0 += 1;
            if c.0 < q {
                break;
            }
            c.0 = 0;
        }
    }
}
