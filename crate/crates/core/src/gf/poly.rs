//! Dense univariate polynomials over a base field.

use super::field::{BaseElem, FieldSpec};
use super::gf2;
use super::prime::prime_divisors;
use crate::error::{Error, Result};

/// A polynomial with coefficients constant term first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<BaseElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BaseElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_codes(codes: &[u32]) -> Poly {
        Poly::new(codes.iter().map(|&c| BaseElem(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BaseElem) -> Poly {
        Poly::new(vec![c])
    }

    pub fn one() -> Poly {
        Poly::constant(BaseElem::ONE)
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![BaseElem::ZERO, BaseElem::ONE] }
    }

    pub fn monomial(c: BaseElem, k: usize) -> Poly {
        let mut coeffs = vec![BaseElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BaseElem] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn coeff(&self, i: usize) -> BaseElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> BaseElem {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == BaseElem::ONE
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: BaseElem, f: &FieldSpec) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BaseElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u64, f: &FieldSpec) -> Poly {
        let (mut base, mut acc) = (self.clone(), Poly::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, divisor: &Poly, f: &FieldSpec) -> Result<(Poly, Poly)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv_nonzero(divisor.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![BaseElem::ZERO; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - d] = c;
            for (j, &m) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] = f.sub(rem[k - d + j], f.mul(c, m));
            }
        }
        rem.truncate(d);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &FieldSpec) -> Result<Poly> {
        Ok(self.divrem(divisor, f)?.1)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, f: &FieldSpec) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv_nonzero(self.leading()), f)
    }

    pub fn mulmod(&self, other: &Poly, modulus: &Poly, f: &FieldSpec) -> Poly {
        self.mul(other, f).rem(modulus, f).expect("nonzero modulus")
    }

    pub fn powmod(&self, mut e: u64, modulus: &Poly, f: &FieldSpec) -> Poly {
        let mut base = self.rem(modulus, f).expect("nonzero modulus");
        let mut acc = Poly::one().rem(modulus, f).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, modulus, f);
            }
        }
        acc
    }

    pub fn eval(&self, x: BaseElem, f: &FieldSpec) -> BaseElem {
        self.coeffs.iter().rev().fold(BaseElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Trace of a monic polynomial: minus its `x^{n-1}` coefficient.
    pub fn trace(&self, f: &FieldSpec) -> Result<BaseElem> {
        let n = self.monic_degree()?;
        Ok(f.neg(self.coeff(n - 1)))
    }

    /// Reciprocal trace of a monic polynomial: minus `f_1 / f_0`.
    pub fn rtrace(&self, f: &FieldSpec) -> Result<BaseElem> {
        self.monic_degree()?;
        let c0 = self.coeff(0);
        Ok(f.neg(f.div(self.coeff(1), c0)?))
    }

    fn monic_degree(&self) -> Result<usize> {
        if !self.is_monic() {
            return Err(Error::NonMonic);
        }
        match self.degree() {
            Some(0) | None => Err(Error::InvalidInput("degree must be positive".into())),
            Some(n) => Ok(n),
        }
    }

    /// Ordering key: the integer `sum c_i q^i`.
    pub fn index(&self, f: &FieldSpec) -> u128 {
        self.coeffs.iter().rev().fold(0u128, |acc, c| acc * f.q() as u128 + c.0 as u128)
    }
}

/// Rabin's test: `x^{q^d} = x mod f` and `gcd(x^{q^{d/l}} - x, f) = 1`
/// for every prime `l | d`.
pub fn is_irreducible(f: &Poly, field: &FieldSpec) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let d = match f.degree() {
        Some(0) | None => return Err(Error::InvalidInput("degree must be positive".into())),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    if field.p() == 2 && field.r() == 1 && d < 64 {
        return Ok(gf2::is_irreducible(gf2::pack(f)));
    }
    if (field.q() as usize) <= 3 * d * d && field.units().any(|a| f.eval(a, field).is_zero()) {
        return Ok(false);
    }
    // Frobenius is F_q-linear on F_q[x]/(f); rows hold x^{iq} mod f.
    let xq = Poly::x().powmod(field.q() as u64, f, field);
    let mut rows = Vec::with_capacity(d);
    let mut cur = Poly::one();
    for _ in 0..d {
        rows.push(cur.clone());
        cur = cur.mulmod(&xq, f, field);
    }
    let apply = |a: &Poly| -> Poly {
        let mut out = vec![BaseElem::ZERO; d];
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &m) in rows[i].coeffs().iter().enumerate() {
                out[j] = field.add(out[j], field.mul(c, m));
            }
        }
        Poly::new(out)
    };
    let checkpoints: Vec<usize> = prime_divisors(d as u64).into_iter().map(|l| d / l as usize).collect();
    let x = Poly::x();
    let mut power = x.clone();
    for k in 1..=d {
        power = apply(&power);
        if checkpoints.contains(&k) && !power.sub(&x, field).gcd(f, field).degree().is_some_and(|g| g == 0) {
            return Ok(false);
        }
    }
    Ok(power == x)
}

/// Monic polynomials of degree `d` in increasing [`Poly::index`] order.
pub fn monic_polys(field: &FieldSpec, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q() as u128;
    let count = q.checked_pow(d as u32).expect("degree too large to enumerate");
    (0..count).map(move |mut k| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(BaseElem((k % q) as u32));
            k /= q;
        }
        coeffs.push(BaseElem::ONE);
        Poly::new(coeffs)
    })
}

/// Monic irreducible polynomials of degree `d` in increasing index order.
pub fn irreducibles(field: &FieldSpec, d: usize) -> impl Iterator<Item = Poly> + '_ {
    monic_polys(field, d).filter(move |f| is_irreducible(f, field).expect("monic, positive degree"))
}

/// The first element of [`irreducibles`].
pub fn smallest_irreducible(field: &FieldSpec, d: usize) -> Poly {
    irreducibles(field, d).next().expect("irreducibles exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field::make_field;

    fn brute_irreducible(f: &Poly, field: &FieldSpec) -> bool {
        let d = f.degree().unwrap();
        for e in 1..=d / 2 {
            for g in monic_polys(field, e) {
                if f.rem(&g, field).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for (p, r, dmax) in [(2, 1, 8), (3, 1, 5), (2, 2, 4), (5, 1, 4), (3, 2, 3)] {
            let field = make_field(p, r).unwrap();
            for d in 1..=dmax {
                for f in monic_polys(&field, d) {
                    assert_eq!(is_irreducible(&f, &field).unwrap(), brute_irreducible(&f, &field), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        let f2 = make_field(2, 1).unwrap();
        let counts: Vec<usize> = (1..=10).map(|d| irreducibles(&f2, d).count()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30, 56, 99]);
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(irreducibles(&f4, 2).count(), 6);
        assert_eq!(irreducibles(&f4, 3).count(), 20);
    }

    #[test]
    fn named_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert!(is_irreducible(&Poly::from_codes(&[1, 1, 1]), &f2).unwrap());
        assert_eq!(smallest_irreducible(&f2, 3), Poly::from_codes(&[1, 1, 0, 1]));
        let f4 = make_field(2, 2).unwrap();
        let omega = f4.generator();
        assert!(is_irreducible(&Poly::new(vec![omega, BaseElem(0), BaseElem(0), BaseElem(1)]), &f4).unwrap());
        assert!(!is_irreducible(&Poly::from_codes(&[1, 0, 0, 1]), &f4).unwrap());
        assert_eq!(is_irreducible(&Poly::from_codes(&[1, 1, 2]), &f4).unwrap_err(), Error::NonMonic);
    }

    #[test]
    fn smallest_quadratic_over_f4_by_enumeration() {
        let f4 = make_field(2, 2).unwrap();
        // x^2 + b x + c has a root iff some a satisfies a^2 + b a + c = 0.
        let expected = monic_polys(&f4, 2)
            .find(|g| f4.elements().all(|a| !g.eval(a, &f4).is_zero()))
            .unwrap();
        assert_eq!(smallest_irreducible(&f4, 2), expected);
        assert_eq!(expected, Poly::from_codes(&[2, 1, 1]));
    }

    #[test]
    fn division_identity() {
        let f = make_field(3, 2).unwrap();
        let a = Poly::from_codes(&[1, 5, 7, 2, 8, 3]);
        let b = Poly::from_codes(&[4, 0, 2]);
        let (quot, rem) = a.divrem(&b, &f).unwrap();
        assert_eq!(quot.mul(&b, &f).add(&rem, &f), a);
        assert!(rem.degree().unwrap_or(0) < 2);
        assert_eq!(a.divrem(&Poly::zero(), &f).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn trace_of_powers_scales_by_exponent() {
        for (p, r) in [(2, 2), (3, 1), (3, 2), (5, 1)] {
            let field = make_field(p, r).unwrap();
            for e in 1..=2 {
                for poly in monic_polys(&field, e).filter(|g| !g.coeff(0).is_zero()) {
                    for d in 1..=4u64 {
                        let pd = poly.pow(d, &field);
                        let dd = field.from_int(d as i64);
                        assert_eq!(pd.trace(&field).unwrap(), field.mul(dd, poly.trace(&field).unwrap()));
                        assert_eq!(pd.rtrace(&field).unwrap(), field.mul(dd, poly.rtrace(&field).unwrap()));
                    }
                }
            }
        }
    }
}
