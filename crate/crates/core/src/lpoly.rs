//! L-polynomials of curves from their first `g` point counts.
//!
//! With `L(t) = prod (1 - a_i t) = sum c_k t^k` and power sums
//! `S_m = sum a_i^m = q^m + 1 - N_m`, Newton's identities give
//! `k c_k = -sum_{m=1}^{k} S_m c_{k-m}`. The functional equation
//! `c_{2g-i} = q^{g-i} c_i` fills the upper half, and `S_n` for larger `n`
//! follows from the same identities. The roots `a_i` are never materialized.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigint_serde;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPolynomial {
    q: u64,
    g: usize,
    #[serde(with = "bigint_serde::vec")]
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// Builds `L(t)` from `N_1..N_g`.
    pub fn from_counts(q: u64, g: usize, counts: &[u64]) -> Result<LPolynomial> {
        if q < 2 {
            return Err(Error::InvalidInput("q must be at least 2".into()));
        }
        if counts.len() != g {
            return Err(Error::InvalidInput(format!("expected {g} point counts, got {}", counts.len())));
        }
        let qb = BigInt::from(q);
        let mut sums = Vec::with_capacity(g);
        for (i, &n) in counts.iter().enumerate() {
            let m = i + 1;
            if !crate::curves::hasse_weil_holds(q, m, g, n) {
                return Err(Error::HasseWeilViolation { m, count: n });
            }
            sums.push(qb.pow(m as u32) + 1u32 - BigInt::from(n));
        }
        let mut coeffs = vec![BigInt::zero(); 2 * g + 1];
        coeffs[0] = BigInt::one();
        for k in 1..=g {
            let acc: BigInt = (1..=k).map(|m| &sums[m - 1] * &coeffs[k - m]).sum();
            let (quot, rem) = (-acc).div_rem(&BigInt::from(k));
            if !rem.is_zero() {
                return Err(Error::NonIntegralCoefficient(k));
            }
            coeffs[k] = quot;
        }
        for i in 0..g {
            coeffs[2 * g - i] = qb.pow((g - i) as u32) * &coeffs[i];
        }
        Ok(LPolynomial { q, g, coeffs })
    }

    /// Wraps explicit coefficients `c_0..c_{2g}`; checks only the shape.
    pub fn from_coefficients(q: u64, coeffs: Vec<BigInt>) -> Result<LPolynomial> {
        if coeffs.len() % 2 == 0 || !coeffs[0].is_one() {
            return Err(Error::InvalidInput("need c_0 = 1 and an even degree".into()));
        }
        let g = coeffs.len() / 2;
        Ok(LPolynomial { q, g, coeffs })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `c_{2g-i} = q^{g-i} c_i` for `0 <= i <= g`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let qb = BigInt::from(self.q);
        self.coeffs[0].is_one()
            && (0..=self.g).all(|i| self.coeffs[2 * self.g - i] == qb.pow((self.g - i) as u32) * &self.coeffs[i])
    }

    pub fn power_sums(&self) -> PowerSums<'_> {
        PowerSums { lp: self, values: Vec::new() }
    }

    /// `S_n = sum a_i^n`.
    pub fn power_sum(&self, n: usize) -> BigInt {
        self.power_sums().get(n).clone()
    }

    /// `#C(F_{q^n}) = q^n + 1 - S_n`.
    pub fn predict_count(&self, n: usize) -> Result<BigUint> {
        let s = self.power_sum(n);
        count_from_power_sum(self.q, n, &s)
    }

    /// `(S_n)^2 <= 4 g^2 q^n`.
    pub fn hasse_weil_holds(&self, n: usize) -> bool {
        let s = self.power_sum(n);
        hasse_weil_power_sum(self.q, self.g, n, &s)
    }

    /// Coefficients low-to-high as decimal strings.
    pub fn pretty(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

pub(crate) fn count_from_power_sum(q: u64, n: usize, s: &BigInt) -> Result<BigUint> {
    let count = BigInt::from(q).pow(n as u32) + 1u32 - s;
    if count.is_negative() {
        return Err(Error::NegativeCount(n));
    }
    Ok(count.to_biguint().expect("nonnegative"))
}

pub(crate) fn hasse_weil_power_sum(q: u64, g: usize, n: usize, s: &BigInt) -> bool {
    let bound = BigInt::from(4u32) * BigInt::from(g).pow(2) * BigInt::from(q).pow(n as u32);
    s * s <= bound
}

/// Lazily extended power sums `S_1, S_2, ...` of an L-polynomial.
#[derive(Clone, Debug)]
pub struct PowerSums<'a> {
    lp: &'a LPolynomial,
    /// `values[i] = S_{i+1}`.
    values: Vec<BigInt>,
}

impl PowerSums<'_> {
    /// `S_n` for `n >= 1`, extending the cache as needed.
    pub fn get(&mut self, n: usize) -> &BigInt {
        assert!(n >= 1, "power sums are indexed from 1");
        let c = &self.lp.coeffs;
        let deg = 2 * self.lp.g;
        while self.values.len() < n {
            let k = self.values.len() + 1;
            // S_k = -k c_k - sum_{m=1}^{k-1} S_m c_{k-m}, with c_j = 0 for j > 2g.
            let mut acc = if k <= deg { -(BigInt::from(k) * &c[k]) } else { BigInt::zero() };
            let lo = k.saturating_sub(deg).max(1);
            for m in lo..k {
                acc -= &self.values[m - 1] * &c[k - m];
            }
            self.values.push(acc);
        }
        &self.values[n - 1]
    }

    /// `S_1..S_n`.
    pub fn take(&mut self, n: usize) -> &[BigInt] {
        if n > 0 {
            self.get(n);
        }
        &self.values[..n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn genus_one_with_trace_zero() {
        let lp = LPolynomial::from_counts(7, 1, &[8]).unwrap();
        assert_eq!(lp.coeffs(), big(&[1, 0, 7]).as_slice());
        let sums: Vec<BigInt> = lp.power_sums().take(4).to_vec();
        assert_eq!(sums, big(&[0, -14, 0, 98]));
    }

    #[test]
    fn genus_one_over_f2() {
        let lp = LPolynomial::from_counts(2, 1, &[4]).unwrap();
        assert_eq!(lp.coeffs(), big(&[1, 1, 2]).as_slice());
        // a_1 + a_2 = -1, a_1 a_2 = 2: S_2 = 1 - 4 = -3, so N_2 = 4 + 1 + 3 = 8.
        assert_eq!(lp.power_sum(1), BigInt::from(-1));
        assert_eq!(lp.power_sum(2), BigInt::from(-3));
        assert_eq!(lp.predict_count(2).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn genus_two_symbolic() {
        // N_1 = 10 - s, N_2 = 82 - u with s = 3, u = -5.
        let (s, u) = (3i64, -5i64);
        let lp = LPolynomial::from_counts(9, 2, &[(10 - s) as u64, (82 - u) as u64]).unwrap();
        let c1 = -s;
        let c2 = (s * s - u) / 2;
        assert_eq!(lp.coeffs(), big(&[1, c1, c2, 9 * c1, 81]).as_slice());
        assert!(lp.satisfies_functional_equation());
    }

    #[test]
    fn round_trip_reproduces_inputs() {
        let counts = [7u64, 91];
        let lp = LPolynomial::from_counts(9, 2, &counts).unwrap();
        for (m, &n) in counts.iter().enumerate() {
            assert_eq!(lp.predict_count(m + 1).unwrap(), BigUint::from(n));
        }
    }

    #[test]
    fn inexact_newton_division_is_an_error() {
        // S_1 = 0, S_2 = 1: c_2 = -1/2.
        assert_eq!(LPolynomial::from_counts(9, 2, &[10, 81]).unwrap_err(), Error::NonIntegralCoefficient(2));
    }

    #[test]
    fn hasse_weil_precondition() {
        assert_eq!(
            LPolynomial::from_counts(4, 1, &[10]).unwrap_err(),
            Error::HasseWeilViolation { m: 1, count: 10 }
        );
        assert!(LPolynomial::from_counts(4, 1, &[9]).is_ok());
        assert!(LPolynomial::from_counts(4, 2, &[5]).is_err());
    }

    #[test]
    fn negative_prediction_is_reported() {
        let lp = LPolynomial::from_coefficients(2, big(&[1, -1000, 2])).unwrap();
        assert_eq!(lp.predict_count(1).unwrap_err(), Error::NegativeCount(1));
    }

    #[test]
    fn recurrence_agrees_with_explicit_roots() {
        // L(t) = (1 - 2t)(1 - 3t) has power sums 2^n + 3^n.
        let lp = LPolynomial::from_coefficients(6, big(&[1, -5, 6])).unwrap();
        let mut ps = lp.power_sums();
        for n in 1..40usize {
            let expect = BigInt::from(2).pow(n as u32) + BigInt::from(3).pow(n as u32);
            assert_eq!(ps.get(n), &expect);
        }
    }
}
