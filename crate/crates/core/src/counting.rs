//! `F_q(n,0,0)` from curve L-polynomials, `I_q(n,0,0)` by Moebius inversion,
//! and the classical Gauss and Carlitz counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigint_serde;
use crate::budget::{saturating_pow, OracleBudget};
use crate::curves::{count_family, curve_family, CurveCounts, CurveSpec};
use crate::error::{Error, Result};
use crate::gf::prime::{divisors, factorize};
use crate::gf::{make_tower, FieldDescriptor, FieldSpec};
use crate::lpoly::{count_from_power_sum, hasse_weil_power_sum, LPolynomial};
use crate::oracle;
use crate::reference::{self, Quantity};

/// The Moebius function, by trial-division factorization.
pub fn mobius(m: u64) -> i8 {
    assert!(m >= 1, "mobius is defined on positive integers");
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn exact_div(num: BigInt, den: &BigInt, what: &'static str) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::NonIntegral(what));
    }
    Ok(quot)
}

/// Monic irreducibles of degree `n` over `F_q`: `(1/n) sum_{d|n} mu(d) q^{n/d}`.
pub fn gauss_count(q: u64, n: u64) -> Result<BigInt> {
    check_degree(n)?;
    let qb = BigInt::from(q);
    let sum: BigInt = divisors(n).into_iter().map(|d| mobius(d) as i64 * qb.pow((n / d) as u32)).sum();
    exact_div(sum, &BigInt::from(n), "gauss_count")
}

/// Carlitz's count of monic irreducibles with a prescribed nonzero trace:
/// `(1/(qn)) sum_{d|n, p does not divide d} mu(d) q^{n/d}`.
pub fn carlitz_count(q: u64, n: u64) -> Result<BigInt> {
    check_degree(n)?;
    let (p, _) = crate::gf::prime::prime_power(q)
        .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
    let qb = BigInt::from(q);
    let sum: BigInt = divisors(n)
        .into_iter()
        .filter(|d| d % p != 0)
        .map(|d| mobius(d) as i64 * qb.pow((n / d) as u32))
        .sum();
    exact_div(sum, &BigInt::from(q * n), "carlitz_count")
}

fn check_degree(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("degree n must be positive".into()))
    } else {
        Ok(())
    }
}

/// Right-hand side of `F(n) = [p|n] q^{n/p} + sum_{d|n, p does not divide d} (n/d) I(n/d)`.
pub fn decomposition_rhs<E>(q: u64, p: u64, n: u64, mut irreducible: impl FnMut(u64) -> std::result::Result<BigInt, E>) -> std::result::Result<BigInt, E> {
    let mut acc = if n % p == 0 { BigInt::from(q).pow((n / p) as u32) } else { BigInt::zero() };
    for d in divisors(n).into_iter().filter(|d| d % p != 0) {
        acc += BigInt::from(n / d) * irreducible(n / d)?;
    }
    Ok(acc)
}

/// Construction options for [`CountEngine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Budget for the point counts over `F_{q^m}`, `m <= g`.
    pub budget: OracleBudget,
    /// Recount at `m = g+1, g+2` while `q^m` stays below this.
    pub verify_cap: u64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { budget: OracleBudget::default(), verify_cap: 1 << 20 }
    }
}

/// Curves and their L-polynomials for one base field, built once.
#[derive(Clone, Debug)]
pub struct CountEngine {
    field: FieldSpec,
    curves: Vec<CurveSpec>,
    lpolys: Vec<LPolynomial>,
    verified: Vec<usize>,
}

impl CountEngine {
    pub fn new(field: &FieldSpec) -> Result<CountEngine> {
        CountEngine::with_options(field, EngineOptions::default())
    }

    pub fn with_options(field: &FieldSpec, opts: EngineOptions) -> Result<CountEngine> {
        let curves = curve_family(field);
        let g = curves[0].genus();
        let q = field.q() as u64;
        let counts = CurveCounts::for_family(&curves, g, &opts.budget)?;
        let lpolys = counts
            .iter()
            .map(|c| LPolynomial::from_counts(q, g, &c.counts))
            .collect::<Result<Vec<_>>>()?;
        let mut verified = Vec::new();
        for m in g + 1..=g + 2 {
            if saturating_pow(q, m) > opts.verify_cap as u128 {
                break;
            }
            let tower = make_tower(field, m)?;
            for (lp, counted) in lpolys.iter().zip(count_family(&curves, &tower, &opts.budget)?) {
                let predicted = lp.predict_count(m)?;
                if predicted != num_bigint::BigUint::from(counted) {
                    return Err(Error::InconsistentCounts { m, predicted: predicted.to_string(), counted });
                }
            }
            verified.push(m);
        }
        Ok(CountEngine { field: field.clone(), curves, lpolys, verified })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn curves(&self) -> &[CurveSpec] {
        &self.curves
    }

    pub fn lpolys(&self) -> &[LPolynomial] {
        &self.lpolys
    }

    /// Degrees beyond the genus at which predictions were recounted.
    pub fn verified_degrees(&self) -> &[usize] {
        &self.verified
    }

    fn q(&self) -> u64 {
        self.field.q() as u64
    }

    /// `S(F_{q^n}) = #C(F_{q^n}) - (q^n + 1)` for every curve, in family order.
    pub fn defects(&self, n: usize) -> Result<Vec<BigInt>> {
        check_degree(n as u64)?;
        let q = self.q();
        let qn1 = BigInt::from(q).pow(n as u32) + 1u32;
        self.lpolys
            .iter()
            .map(|lp| {
                let s = lp.power_sum(n);
                if !hasse_weil_power_sum(q, lp.genus(), n, &s) {
                    return Err(Error::HasseWeilViolation { m: n, count: 0 });
                }
                Ok(BigInt::from(count_from_power_sum(q, n, &s)?) - &qn1)
            })
            .collect()
    }

    /// The sum entering the count: `sum_alpha (S_alpha + 1)` for even `q`,
    /// `sum_{alpha,beta} S_{alpha,beta}` for odd `q`.
    pub fn defect_sum(&self, n: usize) -> Result<BigInt> {
        let defects = self.defects(n)?;
        Ok(if self.field.is_even() {
            defects.iter().map(|s| s + 1u32).sum()
        } else {
            defects.iter().sum()
        })
    }

    /// `F_q(n,0,0)`.
    pub fn f_count(&self, n: usize) -> Result<BigInt> {
        let q = BigInt::from(self.q());
        let sum = self.defect_sum(n)?;
        let num = if self.field.is_even() {
            q.pow(n as u32) + (&q - 1u32) * sum
        } else {
            q.pow(n as u32) + (&q - 1u32).pow(2) + sum
        };
        let f = exact_div(num, &(&q * &q), "f_count")?;
        if f.is_negative() {
            return Err(Error::NonIntegral("f_count is negative"));
        }
        Ok(f)
    }

    /// `I_q(n,0,0) = (1/n) sum_{d|n, p does not divide d} mu(d) (F_q(n/d,0,0) - [p|n] q^{n/(pd)})`.
    pub fn i_count(&self, n: usize) -> Result<BigInt> {
        check_degree(n as u64)?;
        let (n, p, q) = (n as u64, self.field.p() as u64, BigInt::from(self.q()));
        let p_divides = n % p == 0;
        let mut acc = BigInt::zero();
        for d in divisors(n).into_iter().filter(|d| d % p != 0) {
            let mu = mobius(d);
            if mu == 0 {
                continue;
            }
            let mut term = self.f_count((n / d) as usize)?;
            if p_divides {
                term -= q.pow((n / (p * d)) as u32);
            }
            acc += mu as i64 * term;
        }
        let i = exact_div(acc, &BigInt::from(n), "i_count")?;
        if i.is_negative() {
            return Err(Error::NonIntegral("i_count is negative"));
        }
        Ok(i)
    }

    /// Rows for `n_min..=n_max`, recounted by the oracle wherever `oracle`
    /// admits the enumeration, and compared with the published tables.
    pub fn table(&self, n_min: usize, n_max: usize, oracle: Option<&OracleBudget>) -> Result<CountReport> {
        if n_min == 0 || n_min > n_max {
            return Err(Error::InvalidInput("need 1 <= n_min <= n_max".into()));
        }
        let q = self.q();
        let mut rows = Vec::new();
        for n in n_min..=n_max {
            let f_count = self.f_count(n)?;
            let i_count = self.i_count(n)?;
            let mut row = CountRow::new(n, f_count, i_count);
            if let Some(budget) = oracle {
                if let Ok(v) = oracle::enum_f_count(&self.field, n, budget) {
                    row.oracle_f = Some(v.into());
                }
                if let Ok(v) = oracle::enum_i_count(&self.field, n, budget) {
                    row.oracle_i = Some(v.into());
                }
            }
            row.reference_f = reference::lookup(q, Quantity::Elements, n as u64).map(BigInt::from);
            row.reference_i = reference::lookup(q, Quantity::Irreducibles, n as u64).map(BigInt::from);
            row.finish();
            rows.push(row);
        }
        Ok(CountReport { field: self.field.descriptor(), rows })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Formula,
    Oracle,
    Reference,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    #[serde(with = "bigint_serde")]
    pub f_count: BigInt,
    #[serde(with = "bigint_serde")]
    pub i_count: BigInt,
    /// Every source that produced a value agreeing with the formula.
    pub sources: Vec<Source>,
    #[serde(with = "bigint_serde::option", default)]
    pub oracle_f: Option<BigInt>,
    #[serde(with = "bigint_serde::option", default)]
    pub oracle_i: Option<BigInt>,
    #[serde(with = "bigint_serde::option", default)]
    pub reference_f: Option<BigInt>,
    #[serde(with = "bigint_serde::option", default)]
    pub reference_i: Option<BigInt>,
    pub discrepancies: Vec<String>,
}

impl CountRow {
    fn new(n: usize, f_count: BigInt, i_count: BigInt) -> CountRow {
        CountRow {
            n,
            f_count,
            i_count,
            sources: vec![Source::Formula],
            oracle_f: None,
            oracle_i: None,
            reference_f: None,
            reference_i: None,
            discrepancies: Vec::new(),
        }
    }

    fn finish(&mut self) {
        let checks = [
            (Source::Oracle, "oracle", "F", &self.oracle_f, &self.f_count),
            (Source::Oracle, "oracle", "I", &self.oracle_i, &self.i_count),
            (Source::Reference, "reference table", "F", &self.reference_f, &self.f_count),
            (Source::Reference, "reference table", "I", &self.reference_i, &self.i_count),
        ];
        let mut agree = Vec::new();
        let mut disagree = Vec::new();
        for (src, label, what, other, formula) in checks {
            if let Some(v) = other {
                if v == formula {
                    agree.push(src);
                } else {
                    disagree.push(src);
                    self.discrepancies.push(format!("{what}: {label} lists {v}, formula gives {formula}"));
                }
            }
        }
        for src in [Source::Oracle, Source::Reference] {
            if agree.contains(&src) && !disagree.contains(&src) {
                self.sources.push(src);
            }
        }
    }

    /// True when the formula and the oracle disagree on this row.
    pub fn oracle_mismatch(&self) -> bool {
        self.oracle_f.as_ref().is_some_and(|v| v != &self.f_count)
            || self.oracle_i.as_ref().is_some_and(|v| v != &self.i_count)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub field: FieldDescriptor,
    pub rows: Vec<CountRow>,
}

impl CountReport {
    /// `n,f_count,i_count` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,f_count,i_count\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.f_count, r.i_count));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn engine(p: u64, r: u32) -> CountEngine {
        CountEngine::new(&make_field(p, r).unwrap()).unwrap()
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(5), -1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn gauss_and_carlitz() {
        assert_eq!(gauss_count(2, 3).unwrap(), BigInt::from(2));
        assert_eq!(gauss_count(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(carlitz_count(2, 2).unwrap(), BigInt::from(1));
        assert!(gauss_count(2, 0).is_err());
        assert!(carlitz_count(6, 2).is_err());
    }

    #[test]
    fn worked_values_q4() {
        let e = engine(2, 2);
        assert_eq!(e.defect_sum(5).unwrap(), BigInt::from(-176));
        assert_eq!(e.f_count(5).unwrap(), BigInt::from(31));
        assert_eq!(e.f_count(1).unwrap(), BigInt::from(1));
        assert_eq!(e.i_count(5).unwrap(), BigInt::from(6));
        assert_eq!(e.i_count(1).unwrap(), BigInt::from(1));
        assert_eq!(e.i_count(10).unwrap(), BigInt::from(6366));
        assert_eq!(e.i_count(3).unwrap(), BigInt::from(2));
    }

    #[test]
    fn worked_values_q9() {
        let e = engine(3, 2);
        assert_eq!(e.defect_sum(5).unwrap(), BigInt::from(5768));
        assert_eq!(e.f_count(5).unwrap(), BigInt::from(801));
        assert_eq!(e.f_count(1).unwrap(), BigInt::from(1));
        assert_eq!(e.i_count(5).unwrap(), BigInt::from(160));
    }

    #[test]
    fn quadratic_zero_trace_irreducibles_vanish_in_char_two() {
        for r in 1..=4 {
            assert_eq!(engine(2, r).i_count(2).unwrap(), BigInt::zero(), "q = 2^{r}");
        }
    }

    #[test]
    fn decomposition_identity_on_formula_values() {
        for (p, r) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let e = engine(p, r);
            let q = e.q();
            for n in 1..=24u64 {
                let rhs = decomposition_rhs(q, p, n, |k| e.i_count(k as usize)).unwrap();
                assert_eq!(rhs, e.f_count(n as usize).unwrap(), "q={q} n={n}");
                if n >= 2 {
                    let i = e.i_count(n as usize).unwrap();
                    assert!(i <= gauss_count(q, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn table_rows_and_reference_flags() {
        let e = engine(2, 2);
        let t = e.table(3, 10, None).unwrap();
        assert_eq!(t.rows.len(), 8);
        let n3 = &t.rows[0];
        assert_eq!(n3.i_count, BigInt::from(2));
        assert_eq!(n3.discrepancies.len(), 1);
        assert!(t.rows[1..].iter().all(|r| r.discrepancies.is_empty()));
        assert!(t.to_csv().starts_with("n,f_count,i_count\n3,7,2\n"));
        assert!(e.table(4, 3, None).is_err());
    }
}
