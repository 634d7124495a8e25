//! Brute-force recounts straight from the definitions, plus numeric checks of
//! the identities the formula path relies on.
//!
//! Nothing here calls into [`crate::counting`] except to obtain the values it
//! is compared against.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use crate::budget::OracleBudget;
use crate::budget::saturating_pow;
use crate::counting::{decomposition_rhs, CountEngine, EngineOptions};
use crate::curves::{big_curve_count, count_points, count_points_naive, curve_family, CurveCase};
use crate::error::{Error, Result};
use crate::gf::poly::{irreducibles, monic_polys};
use crate::gf::tower::for_each_in_range;
use crate::gf::{is_irreducible, make_tower, BaseElem, FieldSpec, Poly, TowerSpec};

const CHUNK: u128 = 1 << 14;

/// `#{a in F_{q^n} : Tr(a) = 0 and rTr(a) = 0}` with `rTr(0) = 0`.
pub fn enum_f_count(field: &FieldSpec, n: usize, budget: &OracleBudget) -> Result<u64> {
    let tower = make_tower(field, n)?;
    enum_f_count_in(&tower, budget)
}

/// [`enum_f_count`] over an explicitly given tower.
pub fn enum_f_count_in(tower: &TowerSpec, budget: &OracleBudget) -> Result<u64> {
    budget.check_elements(tower.size())?;
    let size = tower.size();
    let chunks = size.div_ceil(CHUNK) as usize;
    let total = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = (c as u128 * CHUNK).max(1);
            let end = ((c as u128 + 1) * CHUNK).min(size);
            let mut hits = 0u64;
            for_each_in_range(tower, start, end, |a| {
                if !tower.trace_linear(a).is_zero() {
                    return;
                }
                let inv = tower.invert(&tower.element(a.to_vec()).expect("in range")).expect("nonzero");
                if tower.trace_linear(inv.coeffs()).is_zero() {
                    hits += 1;
                }
            });
            hits
        })
        .sum::<u64>();
    // a = 0 qualifies under the rTr(0) = 0 convention.
    Ok(total + 1)
}

/// Number of irreducible candidates scanned by [`enum_i_count`].
pub fn i_candidates(q: u64, n: usize) -> u128 {
    match n {
        0 | 1 => 1,
        2 => q as u128,
        _ => saturating_pow(q, n - 2),
    }
}

/// Monic irreducible `x^n + c_{n-2} x^{n-2} + ... + c_2 x^2 + c_0` over `F_q`.
/// For `n = 1` this is `1` (the polynomial `x`).
pub fn enum_i_count(field: &FieldSpec, n: usize, budget: &OracleBudget) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("degree n must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    let q = field.q() as u64;
    let total = i_candidates(q, n);
    budget.check_elements(total)?;
    let count = (0..total as u64)
        .into_par_iter()
        .filter(|&k| {
            let f = zero_shape_candidate(field, n, k);
            is_irreducible(&f, field).expect("monic, positive degree")
        })
        .count();
    Ok(count as u64)
}

/// The `k`-th candidate: digits of `k` give `c_0`, then `c_2, ..., c_{n-2}`.
fn zero_shape_candidate(field: &FieldSpec, n: usize, mut k: u64) -> Poly {
    let q = field.q() as u64;
    let mut coeffs = vec![BaseElem::ZERO; n + 1];
    coeffs[n] = BaseElem::ONE;
    coeffs[0] = BaseElem((k % q) as u32);
    k /= q;
    for c in coeffs.iter_mut().take(n - 1).skip(2) {
        *c = BaseElem((k % q) as u32);
        k /= q;
    }
    Poly::new(coeffs)
}

/// Monic irreducibles of degree `n` whose trace is `gamma`, by exhaustion.
pub fn enum_trace_count(field: &FieldSpec, n: usize, gamma: BaseElem, budget: &OracleBudget) -> Result<u64> {
    budget.check_elements(saturating_pow(field.q() as u64, n))?;
    Ok(irreducibles(field, n).filter(|f| f.trace(field).expect("monic") == gamma).count() as u64)
}

/// Monic irreducibles of degree `n`, by exhaustion.
pub fn enum_irreducible_count(field: &FieldSpec, n: usize, budget: &OracleBudget) -> Result<u64> {
    budget.check_elements(saturating_pow(field.q() as u64, n))?;
    Ok(irreducibles(field, n).count() as u64)
}

/// Which functional `F_{q^n} -> F_q` is counted by [`z_count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZForm {
    /// `Z(q_1)`: zeros of `Tr`.
    Trace,
    /// `Z(q_2)`: zeros of `rTr`.
    RTrace,
    /// `Z(c q_1 - q_2)`: zeros of `c Tr - rTr`.
    Combined(BaseElem),
}

/// `(Tr(a), rTr(a))` for every `a in F_{q^n}`, each trace a sum of
/// Frobenius conjugates, tallied as `census[t * q + s]`.
pub fn trace_census(tower: &TowerSpec, budget: &OracleBudget) -> Result<Vec<u64>> {
    let q = tower.base().q() as usize;
    let mut census = vec![0u64; q * q];
    for a in tower.enumerate_elements(budget)? {
        let t = tower.trace_to_base(&a).0 as usize;
        let s = tower.rtrace(&a).0 as usize;
        census[t * q + s] += 1;
    }
    Ok(census)
}

/// Zeros of the chosen functional over `F_{q^n}`.
pub fn z_count(field: &FieldSpec, n: usize, form: ZForm, budget: &OracleBudget) -> Result<u64> {
    let tower = make_tower(field, n)?;
    Ok(z_from_census(field, &trace_census(&tower, budget)?, form))
}

fn z_from_census(field: &FieldSpec, census: &[u64], form: ZForm) -> u64 {
    let q = field.q();
    let mut z = 0;
    for t in 0..q {
        for s in 0..q {
            let (t_el, s_el) = (BaseElem(t), BaseElem(s));
            let zero = match form {
                ZForm::Trace => t_el.is_zero(),
                ZForm::RTrace => s_el.is_zero(),
                ZForm::Combined(c) => field.sub(field.mul(c, t_el), s_el).is_zero(),
            };
            if zero {
                z += census[(t * q + s) as usize];
            }
        }
    }
    z
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Beyond the budget; neither passed nor failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub q: u64,
    pub n: usize,
    pub outcome: Outcome,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// Checks of the trace and curve identities, as opposed to recounts.
    pub fn is_identity(&self) -> bool {
        const IDENTITIES: [&str; 8] = [
            "trace_fibers",
            "z_trace",
            "z_rtrace",
            "trace_kernel",
            "z_sum",
            "big_curve_z",
            "big_curve_alpha_free",
            "fiber_sum",
        ];
        IDENTITIES.iter().any(|id| self.name.starts_with(id))
    }

    /// One report line, e.g. `PASS big_curve_z[alpha=1] q=4 n=2`.
    pub fn line(&self) -> String {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        };
        let mut s = format!("{tag} {} q={} n={}", self.name, self.q, self.n);
        if self.outcome == Outcome::Fail {
            s.push_str(&format!(" expected={} actual={}", self.expected, self.actual));
        } else if self.outcome == Outcome::Skipped {
            s.push_str(&format!(" ({})", self.actual));
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    /// No check failed. Skipped checks do not count against this.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.checks.iter().filter(|c| c.outcome == outcome).count()
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.checks.iter().map(|c| c.line() + "\n").collect();
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Skipped)
        ));
        out
    }
}

struct Recorder {
    q: u64,
    checks: Vec<Check>,
}

impl Recorder {
    fn eq<T: PartialEq + ToString>(&mut self, name: impl Into<String>, n: usize, expected: T, actual: T) {
        let outcome = if expected == actual { Outcome::Pass } else { Outcome::Fail };
        self.checks.push(Check {
            name: name.into(),
            q: self.q,
            n,
            outcome,
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn truth(&mut self, name: impl Into<String>, n: usize, ok: bool) {
        self.eq(name, n, true, ok);
    }

    /// Records `Ok` values through `body`, budget errors as skips, and any
    /// other error as a failure.
    fn attempt<T>(&mut self, name: &str, n: usize, value: Result<T>, body: impl FnOnce(&mut Self, T)) {
        match value {
            Ok(v) => body(self, v),
            Err(e) => {
                let outcome = if matches!(e, Error::BudgetExceeded { .. }) { Outcome::Skipped } else { Outcome::Fail };
                self.checks.push(Check {
                    name: name.into(),
                    q: self.q,
                    n,
                    outcome,
                    expected: String::new(),
                    actual: e.to_string(),
                });
            }
        }
    }
}

/// Every identity check for `F_q` and `n = 1..=n_max`.
pub fn verify_all(field: &FieldSpec, n_max: usize, budget: &OracleBudget) -> VerifyReport {
    let q = field.q() as u64;
    let mut rec = Recorder { q, checks: Vec::new() };
    let engine = CountEngine::with_options(field, EngineOptions { budget: *budget, ..EngineOptions::default() });
    let engine = match engine {
        Ok(e) => Some(e),
        Err(e) => {
            rec.attempt::<()>("engine", 0, Err(e), |_, _| {});
            None
        }
    };
    let mut enum_i: Vec<Option<u64>> = vec![None];
    for n in 1..=n_max {
        let i = enum_i_count(field, n, budget).ok();
        enum_i.push(i);
    }
    for n in 1..=n_max {
        let tower = match make_tower(field, n) {
            Ok(t) => t,
            Err(e) => {
                rec.attempt::<()>("tower", n, Err(e), |_, _| {});
                continue;
            }
        };
        let qn = saturating_pow(q, n);
        let census = trace_census(&tower, budget);
        rec.attempt("census", n, census, |rec, census| {
            census_checks(rec, field, &tower, n, &census, budget);
        });
        let enum_f = enum_f_count(field, n, budget);
        let enum_f = match enum_f {
            Ok(v) => Some(v),
            Err(e) => {
                rec.attempt::<()>("f_count[oracle]", n, Err(e), |_, _| {});
                None
            }
        };
        if let (Some(engine), Some(v)) = (&engine, enum_f) {
            rec.attempt("f_count", n, engine.f_count(n), |rec, f| rec.eq("f_count", n, BigInt::from(v), f));
        }
        match (&engine, enum_i[n]) {
            (Some(engine), Some(v)) => {
                rec.attempt("i_count", n, engine.i_count(n), |rec, i| rec.eq("i_count", n, BigInt::from(v), i))
            }
            (_, None) => rec.attempt::<()>(
                "i_count",
                n,
                Err(Error::BudgetExceeded { needed: i_candidates(q, n), cap: budget.max_elements as u128 }),
                |_, _| {},
            ),
            _ => {}
        }
        if let Some(f) = enum_f {
            let rhs = decomposition_rhs(q, field.p() as u64, n as u64, |k| {
                enum_i[k as usize].map(BigInt::from).ok_or(())
            });
            if let Ok(rhs) = rhs {
                rec.eq("decomposition", n, BigInt::from(f), rhs);
            }
            // Isomorphism invariance under a different modulus of F_{q^n}.
            if let Some(other) = second_modulus(field, n) {
                rec.attempt("modulus_independence", n, TowerSpec::with_modulus(field, other), |rec, t| {
                    rec.attempt("modulus_independence", n, enum_f_count_in(&t, budget), |rec, g| {
                        rec.eq("modulus_independence", n, f, g)
                    });
                });
            }
        }
        curve_checks(&mut rec, field, n, qn, budget);
        trace_power_checks(&mut rec, field, n);
    }
    VerifyReport { checks: rec.checks }
}

fn census_checks(rec: &mut Recorder, field: &FieldSpec, tower: &TowerSpec, n: usize, census: &[u64], budget: &OracleBudget) {
    let q = field.q() as usize;
    let fiber = saturating_pow(q as u64, n - 1) as u64;
    let fibers_ok = (0..q).all(|t| census[t * q..(t + 1) * q].iter().sum::<u64>() == fiber);
    rec.truth("trace_fibers", n, fibers_ok);
    rec.eq("z_trace", n, fiber, z_from_census(field, census, ZForm::Trace));
    rec.eq("z_rtrace", n, fiber, z_from_census(field, census, ZForm::RTrace));
    // The kernel of Tr is the image of y -> y^q - y.
    if let Ok(elems) = tower.enumerate_elements(budget) {
        let mut kernel = BTreeSet::new();
        let mut image = BTreeSet::new();
        for a in elems {
            if tower.trace_to_base(&a).is_zero() {
                kernel.insert(tower.index_of(&a));
            }
            image.insert(tower.index_of(&tower.sub(&tower.frobenius(&a), &a)));
        }
        rec.truth("trace_kernel", n, kernel == image);
    }
    // q N(0,0) = Z(q_1) + sum_{c in F_q} Z(c q_1 - q_2) - q^n.
    let n00 = census[0];
    let mut rhs = z_from_census(field, census, ZForm::Trace) as i128 - saturating_pow(q as u64, n) as i128;
    for c in field.elements() {
        rhs += z_from_census(field, census, ZForm::Combined(c)) as i128;
    }
    rec.eq("z_sum", n, n00 as i128 * q as i128, rhs);
    // #big curve = q Z(alpha q_1 - q_2) - q + 2 for alpha in F_q^x.
    for alpha in field.units() {
        let name = format!("big_curve_z[alpha={}]", alpha.0);
        let z = z_from_census(field, census, ZForm::Combined(alpha)) as i128;
        rec.attempt(&name.clone(), n, big_curve_count(field, alpha, n, budget), |rec, big| {
            rec.eq(name, n, q as i128 * z - q as i128 + 2, big as i128)
        });
    }
}

fn curve_checks(rec: &mut Recorder, field: &FieldSpec, n: usize, qn: u128, budget: &OracleBudget) {
    let qn1 = qn as i128 + 1;
    let curves = curve_family(field);
    let counts: Vec<Result<u64>> = curves.iter().map(|c| count_points(c, n, budget)).collect();
    if counts.iter().any(|c| c.is_err()) {
        return;
    }
    let counts: Vec<i128> = counts.into_iter().map(|c| c.unwrap() as i128).collect();
    let p = field.p() as i128;
    rec.truth("curve_counts_mod_p", n, counts.iter().all(|&c| c % p == 2 % p));
    // Naive double loop, kept small.
    if qn * qn <= 1 << 20 {
        for (curve, &c) in curves.iter().zip(&counts) {
            let s = curve.summary();
            let name = match s.beta {
                Some(b) => format!("curve_naive[alpha={},beta={}]", s.alpha, b),
                None => format!("curve_naive[alpha={}]", s.alpha),
            };
            rec.attempt(&name.clone(), n, count_points_naive(curve, n, budget), |rec, naive| {
                rec.eq(name, n, naive as i128, c)
            });
        }
    }
    let bigs: Vec<(BaseElem, Result<u64>)> = field.units().map(|a| (a, big_curve_count(field, a, n, budget))).collect();
    match curves[0].case() {
        CurveCase::Even => {
            if let Ok(first) = &bigs[0].1 {
                rec.truth("big_curve_alpha_free", n, bigs.iter().all(|(_, b)| b.as_ref().ok() == Some(first)));
                let sum: i128 = counts.iter().map(|c| c - qn1).sum();
                rec.eq("fiber_sum_even", n, *first as i128 - qn1, sum);
            }
        }
        CurveCase::Odd => {
            for (alpha, big) in &bigs {
                let Ok(big) = big else { continue };
                let sum: i128 = curves
                    .iter()
                    .zip(&counts)
                    .filter(|(c, _)| c.alpha() == *alpha)
                    .map(|(_, c)| c - qn1)
                    .sum();
                rec.eq(format!("fiber_sum_odd[alpha={}]", alpha.0), n, *big as i128 - qn1, sum);
            }
        }
    }
}

/// `Tr(P^d) = d Tr(P)` and `rTr(P^d) = d rTr(P)` for monic `P` of degree `n/d`.
fn trace_power_checks(rec: &mut Recorder, field: &FieldSpec, n: usize) {
    for d in crate::gf::prime::divisors(n as u64).into_iter().map(|d| d as usize).filter(|&d| d > 1) {
        let k = n / d;
        let dd = field.from_int(d as i64);
        let mut ok = true;
        for pk in monic_polys(field, k).take(256) {
            let pd = pk.pow(d as u64, field);
            ok &= pd.trace(field).unwrap() == field.mul(dd, pk.trace(field).unwrap());
            if !pk.coeff(0).is_zero() {
                ok &= pd.rtrace(field).unwrap() == field.mul(dd, pk.rtrace(field).unwrap());
            }
        }
        rec.truth(format!("trace_of_powers[d={d}]"), n, ok);
    }
}

/// An irreducible of degree `n` over the base other than the canonical one.
fn second_modulus(field: &FieldSpec, n: usize) -> Option<Poly> {
    irreducibles(field, n).nth(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::carlitz_count;
    use crate::gf::make_field;

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn small_f_counts() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(enum_f_count(&f4, 2, &b()).unwrap(), 4);
        assert_eq!(enum_f_count(&f4, 1, &b()).unwrap(), 1);
        assert_eq!(enum_f_count(&f4, 5, &b()).unwrap(), 31);
    }

    #[test]
    fn small_i_counts() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(enum_i_count(&f4, 3, &b()).unwrap(), 2);
        assert_eq!(enum_i_count(&f4, 6, &b()).unwrap(), 34);
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(enum_i_count(&f9, 4, &b()).unwrap(), 20);
        assert_eq!(enum_i_count(&f9, 1, &b()).unwrap(), 1);
    }

    #[test]
    fn candidates_have_the_zero_shape() {
        let f3 = make_field(3, 1).unwrap();
        for k in 0..i_candidates(3, 6) as u64 {
            let c = zero_shape_candidate(&f3, 6, k);
            assert_eq!(c.degree(), Some(6));
            assert!(c.coeff(5).is_zero() && c.coeff(1).is_zero());
        }
    }

    #[test]
    fn z_counts_are_fiber_sizes() {
        let f4 = make_field(2, 2).unwrap();
        for n in 1..=6 {
            let want = 4u64.pow(n as u32 - 1);
            assert_eq!(z_count(&f4, n, ZForm::Trace, &b()).unwrap(), want);
            assert_eq!(z_count(&f4, n, ZForm::RTrace, &b()).unwrap(), want);
        }
    }

    #[test]
    fn carlitz_matches_nonzero_traces() {
        let f4 = make_field(2, 2).unwrap();
        for gamma in f4.units() {
            assert_eq!(BigInt::from(enum_trace_count(&f4, 3, gamma, &b()).unwrap()), carlitz_count(4, 3).unwrap());
        }
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(BigInt::from(enum_trace_count(&f2, 4, BaseElem::ONE, &b()).unwrap()), carlitz_count(2, 4).unwrap());
    }

    #[test]
    fn gauss_matches_enumeration() {
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(
            BigInt::from(enum_irreducible_count(&f9, 4, &b()).unwrap()),
            crate::counting::gauss_count(9, 4).unwrap()
        );
    }

    #[test]
    fn verify_small_fields() {
        for (p, r, n_max) in [(2, 2, 5), (3, 2, 3), (2, 1, 8), (5, 1, 3)] {
            let report = verify_all(&make_field(p, r).unwrap(), n_max, &b());
            let fails: Vec<String> = report.failures().map(Check::line).collect();
            assert!(fails.is_empty(), "{fails:?}");
            assert!(report.count(Outcome::Pass) > 10);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = make_field(2, 1).unwrap();
        let tiny = OracleBudget::new(16, 16).unwrap();
        assert!(matches!(enum_f_count(&f2, 5, &tiny), Err(Error::BudgetExceeded { .. })));
        assert!(enum_i_count(&f2, 7, &tiny).is_err());
    }
}
