//! Artin-Schreier curves `x(y^p - y) = m(x)` and their point counts.
//!
//! Away from `x = 0` each curve reads `y^p - y = h(x)` with
//! `h(x) = c_x x + c_inv / x`. The equation `y^p - y = c` has `p` solutions
//! when `Tr_{F_{q^m}/F_p}(c) = 0` and none otherwise, and the smooth model has
//! exactly one rational point over each of `x = 0` and `x = oo`, so
//! `#C(F_{q^m}) = p * #{x != 0 : Tr(h(x)) = 0} + 2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{saturating_pow, OracleBudget};
use crate::error::{Error, Result};
use crate::gf::tower::for_each_in_range;
use crate::gf::{make_tower, BaseElem, Element, FieldSpec, TowerSpec};

const CHUNK: u128 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveCase {
    /// `x(y^2 + y) = alpha (x^2 + 1)` over `F_{2^r}`, genus 1.
    Even,
    /// `x(y^p - y) = beta (alpha x^2 - 1)` over `F_{p^r}`, `p` odd, genus `p - 1`.
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    case: CurveCase,
    field: FieldSpec,
    alpha: BaseElem,
    beta: Option<BaseElem>,
}

/// Serializable view of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub case: CurveCase,
    pub q: u64,
    pub alpha: u32,
    pub beta: Option<u32>,
    pub genus: usize,
    pub equation: String,
}

impl CurveSpec {
    pub fn even(field: &FieldSpec, alpha: BaseElem) -> Result<CurveSpec> {
        if !field.is_even() {
            return Err(Error::InvalidInput("even-case curves need characteristic 2".into()));
        }
        check_unit(field, alpha, "alpha")?;
        Ok(CurveSpec { case: CurveCase::Even, field: field.clone(), alpha, beta: None })
    }

    pub fn odd(field: &FieldSpec, alpha: BaseElem, beta: BaseElem) -> Result<CurveSpec> {
        if field.is_even() {
            return Err(Error::InvalidInput("odd-case curves need odd characteristic".into()));
        }
        check_unit(field, alpha, "alpha")?;
        check_unit(field, beta, "beta")?;
        Ok(CurveSpec { case: CurveCase::Odd, field: field.clone(), alpha, beta: Some(beta) })
    }

    pub fn case(&self) -> CurveCase {
        self.case
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn alpha(&self) -> BaseElem {
        self.alpha
    }

    pub fn beta(&self) -> Option<BaseElem> {
        self.beta
    }

    pub fn genus(&self) -> usize {
        match self.case {
            CurveCase::Even => 1,
            CurveCase::Odd => self.field.p() as usize - 1,
        }
    }

    /// `(c_x, c_inv)` with `h(x) = c_x x + c_inv x^{-1}`.
    pub fn h_coefficients(&self) -> (BaseElem, BaseElem) {
        let f = &self.field;
        match (self.case, self.beta) {
            (CurveCase::Odd, Some(beta)) => (f.mul(beta, self.alpha), f.neg(beta)),
            _ => (self.alpha, self.alpha),
        }
    }

    /// Right-hand side `m(x)` of `x(y^p - y) = m(x)`.
    fn rhs(&self, tower: &TowerSpec, x: &Element) -> Element {
        let x2 = tower.square(x);
        match (self.case, self.beta) {
            (CurveCase::Odd, Some(beta)) => {
                let inner = tower.sub(&tower.scale(self.alpha, &x2), &tower.one());
                tower.scale(beta, &inner)
            }
            _ => tower.scale(self.alpha, &tower.add(&x2, &tower.one())),
        }
    }

    pub fn summary(&self) -> CurveSummary {
        let equation = match (self.case, self.beta) {
            (CurveCase::Odd, Some(b)) => {
                format!("x(y^{} - y) = {}({} x^2 - 1)", self.field.p(), b, self.alpha)
            }
            _ => format!("x(y^2 + y) = {}(x^2 + 1)", self.alpha),
        };
        CurveSummary {
            case: self.case,
            q: self.field.q() as u64,
            alpha: self.alpha.0,
            beta: self.beta.map(|b| b.0),
            genus: self.genus(),
            equation,
        }
    }
}

fn check_unit(field: &FieldSpec, a: BaseElem, name: &str) -> Result<()> {
    if a.is_zero() || a.0 >= field.q() {
        return Err(Error::InvalidInput(format!("{name} must be a nonzero element of F_{}", field.q())));
    }
    Ok(())
}

/// One representative per coset of `F_p^x` in `F_q^x`, scanning in code order.
pub fn beta_representatives(field: &FieldSpec) -> Vec<BaseElem> {
    let scalars: Vec<BaseElem> = (1..field.p()).map(BaseElem).collect();
    let mut kept: Vec<BaseElem> = Vec::new();
    for a in field.units() {
        if !kept.iter().any(|&b| scalars.iter().any(|&k| field.mul(k, b) == a)) {
            kept.push(a);
        }
    }
    kept
}

/// The curves entering the count: `q - 1` even curves, or
/// `(q - 1)(q - 1)/(p - 1)` odd ones ordered by `(alpha, beta)`.
pub fn curve_family(field: &FieldSpec) -> Vec<CurveSpec> {
    if field.is_even() {
        field.units().map(|a| CurveSpec::even(field, a).expect("valid even curve")).collect()
    } else {
        let betas = beta_representatives(field);
        field
            .units()
            .flat_map(|a| betas.iter().map(move |&b| (a, b)))
            .map(|(a, b)| CurveSpec::odd(field, a, b).expect("valid odd curve"))
            .collect()
    }
}

/// `#C(F_{q^m})` by the additive-character solvability criterion.
pub fn count_points(curve: &CurveSpec, m: usize, budget: &OracleBudget) -> Result<u64> {
    let tower = make_tower(curve.field(), m)?;
    count_points_in(curve, &tower, budget)
}

/// [`count_points`] over a given tower `F_{q^m}`.
pub fn count_points_in(curve: &CurveSpec, tower: &TowerSpec, budget: &OracleBudget) -> Result<u64> {
    budget.check_elements(tower.size())?;
    let f = tower.base();
    let (cx, cinv) = curve.h_coefficients();
    let mut solvable = 0u64;
    for_each_in_range(tower, 1, tower.size(), |x| {
        let x = tower.element(x.to_vec()).expect("in range");
        let inv = tower.invert(&x).expect("nonzero");
        let h = tower.add(&tower.scale(cx, &x), &tower.scale(cinv, &inv));
        if f.abs_trace(tower.trace_linear(h.coeffs())).is_zero() {
            solvable += 1;
        }
    });
    Ok(f.p() as u64 * solvable + 2)
}

/// Joint distribution of `(Tr(x), Tr(1/x))` over `x in F_{q^m}^x`,
/// flattened as `hist[t * q + s]`.
pub fn trace_pair_histogram(tower: &TowerSpec, budget: &OracleBudget) -> Result<Vec<u64>> {
    budget.check_elements(tower.size())?;
    let q = tower.base().q() as usize;
    let size = tower.size();
    let chunks = size.div_ceil(CHUNK) as usize;
    let hist = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = (c as u128 * CHUNK).max(1);
            let end = ((c as u128 + 1) * CHUNK).min(size);
            let mut local = vec![0u64; q * q];
            for_each_in_range(tower, start, end, |x| {
                let el = tower.element(x.to_vec()).expect("in range");
                let inv = tower.invert(&el).expect("nonzero");
                let t = tower.trace_linear(x).0 as usize;
                let s = tower.trace_linear(inv.coeffs()).0 as usize;
                local[t * q + s] += 1;
            });
            local
        })
        .reduce(
            || vec![0u64; q * q],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

/// Point counts of many curves over one `F_{q^m}` from a single pass.
///
/// By linearity `Tr(h(x)) = Tr_{F_q/F_p}(c_x Tr(x) + c_inv Tr(1/x))`.
pub fn count_family(curves: &[CurveSpec], tower: &TowerSpec, budget: &OracleBudget) -> Result<Vec<u64>> {
    let hist = trace_pair_histogram(tower, budget)?;
    Ok(curves.iter().map(|c| count_from_histogram(c, &hist)).collect())
}

pub(crate) fn count_from_histogram(curve: &CurveSpec, hist: &[u64]) -> u64 {
    let f = curve.field();
    let q = f.q();
    let (cx, cinv) = curve.h_coefficients();
    let mut solvable = 0u64;
    for t in 0..q {
        let a = f.mul(cx, BaseElem(t));
        for s in 0..q {
            let n = hist[(t * q + s) as usize];
            if n != 0 && f.abs_trace(f.add(a, f.mul(cinv, BaseElem(s)))).is_zero() {
                solvable += n;
            }
        }
    }
    f.p() as u64 * solvable + 2
}

/// `#C(F_{q^m})` by testing every pair `(x, y)` with `x != 0`, plus the two
/// points of the smooth model over `x = 0` and `x = oo`.
pub fn count_points_naive(curve: &CurveSpec, m: usize, budget: &OracleBudget) -> Result<u64> {
    let tower = make_tower(curve.field(), m)?;
    budget.check_pairs(tower.size().saturating_mul(tower.size()))?;
    let p = curve.field().p() as u128;
    let elems: Vec<Element> = tower.enumerate_elements(budget)?.collect();
    let ys: Vec<Element> = elems.iter().map(|y| tower.sub(&tower.pow(y, p), y)).collect();
    let mut affine = 0u64;
    for x in elems.iter().filter(|x| !x.is_zero()) {
        let rhs = curve.rhs(&tower, x);
        affine += ys.iter().filter(|y| tower.mul(x, y) == rhs).count() as u64;
    }
    Ok(affine + 2)
}

/// Points of `x(y^q - y) = alpha x^2 - 1` over `F_{q^m}` (in characteristic 2
/// this is `x(y^q + y) = alpha x^2 + 1`): `y^q - y = alpha x - 1/x` has `q`
/// solutions when its `F_q`-trace vanishes.
pub fn big_curve_count(field: &FieldSpec, alpha: BaseElem, m: usize, budget: &OracleBudget) -> Result<u64> {
    check_unit(field, alpha, "alpha")?;
    let tower = make_tower(field, m)?;
    budget.check_elements(tower.size())?;
    let mut solvable = 0u64;
    for_each_in_range(&tower, 1, tower.size(), |x| {
        let x = tower.element(x.to_vec()).expect("in range");
        let c = tower.sub(&tower.scale(alpha, &x), &tower.invert(&x).expect("nonzero"));
        if tower.trace_to_base(&c).is_zero() {
            solvable += 1;
        }
    });
    Ok(field.q() as u64 * solvable + 2)
}

/// [`big_curve_count`] by testing every pair `(x, y)`.
pub fn big_curve_count_naive(field: &FieldSpec, alpha: BaseElem, m: usize, budget: &OracleBudget) -> Result<u64> {
    check_unit(field, alpha, "alpha")?;
    let tower = make_tower(field, m)?;
    budget.check_pairs(tower.size().saturating_mul(tower.size()))?;
    let q = field.q() as u128;
    let elems: Vec<Element> = tower.enumerate_elements(budget)?.collect();
    let ys: Vec<Element> = elems.iter().map(|y| tower.sub(&tower.pow(y, q), y)).collect();
    let mut affine = 0u64;
    for x in elems.iter().filter(|x| !x.is_zero()) {
        let rhs = tower.sub(&tower.scale(alpha, &tower.square(x)), &tower.one());
        affine += ys.iter().filter(|y| tower.mul(x, y) == rhs).count() as u64;
    }
    Ok(affine + 2)
}

/// `(N - q^m - 1)^2 <= 4 g^2 q^m`.
pub fn hasse_weil_holds(q: u64, m: usize, genus: usize, count: u64) -> bool {
    let qm = saturating_pow(q, m);
    let defect = count as i128 - qm as i128 - 1;
    let lhs = (defect * defect) as u128;
    lhs <= 4 * (genus as u128).pow(2) * qm
}

/// `N_1..N_k` for one curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCounts {
    pub curve: CurveSpec,
    /// `counts[m - 1] = #C(F_{q^m})`.
    pub counts: Vec<u64>,
}

impl CurveCounts {
    /// Counts every curve of a family over `F_{q^m}` for `m = 1..=m_max`.
    pub fn for_family(curves: &[CurveSpec], m_max: usize, budget: &OracleBudget) -> Result<Vec<CurveCounts>> {
        let mut out: Vec<CurveCounts> =
            curves.iter().map(|c| CurveCounts { curve: c.clone(), counts: Vec::new() }).collect();
        let Some(field) = curves.first().map(|c| c.field().clone()) else {
            return Ok(out);
        };
        for m in 1..=m_max {
            let tower = make_tower(&field, m)?;
            for (slot, n) in out.iter_mut().zip(count_family(curves, &tower, budget)?) {
                slot.counts.push(n);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn genus_and_case_validation() {
        let f4 = make_field(2, 2).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(CurveSpec::even(&f4, BaseElem(1)).unwrap().genus(), 1);
        assert_eq!(CurveSpec::odd(&f9, BaseElem(1), BaseElem(1)).unwrap().genus(), 2);
        assert!(CurveSpec::even(&f9, BaseElem(1)).is_err());
        assert!(CurveSpec::odd(&f4, BaseElem(1), BaseElem(1)).is_err());
        assert!(CurveSpec::even(&f4, BaseElem(0)).is_err());
        assert!(CurveSpec::odd(&f9, BaseElem(2), BaseElem(0)).is_err());
    }

    #[test]
    fn smallest_even_curve_by_hand() {
        // Over F_2 the only unit is x = 1 and h(1) = 1 + 1 = 0: 2 * 1 + 2 points.
        let f2 = make_field(2, 1).unwrap();
        let c = CurveSpec::even(&f2, BaseElem(1)).unwrap();
        assert_eq!(count_points(&c, 1, &budget()).unwrap(), 4);
        assert_eq!(count_points_naive(&c, 1, &budget()).unwrap(), 4);
    }

    #[test]
    fn beta_representatives_cover_cosets() {
        assert_eq!(beta_representatives(&make_field(7, 1).unwrap()), vec![BaseElem(1)]);
        assert_eq!(beta_representatives(&make_field(3, 2).unwrap()).len(), 4);
        let f25 = make_field(5, 2).unwrap();
        let reps = beta_representatives(&f25);
        assert_eq!(reps.len(), 6);
        let mut covered = std::collections::BTreeSet::new();
        for &b in &reps {
            for k in 1..5 {
                assert!(covered.insert(f25.mul(BaseElem(k), b)), "cosets overlap");
            }
        }
        assert_eq!(covered.len(), 24);
    }

    #[test]
    fn family_sizes() {
        assert_eq!(curve_family(&make_field(2, 2).unwrap()).len(), 3);
        assert_eq!(curve_family(&make_field(3, 2).unwrap()).len(), 32);
        assert_eq!(curve_family(&make_field(2, 1).unwrap()).len(), 1);
        assert_eq!(curve_family(&make_field(5, 1).unwrap()).len(), 4);
    }

    #[test]
    fn criterion_matches_naive_even() {
        let f4 = make_field(2, 2).unwrap();
        for c in curve_family(&f4) {
            for m in 1..=3 {
                let n = count_points(&c, m, &budget()).unwrap();
                assert_eq!(n, count_points_naive(&c, m, &budget()).unwrap());
                assert_eq!(n % 2, 0);
                assert!(hasse_weil_holds(4, m, 1, n));
            }
        }
    }

    #[test]
    fn criterion_matches_naive_odd() {
        let f9 = make_field(3, 2).unwrap();
        for c in curve_family(&f9) {
            for m in 1..=2 {
                let n = count_points(&c, m, &budget()).unwrap();
                assert_eq!(n, count_points_naive(&c, m, &budget()).unwrap());
                assert_eq!(n % 3, 2);
                assert!(hasse_weil_holds(9, m, 2, n));
            }
        }
    }

    #[test]
    fn family_pass_matches_per_curve_counts() {
        for (p, r, m) in [(2, 2, 3), (3, 2, 2), (5, 1, 3), (2, 3, 2)] {
            let field = make_field(p, r).unwrap();
            let curves = curve_family(&field);
            let tower = make_tower(&field, m).unwrap();
            let fam = count_family(&curves, &tower, &budget()).unwrap();
            for (c, n) in curves.iter().zip(fam) {
                assert_eq!(n, count_points_in(c, &tower, &budget()).unwrap());
            }
        }
    }

    #[test]
    fn big_curve_even_is_alpha_independent() {
        let f4 = make_field(2, 2).unwrap();
        for m in 1..=3 {
            let counts: Vec<u64> =
                f4.units().map(|a| big_curve_count(&f4, a, m, &budget()).unwrap()).collect();
            assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
            for a in f4.units() {
                assert_eq!(counts[0], big_curve_count_naive(&f4, a, m, &budget()).unwrap());
            }
        }
    }

    #[test]
    fn budget_is_enforced_before_counting() {
        let f9 = make_field(3, 2).unwrap();
        let c = CurveSpec::odd(&f9, BaseElem(1), BaseElem(1)).unwrap();
        let tight = OracleBudget::new(80, 1000).unwrap();
        assert!(matches!(count_points(&c, 2, &tight), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(count_points_naive(&c, 2, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
