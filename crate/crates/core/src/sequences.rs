//! Legendre-symbol sequence families built from polynomials with vanishing
//! `x^{n-1}` and `x` coefficients, their f-complexity and cross-correlation,
//! and the count of distinct families against `I_p(n,0,0)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigint_serde;
use crate::budget::{saturating_pow, OracleBudget};
use crate::counting::CountEngine;
use crate::error::{Error, Result};
use crate::gf::prime::is_prime;
use crate::gf::{is_irreducible, make_field, BaseElem, FieldSpec, Poly};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// The Legendre symbol `(a / p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if powmod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidInput("the sequence families need an odd prime".into()));
    }
    Ok(())
}

/// The members of `Omega_{p,n}`: monic irreducible
/// `x^n + a_2 x^{n-2} + ... + a_{n-2} x^2 + a_n` with `a_2, a_3 != 0`.
pub fn omega_members(p: u64, n: usize, budget: &OracleBudget) -> Result<Vec<Poly>> {
    check_odd_prime(p)?;
    if n < 5 {
        return Err(Error::InvalidInput("Omega_{p,n} needs n >= 5".into()));
    }
    let total = saturating_pow(p, n - 2);
    budget.check_elements(total)?;
    let field = make_field(p, 1)?;
    let members: Vec<Poly> = (0..total as u64)
        .into_par_iter()
        .filter_map(|k| {
            let f = omega_candidate(p, n, k)?;
            is_irreducible(&f, &field).expect("monic").then_some(f)
        })
        .collect();
    Ok(members)
}

/// Digits of `k`: `a_n`, then `a_2, ..., a_{n-2}`. `None` when `a_2` or `a_3` is 0.
fn omega_candidate(p: u64, n: usize, mut k: u64) -> Option<Poly> {
    let mut coeffs = vec![BaseElem::ZERO; n + 1];
    coeffs[n] = BaseElem::ONE;
    coeffs[0] = BaseElem((k % p) as u32);
    k /= p;
    for a in 2..=n - 2 {
        coeffs[n - a] = BaseElem((k % p) as u32);
        k /= p;
    }
    if coeffs[n - 2].is_zero() || coeffs[n - 3].is_zero() {
        return None;
    }
    Some(Poly::new(coeffs))
}

/// `(p - 1)` sequences of length `p - 1`, row `i` holding `((f_i(j) / p))_j`
/// with `f_i(X) = i^n f(X / i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqFamily {
    pub p: u64,
    pub n: usize,
    /// Coefficients of the source polynomial, constant term first.
    pub source: Vec<u32>,
    pub rows: Vec<Vec<i8>>,
}

impl SeqFamily {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row_len(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Rows sorted by content; two families are the same iff these agree.
    pub fn canonical(&self) -> Vec<Vec<i8>> {
        let mut rows = self.rows.clone();
        rows.sort();
        rows
    }

    pub fn distinct_rows(&self) -> usize {
        self.rows.iter().collect::<BTreeSet<_>>().len()
    }

    /// A family from explicit `+-1` rows, for the measures alone.
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<SeqFamily> {
        let len = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != len || r.iter().any(|&e| e != 1 && e != -1)) {
            return Err(Error::InvalidInput("rows must be +-1 vectors of one length".into()));
        }
        Ok(SeqFamily { p: 0, n: 0, source: Vec::new(), rows })
    }
}

/// The family `F_f` over `F_p`.
pub fn build_family(f: &Poly, p: u64) -> Result<SeqFamily> {
    check_odd_prime(p)?;
    let field: FieldSpec = make_field(p, 1)?;
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let n = match f.degree() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::InvalidInput("source polynomial needs degree >= 2".into())),
    };
    if f.coeffs().iter().any(|c| c.0 as u64 >= p) {
        return Err(Error::InvalidInput("coefficients must be residues mod p".into()));
    }
    let mut rows = Vec::with_capacity(p as usize - 1);
    for i in 1..p {
        // f_i has coefficient a_k i^{n-k} at X^k.
        let fi = Poly::new(
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(k, &a)| BaseElem(mulmod(a.0 as u64, powmod(i, (n - k) as u64, p), p) as u32))
                .collect(),
        );
        let mut row = Vec::with_capacity(p as usize - 1);
        for j in 1..p {
            let v = fi.eval(BaseElem(j as u32), &field);
            if v.is_zero() {
                return Err(Error::ZeroEvaluation { i: i as u32, j: j as u32 });
            }
            row.push(legendre(v.0 as i64, p));
        }
        rows.push(row);
    }
    Ok(SeqFamily { p, n, source: f.codes(), rows })
}

/// The transpose: sequence `j` lists row `i`'s `j`-th entry for every `i`.
pub fn dual_family(fam: &SeqFamily) -> SeqFamily {
    let len = fam.row_len();
    let rows = (0..len).map(|j| fam.rows.iter().map(|r| r[j]).collect()).collect();
    SeqFamily { rows, ..fam.clone() }
}

/// Non-decreasing `l`-tuples over `0..upper`.
fn shift_tuples(l: usize, upper: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; l];
    if upper == 0 {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut k = l;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] + 1 < upper {
                let v = cur[k] + 1;
                cur[k..].iter_mut().for_each(|c| *c = v);
                break;
            }
        }
    }
}

/// `Phi_l`: the largest `|sum_{m=1}^{M} e_{i_1, m+d_1} ... e_{i_l, m+d_l}|` over
/// windows `M`, non-decreasing shifts `D` (distinct where the chosen rows are
/// equal) and row tuples `I`.
pub fn cross_correlation(fam: &SeqFamily, l: usize, budget: &OracleBudget) -> Result<u64> {
    if l == 0 {
        return Err(Error::InvalidInput("order l must be positive".into()));
    }
    let rows = fam.row_count();
    let len = fam.row_len();
    if rows == 0 || len == 0 {
        return Ok(0);
    }
    let shifts = shift_tuples(l, len);
    let tuples = saturating_pow(rows as u64, l);
    budget.check_pairs((shifts.len() as u128).saturating_mul(tuples).saturating_mul(len as u128))?;
    let best = (0..tuples as u64)
        .into_par_iter()
        .map(|t| {
            let mut idx = Vec::with_capacity(l);
            let mut t = t;
            for _ in 0..l {
                idx.push((t % rows as u64) as usize);
                t /= rows as u64;
            }
            let mut best = 0u64;
            for d in &shifts {
                if !admissible(fam, &idx, d) {
                    continue;
                }
                let mut sum = 0i64;
                for m in 0..len - d[l - 1] {
                    sum += idx.iter().zip(d).map(|(&i, &s)| fam.rows[i][m + s] as i64).product::<i64>();
                    best = best.max(sum.unsigned_abs());
                }
            }
            best
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

fn admissible(fam: &SeqFamily, idx: &[usize], d: &[usize]) -> bool {
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if d[a] == d[b] && fam.rows[idx[a]] == fam.rows[idx[b]] {
                return false;
            }
        }
    }
    true
}

/// The f-complexity: the largest `j` such that every sign pattern on every
/// `j` positions occurs in some row.
pub fn family_complexity(fam: &SeqFamily, budget: &OracleBudget) -> Result<usize> {
    let len = fam.row_len();
    let rows = fam.row_count();
    let mut j = 0;
    while j < len {
        let next = j + 1;
        if next >= 64 || (1u64 << next) > rows as u64 {
            break;
        }
        budget.check_pairs(binomial(len, next).saturating_mul(rows as u128))?;
        if !all_patterns(fam, next) {
            break;
        }
        j = next;
    }
    Ok(j)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn all_patterns(fam: &SeqFamily, j: usize) -> bool {
    let len = fam.row_len();
    let mut pos: Vec<usize> = (0..j).collect();
    loop {
        let seen: BTreeSet<u64> = fam
            .rows
            .iter()
            .map(|r| pos.iter().enumerate().fold(0u64, |acc, (b, &k)| acc | (((r[k] > 0) as u64) << b)))
            .collect();
        if seen.len() < 1 << j {
            return false;
        }
        // Next j-subset in lexicographic order.
        let mut k = j;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            if pos[k] < len - j + k {
                pos[k] += 1;
                for t in k + 1..j {
                    pos[t] = pos[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Distinct families over `Omega_{p,n}` against `I_p(n,0,0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyBound {
    pub p: u64,
    pub n: usize,
    pub members: usize,
    pub distinct: usize,
    #[serde(with = "bigint_serde")]
    pub bound: BigInt,
    /// `distinct < bound`.
    pub strict: bool,
    #[serde(with = "bigint_serde")]
    pub margin: BigInt,
}

pub fn distinct_family_count(p: u64, n: usize, budget: &OracleBudget) -> Result<FamilyBound> {
    let members = omega_members(p, n, budget)?;
    let families = members.par_iter().map(|f| build_family(f, p).map(|fam| fam.canonical())).collect::<Result<Vec<_>>>()?;
    let distinct = families.into_iter().collect::<BTreeSet<_>>().len();
    let engine = CountEngine::new(&make_field(p, 1)?)?;
    let bound = engine.i_count(n)?;
    let margin = &bound - BigInt::from(distinct);
    Ok(FamilyBound { p, n, members: members.len(), distinct, strict: margin > BigInt::from(0), bound, margin })
}
