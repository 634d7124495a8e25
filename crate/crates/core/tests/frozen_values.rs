//! Fixed values computed by hand or by exhaustive enumeration.

use num_bigint::BigInt;
use vantrace::counting::{carlitz_count, decomposition_rhs, gauss_count, mobius};
use vantrace::curves::{beta_representatives, count_points, count_points_naive, curve_family, CurveSpec};
use vantrace::gf::poly::{irreducibles, monic_polys};
use vantrace::gf::{is_irreducible, make_field, make_tower, BaseElem, Poly};
use vantrace::oracle::{enum_f_count, enum_i_count, enum_irreducible_count};
use vantrace::{CountEngine, LPolynomial, OracleBudget};

fn b() -> OracleBudget {
    OracleBudget::default()
}

#[test]
fn canonical_moduli() {
    assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    // By exhaustion: the first irreducible monic quadratic over F_3.
    let f3 = make_field(3, 1).unwrap();
    let first = monic_polys(&f3, 2).find(|g| f3.elements().all(|a| !g.eval(a, &f3).is_zero())).unwrap();
    assert_eq!(make_field(3, 2).unwrap().modulus(), first.codes().as_slice());
    assert_eq!(first.codes(), vec![1, 0, 1]);
    let f2 = make_field(2, 1).unwrap();
    assert_eq!(make_tower(&f2, 3).unwrap().ext_modulus().codes(), vec![1, 1, 0, 1]);
    let f4 = make_field(2, 2).unwrap();
    assert_eq!(make_tower(&f4, 1).unwrap().ext_modulus().degree(), Some(1));
    assert_eq!(make_tower(&f4, 2).unwrap().ext_modulus(), &irreducibles(&f4, 2).next().unwrap());
}

#[test]
fn irreducibility_examples() {
    let f2 = make_field(2, 1).unwrap();
    assert!(is_irreducible(&Poly::from_codes(&[1, 1, 1]), &f2).unwrap());
    let f4 = make_field(2, 2).unwrap();
    let w = f4.generator().code();
    assert!(is_irreducible(&Poly::from_codes(&[w, 0, 0, 1]), &f4).unwrap());
    assert!(!is_irreducible(&Poly::from_codes(&[1, 0, 0, 1]), &f4).unwrap());
    assert!(is_irreducible(&Poly::from_codes(&[1, 0, 2]), &f4).is_err());
}

#[test]
fn element_traces() {
    let f2 = make_field(2, 1).unwrap();
    let t = make_tower(&f2, 2).unwrap();
    assert_eq!(t.trace_to_base(&t.generator_x()), BaseElem::ONE);
    let f9 = make_field(3, 2).unwrap();
    for n in 1..=4 {
        let t = make_tower(&f9, n).unwrap();
        assert_eq!(t.trace_to_base(&t.one()), f9.from_int(n as i64));
        assert_eq!(t.rtrace(&t.zero()), BaseElem::ZERO);
        for a in f9.units() {
            let want = f9.mul(f9.from_int(n as i64), f9.inv(a).unwrap());
            assert_eq!(t.rtrace(&t.embed(a)), want);
        }
        assert_eq!(t.absolute_trace(&t.one()), f9.from_int(2 * n as i64));
    }
}

#[test]
fn small_curve_and_lpoly() {
    let f2 = make_field(2, 1).unwrap();
    let c = CurveSpec::even(&f2, BaseElem::ONE).unwrap();
    assert_eq!(count_points(&c, 1, &b()).unwrap(), 4);
    assert_eq!(count_points_naive(&c, 1, &b()).unwrap(), 4);
    let lp = LPolynomial::from_counts(2, 1, &[4]).unwrap();
    assert_eq!(lp.coeffs(), &[BigInt::from(1), BigInt::from(1), BigInt::from(2)]);
    for m in 2..=6 {
        assert_eq!(lp.predict_count(m).unwrap(), count_points_naive(&c, m, &b()).unwrap().into());
    }
}

#[test]
fn coset_representatives() {
    let f25 = make_field(5, 2).unwrap();
    let reps = beta_representatives(&f25);
    assert_eq!(reps.len(), 6);
    let fp: Vec<BaseElem> = f25.units().filter(|&a| f25.is_in_prime_subfield(a)).collect();
    assert_eq!(fp.len(), 4);
    for (i, &a) in reps.iter().enumerate() {
        for &b in &reps[i + 1..] {
            assert!(fp.iter().all(|&c| f25.mul(a, c) != b));
        }
    }
    assert_eq!(curve_family(&f25).len(), 24 * 6);
}

#[test]
fn classical_counts_against_enumeration() {
    for (p, r, n) in [(3, 2, 4), (2, 2, 3), (2, 1, 8), (5, 1, 3)] {
        let f = make_field(p, r).unwrap();
        let q = f.q() as u64;
        assert_eq!(BigInt::from(enum_irreducible_count(&f, n, &b()).unwrap()), gauss_count(q, n as u64).unwrap());
    }
    assert_eq!(mobius(1), 1);
    assert_eq!(carlitz_count(2, 2).unwrap(), BigInt::from(1));
}

#[test]
fn q9_table_alignment() {
    let e = CountEngine::new(&make_field(3, 2).unwrap()).unwrap();
    let f: Vec<BigInt> = (2..=6).map(|n| e.f_count(n).unwrap()).collect();
    let want: Vec<BigInt> = [9, 9, 89, 801, 6561].into_iter().map(BigInt::from).collect();
    assert_eq!(f, want);
    assert_eq!(e.i_count(4).unwrap(), BigInt::from(20));
    assert_eq!(e.f_count(1).unwrap(), BigInt::from(1));
}

#[test]
fn q2_decomposition_through_degree_12() {
    let field = make_field(2, 1).unwrap();
    let e = CountEngine::new(&field).unwrap();
    let t = e.table(2, 12, Some(&b())).unwrap();
    for row in &t.rows {
        let rhs = decomposition_rhs(2, 2, row.n as u64, |k| e.i_count(k as usize)).unwrap();
        assert_eq!(rhs, row.f_count, "n={}", row.n);
        assert_eq!(row.oracle_f.as_ref(), Some(&row.f_count));
        assert_eq!(row.oracle_i.as_ref(), Some(&row.i_count));
    }
}

#[test]
fn oracle_worked_values() {
    let f9 = make_field(3, 2).unwrap();
    assert_eq!(enum_f_count(&f9, 5, &b()).unwrap(), 801);
    assert_eq!(enum_i_count(&f9, 5, &b()).unwrap(), 160);
    let f4 = make_field(2, 2).unwrap();
    assert_eq!(enum_i_count(&f4, 2, &b()).unwrap(), 0);
}
