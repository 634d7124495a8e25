//! L-polynomials from the first g counts, and predictions beyond them.

use vantrace::curves::{count_points, CurveSpec};
use vantrace::gf::make_field;
use vantrace::{LPolynomial, OracleBudget};

fn main() -> vantrace::Result<()> {
    let budget = OracleBudget::default();
    let f9 = make_field(3, 2)?;
    let curve = CurveSpec::odd(&f9, f9.generator(), f9.element(1)?)?;
    let g = curve.genus();
    let counts: Vec<u64> = (1..=g).map(|m| count_points(&curve, m, &budget)).collect::<Result<_, _>>()?;
    let lp = LPolynomial::from_counts(9, g, &counts)?;
    println!("{}", curve.summary().equation);
    println!("L(t) = {}", lp.pretty());
    println!("functional equation: {}", lp.satisfies_functional_equation());
    for m in 1..=5 {
        let predicted = lp.predict_count(m)?;
        if m <= 4 {
            println!("m={m}: predicted {predicted}, counted {}", count_points(&curve, m, &budget)?);
        } else {
            println!("m={m}: predicted {predicted}");
        }
    }
    println!("S_40 = {}", lp.power_sum(40));
    Ok(())
}
