//! Point counts of the curve families over F_4 and F_9, checked against the
//! double loop over (x, y).

use vantrace::curves::{count_points, count_points_naive, curve_family};
use vantrace::gf::make_field;
use vantrace::OracleBudget;

fn main() -> vantrace::Result<()> {
    let budget = OracleBudget::default();
    for (p, r, m_max) in [(2, 2, 3), (3, 2, 2)] {
        let field = make_field(p, r)?;
        let curves = curve_family(&field);
        println!("q = {}: {} curves of genus {}", field.q(), curves.len(), curves[0].genus());
        for c in curves.iter().take(4) {
            let counts: Vec<u64> = (1..=m_max).map(|m| count_points(c, m, &budget)).collect::<Result<_, _>>()?;
            let naive: Vec<u64> = (1..=m_max).map(|m| count_points_naive(c, m, &budget)).collect::<Result<_, _>>()?;
            assert_eq!(counts, naive);
            println!("  {:<28} {:?}", c.summary().equation, counts);
        }
    }
    Ok(())
}
