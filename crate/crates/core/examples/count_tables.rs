//! Tables of F_q(n,0,0) and I_q(n,0,0) with brute-force recounts and the
//! published values alongside.

use vantrace::gf::make_field;
use vantrace::{CountEngine, OracleBudget};

fn main() -> vantrace::Result<()> {
    let oracle = OracleBudget::default().with_max_elements(1 << 20);
    for (p, r, lo, hi) in [(2, 2, 3, 10), (3, 2, 2, 8)] {
        let engine = CountEngine::new(&make_field(p, r)?)?;
        let report = engine.table(lo, hi, Some(&oracle))?;
        println!("q = {}", report.field.q);
        for row in &report.rows {
            println!("  n={:<3} F={:<10} I={:<8} {:?}", row.n, row.f_count, row.i_count, row.sources);
            for d in &row.discrepancies {
                println!("        {d}");
            }
        }
    }
    Ok(())
}
