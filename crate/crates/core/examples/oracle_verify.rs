//! Runs every identity check for a few small fields.

use vantrace::gf::make_field;
use vantrace::oracle::verify_all;
use vantrace::OracleBudget;

fn main() -> vantrace::Result<()> {
    let budget = OracleBudget::default();
    for (p, r, n_max) in [(2, 1, 8), (2, 2, 5), (3, 2, 3), (5, 1, 3)] {
        let field = make_field(p, r)?;
        let report = verify_all(&field, n_max, &budget);
        let fails: Vec<_> = report.failures().collect();
        println!("q = {:<2} n <= {n_max}: {} checks, {} failed", field.q(), report.checks.len(), fails.len());
        for c in fails {
            println!("  {}", c.line());
        }
    }
    Ok(())
}
