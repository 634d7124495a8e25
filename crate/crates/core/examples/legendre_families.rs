//! Legendre-symbol families from Omega_{p,5} and their measures.

use vantrace::sequences::{build_family, cross_correlation, distinct_family_count, family_complexity, omega_members};
use vantrace::OracleBudget;

fn main() -> vantrace::Result<()> {
    let budget = OracleBudget::default();
    for p in [5, 7, 11] {
        let members = omega_members(p, 5, &budget)?;
        let fam = build_family(&members[0], p)?;
        let phi: Vec<u64> = (1..=3).map(|l| cross_correlation(&fam, l, &budget)).collect::<Result<_, _>>()?;
        println!(
            "p={p}: {} members; first family has complexity {}, Phi_1..3 = {phi:?}",
            members.len(),
            family_complexity(&fam, &budget)?
        );
        // The bound needs point counts over F_{p^(p-1)}; keep p small.
        if p <= 7 {
            let b = distinct_family_count(p, 5, &budget)?;
            println!("      {} distinct families, bound {} (strict: {})", b.distinct, b.bound, b.strict);
        }
    }
    Ok(())
}
