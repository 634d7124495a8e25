//! The two degree-5 examples, step by step.

use num_bigint::BigInt;
use vantrace::gf::make_field;
use vantrace::CountEngine;

fn main() -> vantrace::Result<()> {
    let e4 = CountEngine::new(&make_field(2, 2)?)?;
    let s = e4.defect_sum(5)?;
    println!("q=4: sum over alpha of (S_alpha + 1) = {s}");
    println!("     F_4(5,0,0) = (4^5 + 3*({s})) / 16 = {}", e4.f_count(5)?);
    println!("     I_4(5,0,0) = (F_4(5,0,0) - F_4(1,0,0)) / 5 = {}", e4.i_count(5)?);

    let e9 = CountEngine::new(&make_field(3, 2)?)?;
    let s = e9.defect_sum(5)?;
    println!("q=9: sum over alpha, beta of S = {s}");
    let f = e9.f_count(5)?;
    println!("     F_9(5,0,0) = (9^5 + 64 + {s}) / 81 = {f}");
    assert_eq!(f, BigInt::from(801));
    println!("     I_9(5,0,0) = {}", e9.i_count(5)?);
    Ok(())
}
