//! F_2 < F_4 < F_{4^3}: moduli, Frobenius, trace and reciprocal trace.

use vantrace::gf::{make_field, make_tower};

fn main() -> vantrace::Result<()> {
    let f4 = make_field(2, 2)?;
    println!("F_4 modulus (low to high): {:?}", f4.modulus());
    let t = make_tower(&f4, 3)?;
    println!("F_64 over F_4 modulus: {:?}", t.ext_modulus().codes());

    let a = t.generator_x();
    let inv = t.invert(&a)?;
    println!("x^-1 = {:?}", t.to_residues(&inv));
    println!("Tr(x) = {}, rTr(x) = {}", t.trace_to_base(&a).code(), t.rtrace(&a).code());
    println!("absolute trace of x: {}", t.absolute_trace(&a).code());

    let mut zero_both = 0;
    for e in t.enumerate_elements(&Default::default())? {
        if t.trace_to_base(&e).is_zero() && t.rtrace(&e).is_zero() {
            zero_both += 1;
        }
    }
    println!("elements with Tr = rTr = 0: {zero_both}");
    Ok(())
}
