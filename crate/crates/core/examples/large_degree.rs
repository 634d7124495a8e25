//! Large n through the recurrence alone.

use std::time::Instant;

use vantrace::gf::make_field;
use vantrace::CountEngine;

fn main() -> vantrace::Result<()> {
    for (p, r) in [(2, 2), (3, 2), (5, 1)] {
        let field = make_field(p, r)?;
        let t0 = Instant::now();
        let engine = CountEngine::new(&field)?;
        let built = t0.elapsed();
        let t1 = Instant::now();
        let i = engine.i_count(500)?.to_string();
        println!(
            "q={:<2} engine {built:?}, I(500,0,0) in {:?}: {}...{} ({} digits)",
            field.q(),
            t1.elapsed(),
            &i[..12],
            &i[i.len() - 6..],
            i.len()
        );
    }
    Ok(())
}
