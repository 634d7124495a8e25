//! Exact counts of elements of `F_{q^n}` with vanishing trace and reciprocal
//! trace, and of monic irreducible polynomials over `F_q` whose `x^{n-1}` and
//! `x` coefficients vanish.
//!
//! The formula path counts points on a family of Artin-Schreier curves over a
//! few small extensions, turns those counts into L-polynomials, and extends
//! them to any degree with integer power-sum recurrences. Brute-force oracles
//! in [`oracle`] recount everything from the definitions at small scale.
//!
//! - [`gf`]: base fields, towers, Frobenius, trace and reciprocal trace
//! - [`curves`]: the Artin-Schreier curve families and their point counts
//! - [`lpoly`]: L-polynomials from point counts, power sums, predictions
//! - [`counting`]: `F_q(n,0,0)`, `I_q(n,0,0)`, Gauss and Carlitz counts
//! - [`oracle`]: exhaustive recounts and identity checks
//! - [`sequences`]: Legendre-symbol sequence families and their measures
//! - [`cli`]: the command-line front end

pub mod budget;
pub mod bigint_serde;
pub mod cli;
pub mod counting;
pub mod curves;
pub mod error;
pub mod gf;
pub mod lpoly;
pub mod oracle;
pub mod reference;
pub mod sequences;

pub use budget::OracleBudget;
pub use counting::{CountEngine, CountReport};
pub use curves::{CurveCase, CurveSpec};
pub use error::{Error, Result};
pub use gf::{make_field, make_tower, BaseElem, Element, FieldSpec, Poly, TowerSpec};
pub use lpoly::LPolynomial;
