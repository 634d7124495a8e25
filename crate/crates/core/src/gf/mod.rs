//! Finite field arithmetic: the prime field, `F_q = F_{p^r}`, and `F_{q^n}`
//! as a two-level tower over `F_q`.

pub mod field;
mod gf2;
pub mod poly;
pub mod prime;
pub mod tower;

pub use field::{make_field, make_field_with_modulus, BaseElem, FieldDescriptor, FieldSpec};
pub use poly::{is_irreducible, Poly};
pub use tower::{make_tower, Element, TowerSpec};
