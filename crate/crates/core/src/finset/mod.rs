//! Finite sets and functions, cospans composed by pushout, and corelations
//! (equivalence relations on `X + Y`) with their hypergraph generators.

mod corel;
mod cospan;
mod function;
mod union_find;

pub use corel::{Corelation, Generator};
pub use cospan::{FinCospan, Pushout};
pub use function::FinFunction;
pub use union_find::UnionFind;
