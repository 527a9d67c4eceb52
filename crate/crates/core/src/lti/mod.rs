//! Linear time-invariant systems over `ℚ[s, s⁻¹]`: matrices and their Smith
//! form, cospans and behaviours, signal-flow terms and their execution.

mod cospan;
mod matrix;
mod operational;
mod sfg;

pub use cospan::{BehaviourRep, MatCospan, MatSpan};
pub use matrix::{PolyMatrix, Smith};
pub use operational::{Boundary, Machine, RegisterState, RunSpace, Step};
pub use sfg::{SfgGenerator, SfgTerm};
