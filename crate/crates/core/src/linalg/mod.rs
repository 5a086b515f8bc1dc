//! Dense matrices and vectors over dual quaternions and dual complex numbers.

mod dc;
mod dense;
mod dq;

pub use dc::{DCMatrix, DCVector};
pub use dense::{CMatrix, Conj, EntryRepr, Magnitude, Matrix, RMatrix};
pub use dq::{DQMatrix, DQVector, Side};
