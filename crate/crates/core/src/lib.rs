//! Exact computations around the chiral de Rham complex of the upper half
//! plane: q-series with symbolic powers of πi, level-one modular forms and
//! Hecke operators, Rankin–Cohen brackets, the free-field Fock space with its
//! vertex algebra structure, the adjoint sl₂ action on the mode envelope,
//! invariant liftings of modular forms, and character formulas.

pub mod brackets;
pub mod character;
pub mod envelope;
pub mod error;
pub mod exactnum;
pub mod fock;
pub mod lifting;
pub mod linalg;
pub mod modforms;
pub mod verify;

pub use error::{Error, Result};
