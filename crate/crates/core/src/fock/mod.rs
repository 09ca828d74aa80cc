//! The free-field Fock space of the chiral de Rham complex of the upper half
//! plane (rank one), with coefficients that are functions of the coordinate b.
//!
//! Modes satisfy `[a_m, b_n] = δ_{m+n,0}` and `[φ_m, ψ_n]₊ = δ_{m+n,0}`; the
//! fields are `a(z) = Σ a_n z^{−n−1}`, `b(z) = Σ b_n z^{−n}`,
//! `φ(z) = Σ φ_n z^{−n}`, `ψ(z) = Σ ψ_n z^{−n−1}`. On a state `w ⊗ f(b)` the
//! zero mode a₀ acts as d/db on f and b₀ as multiplication by b.

mod coeff;
mod partition;
mod space;
mod special;
mod tuple;
mod vertex;

pub use coeff::{CoeffFn, ZeroModeCoeff};
pub use partition::{partitions, shifted_distinct, Flavor, Partition};
pub use space::{FockState, ModeSum};
pub use special::{
    g_state, j_state, n2_ope_table, omega, q_state, sl2_e, sl2_f, sl2_graded_action, sl2_h, sl2_ope_table, OpeCase,
    Sl2,
};
pub use tuple::{enumerate_fourtuples, Action, Field, FourTuple, Mode};
pub use vertex::{binom, commutator_formula, mode_commutator, nth_product, translation};
