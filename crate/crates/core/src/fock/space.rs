//! Finite sums of monomials with coefficients in a zero-mode module.
//!
//! With [`CoeffFn`] coefficients this is the Fock space of states; with
//! polynomials in a₀, b₀ it is the quotient of the mode envelope by the left
//! ideal of annihilators. Both carry the same action of the nonzero modes.

use std::collections::BTreeMap;
use std::fmt;

use super::coeff::{CoeffFn, ZeroModeCoeff};
use super::tuple::{Action, Field, FourTuple, Mode};
use crate::exactnum::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ModeSum<C> {
    terms: BTreeMap<FourTuple, C>,
}

pub type FockState = ModeSum<CoeffFn>;

impl<C: ZeroModeCoeff> Default for ModeSum<C> {
    fn default() -> Self {
        ModeSum { terms: BTreeMap::new() }
    }
}

impl<C: ZeroModeCoeff> ModeSum<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(t: FourTuple, c: C) -> Self {
        let mut s = Self::zero();
        s.add_term(t, &c);
        s
    }

    pub fn add_term(&mut self, t: FourTuple, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(cur) => {
                cur.add_assign(c);
                if cur.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FourTuple, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &FourTuple) -> Option<&C> {
        self.terms.get(t)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), &c.scale(s));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Scalar::from_int(n))
    }

    /// Apply a function to every coefficient.
    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), &f(c));
        }
        out
    }

    /// Keep the terms whose monomial satisfies the predicate.
    pub fn filter<F: Fn(&FourTuple) -> bool>(&self, keep: F) -> Self {
        ModeSum { terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect() }
    }

    /// Largest monomial weight (0 for the zero sum).
    pub fn max_weight(&self) -> i64 {
        self.terms.keys().map(FourTuple::weight).max().unwrap_or(0)
    }

    pub fn min_part(&self) -> Option<i64> {
        self.terms.keys().map(FourTuple::part).min()
    }

    pub fn parts(&self) -> Vec<i64> {
        let mut p: Vec<i64> = self.terms.keys().map(FourTuple::part).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// Act with a single mode from the left.
    pub fn apply_mode(&self, m: Mode) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            match t.act(m) {
                Action::Zero => {}
                Action::Term(k, u) => out.add_term(u, &c.scale(&Scalar::from_int(k))),
                Action::ZeroMode => {
                    let c2 = if m.field == Field::A { c.left_a0() } else { c.left_b0() };
                    out.add_term(t.clone(), &c2);
                }
            }
        }
        out
    }

    /// Act with a word of modes; the last mode acts first.
    pub fn apply_word(&self, word: &[Mode]) -> Self {
        word.iter().rev().fold(self.clone(), |acc, m| acc.apply_mode(*m))
    }
}

impl FockState {
    pub fn vacuum() -> Self {
        FockState::single(FourTuple::vacuum(), CoeffFn::one())
    }

    /// `f(b)·1`.
    pub fn function(f: CoeffFn) -> Self {
        FockState::single(FourTuple::vacuum(), f)
    }

    /// A monomial with a pure q-series coefficient.
    pub fn monomial(t: FourTuple, f: CoeffFn) -> Self {
        FockState::single(t, f)
    }

    /// Multiply every coefficient by a function of b.
    pub fn mul_function(&self, f: &CoeffFn) -> Self {
        self.map_coeffs(|c| c.mul(f))
    }

    pub fn truncate(&self, prec: i64) -> Self {
        self.map_coeffs(|c| c.truncate(prec))
    }

    /// Largest b-degree of any coefficient.
    pub fn b_degree(&self) -> u32 {
        self.terms().filter_map(|(_, c)| c.b_degree()).max().unwrap_or(0)
    }

    pub fn prec_floor(&self) -> Option<i64> {
        self.terms().filter_map(|(_, c)| c.prec_floor()).min()
    }

    /// `[{"tuple", "modes", "coeff": [[j, series], ...]}, ...]`, where the
    /// coefficient lists the q-series multiplying b^j.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(t, c)| {
                let coeff: Vec<serde_json::Value> = c.terms().map(|(j, g)| serde_json::json!([j, g])).collect();
                serde_json::json!({ "tuple": t.spec(), "modes": t.to_string(), "coeff": coeff })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

impl<C: ZeroModeCoeff + fmt::Display> fmt::Display for ModeSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in &self.terms {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{t} ⊗ {c}")?;
        }
        Ok(())
    }
}
