//! Coefficient functions `Σ_j b^j ⊗ g_j(q)` attached to Fock monomials.
//!
//! Here b is the coordinate τ on the upper half plane, so d/db acts on the
//! q-series part as 2Π·θ.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;

use crate::exactnum::{QSeries, Scalar};

/// Left module over the Weyl algebra generated by the zero modes a₀, b₀.
pub trait ZeroModeCoeff: Clone + fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn scale(&self, s: &Scalar) -> Self;
    /// a₀ acting from the left.
    fn left_a0(&self) -> Self;
    /// b₀ acting from the left.
    fn left_b0(&self) -> Self;
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct CoeffFn {
    terms: BTreeMap<u32, QSeries>,
}

impl CoeffFn {
    pub fn zero() -> Self {
        CoeffFn::default()
    }

    pub fn one() -> Self {
        CoeffFn::series(QSeries::one())
    }

    pub fn constant(c: Scalar) -> Self {
        CoeffFn::series(QSeries::constant(c))
    }

    /// A pure q-series (b-degree 0).
    pub fn series(g: QSeries) -> Self {
        CoeffFn::from_terms([(0, g)])
    }

    /// b^j.
    pub fn b_pow(j: u32) -> Self {
        CoeffFn::from_terms([(j, QSeries::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, QSeries)>>(terms: I) -> Self {
        let mut out = CoeffFn::zero();
        for (j, g) in terms {
            out.add_series(j, &g);
        }
        out
    }

    fn add_series(&mut self, j: u32, g: &QSeries) {
        let next = match self.terms.get(&j) {
            Some(cur) => cur + g,
            None => g.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&j);
        } else {
            self.terms.insert(j, next);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &QSeries)> {
        self.terms.iter().map(|(j, g)| (*j, g))
    }

    pub fn b_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// The q-series when the b-degree is 0.
    pub fn as_series(&self) -> Option<QSeries> {
        match self.b_degree() {
            None => Some(QSeries::zero()),
            Some(0) => Some(self.terms[&0].clone()),
            _ => None,
        }
    }

    /// b^j component.
    pub fn component(&self, j: u32) -> QSeries {
        self.terms.get(&j).cloned().unwrap_or_else(QSeries::zero)
    }

    pub fn mul(&self, other: &CoeffFn) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                out.add_series(i + j, &(f * g));
            }
        }
        out
    }

    pub fn mul_series(&self, g: &QSeries) -> CoeffFn {
        CoeffFn::from_terms(self.terms.iter().map(|(j, f)| (*j, f * g)))
    }

    /// d/db(b^j g) = j b^{j−1} g + b^j (2Π θ g).
    pub fn derivative(&self) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (j, g) in &self.terms {
            if *j > 0 {
                out.add_series(j - 1, &g.scale(&Scalar::from_int(*j as i64)));
            }
            out.add_series(*j, &g.tau_derivative());
        }
        out
    }

    pub fn derivative_pow(&self, n: u32) -> CoeffFn {
        (0..n).fold(self.clone(), |acc, _| acc.derivative())
    }

    pub fn mul_b(&self) -> CoeffFn {
        CoeffFn { terms: self.terms.iter().map(|(j, g)| (j + 1, g.clone())).collect() }
    }

    pub fn scale_rational(&self, r: &BigRational) -> CoeffFn {
        self.scale(&Scalar::from_rational(r.clone()))
    }

    pub fn truncate(&self, prec: i64) -> CoeffFn {
        CoeffFn::from_terms(self.terms.iter().map(|(j, g)| (*j, g.truncate(prec))))
    }

    pub fn conj(&self) -> CoeffFn {
        CoeffFn { terms: self.terms.iter().map(|(j, g)| (*j, g.conj())).collect() }
    }

    /// Smallest known precision among the components.
    pub fn prec_floor(&self) -> Option<i64> {
        self.terms.values().filter_map(QSeries::prec_floor).min()
    }
}

impl ZeroModeCoeff for CoeffFn {
    fn zero() -> Self {
        CoeffFn::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign(&mut self, other: &Self) {
        for (j, g) in &other.terms {
            self.add_series(*j, g);
        }
    }

    fn scale(&self, s: &Scalar) -> Self {
        CoeffFn::from_terms(self.terms.iter().map(|(j, g)| (*j, g.scale(s))))
    }

    fn left_a0(&self) -> Self {
        self.derivative()
    }

    fn left_b0(&self) -> Self {
        self.mul_b()
    }
}

impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, g) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "[{g}]")?,
                1 => write!(f, "b*[{g}]")?,
                _ => write!(f, "b^{j}*[{g}]")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn derivative_of_b_times_q() {
        let q = QSeries::monomial(1, 1, Scalar::one());
        let f = CoeffFn::from_terms([(1, q.clone())]);
        let d = f.derivative();
        assert_eq!(d.component(0), q);
        assert_eq!(d.component(1), q.scale(&Scalar::two_pi_i_pow(1)));
    }

    #[test]
    fn leibniz_rule() {
        let q = QSeries::monomial(2, 1, Scalar::from_int(3));
        let f = CoeffFn::from_terms([(2, q.clone()), (0, QSeries::one())]);
        let g = CoeffFn::from_terms([(1, q.clone())]).scale_rational(&int(5));
        let lhs = f.mul(&g).derivative();
        let mut rhs = f.derivative().mul(&g);
        rhs.add_assign(&f.mul(&g.derivative()));
        assert_eq!(lhs, rhs);
    }
}
