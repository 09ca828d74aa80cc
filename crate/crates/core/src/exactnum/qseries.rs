//! Truncated Laurent–Puiseux series in q with [`Scalar`] coefficients.
//!
//! Exponents are stored as integers `e` meaning `q^{e/M}` where `M` is the
//! series denominator. The known range is `e < order` (exclusive, in the same
//! units); an exact series has no truncation at all. Every constructor
//! normalizes `M` to the smallest denominator that represents the support, so
//! series with integral exponents always have `M = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::{gcd, lcm};
use num::{BigInt, BigRational, One, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    denom: i64,
    coeffs: BTreeMap<i64, Scalar>,
    order: Option<i64>,
}

impl QSeries {
    /// Builds a series from raw parts, dropping zeros and unknown terms.
    pub fn from_parts(denom: i64, coeffs: BTreeMap<i64, Scalar>, order: Option<i64>) -> Self {
        assert!(denom > 0, "series denominator must be positive");
        let coeffs = coeffs
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && order.is_none_or(|o| *e < o))
            .collect();
        let mut s = QSeries { denom, coeffs, order };
        s.normalize();
        s
    }

    /// Series with integral exponents from `(exponent, coefficient)` pairs,
    /// known below `q^prec` (or exact when `prec` is `None`).
    pub fn from_terms<I>(terms: I, prec: Option<i64>) -> Self
    where
        I: IntoIterator<Item = (i64, Scalar)>,
    {
        let mut map: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += &c;
        }
        QSeries::from_parts(1, map, prec)
    }

    /// Series `Σ c_n q^n` for `n < coeffs.len()`, known to `q^{coeffs.len()}`.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        let prec = coeffs.len() as i64;
        QSeries::from_terms(
            coeffs.into_iter().enumerate().map(|(n, c)| (n as i64, Scalar::from_rational(c))),
            Some(prec),
        )
    }

    pub fn zero() -> Self {
        QSeries { denom: 1, coeffs: BTreeMap::new(), order: None }
    }

    pub fn zero_to(prec: i64) -> Self {
        QSeries { denom: 1, coeffs: BTreeMap::new(), order: Some(prec) }
    }

    pub fn one() -> Self {
        QSeries::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        QSeries::from_terms([(0, c)], None)
    }

    /// The exact monomial `c·q^{num/den}`.
    pub fn monomial(num: i64, den: i64, c: Scalar) -> Self {
        let mut map = BTreeMap::new();
        map.insert(num, c);
        QSeries::from_parts(den, map, None)
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Exclusive bound of the known range, in units of `q^{1/denom}`.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    /// Known range as a power of q (`None` for an exact series).
    pub fn prec(&self) -> Option<BigRational> {
        self.order.map(|o| BigRational::new(BigInt::from(o), BigInt::from(self.denom)))
    }

    /// Largest integer `P` such that every coefficient below `q^P` is known.
    pub fn prec_floor(&self) -> Option<i64> {
        self.order.map(|o| ceil_div(o, self.denom))
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Nonzero terms as `(e, c)` meaning `c·q^{e/denom}`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^{num/den}`.
    pub fn coeff_at(&self, num: i64, den: i64) -> Scalar {
        let l = lcm(den, self.denom);
        if (num * (l / den)) % (l / self.denom) != 0 {
            return Scalar::zero();
        }
        let e = num * (l / den) / (l / self.denom);
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Scalar {
        self.coeff_at(n, 1)
    }

    /// Whether the coefficient of `q^n` lies in the known range.
    pub fn is_known(&self, n: i64) -> bool {
        self.order.is_none_or(|o| n * self.denom < o)
    }

    /// Rational coefficient of `q^n`; `None` if it carries a power of Π.
    pub fn rational_coeff(&self, n: i64) -> Option<BigRational> {
        self.coeff(n).as_rational()
    }

    /// Smallest exponent present, as `e` in units of `q^{1/denom}`.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// All known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.denom == 1
    }

    /// Π-degrees occurring in any coefficient.
    pub fn pi_degrees(&self) -> Vec<i32> {
        let mut out: Vec<i32> =
            self.coeffs.values().flat_map(|c| c.terms().map(|(d, _)| d)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every coefficient is rational (Π-degree 0).
    pub fn is_rational(&self) -> bool {
        self.coeffs.values().all(|c| c.is_rational())
    }

    /// The Π^deg component as a series with rational coefficients.
    pub fn pi_component(&self, deg: i32) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e, Scalar::from_rational(c.coeff(deg))))
            .collect();
        QSeries::from_parts(self.denom, coeffs, self.order)
    }

    /// Multiply every coefficient by a power of Π.
    pub fn shift_pi(&self, k: i32) -> QSeries {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c.shift(k))).collect();
        QSeries { denom: self.denom, coeffs, order: self.order }
    }

    pub fn conj(&self) -> QSeries {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c.conj())).collect();
        QSeries { denom: self.denom, coeffs, order: self.order }
    }

    /// Forget everything at or above `q^prec`.
    pub fn truncate(&self, prec: i64) -> QSeries {
        let bound = prec * self.denom;
        let order = Some(self.order.map_or(bound, |o| o.min(bound)));
        QSeries::from_parts(self.denom, self.coeffs.clone(), order)
    }

    pub fn scale(&self, s: &Scalar) -> QSeries {
        if s.is_zero() {
            return QSeries { denom: 1, coeffs: BTreeMap::new(), order: self.order_in_units(1) };
        }
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect();
        QSeries::from_parts(self.denom, coeffs, self.order)
    }

    pub fn scale_rational(&self, r: &BigRational) -> QSeries {
        self.scale(&Scalar::from_rational(r.clone()))
    }

    /// θ = q·d/dq.
    pub fn theta(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let factor = BigRational::new(BigInt::from(*e), BigInt::from(self.denom));
                (*e, c.scale(&factor))
            })
            .collect();
        QSeries::from_parts(self.denom, coeffs, self.order)
    }

    pub fn theta_pow(&self, n: u32) -> QSeries {
        (0..n).fold(self.clone(), |acc, _| acc.theta())
    }

    /// d/dτ = 2Π·θ.
    pub fn tau_derivative(&self) -> QSeries {
        self.theta().scale(&Scalar::two_pi_i_pow(1))
    }

    /// n-th τ-derivative `(2Π)^n θ^n`.
    pub fn tau_derivative_pow(&self, n: u32) -> QSeries {
        self.theta_pow(n).scale(&Scalar::two_pi_i_pow(n as i32))
    }

    /// Substitute `q ↦ q^{p/d}`, i.e. τ ↦ (p/d)·τ.
    pub fn rebase(&self, p: i64, d: i64) -> QSeries {
        assert!(p > 0 && d > 0, "rebase factor must be positive");
        let coeffs = self.coeffs.iter().map(|(e, c)| (e * p, c.clone())).collect();
        QSeries::from_parts(self.denom * d, coeffs, self.order.map(|o| o * p))
    }

    /// Checked binary arithmetic: errors when the result would carry no
    /// known coefficient at or below the constant term.
    pub fn checked_add(&self, other: &QSeries) -> Result<QSeries> {
        check_underflow(self + other)
    }

    pub fn checked_sub(&self, other: &QSeries) -> Result<QSeries> {
        check_underflow(self - other)
    }

    pub fn checked_mul(&self, other: &QSeries) -> Result<QSeries> {
        check_underflow(self * other)
    }

    pub fn pow(&self, n: u32) -> QSeries {
        let mut acc = QSeries::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Difference vanishes on the common known range.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        (self - other).is_zero()
    }

    /// First exponent (in q units, as a rational) where the two series differ.
    pub fn first_difference(&self, other: &QSeries) -> Option<BigRational> {
        let d = self - other;
        d.valuation().map(|e| BigRational::new(BigInt::from(e), BigInt::from(d.denom)))
    }

    fn order_in_units(&self, target_denom: i64) -> Option<i64> {
        self.order.map(|o| {
            // Known e/M < o/M  <=>  e' / T < o/M, e' integer.
            ceil_div(o * target_denom, self.denom)
        })
    }

    fn with_denom(&self, target: i64) -> (BTreeMap<i64, Scalar>, Option<i64>) {
        debug_assert_eq!(target % self.denom, 0);
        let f = target / self.denom;
        let coeffs = self.coeffs.iter().map(|(e, c)| (e * f, c.clone())).collect();
        (coeffs, self.order.map(|o| o * f))
    }

    fn normalize(&mut self) {
        if self.denom == 1 {
            return;
        }
        let mut g = self.denom;
        for e in self.coeffs.keys() {
            g = gcd(g, *e);
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            self.coeffs = std::mem::take(&mut self.coeffs).into_iter().map(|(e, c)| (e / g, c)).collect();
            self.order = self.order.map(|o| ceil_div(o, g));
            self.denom /= g;
        }
    }
}

fn check_underflow(s: QSeries) -> Result<QSeries> {
    match s.order {
        Some(o) if o <= 0 => Err(Error::PrecisionUnderflow),
        _ => Ok(s),
    }
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let l = lcm(self.denom, rhs.denom);
        let (mut a, oa) = self.with_denom(l);
        let (b, ob) = rhs.with_denom(l);
        for (e, c) in b {
            *a.entry(e).or_default() += &c;
        }
        QSeries::from_parts(l, a, min_order(oa, ob))
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c)).collect();
        QSeries { denom: self.denom, coeffs, order: self.order }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let l = lcm(self.denom, rhs.denom);
        let (a, oa) = self.with_denom(l);
        let (b, ob) = rhs.with_denom(l);
        if (a.is_empty() && oa.is_none()) || (b.is_empty() && ob.is_none()) {
            return QSeries::zero();
        }
        // A truncated factor leaves terms unknown from its order plus the
        // other factor's valuation upward.
        let val = |m: &BTreeMap<i64, Scalar>, o: Option<i64>| m.keys().next().copied().or(o).unwrap();
        let order = min_order(oa.map(|o| o + val(&b, ob)), ob.map(|o| o + val(&a, oa)));
        let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (e1, c1) in &a {
            if order.is_some_and(|o| e1 + b.keys().next().copied().unwrap_or(0) >= o) {
                break;
            }
            for (e2, c2) in &b {
                let e = e1 + e2;
                if order.is_some_and(|o| e >= o) {
                    break;
                }
                *out.entry(e).or_default() += &(c1 * c2);
            }
        }
        QSeries::from_parts(l, out, order)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let ex = BigRational::new(BigInt::from(*e), BigInt::from(self.denom));
            if ex.is_zero() {
                write!(f, "({c})")?;
            } else if ex.is_one() {
                write!(f, "({c})*q")?;
            } else {
                write!(f, "({c})*q^{ex}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        match self.prec() {
            Some(p) => write!(f, " + O(q^{p})"),
            None => Ok(()),
        }
    }
}

/// ⌈a/b⌉ for b > 0.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Divisor sum σ_k(n).
pub fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += num::pow(BigInt::from(d), k as usize);
            let e = n / d;
            if e != d {
                s += num::pow(BigInt::from(e), k as usize);
            }
        }
        d += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::{int, rat};

    fn geometric(prec: i64) -> QSeries {
        QSeries::from_rationals((0..prec).map(|_| int(1)).collect())
    }

    #[test]
    fn product_precision_is_minimum() {
        let a = geometric(10);
        let b = geometric(6);
        let c = &a * &b;
        assert_eq!(c.prec_floor(), Some(6));
        assert_eq!(c.rational_coeff(5), Some(int(6)));
    }

    #[test]
    fn theta_scales_by_exponent() {
        let a = QSeries::monomial(3, 2, Scalar::one()).truncate(5);
        assert_eq!(a.theta().coeff_at(3, 2), Scalar::from_ratio(3, 2));
    }

    #[test]
    fn rebase_half_then_double_round_trips() {
        let a = geometric(8);
        let b = a.rebase(1, 2);
        assert_eq!(b.denom(), 2);
        assert_eq!(b.coeff_at(3, 2), Scalar::one());
        let c = b.rebase(2, 1);
        assert_eq!(c, a);
    }

    #[test]
    fn denominator_normalizes_to_one() {
        let a = QSeries::monomial(4, 2, Scalar::one());
        assert_eq!(a.denom(), 1);
        assert_eq!(a.coeff(2), Scalar::one());
    }

    #[test]
    fn exact_times_truncated() {
        let one = QSeries::one();
        let a = geometric(4);
        assert_eq!(&one * &a, a);
        let q = QSeries::monomial(1, 1, Scalar::one());
        assert_eq!((&q * &a).prec_floor(), Some(5));
    }

    #[test]
    fn underflow_is_reported() {
        let a = QSeries::monomial(-3, 1, Scalar::one());
        let b = geometric(2);
        assert!(matches!(a.checked_mul(&b), Err(Error::PrecisionUnderflow)));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1, 12), BigInt::from(28));
        assert_eq!(sigma(3, 2), BigInt::from(9));
        let _ = rat(1, 2);
    }
}
