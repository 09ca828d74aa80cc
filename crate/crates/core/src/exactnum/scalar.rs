//! Exact scalars in Q[Π, Π⁻¹], where Π stands for πi.
//!
//! Every constant produced by τ-derivatives (d/dτ = 2πi·q d/dq) is a
//! rational multiple of a power of πi, so a scalar is stored as a finite map
//! from Π-degree to a nonzero rational coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::monomial(0, r)
    }

    /// `c·Π^deg`.
    pub fn monomial(deg: i32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(deg, c);
        }
        Scalar { terms }
    }

    /// Π = πi.
    pub fn pi() -> Self {
        Scalar::monomial(1, BigRational::one())
    }

    pub fn pi_pow(deg: i32) -> Self {
        Scalar::monomial(deg, BigRational::one())
    }

    /// (2Π)^n = (2πi)^n, for any integer n.
    pub fn two_pi_i_pow(n: i32) -> Self {
        let two = int(2);
        let c = if n >= 0 {
            num::pow(two, n as usize)
        } else {
            num::pow(two, (-n) as usize).recip()
        };
        Scalar::monomial(n, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, deg: i32) -> BigRational {
        self.terms.get(&deg).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The single Π-degree of a nonzero monomial scalar.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        if self.terms.len() == 1 {
            self.min_degree()
        } else {
            None
        }
    }

    /// The rational value when the scalar has Π-degree 0 only.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Complex conjugation: Π̄ = −Π.
    pub fn conj(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(d, c)| (*d, if d % 2 != 0 { -c.clone() } else { c.clone() }))
            .collect();
        Scalar { terms }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        let terms = self.terms.iter().map(|(d, c)| (*d, c * r)).collect();
        Scalar { terms }
    }

    /// Multiply by Π^k.
    pub fn shift(&self, k: i32) -> Self {
        let terms = self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect();
        Scalar { terms }
    }

    /// Inverse of a nonzero monomial scalar.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.homogeneous_degree()?;
        Some(Scalar::monomial(-d, self.terms[&d].recip()))
    }

    fn add_term(&mut self, deg: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(deg).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&deg);
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (d, c) in &rhs.terms {
            self.add_term(*d, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (d, c) in &rhs.terms {
            self.add_term(*d, &-c);
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                out.add_term(d1 + d2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self.terms.iter().map(|(d, c)| (*d, -c)).collect();
        Scalar { terms }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match *d {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*pi*i")?,
                _ => write!(f, "{a}*(pi*i)^{d}")?,
            }
            first = false;
        }
        Ok(())
    }
}
