//! Modular forms as exact q-series.
//!
//! Level one is built in: the Eisenstein series E2, E4, E6, the discriminant
//! Δ and bases of M_k from monomials E4^a·E6^b. Other groups are described by
//! a [`GammaTable`] holding dimensions and bases weight by weight.

mod gamma;
mod hecke;

use num::{BigInt, BigRational, Integer as _};

use crate::exactnum::{sigma, QSeries};

pub use gamma::{decompose, Decomposition, DecomposeConfig, Gamma, GammaTable};
pub use hecke::{coset_sum_b, hecke_t, hecke_t_cosets, slash_sum_b, slash_upper, t_prime};

/// A q-series tagged with its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularForm {
    pub weight: i64,
    pub series: QSeries,
}

impl ModularForm {
    pub fn new(weight: i64, series: QSeries) -> Self {
        ModularForm { weight, series }
    }

    /// The constant form 1 of weight 0 (exact).
    pub fn one() -> Self {
        ModularForm::new(0, QSeries::one())
    }
}

/// Normalized Eisenstein series E_k for k ∈ {2, 4, 6}, known below `q^prec`.
pub fn eisenstein(k: u32, prec: i64) -> QSeries {
    let (c, p) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => panic!("eisenstein: weight {k} is not one of 2, 4, 6"),
    };
    let mut coeffs = Vec::with_capacity(prec.max(0) as usize);
    for n in 0..prec {
        let v = if n == 0 { BigInt::from(1) } else { BigInt::from(c) * sigma(p, n as u64) };
        coeffs.push(BigRational::from_integer(v));
    }
    QSeries::from_rationals(coeffs)
}

pub fn e2(prec: i64) -> QSeries {
    eisenstein(2, prec)
}

pub fn e4(prec: i64) -> QSeries {
    eisenstein(4, prec)
}

pub fn e6(prec: i64) -> QSeries {
    eisenstein(6, prec)
}

/// Δ = (E4³ − E6²)/1728.
pub fn delta(prec: i64) -> QSeries {
    let e4 = e4(prec);
    let e6 = e6(prec);
    (&e4.pow(3) - &e6.pow(2)).scale_rational(&BigRational::new(1.into(), 1728.into()))
}

/// dim M_k(SL₂(Z)).
pub fn dim_sl2z(k: i64) -> usize {
    if k < 0 || k.is_odd() {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base
    } else {
        base + 1
    }
}

/// `(a, b)` with 4a + 6b = k, in order of increasing b.
pub(crate) fn e4_e6_exponents(k: i64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    if k < 0 || k.is_odd() {
        return out;
    }
    let mut b = 0;
    while 6 * b <= k {
        let rest = k - 6 * b;
        if rest % 4 == 0 {
            out.push(((rest / 4) as u32, b as u32));
        }
        b += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn delta_starts_with_ramanujan_tau() {
        let d = delta(8);
        let tau = [0, 1, -24, 252, -1472, 4830, -6048, -16744];
        for (n, t) in tau.iter().enumerate() {
            assert_eq!(d.rational_coeff(n as i64), Some(int(*t)));
        }
    }

    #[test]
    fn dimension_formula() {
        let expected = [1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(dim_sl2z(2 * i as i64), *e, "weight {}", 2 * i);
        }
        assert_eq!(dim_sl2z(-4), 0);
        assert_eq!(dim_sl2z(7), 0);
    }

    #[test]
    fn monomial_count_matches_dimension() {
        for k in 0..60 {
            assert_eq!(e4_e6_exponents(k).len(), dim_sl2z(k), "weight {k}");
        }
    }
}
