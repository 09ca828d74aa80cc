//! Slash operators by upper-triangular matrices and Hecke operators.
//!
//! For g = [[a, b], [0, d]] with ad = n > 0 the weight-k slash is
//! `f|g = n^{k/2} d^{-k} f((aτ + b)/d)`. Translation by b/d multiplies q^x by
//! e^{2πi·x·b/d}, which is rational only when x·b/d ∈ ½Z, so general
//! translations are summed over b mod d instead, where the roots of unity
//! cancel.

use std::collections::BTreeMap;

use num::integer::{gcd, Roots};
use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::exactnum::{ceil_div, rat, sigma, QSeries, Scalar};

fn rational_pow(base: i64, exp: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    if exp >= 0 {
        num::pow(b, exp as usize)
    } else {
        num::pow(b.recip(), (-exp) as usize)
    }
}

/// n^{k/2} for integral results; odd k requires n to be a perfect square.
fn half_power(n: i64, k: i64) -> Result<BigRational> {
    if k % 2 == 0 {
        return Ok(rational_pow(n, k / 2));
    }
    let r = n.sqrt();
    if r * r != n {
        return Err(Error::IrrationalPower { det: n, k });
    }
    Ok(rational_pow(r, k))
}

/// `f|_k [[a, b], [0, d]]`.
pub fn slash_upper(f: &QSeries, k: i64, a: i64, b: i64, d: i64) -> Result<QSeries> {
    assert!(a > 0 && d > 0, "slash_upper needs a, d > 0");
    let factor = &half_power(a * d, k)? * &rational_pow(d, -k);
    let m = f.denom();
    let mut coeffs = BTreeMap::new();
    for (e, c) in f.terms() {
        // Phase e·b / (M·d) modulo 1.
        let phase = BigRational::new(BigInt::from(e * b), BigInt::from(m * d));
        let frac = &phase - phase.floor();
        let sign = if frac == rat(0, 1) {
            1
        } else if frac == rat(1, 2) {
            -1
        } else {
            return Err(Error::Cyclotomic(format!("{b}/{d}")));
        };
        coeffs.insert(e * a, c.scale(&(&factor * BigRational::from_integer(sign.into()))));
    }
    Ok(QSeries::from_parts(m * d, coeffs, f.order().map(|o| o * a)))
}

/// `Σ_{b mod d} f((aτ + b)/d)`: keeps exponents divisible by d, multiplied
/// by d, and rescales q^m to q^{am/d}.
pub fn coset_sum_b(f: &QSeries, a: i64, d: i64) -> Result<QSeries> {
    assert!(a > 0 && d > 0, "coset_sum_b needs a, d > 0");
    if !f.has_integral_exponents() {
        return Err(Error::NonIntegralExponents);
    }
    let dd = Scalar::from_int(d);
    let coeffs = f
        .terms()
        .filter(|(e, _)| e % d == 0)
        .map(|(e, c)| (a * (e / d), c * &dd))
        .collect();
    let order = f.order().map(|p| a * ceil_div(p, d));
    Ok(QSeries::from_parts(1, coeffs, order))
}

/// `Σ_{b mod d} f|_k [[a, b], [0, d]]`.
pub fn slash_sum_b(f: &QSeries, k: i64, a: i64, d: i64) -> Result<QSeries> {
    let factor = &half_power(a * d, k)? * &rational_pow(d, -k);
    Ok(coset_sum_b(f, a, d)?.scale_rational(&factor))
}

/// T_k(n) by the coefficient formula
/// `a_m ↦ Σ_{d | gcd(m, n)} d^{k-1} a(mn/d²)`.
pub fn hecke_t(k: i64, n: i64, f: &QSeries) -> Result<QSeries> {
    assert!(n > 0, "hecke_t needs n > 0");
    if !f.has_integral_exponents() {
        return Err(Error::NonIntegralExponents);
    }
    let prec_out = f.prec_floor().map(|p| ceil_div(p, n));
    let top = match prec_out {
        Some(p) => p,
        None => f.terms().map(|(e, _)| e).max().map_or(0, |e| e + 1),
    };
    let start = f.terms().map(|(e, _)| e).min().unwrap_or(0).min(0);
    let mut coeffs = BTreeMap::new();
    for m in start..top {
        let mut c = Scalar::zero();
        if m == 0 {
            // d ranges over all divisors of n.
            for d in (1..=n).filter(|d| n % d == 0) {
                c += &f.coeff(0).scale(&rational_pow(d, k - 1));
            }
        } else {
            let g = gcd(m, n);
            for d in (1..=g).filter(|d| g % d == 0) {
                let idx = m * n / (d * d);
                c += &f.coeff(idx).scale(&rational_pow(d, k - 1));
            }
        }
        coeffs.insert(m, c);
    }
    Ok(QSeries::from_parts(1, coeffs, prec_out))
}

/// T_k(n) as `n^{k/2-1} Σ_{ad=n} Σ_{b mod d} f|_k [[a, b], [0, d]]`.
pub fn hecke_t_cosets(k: i64, n: i64, f: &QSeries) -> Result<QSeries> {
    let mut out: Option<QSeries> = None;
    for d in (1..=n).filter(|d| n % d == 0) {
        let a = n / d;
        // n^{k/2-1}·n^{k/2}·d^{-k} = n^{k-1} d^{-k}, rational for every k.
        let factor = &rational_pow(n, k - 1) * &rational_pow(d, -k);
        let term = coset_sum_b(f, a, d)?.scale_rational(&factor);
        out = Some(match out {
            Some(acc) => &acc + &term,
            None => term,
        });
    }
    Ok(out.expect("n has a divisor"))
}

/// `(1/σ(n)) Σ_{ad=n} Σ_{b mod d} f|₂ [[a, b], [0, d]]`.
///
/// On E2 the non-modular correction terms cancel across the σ(n) cosets and
/// the average returns E2.
pub fn t_prime(n: i64, f: &QSeries) -> Result<QSeries> {
    let mut out = QSeries::zero();
    for d in (1..=n).filter(|d| n % d == 0) {
        out = &out + &slash_sum_b(f, 2, n / d, d)?;
    }
    let s = BigRational::from_integer(sigma(1, n as u64));
    Ok(out.scale_rational(&s.recip()))
}
