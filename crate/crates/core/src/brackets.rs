//! Rankin–Cohen brackets, the modified brackets involving the constant 1,
//! and Cohen–Kuznetsov series.
//!
//! Derivatives are τ-derivatives, `f^{(r)} = (2Π)^r θ^r f`, and the brackets
//! carry an explicit `(2Π)^{-n}` so every Π cancels symbolically. The role of
//! the r-th derivative of the constant 1 is played by `E^{(r-1)}` where
//! `E = (Π/6)·E2` and `E^{(-1)} = 1`.

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{QSeries, Scalar};
use crate::linalg::{kernel, rank, Matrix};
use crate::modforms::{decompose, e2, DecomposeConfig, Gamma, ModularForm};

/// Factorial with the convention (−1)! = 1.
pub fn ext_factorial(n: i64) -> BigRational {
    assert!(n >= -1, "factorial of {n}");
    BigRational::from_integer((1..=n.max(0)).map(BigInt::from).product())
}

/// Binomial coefficient extended by (−1)! = 1, so that C(n−1, n) = 1/n and
/// C(−1, 0) = 1. Other out-of-range entries vanish.
pub fn ext_binom(a: i64, b: i64) -> BigRational {
    if b < 0 || a < -1 || a - b < -1 {
        return BigRational::zero();
    }
    &ext_factorial(a) / (&ext_factorial(b) * &ext_factorial(a - b))
}

/// E = (Π/6)·E2.
pub fn e_series(prec: i64) -> QSeries {
    e2(prec).scale(&Scalar::monomial(1, BigRational::new(1.into(), 6.into())))
}

/// E^{(j)} for j ≥ −1, with E^{(−1)} = 1.
pub fn e_derivative(j: i64, prec: i64) -> QSeries {
    if j < 0 {
        QSeries::one()
    } else {
        e_series(prec).tau_derivative_pow(j as u32)
    }
}

/// An argument of a bracket: a modular form or the constant 1.
#[derive(Clone, Debug, PartialEq)]
pub enum Operand {
    One,
    Form(ModularForm),
}

impl Operand {
    pub fn weight(&self) -> i64 {
        match self {
            Operand::One => 0,
            Operand::Form(f) => f.weight,
        }
    }

    fn prec(&self) -> Option<i64> {
        match self {
            Operand::One => None,
            Operand::Form(f) => f.series.prec_floor(),
        }
    }

    /// r-th derivative; for the constant 1 this is E^{(r−1)}.
    pub fn derivative(&self, r: i64, prec: i64) -> QSeries {
        match self {
            Operand::One => e_derivative(r - 1, prec),
            Operand::Form(f) => f.series.tau_derivative_pow(r as u32),
        }
    }
}

fn require_rational(s: QSeries) -> Result<QSeries> {
    match s.pi_degrees().into_iter().find(|d| *d != 0) {
        Some(d) => Err(Error::NonRationalCoefficient(d)),
        None => Ok(s),
    }
}

fn working_prec(a: &Operand, b: &Operand, prec: i64) -> i64 {
    [a.prec(), b.prec(), Some(prec)].into_iter().flatten().min().unwrap()
}

/// `(2Π)^{-n} Σ_{r+s=n} (−1)^r C(n+k−1, s) C(n+l−1, r) f^{(r)} h^{(s)}` with
/// the extended binomials. For two forms this is the Rankin–Cohen bracket;
/// with the constant 1 on either side it is the modified bracket.
pub fn bracket(f: &Operand, h: &Operand, n: i64, prec: i64) -> Result<ModularForm> {
    assert!(n >= 0, "bracket index must be nonnegative");
    let (k, l) = (f.weight(), h.weight());
    let p = working_prec(f, h, prec);
    let mut acc = QSeries::zero_to(p);
    for r in 0..=n {
        let s = n - r;
        let c = &ext_binom(n + k - 1, s) * &ext_binom(n + l - 1, r);
        if c.is_zero() {
            continue;
        }
        let sign = if r % 2 == 0 { c } else { -c };
        let term = &f.derivative(r, p) * &h.derivative(s, p);
        acc = &acc + &term.scale_rational(&sign);
    }
    let out = acc.scale(&Scalar::two_pi_i_pow(-n as i32)).truncate(p);
    Ok(ModularForm::new(k + l + 2 * n, require_rational(out)?))
}

pub fn rankin_cohen(f: &ModularForm, h: &ModularForm, n: i64) -> Result<ModularForm> {
    let p = f.series.prec_floor().or(h.series.prec_floor()).unwrap_or(0);
    bracket(&Operand::Form(f.clone()), &Operand::Form(h.clone()), n, p)
}

/// Series in a formal variable X, stored in the rescaled variable 2Π·X so
/// that every coefficient of a level-one Cohen–Kuznetsov series is rational:
/// entry n holds the true X^n coefficient times (2Π)^{−n}.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiLikeSeries {
    pub weight: i64,
    pub xcoeffs: Vec<QSeries>,
}

impl JacobiLikeSeries {
    /// Substitute X ↦ −X.
    pub fn negate_x(&self) -> Self {
        let xcoeffs = self
            .xcoeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { c.clone() } else { -c })
            .collect();
        JacobiLikeSeries { weight: self.weight, xcoeffs }
    }

    /// Weight of the X^n coefficient.
    pub fn coeff_weight(&self, n: usize) -> i64 {
        self.weight + 2 * n as i64
    }
}

/// `Σ_n f^{(n)} / (n!·(n+k−1)!) X^n`.
pub fn ck_lift(f: &ModularForm, xmax: usize) -> Result<JacobiLikeSeries> {
    let k = f.weight;
    let mut xcoeffs = Vec::with_capacity(xmax + 1);
    for n in 0..=xmax as i64 {
        let denom = &ext_factorial(n) * &ext_factorial(n + k - 1);
        let c = f.series.tau_derivative_pow(n as u32).scale_rational(&denom.recip());
        xcoeffs.push(require_rational(c.scale(&Scalar::two_pi_i_pow(-n as i32)))?);
    }
    Ok(JacobiLikeSeries { weight: k, xcoeffs })
}

/// `1 + Σ_{n≥1} E^{(n−1)} / (n!·(n−1)!) X^n`.
pub fn ck_lift_const(xmax: usize, prec: i64) -> Result<JacobiLikeSeries> {
    let mut xcoeffs = Vec::with_capacity(xmax + 1);
    for n in 0..=xmax as i64 {
        let c = if n == 0 {
            QSeries::one().truncate(prec)
        } else {
            let denom = &ext_factorial(n) * &ext_factorial(n - 1);
            e_derivative(n - 1, prec).scale_rational(&denom.recip())
        };
        xcoeffs.push(require_rational(c.scale(&Scalar::two_pi_i_pow(-n as i32)))?);
    }
    Ok(JacobiLikeSeries { weight: 0, xcoeffs })
}

/// Product of formal series in X.
pub fn jacobi_product(a: &JacobiLikeSeries, b: &JacobiLikeSeries) -> JacobiLikeSeries {
    let len = a.xcoeffs.len().min(b.xcoeffs.len());
    let xcoeffs = (0..len)
        .map(|n| {
            (0..=n).fold(QSeries::zero(), |acc, i| &acc + &(&a.xcoeffs[i] * &b.xcoeffs[n - i]))
        })
        .collect();
    JacobiLikeSeries { weight: a.weight + b.weight, xcoeffs }
}

/// Outcome of the uniqueness probe for linear combinations
/// `Σ_{r+s=n} c_r · 1^{(r)} f^{(s)}` that are modular for every f ∈ M_k.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeResult {
    pub k: i64,
    pub n: i64,
    pub kernel_dim: usize,
    /// A kernel vector (c_0, …, c_n), when the kernel is a line.
    pub kernel: Option<Vec<BigRational>>,
    /// (−1)^r C(n−1, s)·C(n+k−1, r) for r = 0..=n.
    pub expected: Vec<BigRational>,
    pub proportional: bool,
}

/// The probe over SL2Z.
///
/// M_4 and M_6 are one-dimensional there, so a single form is tested and
/// relations special to E4 or E6 enlarge the kernel from n = 3 on.
pub fn uniqueness_probe(k: i64, n: i64, prec: i64) -> Result<ProbeResult> {
    uniqueness_probe_on(&Gamma::Sl2z, k, n, prec)
}

/// The probe with constraints from every basis form of M_k(Γ).
pub fn uniqueness_probe_on(gamma: &Gamma, k: i64, n: i64, prec: i64) -> Result<ProbeResult> {
    let forms = gamma.basis(k, prec)?;
    let targets = gamma.basis(k + 2 * n, prec)?;
    let nc = (n + 1) as usize;
    let ne = targets.len();
    let cols = nc + ne * forms.len();
    let mut m: Matrix = Vec::new();
    let one = Operand::One;
    for (fi, f) in forms.iter().enumerate() {
        let fo = Operand::Form(ModularForm::new(k, f.clone()));
        let gens: Vec<QSeries> = (0..=n)
            .map(|r| {
                let g = &one.derivative(r, prec) * &fo.derivative(n - r, prec);
                g.scale(&Scalar::two_pi_i_pow(-n as i32))
            })
            .collect();
        for g in &gens {
            require_rational(g.clone())?;
        }
        for e in 0..prec {
            let mut row = vec![BigRational::zero(); cols];
            for (r, g) in gens.iter().enumerate() {
                row[r] = g.coeff(e).coeff(0);
            }
            for (j, t) in targets.iter().enumerate() {
                row[nc + fi * ne + j] = -t.coeff(e).coeff(0);
            }
            m.push(row);
        }
    }
    let ker = kernel(&m, cols);
    let proj: Matrix = ker.iter().map(|v| v[..nc].to_vec()).collect();
    let kernel_dim = if proj.is_empty() { 0 } else { rank(&proj) };
    let expected: Vec<BigRational> = (0..=n)
        .map(|r| {
            let c = &ext_binom(n - 1, n - r) * &ext_binom(n + k - 1, r);
            if r % 2 == 0 { c } else { -c }
        })
        .collect();
    let kernel_vec = (kernel_dim == 1).then(|| {
        proj.iter().find(|v| v.iter().any(|x| !x.is_zero())).cloned().unwrap()
    });
    let proportional = kernel_vec.as_ref().is_some_and(|v| proportional(v, &expected));
    Ok(ProbeResult { k, n, kernel_dim, kernel: kernel_vec, expected, proportional })
}

fn proportional(a: &[BigRational], b: &[BigRational]) -> bool {
    let Some(i) = b.iter().position(|x| !x.is_zero()) else {
        return a.iter().all(Zero::is_zero);
    };
    let t = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| *x == &t * y)
}

/// Whether every X^n coefficient of `s` lies in M_{weight+2n}.
pub fn jacobi_coefficients_modular(s: &JacobiLikeSeries, gamma: &Gamma, cfg: &DecomposeConfig) -> Result<Vec<bool>> {
    s.xcoeffs
        .iter()
        .enumerate()
        .map(|(n, c)| match decompose(c, gamma, s.coeff_weight(n), cfg) {
            Ok(_) => Ok(true),
            Err(Error::NotMember { .. }) => Ok(false),
            Err(e) => Err(e),
        })
        .collect()
}

/// `[1, f]~_n`, with `[1, f]~_0 = f`.
pub fn bracket_one_form(f: &ModularForm, n: i64) -> Result<ModularForm> {
    let p = f.series.prec_floor().unwrap_or(0);
    bracket(&Operand::One, &Operand::Form(f.clone()), n, p)
}

/// `[1, 1]~_n`, with `[1, 1]~_0 = 1`.
pub fn bracket_one_one(n: i64, prec: i64) -> Result<ModularForm> {
    bracket(&Operand::One, &Operand::One, n, prec)
}
