//! Group descriptors, bases of M_k and exact decomposition.

use std::collections::BTreeMap;
use std::path::Path;

use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use super::{dim_sl2z, e4, e4_e6_exponents, e6};
use crate::error::{Error, Result};
use crate::exactnum::{rational_string, QSeries, Scalar};
use crate::linalg::{rref, Matrix};

/// Dimensions and bases of M_k for a group that is not built in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaTable {
    pub name: String,
    pub prec: i64,
    pub dims: BTreeMap<String, usize>,
    pub bases: BTreeMap<String, Vec<QSeries>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gamma {
    Sl2z,
    Table(GammaTable),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeConfig {
    /// Extra known coefficients required beyond the dimension.
    pub margin: i64,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig { margin: 10 }
    }
}

/// Coordinates of a form in the basis returned by [`Gamma::basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub weight: i64,
    pub coords: Vec<Scalar>,
}

impl GammaTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let t: GammaTable = serde_json::from_str(text)?;
        t.validate()?;
        Ok(t)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
        GammaTable::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    fn validate(&self) -> Result<()> {
        for (w, d) in &self.dims {
            let k: i64 = w.parse().map_err(|_| Error::InvalidTable(format!("weight key {w:?}")))?;
            if k % 2 != 0 && *d != 0 {
                return Err(Error::InvalidTable(format!("odd weight {k} has dimension {d}")));
            }
            if let Some(b) = self.bases.get(w) {
                if b.len() != *d {
                    return Err(Error::InvalidTable(format!("weight {k}: {} basis forms, dimension {d}", b.len())));
                }
                for f in b {
                    if !f.is_rational() || !f.has_integral_exponents() {
                        return Err(Error::InvalidTable(format!("weight {k}: basis form is not a rational q-series")));
                    }
                }
            }
        }
        Ok(())
    }

    fn dim(&self, k: i64) -> Result<usize> {
        self.dims.get(&k.to_string()).copied().ok_or(Error::MissingWeight(k))
    }

    fn basis(&self, k: i64) -> Result<Vec<QSeries>> {
        let d = self.dim(k)?;
        if d == 0 {
            return Ok(Vec::new());
        }
        let b = self.bases.get(&k.to_string()).ok_or(Error::MissingWeight(k))?;
        Ok(b.iter().map(|f| f.truncate(self.prec)).collect())
    }

    /// Γ₀(2): M(Γ₀(2)) is the polynomial ring on F = 2E2(2τ) − E2(τ) (weight
    /// 2) and E4 (weight 4).
    pub fn gamma0_2(max_weight: i64, prec: i64) -> Self {
        let e2 = super::e2(prec);
        let f = &e2.rebase(2, 1).scale(&Scalar::from_int(2)) - &e2;
        let e4 = e4(prec);
        let mut dims = BTreeMap::new();
        let mut bases = BTreeMap::new();
        for k in (0..=max_weight).step_by(2) {
            let forms: Vec<QSeries> = (0..=k / 4)
                .map(|b| (&f.pow(((k - 4 * b) / 2) as u32) * &e4.pow(b as u32)).truncate(prec))
                .collect();
            dims.insert(k.to_string(), forms.len());
            bases.insert(k.to_string(), forms);
        }
        GammaTable { name: "Gamma0(2)".into(), prec, dims, bases }
    }
}

impl Gamma {
    pub fn name(&self) -> &str {
        match self {
            Gamma::Sl2z => "SL2(Z)",
            Gamma::Table(t) => &t.name,
        }
    }

    /// dim M_k; odd and negative weights have dimension 0.
    pub fn dim(&self, k: i64) -> Result<usize> {
        if k < 0 || k % 2 != 0 {
            return Ok(0);
        }
        match self {
            Gamma::Sl2z => Ok(dim_sl2z(k)),
            Gamma::Table(t) => t.dim(k),
        }
    }

    /// Precision available for bases (`None` when computable to any order).
    pub fn table_prec(&self) -> Option<i64> {
        match self {
            Gamma::Sl2z => None,
            Gamma::Table(t) => Some(t.prec),
        }
    }

    /// A basis of M_k known below `q^prec` (capped by the table precision).
    /// For SL₂(Z) the basis is in reduced echelon form, so its leading
    /// exponents are 0, 1, …, dim−1.
    pub fn basis(&self, k: i64, prec: i64) -> Result<Vec<QSeries>> {
        if self.dim(k)? == 0 {
            return Ok(Vec::new());
        }
        match self {
            Gamma::Sl2z => Ok(sl2z_basis(k, prec)),
            Gamma::Table(t) => Ok(t.basis(k)?.into_iter().map(|f| f.truncate(prec)).collect()),
        }
    }
}

fn sl2z_basis(k: i64, prec: i64) -> Vec<QSeries> {
    let e4 = e4(prec);
    let e6 = e6(prec);
    let mut m: Matrix = e4_e6_exponents(k)
        .into_iter()
        .map(|(a, b)| dense(&(&e4.pow(a) * &e6.pow(b)), 0, prec))
        .collect();
    rref(&mut m);
    m.into_iter().map(QSeries::from_rationals).collect()
}

/// Rational coefficients of the Π^deg component on `0..prec`.
fn dense(f: &QSeries, deg: i32, prec: i64) -> Vec<BigRational> {
    (0..prec).map(|n| f.coeff(n).coeff(deg)).collect()
}

/// Coordinates of `f` in `gamma.basis(k, ·)`.
///
/// The coefficients may carry powers of Π; each Π-degree is decomposed
/// separately and the coordinates recombined. Fails with `NotMember` at the
/// first known exponent where no combination of the basis matches, and with
/// `PrecisionTooLow` when fewer than `dim + margin` coefficients are known.
pub fn decompose(f: &QSeries, gamma: &Gamma, k: i64, cfg: &DecomposeConfig) -> Result<Decomposition> {
    let d = gamma.dim(k)?;
    let needed = d as i64 + cfg.margin;
    let mut prec = match (f.prec_floor(), gamma.table_prec()) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => needed.max(f.terms().map(|(e, _)| e / f.denom() + 1).max().unwrap_or(0)),
    };
    if f.is_exact() {
        // Exact input: any support beyond the table range cannot be checked.
        prec = prec.max(needed.min(gamma.table_prec().unwrap_or(needed)));
    }
    if prec < needed {
        return Err(Error::PrecisionTooLow { needed, have: prec });
    }
    if let Some((e, _)) = f.terms().find(|(e, _)| e % f.denom() != 0 || *e < 0) {
        let ex = BigRational::new(e.into(), f.denom().into());
        return Err(Error::NotMember { exponent: rational_string(&ex) });
    }
    let basis = gamma.basis(k, prec)?;
    // [B | I] → [R | T] with T·B = R in reduced echelon form.
    let mut aug: Matrix = basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut row = dense(b, 0, prec);
            row.extend((0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < d || pivots.iter().any(|&p| p >= prec as usize) {
        return Err(Error::InvalidTable(format!("weight {k} basis is dependent below q^{prec}")));
    }
    let mut coords = vec![Scalar::zero(); d];
    let mut degrees = f.pi_degrees();
    if degrees.is_empty() {
        degrees.push(0);
    }
    for deg in degrees {
        let mut v = dense(f, deg, prec);
        let y: Vec<BigRational> = pivots.iter().map(|&p| v[p].clone()).collect();
        for (row, yj) in aug.iter().zip(&y) {
            for n in 0..prec as usize {
                v[n] -= &row[n] * yj;
            }
        }
        if let Some(n) = v.iter().position(|c| !c.is_zero()) {
            return Err(Error::NotMember { exponent: n.to_string() });
        }
        for (i, c) in coords.iter_mut().enumerate() {
            let x: BigRational = aug.iter().zip(&y).map(|(row, yj)| &row[prec as usize + i] * yj).sum();
            *c += &Scalar::monomial(deg, x);
        }
    }
    Ok(Decomposition { weight: k, coords })
}
