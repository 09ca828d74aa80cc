//! The graded dimension `Σ dim V_n qⁿ` of the invariant sections, computed
//! three ways: the closed quadruple sum, the four-tuple count paired with
//! dimensions of modular forms, and the size of the lifting basis.
//!
//! A tuple (λ, μ, ν, χ) of part p contributes dim M_{2p}(Γ) at its weight.
//! Writing s₁ = p(λ), s₂ = p(χ), s₃ = p(ν), s₄ = p(μ), the part is
//! −s₁ + s₂ − s₃ + s₄ and the minimal weight with these lengths is
//! s₁ + s₂ + s₃(s₃+1)/2 + s₄(s₄−1)/2.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{enumerate_fourtuples, partitions, Flavor};
use crate::lifting::lifting_basis;
use crate::modforms::Gamma;

/// Coefficients of q⁰, q¹, …, q^qmax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterSeries {
    pub coeffs: Vec<u64>,
}

impl CharacterSeries {
    fn zero(qmax: usize) -> Self {
        CharacterSeries { coeffs: vec![0; qmax + 1] }
    }

    pub fn qmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Agreement on the common range.
    pub fn agrees_with(&self, other: &CharacterSeries) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

/// `P[k][e]`: partitions of e into parts ≤ k, the coefficients of
/// `Π_{i=1}^k 1/(1−q^i)`, for k, e ≤ qmax.
fn bounded_partition_table(qmax: usize) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; qmax + 1]];
    table[0][0] = 1;
    for k in 1..=qmax {
        let mut row = table[k - 1].clone();
        for e in k..=qmax {
            row[e] += row[e - k];
        }
        table.push(row);
    }
    table
}

/// `q^shift · c · Π_j Π_{i=1}^{k_j} 1/(1−q^i)`, added into `acc`.
fn add_product(acc: &mut [u64], table: &[Vec<u64>], shift: usize, c: u64, ks: &[usize]) {
    let qmax = acc.len() - 1;
    let mut prod = vec![0u64; qmax + 1 - shift];
    prod[0] = 1;
    for &k in ks {
        let row = &table[k.min(qmax)];
        let mut next = vec![0u64; prod.len()];
        for (i, a) in prod.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, b) in row.iter().enumerate().take(prod.len() - i) {
                next[i + j] += a * b;
            }
        }
        prod = next;
    }
    for (i, p) in prod.iter().enumerate() {
        acc[shift + i] += c * p;
    }
}

/// The closed form: a sum over (m, n, u, v) with u ≤ n, v ≤ m + n of
/// `dim M_{2m} q^{m+2n+u(u−1)/2+v(v−3)/2}` times the product of
/// `Π_{i≤k} 1/(1−q^i)` for k = u, v, n−u, m+n−v.
pub fn char_closed(gamma: &Gamma, qmax: usize) -> Result<CharacterSeries> {
    let table = bounded_partition_table(qmax);
    let mut out = CharacterSeries::zero(qmax);
    let q = qmax as i64;
    // The exponent is at least m + 2n − 1.
    for m in 0..=q + 1 {
        let dim = gamma.dim(2 * m)? as u64;
        if dim == 0 {
            continue;
        }
        for n in 0..=(q + 1 - m) / 2 {
            for u in 0..=n {
                for v in 0..=m + n {
                    let e = m + 2 * n + u * (u - 1) / 2 + v * (v - 3) / 2;
                    if e > q {
                        continue;
                    }
                    let ks = [u as usize, v as usize, (n - u) as usize, (m + n - v) as usize];
                    add_product(&mut out.coeffs, &table, e as usize, dim, &ks);
                }
            }
        }
    }
    Ok(out)
}

/// The same sum in the variables s₁ = p(λ), s₂ = p(χ), s₃ = p(ν), s₄ = p(μ).
pub fn char_s_form(gamma: &Gamma, qmax: usize) -> Result<CharacterSeries> {
    let table = bounded_partition_table(qmax);
    let mut out = CharacterSeries::zero(qmax);
    let q = qmax as i64;
    for s1 in 0..=q {
        for s2 in 0..=q - s1 {
            for s3 in 0..=q {
                let e3 = s1 + s2 + s3 * (s3 + 1) / 2;
                if e3 > q {
                    break;
                }
                for s4 in 0..=q + 1 {
                    let e = e3 + s4 * (s4 - 1) / 2;
                    if e > q {
                        break;
                    }
                    let dim = gamma.dim(2 * (-s1 + s2 - s3 + s4))? as u64;
                    if dim > 0 {
                        let ks = [s1 as usize, s2 as usize, s3 as usize, s4 as usize];
                        add_product(&mut out.coeffs, &table, e as usize, dim, &ks);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `c(t, n)`: the coefficient of `t^t qⁿ` in
/// `Π_{n≥1} (1−t²qⁿ)^{−1}(1−t^{−2}qⁿ)^{−1}(1+t²qⁿ) · Π_{n≥0}(1+t^{−2}qⁿ)`,
/// by exact expansion up to q^qmax.
pub fn bivariate_trace(qmax: usize) -> BTreeMap<(i64, usize), u64> {
    type Poly = Vec<BTreeMap<i64, u64>>;
    let mul = |p: &Poly, t_step: i64, q_step: usize, max_mult: Option<usize>| -> Poly {
        let mut out: Poly = vec![BTreeMap::new(); qmax + 1];
        for (n, row) in p.iter().enumerate() {
            for (&t, &c) in row {
                let mut k = 0;
                while n + k * q_step <= qmax && max_mult.is_none_or(|m| k <= m) {
                    *out[n + k * q_step].entry(t + k as i64 * t_step).or_insert(0) += c;
                    if q_step == 0 && k >= 1 {
                        break;
                    }
                    k += 1;
                }
            }
        }
        out
    };
    let mut p: Poly = vec![BTreeMap::new(); qmax + 1];
    p[0].insert(0, 1);
    for n in 1..=qmax {
        p = mul(&p, 2, n, None);
        p = mul(&p, -2, n, None);
        p = mul(&p, 2, n, Some(1));
        p = mul(&p, -2, n, Some(1));
    }
    // The factor 1 + t^{−2} from φ₀.
    p = mul(&p, -2, 0, Some(1));
    let mut out = BTreeMap::new();
    for (n, row) in p.into_iter().enumerate() {
        for (t, c) in row {
            out.insert((t, n), c);
        }
    }
    out
}

/// Four-tuple enumeration bucketed by part, paired with dim M_{2·part}, and
/// cross-checked bucket by bucket against the bivariate product (where the
/// t-exponent is −2·part).
pub fn char_enumerate(gamma: &Gamma, qmax: usize) -> Result<CharacterSeries> {
    let buckets: Vec<BTreeMap<i64, u64>> = (0..=qmax as u32)
        .into_par_iter()
        .map(|w| {
            let mut b = BTreeMap::new();
            for t in enumerate_fourtuples(w, None, None) {
                *b.entry(t.part()).or_insert(0) += 1;
            }
            b
        })
        .collect();
    let trace = bivariate_trace(qmax);
    for (n, b) in buckets.iter().enumerate() {
        let from_product: BTreeMap<i64, u64> =
            trace.iter().filter(|((_, m), _)| *m == n).map(|((t, _), c)| (-t / 2, *c)).collect();
        if &from_product != b {
            return Err(Error::Inconsistent(format!(
                "weight {n}: tuple count by part {b:?}, product expansion {from_product:?}"
            )));
        }
    }
    let mut out = CharacterSeries::zero(qmax);
    for (n, b) in buckets.iter().enumerate() {
        for (&p, &c) in b {
            out.coeffs[n] += c * gamma.dim(2 * p)? as u64;
        }
    }
    Ok(out)
}

/// Largest q-power accepted by [`char_from_basis`].
pub const FROM_BASIS_QMAX: usize = 6;

/// The number of basis liftings per weight.
pub fn char_from_basis(gamma: &Gamma, qmax: usize, prec: i64) -> Result<CharacterSeries> {
    if qmax > FROM_BASIS_QMAX {
        return Err(Error::PrecisionTooLow { needed: qmax as i64, have: FROM_BASIS_QMAX as i64 });
    }
    let coeffs = (0..=qmax as u32)
        .map(|k| lifting_basis(gamma, k, None, prec).map(|b| b.len() as u64))
        .collect::<Result<_>>()?;
    Ok(CharacterSeries { coeffs })
}

/// Coefficients of `x^k Π_{i≤k} 1/(1−x^i)` (distinct = false) or
/// `x^{k(k+1)/2} Π_{i≤k} 1/(1−x^i)` (distinct = true), up to x^nmax.
pub fn parts_generating_function(k: usize, distinct: bool, nmax: usize) -> Vec<u64> {
    let table = bounded_partition_table(nmax);
    let shift = if distinct { k * (k + 1) / 2 } else { k };
    let mut out = vec![0; nmax + 1];
    if shift <= nmax {
        add_product(&mut out, &table, shift, 1, &[k]);
    }
    out
}

/// Partitions of n with exactly k parts, by enumeration.
pub fn count_partitions_with_parts(n: u32, k: usize, distinct: bool) -> u64 {
    let flavor = if distinct { Flavor::Distinct } else { Flavor::Ordinary };
    partitions(n, flavor).iter().filter(|p| p.len() == k).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::GammaTable;

    #[test]
    fn sl2z_low_coefficients() {
        let c = char_closed(&Gamma::Sl2z, 6).unwrap();
        assert_eq!(c.coeffs[0], 1);
        assert_eq!(c.coeffs[1], 4);
        assert_eq!(c, char_s_form(&Gamma::Sl2z, 6).unwrap());
        assert_eq!(c, char_enumerate(&Gamma::Sl2z, 6).unwrap());
    }

    #[test]
    fn from_basis_low_weights() {
        let b = char_from_basis(&Gamma::Sl2z, 3, 8).unwrap();
        assert!(b.agrees_with(&char_closed(&Gamma::Sl2z, 3).unwrap()), "{b:?}");
    }

    #[test]
    fn zero_dims_give_zero_series() {
        let mut t = GammaTable::gamma0_2(20, 4);
        for d in t.dims.values_mut() {
            *d = 0;
        }
        t.bases.clear();
        let g = Gamma::Table(t);
        assert!(char_closed(&g, 6).unwrap().coeffs.iter().all(|c| *c == 0));
        assert!(char_enumerate(&g, 6).unwrap().coeffs.iter().all(|c| *c == 0));
    }

    #[test]
    fn weight_one_buckets() {
        let t = bivariate_trace(1);
        let parts: BTreeMap<i64, u64> = t.iter().filter(|((_, n), _)| *n == 1).map(|((t, _), c)| (-t / 2, *c)).collect();
        assert_eq!(parts.into_iter().collect::<Vec<_>>(), vec![(-1, 2), (0, 2), (1, 2), (2, 2)]);
    }

    #[test]
    fn generating_functions_match_enumeration() {
        for k in 0..6 {
            for distinct in [false, true] {
                let gf = parts_generating_function(k, distinct, 30);
                for n in 0..=30u32 {
                    assert_eq!(gf[n as usize], count_partitions_with_parts(n, k, distinct), "k={k} n={n}");
                }
            }
        }
    }
}
