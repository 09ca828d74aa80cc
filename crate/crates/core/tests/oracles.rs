//! Library outputs against independent computations written here with plain
//! integer arithmetic, and the frozen values those computations produce.

use std::collections::BTreeMap;

use chiral_core::character::{char_closed, char_enumerate};
use chiral_core::exactnum::{int, QSeries};
use chiral_core::modforms::{delta, e4, e6, hecke_t, Gamma, GammaTable};

fn coeffs(s: &QSeries, n: usize) -> Vec<i128> {
    (0..n as i64)
        .map(|e| {
            let r = s.rational_coeff(e).expect("rational");
            assert!(r.is_integer(), "q^{e}: {r}");
            r.to_integer().try_into().unwrap()
        })
        .collect()
}

fn sigma(k: u32, n: i128) -> i128 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(k)).sum()
}

/// q·Π(1−qⁿ)²⁴ by repeated multiplication.
fn delta_product(n: usize) -> Vec<i128> {
    let mut p = vec![0i128; n];
    p[1] = 1;
    for m in 1..n {
        for _ in 0..24 {
            for e in (m..n).rev() {
                p[e] -= p[e - m];
            }
        }
    }
    p
}

#[test]
fn eisenstein_series_are_divisor_sums() {
    let n = 40;
    let a: Vec<i128> = (0..n as i128).map(|m| if m == 0 { 1 } else { 240 * sigma(3, m) }).collect();
    let b: Vec<i128> = (0..n as i128).map(|m| if m == 0 { 1 } else { -504 * sigma(5, m) }).collect();
    assert_eq!(coeffs(&e4(n as i64), n), a);
    assert_eq!(coeffs(&e6(n as i64), n), b);
}

#[test]
fn delta_is_the_eta_product() {
    let p = delta_product(40);
    assert_eq!(coeffs(&delta(40), 40), p);
    assert_eq!(&p[1..6], &[1, -24, 252, -1472, 4830]);
}

#[test]
fn hecke_operators_are_multiplicative() {
    for (k, f) in [(4, e4(90)), (6, e6(90)), (12, delta(90))] {
        let composed = hecke_t(k, 2, &hecke_t(k, 3, &f).unwrap()).unwrap();
        let direct = hecke_t(k, 6, &f).unwrap();
        assert!(composed.prec_floor() >= Some(15) && direct.prec_floor() >= Some(15));
        assert!((&composed.truncate(15) - &direct.truncate(15)).is_zero(), "weight {k}");
    }
}

#[test]
fn delta_eigenvalues_are_tau() {
    let f = delta(60);
    for (n, tau) in [(2, -24), (3, 252), (5, 4830)] {
        let image = hecke_t(12, n, &f).unwrap();
        let p = image.prec_floor().unwrap();
        assert!((&image - &f.truncate(p).scale_rational(&int(tau))).is_zero(), "T({n})");
    }
}

/// Partitions of weight w into `len` parts, counted by (w, len), for a
/// generator of weight `offset + part` with parts ≥ 1, distinct or not.
fn family(max: usize, offset: i64, distinct: bool) -> BTreeMap<(usize, usize), u64> {
    fn go(out: &mut BTreeMap<(usize, usize), u64>, max: usize, offset: i64, distinct: bool, top: usize, w: usize, len: usize) {
        *out.entry((w, len)).or_insert(0) += 1;
        for p in 1..=top {
            let add = p as i64 + offset;
            if add < 0 || w + add as usize > max {
                continue;
            }
            let next = if distinct { p - 1 } else { p };
            go(out, max, offset, distinct, next, w + add as usize, len + 1);
        }
    }
    let mut out = BTreeMap::new();
    go(&mut out, max, offset, distinct, max + 1, 0, 0);
    out
}

/// Σ over four-tuples of weight n of dim M_{2·part}.
fn character_oracle(qmax: usize, dim: impl Fn(i64) -> u64) -> Vec<u64> {
    let a = family(qmax, 0, false);
    let b = family(qmax, 0, false);
    let phi = family(qmax, -1, true);
    let psi = family(qmax, 0, true);
    let mut out = vec![0u64; qmax + 1];
    for (&(wa, la), ca) in &a {
        for (&(wb, lb), cb) in &b {
            for (&(wf, lf), cf) in &phi {
                for (&(wp, lp), cp) in &psi {
                    let w = wa + wb + wf + wp;
                    if w > qmax {
                        continue;
                    }
                    let part = -(la as i64) + lb as i64 + lf as i64 - lp as i64;
                    out[w] += ca * cb * cf * cp * dim(2 * part);
                }
            }
        }
    }
    out
}

fn dim_sl2z(k: i64) -> u64 {
    if k < 0 || k % 2 != 0 || k == 2 {
        0
    } else if k % 12 == 2 {
        (k / 12) as u64
    } else {
        (k / 12 + 1) as u64
    }
}

#[test]
fn sl2z_character_matches_oracle() {
    let frozen = [1, 4, 12, 32, 76, 170, 358, 722, 1404, 2644, 4846, 8674, 15200];
    assert_eq!(character_oracle(12, dim_sl2z), frozen);
    assert_eq!(char_closed(&Gamma::Sl2z, 12).unwrap().coeffs, frozen);
    assert_eq!(char_enumerate(&Gamma::Sl2z, 12).unwrap().coeffs, frozen);
}

#[test]
fn gamma0_2_character_matches_oracle() {
    let frozen = [2, 8, 24, 66, 160, 362, 774, 1578, 3096];
    let dim = |k: i64| if k < 0 || k % 2 != 0 { 0 } else { (k / 4 + 1) as u64 };
    assert_eq!(character_oracle(8, dim), frozen);
    let table = Gamma::Table(GammaTable::gamma0_2(40, 4));
    assert_eq!(char_closed(&table, 8).unwrap().coeffs, frozen);
}
