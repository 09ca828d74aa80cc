//! n-th products `u_{(n)} v` of Fock states.
//!
//! A monomial `x_{(n)} u'` is peeled one generator at a time with the
//! Borcherds identity
//!
//! `(x_{(n)} u')_{(m)} = Σ_i (−1)^i C(n,i) x_{(n−i)} u'_{(m+i)}
//!                     − Σ_i (−1)^{p(x)p(u')+n+i} C(n,i) u'_{(m+n−i)} x_{(i)}`,
//!
//! both sums being finite on a given state because modes lowering the weight
//! below zero vanish. The remaining coefficient function f(b) has the field
//! `Σ_l ∂^l f(b)/l! · (Σ_{k≠0} b_k z^{−k})^l`.

use num::{BigInt, BigRational, One, Zero};

use super::coeff::CoeffFn;
use super::partition::{partitions, Flavor};
use super::space::FockState;
use super::tuple::{Field, FourTuple, Mode};
use crate::exactnum::Scalar;

/// Binomial C(n, i) for any integer n and i ≥ 0.
pub fn binom(n: i64, i: i64) -> BigRational {
    if i < 0 {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= n - j;
        den *= j + 1;
    }
    BigRational::new(num, den)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `u_{(n)} v`.
pub fn nth_product(u: &FockState, n: i64, v: &FockState) -> FockState {
    let mut out = FockState::zero();
    for (t, f) in u.terms() {
        out.add_assign(&monomial_product(t, f, n, v));
    }
    out
}

fn monomial_product(t: &FourTuple, f: &CoeffFn, m: i64, v: &FockState) -> FockState {
    if v.is_zero() {
        return FockState::zero();
    }
    let Some((x, rest)) = t.split_first() else {
        return function_product(f, m, v);
    };
    let n = x.product_index();
    let field = x.field;
    let wr = rest.weight();
    let wv = v.max_weight();
    let mut out = FockState::zero();
    let mut i = 0;
    while m + i < wr + wv {
        let inner = monomial_product(&rest, f, m + i, v);
        if !inner.is_zero() {
            let c = binom(n, i) * BigRational::from_integer(sign(i).into());
            out.add_assign(&inner.apply_mode(field.mode_of_product(n - i)).scale(&Scalar::from_rational(c)));
        }
        i += 1;
    }
    let odd_pair = field.is_odd() && rest.parity();
    for i in 0..field.weight() + wv {
        let xv = v.apply_mode(field.mode_of_product(i));
        if xv.is_zero() {
            continue;
        }
        let c = binom(n, i) * BigRational::from_integer(sign(i64::from(odd_pair) + n + i).into());
        let inner = monomial_product(&rest, f, m + n - i, &xv);
        out.add_assign(&inner.scale(&Scalar::from_rational(-c)));
    }
    out
}

/// All sub-multisets of the parts of a partition, as (parts, Π mult!).
fn sub_multisets(parts: &[u32]) -> Vec<(Vec<u32>, BigInt)> {
    let mut distinct: Vec<(u32, usize)> = Vec::new();
    for &p in parts {
        match distinct.last_mut() {
            Some((q, c)) if *q == p => *c += 1,
            _ => distinct.push((p, 1)),
        }
    }
    let mut out = vec![(Vec::new(), BigInt::one())];
    for (p, c) in distinct {
        let mut next = Vec::new();
        for (sub, w) in &out {
            let mut fact = BigInt::one();
            for k in 0..=c {
                if k > 0 {
                    fact *= k;
                }
                let mut s = sub.clone();
                s.extend(std::iter::repeat_n(p, k));
                next.push((s, w * &fact));
            }
        }
        out = next;
    }
    out
}

fn multiplicity_factorials(parts: &[u32]) -> BigInt {
    let mut out = BigInt::one();
    let mut run = 0u32;
    for (i, p) in parts.iter().enumerate() {
        run = if i > 0 && parts[i - 1] == *p { run + 1 } else { 1 };
        out *= run;
    }
    out
}

/// `f(b)_{(m)} v`.
fn function_product(f: &CoeffFn, m: i64, v: &FockState) -> FockState {
    let mut derivs: Vec<CoeffFn> = vec![f.clone()];
    let mut out = FockState::zero();
    for (t, c) in v.terms() {
        let single = FockState::single(t.clone(), c.clone());
        for (pos, pos_fact) in sub_multisets(&t.lambda.parts) {
            let sigma: i64 = pos.iter().map(|&p| p as i64).sum();
            let r = sigma - (m + 1);
            if r < 0 {
                continue;
            }
            let mut after_pos = single.clone();
            for &p in &pos {
                after_pos = after_pos.apply_mode(Mode::new(Field::B, p as i64));
            }
            if after_pos.is_zero() {
                continue;
            }
            for neg in partitions(r as u32, Flavor::Ordinary) {
                let l = pos.len() + neg.len();
                while derivs.len() <= l {
                    let next = derivs.last().unwrap().derivative();
                    derivs.push(next);
                }
                let mut s = after_pos.clone();
                for &p in &neg.parts {
                    s = s.apply_mode(Mode::new(Field::B, -(p as i64)));
                }
                let weight = BigRational::new(BigInt::one(), &pos_fact * multiplicity_factorials(&neg.parts));
                out.add_assign(&s.mul_function(&derivs[l]).scale(&Scalar::from_rational(weight)));
            }
        }
    }
    out
}

/// Translation operator T, with `Y(Tu, z) = ∂_z Y(u, z)`.
///
/// Computed letter by letter from `[T, x_{(j)}] = −j x_{(j−1)}` and
/// `T(f(b)·1) = b_{−1} f′(b)`, independently of the n-th products.
pub fn translation(u: &FockState) -> FockState {
    let mut out = FockState::zero();
    for (t, f) in u.terms() {
        let word = t.modes();
        let base = FockState::function(f.clone());
        for (i, x) in word.iter().enumerate() {
            let j = x.product_index();
            if j == 0 {
                continue;
            }
            let mut w = word.clone();
            w[i] = x.field.mode_of_product(j - 1);
            out.add_assign(&base.apply_word(&w).scale_int(-j));
        }
        let tf = FockState::function(f.derivative()).apply_mode(Mode::new(Field::B, -1));
        out.add_assign(&tf.apply_word(&word));
    }
    out
}

/// Graded commutator `u_{(m)} v_{(n)} s − (−1)^{p(u)p(v)} v_{(n)} u_{(m)} s`
/// for homogeneous u, v.
pub fn mode_commutator(u: &FockState, m: i64, v: &FockState, n: i64, s: &FockState) -> FockState {
    let pu = u.terms().next().is_some_and(|(t, _)| t.parity());
    let pv = v.terms().next().is_some_and(|(t, _)| t.parity());
    let a = nth_product(u, m, &nth_product(v, n, s));
    let b = nth_product(v, n, &nth_product(u, m, s));
    let b = if pu && pv { b.scale_int(-1) } else { b };
    a.sub(&b)
}

/// Right side of the commutator formula
/// `Σ_{j≥0} C(m, j) (u_{(j)} v)_{(m+n−j)} s`.
pub fn commutator_formula(u: &FockState, m: i64, v: &FockState, n: i64, s: &FockState) -> FockState {
    let mut out = FockState::zero();
    for j in 0..u.max_weight() + v.max_weight() + 1 {
        let ujv = nth_product(u, j, v);
        if ujv.is_zero() {
            continue;
        }
        let c = binom(m, j);
        if c.is_zero() {
            continue;
        }
        out.add_assign(&nth_product(&ujv, m + n - j, s).scale(&Scalar::from_rational(c)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::coeff::ZeroModeCoeff;

    fn st(spec: &str) -> FockState {
        FockState::monomial(spec.parse().unwrap(), CoeffFn::one())
    }

    #[test]
    fn generator_modes_match_fields() {
        let a = st("a[1]");
        let v = st("b[2]");
        // a_{(2)} b_{-2}·1 = [a_2, b_{-2}]·1 = 1.
        assert_eq!(nth_product(&a, 2, &v), FockState::vacuum());
        // φ_{(0)} = φ_1 and φ_1 ψ_{-1}·1 = 1.
        assert_eq!(nth_product(&st("phi[1]"), 0, &st("psi[1]")), FockState::vacuum());
    }

    #[test]
    fn vacuum_is_identity() {
        let u = st("a[2]:phi[3,1]:b[1]");
        assert_eq!(nth_product(&FockState::vacuum(), -1, &u), u);
        assert_eq!(nth_product(&u, -1, &FockState::vacuum()), u);
    }

    #[test]
    fn translation_of_generators() {
        assert_eq!(translation(&st("a[1]")), st("a[2]"));
        assert_eq!(translation(&st("phi[1]")), st("phi[2]"));
        assert_eq!(translation(&st("b[1]")), st("b[2]").scale_int(2));
    }

    #[test]
    fn minus_two_product_with_vacuum_is_translation() {
        for spec in ["a[1]:phi[1]", "phi[1]:psi[1]", "a[1]:b[1]", "phi[2]:psi[1]"] {
            let u = st(spec);
            assert_eq!(nth_product(&u, -2, &FockState::vacuum()), translation(&u), "{spec}");
        }
    }

    #[test]
    fn function_field_on_vacuum() {
        let f = CoeffFn::b_pow(2);
        let u = FockState::function(f.clone());
        // f_{(-1)} 1 = f, f_{(-2)} 1 = T f = 2b·b_{-1}.
        assert_eq!(nth_product(&u, -1, &FockState::vacuum()), u);
        let expect = FockState::monomial("b[1]".parse().unwrap(), CoeffFn::b_pow(1).scale(&Scalar::from_int(2)));
        assert_eq!(nth_product(&u, -2, &FockState::vacuum()), expect);
    }
}
