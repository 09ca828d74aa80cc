//! The operator quotient Ū/K in its PBW basis.
//!
//! An element is a sum of creation words times `a₀^k b₀^l`. Left
//! multiplication by a mode is the same module action as on Fock states, with
//! the zero modes acting on a Weyl-algebra coefficient instead of on a
//! function of b. Right multiplication is only ever needed by zero-mode
//! operators: since K is a left ideal, `B·x₍₀₎ ≡ B·r_x` where `r_x` is the
//! Weyl word `x₍₀₎ mod K`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Zero};

use crate::exactnum::{int, Scalar};
use crate::fock::{sl2_graded_action, CoeffFn, Field, FockState, FourTuple, Mode, ModeSum, Sl2, ZeroModeCoeff};

/// `Σ c_{k,l} a₀^k b₀^l`, with a₀ to the left of b₀ and `[a₀, b₀] = 1`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct WeylPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl WeylPoly {
    pub fn one() -> Self {
        WeylPoly::monomial(0, 0, Scalar::one())
    }

    pub fn monomial(k: u32, l: u32, c: Scalar) -> Self {
        let mut p = WeylPoly::default();
        p.add_monomial(k, l, &c);
        p
    }

    fn add_monomial(&mut self, k: u32, l: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((k, l)).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(k, l));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Scalar)> {
        self.terms.iter().map(|(kl, c)| (*kl, c))
    }

    /// Largest b₀-exponent.
    pub fn b0_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, l)| l).max()
    }

    /// `self · a₀`, using `b₀^l a₀ = a₀ b₀^l − l b₀^{l−1}`.
    pub fn mul_right_a0(&self) -> Self {
        let mut out = WeylPoly::default();
        for (&(k, l), c) in &self.terms {
            out.add_monomial(k + 1, l, c);
            if l > 0 {
                out.add_monomial(k, l - 1, &c.scale(&int(-(l as i64))));
            }
        }
        out
    }

    pub fn mul_right_b0(&self) -> Self {
        WeylPoly { terms: self.terms.iter().map(|(&(k, l), c)| ((k, l + 1), c.clone())).collect() }
    }

    /// `self · other`.
    pub fn mul(&self, other: &WeylPoly) -> Self {
        let mut out = WeylPoly::default();
        for (&(k, l), c) in &other.terms {
            let mut p = self.clone();
            for _ in 0..k {
                p = p.mul_right_a0();
            }
            for _ in 0..l {
                p = p.mul_right_b0();
            }
            out.add_assign(&p.scale(c));
        }
        out
    }

    /// Act on a function of b: a₀ ↦ d/db, b₀ ↦ b.
    pub fn apply(&self, f: &CoeffFn) -> CoeffFn {
        let mut out = CoeffFn::zero();
        let mut b_powers = vec![f.clone()];
        for (&(k, l), c) in &self.terms {
            while b_powers.len() <= l as usize {
                let next = b_powers.last().unwrap().mul_b();
                b_powers.push(next);
            }
            out.add_assign(&b_powers[l as usize].derivative_pow(k).scale(c));
        }
        out
    }
}

impl ZeroModeCoeff for WeylPoly {
    fn zero() -> Self {
        WeylPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign(&mut self, other: &Self) {
        for (&(k, l), c) in &other.terms {
            self.add_monomial(k, l, c);
        }
    }

    fn scale(&self, s: &Scalar) -> Self {
        let mut out = WeylPoly::default();
        for (&(k, l), c) in &self.terms {
            out.add_monomial(k, l, &(c * s));
        }
        out
    }

    fn left_a0(&self) -> Self {
        WeylPoly { terms: self.terms.iter().map(|(&(k, l), c)| ((k + 1, l), c.clone())).collect() }
    }

    /// `b₀ a₀^k b₀^l = a₀^k b₀^{l+1} − k a₀^{k−1} b₀^l`.
    fn left_b0(&self) -> Self {
        let mut out = WeylPoly::default();
        for (&(k, l), c) in &self.terms {
            out.add_monomial(k, l + 1, c);
            if k > 0 {
                out.add_monomial(k - 1, l, &c.scale(&int(-(k as i64))));
            }
        }
        out
    }
}

impl fmt::Display for WeylPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(k, l), c)| {
                let mut s = format!("({c})");
                if k > 0 {
                    s.push_str(&format!("·a₀^{k}"));
                }
                if l > 0 {
                    s.push_str(&format!("·b₀^{l}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub type EnvelopeElement = ModeSum<WeylPoly>;

/// The PBW basis element `w a₀^k b₀^l`.
pub fn pbw(t: FourTuple, k: u32, l: u32) -> EnvelopeElement {
    ModeSum::single(t, WeylPoly::monomial(k, l, Scalar::one()))
}

/// A creation word with no zero modes.
pub fn word(t: &FourTuple) -> EnvelopeElement {
    pbw(t.clone(), 0, 0)
}

pub fn identity() -> EnvelopeElement {
    word(&FourTuple::vacuum())
}

/// Reduce a product of modes (leftmost first) to PBW form modulo K.
pub fn normal_order(modes: &[Mode]) -> EnvelopeElement {
    identity().apply_word(modes)
}

/// Right multiplication by a Weyl-algebra element.
pub fn mul_right(a: &EnvelopeElement, r: &WeylPoly) -> EnvelopeElement {
    a.map_coeffs(|p| p.mul(r))
}

/// Right multiplication by b₀.
pub fn mul_right_b0(a: &EnvelopeElement) -> EnvelopeElement {
    a.map_coeffs(WeylPoly::mul_right_b0)
}

/// Right multiplication by a₀.
pub fn mul_right_a0(a: &EnvelopeElement) -> EnvelopeElement {
    a.map_coeffs(WeylPoly::mul_right_a0)
}

fn is_left_part(m: Mode) -> bool {
    m.is_creation() || (m.field == Field::B && m.index == 0)
}

/// One normally ordered term `c·m₁⋯m_r` of a zero-mode operator.
struct ModeTerm {
    coeff: i64,
    modes: Vec<Mode>,
}

/// Arrange modes with creation parts (and b₀) to the left, keeping the
/// relative order otherwise, and return the Koszul sign of the permutation.
fn normal_arrangement(modes: &[Mode]) -> (i64, Vec<Mode>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut sign = 1;
    for &m in modes {
        if is_left_part(m) {
            if m.field.is_odd() {
                let passed = right.iter().filter(|r: &&Mode| r.field.is_odd()).count();
                if passed % 2 == 1 {
                    sign = -sign;
                }
            }
            left.push(m);
        } else {
            right.push(m);
        }
    }
    left.extend(right);
    (sign, left)
}

/// Terms of `x₍₀₎` whose annihilating tail can act nontrivially on an element
/// of weight at most `budget`.
fn zero_mode_terms(x: Sl2, budget: i64) -> Vec<ModeTerm> {
    let w = budget.max(0);
    let mut out = Vec::new();
    let tail_weight = |ms: &[Mode]| -> i64 { ms.iter().filter(|m| !is_left_part(**m)).map(|m| m.index.max(0)).sum() };
    let mut push = |coeff: i64, raw: Vec<Mode>| {
        if tail_weight(&raw) > w {
            return;
        }
        let (s, modes) = normal_arrangement(&raw);
        out.push(ModeTerm { coeff: coeff * s, modes });
    };
    match x {
        Sl2::E => push(-1, vec![Mode::new(Field::A, 0)]),
        Sl2::H => {
            // −2 Σ :a_i b_{−i}: − 2 Σ :φ_j ψ_{−j}:
            for i in -w..=w {
                push(-2, vec![Mode::new(Field::A, i), Mode::new(Field::B, -i)]);
                push(-2, vec![Mode::new(Field::Phi, i), Mode::new(Field::Psi, -i)]);
            }
        }
        Sl2::F => {
            // Σ :a_i b_j b_l: + 2 Σ :b_i φ_j ψ_l:, i + j + l = 0
            for i in -w..=w {
                for j in -w..=w {
                    let l = -i - j;
                    if l.abs() > w {
                        continue;
                    }
                    push(1, vec![Mode::new(Field::A, i), Mode::new(Field::B, j), Mode::new(Field::B, l)]);
                    push(2, vec![Mode::new(Field::B, i), Mode::new(Field::Phi, j), Mode::new(Field::Psi, l)]);
                }
            }
        }
    }
    out
}

/// Left multiplication by the zero mode `x₍₀₎`, computed from its
/// free-field expansion.
pub fn left_zero_mode(x: Sl2, a: &EnvelopeElement) -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    for term in zero_mode_terms(x, a.max_weight()) {
        let r = a.apply_word(&term.modes);
        if !r.is_zero() {
            out.add_assign(&r.scale_int(term.coeff));
        }
    }
    out
}

/// The Weyl word `x₍₀₎ mod K`.
pub fn zero_mode_residue(x: Sl2) -> WeylPoly {
    let r = left_zero_mode(x, &identity());
    let mut out = WeylPoly::zero();
    for (t, p) in r.terms() {
        assert!(t.is_vacuum(), "zero mode residue has a creation part");
        out.add_assign(p);
    }
    out
}

/// Adjoint action `x₍₀₎.A = x₍₀₎A − A x₍₀₎`.
pub fn adjoint(x: Sl2, a: &EnvelopeElement) -> EnvelopeElement {
    left_zero_mode(x, a).sub(&mul_right(a, &zero_mode_residue(x)))
}

/// E.(w a₀^k b₀^l) = −l w a₀^k b₀^{l−1}, term by term.
pub fn adjoint_e_closed(a: &EnvelopeElement) -> EnvelopeElement {
    a.map_coeffs(|p| {
        let mut out = WeylPoly::zero();
        for ((k, l), c) in p.terms() {
            if l > 0 {
                out.add_monomial(k, l - 1, &c.scale(&int(-(l as i64))));
            }
        }
        out
    })
}

/// H.(w a₀^k b₀^l) = 2(p(λ)−p(μ)+p(ν)−p(χ)+k−l) w a₀^k b₀^l, term by term.
pub fn adjoint_h_closed(a: &EnvelopeElement) -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    for (t, p) in a.terms() {
        let mut q = WeylPoly::zero();
        for ((k, l), c) in p.terms() {
            let e = 2 * (-t.part() + k as i64 - l as i64);
            q.add_monomial(k, l, &c.scale(&int(e)));
        }
        out.add_term(t.clone(), &q);
    }
    out
}

/// Casimir `2F.E. + H. + ½H.²` on operators.
pub fn casimir(a: &EnvelopeElement) -> EnvelopeElement {
    let fe = adjoint(Sl2::F, &adjoint(Sl2::E, a)).scale_int(2);
    let h = adjoint(Sl2::H, a);
    let hh = adjoint(Sl2::H, &h).scale(&Scalar::from_ratio(1, 2));
    fe.add(&h).add(&hh)
}

/// Eigenvalue of the Casimir on the part-n graded piece, computed from the
/// graded action on a probe function. `None` if the probe is not an
/// eigenvector.
pub fn casimir_graded(n: i64, probe: &CoeffFn) -> Option<Scalar> {
    let e = sl2_graded_action(Sl2::E, n, probe);
    let mut c = sl2_graded_action(Sl2::F, n, &e).scale(&Scalar::from_int(2));
    let h = sl2_graded_action(Sl2::H, n, probe);
    c.add_assign(&h);
    c.add_assign(&sl2_graded_action(Sl2::H, n, &h).scale(&Scalar::from_ratio(1, 2)));
    eigenvalue(&c, probe)
}

fn eigenvalue(image: &CoeffFn, probe: &CoeffFn) -> Option<Scalar> {
    if image.is_zero() {
        return Some(Scalar::zero());
    }
    let (j, g) = probe.terms().next()?;
    let (e, c) = g.terms().next()?;
    let lam = &image.component(j).coeff_at(e, g.denom()) * &c.inverse()?;
    (image == &probe.scale(&lam)).then_some(lam)
}

/// `D(A) = F.A + (H.A)·b₀`.
///
/// b₀ multiplies from the right, as in `F.A = 2n₀ A b₀`. On creation words
/// both sides agree; from D² on they differ once a₀ appears, and only the
/// right product makes the Casimir recursion for the lifting coefficients
/// close.
pub fn d_operator(a: &EnvelopeElement) -> EnvelopeElement {
    adjoint(Sl2::F, a).add(&mul_right_b0(&adjoint(Sl2::H, a)))
}

/// `[A, D(A), D²(A), …]` up to the first zero. Panics if the chain does not
/// terminate within `cap` steps.
pub fn d_chain(a: &EnvelopeElement, cap: usize) -> Vec<EnvelopeElement> {
    let mut out = vec![a.clone()];
    loop {
        let next = d_operator(out.last().unwrap());
        if next.is_zero() {
            return out;
        }
        assert!(out.len() <= cap, "D did not vanish after {cap} steps");
        out.push(next);
    }
}

/// `A f`: the creation words applied to `f·1`, with a₀ ↦ d/db, b₀ ↦ b.
pub fn apply_operator(a: &EnvelopeElement, f: &CoeffFn) -> FockState {
    let mut out = FockState::zero();
    for (t, p) in a.terms() {
        out.add_term(t.clone(), &p.apply(f));
    }
    out
}

/// No term carries a power of b₀.
pub fn is_b0_free(a: &EnvelopeElement) -> bool {
    a.terms().all(|(_, p)| p.b0_degree().is_none_or(|l| l == 0))
}

/// Difference between both sides of the bridge identity
/// `F₍₀₎(Af) = D(A)f − (H.A)(bf) + A(b²f′)`, computed state side on the left
/// (through the n-th product with F) and operator side on the right. For an
/// H-eigenvector `H.A = −2nA` this is `D(A)f + A(2nbf + b²f′)`.
pub fn bridge_residual(a: &EnvelopeElement, f: &CoeffFn) -> FockState {
    let lhs = crate::fock::nth_product(&Sl2::F.state(), 0, &apply_operator(a, f));
    let mut rhs = apply_operator(&d_operator(a), f);
    let bh = apply_operator(&adjoint(Sl2::H, a), &f.mul_b());
    rhs.add_assign(&bh.scale_int(-1));
    rhs.add_assign(&apply_operator(a, &f.derivative().mul_b().mul_b()));
    lhs.sub(&rhs)
}

/// Coefficients `c_n = (2n₀−1)!/(n!(n+2n₀−1)!)` for n₀ ≥ 1.
pub fn c_coeff(n0: i64, n: i64) -> BigRational {
    let fact = |m: i64| -> BigRational { (1..=m).fold(BigRational::one(), |acc, i| acc * int(i)) };
    fact(2 * n0 - 1) / (fact(n) * fact(n + 2 * n0 - 1))
}

/// Coefficients `d_n = 1/(n!(n−1)!)` for n ≥ 1.
pub fn d_coeff(n: i64) -> BigRational {
    let fact = |m: i64| -> BigRational { (1..=m).fold(BigRational::one(), |acc, i| acc * int(i)) };
    if n < 1 {
        return BigRational::zero();
    }
    BigRational::one() / (fact(n) * fact(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(spec: &str) -> FourTuple {
        spec.parse().unwrap()
    }

    #[test]
    fn normal_ordering_examples() {
        assert_eq!(normal_order(&[Mode::new(Field::A, 1), Mode::new(Field::B, -1)]), identity());
        assert_eq!(normal_order(&[Mode::new(Field::Psi, 0), Mode::new(Field::Phi, 0)]), identity());
        assert!(normal_order(&[Mode::new(Field::Phi, 0), Mode::new(Field::Phi, 0)]).is_zero());
        // a₀ b₀ stays in PBW order, b₀ a₀ picks up −1.
        let ba = normal_order(&[Mode::new(Field::B, 0), Mode::new(Field::A, 0)]);
        assert_eq!(ba, pbw(FourTuple::vacuum(), 1, 1).sub(&identity()));
    }

    #[test]
    fn residues_of_zero_modes() {
        assert_eq!(zero_mode_residue(Sl2::E), WeylPoly::monomial(1, 0, Scalar::from_int(-1)));
        let mut h = WeylPoly::monomial(1, 1, Scalar::from_int(-2));
        h.add_monomial(0, 0, &Scalar::from_int(2));
        assert_eq!(zero_mode_residue(Sl2::H), h);
        let mut f = WeylPoly::monomial(1, 2, Scalar::one());
        f.add_monomial(0, 1, &Scalar::from_int(-2));
        assert_eq!(zero_mode_residue(Sl2::F), f);
    }

    #[test]
    fn d_of_j_and_q() {
        let j = word(&t("phi[1]:psi[1]"));
        let dj = d_operator(&j);
        assert_eq!(dj, word(&t("b[1]")).scale_int(2));
        assert!(d_operator(&dj).is_zero());
        let q = word(&t("a[1]:phi[1]"));
        let dq = d_operator(&q);
        let expect = word(&t("phi[2]")).scale_int(-2).add(&pbw(t("phi[1]:b[1]"), 1, 0).scale_int(-2));
        assert_eq!(dq, expect);
        assert!(d_operator(&dq).is_zero());
    }

    #[test]
    fn closed_forms_hold() {
        for spec in ["a[1]:b[1]", "phi[2,1]:psi[1]", "a[2]", "b[1,1]"] {
            for k in 0..3 {
                for l in 0..3 {
                    let a = pbw(t(spec), k, l);
                    assert_eq!(adjoint(Sl2::E, &a), adjoint_e_closed(&a), "{spec} {k} {l}");
                    assert_eq!(adjoint(Sl2::H, &a), adjoint_h_closed(&a), "{spec} {k} {l}");
                }
            }
        }
    }

    #[test]
    fn graded_casimir() {
        let probe = CoeffFn::b_pow(3);
        for n in -2..=3 {
            assert_eq!(casimir_graded(n, &probe), Some(Scalar::from_int(2 * n * (n - 1))));
        }
    }

    #[test]
    fn bridge_on_words_and_zero_modes() {
        for spec in ["phi[1]:psi[1]", "a[1]:phi[1]", "b[1]", "a[1]:b[1]", "phi[2,1]"] {
            for (k, l) in [(0, 0), (1, 0), (0, 1), (2, 1)] {
                let residual = bridge_residual(&pbw(t(spec), k, l), &CoeffFn::b_pow(2));
                assert!(residual.is_zero(), "{spec} {k} {l}: {residual}");
            }
        }
    }

    #[test]
    fn left_and_right_b0_agree_on_words() {
        let w = word(&t("a[1]:phi[1]:b[2]"));
        assert_eq!(mul_right_b0(&w), w.map_coeffs(WeylPoly::left_b0));
    }
}
