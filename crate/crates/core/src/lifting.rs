//! Invariant liftings `L(w, f)` of modular forms and what is built on them:
//! the lifting basis, layer-by-layer decomposition of invariant states,
//! structure constants, the Hermitian form, the chiral differential and
//! Hecke operators acting on states.
//!
//! For a creation word w of part n₀ ≥ 1 and f ∈ M_{2n₀}
//! `L(w, f) = Σ_n c_n Dⁿ(w) f^{(n)}`. For part 0 and a constant c
//! `L(w, c) = c·(w + Σ_{n≥1} d_n Dⁿ(w) E^{(n−1)})` with E = (Π/6)E2.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::{BigRational, Signed, Zero};
use rayon::prelude::*;

use crate::brackets::{bracket, e_derivative, Operand};
use crate::envelope::{
    adjoint, apply_operator, bridge_residual, c_coeff, d_chain, d_coeff, mul_right_a0, mul_right_b0, pbw, word,
    EnvelopeElement,
};
use crate::error::{Error, Result};
use crate::exactnum::{QSeries, Scalar};
use crate::fock::{
    enumerate_fourtuples, j_state, nth_product, q_state, CoeffFn, Field, FockState, FourTuple, Mode, Sl2,
};
use crate::linalg::{rank, Matrix};
use crate::modforms::{coset_sum_b, decompose, e4, hecke_t, DecomposeConfig, Gamma, ModularForm};

/// An invariant state with leading term `leading ⊗ form`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lifting {
    pub leading: FourTuple,
    pub form: ModularForm,
    pub state: FockState,
}

impl Lifting {
    pub fn part(&self) -> i64 {
        self.leading.part()
    }

    pub fn prec(&self) -> Option<i64> {
        self.state.prec_floor()
    }

    /// The coefficient of the leading monomial, which recovers the form.
    pub fn alpha_projection(&self) -> QSeries {
        self.state.coeff(&self.leading).and_then(CoeffFn::as_series).unwrap_or_else(QSeries::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "leading": self.leading.spec(),
            "leading_modes": self.leading.to_string(),
            "part": self.part(),
            "form": { "weight": self.form.weight, "series": self.form.series },
            "state": self.state.to_json(),
        })
    }
}

/// Both states agree to their common precision.
pub fn states_agree(a: &FockState, b: &FockState) -> bool {
    a.sub(b).is_zero()
}

fn chain(w: &FourTuple) -> Vec<EnvelopeElement> {
    d_chain(&word(w), 2 * w.weight() as usize + 4)
}

fn constant_of(f: &QSeries) -> Result<Scalar> {
    if let Some((e, _)) = f.terms().find(|(e, _)| *e != 0) {
        return Err(Error::NonConstantSeries(format!("weight-0 form has a q^{e}/{} term", f.denom())));
    }
    Ok(f.coeff(0))
}

/// The bridge identity between the operator-side F-adjoint and the
/// state-side zero mode of F, checked once per process.
fn self_test() -> Result<()> {
    static CHECK: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    CHECK
        .get_or_init(|| {
            let probes = [
                word(&"phi[1]:psi[1]".parse().unwrap()),
                word(&"a[1]:phi[1]".parse().unwrap()),
                pbw("phi[1]:b[1]".parse().unwrap(), 1, 1),
            ];
            let fns = [CoeffFn::b_pow(2), CoeffFn::series(e4(6))];
            for a in &probes {
                for f in &fns {
                    let r = bridge_residual(a, f);
                    if !r.is_zero() {
                        return Err(format!("bridge identity fails on {a} with residual {r}"));
                    }
                }
            }
            Ok(())
        })
        .clone()
        .map_err(Error::SelfTest)
}

fn lift_from_chain(w: &FourTuple, chain: &[EnvelopeElement], f: &ModularForm, prec: i64) -> Result<Option<Lifting>> {
    let n0 = w.part();
    if n0 < 0 || f.weight != 2 * n0 || f.series.is_zero() {
        return Ok(None);
    }
    let mut state = FockState::zero();
    if n0 == 0 {
        let c = constant_of(&f.series)?;
        state.add_term(w.clone(), &CoeffFn::one());
        for (n, dn) in chain.iter().enumerate().skip(1) {
            let e = CoeffFn::series(e_derivative(n as i64 - 1, prec));
            state.add_assign(&apply_operator(dn, &e).scale(&Scalar::from_rational(d_coeff(n as i64))));
        }
        state = state.scale(&c);
    } else {
        for (n, dn) in chain.iter().enumerate() {
            let fd = CoeffFn::series(f.series.tau_derivative_pow(n as u32));
            state.add_assign(&apply_operator(dn, &fd).scale(&Scalar::from_rational(c_coeff(n0, n as i64))));
        }
    }
    Ok(Some(Lifting { leading: w.clone(), form: f.clone(), state }))
}

/// `L(w, f)`, or `None` when the weight of f is not 2·part(w) or f = 0.
///
/// A weight-0 form must be constant; `prec` bounds the E2 series used for
/// part-0 words.
pub fn lift(w: &FourTuple, f: &ModularForm, prec: i64) -> Result<Option<Lifting>> {
    self_test()?;
    lift_from_chain(w, &chain(w), f, prec)
}

/// The operator A with `L(w, f) = A f`: `Σ c_n Dⁿ(w) a₀ⁿ` for part n₀ ≥ 1,
/// and the correction `Σ_{n≥1} d_n Dⁿ(w) a₀^{n−1}` for part 0.
pub fn invariance_operator(w: &FourTuple) -> Option<EnvelopeElement> {
    let n0 = w.part();
    if n0 < 0 {
        return None;
    }
    let mut a = EnvelopeElement::zero();
    for (n, dn) in chain(w).iter().enumerate() {
        let n = n as i64;
        let (coef, k) = if n0 == 0 {
            if n == 0 {
                continue;
            }
            (d_coeff(n), n - 1)
        } else {
            (c_coeff(n0, n), n)
        };
        let t = (0..k).fold(dn.clone(), |acc, _| mul_right_a0(&acc));
        a.add_assign(&t.scale(&Scalar::from_rational(coef)));
    }
    Some(a)
}

/// Outcome of the operator equations for an invariance operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub e_kills: bool,
    pub h_eigen: bool,
    pub f_relation: bool,
    /// Part 0 only: `F₍₀₎(w·1) = A·1`.
    pub twisted: Option<bool>,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.e_kills && self.h_eigen && self.f_relation && self.twisted.unwrap_or(true)
    }
}

/// Checks `E.A = 0`, `H.A = −2mA`, `F.A = 2m A b₀` with m = n₀ (m = 1 for
/// n₀ = 0). For n₀ = 0, A is the correction operator of the word w and
/// additionally `F₍₀₎(w·1) = A·1` must hold.
pub fn verify_invariance(w: &FourTuple, a: &EnvelopeElement, n0: i64) -> InvarianceReport {
    let m = if n0 == 0 { 1 } else { n0 };
    let e_kills = adjoint(Sl2::E, a).is_zero();
    let h_eigen = adjoint(Sl2::H, a) == a.scale_int(-2 * m);
    let f_relation = adjoint(Sl2::F, a) == mul_right_b0(a).scale_int(2 * m);
    let twisted = (n0 == 0).then(|| {
        let lhs = nth_product(&Sl2::F.state(), 0, &FockState::monomial(w.clone(), CoeffFn::one()));
        lhs == apply_operator(a, &CoeffFn::one())
    });
    InvarianceReport { e_kills, h_eigen, f_relation, twisted }
}

fn basis_forms(gamma: &Gamma, p: i64, prec: i64) -> Result<Vec<ModularForm>> {
    if p == 0 {
        return Ok(if gamma.dim(0)? > 0 { vec![ModularForm::one()] } else { Vec::new() });
    }
    Ok(gamma.basis(2 * p, prec)?.into_iter().map(|f| ModularForm::new(2 * p, f)).collect())
}

/// One lifting per (tuple of weight k and the given charge, basis form of
/// weight 2·part), in tuple order and then basis order.
pub fn lifting_basis(gamma: &Gamma, k: u32, charge: Option<i64>, prec: i64) -> Result<Vec<Lifting>> {
    self_test()?;
    let tuples: Vec<FourTuple> = enumerate_fourtuples(k, charge, None).into_iter().filter(|t| t.part() >= 0).collect();
    let mut bases = BTreeMap::new();
    for t in &tuples {
        if !bases.contains_key(&t.part()) {
            bases.insert(t.part(), basis_forms(gamma, t.part(), prec)?);
        }
    }
    let groups: Vec<Result<Vec<Lifting>>> = tuples
        .par_iter()
        .filter(|t| !bases[&t.part()].is_empty())
        .map(|t| {
            let ch = chain(t);
            bases[&t.part()]
                .iter()
                .map(|f| lift_from_chain(t, &ch, f, prec).map(|l| l.expect("basis forms are nonzero")))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for g in groups {
        out.extend(g?);
    }
    Ok(out)
}

/// One peeled layer term: the lifting of `form` on `leading`, with the
/// coordinates of `form` in the basis of M_{2·part}.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerTerm {
    pub leading: FourTuple,
    pub form: ModularForm,
    pub coords: Vec<Scalar>,
}

/// Writes an invariant state as a sum of liftings, peeling the layer of
/// minimal part each time.
pub fn decompose_liftings(s: &FockState, gamma: &Gamma, prec: i64, cfg: &DecomposeConfig) -> Result<Vec<LayerTerm>> {
    let prec = s.prec_floor().map_or(prec, |p| p.min(prec));
    let mut rest = s.clone();
    let mut out = Vec::new();
    while let Some(p) = rest.min_part() {
        if p < 0 {
            return Err(Error::NotInvariant(format!("nonzero component of part {p}")));
        }
        let layer: Vec<(FourTuple, CoeffFn)> =
            rest.terms().filter(|(t, _)| t.part() == p).map(|(t, c)| (t.clone(), c.clone())).collect();
        for (t, c) in layer {
            let g = c.as_series().ok_or_else(|| Error::NonConstantCoefficient(c.b_degree().unwrap_or(0)))?;
            let dec = decompose(&g, gamma, 2 * p, cfg)?;
            let form = ModularForm::new(2 * p, g);
            let l = lift(&t, &form, prec)?.expect("nonzero layer coefficient");
            rest = rest.sub(&l.state);
            out.push(LayerTerm { leading: t, form, coords: dec.coords });
        }
        if rest.min_part().is_some_and(|q| q <= p) {
            return Err(Error::NotInvariant(format!("layer of part {p} did not cancel")));
        }
    }
    Ok(out)
}

/// True iff every lifting in the decomposition of s has part ≥ n.
pub fn ideal_filter(s: &FockState, n: i64, gamma: &Gamma, prec: i64, cfg: &DecomposeConfig) -> Result<bool> {
    Ok(decompose_liftings(s, gamma, prec, cfg)?.iter().all(|t| t.leading.part() >= n))
}

/// One layer term of a product of liftings, compared with the modified
/// bracket of index `part − k − l`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTerm {
    pub leading: FourTuple,
    pub bracket_index: i64,
    /// The constant c with form = c·bracket; `None` if not proportional.
    pub constant: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub terms: Vec<StructureTerm>,
}

impl StructureReport {
    pub fn proportional(&self) -> bool {
        self.terms.iter().all(|t| t.constant.is_some())
    }
}

fn operand(f: &ModularForm) -> Operand {
    if f.weight == 0 {
        Operand::One
    } else {
        Operand::Form(f.clone())
    }
}

/// c with `form = c·br` to the common precision.
fn proportionality(form: &QSeries, br: &QSeries) -> Option<Scalar> {
    let Some((e, b)) = br.terms().find(|(_, c)| !c.is_zero()) else {
        return form.is_zero().then(Scalar::zero);
    };
    let b = b.as_rational()?;
    let c = form.coeff_at(e, br.denom()).scale(&b.recip());
    form.agrees_with(&br.scale(&c)).then_some(c)
}

/// Decomposes `L(w, f1)_{(n)} L(v, f2)` and compares every layer form with
/// the modified bracket `[f1, f2]~_{part − part(w) − part(v)}`.
#[allow(clippy::too_many_arguments)]
pub fn structure_constants(
    w: &FourTuple,
    f1: &ModularForm,
    v: &FourTuple,
    f2: &ModularForm,
    n: i64,
    gamma: &Gamma,
    prec: i64,
    cfg: &DecomposeConfig,
) -> Result<StructureReport> {
    let (Some(l1), Some(l2)) = (lift(w, f1, prec)?, lift(v, f2, prec)?) else {
        return Ok(StructureReport { terms: Vec::new() });
    };
    let product = nth_product(&l1.state, n, &l2.state);
    let (o1, o2) = (operand(f1), operand(f2));
    let mut terms = Vec::new();
    for lt in decompose_liftings(&product, gamma, prec, cfg)? {
        let m = lt.leading.part() - w.part() - v.part();
        let constant = if m < 0 {
            None
        } else {
            let br = bracket(&o1, &o2, m, prec)?;
            proportionality(&lt.form.series, &br.series)
        };
        terms.push(StructureTerm { leading: lt.leading, bracket_index: m, constant });
    }
    Ok(StructureReport { terms })
}

fn constant_coeff(c: &CoeffFn) -> Result<Scalar> {
    let g = c.as_series().ok_or_else(|| Error::NonConstantCoefficient(c.b_degree().unwrap_or(0)))?;
    constant_of(&g)
}

/// The contragredient partner of a creation mode: α(a_n) = n·b_{−n},
/// α(b_n) = −(1/n)·a_{−n}, α(ψ_n) = φ_{−n}, α(φ_n) = ψ_{−n}.
fn alpha(m: Mode) -> (Mode, Scalar) {
    let i = m.index;
    match m.field {
        Field::A => (Mode::new(Field::B, -i), Scalar::from_int(i)),
        Field::B => (Mode::new(Field::A, -i), Scalar::from_ratio(-1, i)),
        Field::Psi => (Mode::new(Field::Phi, -i), Scalar::one()),
        Field::Phi => (Mode::new(Field::Psi, -i), Scalar::one()),
    }
}

fn pair_monomial(t: &FourTuple, v: &FockState) -> Result<Scalar> {
    match t.split_first() {
        None => match v.coeff(&FourTuple::vacuum()) {
            Some(c) => constant_coeff(c),
            None => Ok(Scalar::zero()),
        },
        Some((x, rest)) => {
            let (y, c) = alpha(x);
            let av = v.apply_mode(y).scale(&c);
            if av.is_zero() {
                return Ok(Scalar::zero());
            }
            pair_monomial(&rest, &av)
        }
    }
}

/// The Hermitian form with `(1, 1) = 1` and `(x u, v) = (u, α(x) v)`,
/// antilinear in the first argument. Coefficients must be constants.
pub fn hermitian_form(u: &FockState, v: &FockState) -> Result<Scalar> {
    for (_, c) in v.terms() {
        constant_coeff(c)?;
    }
    let mut out = Scalar::zero();
    for (t, c) in u.terms() {
        let c = constant_coeff(c)?;
        out += &(&c.conj() * &pair_monomial(t, v)?);
    }
    Ok(out)
}

/// Gram matrix of the hermitian form on the given monomials.
pub fn gram_matrix(monomials: &[FourTuple]) -> Result<Vec<Vec<Scalar>>> {
    let states: Vec<FockState> =
        monomials.iter().map(|t| FockState::monomial(t.clone(), CoeffFn::one())).collect();
    states.iter().map(|u| states.iter().map(|v| hermitian_form(u, v)).collect()).collect()
}

/// Off-diagonal entries vanish and diagonal entries are positive rationals.
pub fn is_diagonal_positive(g: &[Vec<Scalar>]) -> bool {
    g.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| {
            if i == j {
                x.as_rational().is_some_and(|r| r.is_positive())
            } else {
                x.is_zero()
            }
        })
    })
}

/// `d(s) = −Q_{(0)} s`.
pub fn chiral_differential(s: &FockState) -> FockState {
    nth_product(&q_state(), 0, s).scale_int(-1)
}

/// The weight-0 part of the invariant complex: cochain dimensions, ranks of
/// the differential and cohomology dimensions, indexed by charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub cochains: Vec<usize>,
    pub ranks: Vec<usize>,
    pub cohomology: Vec<usize>,
}

pub fn cohomology_weight0(gamma: &Gamma, prec: i64, cfg: &DecomposeConfig) -> Result<CohomologyReport> {
    let max_charge = enumerate_fourtuples(0, None, None).iter().map(FourTuple::charge).max().unwrap_or(0);
    let bases: Vec<Vec<Lifting>> =
        (0..=max_charge + 1).map(|c| lifting_basis(gamma, 0, Some(c), prec)).collect::<Result<_>>()?;
    let mut ranks = Vec::new();
    for c in 0..=max_charge as usize {
        let mut columns = BTreeMap::new();
        let mut seen: BTreeMap<FourTuple, usize> = BTreeMap::new();
        for l in &bases[c + 1] {
            let i = seen.entry(l.leading.clone()).or_insert(0);
            columns.insert((l.leading.clone(), *i), columns.len());
            *i += 1;
        }
        let mut m: Matrix = Vec::new();
        for l in &bases[c] {
            let mut row = vec![BigRational::zero(); columns.len()];
            for lt in decompose_liftings(&chiral_differential(&l.state), gamma, prec, cfg)? {
                for (i, x) in lt.coords.iter().enumerate() {
                    let col = columns
                        .get(&(lt.leading.clone(), i))
                        .ok_or_else(|| Error::NotInvariant(format!("image term {} outside the basis", lt.leading)))?;
                    let r = x.as_rational().ok_or(Error::NonRationalCoefficient(x.min_degree().unwrap_or(0)))?;
                    row[*col] += r;
                }
            }
            m.push(row);
        }
        ranks.push(rank(&m));
    }
    let cochains: Vec<usize> = bases[..=max_charge as usize].iter().map(Vec::len).collect();
    let cohomology = (0..cochains.len()).map(|c| cochains[c] - ranks[c] - if c > 0 { ranks[c - 1] } else { 0 }).collect();
    Ok(CohomologyReport { cochains, ranks, cohomology })
}

fn rational_pow(r: &BigRational, e: i64) -> BigRational {
    let p = num::pow(r.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// The Hecke operator on a state whose leading form has weight 2k: each
/// monomial of part p is scaled by `(n/d²)^p`, its coefficient summed over
/// `τ ↦ (aτ + b)/d` for ad = n and 0 ≤ b < d, and the total multiplied by
/// `n^{k−1}`.
pub fn hecke_on_state(s: &FockState, k: i64, n: i64) -> Result<FockState> {
    assert!(n > 0, "hecke_on_state needs n > 0");
    let nn = BigRational::from_integer(n.into());
    let norm = rational_pow(&nn, k - 1);
    let mut out = FockState::zero();
    for (t, c) in s.terms() {
        let g = c.as_series().ok_or_else(|| Error::NonConstantCoefficient(c.b_degree().unwrap_or(0)))?;
        let mut acc: Option<QSeries> = None;
        for d in (1..=n).filter(|d| n % d == 0) {
            let scale = rational_pow(&(&nn / BigRational::from_integer((d * d).into())), t.part());
            let term = coset_sum_b(&g, n / d, d)?.scale_rational(&(&scale * &norm));
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
        }
        out.add_term(t.clone(), &CoeffFn::series(acc.expect("n has a divisor")));
    }
    Ok(out)
}

/// Result of comparing `T(n) L(w, f)` with `L(w, T(n) f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeCheck {
    pub agree: bool,
    /// Precision of the comparison.
    pub prec: Option<i64>,
}

pub fn hecke_commutation_check(w: &FourTuple, f: &ModularForm, n: i64, prec: i64) -> Result<HeckeCheck> {
    let tf = ModularForm::new(f.weight, hecke_t(f.weight, n, &f.series)?);
    let lhs = match lift(w, f, prec)? {
        Some(l) => hecke_on_state(&l.state, w.part(), n)?,
        None => FockState::zero(),
    };
    let rhs = lift(w, &tf, prec)?.map(|l| l.state).unwrap_or_default();
    let prec = [lhs.prec_floor(), rhs.prec_floor()].into_iter().flatten().min();
    Ok(HeckeCheck { agree: states_agree(&lhs, &rhs), prec })
}

/// J̃ = L(φ₀ψ_{−1}, 1).
pub fn j_tilde(prec: i64) -> Result<FockState> {
    let j = j_state();
    let t = j.terms().next().expect("J is a monomial").0.clone();
    Ok(lift(&t, &ModularForm::one(), prec)?.expect("part 0").state)
}

/// Q̃ = L(a_{−1}φ₀, 1).
pub fn q_tilde(prec: i64) -> Result<FockState> {
    let q = q_state();
    let t = q.terms().next().expect("Q is a monomial").0.clone();
    Ok(lift(&t, &ModularForm::one(), prec)?.expect("part 0").state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;
    use crate::fock::g_state;
    use crate::fock::mode_commutator;
    use crate::modforms::e2;

    fn tup(s: &str) -> FourTuple {
        s.parse().unwrap()
    }

    fn mono(s: &str, g: QSeries) -> FockState {
        FockState::monomial(tup(s), CoeffFn::series(g))
    }

    fn pi_third() -> Scalar {
        Scalar::monomial(1, BigRational::new(1.into(), 3.into()))
    }

    #[test]
    fn j_tilde_closed_form() {
        let expect = mono("phi[1]:psi[1]", QSeries::one()).add(&mono("b[1]", e2(20).scale(&pi_third())));
        assert_eq!(j_tilde(20).unwrap(), expect);
    }

    #[test]
    fn q_tilde_closed_form() {
        let m = pi_third().scale(&-BigRational::one());
        let expect = mono("a[1]:phi[1]", QSeries::one())
            .add(&mono("phi[2]", e2(20).scale(&m)))
            .add(&mono("phi[1]:b[1]", e2(20).tau_derivative().scale(&m)));
        assert_eq!(q_tilde(20).unwrap(), expect);
    }

    #[test]
    fn weight_mismatch_gives_zero() {
        assert!(lift(&tup("b[1]"), &ModularForm::new(4, e4(10)), 10).unwrap().is_none());
    }

    #[test]
    fn second_coefficient_for_part_two() {
        assert_eq!(c_coeff(2, 0), BigRational::one());
        assert_eq!(c_coeff(2, 1), BigRational::new(1.into(), 4.into()));
        let l = lift(&tup("phi[1]:b[1]"), &ModularForm::new(4, e4(10)), 10).unwrap().unwrap();
        assert_eq!(l.alpha_projection(), e4(10));
        assert_eq!(l.state.b_degree(), 0);
    }

    #[test]
    fn weight_one_basis() {
        let b = lifting_basis(&Gamma::Sl2z, 1, None, 10).unwrap();
        let specs: Vec<String> = b.iter().map(|l| l.leading.spec()).collect();
        assert_eq!(specs.len(), 4, "{specs:?}");
        for s in ["a[1]:phi[1]", "phi[1]:psi[1]", "phi[1]:b[1]", "phi[2,1]"] {
            assert!(specs.contains(&s.to_string()), "{s} missing from {specs:?}");
        }
    }

    #[test]
    fn invariance_of_operators() {
        for s in ["phi[1]:psi[1]", "a[1]:phi[1]", "phi[1]:b[1]", "b[1]", "phi[2,1]", "a[1]:b[1]", "1"] {
            let w = tup(s);
            let a = invariance_operator(&w).unwrap();
            let r = verify_invariance(&w, &a, w.part());
            assert!(r.holds(), "{s}: {r:?}");
        }
        let j = tup("phi[1]:psi[1]");
        assert!(!verify_invariance(&j, &EnvelopeElement::zero(), 0).holds());
    }

    #[test]
    fn decomposition_round_trip() {
        let g = Gamma::Sl2z;
        let cfg = DecomposeConfig { margin: 4 };
        let jt = j_tilde(12).unwrap();
        let d = decompose_liftings(&jt, &g, 12, &cfg).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].coords, vec![Scalar::one()]);
        let l = lift(&tup("phi[1]:b[1]"), &ModularForm::new(4, e4(12)), 12).unwrap().unwrap();
        let s = jt.scale_int(3).add(&l.state.scale_int(-2));
        let d = decompose_liftings(&s, &g, 12, &cfg).unwrap();
        let coords: Vec<Scalar> = d.iter().map(|t| t.coords[0].clone()).collect();
        assert_eq!(coords, vec![Scalar::from_int(3), Scalar::from_int(-2)]);
        assert!(ideal_filter(&l.state, 2, &g, 12, &cfg).unwrap());
        assert!(!ideal_filter(&jt, 1, &g, 12, &cfg).unwrap());
    }

    #[test]
    fn j_tilde_products() {
        let g = Gamma::Sl2z;
        let cfg = DecomposeConfig { margin: 4 };
        let j = tup("phi[1]:psi[1]");
        let one = ModularForm::one();
        let r0 = structure_constants(&j, &one, &j, &one, 0, &g, 12, &cfg).unwrap();
        assert!(r0.terms.is_empty());
        let r1 = structure_constants(&j, &one, &j, &one, 1, &g, 12, &cfg).unwrap();
        assert!(r1.proportional());
        let vac = r1.terms.iter().find(|t| t.leading.is_vacuum()).unwrap();
        assert_eq!(vac.constant, Some(Scalar::one()));
    }

    #[test]
    fn hermitian_values() {
        let st = |s: &str| FockState::monomial(tup(s), CoeffFn::one());
        assert_eq!(hermitian_form(&FockState::vacuum(), &FockState::vacuum()).unwrap(), Scalar::one());
        assert_eq!(hermitian_form(&st("a[1]:b[1]"), &st("a[1]:b[1]")).unwrap(), Scalar::one());
        assert_eq!(hermitian_form(&st("b[2]"), &st("b[2]")).unwrap(), Scalar::from_ratio(1, 2));
        assert_eq!(hermitian_form(&st("a[2]"), &st("a[2]")).unwrap(), Scalar::from_int(2));
        assert_eq!(hermitian_form(&st("a[1]:b[1]"), &st("phi[2]:psi[1]")).unwrap(), Scalar::zero());
        let u = st("b[1]").scale(&Scalar::pi());
        assert_eq!(hermitian_form(&u, &u).unwrap(), Scalar::pi_pow(2).scale(&-BigRational::one()));
        let mut tuples = Vec::new();
        for w in 0..=3 {
            tuples.extend(enumerate_fourtuples(w, None, Some(0)));
        }
        assert!(is_diagonal_positive(&gram_matrix(&tuples).unwrap()));
    }

    #[test]
    fn differential_and_cohomology() {
        let qt = q_tilde(12).unwrap();
        assert!(chiral_differential(&FockState::vacuum()).is_zero());
        assert!(chiral_differential(&chiral_differential(&qt)).is_zero());
        let gt = g_state();
        let jt = j_tilde(12).unwrap();
        let c = mode_commutator(&qt, 0, &gt, 1, &jt);
        assert!(states_agree(&c, &jt));
        let r = cohomology_weight0(&Gamma::Sl2z, 12, &DecomposeConfig { margin: 4 }).unwrap();
        assert_eq!(r.cohomology, vec![1, 0]);
    }

    #[test]
    fn hecke_commutes_with_lifting() {
        let r = hecke_commutation_check(&tup("phi[1]:b[1]"), &ModularForm::new(4, e4(20)), 2, 20).unwrap();
        assert!(r.agree, "{r:?}");
        let r = hecke_commutation_check(&tup("phi[1]:psi[1]"), &ModularForm::one(), 2, 20).unwrap();
        assert!(r.agree, "{r:?}");
        assert!(r.prec.unwrap() >= 10);
    }
}
