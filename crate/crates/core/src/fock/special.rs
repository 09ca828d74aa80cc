//! Distinguished states: the N = 2 generators ω, J, Q, G and the sl₂ triple
//! E, H, F, with their expected singular OPE coefficients (rank one).

use super::coeff::{CoeffFn, ZeroModeCoeff};
use super::space::FockState;
use super::tuple::FourTuple;
use super::vertex::translation;
use crate::exactnum::Scalar;

fn mono(spec: &str, f: CoeffFn) -> FockState {
    FockState::monomial(spec.parse::<FourTuple>().expect("valid spec"), f)
}

/// ω = b_{−1}a_{−1} + φ_{−1}ψ_{−1} (central charge 0).
pub fn omega() -> FockState {
    mono("a[1]:b[1]", CoeffFn::one()).add(&mono("phi[2]:psi[1]", CoeffFn::one()))
}

/// J = φ₀ψ_{−1}.
pub fn j_state() -> FockState {
    mono("phi[1]:psi[1]", CoeffFn::one())
}

/// Q = a_{−1}φ₀.
pub fn q_state() -> FockState {
    mono("a[1]:phi[1]", CoeffFn::one())
}

/// G = ψ_{−1}b_{−1}.
pub fn g_state() -> FockState {
    mono("psi[1]:b[1]", CoeffFn::one())
}

/// E = −a_{−1}·1.
pub fn sl2_e() -> FockState {
    mono("a[1]", CoeffFn::constant(Scalar::from_int(-1)))
}

/// H = −2a_{−1}b₀ − 2φ₀ψ_{−1}.
pub fn sl2_h() -> FockState {
    mono("a[1]", CoeffFn::b_pow(1).scale(&Scalar::from_int(-2)))
        .add(&mono("phi[1]:psi[1]", CoeffFn::constant(Scalar::from_int(-2))))
}

/// F = a_{−1}b₀² + 2b₀φ₀ψ_{−1}.
pub fn sl2_f() -> FockState {
    mono("a[1]", CoeffFn::b_pow(2)).add(&mono("phi[1]:psi[1]", CoeffFn::b_pow(1).scale(&Scalar::from_int(2))))
}

/// Which sl₂ generator acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2 {
    E,
    H,
    F,
}

impl Sl2 {
    pub fn state(self) -> FockState {
        match self {
            Sl2::E => sl2_e(),
            Sl2::H => sl2_h(),
            Sl2::F => sl2_f(),
        }
    }
}

/// Zero-mode action on the part-n graded piece `O ⊗ C_n`:
/// E ↦ −f′, H ↦ −2nf − 2bf′, F ↦ 2nbf + b²f′.
pub fn sl2_graded_action(x: Sl2, n: i64, f: &CoeffFn) -> CoeffFn {
    let d = f.derivative();
    match x {
        Sl2::E => d.scale(&Scalar::from_int(-1)),
        Sl2::H => {
            let mut out = f.scale(&Scalar::from_int(-2 * n));
            out.add_assign(&d.mul_b().scale(&Scalar::from_int(-2)));
            out
        }
        Sl2::F => {
            let mut out = f.mul_b().scale(&Scalar::from_int(2 * n));
            out.add_assign(&d.mul_b().mul_b());
            out
        }
    }
}

/// One expected OPE: `u_{(j)} v = expected` for every listed j, and zero for
/// every other j ≥ 0.
pub struct OpeCase {
    pub name: &'static str,
    pub u: FockState,
    pub v: FockState,
    pub singular: Vec<(i64, FockState)>,
}

/// The singular parts of the N = 2 OPEs at rank one.
pub fn n2_ope_table() -> Vec<OpeCase> {
    let (l, j, q, g) = (omega(), j_state(), q_state(), g_state());
    let one = FockState::vacuum();
    vec![
        OpeCase { name: "LL", u: l.clone(), v: l.clone(), singular: vec![(0, translation(&l)), (1, l.scale_int(2))] },
        OpeCase {
            name: "LJ",
            u: l.clone(),
            v: j.clone(),
            singular: vec![(0, translation(&j)), (1, j.clone()), (2, one.scale_int(-1))],
        },
        OpeCase { name: "LQ", u: l.clone(), v: q.clone(), singular: vec![(0, translation(&q)), (1, q.clone())] },
        OpeCase { name: "LG", u: l.clone(), v: g.clone(), singular: vec![(0, translation(&g)), (1, g.scale_int(2))] },
        OpeCase { name: "JJ", u: j.clone(), v: j.clone(), singular: vec![(1, one.clone())] },
        OpeCase { name: "JQ", u: j.clone(), v: q.clone(), singular: vec![(0, q.clone())] },
        OpeCase { name: "JG", u: j.clone(), v: g.clone(), singular: vec![(0, g.scale_int(-1))] },
        OpeCase { name: "QQ", u: q.clone(), v: q.clone(), singular: vec![] },
        OpeCase {
            name: "QG",
            u: q.clone(),
            v: g.clone(),
            singular: vec![(0, l.clone()), (1, j.clone()), (2, one.clone())],
        },
        OpeCase { name: "GG", u: g.clone(), v: g.clone(), singular: vec![] },
    ]
}

/// Affine sl₂ at level 0: `x_{(0)} y = [x, y]` and `x_{(j)} y = 0` for j ≥ 1.
pub fn sl2_ope_table() -> Vec<OpeCase> {
    let (e, h, f) = (sl2_e(), sl2_h(), sl2_f());
    let pairs = [
        ("EE", e.clone(), e.clone(), FockState::zero()),
        ("EH", e.clone(), h.clone(), e.scale_int(-2)),
        ("EF", e.clone(), f.clone(), h.clone()),
        ("HE", h.clone(), e.clone(), e.scale_int(2)),
        ("HH", h.clone(), h.clone(), FockState::zero()),
        ("HF", h.clone(), f.clone(), f.scale_int(-2)),
        ("FE", f.clone(), e.clone(), h.scale_int(-1)),
        ("FH", f.clone(), h.clone(), f.scale_int(2)),
        ("FF", f.clone(), f.clone(), FockState::zero()),
    ];
    pairs
        .into_iter()
        .map(|(name, u, v, bracket)| {
            let singular = if bracket.is_zero() { vec![] } else { vec![(0, bracket)] };
            OpeCase { name, u, v, singular }
        })
        .collect()
}
