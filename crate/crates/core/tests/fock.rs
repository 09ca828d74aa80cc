//! Vertex-algebra structure of the Fock space: OPE tables, vacuum and
//! translation rules, the conformal vector and zero modes of the sl₂ triple.

use chiral_core::exactnum::Scalar;
use chiral_core::fock::{
    enumerate_fourtuples, g_state, j_state, n2_ope_table, nth_product, omega, q_state, sl2_f, sl2_graded_action,
    sl2_h, sl2_ope_table, translation, CoeffFn, Field, FockState, FourTuple, Mode, Sl2, ZeroModeCoeff,
};
use chiral_core::modforms::e4;

fn st(spec: &str, f: CoeffFn) -> FockState {
    FockState::monomial(spec.parse().unwrap(), f)
}

fn ope_holds(table: Vec<chiral_core::fock::OpeCase>) {
    for c in table {
        for j in 0..=c.u.max_weight() + c.v.max_weight() + 1 {
            let expect = c.singular.iter().find(|(k, _)| *k == j).map(|(_, s)| s.clone()).unwrap_or_default();
            let got = nth_product(&c.u, j, &c.v);
            assert!(got.sub(&expect).is_zero(), "{} at j = {j}: got {got}", c.name);
        }
    }
}

#[test]
fn n2_ope_table_holds() {
    ope_holds(n2_ope_table());
}

#[test]
fn sl2_ope_table_holds() {
    ope_holds(sl2_ope_table());
}

#[test]
fn f_zero_mode_on_j() {
    // F_(0) J = 2 b_{-1}.
    let got = nth_product(&sl2_f(), 0, &j_state());
    assert_eq!(got, st("b[1]", CoeffFn::b_pow(0).scale(&Scalar::from_int(2))));
}

#[test]
fn omega_one_is_weight() {
    let samples = ["a[2]:b[1]", "phi[3,1]:psi[2]", "a[1]:phi[1]:psi[1]:b[1]", "b[2,1]", "psi[1]"];
    for s in samples {
        let u = st(s, CoeffFn::b_pow(2));
        let t: FourTuple = s.parse().unwrap();
        assert_eq!(nth_product(&omega(), 1, &u), u.scale_int(t.weight()), "{s}");
    }
}

#[test]
fn omega_zero_is_translation() {
    for s in ["a[1]", "b[1]:phi[2]", "psi[1]:phi[1]"] {
        let u = st(s, CoeffFn::series(e4(6)).mul_b());
        assert!(nth_product(&omega(), 0, &u).sub(&translation(&u)).is_zero(), "{s}");
    }
}

#[test]
fn j_zero_is_charge() {
    for t in enumerate_fourtuples(3, None, None) {
        let u = FockState::monomial(t.clone(), CoeffFn::one());
        assert_eq!(nth_product(&j_state(), 0, &u), u.scale_int(t.charge()), "{}", t.spec());
    }
}

#[test]
fn vacuum_products() {
    let u = st("a[1]:phi[2]:b[1]", CoeffFn::b_pow(1));
    let vac = FockState::vacuum();
    assert_eq!(nth_product(&vac, -1, &u), u);
    assert_eq!(nth_product(&u, -1, &vac), u);
    assert_eq!(nth_product(&u, -2, &vac), translation(&u));
    for n in 0..4 {
        assert!(nth_product(&vac, n, &u).is_zero());
        assert!(nth_product(&u, n, &vac).is_zero());
    }
}

#[test]
fn q_and_g_generate_omega() {
    // Q_(0)G = ω.
    assert_eq!(nth_product(&q_state(), 0, &g_state()), omega());
}

#[test]
fn truncation_bound() {
    let u = st("a[2]:phi[1]", CoeffFn::b_pow(1));
    let v = st("psi[2]:b[1]", CoeffFn::b_pow(2));
    let bound = u.max_weight() + v.max_weight();
    for n in bound..bound + 4 {
        assert!(nth_product(&u, n, &v).is_zero(), "n = {n}");
    }
}

#[test]
fn odd_modes_anticommute() {
    let vac = FockState::vacuum();
    let phi = Mode::new(Field::Phi, -1);
    let psi = Mode::new(Field::Psi, -2);
    let ab = vac.apply_word(&[phi, psi]);
    let ba = vac.apply_word(&[psi, phi]);
    assert_eq!(ab, ba.scale_int(-1));
    assert!(vac.apply_word(&[phi, phi]).is_zero());
}

#[test]
fn zero_modes_on_functions() {
    // H_(0) and F_(0) on f(b)·1 reproduce the part-0 graded action.
    let f = CoeffFn::b_pow(3).mul_series(&e4(5));
    let u = FockState::function(f.clone());
    for (x, state) in [(Sl2::H, sl2_h()), (Sl2::F, sl2_f())] {
        let expect = FockState::function(sl2_graded_action(x, 0, &f));
        assert_eq!(nth_product(&state, 0, &u), expect, "{x:?}");
    }
}

#[test]
fn enumeration_is_deterministic_and_graded() {
    for w in 0..5 {
        let a = enumerate_fourtuples(w, None, None);
        assert_eq!(a, enumerate_fourtuples(w, None, None));
        assert!(a.iter().all(|t| t.weight() == w as i64));
        let by_charge: usize = (-4..=4).map(|c| enumerate_fourtuples(w, Some(c), None).len()).sum();
        assert_eq!(by_charge, a.len());
    }
}
