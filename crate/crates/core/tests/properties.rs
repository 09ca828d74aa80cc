//! Property tests over randomly drawn series, forms, envelope elements,
//! states and dimension tables.

use std::collections::BTreeMap;

use num::{BigRational, Signed};
use proptest::prelude::*;

use chiral_core::brackets::{bracket, rankin_cohen, Operand};
use chiral_core::character::{char_closed, char_enumerate, char_s_form};
use chiral_core::envelope::{adjoint, casimir, d_operator, pbw, word, EnvelopeElement};
use chiral_core::exactnum::{int, QSeries, Scalar};
use chiral_core::fock::{enumerate_fourtuples, CoeffFn, FockState, FourTuple, Sl2};
use chiral_core::lifting::{
    decompose_liftings, hermitian_form, invariance_operator, lift, lifting_basis, states_agree, verify_invariance,
};
use chiral_core::modforms::{decompose, delta, e4, e6, slash_sum_b, DecomposeConfig, Gamma, GammaTable, ModularForm};

fn series(coeffs: &[i64]) -> QSeries {
    QSeries::from_rationals(coeffs.iter().map(|c| int(*c)).collect())
}

fn tuples_up_to(weight: u32) -> Vec<FourTuple> {
    (0..=weight).flat_map(|w| enumerate_fourtuples(w, None, None)).collect()
}

fn tuple_strategy(weight: u32) -> impl Strategy<Value = FourTuple> {
    let all = tuples_up_to(weight);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// Part of every term, counting a₀ as −1 and b₀ as +1.
fn term_parts(a: &EnvelopeElement) -> Vec<i64> {
    a.terms().flat_map(|(t, p)| p.terms().map(move |((k, l), _)| t.part() - k as i64 + l as i64)).collect()
}

fn sl2z_form(k: i64, coords: &[i64], prec: i64) -> ModularForm {
    let basis = Gamma::Sl2z.basis(k, prec).unwrap();
    let f = basis.iter().zip(coords).fold(QSeries::zero_to(prec), |acc, (b, c)| &acc + &b.scale_rational(&int(*c)));
    ModularForm::new(k, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theta_is_a_derivation(a in prop::collection::vec(-9i64..10, 1..10), b in prop::collection::vec(-9i64..10, 1..10)) {
        let (x, y) = (series(&a), series(&b));
        let lhs = (&x * &y).theta();
        let rhs = &(&x.theta() * &y) + &(&x * &y.theta());
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn rebase_round_trips(a in prop::collection::vec(-9i64..10, 1..10), p in 1i64..5) {
        let x = series(&a);
        prop_assert_eq!(x.rebase(p, 1).rebase(1, p), x.clone());
        // The detour through q^{1/p} may widen the known range, never change a coefficient.
        let y = x.rebase(1, p).rebase(p, 1);
        prop_assert!((&y - &x).is_zero());
        prop_assert!(y.prec_floor() >= x.prec_floor());
    }

    #[test]
    fn scalars_commute_without_zero_divisors(d1 in -3i32..4, d2 in -3i32..4, n1 in 1i64..50, n2 in -50i64..-1, m in 1i64..9) {
        let x = &Scalar::monomial(d1, BigRational::new(n1.into(), m.into())) + &Scalar::from_int(n2);
        let y = Scalar::monomial(d2, BigRational::new(n2.into(), (m + 1).into()));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!(!(&x * &y).is_zero());
    }

    #[test]
    fn sl2z_forms_multiply_into_the_ring(k in 2i64..7, l in 2i64..7, c1 in prop::collection::vec(-5i64..6, 2), c2 in prop::collection::vec(-5i64..6, 2)) {
        let prec = 30;
        let (f, h) = (sl2z_form(2 * k, &c1, prec), sl2z_form(2 * l, &c2, prec));
        let prod = &f.series * &h.series;
        let dec = decompose(&prod, &Gamma::Sl2z, 2 * (k + l), &DecomposeConfig::default());
        prop_assert!(dec.is_ok(), "{:?}", dec);
        for b in Gamma::Sl2z.basis(2 * k, prec).unwrap() {
            prop_assert!(b.is_rational());
        }
    }

    #[test]
    fn slash_sums_have_integral_exponents(a in 1i64..5, d in 1i64..5, which in 0usize..3) {
        let (k, f) = [(4, e4(24)), (6, e6(24)), (12, delta(24))][which].clone();
        let g = slash_sum_b(&f, k, a, d).unwrap();
        prop_assert!(g.has_integral_exponents());
    }

    #[test]
    fn brackets_of_forms_are_rankin_cohen(i in 0usize..3, j in 0usize..3, n in 0i64..5) {
        let forms = [ModularForm::new(4, e4(20)), ModularForm::new(6, e6(20)), ModularForm::new(12, delta(20))];
        let (f, h) = (&forms[i], &forms[j]);
        let b = bracket(&Operand::Form(f.clone()), &Operand::Form(h.clone()), n, 20).unwrap();
        prop_assert_eq!(b, rankin_cohen(f, h, n).unwrap());
        let one = bracket(&Operand::One, &Operand::Form(f.clone()), n, 20).unwrap();
        prop_assert!(one.series.is_rational());
    }

    #[test]
    fn adjoint_action_is_sl2(t in tuple_strategy(3), k in 0u32..3, l in 0u32..3) {
        let a = pbw(t, k, l);
        let ef = adjoint(Sl2::E, &adjoint(Sl2::F, &a)).sub(&adjoint(Sl2::F, &adjoint(Sl2::E, &a)));
        prop_assert_eq!(ef, adjoint(Sl2::H, &a));
        let he = adjoint(Sl2::H, &adjoint(Sl2::E, &a)).sub(&adjoint(Sl2::E, &adjoint(Sl2::H, &a)));
        prop_assert_eq!(he, adjoint(Sl2::E, &a).scale_int(2));
    }

    #[test]
    fn d_raises_part_and_terminates(t in tuple_strategy(4), k in 0u32..3) {
        let mut a = pbw(t, k, 0);
        let mut steps = 0;
        while !a.is_zero() {
            let parts = term_parts(&a);
            let d = d_operator(&a);
            let next = term_parts(&d);
            let p = *parts.iter().min().unwrap();
            prop_assert!(parts.iter().all(|x| *x == p) || next.iter().all(|x| *x > p));
            if parts.iter().all(|x| *x == p) {
                prop_assert!(next.iter().all(|x| *x == p + 1));
            }
            a = d;
            steps += 1;
            prop_assert!(steps <= 16, "D is not nilpotent");
        }
    }

    #[test]
    fn casimir_is_scalar_on_graded_pieces(t in tuple_strategy(4)) {
        let a = word(&t);
        let n = t.part();
        let rest = casimir(&a).sub(&a.scale_int(2 * n * (n - 1)));
        prop_assert!(term_parts(&rest).iter().all(|p| *p > n));
    }

    #[test]
    fn hermitian_form_is_orthogonal_and_positive(u in tuple_strategy(3), v in tuple_strategy(3)) {
        let su = FockState::monomial(u.clone(), CoeffFn::one());
        let sv = FockState::monomial(v.clone(), CoeffFn::one());
        let x = hermitian_form(&su, &sv).unwrap();
        if u == v {
            prop_assert!(x.as_rational().is_some_and(|r| r.is_positive()), "({u}, {u}) = {x}");
        } else {
            prop_assert!(x.is_zero(), "({u}, {v}) = {x}");
        }
    }

    #[test]
    fn hermitian_form_is_conjugate_symmetric(u in tuple_strategy(2), v in tuple_strategy(2), d in 0i32..3, c in -4i64..5) {
        let s = Scalar::monomial(d, int(c));
        let su = FockState::monomial(u.clone(), CoeffFn::constant(s.clone())).add(&FockState::monomial(v.clone(), CoeffFn::one()));
        let sv = FockState::monomial(v, CoeffFn::constant(s)).add(&FockState::monomial(u, CoeffFn::one()));
        prop_assert_eq!(hermitian_form(&su, &sv).unwrap(), hermitian_form(&sv, &su).unwrap().conj());
    }

    #[test]
    fn character_methods_agree_for_any_dimensions(dims in prop::collection::vec(0usize..4, 24), qmax in 0usize..9) {
        let table = GammaTable {
            name: "random".into(),
            prec: 10,
            dims: dims.iter().enumerate().map(|(i, d)| ((2 * i).to_string(), *d)).collect::<BTreeMap<_, _>>(),
            bases: BTreeMap::new(),
        };
        let g = Gamma::Table(table);
        let closed = char_closed(&g, qmax).unwrap();
        prop_assert_eq!(&closed, &char_s_form(&g, qmax).unwrap());
        prop_assert_eq!(&closed, &char_enumerate(&g, qmax).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn decomposition_recovers_combinations(weight in 0u32..3, coeffs in prop::collection::vec(-3i64..4, 64)) {
        let prec = 12;
        let basis = lifting_basis(&Gamma::Sl2z, weight, None, prec).unwrap();
        let mut s = FockState::zero();
        let mut forms: BTreeMap<FourTuple, QSeries> = BTreeMap::new();
        for (l, c) in basis.iter().zip(&coeffs) {
            s.add_assign(&l.state.scale_int(*c));
            let e = forms.entry(l.leading.clone()).or_insert_with(QSeries::zero);
            *e = &*e + &l.form.series.scale_rational(&int(*c));
        }
        let terms = decompose_liftings(&s, &Gamma::Sl2z, prec, &DecomposeConfig { margin: 4 }).unwrap();
        let mut rebuilt = FockState::zero();
        for t in &terms {
            let expect = forms.get(&t.leading).cloned().unwrap_or_else(QSeries::zero);
            prop_assert!((&t.form.series - &expect).is_zero(), "form on {}", t.leading);
            rebuilt.add_assign(&lift(&t.leading, &t.form, prec).unwrap().unwrap().state);
        }
        prop_assert!(states_agree(&rebuilt, &s));
        let nonzero = forms.values().filter(|f| !f.is_zero()).count();
        prop_assert_eq!(terms.len(), nonzero);
    }

    #[test]
    fn liftings_are_invariant_and_b_free(t in tuple_strategy(3), c in prop::collection::vec(-3i64..4, 3)) {
        let n0 = t.part();
        prop_assume!(n0 >= 0);
        let f = if n0 == 0 { ModularForm::one() } else { sl2z_form(2 * n0, &c, 12) };
        prop_assume!(!f.series.is_zero());
        let l = lift(&t, &f, 12).unwrap().unwrap();
        prop_assert_eq!(l.state.b_degree(), 0);
        prop_assert!((&l.alpha_projection() - &f.series).is_zero());
        let a = invariance_operator(&t).unwrap();
        prop_assert!(verify_invariance(&t, &a, n0).holds());
    }
}

#[test]
fn lifting_basis_counts_match_tuple_counts() {
    for k in 0..=4u32 {
        for charge in -2..=2 {
            let expected: usize = enumerate_fourtuples(k, Some(charge), None)
                .iter()
                .map(|t| Gamma::Sl2z.dim(2 * t.part()).unwrap())
                .sum();
            let got = lifting_basis(&Gamma::Sl2z, k, Some(charge), 10).unwrap().len();
            assert_eq!(got, expected, "weight {k}, charge {charge}");
        }
    }
}
