//! Self-checks grouped into suites. Each check recomputes a known identity
//! from independent ingredients and reports pass/fail with a short detail.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::brackets::{
    bracket_one_form, bracket_one_one, ck_lift, ck_lift_const, jacobi_coefficients_modular, jacobi_product,
    rankin_cohen, uniqueness_probe_on,
};
use crate::character::{
    char_closed, char_enumerate, char_from_basis, char_s_form, count_partitions_with_parts, parts_generating_function,
};
use crate::envelope::{
    adjoint, adjoint_e_closed, adjoint_h_closed, bridge_residual, casimir_graded, d_operator, pbw, word,
};
use crate::error::{Error, Result};
use crate::exactnum::{int, rat, QSeries, Scalar};
use crate::fock::{
    commutator_formula, enumerate_fourtuples, g_state, j_state, mode_commutator, n2_ope_table, nth_product, omega,
    q_state, sl2_ope_table, translation, CoeffFn, Field, FockState, FourTuple, Mode, OpeCase, Sl2,
};
use crate::lifting::{
    chiral_differential, cohomology_weight0, decompose_liftings, gram_matrix, hecke_commutation_check, ideal_filter,
    invariance_operator, is_diagonal_positive, j_tilde, lift, lifting_basis, q_tilde, states_agree,
    structure_constants, verify_invariance, Lifting,
};
use crate::modforms::{
    delta, e2, e4, e6, hecke_t, hecke_t_cosets, t_prime, DecomposeConfig, Gamma, GammaTable, ModularForm,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Fock,
    Envelope,
    Brackets,
    Lifting,
    Character,
    Hecke,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Fock, Suite::Envelope, Suite::Brackets, Suite::Lifting, Suite::Character, Suite::Hecke];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fock => "fock",
            Suite::Envelope => "envelope",
            Suite::Brackets => "brackets",
            Suite::Lifting => "lifting",
            Suite::Character => "character",
            Suite::Hecke => "hecke",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; "all" yields every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::ALL
        .iter()
        .find(|x| x.name() == s)
        .map(|x| vec![*x])
        .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Group used for the second character comparison.
    pub table: GammaTable,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 2024, table: GammaTable::gamma0_2(20, 12) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<(bool, String)>;

/// A named check.
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    run: fn(&VerifyConfig) -> Outcome,
}

impl Check {
    pub fn run(&self, cfg: &VerifyConfig) -> CheckResult {
        let (passed, detail) = match (self.run)(cfg) {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        CheckResult { suite: self.suite.name().into(), name: self.name.into(), passed, detail }
    }
}

/// Every registered check, in a fixed order.
pub fn all_checks() -> Vec<Check> {
    let c = |suite, name, run| Check { suite, name, run };
    use Suite::*;
    vec![
        c(Fock, "mode_commutation", fock_commutation as fn(&VerifyConfig) -> Outcome),
        c(Fock, "vacuum_rules", fock_vacuum),
        c(Fock, "n2_ope", fock_n2_ope),
        c(Fock, "sl2_ope", fock_sl2_ope),
        c(Fock, "borcherds_samples", fock_borcherds),
        c(Fock, "n2_mode_commutators", fock_n2_commutators),
        c(Fock, "sl2_affine_level_zero", fock_sl2_affine),
        c(Envelope, "adjoint_closed_forms", env_closed_forms),
        c(Envelope, "casimir_graded", env_casimir),
        c(Envelope, "bridge_identity", env_bridge),
        c(Envelope, "d_raises_part_and_is_nilpotent", env_d_operator),
        c(Brackets, "ramanujan_identities", br_ramanujan),
        c(Brackets, "modified_brackets", br_modified),
        c(Brackets, "rankin_cohen_e4_e6", br_rankin_cohen),
        c(Brackets, "jacobi_products_modular", br_jacobi),
        c(Brackets, "uniqueness_probe", br_probe),
        c(Brackets, "uniqueness_probe_table", br_probe_table),
        c(Lifting, "invariance", lift_invariance),
        c(Lifting, "distinguished_vectors", lift_distinguished),
        c(Lifting, "alpha_projection", lift_alpha),
        c(Lifting, "decomposition_round_trip", lift_round_trip),
        c(Lifting, "differential_squares_to_zero", lift_d_squared),
        c(Lifting, "q_g_commutator_is_l0", lift_q_g),
        c(Lifting, "cohomology_weight0", lift_cohomology),
        c(Lifting, "structure_constants", lift_structure),
        c(Lifting, "ideal_l1_closed", lift_ideal),
        c(Lifting, "gram_diagonal_positive", lift_gram),
        c(Character, "closed_vs_enumerate_sl2z", char_sl2z),
        c(Character, "closed_vs_enumerate_table", char_table),
        c(Character, "from_basis", char_basis),
        c(Character, "pinned_values", char_pinned),
        c(Character, "partition_generating_functions", char_gf),
        c(Hecke, "e4_eigenvalues", hecke_e4),
        c(Hecke, "formula_vs_cosets", hecke_cosets),
        c(Hecke, "t_prime_fixes_e2", hecke_t_prime),
        c(Hecke, "commutes_with_lifting", hecke_lifting),
    ]
}

/// Runs the named checks in parallel; results come back in registration order.
pub fn run_checks(names: &[&str], cfg: &VerifyConfig) -> Vec<CheckResult> {
    let checks: Vec<Check> = all_checks().into_iter().filter(|c| names.contains(&c.name)).collect();
    checks.par_iter().map(|c| c.run(cfg)).collect()
}

/// Runs the given suites in parallel; results come back in registration order.
pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> Vec<CheckResult> {
    let checks: Vec<Check> = all_checks().into_iter().filter(|c| suites.contains(&c.suite)).collect();
    checks.par_iter().map(|c| c.run(cfg)).collect()
}

fn fail_first<T: fmt::Debug>(items: impl IntoIterator<Item = (T, bool)>, what: &str) -> (bool, String) {
    let mut n = 0;
    for (label, ok) in items {
        if !ok {
            return (false, format!("{what} fails at {label:?}"));
        }
        n += 1;
    }
    (true, format!("{n} {what} cases"))
}

fn parity(s: &FockState) -> bool {
    s.terms().next().is_some_and(|(t, _)| t.parity())
}

fn coefficient_choices(prec: i64) -> Vec<CoeffFn> {
    vec![
        CoeffFn::one(),
        CoeffFn::b_pow(1),
        CoeffFn::b_pow(2),
        CoeffFn::series(e4(prec)),
        CoeffFn::series(e4(prec)).mul_b(),
    ]
}

/// A random monomial of weight ≤ max_weight with a random coefficient.
fn random_state(rng: &mut ChaCha8Rng, max_weight: u32, prec: i64) -> FockState {
    let w = rng.gen_range(0..=max_weight);
    let tuples = enumerate_fourtuples(w, None, None);
    let t = tuples.choose(rng).expect("nonempty").clone();
    let f = coefficient_choices(prec).choose(rng).expect("nonempty").clone();
    FockState::monomial(t, f)
}

fn probe_states() -> Vec<FockState> {
    let mut out = vec![FockState::vacuum(), FockState::function(CoeffFn::b_pow(2))];
    for spec in ["a[1]", "b[1]", "phi[1]", "psi[1]", "a[2]:b[1]", "phi[2,1]:psi[1]", "a[1]:phi[1]:b[2]", "psi[2]:b[1,1]"] {
        out.push(FockState::monomial(spec.parse().unwrap(), CoeffFn::b_pow(1)));
    }
    out
}

// ---------------------------------------------------------------- fock

fn fock_commutation(_: &VerifyConfig) -> Outcome {
    let fields = [Field::A, Field::B, Field::Phi, Field::Psi];
    let mut cases = Vec::new();
    for s in probe_states() {
        for &x in &fields {
            for &y in &fields {
                for m in -2..=2 {
                    for n in -2..=2 {
                        let (xm, yn) = (Mode::new(x, m), Mode::new(y, n));
                        let both_odd = x.is_odd() && y.is_odd();
                        let lhs = s.apply_mode(yn).apply_mode(xm);
                        let rhs = s.apply_mode(xm).apply_mode(yn);
                        let comm = if both_odd { lhs.add(&rhs) } else { lhs.sub(&rhs) };
                        let c = match (x, y) {
                            (Field::A, Field::B) | (Field::Phi, Field::Psi) | (Field::Psi, Field::Phi) if m + n == 0 => 1,
                            (Field::B, Field::A) if m + n == 0 => -1,
                            _ => 0,
                        };
                        cases.push(((x, m, y, n), comm == s.scale_int(c)));
                    }
                }
            }
        }
    }
    Ok(fail_first(cases, "commutator"))
}

fn fock_vacuum(cfg: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let one = FockState::vacuum();
    let mut cases = Vec::new();
    for i in 0..20 {
        let u = random_state(&mut rng, 4, 10);
        cases.push(((i, "1_(-1)u"), nth_product(&one, -1, &u) == u));
        cases.push(((i, "u_(-1)1"), nth_product(&u, -1, &one) == u));
        cases.push(((i, "u_(-2)1"), nth_product(&u, -2, &one) == translation(&u)));
        cases.push(((i, "u_(n)1"), (0..3).all(|n| nth_product(&u, n, &one).is_zero())));
        cases.push(((i, "1_(n)u"), (0..3).all(|n| nth_product(&one, n, &u).is_zero())));
    }
    Ok(fail_first(cases, "vacuum"))
}

fn check_ope_table(table: Vec<OpeCase>) -> (bool, String) {
    let mut cases = Vec::new();
    for c in table {
        let top = c.u.max_weight() + c.v.max_weight() + 1;
        for j in 0..=top {
            let expect = c.singular.iter().find(|(k, _)| *k == j).map(|(_, s)| s.clone()).unwrap_or_default();
            cases.push(((c.name, j), nth_product(&c.u, j, &c.v).sub(&expect).is_zero()));
        }
    }
    fail_first(cases, "OPE coefficient")
}

fn fock_n2_ope(_: &VerifyConfig) -> Outcome {
    Ok(check_ope_table(n2_ope_table()))
}

fn fock_sl2_ope(_: &VerifyConfig) -> Outcome {
    Ok(check_ope_table(sl2_ope_table()))
}

/// `Σ_i C(p,i) (u_{(r+i)}v)_{(p+q−i)} w`
///  `= Σ_i (−1)^i C(r,i) [u_{(p+r−i)} v_{(q+i)} w − ε(−1)^r v_{(q+r−i)} u_{(p+i)} w]`.
fn borcherds_holds(u: &FockState, v: &FockState, w: &FockState, p: i64, q: i64, r: i64) -> bool {
    use crate::fock::binom;
    let bound = u.max_weight() + v.max_weight() + w.max_weight() + 6;
    let eps = if parity(u) && parity(v) { -1 } else { 1 };
    let sign_r = if r.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut lhs = FockState::zero();
    let mut rhs = FockState::zero();
    for i in 0..bound {
        let c = Scalar::from_rational(binom(p, i));
        if !c.is_zero() {
            let uv = nth_product(u, r + i, v);
            if !uv.is_zero() {
                lhs.add_assign(&nth_product(&uv, p + q - i, w).scale(&c));
            }
        }
        let sgn = if i % 2 == 0 { int(1) } else { int(-1) };
        let c = Scalar::from_rational(binom(r, i) * sgn);
        if c.is_zero() {
            continue;
        }
        let a = nth_product(u, p + r - i, &nth_product(v, q + i, w));
        let b = nth_product(v, q + r - i, &nth_product(u, p + i, w)).scale_int(eps * sign_r);
        rhs.add_assign(&a.sub(&b).scale(&c));
    }
    lhs.sub(&rhs).is_zero()
}

fn fock_borcherds(cfg: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xb0c);
    let samples: Vec<_> = (0..20)
        .map(|_| {
            let u = random_state(&mut rng, 2, 8);
            let v = random_state(&mut rng, 2, 8);
            let w = random_state(&mut rng, 4 - u.max_weight().min(2) as u32, 8);
            let (p, q, r) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-1..=1));
            (u, v, w, p, q, r)
        })
        .collect();
    let results: Vec<_> = samples
        .par_iter()
        .enumerate()
        .map(|(i, (u, v, w, p, q, r))| ((i, *p, *q, *r), borcherds_holds(u, v, w, *p, *q, *r)))
        .collect();
    Ok(fail_first(results, "Borcherds sample"))
}

fn fock_n2_commutators(_: &VerifyConfig) -> Outcome {
    let gens = [("L", omega()), ("J", j_state()), ("Q", q_state()), ("G", g_state())];
    let probes = probe_states();
    let mut jobs = Vec::new();
    for (nu, u) in &gens {
        for (nv, v) in &gens {
            for m in -1..=2 {
                for n in -1..=2 {
                    jobs.push((*nu, u, *nv, v, m, n));
                }
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(nu, u, nv, v, m, n)| {
            let ok = probes.iter().all(|s| mode_commutator(u, *m, v, *n, s) == commutator_formula(u, *m, v, *n, s));
            ((*nu, *m, *nv, *n), ok)
        })
        .collect();
    Ok(fail_first(results, "N=2 mode commutator"))
}

fn fock_sl2_affine(cfg: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x512);
    let probes: Vec<FockState> = (0..6).map(|_| random_state(&mut rng, 4, 8)).collect();
    let gens = [Sl2::E, Sl2::H, Sl2::F];
    let mut jobs = Vec::new();
    for &x in &gens {
        for &y in &gens {
            for m in -1..=1 {
                for n in -1..=1 {
                    jobs.push((x, y, m, n));
                }
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(x, y, m, n)| {
            let (u, v) = (x.state(), y.state());
            let br = nth_product(&u, 0, &v);
            let ok = probes.iter().all(|s| mode_commutator(&u, m, &v, n, s) == nth_product(&br, m + n, s));
            ((x, y, m, n), ok)
        })
        .collect();
    Ok(fail_first(results, "level-0 sl2 relation"))
}

// ------------------------------------------------------------ envelope

fn env_closed_forms(_: &VerifyConfig) -> Outcome {
    let mut jobs = Vec::new();
    for w in 0..=4 {
        for t in enumerate_fourtuples(w, None, None) {
            for k in 0..=2 {
                for l in 0..=2 {
                    jobs.push((t.clone(), k, l));
                }
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(t, k, l)| {
            let a = pbw(t.clone(), *k, *l);
            let ok = adjoint(Sl2::E, &a) == adjoint_e_closed(&a) && adjoint(Sl2::H, &a) == adjoint_h_closed(&a);
            ((t.spec(), *k, *l), ok)
        })
        .collect();
    Ok(fail_first(results, "PBW element"))
}

fn env_casimir(_: &VerifyConfig) -> Outcome {
    let probes = [CoeffFn::series(e4(10)), CoeffFn::b_pow(2), CoeffFn::series(delta(10)).mul_b()];
    let mut cases = Vec::new();
    for n in -2..=3 {
        for (i, p) in probes.iter().enumerate() {
            cases.push(((n, i), casimir_graded(n, p) == Some(Scalar::from_int(2 * n * (n - 1)))));
        }
    }
    Ok(fail_first(cases, "graded Casimir"))
}

fn env_bridge(cfg: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xb1d);
    let fns = [
        CoeffFn::b_pow(2),
        CoeffFn::b_pow(3),
        CoeffFn::series(e4(8)),
        CoeffFn::series(e6(8)).mul_b(),
        CoeffFn::one(),
    ];
    let samples: Vec<_> = (0..24)
        .map(|_| {
            let w = rng.gen_range(0..=3);
            let t = enumerate_fourtuples(w, None, None).choose(&mut rng).unwrap().clone();
            let (k, l) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
            (t, k, l, fns.choose(&mut rng).unwrap().clone())
        })
        .collect();
    let results: Vec<_> = samples
        .par_iter()
        .map(|(t, k, l, f)| ((t.spec(), *k, *l), bridge_residual(&pbw(t.clone(), *k, *l), f).is_zero()))
        .collect();
    Ok(fail_first(results, "bridge sample"))
}

/// The part of a term counts a₀ as −1 and b₀ as +1.
fn env_d_operator(_: &VerifyConfig) -> Outcome {
    let mut cases = Vec::new();
    for w in 0..=3 {
        for t in enumerate_fourtuples(w, None, None) {
            let mut a = word(&t);
            let mut part = t.part();
            let mut steps = 0;
            let ok = loop {
                let d = d_operator(&a);
                if d.is_zero() {
                    break true;
                }
                let parts_ok = d.terms().all(|(u, poly)| poly.terms().all(|((k, l), _)| u.part() - k as i64 + l as i64 == part + 1));
                if !parts_ok || steps > 2 * w as usize + 4 {
                    break false;
                }
                a = d;
                part += 1;
                steps += 1;
            };
            cases.push((t.spec(), ok));
        }
    }
    Ok(fail_first(cases, "D chain"))
}

// ------------------------------------------------------------ brackets

fn br_ramanujan(_: &VerifyConfig) -> Outcome {
    let p = 51;
    let (a, b, c) = (e2(p), e4(p), e6(p));
    let checks = [
        ("theta E2", a.theta(), (&(&a * &a) - &b).scale_rational(&rat(1, 12))),
        ("theta E4", b.theta(), (&(&a * &b) - &c).scale_rational(&rat(1, 3))),
        ("theta E6", c.theta(), (&(&a * &c) - &(&b * &b)).scale_rational(&rat(1, 2))),
    ];
    Ok(fail_first(checks.iter().map(|(n, x, y)| (*n, x == y && x.prec_floor() >= Some(50))), "identity"))
}

fn br_modified(_: &VerifyConfig) -> Outcome {
    let p = 30;
    let mut cases = vec![
        ("[1,E4]~_1", bracket_one_form(&ModularForm::new(4, e4(p)), 1)?.series == e6(p).scale_rational(&rat(-1, 3))),
        ("[1,1]~_2", bracket_one_one(2, p)?.series == e4(p).scale_rational(&rat(-1, 144))),
    ];
    for n in (1..=9).step_by(2) {
        cases.push(("[1,1]~_odd", bracket_one_one(n, p)?.series.is_zero()));
    }
    Ok(fail_first(cases, "modified bracket"))
}

fn br_rankin_cohen(_: &VerifyConfig) -> Outcome {
    let b = rankin_cohen(&ModularForm::new(4, e4(30)), &ModularForm::new(6, e6(30)), 1)?;
    let ok = b.weight == 12 && b.series == delta(30).scale_rational(&int(-3456));
    Ok((ok, "[E4,E6]_1 = -3456 Delta".into()))
}

fn br_jacobi(_: &VerifyConfig) -> Outcome {
    let p = 30;
    let cfg = DecomposeConfig::default();
    let g = Gamma::Sl2z;
    let one = ck_lift_const(6, p)?;
    let mut cases = Vec::new();
    for (name, f) in [("E4", ModularForm::new(4, e4(p))), ("E6", ModularForm::new(6, e6(p))), ("Delta", ModularForm::new(12, delta(p)))] {
        let prod = jacobi_product(&one.negate_x(), &ck_lift(&f, 6)?);
        cases.push((name, jacobi_coefficients_modular(&prod, &g, &cfg)?.iter().all(|x| *x)));
    }
    let prod = jacobi_product(&one.negate_x(), &one);
    cases.push(("1", jacobi_coefficients_modular(&prod, &g, &cfg)?.iter().all(|x| *x)));
    Ok(fail_first(cases, "Jacobi-like product"))
}

fn probe_grid(gamma: &Gamma, prec: i64) -> Outcome {
    let mut cases = Vec::new();
    let mut dims = Vec::new();
    for k in [4, 6] {
        for n in 1..=4 {
            let r = uniqueness_probe_on(gamma, k, n, prec)?;
            dims.push(format!("({k},{n}):{}", r.kernel_dim));
            cases.push(((k, n), r.kernel_dim == 1 && r.proportional));
        }
    }
    let (ok, detail) = fail_first(cases, "probe");
    Ok((ok, format!("{detail}; kernel dims {}", dims.join(" "))))
}

fn br_probe(_: &VerifyConfig) -> Outcome {
    probe_grid(&Gamma::Sl2z, 30)
}

fn br_probe_table(cfg: &VerifyConfig) -> Outcome {
    probe_grid(&Gamma::Table(cfg.table.clone()), cfg.table.prec.min(30))
}

// ------------------------------------------------------------- lifting

const LIFT_PREC: i64 = 12;

fn lift_cfg() -> DecomposeConfig {
    DecomposeConfig { margin: 4 }
}

fn invariance_words() -> Vec<&'static str> {
    vec!["phi[1]:psi[1]", "a[1]:phi[1]", "a[1]:b[1]", "phi[2]:psi[1]", "psi[1]:b[1]", "b[1]", "phi[2]", "phi[1]:b[1]", "phi[2,1]", "1"]
}

fn lift_invariance(_: &VerifyConfig) -> Outcome {
    let cases: Vec<_> = invariance_words()
        .into_iter()
        .map(|s| {
            let w: FourTuple = s.parse().unwrap();
            let ok = invariance_operator(&w).is_some_and(|a| verify_invariance(&w, &a, w.part()).holds());
            (s, ok)
        })
        .collect();
    let neg = !verify_invariance(&"phi[1]:psi[1]".parse().unwrap(), &Default::default(), 0).holds();
    let (ok, detail) = fail_first(cases, "word");
    Ok((ok && neg, format!("{detail}; uncorrected J rejected: {neg}")))
}

fn lift_distinguished(_: &VerifyConfig) -> Outcome {
    let p = 20;
    let pi3 = Scalar::monomial(1, rat(1, 3));
    let m = |s: &str, g: QSeries| FockState::monomial(s.parse().unwrap(), CoeffFn::series(g));
    let jt = m("phi[1]:psi[1]", QSeries::one()).add(&m("b[1]", e2(p).scale(&pi3)));
    let neg = pi3.scale(&int(-1));
    let qt = m("a[1]:phi[1]", QSeries::one())
        .add(&m("phi[2]", e2(p).scale(&neg)))
        .add(&m("phi[1]:b[1]", e2(p).tau_derivative().scale(&neg)));
    let cases = [("J~", j_tilde(p)? == jt), ("Q~", q_tilde(p)? == qt)];
    Ok(fail_first(cases, "closed form"))
}

fn lift_alpha(_: &VerifyConfig) -> Outcome {
    let mut cases = Vec::new();
    for s in invariance_words() {
        let w: FourTuple = s.parse().unwrap();
        for f in [ModularForm::one(), ModularForm::new(4, e4(LIFT_PREC))] {
            if let Some(l) = lift(&w, &f, LIFT_PREC)? {
                let ok = l.alpha_projection() == f.series && l.state.b_degree() == 0;
                cases.push(((s, f.weight), ok));
            }
        }
    }
    Ok(fail_first(cases, "leading-term recovery"))
}

fn basis_up_to(weight: u32) -> Result<Vec<Lifting>> {
    let mut out = Vec::new();
    for k in 0..=weight {
        out.extend(lifting_basis(&Gamma::Sl2z, k, None, LIFT_PREC)?);
    }
    Ok(out)
}

fn lift_round_trip(cfg: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7e7);
    let basis = lifting_basis(&Gamma::Sl2z, 2, Some(0), LIFT_PREC)?;
    let mut cases = Vec::new();
    for trial in 0..5 {
        let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-3..=3)).collect();
        let mut s = FockState::zero();
        for (l, c) in basis.iter().zip(&coeffs) {
            s.add_assign(&l.state.scale_int(*c));
        }
        let dec = decompose_liftings(&s, &Gamma::Sl2z, LIFT_PREC, &lift_cfg())?;
        let mut recovered = vec![0i64; basis.len()];
        let mut ok = true;
        for t in dec {
            for (i, x) in t.coords.iter().enumerate() {
                let idx = basis.iter().enumerate().filter(|(_, l)| l.leading == t.leading).nth(i).map(|(j, _)| j);
                match (idx, x.as_rational()) {
                    (Some(j), Some(r)) if r.is_integer() => recovered[j] += i64::try_from(r.to_integer()).unwrap_or(i64::MAX),
                    _ => ok = false,
                }
            }
        }
        cases.push((trial, ok && recovered == coeffs));
    }
    Ok(fail_first(cases, "random combination"))
}

fn lift_d_squared(_: &VerifyConfig) -> Outcome {
    let basis = basis_up_to(3)?;
    let results: Vec<_> = basis
        .par_iter()
        .map(|l| (l.leading.spec(), chiral_differential(&chiral_differential(&l.state)).is_zero()))
        .collect();
    Ok(fail_first(results, "basis lifting"))
}

fn lift_q_g(_: &VerifyConfig) -> Outcome {
    let basis = basis_up_to(3)?;
    let qt = q_tilde(LIFT_PREC)?;
    let g = g_state();
    let results: Vec<_> = basis
        .par_iter()
        .map(|l| {
            let c = mode_commutator(&qt, 0, &g, 1, &l.state);
            let weight = l.leading.weight();
            (l.leading.spec(), states_agree(&c, &l.state.scale_int(weight)))
        })
        .collect();
    Ok(fail_first(results, "basis lifting"))
}

fn lift_cohomology(_: &VerifyConfig) -> Outcome {
    let r = cohomology_weight0(&Gamma::Sl2z, LIFT_PREC, &lift_cfg())?;
    let ok = r.cohomology.first() == Some(&1) && r.cohomology.get(1) == Some(&0);
    Ok((ok, format!("cochains {:?}, cohomology {:?}", r.cochains, r.cohomology)))
}

fn lift_structure(_: &VerifyConfig) -> Outcome {
    let prec = 10;
    let basis: Vec<Lifting> = (0..=2).map(|k| lifting_basis(&Gamma::Sl2z, k, None, prec)).collect::<Result<Vec<_>>>()?.concat();
    let mut jobs = Vec::new();
    for a in &basis {
        for b in &basis {
            for n in -1..=1 {
                jobs.push((a, b, n));
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(a, b, n)| {
            let label = (a.leading.spec(), b.leading.spec(), *n);
            let r = structure_constants(&a.leading, &a.form, &b.leading, &b.form, *n, &Gamma::Sl2z, prec, &lift_cfg());
            (label, r.is_ok_and(|r| r.proportional()))
        })
        .collect();
    Ok(fail_first(results, "product"))
}

fn lift_ideal(cfg: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1de);
    let basis = basis_up_to(2)?;
    let l1: Vec<&Lifting> = basis.iter().filter(|l| l.part() >= 1).collect();
    let mut cases = Vec::new();
    for i in 0..10 {
        let a = basis.choose(&mut rng).unwrap();
        let b = l1.choose(&mut rng).unwrap();
        let n = rng.gen_range(-1..=1);
        let prod = nth_product(&a.state, n, &b.state);
        cases.push(((i, a.leading.spec(), b.leading.spec(), n), ideal_filter(&prod, 1, &Gamma::Sl2z, LIFT_PREC, &lift_cfg())?));
    }
    Ok(fail_first(cases, "product with an L1 member"))
}

fn lift_gram(_: &VerifyConfig) -> Outcome {
    let tuples: Vec<FourTuple> = (0..=3).flat_map(|w| enumerate_fourtuples(w, None, Some(0))).collect();
    let g = gram_matrix(&tuples)?;
    Ok((is_diagonal_positive(&g), format!("{} part-0 monomials", tuples.len())))
}

// ----------------------------------------------------------- character

fn char_sl2z(_: &VerifyConfig) -> Outcome {
    let g = Gamma::Sl2z;
    let a = char_closed(&g, 12)?;
    let ok = a == char_enumerate(&g, 12)? && a == char_s_form(&g, 12)?;
    Ok((ok, format!("{:?}", a.coeffs)))
}

fn char_table(cfg: &VerifyConfig) -> Outcome {
    let g = Gamma::Table(cfg.table.clone());
    let a = char_closed(&g, 8)?;
    let ok = a == char_enumerate(&g, 8)? && a == char_s_form(&g, 8)?;
    Ok((ok, format!("{}: {:?}", g.name(), a.coeffs)))
}

fn char_basis(_: &VerifyConfig) -> Outcome {
    let g = Gamma::Sl2z;
    let b = char_from_basis(&g, 6, 8)?;
    Ok((b.agrees_with(&char_closed(&g, 6)?), format!("{:?}", b.coeffs)))
}

fn char_pinned(_: &VerifyConfig) -> Outcome {
    let a = char_closed(&Gamma::Sl2z, 2)?;
    Ok((a.coeffs[0] == 1 && a.coeffs[1] == 4, format!("{:?}", a.coeffs)))
}

fn char_gf(_: &VerifyConfig) -> Outcome {
    let mut cases = Vec::new();
    for k in 0..=8 {
        for distinct in [false, true] {
            let gf = parts_generating_function(k, distinct, 30);
            let ok = (0..=30u32).all(|n| gf[n as usize] == count_partitions_with_parts(n, k, distinct));
            cases.push(((k, distinct), ok));
        }
    }
    Ok(fail_first(cases, "generating function"))
}

// --------------------------------------------------------------- hecke

fn hecke_e4(_: &VerifyConfig) -> Outcome {
    let f = e4(60);
    let cases = [
        ("T4(2)", hecke_t(4, 2, &f)?.truncate(20) == f.scale_rational(&int(9)).truncate(20)),
        ("T4(3)", hecke_t(4, 3, &f)?.truncate(20) == f.scale_rational(&int(28)).truncate(20)),
    ];
    Ok(fail_first(cases, "eigenvalue"))
}

fn hecke_cosets(_: &VerifyConfig) -> Outcome {
    let mut cases = Vec::new();
    for (name, k, f) in [("E4", 4, e4(60)), ("E6", 6, e6(60)), ("Delta", 12, delta(60))] {
        for n in [2, 3] {
            cases.push(((name, n), hecke_t(k, n, &f)?.truncate(20) == hecke_t_cosets(k, n, &f)?.truncate(20)));
        }
    }
    Ok(fail_first(cases, "coset sum"))
}

fn hecke_t_prime(_: &VerifyConfig) -> Outcome {
    let f = e2(60);
    let cases = [2, 3].map(|n| Ok((n, t_prime(n, &f)?.truncate(20) == f.truncate(20)))).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(fail_first(cases, "T'(n)E2"))
}

fn hecke_lifting(_: &VerifyConfig) -> Outcome {
    let cases = [
        ("phi[1]:b[1]", ModularForm::new(4, e4(20))),
        ("phi[1]:psi[1]", ModularForm::one()),
        ("phi[2,1]", ModularForm::new(4, e4(20))),
        ("a[1]:phi[1]", ModularForm::one()),
    ];
    let mut out = Vec::new();
    for (s, f) in cases {
        let r = hecke_commutation_check(&s.parse().unwrap(), &f, 2, 20)?;
        out.push((s, r.agree && r.prec.is_none_or(|p| p >= 10)));
    }
    Ok(fail_first(out, "lifting"))
}
