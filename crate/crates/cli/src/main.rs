//! `chiral`: batch front end for characters, liftings, brackets, Hecke
//! operators, lifting bases and the self-check suites.
//!
//! Results go to stdout as JSON (default) or text; warnings and errors go to
//! stderr.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chiral_core::brackets::{bracket, ck_lift, ck_lift_const, jacobi_product, JacobiLikeSeries, Operand};
use chiral_core::character::{char_closed, char_enumerate, char_from_basis, char_s_form, FROM_BASIS_QMAX};
use chiral_core::exactnum::{QSeries, Scalar};
use chiral_core::fock::{FockState, FourTuple};
use chiral_core::lifting::{lift, lifting_basis};
use chiral_core::modforms::{delta, e2, e4, e6, hecke_t, t_prime, Gamma, GammaTable, ModularForm};
use chiral_core::verify::{parse_suites, run_suites, VerifyConfig};
use chiral_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "chiral", version, about = "Invariant sections of the chiral de Rham complex on the upper half plane")]
struct Cli {
    /// q-precision of computed series (at least 10).
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(i64).range(10..))]
    prec: i64,
    /// "sl2z" or the path of a JSON table of modular forms.
    #[arg(long, global = true, default_value = "sl2z")]
    gamma: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized sampling in `verify`.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Largest q-power of a character.
    #[arg(long, global = true, default_value_t = 8)]
    qmax: usize,
    /// Largest X-power of Jacobi-like series.
    #[arg(long, global = true, default_value_t = 6)]
    xmax: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded dimension of the invariant sections, by every available method.
    Character,
    /// The lifting L(w, f) of a form along a creation word.
    Lift {
        /// Four-tuple such as "a[1]:phi[1]" (φ entries are partition parts).
        tuple: String,
        /// "1", "E4", "E6", "Delta" or "M<k>:<i>" for basis form i of M_k.
        form: String,
    },
    /// The n-th (modified) Rankin-Cohen bracket of two forms, with the
    /// Jacobi-like product ck(f)(−X)·ck(h)(X) up to X^xmax.
    Bracket { f: String, h: String, n: i64 },
    /// The Hecke operator T(n) on a form; "E2" uses the normalized T'(n).
    Hecke { form: String, n: i64 },
    /// The lifting basis at a given weight.
    Basis {
        weight: u32,
        /// Restrict to one charge.
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<i64>,
    },
    /// Run self-check suites: fock, envelope, brackets, lifting, character,
    /// hecke or all. Exits nonzero if any check fails.
    Verify { suite: String },
}

fn load_gamma(spec: &str) -> Result<Gamma> {
    if spec.eq_ignore_ascii_case("sl2z") {
        Ok(Gamma::Sl2z)
    } else {
        Ok(Gamma::Table(GammaTable::load(Path::new(spec))?))
    }
}

/// Parses a form spec at precision `prec`. "E2" is accepted only when
/// `allow_e2` is set, since it is quasimodular.
fn parse_form(spec: &str, gamma: &Gamma, prec: i64, allow_e2: bool) -> Result<ModularForm> {
    let form = match spec {
        "1" => ModularForm::one(),
        "E2" if allow_e2 => ModularForm::new(2, e2(prec)),
        "E4" => ModularForm::new(4, e4(prec)),
        "E6" => ModularForm::new(6, e6(prec)),
        "Delta" => ModularForm::new(12, delta(prec)),
        _ => {
            let bad = || Error::Parse(format!("unknown form {spec:?}; expected 1, E4, E6, Delta or M<k>:<i>"));
            let (k, i) = spec.strip_prefix('M').and_then(|r| r.split_once(':')).ok_or_else(bad)?;
            let k: i64 = k.parse().map_err(|_| bad())?;
            let i: usize = i.parse().map_err(|_| bad())?;
            let basis = gamma.basis(k, prec)?;
            let f = basis.get(i).cloned().ok_or_else(|| {
                Error::Parse(format!("M{k}({}) has dimension {}, no index {i}", gamma.name(), basis.len()))
            })?;
            ModularForm::new(k, f)
        }
    };
    Ok(form)
}

fn operand(spec: &str, gamma: &Gamma, prec: i64) -> Result<Operand> {
    let f = parse_form(spec, gamma, prec, false)?;
    Ok(if f.weight == 0 { Operand::One } else { Operand::Form(f) })
}

/// λ with `image = λ·f`, if any.
fn eigenvalue(f: &QSeries, image: &QSeries) -> Option<Scalar> {
    let (e, c) = f.terms().next()?;
    let lam = &image.coeff_at(e, f.denom()) * &c.inverse()?;
    (image - &f.scale(&lam)).is_zero().then_some(lam)
}

fn ck(o: &Operand, xmax: usize, prec: i64) -> Result<JacobiLikeSeries> {
    match o {
        Operand::One => ck_lift_const(xmax, prec),
        Operand::Form(f) => ck_lift(f, xmax),
    }
}

fn series_text(s: &QSeries) -> String {
    s.to_string()
}

fn state_text(s: &FockState) -> String {
    if s.is_zero() {
        "0".into()
    } else {
        s.to_string()
    }
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn run(cli: &Cli) -> Result<Output> {
    let gamma = load_gamma(&cli.gamma)?;
    let prec = cli.prec;
    match &cli.command {
        Command::Character => {
            let qmax = cli.qmax;
            let closed = char_closed(&gamma, qmax)?;
            let s_form = char_s_form(&gamma, qmax)?;
            let enumerated = char_enumerate(&gamma, qmax)?;
            let mut methods = vec![("closed", closed.clone()), ("s_form", s_form), ("enumerate", enumerated)];
            let basis_qmax = qmax.min(FROM_BASIS_QMAX);
            if gamma.table_prec().is_none_or(|p| p >= prec) {
                methods.push(("from_basis", char_from_basis(&gamma, basis_qmax, prec)?));
            } else {
                eprintln!("warning: table precision below --prec, skipping the lifting-basis count");
            }
            let agree = methods.iter().all(|(_, m)| m.agrees_with(&closed));
            let json = json!({
                "gamma": gamma.name(),
                "qmax": qmax,
                "coeffs": closed.coeffs,
                "methods": methods.iter().map(|(n, m)| (n.to_string(), json!(m.coeffs))).collect::<serde_json::Map<_, _>>(),
                "methods_agree": agree,
            });
            let mut text = format!("gamma: {}\n", gamma.name());
            for (n, c) in closed.coeffs.iter().enumerate() {
                text += &format!("q^{n}: {c}\n");
            }
            let names: Vec<&str> = methods.iter().map(|(n, _)| *n).collect();
            text += &format!("methods agree ({}): {agree}", names.join(", "));
            Ok(Output { json, text, ok: agree })
        }
        Command::Lift { tuple, form } => {
            let w: FourTuple = tuple.parse()?;
            let f = parse_form(form, &gamma, prec, false)?;
            match lift(&w, &f, prec)? {
                Some(l) => {
                    let text = format!("L({w}, {form}) = {}", state_text(&l.state));
                    Ok(Output { json: l.to_json(), text, ok: true })
                }
                None => {
                    eprintln!(
                        "warning: {form} has weight {} but {w} has part {}; the lifting is zero",
                        f.weight,
                        w.part()
                    );
                    let json = json!({
                        "leading": w.spec(),
                        "leading_modes": w.to_string(),
                        "part": w.part(),
                        "form": { "weight": f.weight, "series": f.series },
                        "state": [],
                    });
                    Ok(Output { json, text: format!("L({w}, {form}) = 0"), ok: true })
                }
            }
        }
        Command::Bracket { f, h, n } => {
            if *n < 0 {
                return Err(Error::Parse("bracket index must be nonnegative".into()));
            }
            let (fo, ho) = (operand(f, &gamma, prec)?, operand(h, &gamma, prec)?);
            let b = bracket(&fo, &ho, *n, prec)?;
            let product = jacobi_product(&ck(&fo, cli.xmax, prec)?.negate_x(), &ck(&ho, cli.xmax, prec)?);
            let json = json!({
                "f": f,
                "h": h,
                "n": n,
                "weight": b.weight,
                "series": b.series,
                "jacobi_product": product.xcoeffs,
            });
            let mut text = format!("[{f},{h}]_{n} (weight {}) = {}", b.weight, series_text(&b.series));
            for (i, c) in product.xcoeffs.iter().enumerate() {
                text += &format!("\nX^{i}: {}", series_text(c));
            }
            Ok(Output { json, text, ok: true })
        }
        Command::Hecke { form, n } => {
            if *n < 1 {
                return Err(Error::Parse("Hecke index must be positive".into()));
            }
            let f = parse_form(form, &gamma, prec, true)?;
            let image = if form == "E2" { t_prime(*n, &f.series)? } else { hecke_t(f.weight, *n, &f.series)? };
            let lam = eigenvalue(&f.series, &image);
            let json = json!({ "form": form, "weight": f.weight, "n": n, "series": image, "eigenvalue": lam });
            let mut text = format!("T({n}) {form} = {}", series_text(&image));
            if let Some(l) = &lam {
                text += &format!("\neigenvalue: {l}");
            }
            Ok(Output { json, text, ok: true })
        }
        Command::Basis { weight, charge } => {
            let basis = lifting_basis(&gamma, *weight, *charge, prec)?;
            let json = json!({
                "gamma": gamma.name(),
                "weight": weight,
                "charge": charge,
                "liftings": basis.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
            });
            let mut text = format!("{} liftings at weight {weight} for {}", basis.len(), gamma.name());
            for l in &basis {
                text += &format!("\n{}  part {}  form {}", l.leading.spec(), l.part(), series_text(&l.form.series));
            }
            Ok(Output { json, text, ok: true })
        }
        Command::Verify { suite } => {
            let suites = parse_suites(suite)?;
            let mut cfg = VerifyConfig { seed: cli.seed, ..VerifyConfig::default() };
            if let Gamma::Table(t) = &gamma {
                cfg.table = t.clone();
            }
            let results = run_suites(&suites, &cfg);
            let ok = results.iter().all(|r| r.passed);
            let text = results
                .iter()
                .map(|r| format!("{} {}/{}: {}", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.name, r.detail))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({ "passed": ok, "checks": results });
            Ok(Output { json, text, ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
