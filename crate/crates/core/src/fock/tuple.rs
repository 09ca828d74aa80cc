//! Monomials of the free-field Fock space indexed by four partitions.
//!
//! The tuple (λ, μ, ν, χ) stands for the creation word
//! `a_{-λ} φ_{-μ+1} ψ_{-ν} b_{-χ}` in this order, each family sorted by
//! decreasing depth. λ and χ are ordinary partitions, μ and ν have distinct
//! parts; a part 1 of μ is the zero mode φ₀.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::partition::{partitions, shifted_distinct, Flavor, Partition};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    A,
    B,
    Phi,
    Psi,
}

impl Field {
    pub fn is_odd(self) -> bool {
        matches!(self, Field::Phi | Field::Psi)
    }

    /// Conformal weight of the generating state.
    pub fn weight(self) -> i64 {
        match self {
            Field::A | Field::Psi => 1,
            Field::B | Field::Phi => 0,
        }
    }

    /// Mode index of `x_{(n)}`: a_{(n)} = a_n, b_{(n)} = b_{n+1},
    /// φ_{(n)} = φ_{n+1}, ψ_{(n)} = ψ_n.
    pub fn mode_of_product(self, n: i64) -> Mode {
        let index = match self {
            Field::A | Field::Psi => n,
            Field::B | Field::Phi => n + 1,
        };
        Mode { field: self, index }
    }

    fn symbol(self) -> &'static str {
        match self {
            Field::A => "a",
            Field::B => "b",
            Field::Phi => "φ",
            Field::Psi => "ψ",
        }
    }
}

/// A single mode x_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub field: Field,
    pub index: i64,
}

impl Mode {
    pub fn new(field: Field, index: i64) -> Self {
        Mode { field, index }
    }

    /// The n in `x_{(n)}`.
    pub fn product_index(self) -> i64 {
        match self.field {
            Field::A | Field::Psi => self.index,
            Field::B | Field::Phi => self.index - 1,
        }
    }

    /// Creation operators: a_{-n}, b_{-n}, ψ_{-n} (n ≥ 1) and φ_{-m} (m ≥ 0).
    pub fn is_creation(self) -> bool {
        match self.field {
            Field::A | Field::B | Field::Psi => self.index < 0,
            Field::Phi => self.index <= 0,
        }
    }

    /// Zero modes of the bosons, which act on coefficient functions.
    pub fn is_boson_zero(self) -> bool {
        matches!(self.field, Field::A | Field::B) && self.index == 0
    }

    /// Generators of the left ideal that annihilates the vacuum module:
    /// a_n, b_n, φ_n (n ≥ 1) and ψ_n (n ≥ 0).
    pub fn is_annihilator(self) -> bool {
        !self.is_creation() && !self.is_boson_zero()
    }

    /// Change in conformal weight.
    pub fn weight(self) -> i64 {
        -self.index
    }

    /// Change in fermion charge.
    pub fn charge(self) -> i64 {
        match self.field {
            Field::Phi => 1,
            Field::Psi => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{}}}", self.field.symbol(), self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FourTuple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub chi: Partition,
}

/// Result of acting with one mode on a monomial.
pub enum Action {
    Zero,
    /// Coefficient and new monomial.
    Term(i64, FourTuple),
    /// a₀ or b₀: acts on the coefficient function.
    ZeroMode,
}

impl FourTuple {
    pub fn vacuum() -> Self {
        FourTuple {
            lambda: Partition::empty(Flavor::Ordinary),
            mu: Partition::empty(Flavor::Distinct),
            nu: Partition::empty(Flavor::Distinct),
            chi: Partition::empty(Flavor::Ordinary),
        }
    }

    pub fn new(lambda: &[u32], mu: &[u32], nu: &[u32], chi: &[u32]) -> Option<Self> {
        Some(FourTuple {
            lambda: Partition::new(lambda.to_vec(), Flavor::Ordinary)?,
            mu: Partition::new(mu.to_vec(), Flavor::Distinct)?,
            nu: Partition::new(nu.to_vec(), Flavor::Distinct)?,
            chi: Partition::new(chi.to_vec(), Flavor::Ordinary)?,
        })
    }

    pub fn is_vacuum(&self) -> bool {
        self.lambda.is_empty() && self.mu.is_empty() && self.nu.is_empty() && self.chi.is_empty()
    }

    /// |λ| + |μ| + |ν| + |χ| − p(μ).
    pub fn weight(&self) -> i64 {
        (self.lambda.size() + self.mu.size() + self.nu.size() + self.chi.size()) as i64 - self.mu.len() as i64
    }

    /// p(μ) − p(ν).
    pub fn charge(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    /// −p(λ) + p(μ) − p(ν) + p(χ): minus the H-eigenvalue over two.
    pub fn part(&self) -> i64 {
        -(self.lambda.len() as i64) + self.mu.len() as i64 - self.nu.len() as i64 + self.chi.len() as i64
    }

    /// Number of fermions modulo 2.
    pub fn parity(&self) -> bool {
        (self.mu.len() + self.nu.len()) % 2 == 1
    }

    /// The creation word, leftmost mode first.
    pub fn modes(&self) -> Vec<Mode> {
        let mut out = Vec::new();
        out.extend(self.lambda.parts.iter().map(|&p| Mode::new(Field::A, -(p as i64))));
        out.extend(self.mu.parts.iter().map(|&p| Mode::new(Field::Phi, 1 - p as i64)));
        out.extend(self.nu.parts.iter().map(|&p| Mode::new(Field::Psi, -(p as i64))));
        out.extend(self.chi.parts.iter().map(|&p| Mode::new(Field::B, -(p as i64))));
        out
    }

    /// Leftmost mode and the remaining monomial (no sign: the leftmost mode
    /// is applied last).
    pub fn split_first(&self) -> Option<(Mode, FourTuple)> {
        let mut rest = self.clone();
        if let Some(&p) = self.lambda.parts.first() {
            rest.lambda.parts.remove(0);
            return Some((Mode::new(Field::A, -(p as i64)), rest));
        }
        if let Some(&p) = self.mu.parts.first() {
            rest.mu.parts.remove(0);
            return Some((Mode::new(Field::Phi, 1 - p as i64), rest));
        }
        if let Some(&p) = self.nu.parts.first() {
            rest.nu.parts.remove(0);
            return Some((Mode::new(Field::Psi, -(p as i64)), rest));
        }
        if let Some(&p) = self.chi.parts.first() {
            rest.chi.parts.remove(0);
            return Some((Mode::new(Field::B, -(p as i64)), rest));
        }
        None
    }

    /// Act with a mode from the left, sorting the result into canonical
    /// order with the fermion sign.
    pub fn act(&self, m: Mode) -> Action {
        let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
        match (m.field, m.index) {
            (Field::A | Field::B, 0) => Action::ZeroMode,
            (Field::A, n) if n < 0 => {
                let mut t = self.clone();
                t.lambda = self.lambda.insert((-n) as u32).unwrap();
                Action::Term(1, t)
            }
            (Field::B, n) if n < 0 => {
                let mut t = self.clone();
                t.chi = self.chi.insert((-n) as u32).unwrap();
                Action::Term(1, t)
            }
            (Field::A, n) => match self.chi.remove(n as u32) {
                Some((chi, _)) => {
                    let mult = self.chi.multiplicity(n as u32) as i64;
                    let mut t = self.clone();
                    t.chi = chi;
                    Action::Term(mult, t)
                }
                None => Action::Zero,
            },
            (Field::B, n) => match self.lambda.remove(n as u32) {
                Some((lambda, _)) => {
                    let mult = self.lambda.multiplicity(n as u32) as i64;
                    let mut t = self.clone();
                    t.lambda = lambda;
                    Action::Term(-mult, t)
                }
                None => Action::Zero,
            },
            (Field::Phi, n) if n <= 0 => {
                let p = (1 - n) as u32;
                match self.mu.insert(p) {
                    Some(mu) => {
                        let s = sign(self.mu.count_above(p));
                        let mut t = self.clone();
                        t.mu = mu;
                        Action::Term(s, t)
                    }
                    None => Action::Zero,
                }
            }
            (Field::Psi, n) if n < 0 => {
                let p = (-n) as u32;
                match self.nu.insert(p) {
                    Some(nu) => {
                        let s = sign(self.mu.len() + self.nu.count_above(p));
                        let mut t = self.clone();
                        t.nu = nu;
                        Action::Term(s, t)
                    }
                    None => Action::Zero,
                }
            }
            (Field::Phi, n) => match self.nu.remove(n as u32) {
                Some((nu, at)) => {
                    let mut t = self.clone();
                    t.nu = nu;
                    Action::Term(sign(self.mu.len() + at), t)
                }
                None => Action::Zero,
            },
            (Field::Psi, n) => match self.mu.remove((n + 1) as u32) {
                Some((mu, at)) => {
                    let mut t = self.clone();
                    t.mu = mu;
                    Action::Term(sign(at), t)
                }
                None => Action::Zero,
            },
        }
    }

    /// Tuple spec such as `a[1]:phi[1]:psi[1]:b[1]`; phi entries are the
    /// partition parts μ_i (the mode is φ_{1−μ_i}).
    pub fn spec(&self) -> String {
        let mut groups = Vec::new();
        for (name, p) in [("a", &self.lambda), ("phi", &self.mu), ("psi", &self.nu), ("b", &self.chi)] {
            if !p.is_empty() {
                let parts: Vec<String> = p.parts.iter().map(u32::to_string).collect();
                groups.push(format!("{name}[{}]", parts.join(",")));
            }
        }
        if groups.is_empty() {
            "1".into()
        } else {
            groups.join(":")
        }
    }
}

impl FromStr for FourTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut parts: [Vec<u32>; 4] = Default::default();
        if s == "1" || s.is_empty() {
            return Ok(FourTuple::vacuum());
        }
        for group in s.split(':') {
            let group = group.trim();
            let (name, rest) = group
                .split_once('[')
                .ok_or_else(|| Error::Parse(format!("expected name[parts] in {group:?}")))?;
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("missing ']' in {group:?}")))?;
            let slot = match name.trim() {
                "a" => 0,
                "phi" => 1,
                "psi" => 2,
                "b" => 3,
                other => return Err(Error::Parse(format!("unknown field {other:?}"))),
            };
            for x in inner.split(',').filter(|x| !x.trim().is_empty()) {
                let v: u32 = x.trim().parse().map_err(|_| Error::Parse(format!("bad part {x:?}")))?;
                parts[slot].push(v);
            }
        }
        FourTuple::new(&parts[0], &parts[1], &parts[2], &parts[3])
            .ok_or_else(|| Error::Parse(format!("invalid tuple {s:?} (zero or repeated fermion part)")))
    }
}

impl fmt::Display for FourTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vacuum() {
            return write!(f, "1");
        }
        for m in self.modes() {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// All tuples of a given weight, optionally restricted in charge and part,
/// sorted lexicographically by (part, λ, μ, ν, χ).
pub fn enumerate_fourtuples(weight: u32, charge: Option<i64>, part: Option<i64>) -> Vec<FourTuple> {
    let mut out = Vec::new();
    for wl in 0..=weight {
        for lambda in partitions(wl, Flavor::Ordinary) {
            for wm in 0..=weight - wl {
                for mu in shifted_distinct(wm) {
                    for wn in 0..=weight - wl - wm {
                        let wc = weight - wl - wm - wn;
                        for nu in &partitions(wn, Flavor::Distinct) {
                            for chi in partitions(wc, Flavor::Ordinary) {
                                let t = FourTuple { lambda: lambda.clone(), mu: mu.clone(), nu: nu.clone(), chi };
                                if charge.is_none_or(|c| c == t.charge()) && part.is_none_or(|p| p == t.part()) {
                                    out.push(t);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.part().cmp(&b.part()).then_with(|| a.cmp(b)));
    out
}
