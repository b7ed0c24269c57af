//! Symbolic data for finite simple groups of Lie type: specs, exact orders,
//! the outer automorphism table, and the other simple groups (alternating,
//! sporadic) needed by the candidate enumeration.

mod classes;
mod out;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::numtheory::{
    self, factor_pow_minus_one, factor_pow_plus_one, gcd, Factorization, NumError,
};

pub use classes::{
    alternating_order, class_name, sporadic_groups, IsoClass, SimpleCandidate, SPORADIC_TABLE,
};
pub use out::{
    check_rank_divisor_bounds, cyclic_subgroup_bound, cyclic_subgroup_count, materialize_out,
    out_structure, out_table, OutLaw, OutStructure, OutdiagShape, PhiGamma, RankDivisorBounds,
    TableRow,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("cannot parse '{0}' as a group of Lie type")]
    Parse(String),
    #[error("invalid spec: {0}")]
    Invalid(String),
    #[error("{0} is not simple")]
    NotSimple(String),
    #[error("no outer automorphism table row matches {0}")]
    NoTableRow(String),
    #[error("out table: {0}")]
    Table(String),
    #[error("Out S of order {0} exceeds the materialization cap")]
    TooLarge(u64),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    TwistedA,
    B,
    C,
    D,
    TwistedD,
    TrialityD4,
    G2,
    F4,
    E6,
    TwistedE6,
    E7,
    E8,
    Suzuki,
    Ree,
    LargeRee,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::A,
        Family::TwistedA,
        Family::B,
        Family::C,
        Family::D,
        Family::TwistedD,
        Family::TrialityD4,
        Family::G2,
        Family::F4,
        Family::E6,
        Family::TwistedE6,
        Family::E7,
        Family::E8,
        Family::Suzuki,
        Family::Ree,
        Family::LargeRee,
    ];

    /// Name as used in the table file and in spec strings, without rank for
    /// the classical families.
    pub fn symbol(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::TwistedA => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::TwistedD => "2D",
            Family::TrialityD4 => "3D4",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::TwistedE6 => "2E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::Suzuki => "2B2",
            Family::Ree => "2G2",
            Family::LargeRee => "2F4",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.symbol() == s)
    }

    /// `Some(rank)` for families whose rank is part of the name.
    pub fn fixed_rank(self) -> Option<u32> {
        match self {
            Family::TrialityD4 | Family::F4 | Family::LargeRee => Some(4),
            Family::G2 | Family::Suzuki | Family::Ree => Some(2),
            Family::E6 | Family::TwistedE6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }

    pub fn min_rank(self) -> u32 {
        match self {
            Family::A => 1,
            Family::TwistedA | Family::C => 2,
            Family::B => 3,
            Family::D | Family::TwistedD => 4,
            f => f
                .fixed_rank()
                .expect("exceptional families have a fixed rank"),
        }
    }

    pub fn is_suzuki_ree(self) -> bool {
        matches!(self, Family::Suzuki | Family::Ree | Family::LargeRee)
    }

    /// `Some(p)` for families defined only in one characteristic.
    pub fn required_characteristic(self) -> Option<u64> {
        match self {
            Family::Suzuki | Family::LargeRee => Some(2),
            Family::Ree => Some(3),
            _ => None,
        }
    }

    /// The twist `ε` of `L^ε_n` and `E^ε_6`; `None` for the other families.
    pub fn epsilon(self) -> Option<i8> {
        match self {
            Family::A | Family::E6 => Some(1),
            Family::TwistedA | Family::TwistedE6 => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A finite simple group of Lie type: family, untwisted Lie rank `n`, and
/// field size `q = p^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    family: Family,
    rank: u32,
    q: u64,
    p: u64,
    l: u32,
}

/// Specs whose group is solvable or not simple.
const NOT_SIMPLE: [(Family, u32, u64); 8] = [
    (Family::A, 1, 2),
    (Family::A, 1, 3),
    (Family::TwistedA, 2, 2),
    (Family::C, 2, 2),
    (Family::G2, 2, 2),
    (Family::Suzuki, 2, 2),
    (Family::Ree, 2, 3),
    (Family::LargeRee, 4, 2),
];

impl GroupSpec {
    pub fn new(family: Family, rank: u32, q: u64) -> Result<Self, LieError> {
        let name = || format!("{}({q})", spec_name(family, rank));
        let (p, l) = numtheory::prime_power(q)
            .ok_or_else(|| LieError::Invalid(format!("{q} is not a prime power")))?;
        match family.fixed_rank() {
            Some(r) if r != rank => {
                return Err(LieError::Invalid(format!(
                    "{family} has rank {r}, not {rank}"
                )))
            }
            None if rank < family.min_rank() => {
                return Err(LieError::Invalid(format!(
                    "{family} needs rank at least {}",
                    family.min_rank()
                )))
            }
            _ => {}
        }
        if let Some(req) = family.required_characteristic() {
            if p != req || l % 2 == 0 {
                return Err(LieError::Invalid(format!(
                    "{family} needs q an odd power of {req}, got {q}"
                )));
            }
        }
        if NOT_SIMPLE.contains(&(family, rank, q)) {
            return Err(LieError::NotSimple(name()));
        }
        Ok(Self {
            family,
            rank,
            q,
            p,
            l,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Untwisted Lie rank (the subscript in the family name).
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// `l` with `q = p^l`.
    pub fn field_exponent(&self) -> u32 {
        self.l
    }

    pub fn is_suzuki_ree(&self) -> bool {
        self.family.is_suzuki_ree()
    }

    /// Whether this is `L_2(q) = A_1(q)`.
    pub fn is_l2(&self) -> bool {
        self.family == Family::A && self.rank == 1
    }

    /// Whether this is `L^ε_3(q)`, returning `ε`.
    pub fn l3_epsilon(&self) -> Option<i8> {
        match (self.family, self.rank) {
            (Family::A, 2) => Some(1),
            (Family::TwistedA, 2) => Some(-1),
            _ => None,
        }
    }

    /// Exact order of the simple group.
    pub fn order(&self) -> Result<Factorization, LieError> {
        order_of(self)
    }

    /// `π(S)`, ascending.
    pub fn primes(&self) -> Result<Vec<u64>, LieError> {
        Ok(order_of(self)?.primes().collect())
    }
}

fn spec_name(family: Family, rank: u32) -> String {
    match family.fixed_rank() {
        Some(_) => family.symbol().to_string(),
        None => format!("{}{rank}", family.symbol()),
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", spec_name(self.family, self.rank), self.q)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for GroupSpec {
    type Err = LieError;

    /// Accepts `A2(4)`, `2A3(2)`, `3D4(2)`, `G2(3)`, `2B2(8)` and so on.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LieError::Parse(s.to_string());
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let q: u64 = inner.trim().parse().map_err(|_| bad())?;
        let head = &s[..open];
        // optional twist digit, one letter, then the rank
        let letter_at = usize::from(head.starts_with(['2', '3']));
        if !head[letter_at..].starts_with(|c: char| c.is_ascii_uppercase()) {
            return Err(bad());
        }
        let (symbol, rank_str) = head.split_at(letter_at + 1);
        if rank_str.is_empty() || !rank_str.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: u32 = rank_str.parse().map_err(|_| bad())?;
        let family = Family::from_symbol(symbol)
            .or_else(|| Family::from_symbol(&format!("{symbol}{rank}")))
            .ok_or_else(bad)?;
        GroupSpec::new(family, rank, q)
    }
}

/// `(sign, i)` standing for the factor `q^i + sign`.
type Term = (i8, u32);

fn order_terms(spec: &GroupSpec) -> (u64, Vec<Term>, Vec<Term>) {
    let n = spec.rank;
    let minus = |i| (-1i8, i);
    let plus = |i| (1i8, i);
    match spec.family {
        Family::A => (
            (n * (n + 1) / 2) as u64,
            (2..=n + 1).map(minus).collect(),
            vec![],
        ),
        Family::TwistedA => (
            (n * (n + 1) / 2) as u64,
            (2..=n + 1)
                .map(|i| if i % 2 == 0 { minus(i) } else { plus(i) })
                .collect(),
            vec![],
        ),
        Family::B | Family::C => (
            (n * n) as u64,
            (1..=n).map(|i| minus(2 * i)).collect(),
            vec![],
        ),
        Family::D | Family::TwistedD => {
            let mut t: Vec<Term> = (1..n).map(|i| minus(2 * i)).collect();
            t.push(if spec.family == Family::D {
                minus(n)
            } else {
                plus(n)
            });
            ((n * (n - 1)) as u64, t, vec![])
        }
        // q^8 + q^4 + 1 = (q^12 − 1) / (q^4 − 1)
        Family::TrialityD4 => (12, vec![minus(12), minus(6), minus(2)], vec![minus(4)]),
        Family::G2 => (6, vec![minus(6), minus(2)], vec![]),
        Family::F4 => (24, [12, 8, 6, 2].map(minus).to_vec(), vec![]),
        Family::E6 => (36, [12, 9, 8, 6, 5, 2].map(minus).to_vec(), vec![]),
        Family::TwistedE6 => (
            36,
            vec![minus(12), plus(9), minus(8), minus(6), plus(5), minus(2)],
            vec![],
        ),
        Family::E7 => (63, [2, 6, 8, 10, 12, 14, 18].map(minus).to_vec(), vec![]),
        Family::E8 => (
            120,
            [2, 8, 12, 14, 18, 20, 24, 30].map(minus).to_vec(),
            vec![],
        ),
        Family::Suzuki => (2, vec![plus(2), minus(1)], vec![]),
        Family::Ree => (3, vec![plus(3), minus(1)], vec![]),
        Family::LargeRee => (12, vec![plus(6), minus(4), plus(3), minus(1)], vec![]),
    }
}

/// `q^m mod k` without overflow.
fn q_pow_mod(q: u64, m: u32, k: u64) -> u64 {
    (0..m).fold(1 % k, |acc, _| acc * (q % k) % k)
}

/// The diagonal divisor `d`: the order of the center of the universal
/// group, which is also `|Outdiag S|`.
pub fn diagonal_divisor(spec: &GroupSpec) -> u64 {
    let (n, q) = (spec.rank as u64, spec.q);
    match spec.family {
        Family::A => gcd(n + 1, q - 1),
        Family::TwistedA => gcd(n + 1, q + 1),
        Family::B | Family::C | Family::E7 => gcd(2, q - 1),
        Family::D => gcd(4, (q_pow_mod(q, spec.rank, 4) + 3) % 4),
        Family::TwistedD => gcd(4, (q_pow_mod(q, spec.rank, 4) + 1) % 4),
        Family::E6 => gcd(3, q - 1),
        Family::TwistedE6 => gcd(3, q + 1),
        _ => 1,
    }
}

/// Exact factored order of the simple group, computed from the classical
/// order formulas with every `q^i ± 1` factored through cyclotomic values.
pub fn order_of(spec: &GroupSpec) -> Result<Factorization, LieError> {
    let (q_exp, num, den) = order_terms(spec);
    let (p, l) = (spec.p, spec.l as u64);
    let mut acc = Factorization::prime_power(p, (q_exp * l) as u32)?;
    let term = |(sign, i): Term| -> Result<Factorization, NumError> {
        if sign < 0 {
            factor_pow_minus_one(p, l * i as u64)
        } else {
            factor_pow_plus_one(p, l * i as u64)
        }
    };
    for t in num {
        acc = acc.multiply(&term(t)?);
    }
    for t in den {
        acc = acc.divide(&term(t)?)?;
    }
    let d = diagonal_divisor(spec);
    Ok(acc.divide(&numtheory::factor(d)?)?)
}

/// All valid specs with `q ≤ q_cap` and untwisted rank `≤ n_cap`, sorted.
pub fn sweep_specs(q_cap: u64, n_cap: u32) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for q in 2..=q_cap {
        if numtheory::prime_power(q).is_none() {
            continue;
        }
        for family in Family::ALL {
            let ranks: Vec<u32> = match family.fixed_rank() {
                Some(r) => vec![r],
                None => (family.min_rank()..=n_cap).collect(),
            };
            for rank in ranks.into_iter().filter(|&r| r <= n_cap) {
                if let Ok(spec) = GroupSpec::new(family, rank, q) {
                    out.push(spec);
                }
            }
        }
    }
    out.sort();
    out
}
