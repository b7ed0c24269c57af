//! The outer automorphism table and the abstract group `Out S` built from it.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use super::{diagonal_divisor, Family, GroupSpec, LieError};
use crate::groups::{ConcreteGroup, Element, GroupLaw};
use crate::numtheory::{divisor_count, gcd};

const TABLE_TEXT: &str = include_str!("../../data/out_table.txt");

/// Largest `|Out S|` that [`materialize_out`] will enumerate.
pub const OUT_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankPattern {
    Exact(u32),
    AtLeast(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharPattern {
    Any,
    Odd,
    Prime(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcdLeft {
    Const(u64),
    RankPlusOne,
}

/// `q^e + sign` where `e` is 1 or the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GcdRight {
    rank_power: bool,
    sign: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutdiagExpr {
    One,
    Gcd(GcdLeft, GcdRight),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiGamma {
    Zl,
    Z2l,
    Z3l,
    ZlTimesZ2,
    ZlTimesSym3,
}

impl PhiGamma {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "Z_l" => Self::Zl,
            "Z_2l" => Self::Z2l,
            "Z_3l" => Self::Z3l,
            "Z_lxZ_2" => Self::ZlTimesZ2,
            "Z_lxSym_3" => Self::ZlTimesSym3,
            _ => return None,
        })
    }

    pub fn order(self, l: u32) -> u64 {
        let l = l as u64;
        match self {
            Self::Zl => l,
            Self::Z2l | Self::ZlTimesZ2 => 2 * l,
            Self::Z3l => 3 * l,
            Self::ZlTimesSym3 => 6 * l,
        }
    }

    /// Order of the cyclic field(-graph) generator.
    fn cyclic_order(self, l: u32) -> u32 {
        match self {
            Self::Z2l => 2 * l,
            Self::Z3l => 3 * l,
            _ => l,
        }
    }
}

impl fmt::Display for PhiGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zl => "Z_l",
            Self::Z2l => "Z_2l",
            Self::Z3l => "Z_3l",
            Self::ZlTimesZ2 => "Z_lxZ_2",
            Self::ZlTimesSym3 => "Z_lxSym_3",
        })
    }
}

impl Serialize for PhiGamma {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub family: Family,
    pub rank: RankPattern,
    pub characteristic: CharPattern,
    pub outdiag: OutdiagExpr,
    pub phi_gamma: PhiGamma,
    pub source: String,
}

impl TableRow {
    fn matches(&self, spec: &GroupSpec) -> bool {
        let rank_ok = match self.rank {
            RankPattern::Exact(n) => spec.rank() == n,
            RankPattern::AtLeast(n) => spec.rank() >= n,
        };
        let char_ok = match self.characteristic {
            CharPattern::Any => true,
            CharPattern::Odd => spec.characteristic() % 2 == 1,
            CharPattern::Prime(p) => spec.characteristic() == p,
        };
        self.family == spec.family() && rank_ok && char_ok
    }

    fn outdiag_order(&self, spec: &GroupSpec) -> u64 {
        match self.outdiag {
            OutdiagExpr::One => 1,
            OutdiagExpr::Gcd(left, right) => {
                let a = match left {
                    GcdLeft::Const(c) => c,
                    GcdLeft::RankPlusOne => spec.rank() as u64 + 1,
                };
                let e = if right.rank_power { spec.rank() } else { 1 };
                // gcd(a, q^e ± 1) only depends on q^e mod a
                let qe = (0..e).fold(1 % a, |acc, _| acc * (spec.q() % a) % a);
                let b = if right.sign < 0 {
                    (qe + a - 1) % a
                } else {
                    (qe + 1) % a
                };
                gcd(a, b)
            }
        }
    }
}

fn parse_outdiag(s: &str) -> Option<OutdiagExpr> {
    if s == "1" {
        return Some(OutdiagExpr::One);
    }
    let inner = s.strip_prefix("gcd(")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let left = if a == "n+1" {
        GcdLeft::RankPlusOne
    } else {
        GcdLeft::Const(a.parse().ok().filter(|&c| c > 0)?)
    };
    let right = match b {
        "q-1" => GcdRight {
            rank_power: false,
            sign: -1,
        },
        "q+1" => GcdRight {
            rank_power: false,
            sign: 1,
        },
        "q^n-1" => GcdRight {
            rank_power: true,
            sign: -1,
        },
        "q^n+1" => GcdRight {
            rank_power: true,
            sign: 1,
        },
        _ => return None,
    };
    Some(OutdiagExpr::Gcd(left, right))
}

/// Parses the table's line format.
pub fn parse_out_table(text: &str) -> Result<Vec<TableRow>, LieError> {
    let mut rows = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |what: &str| LieError::Table(format!("line {}: {what}: {line}", no + 1));
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 6 {
            return Err(err("expected 6 columns"));
        }
        let family = Family::from_symbol(cols[0]).ok_or_else(|| err("family"))?;
        let rank = match cols[1].strip_prefix(">=") {
            Some(n) => RankPattern::AtLeast(n.parse().map_err(|_| err("rank"))?),
            None => RankPattern::Exact(cols[1].parse().map_err(|_| err("rank"))?),
        };
        let characteristic = match cols[2] {
            "*" => CharPattern::Any,
            "odd" => CharPattern::Odd,
            p => CharPattern::Prime(p.parse().map_err(|_| err("char"))?),
        };
        let outdiag = parse_outdiag(cols[3]).ok_or_else(|| err("outdiag"))?;
        let phi_gamma = PhiGamma::parse(cols[4]).ok_or_else(|| err("phigamma"))?;
        rows.push(TableRow {
            family,
            rank,
            characteristic,
            outdiag,
            phi_gamma,
            source: cols[5].to_string(),
        });
    }
    Ok(rows)
}

/// The compiled-in table.
pub fn out_table() -> &'static [TableRow] {
    static TABLE: OnceLock<Vec<TableRow>> = OnceLock::new();
    TABLE.get_or_init(|| parse_out_table(TABLE_TEXT).expect("bundled out table parses"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutdiagShape {
    Cyclic,
    /// `Z_2 × Z_2`, for `D_n(q)` with `n` even and `q` odd.
    Klein,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutStructure {
    pub spec: GroupSpec,
    pub outdiag_order: u64,
    pub outdiag_shape: OutdiagShape,
    pub phi_gamma: PhiGamma,
    pub phi_gamma_order: u64,
    pub order: u64,
    pub source: String,
}

pub fn out_structure(spec: &GroupSpec) -> Result<OutStructure, LieError> {
    let row = out_table()
        .iter()
        .find(|r| r.matches(spec))
        .ok_or_else(|| LieError::NoTableRow(spec.to_string()))?;
    let outdiag_order = row.outdiag_order(spec);
    debug_assert_eq!(outdiag_order, diagonal_divisor(spec));
    let klein = spec.family() == Family::D && spec.rank().is_multiple_of(2) && spec.q() % 2 == 1;
    let phi_gamma_order = row.phi_gamma.order(spec.field_exponent());
    Ok(OutStructure {
        spec: *spec,
        outdiag_order,
        outdiag_shape: if klein {
            OutdiagShape::Klein
        } else {
            OutdiagShape::Cyclic
        },
        phi_gamma: row.phi_gamma,
        phi_gamma_order,
        order: outdiag_order * phi_gamma_order,
        source: row.source.clone(),
    })
}

const PERMS3: [[u32; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [0, 2, 1],
    [2, 1, 0],
    [1, 2, 0],
    [2, 0, 1],
];

fn perm_index(p: [u32; 3]) -> u32 {
    PERMS3
        .iter()
        .position(|q| *q == p)
        .expect("permutation of 3 points") as u32
}

fn perm_compose(a: u32, b: u32) -> u32 {
    let (pa, pb) = (PERMS3[a as usize], PERMS3[b as usize]);
    perm_index([pa[pb[0] as usize], pa[pb[1] as usize], pa[pb[2] as usize]])
}

fn perm_inverse(a: u32) -> u32 {
    let pa = PERMS3[a as usize];
    let mut inv = [0u32; 3];
    for (i, &x) in pa.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    perm_index(inv)
}

fn perm_is_odd(a: u32) -> bool {
    matches!(a, 1..=3)
}

/// `Out S` as `Outdiag ⋊ (⟨τ⟩ × Γ)`. Words are `[a0, a1, f, g]`: the
/// Outdiag part (`a0` mod `d`, or a Klein vector `(a0, a1)`), the exponent
/// of the cyclic field(-graph) generator `τ`, and the graph part as an
/// index into the permutations of three points.
///
/// `τ` acts on a cyclic Outdiag by `a ↦ p·a` and trivially on a Klein one;
/// odd graph permutations invert a cyclic Outdiag and permute the three
/// involutions of a Klein one.
#[derive(Debug, Clone)]
pub struct OutLaw {
    shape: OutdiagShape,
    d: u32,
    multiplier: u32,
    tau_order: u32,
}

impl OutLaw {
    fn act(&self, f: u32, g: u32, a: [u32; 2]) -> [u32; 2] {
        match self.shape {
            OutdiagShape::Cyclic => {
                let d = self.d as u64;
                let mut x = a[0] as u64;
                if perm_is_odd(g) {
                    x = (d - x) % d;
                }
                for _ in 0..f {
                    x = x * self.multiplier as u64 % d;
                }
                [x as u32, 0]
            }
            OutdiagShape::Klein => {
                // involutions (1,0), (0,1), (1,1) are labels 0, 1, 2
                let label = match a {
                    [0, 0] => return a,
                    [1, 0] => 0,
                    [0, 1] => 1,
                    _ => 2,
                };
                match PERMS3[g as usize][label] {
                    0 => [1, 0],
                    1 => [0, 1],
                    _ => [1, 1],
                }
            }
        }
    }

    fn add(&self, a: [u32; 2], b: [u32; 2]) -> [u32; 2] {
        match self.shape {
            OutdiagShape::Cyclic => [(a[0] + b[0]) % self.d, 0],
            OutdiagShape::Klein => [a[0] ^ b[0], a[1] ^ b[1]],
        }
    }

    fn neg(&self, a: [u32; 2]) -> [u32; 2] {
        match self.shape {
            OutdiagShape::Cyclic => [(self.d - a[0]) % self.d, 0],
            OutdiagShape::Klein => a,
        }
    }
}

impl GroupLaw for OutLaw {
    fn width(&self) -> usize {
        4
    }

    fn identity(&self) -> Element {
        vec![0, 0, 0, 0]
    }

    fn multiply(&self, x: &[u32], y: &[u32]) -> Element {
        let a = self.add([x[0], x[1]], self.act(x[2], x[3], [y[0], y[1]]));
        let f = (x[2] + y[2]) % self.tau_order;
        vec![a[0], a[1], f, perm_compose(x[3], y[3])]
    }

    fn invert(&self, x: &[u32]) -> Element {
        let f = (self.tau_order - x[2]) % self.tau_order;
        let g = perm_inverse(x[3]);
        let a = self.neg(self.act(f, g, [x[0], x[1]]));
        vec![a[0], a[1], f, g]
    }

    fn is_canonical(&self, x: &[u32]) -> bool {
        let a_ok = match self.shape {
            OutdiagShape::Cyclic => x[0] < self.d && x[1] == 0,
            OutdiagShape::Klein => x[0] < 2 && x[1] < 2,
        };
        x.len() == 4 && a_ok && x[2] < self.tau_order && x[3] < 6
    }
}

/// Builds `Out S` as an enumerated group.
pub fn materialize_out(out: &OutStructure) -> Result<ConcreteGroup, LieError> {
    if out.order > OUT_CAP {
        return Err(LieError::TooLarge(out.order));
    }
    let spec = &out.spec;
    let d = out.outdiag_order as u32;
    let tau_order = out.phi_gamma.cyclic_order(spec.field_exponent());
    let law = OutLaw {
        shape: out.outdiag_shape,
        d,
        multiplier: (spec.characteristic() % d as u64) as u32,
        tau_order,
    };
    let mut gens = Vec::new();
    match out.outdiag_shape {
        OutdiagShape::Cyclic if d > 1 => gens.push(vec![1, 0, 0, 0]),
        OutdiagShape::Cyclic => {}
        OutdiagShape::Klein => {
            gens.push(vec![1, 0, 0, 0]);
            gens.push(vec![0, 1, 0, 0]);
        }
    }
    if tau_order > 1 {
        gens.push(vec![0, 0, 1, 0]);
    }
    match out.phi_gamma {
        PhiGamma::ZlTimesZ2 => gens.push(vec![0, 0, 0, 1]),
        PhiGamma::ZlTimesSym3 => {
            gens.push(vec![0, 0, 0, 1]);
            gens.push(vec![0, 0, 0, 4]);
        }
        _ => {}
    }
    let group = ConcreteGroup::generate(
        format!("Out {}", out.spec),
        Arc::new(law),
        gens,
        OUT_CAP as usize,
    )
    .map_err(|_| LieError::TooLarge(out.order))?;
    if group.order() as u64 != out.order {
        return Err(LieError::Table(format!(
            "Out {} materialized with {} elements, table says {}",
            out.spec,
            group.order(),
            out.order
        )));
    }
    Ok(group)
}

/// Number of distinct cyclic subgroups of `Out S`.
pub fn cyclic_subgroup_count(out: &OutStructure) -> Result<u64, LieError> {
    let group = materialize_out(out)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for g in 0..group.order() as u32 {
        seen.insert(group.closure(&[g]).members().to_vec());
    }
    Ok(seen.len() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankDivisorBounds {
    pub rank: u32,
    pub pi_size: u64,
    pub divisors_of_l: u64,
    pub rank_ok: bool,
    pub divisor_ok: bool,
    pub holds: bool,
}

/// `n ≤ 2|π(S)| + 3` and `d(l) ≤ |π(S)| + 1`.
pub fn check_rank_divisor_bounds(spec: &GroupSpec) -> Result<RankDivisorBounds, LieError> {
    let pi_size = spec.primes()?.len() as u64;
    let divisors_of_l = divisor_count(spec.field_exponent() as u64)?;
    let rank_ok = spec.rank() as u64 <= 2 * pi_size + 3;
    let divisor_ok = divisors_of_l <= pi_size + 1;
    Ok(RankDivisorBounds {
        rank: spec.rank(),
        pi_size,
        divisors_of_l,
        rank_ok,
        divisor_ok,
        holds: rank_ok && divisor_ok,
    })
}

/// `6(n+1)d(l)`.
pub fn cyclic_subgroup_bound(spec: &GroupSpec) -> u64 {
    let dl = divisor_count(spec.field_exponent() as u64).expect("l ≥ 1");
    6 * (spec.rank() as u64 + 1) * dl
}
