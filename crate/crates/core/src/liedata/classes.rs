//! Simple groups outside the Lie-type tables (alternating and sporadic) and
//! the exceptional isomorphisms used to merge candidates into classes.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{Family, GroupSpec, LieError};
use crate::numtheory::{is_prime, Factorization};

/// Orders of the 26 sporadic groups and the Tits group `2F4(2)'`.
pub const SPORADIC_TABLE: &[(&str, &[(u64, u32)])] = &[
    ("M11", &[(2, 4), (3, 2), (5, 1), (11, 1)]),
    ("M12", &[(2, 6), (3, 3), (5, 1), (11, 1)]),
    ("J1", &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)]),
    ("M22", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)]),
    ("J2", &[(2, 7), (3, 3), (5, 2), (7, 1)]),
    ("M23", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)]),
    ("HS", &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)]),
    ("J3", &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)]),
    ("M24", &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)]),
    ("McL", &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)]),
    ("He", &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)]),
    ("Ru", &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)]),
    ("Suz", &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)]),
    (
        "O'N",
        &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)],
    ),
    ("Co3", &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)]),
    ("Co2", &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)]),
    ("Fi22", &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)]),
    ("HN", &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)]),
    (
        "Ly",
        &[
            (2, 8),
            (3, 7),
            (5, 6),
            (7, 1),
            (11, 1),
            (31, 1),
            (37, 1),
            (67, 1),
        ],
    ),
    (
        "Th",
        &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)],
    ),
    (
        "Fi23",
        &[
            (2, 18),
            (3, 13),
            (5, 2),
            (7, 1),
            (11, 1),
            (13, 1),
            (17, 1),
            (23, 1),
        ],
    ),
    (
        "Co1",
        &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)],
    ),
    (
        "J4",
        &[
            (2, 21),
            (3, 3),
            (5, 1),
            (7, 1),
            (11, 3),
            (23, 1),
            (29, 1),
            (31, 1),
            (37, 1),
            (43, 1),
        ],
    ),
    (
        "Fi24'",
        &[
            (2, 21),
            (3, 16),
            (5, 2),
            (7, 3),
            (11, 1),
            (13, 1),
            (17, 1),
            (23, 1),
            (29, 1),
        ],
    ),
    (
        "B",
        &[
            (2, 41),
            (3, 13),
            (5, 6),
            (7, 2),
            (11, 1),
            (13, 1),
            (17, 1),
            (19, 1),
            (23, 1),
            (31, 1),
            (47, 1),
        ],
    ),
    (
        "M",
        &[
            (2, 46),
            (3, 20),
            (5, 9),
            (7, 6),
            (11, 2),
            (13, 3),
            (17, 1),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
            (41, 1),
            (47, 1),
            (59, 1),
            (71, 1),
        ],
    ),
    ("2F4(2)'", &[(2, 11), (3, 3), (5, 2), (13, 1)]),
];

pub fn sporadic_groups() -> Vec<(&'static str, Factorization)> {
    SPORADIC_TABLE
        .iter()
        .map(|(name, pairs)| {
            let f = Factorization::from_pairs(pairs.iter().copied()).expect("table primes");
            (*name, f)
        })
        .collect()
}

/// `|Alt_n| = n!/2` by Legendre's formula.
pub fn alternating_order(n: u32) -> Result<Factorization, LieError> {
    if n < 5 {
        return Err(LieError::Invalid(format!("Alt{n} is not simple")));
    }
    let n = n as u64;
    let pairs = (2..=n).filter(|&p| is_prime(p)).map(|p| {
        let mut e = 0u32;
        let mut pk = p;
        while pk <= n {
            e += (n / pk) as u32;
            pk *= p;
        }
        if p == 2 {
            e -= 1;
        }
        (p, e)
    });
    Ok(Factorization::from_pairs(pairs)?)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SimpleCandidate {
    Lie(GroupSpec),
    Alternating(u32),
    Sporadic(&'static str),
}

impl SimpleCandidate {
    pub fn name(&self) -> String {
        match self {
            Self::Lie(s) => s.to_string(),
            Self::Alternating(n) => format!("Alt{n}"),
            Self::Sporadic(s) => s.to_string(),
        }
    }

    pub fn order(&self) -> Result<Factorization, LieError> {
        match self {
            Self::Lie(s) => s.order(),
            Self::Alternating(n) => alternating_order(*n),
            Self::Sporadic(name) => sporadic_groups()
                .into_iter()
                .find(|(n, _)| n == name)
                .map(|(_, f)| f)
                .ok_or_else(|| LieError::Invalid(format!("unknown sporadic group {name}"))),
        }
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        match self {
            Self::Lie(s) => Some(s),
            _ => None,
        }
    }
}

/// Isomorphisms between distinct names in the candidate lists.
const ISOMORPHISMS: &[(&str, &[&str])] = &[
    ("Alt5", &["A1(4)", "A1(5)", "Alt5"]),
    ("A1(7)", &["A1(7)", "A2(2)"]),
    ("Alt6", &["A1(9)", "Alt6"]),
    ("Alt8", &["A3(2)", "Alt8"]),
    ("U4(2)", &["2A3(2)", "C2(3)"]),
];

/// Name of the isomorphism class containing `c`. Besides the table,
/// `B_n(2^k) ≅ C_n(2^k)` is folded onto the `C` name.
pub fn class_name(c: &SimpleCandidate) -> String {
    let name = c.name();
    if let Some((class, _)) = ISOMORPHISMS
        .iter()
        .find(|(_, m)| m.contains(&name.as_str()))
    {
        return class.to_string();
    }
    if let SimpleCandidate::Lie(s) = c {
        if s.family() == Family::B && s.characteristic() == 2 {
            return format!("C{}({})", s.rank(), s.q());
        }
    }
    name
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub name: String,
    pub order: String,
    pub members: Vec<String>,
    #[serde(skip)]
    pub order_factorization: Factorization,
    #[serde(skip)]
    pub specs: Vec<GroupSpec>,
}

impl IsoClass {
    /// Merges candidates into isomorphism classes, sorted by order and then
    /// by name. Members of one class must have equal orders.
    pub fn group(candidates: &[SimpleCandidate]) -> Result<Vec<IsoClass>, LieError> {
        let mut by_name: BTreeMap<String, Vec<&SimpleCandidate>> = BTreeMap::new();
        for c in candidates {
            by_name.entry(class_name(c)).or_default().push(c);
        }
        let mut classes = Vec::new();
        for (name, mut members) in by_name {
            members.sort();
            members.dedup();
            let order = members[0].order()?;
            for m in &members[1..] {
                if m.order()? != order {
                    return Err(LieError::Invalid(format!(
                        "{} and {} share class {name} but differ in order",
                        members[0].name(),
                        m.name()
                    )));
                }
            }
            classes.push(IsoClass {
                name,
                order: order.to_biguint().to_string(),
                members: members.iter().map(|m| m.name()).collect(),
                order_factorization: order,
                specs: members.iter().filter_map(|m| m.spec().copied()).collect(),
            });
        }
        classes.sort_by(|a, b| {
            a.order_factorization
                .to_biguint()
                .cmp(&b.order_factorization.to_biguint())
                .then_with(|| a.name.cmp(&b.name))
        });
        Ok(classes)
    }
}
