//! The one-line group descriptor format:
//!
//! ```text
//! [Z m x] FAMILY n q [projective] [rtimes-field r]
//! ```
//!
//! `FAMILY` is one of `SL GL SU GU Sp AGL`. `q` is either an integer prime
//! power or a field descriptor `p^k:c0,...,ck`. For the unitary families an
//! integer `q` names the form field, so matrices live over GF(q²); a field
//! descriptor always names the matrix field itself. The optional `Z m x`
//! prefix takes the direct product with a cyclic group of order `m`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::classical::{
    build_classical, classical_order, cyclic_group, direct_product, form_field_order,
    semidirect_field_aut, ClassicalFamily,
};
use super::{ConcreteGroup, GroupError};
use crate::ffield::Field;
use crate::numtheory::prime_power;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldToken {
    Order(u64),
    Descriptor(String),
}

impl fmt::Display for FieldToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Order(q) => write!(f, "{q}"),
            Self::Descriptor(d) => f.write_str(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub cyclic_factor: Option<u32>,
    pub family: ClassicalFamily,
    pub n: usize,
    pub field: FieldToken,
    pub projective: bool,
    pub field_automorphism: Option<u32>,
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.cyclic_factor {
            write!(f, "Z {m} x ")?;
        }
        write!(f, "{} {} {}", self.family, self.n, self.field)?;
        if self.projective {
            f.write_str(" projective")?;
        }
        if let Some(r) = self.field_automorphism {
            write!(f, " rtimes-field {r}")?;
        }
        Ok(())
    }
}

fn parse_num<T: FromStr>(tok: Option<&str>, what: &str) -> Result<T, GroupError> {
    let tok = tok.ok_or_else(|| GroupError::Parse(format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| GroupError::Parse(format!("bad {what} '{tok}'")))
}

impl FromStr for GroupDescriptor {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let mut it = toks.iter().copied().peekable();
        let mut cyclic_factor = None;
        if it.peek() == Some(&"Z") {
            it.next();
            let m: u32 = parse_num(it.next(), "cyclic order")?;
            if m == 0 {
                return Err(GroupError::Parse("cyclic order must be positive".into()));
            }
            if it.next() != Some("x") {
                return Err(GroupError::Parse("expected 'x' after cyclic factor".into()));
            }
            cyclic_factor = Some(m);
        }
        let family: ClassicalFamily = it
            .next()
            .ok_or_else(|| GroupError::Parse("empty descriptor".into()))?
            .parse()?;
        let n: usize = parse_num(it.next(), "dimension")?;
        let q_tok = it
            .next()
            .ok_or_else(|| GroupError::Parse("missing field size".into()))?;
        let field = if q_tok.contains(':') {
            Field::from_descriptor(q_tok)?;
            FieldToken::Descriptor(q_tok.to_string())
        } else {
            let q: u64 = parse_num(Some(q_tok), "field size")?;
            if prime_power(q).is_none() {
                return Err(GroupError::Parse(format!("{q} is not a prime power")));
            }
            FieldToken::Order(q)
        };
        let mut projective = false;
        let mut field_automorphism = None;
        while let Some(tok) = it.next() {
            match tok {
                "projective" if !projective && field_automorphism.is_none() => projective = true,
                "rtimes-field" if field_automorphism.is_none() => {
                    let r: u32 = parse_num(it.next(), "automorphism order")?;
                    if r == 0 {
                        return Err(GroupError::Parse(
                            "automorphism order must be positive".into(),
                        ));
                    }
                    field_automorphism = Some(r);
                }
                other => return Err(GroupError::Parse(format!("unexpected token '{other}'"))),
            }
        }
        Ok(Self {
            cyclic_factor,
            family,
            n,
            field,
            projective,
            field_automorphism,
        })
    }
}

impl GroupDescriptor {
    /// The matrix field.
    pub fn matrix_field(&self) -> Result<Field, GroupError> {
        match &self.field {
            FieldToken::Descriptor(d) => Ok(Field::from_descriptor(d)?),
            FieldToken::Order(q) => {
                let (p, k) = prime_power(*q).expect("validated on parse");
                let k = if self.family.is_unitary() { 2 * k } else { k };
                Ok(Field::new(p, k)?)
            }
        }
    }

    /// Order predicted by the closed-form formulas, `None` on overflow.
    pub fn predicted_order(&self) -> Result<Option<u128>, GroupError> {
        let field = self.matrix_field()?;
        let q = form_field_order(self.family, &field)?;
        let base = classical_order(self.family, self.n, q, self.projective);
        Ok(base.and_then(|o| {
            o.checked_mul(self.field_automorphism.unwrap_or(1) as u128)?
                .checked_mul(self.cyclic_factor.unwrap_or(1) as u128)
        }))
    }

    /// Enumerates the group, refusing before any work if the predicted
    /// order exceeds `cap`.
    pub fn build(&self, cap: usize) -> Result<ConcreteGroup, GroupError> {
        let name = self.to_string();
        let predicted = self.predicted_order()?;
        match predicted {
            Some(o) if o <= cap as u128 => {}
            _ => {
                return Err(GroupError::CapExceeded {
                    descriptor: name,
                    cap,
                    predicted,
                })
            }
        }
        let field = Arc::new(self.matrix_field()?);
        let mut group = build_classical(self.family, self.n, field, self.projective, cap)?;
        if let Some(r) = self.field_automorphism {
            group = semidirect_field_aut(&group, r, cap)?;
        }
        if let Some(m) = self.cyclic_factor {
            group = direct_product(&cyclic_group(m), &group, cap)?;
        }
        Ok(group.renamed(name))
    }

    /// Position of the automorphism exponent inside an element word, if the
    /// group has a field-automorphism part.
    pub fn exponent_slot(&self) -> Option<usize> {
        self.field_automorphism?;
        let dim = if self.family == ClassicalFamily::AGL {
            self.n + 1
        } else {
            self.n
        };
        Some(dim * dim + usize::from(self.cyclic_factor.is_some()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "SL 2 7 projective",
            "SL 2 3",
            "GL 2 9 projective rtimes-field 2",
            "Z 7 x GL 2 9 projective rtimes-field 2",
            "SU 3 3 projective",
            "Sp 4 2",
            "AGL 1 5",
            "SL 2 3^2:2,2,1 projective",
        ] {
            let d: GroupDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn rejects_malformed() {
        for s in [
            "",
            "XL 2 7",
            "SL two 7",
            "SL 2 6",
            "SL 2 7 projective projective",
            "SL 2 7 rtimes-field",
            "SL 2 7 rtimes-field 2 projective",
            "Z 0 x SL 2 7",
            "Z 3 SL 2 7",
            "SL 2 3^2:1,1,1",
        ] {
            assert!(s.parse::<GroupDescriptor>().is_err(), "{s:?}");
        }
    }

    #[test]
    fn builds_with_expected_orders() {
        let cases = [
            ("SL 2 3", 24),
            ("SL 2 7 projective", 168),
            ("GL 2 9 projective rtimes-field 2", 1440),
            ("SL 2 4 projective rtimes-field 2", 120),
            ("Z 3 x SL 2 5 projective", 180),
            ("SL 2 3^2:2,2,1 projective", 360),
        ];
        for (s, order) in cases {
            let d: GroupDescriptor = s.parse().unwrap();
            let g = d.build(100_000).unwrap();
            assert_eq!(g.order(), order, "{s}");
            assert_eq!(g.descriptor(), s);
        }
    }

    #[test]
    fn cap_checked_up_front() {
        let d: GroupDescriptor = "SL 3 4 projective rtimes-field 2".parse().unwrap();
        match d.build(30_000) {
            Err(GroupError::CapExceeded { predicted, .. }) => assert_eq!(predicted, Some(40320)),
            other => panic!("{other:?}"),
        }
        let huge: GroupDescriptor = "GL 8 65536".parse().unwrap();
        assert!(matches!(
            huge.build(1000),
            Err(GroupError::CapExceeded {
                predicted: None,
                ..
            })
        ));
    }
}
