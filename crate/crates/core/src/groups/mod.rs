//! Concrete finite groups: matrix groups over finite fields, projective
//! quotients, field-automorphism extensions, and the subgroup machinery the
//! verifiers need.

mod classical;
mod concrete;
mod descriptor;
pub mod law;
mod series;
mod sylow;

use thiserror::Error;

use crate::ffield::FieldError;

pub use classical::{
    build_classical, classical_generators, classical_order, cyclic_group, direct_product,
    form_field_order, matrix_group, semidirect_field_aut, symmetric_group, symplectic_gram,
    ClassicalFamily,
};
pub use concrete::{ConcreteGroup, QuotientLaw, Subgroup, DEFAULT_CAP};
pub use descriptor::{FieldToken, GroupDescriptor};
pub use law::{Element, GroupLaw};
pub use series::{socle_spec, ExtensionSeries, SeriesCheck};
pub use sylow::{fixed_point_free_check, FixedPointFree, SylowKind, SylowShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element {0} is not in canonical form")]
    NotCanonical(String),
    #[error("element {0} is not a member of the group")]
    NotAMember(String),
    #[error("{descriptor}: enumeration cap {cap} exceeded{}", predicted.map(|p| format!(" (predicted order {p})")).unwrap_or_default())]
    CapExceeded {
        descriptor: String,
        cap: usize,
        predicted: Option<u128>,
    },
    #[error("listed elements do not form a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{descriptor}: enumerated {enumerated} elements, order formula gives {expected}")]
    OrderMismatch {
        descriptor: String,
        enumerated: u64,
        expected: u64,
    },
    #[error("automorphism order {r} does not divide field degree {degree}")]
    NotDivisor { r: u32, degree: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("descriptor parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A matrix in projective canonical form: its first nonzero entry in
/// row-major order is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveMatrix {
    pub n: usize,
    pub entries: Vec<u32>,
}

impl ProjectiveMatrix {
    /// Normalizes `entries` under `law`; fails for singular or misshapen
    /// input.
    pub fn new(law: &law::MatrixLaw, entries: Vec<u32>) -> Result<Self, GroupError> {
        let mut entries = entries;
        law.normalize(&mut entries);
        if !law.is_canonical(&entries) {
            return Err(GroupError::NotCanonical(format!("{entries:?}")));
        }
        Ok(Self {
            n: law.dimension(),
            entries,
        })
    }
}

/// An element `(A, φ^i)` of a field-automorphism extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AugmentedElement {
    pub matrix: ProjectiveMatrix,
    pub exponent: u32,
}

impl AugmentedElement {
    pub fn from_word(word: &[u32], n: usize) -> Self {
        let (m, e) = word.split_at(n * n);
        Self {
            matrix: ProjectiveMatrix {
                n,
                entries: m.to_vec(),
            },
            exponent: e[0],
        }
    }

    pub fn to_word(&self) -> Element {
        let mut w = self.matrix.entries.clone();
        w.push(self.exponent);
        w
    }
}
