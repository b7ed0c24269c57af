//! Classical matrix groups over finite fields and their extensions by field
//! automorphisms.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use super::law::{AugmentedLaw, CyclicLaw, DirectProductLaw, Element, GroupLaw, MatrixLaw};
use super::{ConcreteGroup, GroupError};
use crate::ffield::Field;
use crate::numtheory::gcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassicalFamily {
    SL,
    GL,
    SU,
    GU,
    Sp,
    /// Affine general linear group `q^n ⋊ GL(n, q)` as `(n+1) × (n+1)`
    /// matrices with last row `(0, …, 0, 1)`.
    AGL,
}

impl ClassicalFamily {
    pub fn is_unitary(self) -> bool {
        matches!(self, Self::SU | Self::GU)
    }
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::SL => "SL",
            Self::GL => "GL",
            Self::SU => "SU",
            Self::GU => "GU",
            Self::Sp => "Sp",
            Self::AGL => "AGL",
        };
        f.write_str(s)
    }
}

impl FromStr for ClassicalFamily {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "SL" => Self::SL,
            "GL" => Self::GL,
            "SU" => Self::SU,
            "GU" => Self::GU,
            "Sp" => Self::Sp,
            "AGL" => Self::AGL,
            _ => return Err(GroupError::Parse(format!("unknown family '{s}'"))),
        })
    }
}

/// `q` such that the matrix field is GF(q) (linear, symplectic, affine)
/// or GF(q²) (unitary).
pub fn form_field_order(family: ClassicalFamily, field: &Field) -> Result<u64, GroupError> {
    if family.is_unitary() {
        if !field.degree().is_multiple_of(2) {
            return Err(GroupError::Unsupported(format!(
                "unitary groups need a field of even degree, got {}",
                field.descriptor()
            )));
        }
        Ok(field.characteristic().pow(field.degree() / 2))
    } else {
        Ok(field.order())
    }
}

fn checked_product<I: IntoIterator<Item = Option<u128>>>(terms: I) -> Option<u128> {
    terms
        .into_iter()
        .try_fold(1u128, |acc, t| t.and_then(|t| acc.checked_mul(t)))
}

/// Closed-form order of the classical group, `None` on overflow.
pub fn classical_order(
    family: ClassicalFamily,
    n: usize,
    q: u64,
    projective: bool,
) -> Option<u128> {
    let q = q as u128;
    let n32 = n as u32;
    let qpow = |e: u32| q.checked_pow(e);
    let gl = |n: u32| {
        checked_product(
            std::iter::once(qpow(n * n.saturating_sub(1) / 2))
                .chain((1..=n).map(|i| qpow(i).map(|v| v - 1))),
        )
    };
    match family {
        ClassicalFamily::GL => {
            let o = gl(n32)?;
            Some(if projective { o / (q - 1) } else { o })
        }
        ClassicalFamily::SL => {
            let o = gl(n32)? / (q - 1);
            let d = gcd(n as u64, q as u64 - 1) as u128;
            Some(if projective { o / d } else { o })
        }
        ClassicalFamily::GU | ClassicalFamily::SU => {
            let gu = checked_product(std::iter::once(qpow(n32 * (n32 - 1) / 2)).chain(
                (1..=n32).map(|i| qpow(i).map(|v| if i % 2 == 0 { v - 1 } else { v + 1 })),
            ))?;
            let d = gcd(n as u64, q as u64 + 1) as u128;
            Some(match (family, projective) {
                (ClassicalFamily::GU, false) => gu,
                (ClassicalFamily::GU, true) => gu / (q + 1),
                (_, false) => gu / (q + 1),
                (_, true) => gu / (q + 1) / d,
            })
        }
        ClassicalFamily::Sp => {
            let m = n32 / 2;
            let o = checked_product(
                std::iter::once(qpow(m * m)).chain((1..=m).map(|i| qpow(2 * i).map(|v| v - 1))),
            )?;
            let d = gcd(2, q as u64 - 1) as u128;
            Some(if projective { o / d } else { o })
        }
        ClassicalFamily::AGL => qpow(n32)?.checked_mul(gl(n32)?),
    }
}

fn matrix_with(n: usize, cells: &[(usize, usize, u32)]) -> Element {
    let mut m = vec![0u32; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    for &(i, j, v) in cells {
        m[i * n + j] = v;
    }
    m
}

/// Additive basis `1, x, …, x^{k-1}` of the field over its prime field.
fn field_basis(field: &Field) -> Vec<u32> {
    (0..field.degree())
        .map(|j| field.characteristic().pow(j) as u32)
        .collect()
}

fn sl_generators(field: &Field, n: usize) -> Vec<Element> {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        for &b in &field_basis(field) {
            gens.push(matrix_with(n, &[(i, i + 1, b)]));
            gens.push(matrix_with(n, &[(i + 1, i, b)]));
        }
    }
    gens
}

/// Norm `x^{q+1}` from GF(q²) to GF(q).
fn norm(field: &Field, q: u64, x: u32) -> u32 {
    field.pow(x, q + 1)
}

fn conj(field: &Field, x: u32) -> u32 {
    field.frobenius(x, field.degree() / 2)
}

/// Every `m × m` matrix over GF(q²) with orthonormal rows for the identity
/// Hermitian form and determinant 1, found by row-wise backtracking.
fn su_block_elements(field: &Arc<Field>, m: usize, q: u64) -> Vec<Element> {
    let f = &**field;
    let dot = |x: &[u32], y: &[u32]| {
        x.iter()
            .zip(y)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, conj(f, b))))
    };
    let vectors: Vec<Vec<u32>> = (0..f.order().pow(m as u32))
        .map(|code| {
            (0..m)
                .map(|i| (code / f.order().pow(i as u32) % f.order()) as u32)
                .collect()
        })
        .filter(|v: &Vec<u32>| v.iter().fold(0, |acc, &x| f.add(acc, norm(f, q, x))) == 1)
        .collect();
    let law = MatrixLaw::new(field.clone(), m, false);
    let mut out = Vec::new();
    let mut rows: Vec<&[u32]> = Vec::new();
    fn extend<'v>(
        rows: &mut Vec<&'v [u32]>,
        vectors: &'v [Vec<u32>],
        m: usize,
        dot: &dyn Fn(&[u32], &[u32]) -> u32,
        emit: &mut dyn FnMut(&[&[u32]]),
    ) {
        if rows.len() == m {
            emit(rows);
            return;
        }
        for v in vectors {
            if rows.iter().all(|r| dot(r, v) == 0) {
                rows.push(v);
                extend(rows, vectors, m, dot, emit);
                rows.pop();
            }
        }
    }
    extend(&mut rows, &vectors, m, &dot, &mut |rows| {
        let mat: Element = rows.concat();
        if law.determinant(&mat) == 1 {
            out.push(mat);
        }
    });
    out
}

/// Generators of SU(n, q) for the identity Hermitian form: small special
/// unitary blocks on windows of consecutive coordinates. Over GF(4) the
/// 2 × 2 blocks generate a proper subgroup, so 3 × 3 blocks are added.
fn su_generators(field: &Arc<Field>, n: usize, q: u64) -> Vec<Element> {
    let mut block_sizes = vec![2];
    if q == 2 && n >= 3 {
        block_sizes.push(3);
    }
    let mut gens = Vec::new();
    for m in block_sizes {
        let law: Arc<dyn GroupLaw> = Arc::new(MatrixLaw::new(field.clone(), m, false));
        let block_group =
            ConcreteGroup::generate("SU block", law, su_block_elements(field, m, q), usize::MAX)
                .expect("uncapped");
        let members: Vec<u32> = (0..block_group.order() as u32).collect();
        for g in block_group.small_generating_set(&members) {
            let blk = block_group.element(g);
            for start in 0..=n - m {
                let cells: Vec<(usize, usize, u32)> = (0..m * m)
                    .map(|c| (start + c / m, start + c % m, blk[c]))
                    .collect();
                gens.push(matrix_with(n, &cells));
            }
        }
    }
    gens
}

/// Gram matrix `[[0, I], [−I, 0]]` of the standard alternating form.
pub fn symplectic_gram(field: &Field, n: usize) -> Element {
    let m = n / 2;
    let mut j = vec![0u32; n * n];
    for i in 0..m {
        j[i * n + (m + i)] = 1;
        j[(m + i) * n + i] = field.neg(1);
    }
    j
}

/// Symplectic transvections `x ↦ x + a·B(x, v)·v` for every nonzero 0/1
/// vector `v` and every basis scalar `a`.
fn sp_generators(field: &Field, n: usize) -> Vec<Element> {
    let j = symplectic_gram(field, n);
    let mut gens = Vec::new();
    for mask in 1u32..(1 << n) {
        let v: Vec<u32> = (0..n).map(|i| (mask >> i) & 1).collect();
        // row vector w = (J v)^T so that B(x, v) = x^T J v = w · x
        let w: Vec<u32> = (0..n)
            .map(|r| (0..n).fold(0, |acc, c| field.add(acc, field.mul(j[r * n + c], v[c]))))
            .collect();
        for &a in &field_basis(field) {
            let mut t = matrix_with(n, &[]);
            for r in 0..n {
                for c in 0..n {
                    let delta = field.mul(a, field.mul(v[r], w[c]));
                    t[r * n + c] = field.add(t[r * n + c], delta);
                }
            }
            gens.push(t);
        }
    }
    gens
}

fn agl_generators(field: &Field, n: usize) -> Vec<Element> {
    let dim = n + 1;
    let mut gens = Vec::new();
    let embed = |m: &Element| {
        let mut out = matrix_with(dim, &[]);
        for r in 0..n {
            for c in 0..n {
                out[r * dim + c] = m[r * n + c];
            }
        }
        out
    };
    for g in sl_generators(field, n) {
        gens.push(embed(&g));
    }
    gens.push(embed(&matrix_with(n, &[(0, 0, field.primitive())])));
    for &b in &field_basis(field) {
        gens.push(matrix_with(dim, &[(0, n, b)]));
    }
    gens
}

/// Generators of the classical group as matrices (before normalization).
pub fn classical_generators(
    family: ClassicalFamily,
    n: usize,
    field: &Arc<Field>,
) -> Result<Vec<Element>, GroupError> {
    let q = form_field_order(family, field)?;
    let gens = match family {
        ClassicalFamily::SL => sl_generators(field, n),
        ClassicalFamily::GL => {
            let mut g = sl_generators(field, n);
            g.push(matrix_with(n, &[(0, 0, field.primitive())]));
            g
        }
        ClassicalFamily::SU => su_generators(field, n, q),
        ClassicalFamily::GU => {
            let mut g = su_generators(field, n, q);
            // λ = ω^{q−1} generates the norm-one subgroup of order q + 1
            let lambda = field.pow(field.primitive(), q - 1);
            g.push(matrix_with(n, &[(0, 0, lambda)]));
            g
        }
        ClassicalFamily::Sp => sp_generators(field, n),
        ClassicalFamily::AGL => agl_generators(field, n),
    };
    Ok(gens)
}

fn check_dimension(family: ClassicalFamily, n: usize) -> Result<(), GroupError> {
    let ok = match family {
        ClassicalFamily::SL | ClassicalFamily::GL | ClassicalFamily::AGL => n >= 1,
        ClassicalFamily::SU | ClassicalFamily::GU => n >= 2,
        ClassicalFamily::Sp => n >= 2 && n.is_multiple_of(2),
    };
    if ok && n <= 8 {
        Ok(())
    } else {
        Err(GroupError::Unsupported(format!(
            "{family} in dimension {n}"
        )))
    }
}

/// Enumerates a classical group over `field` (the matrix field: GF(q²) for
/// unitary families) and checks its order against the closed form.
pub fn build_classical(
    family: ClassicalFamily,
    n: usize,
    field: Arc<Field>,
    projective: bool,
    cap: usize,
) -> Result<ConcreteGroup, GroupError> {
    check_dimension(family, n)?;
    if family == ClassicalFamily::AGL && projective {
        return Err(GroupError::Unsupported("projective affine groups".into()));
    }
    let q = form_field_order(family, &field)?;
    let descriptor = format!(
        "{family} {n} {q}{}",
        if projective { " projective" } else { "" }
    );
    let predicted = classical_order(family, n, q, projective);
    match predicted {
        Some(o) if o <= cap as u128 => {}
        _ => {
            return Err(GroupError::CapExceeded {
                descriptor,
                cap,
                predicted,
            })
        }
    }
    let dim = if family == ClassicalFamily::AGL {
        n + 1
    } else {
        n
    };
    let law = MatrixLaw::new(field.clone(), dim, projective);
    let gens = classical_generators(family, n, &field)?
        .into_iter()
        .map(|mut g| {
            law.normalize(&mut g);
            g
        })
        .collect();
    let group = ConcreteGroup::generate(descriptor.clone(), Arc::new(law), gens, cap)?;
    let expected = predicted.expect("checked above");
    if group.order() as u128 != expected {
        return Err(GroupError::OrderMismatch {
            descriptor,
            enumerated: group.order() as u64,
            expected: expected as u64,
        });
    }
    Ok(group)
}

/// Extends a (projective) matrix group by the field automorphism of order
/// `r`, `x ↦ x^(p^(k/r))` where `k` is the degree of the matrix field.
pub fn semidirect_field_aut(
    base: &ConcreteGroup,
    r: u32,
    cap: usize,
) -> Result<ConcreteGroup, GroupError> {
    let matrix = base
        .law()
        .as_matrix()
        .ok_or_else(|| GroupError::Unsupported("field automorphisms need a matrix group".into()))?
        .clone();
    let k = matrix.field().degree();
    if r == 0 || k % r != 0 {
        return Err(GroupError::NotDivisor { r, degree: k });
    }
    let predicted = base.order() as u128 * r as u128;
    let descriptor = format!("{} rtimes-field {r}", base.descriptor());
    if predicted > cap as u128 {
        return Err(GroupError::CapExceeded {
            descriptor,
            cap,
            predicted: Some(predicted),
        });
    }
    let law = AugmentedLaw::new(matrix, k / r, r);
    let mut gens: Vec<Element> = base
        .generators()
        .iter()
        .map(|&g| law.embed(base.element(g), 0))
        .collect();
    gens.push(law.embed(&law.base().raw_identity(), 1));
    let group = ConcreteGroup::generate(descriptor.clone(), Arc::new(law), gens, cap)?;
    if group.order() as u128 != predicted {
        return Err(GroupError::OrderMismatch {
            descriptor,
            enumerated: group.order() as u64,
            expected: predicted as u64,
        });
    }
    Ok(group)
}

pub fn cyclic_group(n: u32) -> ConcreteGroup {
    let gens = if n > 1 { vec![vec![1]] } else { vec![] };
    ConcreteGroup::generate(
        format!("Z {n}"),
        Arc::new(CyclicLaw::new(n)),
        gens,
        usize::MAX,
    )
    .expect("uncapped")
}

pub fn symmetric_group(degree: usize) -> ConcreteGroup {
    let law = super::law::PermutationLaw::new(degree);
    let mut gens = Vec::new();
    if degree >= 2 {
        let mut t: Vec<u32> = (0..degree as u32).collect();
        t.swap(0, 1);
        gens.push(t);
        let cycle: Vec<u32> = (0..degree as u32)
            .map(|i| (i + 1) % degree as u32)
            .collect();
        gens.push(cycle);
    }
    ConcreteGroup::generate(format!("Sym {degree}"), Arc::new(law), gens, usize::MAX)
        .expect("uncapped")
}

pub fn direct_product(
    left: &ConcreteGroup,
    right: &ConcreteGroup,
    cap: usize,
) -> Result<ConcreteGroup, GroupError> {
    let law = DirectProductLaw::new(left.law().clone(), right.law().clone());
    let descriptor = format!("{} x {}", left.descriptor(), right.descriptor());
    let predicted = left.order() as u128 * right.order() as u128;
    if predicted > cap as u128 {
        return Err(GroupError::CapExceeded {
            descriptor,
            cap,
            predicted: Some(predicted),
        });
    }
    let le = left.law().identity();
    let re = right.law().identity();
    let mut gens: Vec<Element> = left
        .generators()
        .iter()
        .map(|&g| law.pair(left.element(g), &re))
        .collect();
    gens.extend(
        right
            .generators()
            .iter()
            .map(|&g| law.pair(&le, right.element(g))),
    );
    ConcreteGroup::generate(descriptor, Arc::new(law), gens, cap)
}

/// Matrix group generated by explicit matrices.
pub fn matrix_group(
    descriptor: impl Into<String>,
    field: Arc<Field>,
    n: usize,
    projective: bool,
    generators: Vec<Element>,
    cap: usize,
) -> Result<ConcreteGroup, GroupError> {
    let law = MatrixLaw::new(field, n, projective);
    let gens = generators
        .into_iter()
        .map(|mut g| {
            law.normalize(&mut g);
            g
        })
        .collect();
    ConcreteGroup::generate(descriptor, Arc::new(law), gens, cap)
}
