//! Multiplication rules for the element encodings used by [`ConcreteGroup`].
//!
//! Every element is a fixed-length `u32` word in canonical form, so equal
//! elements always have identical encodings and can be hashed directly.
//!
//! [`ConcreteGroup`]: super::ConcreteGroup

use std::fmt;
use std::sync::Arc;

use crate::ffield::Field;

/// A canonical element encoding.
pub type Element = Vec<u32>;

pub trait GroupLaw: Send + Sync + fmt::Debug {
    /// Length of every element word.
    fn width(&self) -> usize;
    fn identity(&self) -> Element;
    fn multiply(&self, a: &[u32], b: &[u32]) -> Element;
    fn invert(&self, a: &[u32]) -> Element;
    /// Whether `a` is a well-formed canonical word (not necessarily a
    /// member of any particular group).
    fn is_canonical(&self, a: &[u32]) -> bool {
        a.len() == self.width()
    }
    fn as_quotient(&self) -> Option<&super::concrete::QuotientLaw> {
        None
    }
    fn as_matrix(&self) -> Option<&MatrixLaw> {
        None
    }
}

/// `n × n` matrices over a finite field, optionally modulo scalars.
///
/// In projective mode a matrix is stored scaled so that its first nonzero
/// entry in row-major order equals 1.
#[derive(Debug, Clone)]
pub struct MatrixLaw {
    field: Arc<Field>,
    n: usize,
    projective: bool,
}

impl MatrixLaw {
    pub fn new(field: Arc<Field>, n: usize, projective: bool) -> Self {
        Self {
            field,
            n,
            projective,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn raw_identity(&self) -> Element {
        let mut m = vec![0u32; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = 1;
        }
        m
    }

    pub fn raw_multiply(&self, a: &[u32], b: &[u32]) -> Element {
        let n = self.n;
        let f = &*self.field;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    let bkj = b[k * n + j];
                    if bkj != 0 {
                        let cell = &mut out[i * n + j];
                        *cell = f.add(*cell, f.mul(aik, bkj));
                    }
                }
            }
        }
        out
    }

    /// Gauss–Jordan inverse; `None` for singular input.
    pub fn raw_inverse(&self, a: &[u32]) -> Option<Element> {
        let n = self.n;
        let f = &*self.field;
        let mut m = a.to_vec();
        let mut inv = self.raw_identity();
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let s = f.inv(m[col * n + col])?;
            for j in 0..n {
                m[col * n + j] = f.mul(m[col * n + j], s);
                inv[col * n + j] = f.mul(inv[col * n + j], s);
            }
            for r in 0..n {
                if r == col || m[r * n + col] == 0 {
                    continue;
                }
                let factor = f.neg(m[r * n + col]);
                for j in 0..n {
                    m[r * n + j] = f.add(m[r * n + j], f.mul(factor, m[col * n + j]));
                    inv[r * n + j] = f.add(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Some(inv)
    }

    pub fn determinant(&self, a: &[u32]) -> u32 {
        let n = self.n;
        let f = &*self.field;
        let mut m = a.to_vec();
        let mut det = 1u32;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let d = m[col * n + col];
            det = f.mul(det, d);
            let dinv = f.inv(d).expect("nonzero pivot");
            for r in col + 1..n {
                if m[r * n + col] == 0 {
                    continue;
                }
                let factor = f.neg(f.mul(m[r * n + col], dinv));
                for j in col..n {
                    m[r * n + j] = f.add(m[r * n + j], f.mul(factor, m[col * n + j]));
                }
            }
        }
        det
    }

    /// Scales `m` so the first nonzero entry is 1 (projective mode only).
    pub fn normalize(&self, m: &mut [u32]) {
        if !self.projective {
            return;
        }
        let f = &*self.field;
        if let Some(&lead) = m.iter().find(|&&x| x != 0) {
            if lead != 1 {
                let s = f.inv(lead).expect("nonzero");
                for x in m.iter_mut() {
                    *x = f.mul(*x, s);
                }
            }
        }
    }

    /// Applies `x ↦ x^(p^power)` to every entry.
    pub fn frobenius(&self, a: &[u32], power: u32) -> Element {
        a.iter().map(|&x| self.field.frobenius(x, power)).collect()
    }
}

impl GroupLaw for MatrixLaw {
    fn width(&self) -> usize {
        self.n * self.n
    }

    fn identity(&self) -> Element {
        self.raw_identity()
    }

    fn multiply(&self, a: &[u32], b: &[u32]) -> Element {
        let mut m = self.raw_multiply(a, b);
        self.normalize(&mut m);
        m
    }

    fn invert(&self, a: &[u32]) -> Element {
        let mut m = self.raw_inverse(a).expect("group elements are invertible");
        self.normalize(&mut m);
        m
    }

    fn is_canonical(&self, a: &[u32]) -> bool {
        if a.len() != self.width() || a.iter().any(|&x| x as u64 >= self.field.order()) {
            return false;
        }
        if self.determinant(a) == 0 {
            return false;
        }
        !self.projective || a.iter().find(|&&x| x != 0) == Some(&1)
    }

    fn as_matrix(&self) -> Option<&MatrixLaw> {
        Some(self)
    }
}

/// Matrix group extended by a field automorphism `φ` of order `r`:
/// `(A, φ^i)(B, φ^j) = (A · φ^i(B), φ^{i+j})`. The word is the matrix
/// entries followed by the exponent `i`.
#[derive(Debug, Clone)]
pub struct AugmentedLaw {
    base: MatrixLaw,
    /// `φ = x ↦ x^(p^step)`.
    step: u32,
    order: u32,
}

impl AugmentedLaw {
    pub fn new(base: MatrixLaw, step: u32, order: u32) -> Self {
        Self { base, step, order }
    }

    pub fn base(&self) -> &MatrixLaw {
        &self.base
    }

    pub fn automorphism_order(&self) -> u32 {
        self.order
    }

    pub fn embed(&self, matrix: &[u32], exponent: u32) -> Element {
        let mut w = matrix.to_vec();
        w.push(exponent % self.order);
        w
    }
}

impl GroupLaw for AugmentedLaw {
    fn width(&self) -> usize {
        self.base.width() + 1
    }

    fn identity(&self) -> Element {
        self.embed(&self.base.raw_identity(), 0)
    }

    fn multiply(&self, a: &[u32], b: &[u32]) -> Element {
        let w = self.base.width();
        let (am, ai) = (&a[..w], a[w]);
        let (bm, bj) = (&b[..w], b[w]);
        let twisted = self.base.frobenius(bm, self.step * ai);
        let prod = self.base.multiply(am, &twisted);
        self.embed(&prod, ai + bj)
    }

    fn invert(&self, a: &[u32]) -> Element {
        // (A, i)^{-1} = (φ^{-i}(A^{-1}), -i)
        let w = self.base.width();
        let (am, ai) = (&a[..w], a[w]);
        let inv = self.base.invert(am);
        let back = (self.order - ai % self.order) % self.order;
        let m = self.base.frobenius(&inv, self.step * back);
        self.embed(&m, back)
    }

    fn is_canonical(&self, a: &[u32]) -> bool {
        let w = self.base.width();
        a.len() == w + 1 && a[w] < self.order && self.base.is_canonical(&a[..w])
    }
}

/// The cyclic group `Z_n` written additively.
#[derive(Debug, Clone)]
pub struct CyclicLaw {
    n: u32,
}

impl CyclicLaw {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1);
        Self { n }
    }
}

impl GroupLaw for CyclicLaw {
    fn width(&self) -> usize {
        1
    }
    fn identity(&self) -> Element {
        vec![0]
    }
    fn multiply(&self, a: &[u32], b: &[u32]) -> Element {
        vec![((a[0] as u64 + b[0] as u64) % self.n as u64) as u32]
    }
    fn invert(&self, a: &[u32]) -> Element {
        vec![(self.n - a[0] % self.n) % self.n]
    }
    fn is_canonical(&self, a: &[u32]) -> bool {
        a.len() == 1 && a[0] < self.n
    }
}

/// Permutations of `{0, …, degree-1}` stored as image lists; products act
/// left to right: `(a·b)(x) = b(a(x))`.
#[derive(Debug, Clone)]
pub struct PermutationLaw {
    degree: usize,
}

impl PermutationLaw {
    pub fn new(degree: usize) -> Self {
        Self { degree }
    }
}

impl GroupLaw for PermutationLaw {
    fn width(&self) -> usize {
        self.degree
    }
    fn identity(&self) -> Element {
        (0..self.degree as u32).collect()
    }
    fn multiply(&self, a: &[u32], b: &[u32]) -> Element {
        a.iter().map(|&x| b[x as usize]).collect()
    }
    fn invert(&self, a: &[u32]) -> Element {
        let mut out = vec![0u32; self.degree];
        for (i, &x) in a.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        out
    }
    fn is_canonical(&self, a: &[u32]) -> bool {
        let mut seen = vec![false; self.degree];
        a.len() == self.degree
            && a.iter().all(|&x| {
                (x as usize) < self.degree && !std::mem::replace(&mut seen[x as usize], true)
            })
    }
}

/// Componentwise product of two laws; words are concatenated.
#[derive(Debug, Clone)]
pub struct DirectProductLaw {
    left: Arc<dyn GroupLaw>,
    right: Arc<dyn GroupLaw>,
}

impl DirectProductLaw {
    pub fn new(left: Arc<dyn GroupLaw>, right: Arc<dyn GroupLaw>) -> Self {
        Self { left, right }
    }

    pub fn pair(&self, a: &[u32], b: &[u32]) -> Element {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        w
    }

    pub fn split<'a>(&self, w: &'a [u32]) -> (&'a [u32], &'a [u32]) {
        w.split_at(self.left.width())
    }

    pub fn left(&self) -> &Arc<dyn GroupLaw> {
        &self.left
    }

    pub fn right(&self) -> &Arc<dyn GroupLaw> {
        &self.right
    }
}

impl GroupLaw for DirectProductLaw {
    fn width(&self) -> usize {
        self.left.width() + self.right.width()
    }
    fn identity(&self) -> Element {
        self.pair(&self.left.identity(), &self.right.identity())
    }
    fn multiply(&self, a: &[u32], b: &[u32]) -> Element {
        let (a1, a2) = self.split(a);
        let (b1, b2) = self.split(b);
        self.pair(&self.left.multiply(a1, b1), &self.right.multiply(a2, b2))
    }
    fn invert(&self, a: &[u32]) -> Element {
        let (a1, a2) = self.split(a);
        self.pair(&self.left.invert(a1), &self.right.invert(a2))
    }
    fn is_canonical(&self, a: &[u32]) -> bool {
        if a.len() != self.width() {
            return false;
        }
        let (a1, a2) = self.split(a);
        self.left.is_canonical(a1) && self.right.is_canonical(a2)
    }
}
