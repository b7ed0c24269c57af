//! Arithmetic in GF(p^k).
//!
//! Elements are encoded as integers `c_0 + c_1 p + … + c_{k-1} p^{k-1}` where
//! `c_i` are the coefficients of the polynomial representative modulo the
//! defining polynomial. Fields of order up to 2^16 use log/antilog tables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::numtheory::{self, is_prime};

/// Largest supported field order.
pub const FIELD_ORDER_CAP: u64 = 1 << 32;
const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the cap 2^32")]
    TooLarge { p: u64, k: u32 },
    #[error("polynomial {0} is not irreducible over GF({1})")]
    Reducible(String, u64),
    #[error("malformed field descriptor '{0}'")]
    Descriptor(String),
}

/// A finite field GF(p^k) with a fixed monic irreducible modulus.
#[derive(Clone)]
pub struct Field {
    p: u32,
    degree: u32,
    order: u64,
    /// Monic modulus, coefficients low to high, length `degree + 1`.
    modulus: Vec<u32>,
    primitive: u32,
    log: Vec<u32>,
    exp: Vec<u32>,
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for Field {}

mod poly {
    //! Dense polynomials over GF(p), coefficients low to high.

    pub fn trim(a: &mut Vec<u64>) {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        super::pow_mod_u64(a, p - 2, p)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm && !is_zero(&r) {
            let shift = r.len() - 1 - dm;
            let c = r[r.len() - 1] * lead_inv % p;
            for (j, &mj) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * mj % p) % p;
            }
            trim(&mut r);
            if r.len() == 1 && dm == 0 {
                break;
            }
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn pow_mod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !is_zero(&y) {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial over GF(p).
pub fn is_irreducible(modulus: &[u32], p: u64) -> bool {
    let f: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
    let k = f.len() as u64 - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let frob = |times: u64| poly::pow_mod(&x, (p as u128).pow(times as u32), &f, p);
    if !poly::is_zero(&poly::sub(&frob(k), &x, p)) {
        return false;
    }
    let kf = numtheory::factor(k).expect("k ≥ 1");
    let irreducible = kf.primes().all(|r| {
        let h = poly::sub(&frob(k / r), &x, p);
        let g = poly::gcd(&f, &h, p);
        g.len() == 1 && g[0] != 0
    });
    irreducible
}

impl Field {
    /// GF(p^k) with the canonical modulus: the monic irreducible whose lower
    /// coefficient vector has the smallest base-p encoding.
    pub fn new(p: u64, k: u32) -> Result<Field, FieldError> {
        Self::check_size(p, k)?;
        let modulus = Self::canonical_modulus(p, k);
        Self::build(p, modulus)
    }

    /// GF(p^k) with an explicit monic modulus (low-to-high coefficients).
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Field, FieldError> {
        let k = modulus.len().saturating_sub(1) as u32;
        Self::check_size(p, k)?;
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c as u64 >= p) {
            return Err(FieldError::Descriptor(format!("{modulus:?}")));
        }
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::Reducible(format!("{modulus:?}"), p));
        }
        Self::build(p, modulus)
    }

    /// Parses `p^k:c_0,c_1,…,c_k` (modulus coefficients low to high).
    pub fn from_descriptor(s: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::Descriptor(s.to_string());
        let (head, coeffs) = s.split_once(':').ok_or_else(bad)?;
        let (p, k) = head.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let modulus: Vec<u32> = coeffs
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if modulus.len() != k as usize + 1 {
            return Err(bad());
        }
        Self::with_modulus(p, modulus)
    }

    fn check_size(p: u64, k: u32) -> Result<(), FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        match p.checked_pow(k) {
            Some(q) if q <= FIELD_ORDER_CAP => Ok(()),
            _ => Err(FieldError::TooLarge { p, k }),
        }
    }

    fn canonical_modulus(p: u64, k: u32) -> Vec<u32> {
        let span = p.pow(k);
        (0..span)
            .map(|code| {
                let mut m = digits(code, p, k as usize);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists")
    }

    fn build(p: u64, modulus: Vec<u32>) -> Result<Field, FieldError> {
        let degree = modulus.len() as u32 - 1;
        let order = p.pow(degree);
        let mut field = Field {
            p: p as u32,
            degree,
            order,
            modulus,
            primitive: 0,
            log: Vec::new(),
            exp: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        field.primitive = field.find_primitive();
        if order <= TABLE_LIMIT {
            let n = (order - 1) as usize;
            let mut exp = vec![0u32; 2 * n];
            let mut log = vec![0u32; order as usize];
            let mut x = 1u32;
            for i in 0..n {
                exp[i] = x;
                exp[i + n] = x;
                log[x as usize] = i as u32;
                x = field.mul_slow(x, field.primitive);
            }
            field.exp = exp;
            field.log = log;
        }
        if order <= ADD_TABLE_LIMIT {
            let q = order as usize;
            let mut add = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = field.add_slow(a as u32, b as u32);
                }
            }
            field.add_table = add;
            field.neg_table = (0..q as u32).map(|a| field.neg_slow(a)).collect();
        }
        Ok(field)
    }

    fn find_primitive(&self) -> u32 {
        if self.order == 2 {
            return 1;
        }
        let n = self.order - 1;
        let primes: Vec<u64> = numtheory::factor(n).expect("n ≥ 1").primes().collect();
        (1..self.order)
            .map(|c| c as u32)
            .find(|&g| primes.iter().all(|&r| self.pow_slow(g, n / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    /// `p^k:c_0,…,c_k`, stable across runs.
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
        format!("{}^{}:{}", self.p, self.degree, coeffs.join(","))
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn coefficients(&self, x: u32) -> Vec<u32> {
        digits(x as u64, self.p as u64, self.degree as usize)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + (c % self.p) as u64) as u32
    }

    /// Every element in code order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    /// The embedded prime field element `c mod p`.
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if !self.add_table.is_empty() {
            return self.add_table[a as usize * self.order as usize + b as usize];
        }
        self.add_slow(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if !self.neg_table.is_empty() {
            return self.neg_table[a as usize];
        }
        self.neg_slow(a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let i = self.log[a as usize] + self.log[b as usize];
            return self.exp[i as usize];
        }
        self.mul_slow(a, b)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if !self.exp.is_empty() {
            let n = (self.order - 1) as u32;
            let l = self.log[a as usize];
            return Some(self.exp[((n - l) % n) as usize]);
        }
        Some(self.pow(a, self.order - 2))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let n = self.order - 1;
            let i = (self.log[a as usize] as u128 * e as u128 % n as u128) as usize;
            return self.exp[i];
        }
        self.pow_slow(a, e)
    }

    /// `x^(p^power)`; the identity when `power` is a multiple of the degree.
    pub fn frobenius(&self, x: u32, power: u32) -> u32 {
        let power = power % self.degree;
        if power == 0 || x == 0 {
            return x;
        }
        let n = self.order - 1;
        let e = pow_mod_u64(self.p as u64, power as u64, n.max(1));
        self.pow(x, if e == 0 { n } else { e })
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: u32) -> Option<u64> {
        if x == 0 {
            return None;
        }
        let n = self.order - 1;
        let mut ord = n;
        for (r, _) in numtheory::factor(n.max(1))
            .expect("n ≥ 1")
            .pairs()
            .iter()
            .copied()
        {
            while ord.is_multiple_of(r) && self.pow(x, ord / r) == 1 {
                ord /= r;
            }
        }
        Some(ord)
    }

    pub fn element(&self, code: u32) -> FieldElement<'_> {
        debug_assert!((code as u64) < self.order);
        FieldElement { field: self, code }
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as u64;
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.degree {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    fn neg_slow(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u64;
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.degree {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out as u32
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.degree == 1 {
            return (a as u64 * b as u64 % p) as u32;
        }
        let k = self.degree as usize;
        let da = digits(a as u64, p, k);
        let db = digits(b as u64, p, k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus from the top down
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..k {
                let m = self.modulus[j] as u64;
                prod[top - k + j] = (prod[top - k + j] + p - c * m % p) % p;
            }
        }
        prod[..k].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        acc
    }
}

fn digits(mut code: u64, p: u64, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push((code % p) as u32);
        code /= p;
    }
    out
}

/// An element bound to its field, with operator overloads.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    code: u32,
}

impl<'f> FieldElement<'f> {
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn field(self) -> &'f Field {
        self.field
    }

    pub fn coefficients(self) -> Vec<u32> {
        self.field.coefficients(self.code)
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    pub fn inverse(self) -> Option<Self> {
        self.field.inv(self.code).map(|code| self.with(code))
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.field.pow(self.code, e))
    }

    pub fn frobenius(self, power: u32) -> Self {
        self.with(self.field.frobenius(self.code, power))
    }

    fn with(self, code: u32) -> Self {
        FieldElement {
            field: self.field,
            code,
        }
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.code == other.code
    }
}
impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coefficients())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl<'f> $trait for FieldElement<'f> {
            type Output = FieldElement<'f>;
            fn $method(self, rhs: Self) -> Self::Output {
                debug_assert!(std::ptr::eq(self.field, rhs.field));
                self.with(self.field.$method(self.code, rhs.code))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl<'f> Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> Self::Output {
        self.with(self.field.neg(self.code))
    }
}
