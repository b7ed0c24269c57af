//! Exact integer helpers: primality, factorization, r-parts, divisor counts,
//! and factored values of `p^m ± 1` through cyclotomic decomposition.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

/// Trial division bound before switching to Pollard rho.
const TRIAL_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),
    #[error("{0} does not divide {1}")]
    NotDivisible(String, String),
    #[error("invalid factorization: {0}")]
    Invalid(String),
}

/// Prime factorization `∏ p^e`, sorted ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a factorization from `(prime, exponent)` pairs in any order.
    /// Repeated primes are merged; zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Result<Self, NumError> {
        let mut map = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(NumError::NotPrime(p));
            }
            if e > 0 {
                *map.entry(p).or_insert(0u32) += e;
            }
        }
        Ok(Self {
            factors: map.into_iter().collect(),
        })
    }

    pub fn prime_power(p: u64, e: u32) -> Result<Self, NumError> {
        Self::from_pairs([(p, e)])
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The factored integer, or `None` if it does not fit in 64 bits.
    pub fn value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e).and_then(|pe| acc.checked_mul(pe))
        })
    }

    pub fn to_biguint(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::from(1u32), |acc, &(p, e)| {
                acc * BigUint::from(p).pow(e)
            })
    }

    pub fn multiply(&self, other: &Factorization) -> Factorization {
        let mut map: BTreeMap<u64, u32> = self.factors.iter().copied().collect();
        for &(p, e) in &other.factors {
            *map.entry(p).or_insert(0) += e;
        }
        Factorization {
            factors: map.into_iter().collect(),
        }
    }

    /// Exact quotient `self / other`.
    pub fn divide(&self, other: &Factorization) -> Result<Factorization, NumError> {
        let mut map: BTreeMap<u64, u32> = self.factors.iter().copied().collect();
        for &(p, e) in &other.factors {
            match map.get_mut(&p) {
                Some(have) if *have >= e => *have -= e,
                _ => return Err(NumError::NotDivisible(other.to_string(), self.to_string())),
            }
        }
        Ok(Factorization {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Factorization {
        Factorization {
            factors: self
                .factors
                .iter()
                .filter(|_| k > 0)
                .map(|&(p, e)| (p, e * k))
                .collect(),
        }
    }

    /// Number of positive divisors, `∏ (e + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve prime bases are a proven
/// witness set for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho exhausts increments only on prime input")
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Factors `n ≥ 1`; `factor(1)` is the empty product.
pub fn factor(n: u64) -> Result<Factorization, NumError> {
    if n == 0 {
        return Err(NumError::Zero);
    }
    let mut rest = n;
    let mut pairs = Vec::new();
    let mut push = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(&mut rest, 2);
    let mut d = 3u64;
    while d <= TRIAL_LIMIT && d.saturating_mul(d) <= rest {
        push(&mut rest, d);
        d += 2;
    }
    if rest > 1 {
        let mut big = Vec::new();
        split_into(rest, &mut big);
        big.sort_unstable();
        for chunk in big.chunk_by(|a, b| a == b) {
            pairs.push((chunk[0], chunk.len() as u32));
        }
    }
    Factorization::from_pairs(pairs)
}

/// `(a)_r`: the largest power of the prime `r` dividing `a`.
pub fn r_part(a: u64, r: u64) -> Result<u64, NumError> {
    if a == 0 {
        return Err(NumError::Zero);
    }
    if !is_prime(r) {
        return Err(NumError::NotPrime(r));
    }
    let mut a = a;
    let mut part = 1;
    while a.is_multiple_of(r) {
        a /= r;
        part *= r;
    }
    Ok(part)
}

/// `d(l)`: the number of positive divisors of `l`.
pub fn divisor_count(l: u64) -> Result<u64, NumError> {
    Ok(factor(l)?.divisor_count())
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>, NumError> {
    let f = factor(n)?;
    let mut out = vec![1u64];
    for &(p, e) in f.pairs() {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Splits `q = p^k` with `p` prime, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor(q).ok()?;
    match f.pairs() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64, NumError> {
    base.checked_pow(exp)
        .ok_or_else(|| NumError::Overflow(format!("{base}^{exp}")))
}

/// Integer coefficients of the `d`-th cyclotomic polynomial, low to high.
pub fn cyclotomic_polynomial(d: u64) -> Vec<i64> {
    // Φ_d = (x^d − 1) / ∏_{e | d, e < d} Φ_e, by exact long division.
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in divisors(d).expect("d ≥ 1") {
        if e == d {
            continue;
        }
        num = poly_divide_exact(&num, &cyclotomic_polynomial(e));
    }
    num
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().expect("nonempty");
    debug_assert!(lead == 1);
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// `Φ_d(x)` evaluated exactly; errors if the value leaves 64 bits.
pub fn cyclotomic_value(d: u64, x: u64) -> Result<u64, NumError> {
    let coeffs = cyclotomic_polynomial(d);
    let overflow = || NumError::Overflow(format!("Phi_{d}({x})"));
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc
            .checked_mul(x as i128)
            .and_then(|v| v.checked_add(c as i128))
            .ok_or_else(overflow)?;
    }
    u64::try_from(acc).map_err(|_| overflow())
}

/// Factorization of `p^m − 1` as `∏_{d | m} Φ_d(p)`.
pub fn factor_pow_minus_one(p: u64, m: u64) -> Result<Factorization, NumError> {
    if m == 0 {
        return Err(NumError::Zero);
    }
    let mut acc = Factorization::one();
    for d in divisors(m)? {
        acc = acc.multiply(&factor(cyclotomic_value(d, p)?)?);
    }
    Ok(acc)
}

/// Factorization of `p^m + 1 = (p^{2m} − 1) / (p^m − 1)`.
pub fn factor_pow_plus_one(p: u64, m: u64) -> Result<Factorization, NumError> {
    if m == 0 {
        return Err(NumError::Zero);
    }
    let mut acc = Factorization::one();
    for d in divisors(2 * m)? {
        if !m.is_multiple_of(d) {
            acc = acc.multiply(&factor(cyclotomic_value(d, p)?)?);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factor_examples() {
        assert!(factor(1).unwrap().is_one());
        assert_eq!(factor(360).unwrap().pairs(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(trial_division(20160), vec![(2, 6), (3, 2), (5, 1), (7, 1)]);
        assert_eq!(
            factor(20160).unwrap().pairs(),
            &[(2, 6), (3, 2), (5, 1), (7, 1)]
        );
        assert_eq!(factor(0), Err(NumError::Zero));
    }

    #[test]
    fn factor_large_semiprimes() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        let f = factor(p * q).unwrap();
        assert_eq!(f.pairs(), &[(q, 1), (p, 1)]);
        let big_prime = 18_446_744_073_709_551_557u64;
        assert_eq!(factor(big_prime).unwrap().pairs(), &[(big_prime, 1)]);
        let f = factor(1_000_003u64 * 1_000_003 * 7).unwrap();
        assert_eq!(f.pairs(), &[(7, 1), (1_000_003, 2)]);
    }

    #[test]
    fn r_part_examples() {
        assert_eq!(r_part(24, 2), Ok(8));
        assert_eq!(r_part(3, 3), Ok(3));
        assert_eq!(r_part(35, 2), Ok(1));
        assert_eq!(r_part(10, 4), Err(NumError::NotPrime(4)));
        assert_eq!(r_part(0, 2), Err(NumError::Zero));
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1), Ok(1));
        assert_eq!(divisor_count(12), Ok(6));
        let enumerated = (1..=1024u64).filter(|d| 1024 % d == 0).count() as u64;
        assert_eq!(enumerated, 11);
        assert_eq!(divisor_count(1 << 10), Ok(enumerated));
        assert_eq!(divisor_count(0), Err(NumError::Zero));
    }

    #[test]
    fn exhaustive_reconstruction_to_a_million() {
        for n in 1..=1_000_000u64 {
            let f = factor(n).unwrap();
            assert_eq!(f.value(), Some(n));
            if n <= 20_000 {
                assert_eq!(f.pairs(), trial_division(n).as_slice(), "n = {n}");
            }
        }
    }

    #[test]
    fn cyclotomic_values_match_direct_division() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for p in [2u64, 3, 5, 7] {
            for m in 1..=12u32 {
                let direct = factor(p.pow(m) - 1).unwrap();
                assert_eq!(factor_pow_minus_one(p, m as u64).unwrap(), direct);
                let direct = factor(p.pow(m) + 1).unwrap();
                assert_eq!(factor_pow_plus_one(p, m as u64).unwrap(), direct);
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            cyclotomic_value(97, 1 << 20),
            Err(NumError::Overflow(_))
        ));
        assert!(checked_pow(10, 30).is_err());
    }

    #[test]
    fn factorization_arithmetic() {
        let a = factor(360).unwrap();
        let b = factor(12).unwrap();
        assert_eq!(a.divide(&b).unwrap().value(), Some(30));
        assert!(b.divide(&a).is_err());
        assert_eq!(a.multiply(&b).value(), Some(4320));
        assert_eq!(a.to_string(), "2^3·3^2·5");
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
    }

    proptest! {
        #[test]
        fn reconstruction(n in 1u64..1_000_000_000_000) {
            let f = factor(n).unwrap();
            prop_assert_eq!(f.value(), Some(n));
            prop_assert!(f.primes().all(is_prime));
        }

        #[test]
        fn r_part_multiplicative(a in 1u64..100_000, b in 1u64..100_000,
                                 r in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
            prop_assert_eq!(r_part(a, r).unwrap() * r_part(b, r).unwrap(),
                            r_part(a * b, r).unwrap());
        }

        #[test]
        fn divisor_count_multiplicative(a in 1u64..50_000, b in 1u64..50_000) {
            prop_assume!(gcd(a, b) == 1);
            prop_assert_eq!(divisor_count(a).unwrap() * divisor_count(b).unwrap(),
                            divisor_count(a * b).unwrap());
        }
    }
}
