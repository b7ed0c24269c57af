//! Element-order spectra stored by their divisor-maximal elements.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::groups::ConcreteGroup;
use crate::numtheory::{self, divisors, prime_power};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("spectrum elements must be positive")]
    Zero,
    #[error("closed form needs a prime power q ≥ 4, got {0}")]
    BadFieldSize(u64),
}

/// A divisor-closed set of positive integers, represented by its maximal
/// elements under divisibility.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Spectrum {
    mu: Vec<u64>,
}

impl Spectrum {
    /// The divisor closure of `orders`.
    pub fn from_orders<I: IntoIterator<Item = u64>>(orders: I) -> Result<Self, SpectrumError> {
        let mut set = BTreeSet::new();
        for o in orders {
            if o == 0 {
                return Err(SpectrumError::Zero);
            }
            set.insert(o);
        }
        set.insert(1);
        // Descending scan: an element survives if no kept element is a
        // multiple of it.
        let mut mu: Vec<u64> = Vec::new();
        for &m in set.iter().rev() {
            if !mu.iter().any(|&k| k % m == 0) {
                mu.push(m);
            }
        }
        mu.sort_unstable();
        Ok(Self { mu })
    }

    pub fn trivial() -> Self {
        Self { mu: vec![1] }
    }

    pub fn maximal(&self) -> &[u64] {
        &self.mu
    }

    pub fn contains(&self, m: u64) -> bool {
        m > 0 && self.mu.iter().any(|&k| k % m == 0)
    }

    /// Every member, ascending.
    pub fn closure(&self) -> Vec<u64> {
        let mut all = BTreeSet::new();
        for &m in &self.mu {
            all.extend(divisors(m).expect("positive"));
        }
        all.into_iter().collect()
    }

    /// Primes dividing some member, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps = BTreeSet::new();
        for &m in &self.mu {
            ps.extend(numtheory::factor(m).expect("positive").primes());
        }
        ps.into_iter().collect()
    }

    pub fn is_subset_of(&self, other: &Spectrum) -> bool {
        self.mu.iter().all(|&m| other.contains(m))
    }
}

/// Exact spectrum of an enumerated group.
pub fn spectrum_bruteforce(group: &ConcreteGroup) -> Spectrum {
    let orders: BTreeSet<u64> = group.orders().iter().copied().collect();
    Spectrum::from_orders(orders).expect("element orders are positive")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L2Variant {
    Psl,
    Pgl,
}

/// Closed-form spectrum of `PSL(2, q)` or `PGL(2, q)`:
/// `{p, (q−1)/d, (q+1)/d}` with `d = (2, q−1)`, or `{p, q−1, q+1}`.
pub fn spectrum_l2_closed(q: u64, variant: L2Variant) -> Result<Spectrum, SpectrumError> {
    let (p, _) = prime_power(q).ok_or(SpectrumError::BadFieldSize(q))?;
    if q < 4 {
        return Err(SpectrumError::BadFieldSize(q));
    }
    let gens = match variant {
        L2Variant::Psl => {
            let d = numtheory::gcd(2, q - 1);
            [p, (q - 1) / d, (q + 1) / d]
        }
        L2Variant::Pgl => [p, q - 1, q + 1],
    };
    Spectrum::from_orders(gens)
}

pub fn isospectral(a: &Spectrum, b: &Spectrum) -> bool {
    a.mu == b.mu
}

/// Outcome of [`scaled_subset`]: `violation` is the smallest `m ∈ small`
/// with `r·m ∉ big`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaledSubset {
    pub holds: bool,
    pub violation: Option<u64>,
}

/// Whether `r·ω(small) ⊆ ω(big)`.
pub fn scaled_subset(r: u64, small: &Spectrum, big: &Spectrum) -> ScaledSubset {
    // Checking the maximal elements suffices since ω(big) is divisor-closed;
    // the smallest violation needs the whole closure.
    if small.mu.iter().all(|&m| big.contains(r * m)) {
        return ScaledSubset {
            holds: true,
            violation: None,
        };
    }
    let violation = small.closure().into_iter().find(|&m| !big.contains(r * m));
    ScaledSubset {
        holds: false,
        violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(mu: &[u64]) -> Spectrum {
        Spectrum::from_orders(mu.iter().copied()).unwrap()
    }

    #[test]
    fn maximal_reduction() {
        assert_eq!(spec(&[1, 2, 3, 4, 6, 7]).maximal(), &[4, 6, 7]);
        assert_eq!(spec(&[]).maximal(), &[1]);
        assert!(Spectrum::from_orders([0]).is_err());
        assert_eq!(spec(&[12, 4, 6]).closure(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(spec(&[4, 6, 7]).primes(), vec![2, 3, 7]);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            spectrum_l2_closed(9, L2Variant::Psl).unwrap().maximal(),
            &[3, 4, 5]
        );
        assert_eq!(
            spectrum_l2_closed(7, L2Variant::Pgl).unwrap().maximal(),
            &[6, 7, 8]
        );
        assert_eq!(
            spectrum_l2_closed(4, L2Variant::Psl).unwrap().maximal(),
            &[2, 3, 5]
        );
        assert_eq!(
            spectrum_l2_closed(3, L2Variant::Psl),
            Err(SpectrumError::BadFieldSize(3))
        );
        assert_eq!(
            spectrum_l2_closed(6, L2Variant::Psl),
            Err(SpectrumError::BadFieldSize(6))
        );
    }

    #[test]
    fn isospectrality_and_scaling() {
        let a = spec(&[2, 3, 5]);
        assert!(isospectral(&a, &spec(&[5, 3, 2, 1])));
        assert!(!isospectral(&spec(&[3, 4, 7]), &spec(&[6, 7, 8])));
        let big = spec(&[4, 5, 6, 8, 10]);
        assert!(scaled_subset(2, &spec(&[2, 3]), &big).holds);
        let r = scaled_subset(2, &spec(&[4, 9]), &big);
        assert_eq!(
            r,
            ScaledSubset {
                holds: false,
                violation: Some(9)
            }
        );
        assert!(scaled_subset(1, &big, &big).holds);
    }

    proptest! {
        #[test]
        fn divisor_closed(orders in prop::collection::vec(1u64..500, 0..12)) {
            let s = Spectrum::from_orders(orders.iter().copied()).unwrap();
            for &o in &orders {
                prop_assert!(s.contains(o));
                for d in divisors(o).unwrap() {
                    prop_assert!(s.contains(d));
                }
            }
            for (i, &a) in s.maximal().iter().enumerate() {
                for &b in &s.maximal()[i + 1..] {
                    prop_assert!(b % a != 0);
                }
            }
        }

        #[test]
        fn scaled_subset_matches_closure_scan(
            small in prop::collection::vec(1u64..60, 0..5),
            big in prop::collection::vec(1u64..400, 0..8),
            r in 1u64..6,
        ) {
            let (s, b) = (spec(&small), spec(&big));
            let naive = s.closure().into_iter().find(|&m| !b.closure().contains(&(r * m)));
            let got = scaled_subset(r, &s, &b);
            prop_assert_eq!(got.holds, naive.is_none());
            prop_assert_eq!(got.violation, naive);
        }
    }
}
