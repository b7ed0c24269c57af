//! Sylow subgroups, their isomorphism shape, nilpotency, and fixed-point-free
//! actions.

use rayon::prelude::*;
use serde::Serialize;

use super::{ConcreteGroup, GroupError, Subgroup};
use crate::numtheory::{self, is_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SylowKind {
    Cyclic,
    GeneralizedQuaternion,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SylowShape {
    pub prime: u64,
    pub order: u64,
    pub kind: SylowKind,
    /// Set when `prime` does not divide the group order; the subgroup is
    /// then trivial and reported as cyclic.
    pub trivial: bool,
}

/// Outcome of [`fixed_point_free_check`]; the witness is `(g, k)` with
/// `g ∉ K`, `k ≠ 1` and `g⁻¹kg = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointFree {
    pub holds: bool,
    pub witness: Option<(u32, u32)>,
}

fn is_r_power(mut n: u64, r: u64) -> bool {
    while n.is_multiple_of(r) {
        n /= r;
    }
    n == 1
}

impl ConcreteGroup {
    /// A Sylow `r`-subgroup, grown one normalizing `r`-element at a time.
    ///
    /// Any `r`-subgroup `P` that is not Sylow has an `r`-element in
    /// `N(P) ∖ P`, so the greedy loop always reaches full size.
    pub fn sylow_subgroup(&self, r: u64) -> Result<Subgroup, GroupError> {
        if !is_prime(r) {
            return Err(GroupError::NotPrime(r));
        }
        let target = numtheory::r_part(self.order() as u64, r).expect("r is prime") as usize;
        let orders = self.orders();
        let mut p = self.trivial_subgroup();
        while p.order() < target {
            let next = (1..self.order() as u32)
                .find(|&x| {
                    orders[x as usize] > 1
                        && is_r_power(orders[x as usize], r)
                        && !p.contains(x)
                        && p.generators()
                            .iter()
                            .all(|&h| p.contains(self.conjugate(h, x)))
                })
                .expect("Sylow growth always finds a normalizing r-element");
            let mut gens = p.generators().to_vec();
            gens.push(next);
            p = self.closure(&gens);
        }
        Ok(p)
    }

    pub fn sylow_shape(&self, r: u64) -> Result<SylowShape, GroupError> {
        let p = self.sylow_subgroup(r)?;
        Ok(SylowShape {
            prime: r,
            order: p.order() as u64,
            kind: self.classify_r_subgroup(&p, r),
            trivial: p.order() == 1,
        })
    }

    /// Cyclic if some member has full order; generalized quaternion if
    /// `r = 2`, `|P| ≥ 8` and `⟨x, y | x^{n/2}, y² = x^{n/4}, y⁻¹xy = x⁻¹⟩`
    /// is realized inside `P`.
    pub fn classify_r_subgroup(&self, p: &Subgroup, r: u64) -> SylowKind {
        let n = p.order() as u64;
        let orders = self.orders();
        if p.members().iter().any(|&x| orders[x as usize] == n) {
            return SylowKind::Cyclic;
        }
        if r != 2 || n < 8 {
            return SylowKind::Other;
        }
        for &x in p.members().iter().filter(|&&x| orders[x as usize] == n / 2) {
            let cyclic = self.closure(&[x]);
            let x_inv = self.inv(x);
            let x_quarter = self.pow(x, n / 4);
            let found = p.members().iter().any(|&y| {
                !cyclic.contains(y) && self.mul(y, y) == x_quarter && self.conjugate(x, y) == x_inv
            });
            if found {
                return SylowKind::GeneralizedQuaternion;
            }
        }
        SylowKind::Other
    }

    /// Nilpotent iff, for every prime `r`, the `r`-elements of `sub` number
    /// exactly `|sub|_r` (every Sylow subgroup is normal).
    pub fn is_nilpotent_subgroup(&self, sub: &Subgroup) -> bool {
        let n = sub.order() as u64;
        let orders = self.orders();
        let f = numtheory::factor(n).expect("n ≥ 1");
        f.pairs().iter().all(|&(r, e)| {
            let count = sub
                .members()
                .iter()
                .filter(|&&x| is_r_power(orders[x as usize], r))
                .count() as u64;
            count == r.pow(e)
        })
    }
}

/// Whether every `g ∈ G ∖ K` fixes only the identity of `K` under
/// conjugation.
pub fn fixed_point_free_check(
    group: &ConcreteGroup,
    normal: &Subgroup,
) -> Result<FixedPointFree, GroupError> {
    if !group.is_normal(normal) {
        return Err(GroupError::NotNormal);
    }
    let witness = (0..group.order() as u32)
        .into_par_iter()
        .filter(|&g| !normal.contains(g))
        .find_map_first(|g| {
            normal
                .members()
                .iter()
                .copied()
                .filter(|&k| k != group.identity())
                .find(|&k| group.mul(g, k) == group.mul(k, g))
                .map(|k| (g, k))
        });
    Ok(FixedPointFree {
        holds: witness.is_none(),
        witness,
    })
}
