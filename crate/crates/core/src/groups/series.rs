//! Normal series `1 ≤ K < H ≤ G` with `H/K` nonabelian simple, and the
//! checks that make a series usable as input to the extension verifier.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::classical::ClassicalFamily;
use super::descriptor::GroupDescriptor;
use super::{ConcreteGroup, GroupError, Subgroup};
use crate::liedata::{Family, GroupSpec};

/// Number of random normal-closure probes in the simplicity test.
const SIMPLICITY_PROBES: usize = 50;
const PROBE_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone)]
pub struct ExtensionSeries {
    pub descriptor: String,
    pub group: Arc<ConcreteGroup>,
    /// `K`, the solvable radical.
    pub radical: Subgroup,
    /// `H`, with `H/K ≅ S`.
    pub layer: Subgroup,
    /// Preimage of `Inndiag S ∩ G/K`.
    pub inndiag: Subgroup,
    pub socle: GroupSpec,
}

/// Measured facts about a series; [`SeriesCheck::failure`] names the first
/// violated requirement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub group_order: u64,
    pub radical_order: u64,
    pub layer_order: u64,
    pub inndiag_order: u64,
    pub radical_normal: bool,
    pub layer_normal: bool,
    pub inndiag_normal: bool,
    pub nested: bool,
    pub socle_order_matches: bool,
    pub socle_center_trivial: bool,
    pub socle_probes_generate: bool,
    pub radical_nilpotent: bool,
    pub centralizer_trivial: bool,
}

impl SeriesCheck {
    pub fn failure(&self) -> Option<&'static str> {
        let checks = [
            (self.radical_normal, "K is not normal in G"),
            (self.layer_normal, "H is not normal in G"),
            (
                self.inndiag_normal,
                "the inner-diagonal part is not normal in G",
            ),
            (self.nested, "K ≤ H ≤ Inndiag fails"),
            (
                self.socle_order_matches,
                "|H/K| differs from the order of the socle",
            ),
            (self.socle_center_trivial, "H/K has nontrivial center"),
            (
                self.socle_probes_generate,
                "H/K has a proper normal closure",
            ),
            (self.radical_nilpotent, "K is not nilpotent"),
            (self.centralizer_trivial, "G/K does not embed in Aut(H/K)"),
        ];
        checks.iter().find(|(ok, _)| !ok).map(|(_, why)| *why)
    }
}

impl ConcreteGroup {
    /// Smallest subgroup of `within` containing `elems` and normalized by
    /// `within`.
    pub fn normal_closure_in(&self, within: &Subgroup, elems: &[u32]) -> Subgroup {
        let mut n = self.closure(elems);
        loop {
            let extra = within.generators().iter().find_map(|&x| {
                n.generators()
                    .iter()
                    .map(|&g| self.conjugate(g, x))
                    .find(|&c| !n.contains(c))
            });
            match extra {
                Some(c) => n = self.extend(n, c),
                None => return n,
            }
        }
    }

    pub fn derived_subgroup(&self, sub: &Subgroup) -> Subgroup {
        let gens = sub.generators();
        let mut commutators = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != self.identity() {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure_in(sub, &commutators)
    }

    /// Last term of the derived series.
    pub fn solvable_residual(&self) -> Subgroup {
        let mut cur = self.all();
        loop {
            let next = self.derived_subgroup(&cur);
            if next.order() == cur.order() {
                return cur;
            }
            cur = next;
        }
    }
}

/// The simple group `S` whose extensions a descriptor describes.
pub fn socle_spec(d: &GroupDescriptor) -> Result<GroupSpec, GroupError> {
    let field = d.matrix_field()?;
    let q = super::classical::form_field_order(d.family, &field)?;
    let n = d.n as u32;
    let (family, rank) = match d.family {
        ClassicalFamily::SL | ClassicalFamily::GL => (Family::A, n - 1),
        ClassicalFamily::SU | ClassicalFamily::GU => (Family::TwistedA, n - 1),
        ClassicalFamily::Sp => (Family::C, n / 2),
        ClassicalFamily::AGL => {
            return Err(GroupError::Unsupported(
                "affine groups are not almost simple".into(),
            ))
        }
    };
    // L_2(q) appears as A_1(q) and Sp_2(q) = SL_2(q)
    let (family, rank) = if family == Family::C && rank == 1 {
        (Family::A, 1)
    } else {
        (family, rank)
    };
    GroupSpec::new(family, rank, q).map_err(|e| GroupError::Unsupported(e.to_string()))
}

impl ExtensionSeries {
    /// Builds `G` from a descriptor and derives the series: `H₀` is the
    /// solvable residual, `K = C_G(H₀)`, `H = K·H₀`, and the inner-diagonal
    /// part is everything with trivial field-automorphism component.
    pub fn from_descriptor(d: &GroupDescriptor, cap: usize) -> Result<Self, GroupError> {
        let socle = socle_spec(d)?;
        let group = Arc::new(d.build(cap)?);
        let residual = group.solvable_residual();
        let radical = group.centralizer(&residual);
        let mut gens = radical.generators().to_vec();
        gens.extend_from_slice(residual.generators());
        let layer = group.closure(&gens);
        let inndiag = match d.exponent_slot() {
            None => group.all(),
            Some(slot) => {
                let members: Vec<u32> = (0..group.order() as u32)
                    .filter(|&g| group.element(g)[slot] == 0)
                    .collect();
                group.subgroup_from_members(&members)?
            }
        };
        Ok(Self {
            descriptor: d.to_string(),
            group,
            radical,
            layer,
            inndiag,
            socle,
        })
    }

    pub fn check(&self) -> Result<SeriesCheck, GroupError> {
        let g = &*self.group;
        let (k, h, i) = (&self.radical, &self.layer, &self.inndiag);
        let nested = k.is_subset_of(h) && h.is_subset_of(i) && h.order() > k.order();
        let socle_order = self.socle.order().ok().and_then(|f| f.value());
        let h_group = Arc::new(g.subgroup_group(h, "H"));
        let k_in_h: Vec<u32> = k
            .members()
            .iter()
            .filter_map(|&x| h_group.index_of(g.element(x)))
            .collect();
        let (mut order_ok, mut center_ok, mut probes_ok) = (false, false, false);
        if nested && k_in_h.len() == k.order() {
            let k_sub = h_group.subgroup_from_members(&k_in_h)?;
            if h_group.is_normal(&k_sub) {
                let s = ConcreteGroup::quotient(h_group.clone(), &k_sub, "H/K")?;
                order_ok = socle_order == Some(s.order() as u64);
                center_ok = s.center().order() == 1;
                let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
                // normal closures are class functions; probe each class once
                let mut seen: Vec<(Vec<bool>, bool)> = Vec::new();
                probes_ok = s.order() > 1
                    && (0..SIMPLICITY_PROBES).all(|_| {
                        let x = rng.random_range(1..s.order() as u32);
                        if let Some((_, full)) = seen.iter().find(|(c, _)| c[x as usize]) {
                            return *full;
                        }
                        let full = s.normal_closure(&[x]).order() == s.order();
                        seen.push((s.conjugacy_class(x), full));
                        full
                    });
            }
        }
        let h_gens = g.small_generating_set(h.members());
        let centralizing = (0..g.order() as u32)
            .filter(|&x| {
                h_gens.iter().all(|&y| {
                    let c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
                    k.contains(c)
                })
            })
            .count();
        Ok(SeriesCheck {
            group_order: g.order() as u64,
            radical_order: k.order() as u64,
            layer_order: h.order() as u64,
            inndiag_order: i.order() as u64,
            radical_normal: g.is_normal(k),
            layer_normal: g.is_normal(h),
            inndiag_normal: g.is_normal(i),
            nested,
            socle_order_matches: order_ok,
            socle_center_trivial: center_ok,
            socle_probes_generate: probes_ok,
            radical_nilpotent: g.is_nilpotent_subgroup(k),
            centralizer_trivial: centralizing == k.order(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(s: &str) -> ExtensionSeries {
        ExtensionSeries::from_descriptor(&s.parse().unwrap(), 1_000_000).unwrap()
    }

    #[test]
    fn almost_simple_series() {
        let s = series("GL 2 9 projective rtimes-field 2");
        assert_eq!(s.socle.to_string(), "A1(9)");
        assert_eq!(s.radical.order(), 1);
        assert_eq!(s.layer.order(), 360);
        assert_eq!(s.inndiag.order(), 720);
        let c = s.check().unwrap();
        assert_eq!(c.failure(), None, "{c:?}");
    }

    #[test]
    fn central_extension_series() {
        let s = series("SL 2 5");
        assert_eq!(s.radical.order(), 2);
        assert_eq!(s.layer.order(), 120);
        assert_eq!(s.check().unwrap().failure(), None);
        let s = series("Z 3 x SL 2 4 projective rtimes-field 2");
        assert_eq!(s.radical.order(), 3);
        assert_eq!(s.layer.order(), 180);
        assert_eq!(s.check().unwrap().failure(), None);
    }

    #[test]
    fn derived_series_of_solvable_group() {
        let g: ConcreteGroup = "SL 2 3"
            .parse::<GroupDescriptor>()
            .unwrap()
            .build(100)
            .unwrap();
        assert_eq!(g.solvable_residual().order(), 1);
        let d = g.derived_subgroup(&g.all());
        assert_eq!(d.order(), 8);
    }

    #[test]
    fn socle_specs() {
        let spec = |s: &str| socle_spec(&s.parse().unwrap()).map(|g| g.to_string());
        assert_eq!(spec("SU 3 3 projective").unwrap(), "2A2(3)");
        assert_eq!(spec("Sp 4 3").unwrap(), "C2(3)");
        assert_eq!(spec("Sp 2 5").unwrap(), "A1(5)");
        assert!(spec("SL 2 3").is_err());
        assert!(spec("AGL 1 5").is_err());
    }
}
