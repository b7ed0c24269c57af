//! Simple groups with prime divisors in a given set, and the total count of
//! cyclic subgroups of their outer automorphism groups.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{Claim, TheoremError, Verdict, VerificationReport};
use crate::liedata::{
    alternating_order, cyclic_subgroup_bound, cyclic_subgroup_count, out_structure,
    sporadic_groups, sweep_specs, GroupSpec, IsoClass, SimpleCandidate,
};
use crate::numtheory::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub qcap: u64,
    pub ncap: u32,
    pub altcap: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            qcap: 64,
            ncap: 4,
            altcap: 16,
        }
    }
}

/// A comma-separated list of primes, sorted and deduplicated.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, TheoremError> {
    let mut out = BTreeSet::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        let p: u64 = tok
            .parse()
            .map_err(|_| TheoremError::BadWitness(format!("'{tok}' is not an integer")))?;
        if !is_prime(p) {
            return Err(TheoremError::BadWitness(format!("{p} is not prime")));
        }
        out.insert(p);
    }
    Ok(out.into_iter().collect())
}

fn within(primes: &BTreeSet<u64>, candidate: impl IntoIterator<Item = u64>) -> bool {
    candidate.into_iter().all(|p| primes.contains(&p))
}

/// Isomorphism classes of nonabelian simple groups `S` with
/// `π(S) ⊆ primes`: Lie type with `q ≤ qcap` and rank `≤ ncap`,
/// `Alt_n` with `n ≤ altcap`, and the sporadic groups.
pub fn enumerate_simple_with_pi(primes: &[u64], caps: Caps) -> Result<Vec<IsoClass>, TheoremError> {
    let allowed: BTreeSet<u64> = primes.iter().copied().collect();
    let lie: Vec<GroupSpec> = sweep_specs(caps.qcap, caps.ncap)
        .into_par_iter()
        .filter(|s| allowed.contains(&s.characteristic()))
        .map(|s| Ok((s, s.primes()?)))
        .collect::<Result<Vec<_>, TheoremError>>()?
        .into_iter()
        .filter(|(_, ps)| within(&allowed, ps.iter().copied()))
        .map(|(s, _)| s)
        .collect();
    let mut candidates: Vec<SimpleCandidate> = lie.into_iter().map(SimpleCandidate::Lie).collect();
    for n in 5..=caps.altcap {
        if within(&allowed, alternating_order(n)?.primes()) {
            candidates.push(SimpleCandidate::Alternating(n));
        }
    }
    for (name, order) in sporadic_groups() {
        if within(&allowed, order.primes()) {
            candidates.push(SimpleCandidate::Sporadic(name));
        }
    }
    Ok(IsoClass::group(&candidates)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecCount {
    pub spec: GroupSpec,
    pub class: String,
    pub count: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub primes: Vec<u64>,
    pub caps: Caps,
    /// Number of isomorphism classes found.
    pub classes: usize,
    pub specs: Vec<SpecCount>,
    pub total_count: u64,
    pub total_bound: u64,
    /// `total_bound / |π|⁵`.
    pub bound_ratio_to_x5: f64,
    /// `total_count / |π|⁵`.
    pub count_ratio_to_x5: f64,
    pub holds: bool,
}

/// Sums the cyclic-subgroup counts of `Out S` over every Lie-type name in
/// the enumeration and compares them with `Σ 6(n+1)d(l)`.
pub fn count_bound_pipeline(primes: &[u64], caps: Caps) -> Result<PipelineReport, TheoremError> {
    let classes = enumerate_simple_with_pi(primes, caps)?;
    let pairs: Vec<(GroupSpec, String)> = classes
        .iter()
        .flat_map(|c| c.specs.iter().map(|s| (*s, c.name.clone())))
        .collect();
    let specs: Vec<SpecCount> = pairs
        .into_par_iter()
        .map(|(spec, class)| {
            let count = cyclic_subgroup_count(&out_structure(&spec)?)?;
            Ok(SpecCount {
                spec,
                class,
                count,
                bound: cyclic_subgroup_bound(&spec),
            })
        })
        .collect::<Result<_, TheoremError>>()?;
    let total_count: u64 = specs.iter().map(|s| s.count).sum();
    let total_bound: u64 = specs.iter().map(|s| s.bound).sum();
    let x5 = (primes.len() as f64).powi(5);
    let ratio = |t: u64| if x5 > 0.0 { t as f64 / x5 } else { 0.0 };
    Ok(PipelineReport {
        primes: primes.to_vec(),
        caps,
        classes: classes.len(),
        holds: specs.iter().all(|s| s.count <= s.bound),
        bound_ratio_to_x5: ratio(total_bound),
        count_ratio_to_x5: ratio(total_count),
        specs,
        total_count,
        total_bound,
    })
}

/// Witness syntax: `2,3,5 qcap=64 ncap=4 altcap=16`, caps optional.
pub(super) fn verify_count_bound(witness: &str) -> Result<VerificationReport, TheoremError> {
    let mut tokens = witness.split_whitespace();
    let primes = parse_primes(tokens.next().unwrap_or(""))?;
    let mut caps = Caps::default();
    for tok in tokens {
        let bad = || TheoremError::BadWitness(format!("unexpected token '{tok}'"));
        let (key, value) = tok.split_once('=').ok_or_else(bad)?;
        let value: u64 = value.parse().map_err(|_| bad())?;
        match key {
            "qcap" => caps.qcap = value,
            "ncap" => caps.ncap = u32::try_from(value).map_err(|_| bad())?,
            "altcap" => caps.altcap = u32::try_from(value).map_err(|_| bad())?,
            _ => return Err(bad()),
        }
    }
    let report = count_bound_pipeline(&primes, caps)?;
    let verdict = if report.holds && report.total_count <= report.total_bound {
        Verdict::Verified
    } else {
        Verdict::Refuted
    };
    let evidence = serde_json::to_value(&report).expect("plain data");
    Ok(VerificationReport::new(
        Claim::CountBound,
        witness,
        verdict,
        evidence,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(primes: &[u64]) -> Vec<String> {
        enumerate_simple_with_pi(primes, Caps::default())
            .unwrap()
            .into_iter()
            .map(|c| c.name)
            .collect()
    }

    #[test]
    fn prime_lists() {
        assert_eq!(parse_primes("5,2,3,2").unwrap(), vec![2, 3, 5]);
        assert!(parse_primes("2,4").is_err());
        assert!(parse_primes("2,x").is_err());
        assert!(parse_primes("").is_err());
    }

    #[test]
    fn small_prime_sets() {
        assert!(names(&[2]).is_empty());
        assert!(names(&[2, 3]).is_empty());
        assert_eq!(names(&[2, 3, 5]), ["Alt5", "Alt6", "U4(2)"]);
    }

    #[test]
    fn classes_merge_isomorphic_names() {
        let classes = enumerate_simple_with_pi(&[2, 3, 5], Caps::default()).unwrap();
        assert_eq!(classes[0].members, ["A1(4)", "A1(5)", "Alt5"]);
        assert_eq!(classes[0].order, "60");
        assert_eq!(classes[2].members, ["2A3(2)", "C2(3)"]);
    }

    #[test]
    fn pipeline_on_2_3_5() {
        let r = count_bound_pipeline(&[2, 3, 5], Caps::default()).unwrap();
        assert_eq!(r.classes, 3);
        let specs: Vec<String> = r.specs.iter().map(|s| s.spec.to_string()).collect();
        assert_eq!(specs, ["A1(4)", "A1(5)", "A1(9)", "2A3(2)", "C2(3)"]);
        assert!(r.holds);
        assert_eq!(r.total_count, r.specs.iter().map(|s| s.count).sum::<u64>());
        let empty = count_bound_pipeline(&[2], Caps::default()).unwrap();
        assert_eq!(
            (empty.classes, empty.total_count, empty.total_bound),
            (0, 0, 0)
        );
        assert!(empty.holds);
    }

    #[test]
    fn count_bound_witness_syntax() {
        let r = verify_count_bound("2,3,5 qcap=16 ncap=2").unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.evidence["caps"]["qcap"], serde_json::json!(16));
        assert!(verify_count_bound("2,3 qcap").is_err());
        assert!(verify_count_bound("2,3 depth=3").is_err());
    }
}
