//! Dominating vertices in the prime graph of an extension `G` of a simple
//! group `S = H/K` with nilpotent `K`.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{skip_on_cap, Claim, TheoremError, Verdict, VerificationReport};
use crate::gkgraph::{gk, PrimeGraph};
use crate::groups::{ConcreteGroup, ExtensionSeries, GroupDescriptor};
use crate::numtheory;
use crate::spectra::spectrum_bruteforce;

pub const TRIALITY_REASON: &str =
    "the graph-automorphism branch for D4(q) needs the centralizer of a triality automorphism, which is not modeled";

fn primes_of(n: usize) -> Result<Vec<u64>, TheoremError> {
    if n <= 1 {
        return Ok(Vec::new());
    }
    Ok(numtheory::factor(n as u64)?.primes().collect())
}

fn nonneighbors(graph: &PrimeGraph, r: u64) -> Vec<u64> {
    graph
        .vertices()
        .iter()
        .copied()
        .filter(|&s| s != r && !graph.adjacent(r, s))
        .collect()
}

/// Checks both clauses on the series derived from a descriptor:
///
/// - (i) `S ≠ L₂(q)` and `G/H` contains a diagonal automorphism of prime
///   order `r`: then `r` is adjacent to every other prime of `G`;
/// - (ii) `G/H` is noncyclic: then some `r ∈ π(G/H)` is adjacent to every
///   other prime of `G`.
///
/// Diagonal automorphisms of prime order `r` in `G/H` exist exactly when
/// `r` divides `|Inndiag ∩ G| / |H|`.
pub fn verify_theorem_main(witness: &str, cap: usize) -> Result<VerificationReport, TheoremError> {
    let claim = Claim::TheoremMain;
    if witness.trim().starts_with("triality") {
        return Ok(VerificationReport::skipped(claim, witness, TRIALITY_REASON));
    }
    let d: GroupDescriptor = witness.parse()?;
    let series = match skip_on_cap(claim, witness, ExtensionSeries::from_descriptor(&d, cap))? {
        Ok(s) => s,
        Err(skip) => return Ok(skip),
    };
    if series.socle.is_suzuki_ree() {
        return Ok(VerificationReport::skipped(
            claim,
            witness,
            "Suzuki-Ree groups are excluded",
        ));
    }
    let check = series.check()?;
    if let Some(why) = check.failure() {
        return Ok(VerificationReport::new(
            claim,
            witness,
            Verdict::Skipped,
            json!({ "reason": format!("hypothesis fails: {why}"), "series": check }),
        ));
    }
    let group: &Arc<ConcreteGroup> = &series.group;
    let omega = spectrum_bruteforce(group);
    let graph = gk(&omega).map_err(|e| TheoremError::BadWitness(e.to_string()))?;
    let outer = ConcreteGroup::quotient(group.clone(), &series.layer, "G/H")?;
    let outer_cyclic = outer.is_cyclic();

    let diag_primes = primes_of(series.inndiag.order() / series.layer.order())?;
    let clause_i_applies = !series.socle.is_l2() && !diag_primes.is_empty();
    let clause_i_rows: Vec<Value> = diag_primes
        .iter()
        .map(|&r| json!({ "r": r, "nonneighbors": nonneighbors(&graph, r) }))
        .collect();
    let clause_i_ok = diag_primes
        .iter()
        .all(|&r| nonneighbors(&graph, r).is_empty());

    let outer_primes = primes_of(outer.order())?;
    let clause_ii_applies = !outer_cyclic;
    let dominating_outer: Vec<u64> = outer_primes
        .iter()
        .copied()
        .filter(|&r| nonneighbors(&graph, r).is_empty())
        .collect();
    let clause_ii_ok = !dominating_outer.is_empty();

    let mut evidence = json!({
        "socle": series.socle,
        "series": check,
        "mu": omega.maximal(),
        "vertices": graph.vertices(),
        "edges": graph.edges(),
        "outer_order": outer.order(),
        "outer_cyclic": outer_cyclic,
        "clause_i": {
            "applies": clause_i_applies,
            "diagonal_primes": clause_i_rows,
        },
        "clause_ii": {
            "applies": clause_ii_applies,
            "outer_primes": outer_primes,
            "dominating": dominating_outer,
        },
    });
    if d.cyclic_factor.is_some() {
        evidence["nilpotent_radical"] = json!("direct product with a cyclic group");
    }
    if !clause_i_applies && !clause_ii_applies {
        evidence["reason"] = json!("neither clause applies: G/H is cyclic with no diagonal automorphism of prime order outside L2(q)");
        return Ok(VerificationReport::new(
            claim,
            witness,
            Verdict::Skipped,
            evidence,
        ));
    }
    let failed = (clause_i_applies && !clause_i_ok) || (clause_ii_applies && !clause_ii_ok);
    if failed {
        let bad = if clause_i_applies && !clause_i_ok {
            let r = diag_primes
                .iter()
                .copied()
                .find(|&r| !nonneighbors(&graph, r).is_empty())
                .expect("some diagonal prime fails");
            json!({ "clause": "i", "r": r, "s": nonneighbors(&graph, r)[0] })
        } else {
            json!({ "clause": "ii", "outer_primes": outer_primes })
        };
        evidence["counterexample"] = bad;
        return Ok(VerificationReport::new(
            claim,
            witness,
            Verdict::Refuted,
            evidence,
        ));
    }
    Ok(VerificationReport::new(
        claim,
        witness,
        Verdict::Verified,
        evidence,
    ))
}
