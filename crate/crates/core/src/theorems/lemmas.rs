//! Per-witness checks of the adjacency lemmas, the subfield lemma, the
//! Frobenius kernel lemma and the `Out S` estimates.

use std::sync::Arc;

use serde_json::{json, Value};

use super::frobenius::frobenius_witness;
use super::{skip_on_cap, Claim, TheoremError, Verdict, VerificationReport};
use crate::gkgraph::gk;
use crate::groups::{
    fixed_point_free_check, form_field_order, socle_spec, ConcreteGroup, FieldToken,
    GroupDescriptor, GroupError, SylowKind,
};
use crate::liedata::{
    check_rank_divisor_bounds, cyclic_subgroup_bound, cyclic_subgroup_count, out_structure,
    GroupSpec,
};
use crate::numtheory::{self, prime_power, r_part};
use crate::spectra::{scaled_subset, spectrum_bruteforce};

/// Builds the group a descriptor names and checks that its order is the
/// order of the simple group it should be.
pub fn load_simple(witness: &str, cap: usize) -> Result<(GroupSpec, ConcreteGroup), TheoremError> {
    let d: GroupDescriptor = witness.parse()?;
    if d.field_automorphism.is_some() || d.cyclic_factor.is_some() {
        return Err(TheoremError::BadWitness(format!(
            "'{witness}' is not a simple group descriptor"
        )));
    }
    let spec = socle_spec(&d)?;
    let group = d.build(cap)?;
    let expected = spec.order()?.value();
    if expected != Some(group.order() as u64) {
        return Err(TheoremError::BadWitness(format!(
            "'{witness}' has order {} but {spec} has order {}",
            group.order(),
            spec.order()?.to_biguint()
        )));
    }
    Ok((spec, group))
}

fn simple_or_skip(
    claim: Claim,
    witness: &str,
    cap: usize,
) -> Result<Result<(GroupSpec, ConcreteGroup), VerificationReport>, TheoremError> {
    match load_simple(witness, cap) {
        Ok(v) => Ok(Ok(v)),
        Err(TheoremError::Group(e @ GroupError::CapExceeded { .. })) => {
            Ok(Err(VerificationReport::skipped(claim, witness, e)))
        }
        Err(e) => Err(e),
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Verified
    } else {
        Verdict::Refuted
    }
}

/// Every prime of `π(S)` has a non-neighbor in `GK(S)`.
pub fn verify_lemma_lie_type(
    witness: &str,
    cap: usize,
) -> Result<VerificationReport, TheoremError> {
    let claim = Claim::LemmaLieType;
    let (spec, group) = match simple_or_skip(claim, witness, cap)? {
        Ok(v) => v,
        Err(skip) => return Ok(skip),
    };
    let omega = spectrum_bruteforce(&group);
    let graph = gk(&omega).map_err(|e| TheoremError::BadWitness(e.to_string()))?;
    let dominating = graph
        .every_vertex_has_nonneighbor()
        .map_err(|e| TheoremError::BadWitness(e.to_string()))?;
    let nonneighbors: Vec<Value> = graph
        .vertices()
        .iter()
        .filter_map(|&r| {
            let s = graph
                .vertices()
                .iter()
                .copied()
                .find(|&s| s != r && !graph.adjacent(r, s))?;
            Some(json!([r, s]))
        })
        .collect();
    let mut evidence = json!({
        "spec": spec,
        "mu": omega.maximal(),
        "vertices": graph.vertices(),
        "edges": graph.edges(),
        "nonneighbors": nonneighbors,
    });
    if let Some(r) = dominating {
        evidence["dominating_vertex"] = json!(r);
    }
    Ok(VerificationReport::new(
        claim,
        witness,
        verdict(dominating.is_none()),
        evidence,
    ))
}

/// For `r | |Outdiag S|`: `rp ∈ ω(S)` unless `S = L₂(q)`, or
/// `S = L₃^ε(q)` with `(q−ε)₃ = 3`.
pub fn verify_lemma_diag_p(witness: &str, cap: usize) -> Result<VerificationReport, TheoremError> {
    let claim = Claim::LemmaDiagP;
    let (spec, group) = match simple_or_skip(claim, witness, cap)? {
        Ok(v) => v,
        Err(skip) => return Ok(skip),
    };
    let omega = spectrum_bruteforce(&group);
    let out = out_structure(&spec)?;
    let p = spec.characteristic();
    let q = spec.q();
    let exception = if spec.is_l2() {
        Some("L2(q)")
    } else {
        spec.l3_epsilon()
            .filter(|&eps| {
                let q_minus_eps = if eps > 0 { q - 1 } else { q + 1 };
                r_part(q_minus_eps, 3).expect("3 is prime") == 3
            })
            .map(|_| "L3(q) with (q-e)_3 = 3")
    };
    let mut rows = Vec::new();
    let mut counterexample = None;
    for r in numtheory::factor(out.outdiag_order)?.primes() {
        let rp_in = omega.contains(r * p);
        let ok = rp_in || exception.is_some();
        if !ok && counterexample.is_none() {
            counterexample = Some(json!({ "r": r, "rp": r * p }));
        }
        rows.push(json!({ "r": r, "rp_in_spectrum": rp_in, "exception": exception }));
    }
    let mut evidence = json!({
        "spec": spec,
        "outdiag_order": out.outdiag_order,
        "p": p,
        "mu": omega.maximal(),
        "checked": rows,
    });
    if let Some(c) = &counterexample {
        evidence["counterexample"] = c.clone();
    }
    Ok(VerificationReport::new(
        claim,
        witness,
        verdict(counterexample.is_none()),
        evidence,
    ))
}

/// For odd `r ∈ π(S)` with `2r ∉ ω(S)`: a Sylow `r`-subgroup is cyclic,
/// unless `S = L₂(q)` and `r = p`, or `S = L₃^ε(q)`, `p = 2`, `r = 3`.
pub fn verify_lemma_adj2(witness: &str, cap: usize) -> Result<VerificationReport, TheoremError> {
    let claim = Claim::LemmaAdj2;
    let (spec, group) = match simple_or_skip(claim, witness, cap)? {
        Ok(v) => v,
        Err(skip) => return Ok(skip),
    };
    let omega = spectrum_bruteforce(&group);
    let p = spec.characteristic();
    let mut rows = Vec::new();
    let mut counterexample = None;
    for r in omega
        .primes()
        .into_iter()
        .filter(|&r| r != 2 && !omega.contains(2 * r))
    {
        let shape = group.sylow_shape(r)?;
        let exception = if spec.is_l2() && r == p {
            Some("L2(q), r = p")
        } else if spec.l3_epsilon().is_some() && p == 2 && r == 3 {
            Some("L3(q), p = 2, r = 3")
        } else {
            None
        };
        let ok = shape.kind == SylowKind::Cyclic || exception.is_some();
        if !ok && counterexample.is_none() {
            counterexample = Some(json!({ "r": r, "sylow_order": shape.order }));
        }
        rows.push(json!({
            "r": r,
            "sylow_order": shape.order,
            "sylow_kind": shape.kind,
            "exception": exception,
        }));
    }
    let mut evidence = json!({ "spec": spec, "mu": omega.maximal(), "checked": rows });
    if let Some(c) = &counterexample {
        evidence["counterexample"] = c.clone();
    }
    Ok(VerificationReport::new(
        claim,
        witness,
        verdict(counterexample.is_none()),
        evidence,
    ))
}

/// `r·ω(Σ(q^{1/r})) ⊆ ω(S⋊⟨φ⟩)` for a field automorphism `φ` of prime
/// order `r`. The witness is the extension's descriptor; the subfield
/// group is built from the same family over `GF(q^{1/r})`.
pub fn verify_lemma_field(witness: &str, cap: usize) -> Result<VerificationReport, TheoremError> {
    let claim = Claim::LemmaField;
    let d: GroupDescriptor = witness.parse()?;
    let r = match (d.field_automorphism, d.cyclic_factor) {
        (Some(r), None) => r as u64,
        _ => {
            return Err(TheoremError::BadWitness(format!(
                "'{witness}' must be a matrix group with `rtimes-field r` and no cyclic factor"
            )))
        }
    };
    let spec = socle_spec(&d)?;
    if spec.is_suzuki_ree() {
        return Ok(VerificationReport::skipped(
            claim,
            witness,
            "Suzuki-Ree groups are excluded",
        ));
    }
    let q = form_field_order(d.family, &d.matrix_field()?)?;
    let (p, l) = prime_power(q).expect("field orders are prime powers");
    if !(l as u64).is_multiple_of(r) {
        return Ok(VerificationReport::skipped(
            claim,
            witness,
            format!("{q} is not an {r}-th power, so there is no subfield group"),
        ));
    }
    if d.family.is_unitary() && r == 2 {
        // x -> x^q on GF(q²) centralizes an orthogonal group, not SU(n, √q)
        return Ok(VerificationReport::skipped(
            claim,
            witness,
            "an involutory field automorphism of a unitary group has no unitary subfield group",
        ));
    }
    let sub_q = numtheory::checked_pow(p, l / r as u32)?;
    let small_desc = GroupDescriptor {
        cyclic_factor: None,
        family: d.family,
        n: d.n,
        field: FieldToken::Order(sub_q),
        projective: d.projective,
        field_automorphism: None,
    };
    let ext = match skip_on_cap(claim, witness, d.build(cap))? {
        Ok(g) => g,
        Err(skip) => return Ok(skip),
    };
    let small = match skip_on_cap(claim, witness, small_desc.build(cap))? {
        Ok(g) => g,
        Err(skip) => return Ok(skip),
    };
    let (w_ext, w_small) = (spectrum_bruteforce(&ext), spectrum_bruteforce(&small));
    let scaled = scaled_subset(r, &w_small, &w_ext);
    let mut evidence = json!({
        "spec": spec,
        "r": r,
        "extension_order": ext.order(),
        "extension_mu": w_ext.maximal(),
        "subfield_group": small_desc.to_string(),
        "subfield_mu": w_small.maximal(),
        "scaled_mu": w_small.maximal().iter().map(|m| r * m).collect::<Vec<_>>(),
    });
    if let Some(m) = scaled.violation {
        evidence["counterexample"] = json!({ "m": m, "rm": r * m });
    }
    Ok(VerificationReport::new(
        claim,
        witness,
        verdict(scaled.holds),
        evidence,
    ))
}

/// For a Frobenius kernel `K ⊴ G`, every odd Sylow subgroup of `G/K` is
/// cyclic and the Sylow 2-subgroup is cyclic or generalized quaternion.
pub fn verify_lemma_frob(witness: &str, cap: usize) -> Result<VerificationReport, TheoremError> {
    let claim = Claim::LemmaFrob;
    let w = match skip_on_cap(claim, witness, frobenius_witness(witness, cap))? {
        Ok(w) => w,
        Err(skip) => return Ok(skip),
    };
    let fpf = fixed_point_free_check(&w.group, &w.kernel)?;
    if let Some((g, k)) = fpf.witness {
        let reason = format!(
            "hypothesis fails: an element of order {} outside K centralizes an element of order {} in K",
            w.group.order_of(g),
            w.group.order_of(k)
        );
        return Ok(VerificationReport::skipped(claim, witness, reason));
    }
    let group = Arc::new(w.group);
    let complement = ConcreteGroup::quotient(group.clone(), &w.kernel, "G/K")?;
    let mut rows = Vec::new();
    let mut counterexample = None;
    let primes: Vec<u64> = if complement.order() > 1 {
        numtheory::factor(complement.order() as u64)?
            .primes()
            .collect()
    } else {
        Vec::new()
    };
    for r in primes {
        let shape = complement.sylow_shape(r)?;
        let ok = match shape.kind {
            SylowKind::Cyclic => true,
            SylowKind::GeneralizedQuaternion => r == 2,
            SylowKind::Other => false,
        };
        if !ok && counterexample.is_none() {
            counterexample = Some(json!({ "r": r, "sylow_order": shape.order }));
        }
        rows.push(json!({ "r": r, "sylow_order": shape.order, "sylow_kind": shape.kind }));
    }
    let mut evidence = json!({
        "group_order": group.order(),
        "kernel_order": w.kernel.order(),
        "complement_order": complement.order(),
        "sylow": rows,
    });
    if let Some(c) = &counterexample {
        evidence["counterexample"] = c.clone();
    }
    Ok(VerificationReport::new(
        claim,
        witness,
        verdict(counterexample.is_none()),
        evidence,
    ))
}

fn parse_spec(witness: &str) -> Result<GroupSpec, TheoremError> {
    Ok(witness.trim().parse::<GroupSpec>()?)
}

/// `Out S` has at most `6(n+1)d(l)` cyclic subgroups and `|Outdiag S| ≤ n+1`.
pub fn verify_lemma_est(witness: &str) -> Result<VerificationReport, TheoremError> {
    let spec = parse_spec(witness)?;
    let out = out_structure(&spec)?;
    let count = cyclic_subgroup_count(&out)?;
    let bound = cyclic_subgroup_bound(&spec);
    let outdiag_ok = out.outdiag_order <= spec.rank() as u64 + 1;
    let evidence = json!({
        "spec": spec,
        "out_order": out.order,
        "outdiag_order": out.outdiag_order,
        "phi_gamma_order": out.phi_gamma_order,
        "cyclic_subgroups": count,
        "bound": bound,
        "outdiag_within_rank": outdiag_ok,
    });
    Ok(VerificationReport::new(
        Claim::LemmaEst,
        witness,
        verdict(count <= bound && outdiag_ok),
        evidence,
    ))
}

/// `n ≤ 2|π(S)| + 3` and `d(l) ≤ |π(S)| + 1`.
pub fn verify_rank_divisor(witness: &str) -> Result<VerificationReport, TheoremError> {
    let spec = parse_spec(witness)?;
    let b = check_rank_divisor_bounds(&spec)?;
    Ok(VerificationReport::new(
        Claim::RankDivisor,
        witness,
        verdict(b.holds),
        json!({ "spec": spec, "bounds": b }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 200_000;

    fn verdict_of(r: Result<VerificationReport, TheoremError>) -> Verdict {
        let r = r.unwrap();
        assert!(r.evidence.is_object());
        r.verdict
    }

    #[test]
    fn load_simple_rejects_non_simple_witnesses() {
        assert!(load_simple("SL 2 7", CAP).is_err());
        assert!(load_simple("SL 2 9 projective rtimes-field 2", CAP).is_err());
        assert!(matches!(
            load_simple("SL 2 7 projective", 10),
            Err(TheoremError::Group(GroupError::CapExceeded { .. }))
        ));
        let (spec, g) = load_simple("SU 3 3 projective", CAP).unwrap();
        assert_eq!(spec.to_string(), "2A2(3)");
        assert_eq!(g.order(), 6048);
    }

    #[test]
    fn lie_type_small_cases() {
        let r = verify_lemma_lie_type("SL 2 7 projective", CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.evidence["mu"], json!([3, 4, 7]));
        assert_eq!(r.evidence["edges"], json!([]));
        let skip = verify_lemma_lie_type("SL 2 7 projective", 10).unwrap();
        assert_eq!(skip.verdict, Verdict::Skipped);
    }

    #[test]
    fn diag_p_examples() {
        let r = verify_lemma_diag_p("SU 3 3 projective", CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.evidence["checked"], json!([]));
        let r = verify_lemma_diag_p("SL 3 4 projective", CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.evidence["checked"][0]["r"], json!(3));
        assert_eq!(r.evidence["checked"][0]["rp_in_spectrum"], json!(false));
        let r = verify_lemma_diag_p("SL 2 9 projective", CAP).unwrap();
        assert_eq!(r.evidence["checked"][0]["exception"], json!("L2(q)"));
    }

    #[test]
    fn adj2_examples() {
        let r = verify_lemma_adj2("SL 2 7 projective", CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        let seven = r.evidence["checked"]
            .as_array()
            .unwrap()
            .iter()
            .find(|row| row["r"] == json!(7))
            .unwrap();
        assert_eq!(seven["exception"], json!("L2(q), r = p"));
        let r = verify_lemma_adj2("SL 2 9 projective", CAP).unwrap();
        let five = r.evidence["checked"]
            .as_array()
            .unwrap()
            .iter()
            .find(|row| row["r"] == json!(5))
            .unwrap();
        assert_eq!(five["sylow_kind"], json!("cyclic"));
        assert_eq!(
            verdict_of(verify_lemma_adj2("SU 3 3 projective", CAP)),
            Verdict::Verified
        );
    }

    #[test]
    fn field_examples() {
        let r = verify_lemma_field("SL 2 9 projective rtimes-field 2", CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Verified, "{}", r.evidence);
        assert_eq!(r.evidence["extension_order"], json!(720));
        assert_eq!(r.evidence["subfield_group"], json!("SL 2 3 projective"));
        let r = verify_lemma_field("SL 2 4 rtimes-field 2", CAP).unwrap();
        assert_eq!(r.evidence["extension_order"], json!(120));
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(verify_lemma_field("SL 2 9 projective", CAP).is_err());
        let odd = verify_lemma_field("SU 3 3 projective rtimes-field 2", CAP).unwrap();
        assert_eq!(odd.verdict, Verdict::Skipped);
    }

    #[test]
    fn est_and_rank_divisor() {
        let r = verify_lemma_est("A1(9)").unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.evidence["out_order"], json!(4));
        assert_eq!(
            verify_rank_divisor("A3(2)").unwrap().verdict,
            Verdict::Verified
        );
        assert!(verify_lemma_est("A1(6)").is_err());
    }
}
