use std::path::PathBuf;

use primegraph::theorems::run_corpus;
use primegraph::{Claim, Verdict};

fn corpus(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name]
        .iter()
        .collect();
    std::fs::read_to_string(path).unwrap()
}

fn verdicts(claim: Claim, file: &str) -> Vec<(String, Verdict)> {
    run_corpus(claim, &corpus(file), 1_000_000)
        .unwrap()
        .into_iter()
        .map(|r| (r.witness, r.verdict))
        .collect()
}

fn assert_all_verified(claim: Claim, file: &str) {
    for (w, v) in verdicts(claim, file) {
        assert_eq!(v, Verdict::Verified, "{claim} on {w}");
    }
}

#[test]
fn simple_group_lemmas() {
    assert_all_verified(Claim::LemmaLieType, "simple.txt");
    assert_all_verified(Claim::LemmaDiagP, "simple.txt");
    assert_all_verified(Claim::LemmaAdj2, "simple.txt");
}

#[test]
fn field_lemma() {
    assert_all_verified(Claim::LemmaField, "field.txt");
}

#[test]
fn symbolic_bounds() {
    assert_all_verified(Claim::LemmaEst, "specs.txt");
    assert_all_verified(Claim::RankDivisor, "specs.txt");
    assert_all_verified(Claim::CountBound, "count-bound.txt");
}

#[test]
fn frobenius_lemma_skips_non_frobenius_pairs() {
    let vs = verdicts(Claim::LemmaFrob, "frobenius.txt");
    assert!(vs.iter().all(|(_, v)| *v != Verdict::Refuted));
    let skipped: Vec<&str> = vs
        .iter()
        .filter(|(_, v)| *v == Verdict::Skipped)
        .map(|(w, _)| w.as_str())
        .collect();
    assert_eq!(skipped, ["AGL 2 3", "Z6 over Z3", "S3 x Z3 over Z3"]);
}

#[test]
fn extension_theorem() {
    let vs = verdicts(Claim::TheoremMain, "theorem-main.txt");
    assert!(vs.iter().all(|(_, v)| *v != Verdict::Refuted), "{vs:?}");
    assert_eq!(
        vs.iter().filter(|(_, v)| *v == Verdict::Verified).count(),
        6
    );
}
