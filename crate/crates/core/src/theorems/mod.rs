//! Verifiers for the recognition lemmas and the extension theorem on
//! enumerable witnesses, plus the candidate census behind the counting bound.
//!
//! Every verifier takes one witness and yields one [`VerificationReport`].
//! Corpus files hold one witness per line; `#` starts a comment.

mod census;
mod extension;
mod frobenius;
mod lemmas;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::groups::GroupError;
use crate::liedata::LieError;
use crate::numtheory::NumError;

pub use census::{
    count_bound_pipeline, enumerate_simple_with_pi, parse_primes, Caps, PipelineReport, SpecCount,
};
pub use extension::{verify_theorem_main, TRIALITY_REASON};
pub use frobenius::{frobenius_witness, FrobeniusWitness};
pub use lemmas::{
    load_simple, verify_lemma_adj2, verify_lemma_diag_p, verify_lemma_est, verify_lemma_field,
    verify_lemma_frob, verify_lemma_lie_type, verify_rank_divisor,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("unknown claim '{0}'")]
    UnknownClaim(String),
    #[error("line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("{0}")]
    BadWitness(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Refuted,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub witness: String,
    pub verdict: Verdict,
    pub evidence: Value,
    /// Wall time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

impl VerificationReport {
    pub fn new(
        claim: Claim,
        witness: impl Into<String>,
        verdict: Verdict,
        evidence: Value,
    ) -> Self {
        Self {
            claim,
            witness: witness.into(),
            verdict,
            evidence,
            runtime: Duration::ZERO,
        }
    }

    pub fn skipped(claim: Claim, witness: impl Into<String>, reason: impl fmt::Display) -> Self {
        Self::new(
            claim,
            witness,
            Verdict::Skipped,
            serde_json::json!({ "reason": reason.to_string() }),
        )
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports are plain data")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    LemmaLieType,
    LemmaDiagP,
    LemmaAdj2,
    LemmaField,
    LemmaFrob,
    LemmaEst,
    RankDivisor,
    TheoremMain,
    CountBound,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::LemmaLieType,
        Claim::LemmaDiagP,
        Claim::LemmaAdj2,
        Claim::LemmaField,
        Claim::LemmaFrob,
        Claim::LemmaEst,
        Claim::RankDivisor,
        Claim::TheoremMain,
        Claim::CountBound,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::LemmaLieType => "lemma-lie-type",
            Claim::LemmaDiagP => "lemma-diag-p",
            Claim::LemmaAdj2 => "lemma-adj2",
            Claim::LemmaField => "lemma-field",
            Claim::LemmaFrob => "lemma-frob",
            Claim::LemmaEst => "lemma-est",
            Claim::RankDivisor => "rank-divisor",
            Claim::TheoremMain => "theorem-main",
            Claim::CountBound => "count-bound",
        }
    }

    /// What a corpus line for this claim looks like.
    pub fn witness_syntax(self) -> &'static str {
        match self {
            Claim::LemmaLieType | Claim::LemmaDiagP | Claim::LemmaAdj2 => {
                "descriptor of a quasisimple matrix group, e.g. `SL 3 4 projective`"
            }
            Claim::LemmaField => {
                "descriptor with a field automorphism, e.g. `SL 2 9 projective rtimes-field 2`"
            }
            Claim::LemmaFrob => {
                "`AGL n q`, `3^2:Q8`, `5^2:SL(2,3)`, `Z6 over Z3` or `S3 x Z3 over Z3`"
            }
            Claim::LemmaEst | Claim::RankDivisor => "Lie-type name, e.g. `2A3(3)`",
            Claim::TheoremMain => "group descriptor, or `triality D4(q)`",
            Claim::CountBound => "comma-separated primes with optional qcap=, ncap=, altcap=",
        }
    }

    /// Runs the verifier on one witness line.
    pub fn verify(self, witness: &str, cap: usize) -> Result<VerificationReport, TheoremError> {
        let start = Instant::now();
        let mut report = match self {
            Claim::LemmaLieType => verify_lemma_lie_type(witness, cap)?,
            Claim::LemmaDiagP => verify_lemma_diag_p(witness, cap)?,
            Claim::LemmaAdj2 => verify_lemma_adj2(witness, cap)?,
            Claim::LemmaField => verify_lemma_field(witness, cap)?,
            Claim::LemmaFrob => verify_lemma_frob(witness, cap)?,
            Claim::LemmaEst => verify_lemma_est(witness)?,
            Claim::RankDivisor => verify_rank_divisor(witness)?,
            Claim::TheoremMain => verify_theorem_main(witness, cap)?,
            Claim::CountBound => census::verify_count_bound(witness)?,
        };
        report.runtime = start.elapsed();
        Ok(report)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = TheoremError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| TheoremError::UnknownClaim(s.to_string()))
    }
}

impl Serialize for Claim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// Witness lines of a corpus with their 1-based line numbers.
pub fn parse_corpus(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| (i + 1, line.to_string()))
        })
        .collect()
}

/// Verifies every witness in parallel; reports come back in input order.
pub fn run_corpus(
    claim: Claim,
    text: &str,
    cap: usize,
) -> Result<Vec<VerificationReport>, TheoremError> {
    parse_corpus(text)
        .into_par_iter()
        .map(|(line, w)| {
            claim.verify(&w, cap).map_err(|e| TheoremError::Corpus {
                line,
                message: e.to_string(),
            })
        })
        .collect()
}

/// Turns a cap overflow into a skip and passes other errors through.
fn skip_on_cap<T>(
    claim: Claim,
    witness: &str,
    r: Result<T, GroupError>,
) -> Result<Result<T, VerificationReport>, TheoremError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ GroupError::CapExceeded { .. }) => {
            Ok(Err(VerificationReport::skipped(claim, witness, e)))
        }
        Err(e) => Err(e.into()),
    }
}
