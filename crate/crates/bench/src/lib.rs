//! Fixtures shared by the benchmarks.

/// Descriptors timed by the enumeration benchmarks, smallest first.
pub const ENUMERATION_CASES: &[&str] = &[
    "SL 2 7 projective",
    "SU 3 3 projective",
    "GL 2 9 projective rtimes-field 2",
    "SL 3 4 projective",
];
