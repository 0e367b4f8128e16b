//! Data files compiled into the binary.

pub const PERES33: &str = include_str!("../data/peres33.json");
pub const PERES_MERMIN: &str = include_str!("../data/peres_mermin.json");
pub const DIAGONAL_PAIR: &str = include_str!("../data/diagonal_pair.json");

/// `(name, contents)` of every bundled ray-set file.
pub const RAYSETS: &[(&str, &str)] = &[("peres33.json", PERES33)];

/// `(name, contents)` of every bundled observable-set file.
pub const OBSERVABLES: &[(&str, &str)] = &[("peres_mermin.json", PERES_MERMIN), ("diagonal_pair.json", DIAGONAL_PAIR)];
pub const PURE_THEORY: &str = include_str!("../data/pure_theory.json");
pub const HALF_CONSTANT: &str = include_str!("../data/half_constant.json");

/// `(name, contents)` of every bundled candidate expectation representation. Each is
/// expected to be refuted by the falsifier.
pub const CANDIDATES: &[(&str, &str)] = &[("pure_theory.json", PURE_THEORY), ("half_constant.json", HALF_CONSTANT)];
