//! Shared fixtures for benchmarks.

use std::sync::Arc;

use sigmatilt::quiver::catalog;
use sigmatilt::tilt::{parse_tilt_word, std_collection};
use sigmatilt::{DerivedCategory, Direction, SymbolicCollection};

/// Named quivers used across benchmarks.
pub fn fixtures() -> Vec<(&'static str, DerivedCategory)> {
    vec![
        ("A3", DerivedCategory::new(Arc::new(catalog::linear_a(3)))),
        ("A4", DerivedCategory::new(Arc::new(catalog::linear_a(4)))),
        ("D4", DerivedCategory::new(Arc::new(catalog::d4()))),
    ]
}

pub fn standard(cat: &DerivedCategory) -> SymbolicCollection {
    std_collection(cat).expect("standard collection")
}

/// A fixed mixed word valid on any quiver with at least three vertices.
pub fn word() -> Vec<(usize, Direction)> {
    parse_tilt_word("2+ 1- 3+ 1+ 2- 3- 2+ 1+").expect("word")
}
