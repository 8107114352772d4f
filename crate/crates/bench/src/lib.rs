//! Fixtures shared by the benchmarks.

use hbk_core::algebra::FiniteGroup;
use hbk_core::catalog::catalog_entry;
use hbk_core::descriptors::{parse_family, parse_group};
use hbk_core::diagram::{braid_closure, random_move_walk, Diagram};
use hbk_core::quandle::GFamily;

pub fn catalog_diagram(name: &str) -> Diagram {
    catalog_entry(name).unwrap_or_else(|| panic!("no catalog entry {name}")).diagram
}

pub fn group(descriptor: &str) -> FiniteGroup {
    parse_group(descriptor).expect("valid group descriptor")
}

pub fn family(descriptor: &str) -> GFamily {
    parse_family(descriptor, &|_| panic!("fixtures do not read files")).expect("valid family descriptor")
}

/// The closure of `(s1 s2^-1)^n`, a growing family of three-strand knots and links.
pub fn alternating_closure(n: usize) -> Diagram {
    let word: Vec<i32> = (0..n).flat_map(|_| [1, -2]).collect();
    braid_closure(3, &word).expect("valid braid")
}

/// A catalog entry made larger by a fixed random walk.
pub fn scrambled(name: &str, steps: usize) -> Diagram {
    random_move_walk(&catalog_diagram(name), steps, 11).0
}
