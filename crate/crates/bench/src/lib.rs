//! Fixture groups shared by the benchmarks.

use indecomp_core::{FiniteGroup, GroupSpec};

/// Named groups spanning the shapes the sweeps meet: a large non-solvable
/// group, a deep 2-group, an elementary abelian group with a huge lattice,
/// and a Frobenius group.
pub const FIXTURES: &[(&str, &str)] = &[
    ("S5", "S(5)"),
    ("Q7", "Q(7)"),
    ("C2^6", "A(2,2,2,2,2,2)"),
    ("F20", "PQ(5,1,2,2,2)"),
    ("C2xS4", "X(C(2),S(4))"),
];

pub fn fixture(spec: &str) -> FiniteGroup {
    spec.parse::<GroupSpec>()
        .and_then(|s| s.build())
        .unwrap_or_else(|e| panic!("fixture {spec}: {e}"))
}

pub fn fixtures() -> Vec<(&'static str, FiniteGroup)> {
    FIXTURES
        .iter()
        .map(|&(name, spec)| (name, fixture(spec)))
        .collect()
}
