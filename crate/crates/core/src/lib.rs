//! Finite groups as Cayley tables, their subgroup lattices, and the
//! classification of finite groups all of whose subgroups are directly
//! indecomposable.
//!
//! The arithmetic classifier in [`decomp::classify`] is checked against a
//! brute-force oracle ([`decomp::decomposable_subgroup`]) that inspects every
//! subgroup; [`verify`] runs both over a corpus of groups.

pub mod arith;
pub mod constructors;
pub mod corpus;
pub mod csa;
pub mod decomp;
pub mod error;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod mask;
pub mod spec;
pub mod verify;

pub use constructors::{MetacyclicParams, SemidirectPQParams};
pub use decomp::{classify, ClassLabel, Decomposition};
pub use error::{Error, MetacyclicCondition, Result};
pub use group::{FiniteGroup, Subgroup, TableCheck};
pub use iso::GroupFingerprint;
pub use lattice::SubgroupLattice;
pub use mask::Mask;
pub use spec::GroupSpec;

/// Hard cap on group order for every constructor and table.
pub const MAX_ORDER: usize = 512;

/// Environment variable that lowers (never raises) the order cap applied by
/// the sweeps and the CLI.
pub const MAX_ORDER_ENV: &str = "INDECOMP_MAX_ORDER";

/// The effective order cap: [`MAX_ORDER`], lowered by `INDECOMP_MAX_ORDER`
/// when that parses as a smaller positive integer.
pub fn order_cap() -> usize {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(MAX_ORDER, |v| v.min(MAX_ORDER))
}
