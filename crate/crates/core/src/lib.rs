//! Multipartite local-unitary invariants of stabilizer and graph states:
//! GF(2) tableau algebra, graph-state rewriting, exact scalar arithmetic
//! in Z[ω]·2^{−k/2}, three cross-validating evaluation engines, and
//! closed-form group-counting formulas.

pub mod analytic;
pub mod coxeter;
pub mod dense;
pub mod engines;
pub mod gf2;
pub mod graph;
pub mod invariant;
pub mod omega;
pub mod party;
pub mod pauli;
pub mod perm;
pub mod random;
pub mod tableau;
