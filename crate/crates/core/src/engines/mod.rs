//! The three evaluators for Z(σ₁,...,σ_q): projector rewriting on the big
//! graph, canonical-tableau inner products, and dense brute force — plus
//! the exact scalar plumbing they share.

pub mod canonical;
pub mod dense_engine;
pub mod projector;

use crate::graph::{Basis, ColoredGraph, GraphError, Sign, TagKind};
use crate::omega::{DyadicOmega, Matrix2};
use crate::perm::PermutationTuple;
use crate::tableau::{StabilizerTableau, TableauError};
use num_rational::Rational64;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("dense budget exceeded: {0} total qubits (limit {1})")]
    BudgetExceeded(usize, usize),
    #[error("party '{0}' of the state has no permutation in the tuple")]
    MissingParty(String),
    #[error("dense result {0} does not lie on the exact scalar ring")]
    OffRing(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Projector,
    Canonical,
    Dense,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Projector => write!(f, "projector"),
            Method::Canonical => write!(f, "canonical"),
            Method::Dense => write!(f, "dense"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineResult {
    pub value: DyadicOmega,
    /// log₂|value|, exact; None when the value is exactly zero.
    pub magnitude_log2: Option<Rational64>,
    pub method: Method,
    /// True when only |value| is meaningful (canonical engine).
    pub magnitude_only: bool,
}

impl EngineResult {
    pub fn exact(value: DyadicOmega, method: Method) -> Self {
        EngineResult {
            magnitude_log2: value.magnitude_log2(),
            value,
            method,
            magnitude_only: false,
        }
    }
}

/// |i,±⟩ over the exact ring.
pub fn basis_ket(basis: Basis, sign: Sign) -> [DyadicOmega; 2] {
    let r = DyadicOmega::inv_sqrt2();
    let i = DyadicOmega::i();
    let second = match (basis, sign) {
        (Basis::X, Sign::Plus) => r,
        (Basis::X, Sign::Minus) => r.neg(),
        (Basis::Y, Sign::Plus) => r.mul(&i),
        (Basis::Y, Sign::Minus) => r.mul(&i).neg(),
        (Basis::Z, Sign::Plus) => DyadicOmega::ZERO,
        (Basis::Z, Sign::Minus) => DyadicOmega::ONE,
    };
    let first = match (basis, sign) {
        (Basis::Z, Sign::Plus) => DyadicOmega::ONE,
        (Basis::Z, Sign::Minus) => DyadicOmega::ZERO,
        _ => r,
    };
    [first, second]
}

/// P_{i,±} = |i,±⟩⟨i,±| over the exact ring.
pub fn projector_matrix(basis: Basis, sign: Sign) -> Matrix2 {
    let k = basis_ket(basis, sign);
    Matrix2([
        [k[0].mul(&k[0].conj()), k[0].mul(&k[1].conj())],
        [k[1].mul(&k[0].conj()), k[1].mul(&k[1].conj())],
    ])
}

fn flip(sign: Sign) -> Sign {
    match sign {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

/// The commutation table: P_{i,±} U = U P_{j,s}. Total over all 15
/// (projector-label, tag) combinations; validated wholesale against exact
/// 2×2 identities before first engine use.
pub fn commute_through(basis: Basis, sign: Sign, tag: TagKind) -> (Basis, Sign) {
    use Basis::*;
    use TagKind::*;
    match (tag, basis) {
        (Sz, X) => (X, flip(sign)),
        (Sz, Y) => (Y, flip(sign)),
        (Sz, Z) => (Z, sign),
        (SqrtMinusIZ, X) => (Y, flip(sign)),
        (SqrtMinusIZ, Y) => (X, sign),
        (SqrtMinusIZ, Z) => (Z, sign),
        (SqrtPlusIY, X) => (Z, flip(sign)),
        (SqrtPlusIY, Y) => (Y, sign),
        (SqrtPlusIY, Z) => (X, sign),
        (SqrtMinusIY, X) => (Z, sign),
        (SqrtMinusIY, Y) => (Y, sign),
        (SqrtMinusIY, Z) => (X, flip(sign)),
        (SqrtPlusIZ, X) => (Y, sign),
        (SqrtPlusIZ, Y) => (X, flip(sign)),
        (SqrtPlusIZ, Z) => (Z, sign),
    }
}

/// Checks every table entry as an exact matrix identity; panics on any
/// mismatch (the table is data, this is its proof obligation).
pub fn validate_commutation_table() {
    static VALIDATED: OnceLock<()> = OnceLock::new();
    VALIDATED.get_or_init(|| {
        let bases = [Basis::X, Basis::Y, Basis::Z];
        let signs = [Sign::Plus, Sign::Minus];
        let tags = [
            TagKind::Sz,
            TagKind::SqrtMinusIZ,
            TagKind::SqrtPlusIZ,
            TagKind::SqrtMinusIY,
            TagKind::SqrtPlusIY,
        ];
        for tag in tags {
            let u = tag.matrix();
            for basis in bases {
                for sign in signs {
                    let (jb, js) = commute_through(basis, sign, tag);
                    let lhs = projector_matrix(basis, sign).mul(&u);
                    let rhs = u.mul(&projector_matrix(jb, js));
                    assert_eq!(
                        lhs, rhs,
                        "commutation table entry wrong: ({basis:?},{sign:?}) through {tag:?}"
                    );
                }
            }
        }
    });
}

fn check_parties(graph: &ColoredGraph, tuple: &PermutationTuple) -> Result<(), EngineError> {
    for name in graph.parties().names() {
        if !tuple.has_party(name) {
            return Err(EngineError::MissingParty(name.clone()));
        }
    }
    Ok(())
}

/// Evaluates the multi-invariant of a graph state with the chosen engine.
/// Projector and canonical contract ⟨+...+|G_n⟩ on the big graph; dense
/// performs the replica sum on the state vector and is independent of the
/// big-graph construction.
pub fn evaluate_graph(
    graph: &ColoredGraph,
    tuple: &PermutationTuple,
    method: Method,
) -> Result<EngineResult, EngineError> {
    evaluate_graph_with_budget(graph, tuple, method, dense_engine::DEFAULT_BUDGET)
}

/// evaluate_graph with an explicit dense-engine budget (total replica
/// qubits); the budget is ignored by the other engines.
pub fn evaluate_graph_with_budget(
    graph: &ColoredGraph,
    tuple: &PermutationTuple,
    method: Method,
    budget: usize,
) -> Result<EngineResult, EngineError> {
    check_parties(graph, tuple)?;
    match method {
        Method::Projector => {
            let big = graph.build_big_graph(tuple)?;
            Ok(projector::projector_inner_product(&big))
        }
        Method::Canonical => {
            let big = graph.build_big_graph(tuple)?;
            canonical::canonical_magnitude(&big)
        }
        Method::Dense => {
            let state = graph.to_tableau().to_dense()?;
            let z = dense_engine::dense_multi_invariant(&state, graph.parties(), tuple, budget)?;
            let value = snap_to_ring(z).ok_or_else(|| EngineError::OffRing(z.to_string()))?;
            Ok(EngineResult::exact(value, Method::Dense))
        }
    }
}

/// Same as evaluate_graph but starting from an arbitrary stabilizer
/// tableau; the graph-based engines work on its graph-state form (the
/// invariant is unchanged by the local Cliffords).
pub fn evaluate_tableau(
    t: &StabilizerTableau,
    tuple: &PermutationTuple,
    method: Method,
) -> Result<EngineResult, EngineError> {
    evaluate_tableau_with_budget(t, tuple, method, dense_engine::DEFAULT_BUDGET)
}

/// evaluate_tableau with an explicit dense-engine budget.
pub fn evaluate_tableau_with_budget(
    t: &StabilizerTableau,
    tuple: &PermutationTuple,
    method: Method,
    budget: usize,
) -> Result<EngineResult, EngineError> {
    match method {
        Method::Dense => {
            let state = t.to_dense()?;
            for name in t.parties().names() {
                if !tuple.has_party(name) {
                    return Err(EngineError::MissingParty(name.clone()));
                }
            }
            let z = dense_engine::dense_multi_invariant(&state, t.parties(), tuple, budget)?;
            let value = snap_to_ring(z).ok_or_else(|| EngineError::OffRing(z.to_string()))?;
            Ok(EngineResult::exact(value, Method::Dense))
        }
        _ => {
            let (graph, _gates) = t.to_graph_state()?;
            evaluate_graph_with_budget(&graph, tuple, method, budget)
        }
    }
}

/// Snaps a float to the nearest ring element ω^t·2^{m/2}, verifying the
/// residual is below 1e-9. Exact engine outputs always land on this set;
/// anything else is reported, not rounded.
pub fn snap_to_ring(z: num_complex::Complex64) -> Option<DyadicOmega> {
    let tol = 1e-9;
    if z.norm() < tol {
        return Some(DyadicOmega::ZERO);
    }
    let m = (2.0 * z.norm().log2()).round() as i64;
    let t = (z.arg() / (std::f64::consts::PI / 4.0)).round() as i64;
    let mut v = DyadicOmega::omega_pow(t);
    let sqrt2 = DyadicOmega::new(0, 1, 0, -1, 0);
    if m >= 0 {
        for _ in 0..m {
            v = v.mul(&sqrt2);
        }
    } else {
        for _ in 0..-m {
            v = v.mul(&DyadicOmega::inv_sqrt2());
        }
    }
    if (v.to_complex() - z).norm() < tol {
        Some(v)
    } else {
        None
    }
}
