//! Brute-force replica contraction: Z = ⟨ψ|^⊗n (σ₁⊗...⊗σ_q) |ψ⟩^⊗n,
//! summed directly over computational-basis assignments of every replica.
//! Exponential in n_rep·n_qubits; the independent oracle for the other
//! two engines.

use super::EngineError;
use crate::dense::{n_qubits_of, State};
use crate::party::PartyMap;
use crate::perm::{Perm, PermutationTuple};
use num_complex::Complex64;

/// Hard cap on n_qubits for the replicated state.
pub const MAX_SINGLE_QUBITS: usize = 10;
/// Default cap on n_rep · n_qubits.
pub const DEFAULT_BUDGET: usize = 24;

/// The replica permutation σ_a of party a sends replica r's party-a
/// factor to replica σ_a(r), so the bra index of replica r draws its
/// party-a bits from ket replica σ_a⁻¹(r).
pub fn dense_multi_invariant(
    state: &State,
    parties: &PartyMap,
    tuple: &PermutationTuple,
    budget_total_qubits: usize,
) -> Result<Complex64, EngineError> {
    let nq = n_qubits_of(state);
    assert_eq!(parties.n_qubits(), nq, "party map size mismatch");
    let n_rep = tuple.n_rep();
    let total_bits = n_rep * nq;
    if nq > MAX_SINGLE_QUBITS || total_bits > budget_total_qubits {
        return Err(EngineError::BudgetExceeded(
            total_bits.max(nq),
            budget_total_qubits.min(MAX_SINGLE_QUBITS * n_rep),
        ));
    }
    // Per qubit, the inverse permutation of its party.
    let mut inv_for_qubit: Vec<Perm> = Vec::with_capacity(nq);
    for q in 0..nq {
        let name = parties.label_of(q);
        let perm = tuple
            .perm_for(name)
            .ok_or_else(|| EngineError::MissingParty(name.to_string()))?;
        inv_for_qubit.push(perm.inverse());
    }

    let mask = (1usize << nq) - 1;
    let mut z = Complex64::new(0.0, 0.0);
    let mut rep_idx = vec![0usize; n_rep];
    for t in 0u64..(1u64 << total_bits) {
        for (r, idx) in rep_idx.iter_mut().enumerate() {
            *idx = (t >> (r * nq)) as usize & mask;
        }
        let mut amp = Complex64::new(1.0, 0.0);
        for &idx in &rep_idx {
            amp *= state[idx];
        }
        if amp.norm_sqr() < 1e-30 {
            continue;
        }
        for r in 0..n_rep {
            let mut bra = 0usize;
            for (q, inv) in inv_for_qubit.iter().enumerate() {
                let src = inv.apply(r);
                let bit_pos = nq - 1 - q;
                bra |= (rep_idx[src] >> bit_pos & 1) << bit_pos;
            }
            amp *= state[bra].conj();
        }
        z += amp;
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;
    use crate::perm::{kempe_tuple, multi_entropy_tuple};

    #[test]
    fn identity_tuple_gives_one() {
        let parties = PartyMap::new(vec!["A".into(), "B".into()]);
        let state = dense::graph_state_from_edges(2, &[(0, 1)]);
        let names: Vec<String> = vec!["A".into(), "B".into()];
        let tuple = PermutationTuple::identity(&names, 3);
        let z = dense_multi_invariant(&state, &parties, &tuple, DEFAULT_BUDGET).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn bell_purity_is_half() {
        // Tr ρ_A² for a Bell pair.
        let parties = PartyMap::new(vec!["A".into(), "B".into()]);
        let mut state = dense::zero_state(2);
        dense::apply_1q(&mut state, 0, &dense::h_matrix());
        dense::apply_cnot(&mut state, 0, 1);
        let tuple = multi_entropy_tuple(2, 2);
        let z = dense_multi_invariant(&state, &parties, &tuple, DEFAULT_BUDGET).unwrap();
        assert!((z - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ghz_kempe_is_quarter() {
        let parties = PartyMap::new(vec!["A".into(), "B".into(), "C".into()]);
        let state = dense::graph_state_from_edges(3, &[(0, 1), (0, 2)]);
        let z = dense_multi_invariant(&state, &parties, &kempe_tuple(), DEFAULT_BUDGET).unwrap();
        assert!((z.norm() - 0.25).abs() < 1e-12, "got {z}");
    }

    #[test]
    fn ghz_renyi2_tripartite_is_eighth() {
        let parties = PartyMap::new(vec!["A".into(), "B".into(), "C".into()]);
        let state = dense::graph_state_from_edges(3, &[(0, 1), (0, 2)]);
        let tuple = multi_entropy_tuple(2, 3);
        let z = dense_multi_invariant(&state, &parties, &tuple, DEFAULT_BUDGET).unwrap();
        assert!((z.norm() - 0.125).abs() < 1e-12, "got {z}");
    }

    #[test]
    fn budget_is_enforced() {
        let parties = PartyMap::new(vec!["A".into(), "B".into(), "C".into()]);
        let state = dense::graph_state_from_edges(3, &[(0, 1), (0, 2)]);
        let tuple = multi_entropy_tuple(2, 3);
        let err = dense_multi_invariant(&state, &parties, &tuple, 8).unwrap_err();
        assert!(matches!(err, EngineError::BudgetExceeded(12, 8)));
    }
}
