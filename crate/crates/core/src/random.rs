//! Seeded generators for random graphs, circuits, and stabilizer states.
//! Deterministic for a given seed (ChaCha-based), so generated inputs are
//! reproducible across runs and platforms.

use crate::graph::ColoredGraph;
use crate::party::PartyMap;
use crate::tableau::{Gate, StabilizerTableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on n vertices with edge probability p.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, parties: PartyMap) -> ColoredGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    ColoredGraph::from_edges(n, &edges, parties).expect("generated edges are valid")
}

/// Random Clifford circuit of the given depth over H, S, CNOT, CZ.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, depth: usize) -> Vec<Gate> {
    let mut gates = Vec::with_capacity(depth);
    for _ in 0..depth {
        let g = match rng.gen_range(0..4) {
            0 => Gate::H(rng.gen_range(0..n)),
            1 => Gate::S(rng.gen_range(0..n)),
            k if n > 1 => {
                let a = rng.gen_range(0..n);
                let mut b = rng.gen_range(0..n);
                while b == a {
                    b = rng.gen_range(0..n);
                }
                if k == 2 {
                    Gate::Cnot(a, b)
                } else {
                    Gate::Cz(a, b)
                }
            }
            _ => Gate::H(0),
        };
        gates.push(g);
    }
    gates
}

/// Random pure stabilizer state: |0...0⟩ pushed through a random Clifford
/// circuit of depth 6n (enough to mix thoroughly at these sizes).
pub fn random_tableau<R: Rng>(rng: &mut R, parties: PartyMap) -> StabilizerTableau {
    let n = parties.n_qubits();
    let mut t = StabilizerTableau::zero_state(parties);
    for g in random_circuit(rng, n, 6 * n.max(1)) {
        t.apply_gate(&g);
    }
    t
}
