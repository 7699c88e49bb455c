//! Graph-rewriting evaluation of ⟨+...+|G⟩: project each vertex onto
//! |+⟩ in turn, rewriting the remaining graph state and carrying every
//! phase factor exactly in Z[ω]·2^{−k/2}.

use super::{basis_ket, commute_through, validate_commutation_table, EngineResult, Method};
use crate::graph::{Basis, ColoredGraph, MeasureResult, Sign, TagKind};
use crate::omega::{DyadicOmega, Matrix2};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Order in which vertices are projected out.
#[derive(Clone, Debug, Default)]
pub enum VertexOrder {
    /// Lowest current degree first, ties by vertex index (default: keeps
    /// the rewritten graphs sparse).
    #[default]
    MinDegree,
    /// Ascending vertex index regardless of degree.
    Ascending,
    /// A fixed explicit order over the alive slots.
    Fixed(Vec<usize>),
    /// Seeded random order (for invariance tests).
    Shuffled(u64),
}

/// How the special neighbor b0 of an x-type projection is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum B0Rule {
    #[default]
    LowestIndex,
    HighestIndex,
    Shuffled(u64),
}

#[derive(Clone, Debug, Default)]
pub struct ProjectorOptions {
    pub order: VertexOrder,
    pub b0: B0Rule,
}

fn plus_overlap(v: &[DyadicOmega; 2]) -> DyadicOmega {
    // ⟨+|v⟩ with ⟨+| = (1,1)/√2 (real entries, no conjugation needed).
    v[0].add(&v[1]).mul(&DyadicOmega::inv_sqrt2())
}

fn tag_product(tags: &[TagKind]) -> Matrix2 {
    tags.iter()
        .fold(Matrix2::identity(), |acc, t| acc.mul(&t.matrix()))
}

pub fn projector_inner_product(big: &ColoredGraph) -> EngineResult {
    projector_inner_product_with(big, &ProjectorOptions::default())
}

pub fn projector_inner_product_with(
    big: &ColoredGraph,
    options: &ProjectorOptions,
) -> EngineResult {
    validate_commutation_table();
    let mut g = big.clone();
    // pending[v] lists the byproduct unitaries accumulated on vertex v,
    // oldest first; the newest acts directly on the current graph state.
    let mut pending: Vec<Vec<TagKind>> = vec![Vec::new(); g.n_slots()];
    let mut scalar = DyadicOmega::ONE;
    let mut order_rng = match options.order {
        VertexOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut b0_rng = match options.b0 {
        B0Rule::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15)),
        _ => None,
    };
    let fixed: Vec<usize> = match &options.order {
        VertexOrder::Fixed(order) => order.clone(),
        _ => Vec::new(),
    };
    let mut fixed_pos = 0;

    while g.n_alive() > 0 {
        let a = match &options.order {
            VertexOrder::MinDegree => g
                .vertices()
                .min_by_key(|&v| (g.degree(v), v))
                .expect("graph has alive vertices"),
            VertexOrder::Ascending => g.vertices().next().expect("graph has alive vertices"),
            VertexOrder::Fixed(_) => loop {
                let v = fixed[fixed_pos];
                fixed_pos += 1;
                if g.is_alive(v) {
                    break v;
                }
            },
            VertexOrder::Shuffled(_) => {
                let alive: Vec<usize> = g.vertices().collect();
                *alive
                    .choose(order_rng.as_mut().expect("shuffled order has rng"))
                    .expect("graph has alive vertices")
            }
        };
        let tags = std::mem::take(&mut pending[a]);

        if g.degree(a) == 0 {
            // Isolated vertex: the state factorizes as W_a|+⟩_a ⊗ rest,
            // so the contribution is the direct amplitude ⟨+|W_a|+⟩.
            let v = tag_product(&tags).apply(&basis_ket(Basis::X, Sign::Plus));
            let f = plus_overlap(&v);
            if f.is_zero() {
                return EngineResult::exact(DyadicOmega::ZERO, Method::Projector);
            }
            scalar = scalar.mul(&f);
            g = g.delete_vertex(a);
            continue;
        }

        // Slide ⟨+|_a = ⟨+|P_{x,+} through the pending unitaries: it
        // emerges as a projector P_{j,s} acting on the graph state, while
        // the surviving bra amplitude is ⟨+|W_a|j,s⟩.
        let (mut basis, mut sign) = (Basis::X, Sign::Plus);
        for &t in &tags {
            (basis, sign) = commute_through(basis, sign, t);
        }
        let amp = plus_overlap(&tag_product(&tags).apply(&basis_ket(basis, sign)));
        if amp.is_zero() {
            return EngineResult::exact(DyadicOmega::ZERO, Method::Projector);
        }

        let b0 = if basis == Basis::X {
            let nbrs = g.neighbors(a);
            match options.b0 {
                B0Rule::LowestIndex => nbrs.first().copied(),
                B0Rule::HighestIndex => nbrs.last().copied(),
                B0Rule::Shuffled(_) => nbrs
                    .choose(b0_rng.as_mut().expect("shuffled b0 has rng"))
                    .copied(),
            }
        } else {
            None
        };

        match g
            .measure(a, basis, sign, b0)
            .expect("alive vertex with valid b0")
        {
            MeasureResult::Collapse => {
                return EngineResult::exact(DyadicOmega::ZERO, Method::Projector);
            }
            MeasureResult::Outcome(outcome) => {
                // P_{j,s}|G⟩ = ω^t (1/√2)|j,s⟩ ⊗ U|G'⟩; the vertex has
                // neighbors here (the isolated case was handled above).
                let factor = amp
                    .mul(&DyadicOmega::omega_pow(outcome.phase_omega))
                    .mul(&DyadicOmega::inv_sqrt2());
                scalar = scalar.mul(&factor);
                for t in outcome.byproducts {
                    pending[t.vertex].push(t.kind);
                }
                g = outcome.reduced;
            }
        }
    }
    EngineResult::exact(scalar, Method::Projector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;
    use crate::party::PartyMap;

    fn plain_graph(n: usize, edges: &[(usize, usize)]) -> ColoredGraph {
        ColoredGraph::from_edges(n, edges, PartyMap::single(n)).unwrap()
    }

    /// ⟨+...+|G⟩ computed densely, as the oracle.
    fn dense_overlap(g: &ColoredGraph) -> num_complex::Complex64 {
        let n = g.n_slots();
        let state = dense::graph_state_from_edges(n, &g.edges());
        dense::inner(&dense::all_plus(n), &state)
    }

    #[test]
    fn edgeless_graph_gives_one() {
        let g = plain_graph(4, &[]);
        let r = projector_inner_product(&g);
        assert_eq!(r.value, DyadicOmega::ONE);
    }

    #[test]
    fn single_edge_matches_dense() {
        let g = plain_graph(2, &[(0, 1)]);
        let r = projector_inner_product(&g);
        assert!((r.value.to_complex() - dense_overlap(&g)).norm() < 1e-12);
    }

    #[test]
    fn small_graphs_match_dense_oracle() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (3, vec![(0, 1), (1, 2)]),
            (3, vec![(0, 1), (1, 2), (0, 2)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
            (5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]),
            (6, vec![(0, 1), (2, 3), (4, 5)]),
        ];
        for (n, edges) in cases {
            let g = plain_graph(n, &edges);
            let r = projector_inner_product(&g);
            let oracle = dense_overlap(&g);
            assert!(
                (r.value.to_complex() - oracle).norm() < 1e-9,
                "mismatch on n={n} edges={edges:?}: got {:?}, oracle {oracle}",
                r.value.to_complex()
            );
        }
    }

    #[test]
    fn random_graphs_match_dense_under_all_strategies() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..60 {
            let n = rng.gen_range(2..=7);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((i, j));
                    }
                }
            }
            let g = plain_graph(n, &edges);
            let oracle = dense_overlap(&g);
            let strategies = [
                ProjectorOptions::default(),
                ProjectorOptions {
                    order: VertexOrder::Ascending,
                    b0: B0Rule::HighestIndex,
                },
                ProjectorOptions {
                    order: VertexOrder::Shuffled(trial),
                    b0: B0Rule::Shuffled(trial),
                },
            ];
            for opts in strategies {
                let r = projector_inner_product_with(&g, &opts);
                assert!(
                    (r.value.to_complex() - oracle).norm() < 1e-9,
                    "trial {trial} n={n} edges={edges:?} opts={opts:?}: \
                     got {:?}, oracle {oracle}",
                    r.value.to_complex()
                );
            }
        }
    }

    #[test]
    fn fixed_order_matches_default() {
        let g = plain_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let base = projector_inner_product(&g);
        let opts = ProjectorOptions {
            order: VertexOrder::Fixed(vec![3, 1, 4, 0, 2]),
            b0: B0Rule::LowestIndex,
        };
        let r = projector_inner_product_with(&g, &opts);
        assert_eq!(r.value, base.value);
    }
}
