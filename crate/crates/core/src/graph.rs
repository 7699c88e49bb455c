//! Graph states: GF(2) adjacency with party labels, local complementation,
//! Pauli-measurement rewrite rules with byproduct unitaries, and the big
//! graph whose all-plus overlap computes a multi-invariant.

use crate::gf2::BitMatrix;
use crate::omega::{DyadicOmega, Matrix2};
use crate::party::{PartyError, PartyMap};
use crate::perm::PermutationTuple;
use crate::tableau::StabilizerTableau;
use crate::pauli::PauliString;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("adjacency is not symmetric with zero diagonal (vertices {0}, {1})")]
    BadAdjacency(usize, usize),
    #[error("vertex {0} is invalid or deleted")]
    BadVertex(usize),
    #[error("graph file: {0}")]
    Format(String),
    #[error(transparent)]
    Party(#[from] PartyError),
    #[error("party '{0}' of the graph has no permutation assigned")]
    MissingPermutation(String),
}

/// Five elementary single-qubit byproduct operators of the measurement
/// rewrite rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TagKind {
    /// σ_z
    Sz,
    /// (−iσ_z)^{1/2}
    SqrtMinusIZ,
    /// (iσ_z)^{1/2}
    SqrtPlusIZ,
    /// (−iσ_y)^{1/2}
    SqrtMinusIY,
    /// (iσ_y)^{1/2}
    SqrtPlusIY,
}

impl TagKind {
    /// Exact 2×2 matrix over the ω ring:
    /// (−iσ_z)^{1/2} = diag(−ω³, ω), (iσ_z)^{1/2} = diag(ω, −ω³),
    /// (iσ_y)^{1/2} = [[1,1],[−1,1]]/√2, (−iσ_y)^{1/2} = [[1,−1],[1,1]]/√2.
    pub fn matrix(self) -> Matrix2 {
        let zero = DyadicOmega::ZERO;
        let one = DyadicOmega::ONE;
        let w = DyadicOmega::omega_pow(1);
        let mw3 = DyadicOmega::omega_pow(3).neg();
        match self {
            TagKind::Sz => Matrix2([[one, zero], [zero, one.neg()]]),
            TagKind::SqrtMinusIZ => Matrix2([[mw3, zero], [zero, w]]),
            TagKind::SqrtPlusIZ => Matrix2([[w, zero], [zero, mw3]]),
            TagKind::SqrtPlusIY => {
                Matrix2([[one, one], [one.neg(), one]]).scale(&DyadicOmega::inv_sqrt2())
            }
            TagKind::SqrtMinusIY => {
                Matrix2([[one, one.neg()], [one, one]]).scale(&DyadicOmega::inv_sqrt2())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalUnitaryTag {
    pub kind: TagKind,
    pub vertex: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub reduced: ColoredGraph,
    pub byproducts: Vec<LocalUnitaryTag>,
    /// Exponent t with P_{i,±}|G⟩ = ω^t · (1/√2)|i,±⟩ ⊗ U|G'⟩ exactly
    /// (ω = e^{iπ/4}). Zero for x and z; ±(deg − 1) for y (dense-verified).
    pub phase_omega: i64,
}

/// Measurement result: either a rewrite or amplitude zero.
#[derive(Clone, Debug)]
pub enum MeasureResult {
    Outcome(MeasurementOutcome),
    Collapse,
}

/// Graph with party-labeled vertices. Deleted vertices keep their indices
/// (rows are cleared and the alive flag dropped) so byproduct tags on
/// survivors never dangle.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    adjacency: BitMatrix,
    alive: Vec<bool>,
    parties: PartyMap,
}

impl ColoredGraph {
    pub fn new(adjacency: BitMatrix, parties: PartyMap) -> Result<Self, GraphError> {
        let n = parties.n_qubits();
        assert_eq!(adjacency.n_rows(), n);
        assert_eq!(adjacency.n_cols(), n);
        for a in 0..n {
            if adjacency.get(a, a) {
                return Err(GraphError::BadAdjacency(a, a));
            }
            for b in a + 1..n {
                if adjacency.get(a, b) != adjacency.get(b, a) {
                    return Err(GraphError::BadAdjacency(a, b));
                }
            }
        }
        Ok(ColoredGraph {
            adjacency,
            alive: vec![true; n],
            parties,
        })
    }

    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize)],
        parties: PartyMap,
    ) -> Result<Self, GraphError> {
        let mut adj = BitMatrix::zeros(n, n);
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(GraphError::BadAdjacency(a, b));
            }
            adj.set(a, b, true);
            adj.set(b, a, true);
        }
        ColoredGraph::new(adj, parties)
    }

    pub fn empty(parties: PartyMap) -> Self {
        let n = parties.n_qubits();
        ColoredGraph {
            adjacency: BitMatrix::zeros(n, n),
            alive: vec![true; n],
            parties,
        }
    }

    /// Total vertex slots including deleted ones.
    pub fn n_slots(&self) -> usize {
        self.alive.len()
    }

    pub fn n_alive(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn is_alive(&self, a: usize) -> bool {
        a < self.alive.len() && self.alive[a]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(move |&a| self.alive[a])
    }

    pub fn parties(&self) -> &PartyMap {
        &self.parties
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a, b)
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        self.adjacency.row(a).iter_set().collect()
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adjacency.row(a).count_ones()
    }

    /// Edges (a, b) with a < b over alive vertices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.vertices() {
            for b in self.neighbors(a) {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn toggle_edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.adjacency.set(a, b, !self.adjacency.get(a, b));
        self.adjacency.set(b, a, !self.adjacency.get(b, a));
    }

    /// τ_a: complements the subgraph induced on the neighborhood of a.
    pub fn local_complement(&self, a: usize) -> ColoredGraph {
        let mut out = self.clone();
        let nbrs = self.neighbors(a);
        for (i, &b) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                out.toggle_edge(b, c);
            }
        }
        out
    }

    /// Deletes a vertex and all its edges; the slot stays allocated.
    pub fn delete_vertex(&self, a: usize) -> ColoredGraph {
        let mut out = self.clone();
        for b in self.neighbors(a) {
            out.adjacency.set(a, b, false);
            out.adjacency.set(b, a, false);
        }
        out.alive[a] = false;
        out
    }

    /// Pauli measurement rewrite at vertex a. `b0_override` forces the
    /// x-rule pivot; the default is the lowest-index neighbor.
    pub fn measure(
        &self,
        a: usize,
        basis: Basis,
        sign: Sign,
        b0_override: Option<usize>,
    ) -> Result<MeasureResult, GraphError> {
        if !self.is_alive(a) {
            return Err(GraphError::BadVertex(a));
        }
        let nbrs = self.neighbors(a);
        let outcome = match basis {
            Basis::Z => {
                let reduced = self.delete_vertex(a);
                let byproducts = match sign {
                    Sign::Plus => vec![],
                    Sign::Minus => nbrs
                        .iter()
                        .map(|&b| LocalUnitaryTag {
                            kind: TagKind::Sz,
                            vertex: b,
                        })
                        .collect(),
                };
                MeasurementOutcome {
                    reduced,
                    byproducts,
                    phase_omega: 0,
                }
            }
            Basis::Y => {
                let reduced = self.local_complement(a).delete_vertex(a);
                let kind = match sign {
                    Sign::Plus => TagKind::SqrtMinusIZ,
                    Sign::Minus => TagKind::SqrtPlusIZ,
                };
                let byproducts = nbrs
                    .iter()
                    .map(|&b| LocalUnitaryTag { kind, vertex: b })
                    .collect();
                let deg = nbrs.len() as i64;
                let phase_omega = match sign {
                    Sign::Plus => deg - 1,
                    Sign::Minus => 1 - deg,
                };
                MeasurementOutcome {
                    reduced,
                    byproducts,
                    phase_omega,
                }
            }
            Basis::X => {
                if nbrs.is_empty() {
                    return Ok(match sign {
                        Sign::Plus => MeasureResult::Outcome(MeasurementOutcome {
                            reduced: self.delete_vertex(a),
                            byproducts: vec![],
                            phase_omega: 0,
                        }),
                        Sign::Minus => MeasureResult::Collapse,
                    });
                }
                let b0 = match b0_override {
                    Some(b) => {
                        if !self.has_edge(a, b) {
                            return Err(GraphError::BadVertex(b));
                        }
                        b
                    }
                    None => nbrs[0],
                };
                let reduced = self
                    .local_complement(b0)
                    .local_complement(a)
                    .local_complement(b0)
                    .delete_vertex(a);
                // The σ_z difference sets are read off the original graph.
                let n_b0: Vec<usize> = self.neighbors(b0);
                let mut byproducts = vec![LocalUnitaryTag {
                    kind: match sign {
                        Sign::Plus => TagKind::SqrtPlusIY,
                        Sign::Minus => TagKind::SqrtMinusIY,
                    },
                    vertex: b0,
                }];
                match sign {
                    Sign::Plus => {
                        for &b in &nbrs {
                            if !n_b0.contains(&b) && b != b0 {
                                byproducts.push(LocalUnitaryTag {
                                    kind: TagKind::Sz,
                                    vertex: b,
                                });
                            }
                        }
                    }
                    Sign::Minus => {
                        for &b in &n_b0 {
                            if !nbrs.contains(&b) && b != a {
                                byproducts.push(LocalUnitaryTag {
                                    kind: TagKind::Sz,
                                    vertex: b,
                                });
                            }
                        }
                    }
                }
                MeasurementOutcome {
                    reduced,
                    byproducts,
                    phase_omega: 0,
                }
            }
        };
        debug_assert!(outcome
            .byproducts
            .iter()
            .all(|t| outcome.reduced.is_alive(t.vertex)));
        Ok(MeasureResult::Outcome(outcome))
    }

    /// Stabilizer tableau of the graph state: g_a = X_a Π_{b∈N(a)} Z_b.
    /// Requires all vertex slots alive (fresh graph).
    pub fn to_tableau(&self) -> StabilizerTableau {
        let n = self.n_slots();
        assert!(self.alive.iter().all(|&a| a), "graph has deleted vertices");
        let gens = (0..n)
            .map(|a| {
                let mut p = PauliString::identity(n);
                p.x.set(a, true);
                for b in self.neighbors(a) {
                    p.z.set(b, true);
                }
                p
            })
            .collect();
        StabilizerTableau::new(gens, self.parties.clone()).expect("graph tableau is always valid")
    }

    /// Big graph on n_rep·|V| vertices: Γ_{(a,i),(b,j)} =
    /// γ_ab (δ_ij + δ_{σ_pa(i), σ_pb(j)}) mod 2, with σ assigned per party.
    /// Vertex (a, i) maps to index a·n_rep + i.
    pub fn build_big_graph(&self, perms: &PermutationTuple) -> Result<ColoredGraph, GraphError> {
        assert!(self.alive.iter().all(|&a| a), "graph has deleted vertices");
        let n = self.n_slots();
        let n_rep = perms.n_rep();
        for name in self.parties.names() {
            if !perms.has_party(name) {
                return Err(GraphError::MissingPermutation(name.clone()));
            }
        }
        let big_n = n * n_rep;
        let mut adj = BitMatrix::zeros(big_n, big_n);
        let mut labels = Vec::with_capacity(big_n);
        for a in 0..n {
            for _ in 0..n_rep {
                labels.push(self.parties.label_of(a).to_string());
            }
        }
        for a in 0..n {
            let sigma_a = perms.perm_for(self.parties.label_of(a)).unwrap();
            for b in a + 1..n {
                if !self.has_edge(a, b) {
                    continue;
                }
                let sigma_b = perms.perm_for(self.parties.label_of(b)).unwrap();
                for i in 0..n_rep {
                    for j in 0..n_rep {
                        let bit = (i == j) ^ (sigma_a.apply(i) == sigma_b.apply(j));
                        if bit {
                            let u = a * n_rep + i;
                            let v = b * n_rep + j;
                            adj.set(u, v, true);
                            adj.set(v, u, true);
                        }
                    }
                }
            }
        }
        ColoredGraph::new(adj, PartyMap::new(labels))
    }

    /// Parses the text format: "vertices: v0 v1 ...", "parties: v0=A ...",
    /// then "edge: a b" lines.
    pub fn parse_text(text: &str) -> Result<ColoredGraph, GraphError> {
        let mut vertex_names: Option<Vec<String>> = None;
        let mut party_pairs: Vec<(String, String)> = Vec::new();
        let mut edge_pairs: Vec<(String, String)> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                vertex_names = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("parties:") {
                for tok in rest.split_whitespace() {
                    let (v, p) = tok
                        .split_once('=')
                        .ok_or_else(|| GraphError::Format(format!("bad party token '{tok}'")))?;
                    party_pairs.push((v.to_string(), p.to_string()));
                }
            } else if let Some(rest) = line.strip_prefix("edge:") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(GraphError::Format(format!("bad edge line '{line}'")));
                }
                edge_pairs.push((toks[0].to_string(), toks[1].to_string()));
            } else {
                return Err(GraphError::Format(format!("unrecognized line '{line}'")));
            }
        }
        let names = vertex_names
            .ok_or_else(|| GraphError::Format("missing 'vertices:' line".into()))?;
        let n = names.len();
        let index_of = |name: &str| -> Result<usize, GraphError> {
            names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| GraphError::Format(format!("unknown vertex '{name}'")))
        };
        let mut labels = vec![None; n];
        for (v, p) in &party_pairs {
            labels[index_of(v)?] = Some(p.clone());
        }
        let labels: Option<Vec<String>> = labels.into_iter().collect();
        let labels = labels
            .ok_or_else(|| GraphError::Format("parties line does not cover every vertex".into()))?;
        let mut edges = Vec::new();
        for (a, b) in &edge_pairs {
            edges.push((index_of(a)?, index_of(b)?));
        }
        ColoredGraph::from_edges(n, &edges, PartyMap::new(labels))
    }

    pub fn format_text(&self) -> String {
        let mut out = String::from("vertices:");
        for v in self.vertices() {
            out.push_str(&format!(" v{v}"));
        }
        out.push_str("\nparties:");
        for v in self.vertices() {
            out.push_str(&format!(" v{v}={}", self.parties.label_of(v)));
        }
        out.push('\n');
        for (a, b) in self.edges() {
            out.push_str(&format!("edge: v{a} v{b}\n"));
        }
        out
    }
}
