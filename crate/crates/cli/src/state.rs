//! State-file ingestion. Three text formats are recognized:
//! - graph files ("vertices: ..." header),
//! - stabilizer tableaux ("parties: ..." header plus signed Pauli rows),
//! - X-generator files (rows over {I, X} only, no header) — these carry
//!   no partition, so one must be supplied on the command line.

use stabinv::analytic::x_state_from_generators;
use stabinv::gf2::{BitMatrix, BitVector};
use stabinv::graph::ColoredGraph;
use stabinv::party::PartyMap;
use stabinv::tableau::StabilizerTableau;

#[derive(Debug)]
pub enum StateFileError {
    Parse(String),
    Partition(String),
}

impl std::fmt::Display for StateFileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateFileError::Parse(m) => write!(f, "{m}"),
            StateFileError::Partition(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for StateFileError {}

/// A loaded state, remembering whether it came from a graph file (the
/// projector engine can then skip the graph-extraction step).
pub enum LoadedState {
    Graph(ColoredGraph),
    Tableau(StabilizerTableau),
}

impl LoadedState {
    pub fn tableau(&self) -> StabilizerTableau {
        match self {
            LoadedState::Graph(g) => g.to_tableau(),
            LoadedState::Tableau(t) => t.clone(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            LoadedState::Graph(g) => g.n_slots(),
            LoadedState::Tableau(t) => t.n_qubits(),
        }
    }

    pub fn with_parties(self, parties: PartyMap) -> LoadedState {
        match self {
            LoadedState::Graph(g) => LoadedState::Graph(
                ColoredGraph::from_edges(g.n_slots(), &g.edges(), parties)
                    .expect("re-partition keeps the adjacency valid"),
            ),
            LoadedState::Tableau(t) => LoadedState::Tableau(t.with_parties(parties)),
        }
    }
}

fn is_x_generator_file(text: &str) -> bool {
    let mut saw_row = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !line.chars().all(|c| c == 'I' || c == 'X') {
            return false;
        }
        saw_row = true;
    }
    saw_row
}

pub fn parse_state(text: &str, partition: Option<&str>) -> Result<LoadedState, StateFileError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let mut state = if first.starts_with("vertices:") {
        LoadedState::Graph(
            ColoredGraph::parse_text(text).map_err(|e| StateFileError::Parse(e.to_string()))?,
        )
    } else if is_x_generator_file(text) {
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let n = rows[0].len();
        let mut gens = BitMatrix::zeros(0, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(StateFileError::Parse(format!(
                    "line {}: row length {} != {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            let mut v = BitVector::zeros(n);
            for (q, c) in row.chars().enumerate() {
                if c == 'X' {
                    v.toggle(q);
                }
            }
            gens.push_row(v);
        }
        let parties = match partition {
            Some(p) => parse_partition(p, n)?,
            None => PartyMap::single(n),
        };
        let xs = x_state_from_generators(&gens, parties);
        LoadedState::Tableau(
            xs.to_tableau()
                .map_err(|e| StateFileError::Parse(e.to_string()))?,
        )
    } else {
        LoadedState::Tableau(
            StabilizerTableau::parse_text(text)
                .map_err(|e| StateFileError::Parse(e.to_string()))?,
        )
    };
    if let Some(p) = partition {
        let parties = parse_partition(p, state.n_qubits())?;
        state = state.with_parties(parties);
    }
    Ok(state)
}

/// Partition syntax: "embedded" (keep the file's own assignment),
/// "round-robin:<q>", or a comma-separated label per qubit "A,B,C,A".
pub fn parse_partition(spec: &str, n_qubits: usize) -> Result<PartyMap, StateFileError> {
    if spec == "embedded" {
        return Err(StateFileError::Partition(
            "'embedded' needs a file that carries its own partition".to_string(),
        ));
    }
    if let Some(q) = spec.strip_prefix("round-robin:") {
        let q: usize = q
            .parse()
            .map_err(|_| StateFileError::Partition(format!("bad party count '{q}'")))?;
        if q == 0 || q > n_qubits.max(1) {
            return Err(StateFileError::Partition(format!(
                "party count {q} out of range for {n_qubits} qubits"
            )));
        }
        return Ok(PartyMap::round_robin(n_qubits, q));
    }
    let labels: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    if labels.len() != n_qubits {
        return Err(StateFileError::Partition(format!(
            "partition lists {} labels for {} qubits",
            labels.len(),
            n_qubits
        )));
    }
    if labels.iter().any(|l| l.is_empty()) {
        return Err(StateFileError::Partition("empty party label".to_string()));
    }
    Ok(PartyMap::new(labels))
}
