//! Stabilizer tableaux: generator lists with party assignments, subgroup
//! cardinalities, canonical form, Clifford gate conjugation, graph-state
//! conversion and dense export.

use crate::gf2::{BitMatrix, BitVector};
use crate::graph::ColoredGraph;
use crate::party::{mask_label, PartyError, PartyMap, PartyMask};
use crate::pauli::{PauliParseError, PauliString};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableauError {
    #[error("generators {0} and {1} anticommute")]
    NonCommuting(usize, usize),
    #[error("generators are GF(2)-dependent")]
    DependentGenerators,
    #[error("-I is in the generated group")]
    MinusIdentity,
    #[error("expected a pure state (k = n), got k={k}, n={n}")]
    NotPure { k: usize, n: usize },
    #[error("qubit count too large for dense export: {0} (max {1})")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Pauli(#[from] PauliParseError),
    #[error(transparent)]
    Party(#[from] PartyError),
    #[error("{0}")]
    Format(String),
    #[error("GHZ extraction failed: {0}")]
    GhzExtraction(String),
}

/// Clifford gates used for tableau conjugation and circuit records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    Z(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

/// Replaces p with U p U†. Derived by mapping X^x and Z^z separately
/// through the gate's action on single-site generators and reordering
/// back to X-then-Z normal form.
pub fn conjugate(p: &mut PauliString, gate: &Gate) {
    match *gate {
        Gate::H(q) => {
            if p.x.get(q) && p.z.get(q) {
                p.phase = (p.phase + 2) % 4;
            }
            let x = p.x.get(q);
            let z = p.z.get(q);
            p.x.set(q, z);
            p.z.set(q, x);
        }
        Gate::S(q) => {
            if p.x.get(q) {
                p.phase = (p.phase + 1) % 4;
                p.z.toggle(q);
            }
        }
        Gate::Z(q) => {
            if p.x.get(q) {
                p.phase = (p.phase + 2) % 4;
            }
        }
        Gate::Cnot(c, t) => {
            if p.x.get(c) {
                p.x.toggle(t);
            }
            if p.z.get(t) {
                p.z.toggle(c);
            }
        }
        Gate::Cz(a, b) => {
            if p.x.get(a) && p.x.get(b) {
                p.phase = (p.phase + 2) % 4;
            }
            if p.x.get(a) {
                p.z.toggle(b);
            }
            if p.x.get(b) {
                p.z.toggle(a);
            }
        }
    }
}

/// Gate sequence undoing `gates` (applied in the returned order).
pub fn inverted_circuit(gates: &[Gate]) -> Vec<Gate> {
    let mut out = Vec::new();
    for g in gates.iter().rev() {
        match *g {
            Gate::S(q) => {
                // S† = S³
                out.push(Gate::S(q));
                out.push(Gate::S(q));
                out.push(Gate::S(q));
            }
            other => out.push(other),
        }
    }
    out
}

/// Table of log₂|G_R| over all party subsets R.
#[derive(Clone, Debug)]
pub struct SubgroupTable {
    names: Vec<String>,
    log2: Vec<usize>,
}

impl SubgroupTable {
    /// Builds a table from precomputed log₂ orders (one entry per party
    /// subset mask, 2^q total).
    pub fn from_parts(names: Vec<String>, log2: Vec<usize>) -> Self {
        assert_eq!(log2.len(), 1 << names.len());
        SubgroupTable { names, log2 }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn q(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, mask: PartyMask) -> usize {
        self.log2[mask as usize]
    }

    pub fn label(&self, mask: PartyMask) -> String {
        mask_label(&self.names, mask)
    }

    pub fn entries(&self) -> impl Iterator<Item = (PartyMask, usize)> + '_ {
        self.log2.iter().enumerate().map(|(m, &v)| (m as PartyMask, v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhzCounts {
    pub p: usize,
    pub m_ab: usize,
    pub m_bc: usize,
    pub m_ac: usize,
}

#[derive(Clone, Debug)]
pub struct StabilizerTableau {
    gens: Vec<PauliString>,
    parties: PartyMap,
}

impl StabilizerTableau {
    pub fn new(gens: Vec<PauliString>, parties: PartyMap) -> Result<Self, TableauError> {
        let n = parties.n_qubits();
        for g in &gens {
            if g.n_qubits() != n {
                return Err(TableauError::Format(format!(
                    "generator on {} qubits, party map covers {n}",
                    g.n_qubits()
                )));
            }
            if g.sign_exponent() % 2 != 0 {
                return Err(TableauError::Format(format!(
                    "generator {g} has imaginary sign"
                )));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !gens[i].commutes_with(&gens[j]) {
                    return Err(TableauError::NonCommuting(i, j));
                }
            }
        }
        let sympl = symplectic_matrix(&gens, n);
        if sympl.rank() != gens.len() {
            // Some nonempty product has identity x/z parts; its phase is
            // either +1 (dependent set) or −1 (−I in the group).
            let combo = find_dependent_combo(&gens, n);
            let mut prod = PauliString::identity(n);
            for i in combo.iter_set() {
                prod = prod.multiply(&gens[i]);
            }
            if prod.phase == 2 {
                return Err(TableauError::MinusIdentity);
            }
            return Err(TableauError::DependentGenerators);
        }
        Ok(StabilizerTableau { gens, parties })
    }

    /// Product state |0⟩^⊗n: generators Z_q.
    pub fn zero_state(parties: PartyMap) -> Self {
        let n = parties.n_qubits();
        let gens = (0..n)
            .map(|q| {
                let mut p = PauliString::identity(n);
                p.z.set(q, true);
                p
            })
            .collect();
        StabilizerTableau { gens, parties }
    }

    /// Product state |+⟩^⊗n: generators X_q.
    pub fn all_plus(parties: PartyMap) -> Self {
        let n = parties.n_qubits();
        let gens = (0..n)
            .map(|q| {
                let mut p = PauliString::identity(n);
                p.x.set(q, true);
                p
            })
            .collect();
        StabilizerTableau { gens, parties }
    }

    pub fn n_qubits(&self) -> usize {
        self.parties.n_qubits()
    }

    pub fn n_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.gens
    }

    pub fn parties(&self) -> &PartyMap {
        &self.parties
    }

    pub fn with_parties(&self, parties: PartyMap) -> Self {
        assert_eq!(parties.n_qubits(), self.n_qubits());
        StabilizerTableau {
            gens: self.gens.clone(),
            parties,
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        for g in self.gens.iter_mut() {
            conjugate(g, gate);
        }
    }

    pub fn apply_circuit(&mut self, gates: &[Gate]) {
        for g in gates {
            self.apply_gate(g);
        }
    }

    /// Basis of the exponent space of G_R: coefficient vectors α over the
    /// generators with Π gᵢ^αᵢ supported inside the parties of `mask`.
    pub fn subgroup_exponent_basis(&self, mask: PartyMask) -> BitMatrix {
        let outside = self.parties.qubits_outside(mask);
        let k = self.gens.len();
        let mut restricted = BitMatrix::zeros(k, 2 * outside.len());
        for (r, g) in self.gens.iter().enumerate() {
            for (c, &q) in outside.iter().enumerate() {
                restricted.set(r, c, g.x.get(q));
                restricted.set(r, outside.len() + c, g.z.get(q));
            }
        }
        restricted.transpose().kernel_basis()
    }

    /// log₂|G_R|: nullity of the generator matrix restricted to the
    /// x/z columns of qubits outside R.
    pub fn subgroup_order(&self, mask: PartyMask) -> usize {
        self.subgroup_exponent_basis(mask).n_rows()
    }

    pub fn subgroup_table(&self) -> Result<SubgroupTable, TableauError> {
        self.parties.check_table_size()?;
        let q = self.parties.q();
        let log2 = (0..1usize << q)
            .map(|m| self.subgroup_order(m as PartyMask))
            .collect();
        Ok(SubgroupTable {
            names: self.parties.names().to_vec(),
            log2,
        })
    }

    /// log₂|G_{S1}·G_{S2}·...|: rank of the union of exponent-space bases.
    pub fn product_subgroup_order(&self, masks: &[PartyMask]) -> usize {
        let k = self.gens.len();
        let mut union = BitMatrix::zeros(0, k);
        for &m in masks {
            for row in self.subgroup_exponent_basis(m).rows() {
                union.push_row(row.clone());
            }
        }
        union.rank()
    }

    /// (p, m_AB, m_BC, m_AC) for a tripartite state: GHZ and Bell-pair
    /// counts of the LC-equivalent normal form.
    pub fn ghz_extraction_counts(&self) -> Result<GhzCounts, TableauError> {
        if self.parties.q() != 3 {
            return Err(TableauError::GhzExtraction(format!(
                "need exactly 3 parties, got {}",
                self.parties.q()
            )));
        }
        let full = self.gens.len();
        let pairs = [0b011u16, 0b110, 0b101]; // AB, BC, AC in sorted-name order
        let prod = self.product_subgroup_order(&pairs);
        if prod > full {
            return Err(TableauError::GhzExtraction(
                "product subgroup exceeds full group".into(),
            ));
        }
        let p = full - prod;
        let singles = [
            self.subgroup_order(0b001),
            self.subgroup_order(0b010),
            self.subgroup_order(0b100),
        ];
        let mut m = [0usize; 3];
        for (idx, &pair) in pairs.iter().enumerate() {
            let gpair = self.subgroup_order(pair);
            let (x, y) = match pair {
                0b011 => (0, 1),
                0b110 => (1, 2),
                _ => (0, 2),
            };
            let num = gpair as isize - singles[x] as isize - singles[y] as isize - p as isize;
            if num < 0 || num % 2 != 0 {
                return Err(TableauError::GhzExtraction(format!(
                    "non-integral Bell count for pair mask {pair:#b}: {num}/2"
                )));
            }
            m[idx] = (num / 2) as usize;
        }
        Ok(GhzCounts {
            p,
            m_ab: m[0],
            m_bc: m[1],
            m_ac: m[2],
        })
    }

    /// Rank of the X-part matrix of the generators.
    pub fn x_rank(&self) -> usize {
        let n = self.n_qubits();
        let rows = self.gens.iter().map(|g| g.x.clone()).collect();
        BitMatrix::from_rows(rows, n).rank()
    }

    /// Row-reduced tableau: an upper X-block in echelon form over the
    /// x-parts, then a pure-Z block reduced over the z-parts. Row
    /// operations are swaps and exact Pauli products, so the generated
    /// group (with signs) is unchanged.
    pub fn canonical_form(&self) -> Result<StabilizerTableau, TableauError> {
        let n = self.n_qubits();
        let k = self.gens.len();
        let mut rows = self.gens.clone();
        let mut next = 0usize;
        for col in 0..n {
            if let Some(r) = (next..k).find(|&r| rows[r].x.get(col)) {
                rows.swap(next, r);
                for r2 in 0..k {
                    if r2 != next && rows[r2].x.get(col) {
                        rows[r2] = rows[r2].multiply(&rows[next]);
                    }
                }
                next += 1;
            }
        }
        let x_rows = next;
        for col in 0..n {
            if let Some(r) = (next..k).find(|&r| rows[r].z.get(col)) {
                rows.swap(next, r);
                for r2 in x_rows..k {
                    if r2 != next && rows[r2].z.get(col) {
                        rows[r2] = rows[r2].multiply(&rows[next]);
                    }
                }
                next += 1;
            }
        }
        for row in &rows[next..] {
            // Leftover rows have identity x/z parts.
            if row.phase == 2 {
                return Err(TableauError::MinusIdentity);
            }
            return Err(TableauError::DependentGenerators);
        }
        for row in &rows {
            debug_assert_eq!(row.sign_exponent() % 2, 0);
        }
        Ok(StabilizerTableau {
            gens: rows,
            parties: self.parties.clone(),
        })
    }

    /// Graph-state form: a graph plus the gate sequence mapping the input
    /// state onto the graph state. X-block elimination; Hadamard on the
    /// lowest-index deficient qubit whenever the X-part is column-deficient;
    /// phase gates clear the diagonal and Z gates fix signs.
    pub fn to_graph_state(&self) -> Result<(ColoredGraph, Vec<Gate>), TableauError> {
        let n = self.n_qubits();
        if self.gens.len() != n {
            return Err(TableauError::NotPure {
                k: self.gens.len(),
                n,
            });
        }
        let mut rows = self.gens.clone();
        let mut gates: Vec<Gate> = Vec::new();
        loop {
            let mut next = 0usize;
            let mut pivot = vec![false; n];
            for col in 0..n {
                if let Some(r) = (next..n).find(|&r| rows[r].x.get(col)) {
                    rows.swap(next, r);
                    for r2 in 0..n {
                        if r2 != next && rows[r2].x.get(col) {
                            rows[r2] = rows[r2].multiply(&rows[next]);
                        }
                    }
                    pivot[col] = true;
                    next += 1;
                }
            }
            if next == n {
                break;
            }
            let j = (0..n)
                .find(|&c| !pivot[c] && (next..n).any(|r| rows[r].z.get(c)))
                .ok_or(TableauError::DependentGenerators)?;
            gates.push(Gate::H(j));
            for row in rows.iter_mut() {
                conjugate(row, &Gate::H(j));
            }
        }
        // X-part is now the identity with row a pivoting column a; only
        // row a has x_a set, so S(a)/Z(a) touch exactly one row.
        for a in 0..n {
            if rows[a].z.get(a) {
                gates.push(Gate::S(a));
                for row in rows.iter_mut() {
                    conjugate(row, &Gate::S(a));
                }
            }
        }
        for a in 0..n {
            match rows[a].sign_exponent() {
                0 => {}
                2 => {
                    gates.push(Gate::Z(a));
                    for row in rows.iter_mut() {
                        conjugate(row, &Gate::Z(a));
                    }
                }
                _ => unreachable!("stabilizer elements have real sign"),
            }
        }
        let mut adj = BitMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                adj.set(a, b, rows[a].z.get(b));
            }
        }
        for a in 0..n {
            debug_assert!(!adj.get(a, a));
            for b in 0..n {
                debug_assert_eq!(adj.get(a, b), adj.get(b, a));
            }
        }
        Ok((ColoredGraph::new(adj, self.parties.clone())?, gates))
    }

    /// Gate sequence mapping the state onto |0⟩^⊗n: graph-state conversion,
    /// then CZ on every edge, then Hadamard everywhere.
    pub fn disentangling_circuit(&self) -> Result<Vec<Gate>, TableauError> {
        let (graph, mut gates) = self.to_graph_state()?;
        for (a, b) in graph.edges() {
            gates.push(Gate::Cz(a, b));
        }
        for q in 0..self.n_qubits() {
            gates.push(Gate::H(q));
        }
        Ok(gates)
    }

    /// Dense state vector (big-endian index convention of the dense
    /// module); global phase fixed so the first nonzero amplitude is
    /// real positive.
    pub fn to_dense(&self) -> Result<Vec<Complex64>, TableauError> {
        const MAX_N: usize = 20;
        let n = self.n_qubits();
        if n > MAX_N {
            return Err(TableauError::TooLarge(n, MAX_N));
        }
        if self.gens.len() != n {
            return Err(TableauError::NotPure {
                k: self.gens.len(),
                n,
            });
        }
        let canon = self.canonical_form()?;
        let r = canon.x_rank();
        // Seed basis vector |b⟩ with Z-row eigenvalues +1: z·b = phase/2.
        let zrows: Vec<BitVector> = canon.gens[r..].iter().map(|g| g.z.clone()).collect();
        let rhs = BitVector::from_bits(canon.gens[r..].iter().map(|g| g.phase == 2));
        let b = BitMatrix::from_rows(zrows, n)
            .solve(&rhs)
            .ok_or(TableauError::MinusIdentity)?;
        let b_index = crate::dense::index_mask(&b);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        let scale = (0.5f64).powf(r as f64 / 2.0);
        let i_pow = |e: u8| match e % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        // Gray-code walk over the X-block subgroup; each element lands on
        // a distinct basis index because X-block x-parts are independent.
        let mut cur = PauliString::identity(n);
        for step in 0u64..1u64 << r {
            if step > 0 {
                let flip = (step ^ (step >> 1)) ^ ((step - 1) ^ ((step - 1) >> 1));
                let gen_idx = flip.trailing_zeros() as usize;
                cur = cur.multiply(&canon.gens[gen_idx]);
            }
            let sign = if cur.z.dot(&b) { -1.0 } else { 1.0 };
            let idx = b_index ^ crate::dense::index_mask(&cur.x);
            amps[idx] = i_pow(cur.phase) * sign * scale;
        }
        let first = amps
            .iter()
            .find(|a| a.norm() > 1e-12)
            .copied()
            .ok_or(TableauError::MinusIdentity)?;
        let correction = first.conj() / first.norm();
        for a in amps.iter_mut() {
            *a *= correction;
        }
        Ok(amps)
    }

    /// Parses the text format: optional "parties: q0=A q1=B ..." header,
    /// then one generator per line like "+XXZ" or "-IZY".
    pub fn parse_text(text: &str) -> Result<StabilizerTableau, TableauError> {
        let mut party_tokens: Option<Vec<(usize, String)>> = None;
        let mut gens: Vec<PauliString> = Vec::new();
        let mut n: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("parties:") {
                let mut tokens = Vec::new();
                for tok in rest.split_whitespace() {
                    let (key, label) = tok.split_once('=').ok_or_else(|| {
                        TableauError::Format(format!("line {lineno}: bad party token '{tok}'"))
                    })?;
                    let idx: usize = key
                        .strip_prefix('q')
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| {
                            TableauError::Format(format!(
                                "line {lineno}: bad qubit key '{key}' (expected q<index>)"
                            ))
                        })?;
                    tokens.push((idx, label.to_string()));
                }
                party_tokens = Some(tokens);
                continue;
            }
            let (negative, rest) = if let Some(r) = line.strip_prefix('-') {
                (true, r)
            } else if let Some(r) = line.strip_prefix('−') {
                (true, r)
            } else {
                (false, line.strip_prefix('+').unwrap_or(line))
            };
            let g = PauliString::from_letters(rest.trim(), negative, lineno)?;
            if let Some(expected) = n {
                if g.n_qubits() != expected {
                    return Err(PauliParseError::LengthMismatch {
                        line: lineno,
                        expected,
                        found: g.n_qubits(),
                    }
                    .into());
                }
            } else {
                n = Some(g.n_qubits());
            }
            gens.push(g);
        }
        let n = n.ok_or_else(|| TableauError::Format("no generators found".into()))?;
        let parties = match party_tokens {
            None => PartyMap::single(n),
            Some(tokens) => {
                let mut labels = vec![None; n];
                for (idx, label) in tokens {
                    if idx >= n {
                        return Err(TableauError::Format(format!(
                            "party header references q{idx}, but generators have {n} qubits"
                        )));
                    }
                    labels[idx] = Some(label);
                }
                let labels: Option<Vec<String>> = labels.into_iter().collect();
                PartyMap::new(labels.ok_or_else(|| {
                    TableauError::Format("party header does not cover every qubit".into())
                })?)
            }
        };
        StabilizerTableau::new(gens, parties)
    }

    pub fn format_text(&self) -> String {
        let mut out = String::from("parties:");
        for q in 0..self.n_qubits() {
            out.push_str(&format!(" q{q}={}", self.parties.label_of(q)));
        }
        out.push('\n');
        for g in &self.gens {
            out.push_str(&format!("{g}\n"));
        }
        out
    }
}

fn symplectic_matrix(gens: &[PauliString], n: usize) -> BitMatrix {
    let rows = gens.iter().map(|g| g.x.concat(&g.z)).collect();
    BitMatrix::from_rows(rows, 2 * n)
}

/// Some nonzero coefficient vector α with Σ αᵢ·(xᵢ|zᵢ) = 0; assumes the
/// symplectic matrix is rank-deficient.
fn find_dependent_combo(gens: &[PauliString], n: usize) -> BitVector {
    let kernel = symplectic_matrix(gens, n).transpose().kernel_basis();
    kernel.row(0).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parse(text: &str) -> StabilizerTableau {
        StabilizerTableau::parse_text(text).unwrap()
    }

    fn ghz3() -> StabilizerTableau {
        parse("parties: q0=A q1=B q2=C\n+XXX\n+ZZI\n+IZZ\n")
    }

    fn bell() -> StabilizerTableau {
        parse("parties: q0=A q1=B\n+XX\n+ZZ\n")
    }

    fn random_pure_tableau(n: usize, rng: &mut ChaCha8Rng) -> StabilizerTableau {
        let mut t = StabilizerTableau::zero_state(PartyMap::round_robin(n, 3.min(n)));
        for _ in 0..30 {
            let g = match rng.gen_range(0..4) {
                0 => Gate::H(rng.gen_range(0..n)),
                1 => Gate::S(rng.gen_range(0..n)),
                2 if n > 1 => {
                    let a = rng.gen_range(0..n);
                    let mut b = rng.gen_range(0..n);
                    while b == a {
                        b = rng.gen_range(0..n);
                    }
                    Gate::Cnot(a, b)
                }
                _ if n > 1 => {
                    let a = rng.gen_range(0..n);
                    let mut b = rng.gen_range(0..n);
                    while b == a {
                        b = rng.gen_range(0..n);
                    }
                    Gate::Cz(a, b)
                }
                _ => Gate::H(0),
            };
            t.apply_gate(&g);
        }
        t
    }

    /// Enumerates all 2^k group elements (oracle use only, k ≤ 12).
    fn enumerate_group(t: &StabilizerTableau) -> Vec<PauliString> {
        let k = t.n_generators();
        assert!(k <= 12);
        let n = t.n_qubits();
        (0u32..1 << k)
            .map(|mask| {
                let mut p = PauliString::identity(n);
                for i in 0..k {
                    if mask >> i & 1 == 1 {
                        p = p.multiply(&t.generators()[i]);
                    }
                }
                p
            })
            .collect()
    }

    fn oracle_subgroup_order(t: &StabilizerTableau, mask: PartyMask) -> usize {
        let outside = t.parties().qubits_outside(mask);
        let count = enumerate_group(t)
            .iter()
            .filter(|g| outside.iter().all(|&q| g.is_identity_on(q)))
            .count();
        assert!(count.is_power_of_two());
        count.trailing_zeros() as usize
    }

    #[test]
    fn parse_format_round_trip() {
        let t = ghz3();
        assert_eq!(t.n_qubits(), 3);
        assert_eq!(t.parties().q(), 3);
        let text = t.format_text();
        let t2 = StabilizerTableau::parse_text(&text).unwrap();
        assert_eq!(t2.generators(), t.generators());
        assert_eq!(t2.parties(), t.parties());
    }

    #[test]
    fn parse_rejects_bad_tableaux() {
        assert!(matches!(
            StabilizerTableau::parse_text("+XX\n+ZX\n"),
            Err(TableauError::NonCommuting(0, 1))
        ));
        assert!(matches!(
            StabilizerTableau::parse_text("+XX\n+XX\n"),
            Err(TableauError::DependentGenerators)
        ));
        // XX · YY · (−ZZ): product of XX and YY is −ZZ, so adding −ZZ's
        // negation +ZZ... here {XX, YY, ZZ} multiplies to −I.
        assert!(matches!(
            StabilizerTableau::parse_text("+XX\n+YY\n+ZZ\n"),
            Err(TableauError::MinusIdentity)
        ));
    }

    #[test]
    fn subgroup_order_examples() {
        assert_eq!(bell().subgroup_order(0b1), 0); // |G_A| = 1
        let t = ghz3();
        let ab = t.parties().mask_for(&["A", "B"]).unwrap();
        assert_eq!(t.subgroup_order(ab), 1); // generated by ZZI
        assert_eq!(t.subgroup_order(t.parties().full_mask()), 3);
    }

    #[test]
    fn subgroup_table_examples() {
        let t = ghz3();
        let table = t.subgroup_table().unwrap();
        let expected = [0, 0, 0, 1, 0, 1, 1, 3]; // masks 0..8 over A,B,C
        for (mask, want) in expected.iter().enumerate() {
            assert_eq!(table.get(mask as PartyMask), *want, "mask {mask}");
        }

        let bb = parse("parties: q0=A q1=B q2=A q3=B\n+XXII\n+ZZII\n+IIXX\n+IIZZ\n");
        let table = bb.subgroup_table().unwrap();
        assert_eq!(
            [table.get(0), table.get(1), table.get(2), table.get(3)],
            [0, 0, 0, 4]
        );

        let prod = parse("parties: q0=A q1=B\n+ZI\n+IZ\n");
        let table = prod.subgroup_table().unwrap();
        assert_eq!(
            [table.get(0), table.get(1), table.get(2), table.get(3)],
            [0, 1, 1, 2]
        );
    }

    #[test]
    fn subgroup_order_matches_enumeration_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let t = random_pure_tableau(n, &mut rng);
            for mask in 0..1u16 << t.parties().q() {
                assert_eq!(t.subgroup_order(mask), oracle_subgroup_order(&t, mask));
            }
        }
    }

    #[test]
    fn product_subgroup_examples() {
        let t = ghz3();
        let pairs = [0b011, 0b110, 0b101];
        assert_eq!(t.product_subgroup_order(&pairs), 2);
        assert_eq!(
            t.product_subgroup_order(&[0b011]),
            t.subgroup_order(0b011)
        );
        assert_eq!(t.product_subgroup_order(&[0b001, 0b010, 0b100]), 0);
    }

    #[test]
    fn product_subgroup_matches_enumeration_oracle() {
        use std::collections::HashSet;
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let n = rng.gen_range(3..=5);
            let t = random_pure_tableau(n, &mut rng);
            let pairs: Vec<PartyMask> = vec![0b011, 0b110, 0b101];
            // Oracle: enumerate the literal product set {gh : g∈G_AB, h∈G_BC·G_AC}.
            let members = |mask: PartyMask| -> Vec<PauliString> {
                let outside = t.parties().qubits_outside(mask);
                enumerate_group(&t)
                    .into_iter()
                    .filter(|g| outside.iter().all(|&q| g.is_identity_on(q)))
                    .collect()
            };
            let mut set: HashSet<(Vec<u64>, Vec<u64>)> = HashSet::new();
            let key = |p: &PauliString| {
                (
                    p.x.iter_set().map(|i| i as u64).collect::<Vec<_>>(),
                    p.z.iter_set().map(|i| i as u64).collect::<Vec<_>>(),
                )
            };
            for g in members(pairs[0]) {
                for h in members(pairs[1]) {
                    for f in members(pairs[2]) {
                        set.insert(key(&g.multiply(&h).multiply(&f)));
                    }
                }
            }
            assert!(set.len().is_power_of_two());
            assert_eq!(
                t.product_subgroup_order(&pairs),
                set.len().trailing_zeros() as usize
            );
        }
    }

    #[test]
    fn ghz_extraction_examples() {
        assert_eq!(
            ghz3().ghz_extraction_counts().unwrap(),
            GhzCounts { p: 1, m_ab: 0, m_bc: 0, m_ac: 0 }
        );
        let bell_plus_zero = parse("parties: q0=A q1=B q2=C\n+XXI\n+ZZI\n+IIZ\n");
        assert_eq!(
            bell_plus_zero.ghz_extraction_counts().unwrap(),
            GhzCounts { p: 0, m_ab: 1, m_bc: 0, m_ac: 0 }
        );
    }

    #[test]
    fn ghz_extraction_entropy_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let n = rng.gen_range(3..=6);
            let t = random_pure_tableau(n, &mut rng);
            if t.parties().q() != 3 {
                continue;
            }
            let c = t.ghz_extraction_counts().unwrap();
            let full = t.n_generators();
            let sa = (full - t.subgroup_order(0b001) - t.subgroup_order(0b110)) / 2;
            assert_eq!(sa, c.m_ab + c.m_ac + c.p);
        }
    }

    #[test]
    fn pair_single_identity_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..30 {
            let n = rng.gen_range(3..=6);
            let t = random_pure_tableau(n, &mut rng);
            let lg = |m: PartyMask| t.subgroup_order(m);
            assert_eq!(
                lg(0b011) + lg(0b110) + lg(0b101),
                t.n_generators() + lg(0b001) + lg(0b010) + lg(0b100)
            );
            // Monotonicity over the subset lattice.
            for mask in 0..1u16 << t.parties().q() {
                for bit in 0..t.parties().q() {
                    let bigger = mask | 1 << bit;
                    assert!(lg(mask) <= lg(bigger));
                }
            }
        }
    }

    #[test]
    fn canonical_form_examples() {
        let canon = bell().canonical_form().unwrap();
        assert_eq!(canon.x_rank(), 1);
        let zstate = StabilizerTableau::zero_state(PartyMap::single(4));
        assert_eq!(zstate.canonical_form().unwrap().x_rank(), 0);
        assert_eq!(ghz3().canonical_form().unwrap().x_rank(), 1);
    }

    #[test]
    fn canonical_form_preserves_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..20 {
            let n = rng.gen_range(2..=6);
            let t = random_pure_tableau(n, &mut rng);
            let canon = t.canonical_form().unwrap();
            let sympl = symplectic_matrix(canon.generators(), n);
            for g in t.generators() {
                assert!(sympl.transpose().solve(&g.x.concat(&g.z)).is_some()
                    || sympl.rows().iter().any(|r| *r == g.x.concat(&g.z)));
            }
            // Stronger check for small n: identical element sets with signs.
            if n <= 5 {
                let mut a: Vec<String> =
                    enumerate_group(&t).iter().map(|p| format!("{p}")).collect();
                let mut b: Vec<String> = enumerate_group(&canon)
                    .iter()
                    .map(|p| format!("{p}"))
                    .collect();
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn gate_conjugation_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let gates = [
            Gate::H(0),
            Gate::H(1),
            Gate::S(0),
            Gate::S(1),
            Gate::Z(0),
            Gate::Cnot(0, 1),
            Gate::Cnot(1, 0),
            Gate::Cz(0, 1),
        ];
        for _ in 0..200 {
            let p = PauliString {
                x: BitVector::from_bits([rng.gen(), rng.gen()]),
                z: BitVector::from_bits([rng.gen(), rng.gen()]),
                phase: rng.gen_range(0..4),
            };
            let gate = gates[rng.gen_range(0..gates.len())];
            let mut conj = p.clone();
            conjugate(&mut conj, &gate);
            // Compare U P U† |b⟩ with conj |b⟩ on every basis vector.
            for b in 0..4usize {
                let mut e = vec![Complex64::new(0.0, 0.0); 4];
                e[b] = Complex64::new(1.0, 0.0);
                // U P U† e = U P (U† e)
                let mut ue = e.clone();
                for g in inverted_circuit(&[gate]) {
                    dense::apply_gate(&mut ue, &g);
                }
                let mut lhs = dense::apply_pauli(&ue, &p);
                dense::apply_gate(&mut lhs, &gate);
                let rhs = dense::apply_pauli(&e, &conj);
                assert!(dense::states_close(&lhs, &rhs, 1e-10), "{p} under {gate:?}");
            }
        }
    }

    #[test]
    fn to_dense_examples() {
        let b = bell().to_dense().unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b[0].re - r).abs() < 1e-12 && (b[3].re - r).abs() < 1e-12);
        assert!(b[1].norm() < 1e-12 && b[2].norm() < 1e-12);

        let z = parse("+Z\n").to_dense().unwrap();
        assert!((z[0].re - 1.0).abs() < 1e-12 && z[1].norm() < 1e-12);

        let g = ghz3().to_dense().unwrap();
        assert!((g[0].re - r).abs() < 1e-12 && (g[7].re - r).abs() < 1e-12);
        assert!((1..7).all(|i| g[i].norm() < 1e-12));
    }

    #[test]
    fn to_dense_is_plus_one_eigenvector() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.gen_range(1..=6);
            let t = random_pure_tableau(n, &mut rng);
            let state = t.to_dense().unwrap();
            assert!((dense::norm(&state) - 1.0).abs() < 1e-10);
            for g in t.generators() {
                let acted = dense::apply_pauli(&state, g);
                assert!(dense::states_close(&acted, &state, 1e-10), "{g}");
            }
        }
    }

    #[test]
    fn to_graph_state_examples() {
        // Bell: one edge plus a Hadamard-type correction.
        let (graph, gates) = bell().to_graph_state().unwrap();
        assert_eq!(graph.edges(), vec![(0, 1)]);
        assert!(!gates.is_empty());

        // |0⟩^n: empty graph, Hadamard on each qubit.
        let z4 = StabilizerTableau::zero_state(PartyMap::single(4));
        let (graph, gates) = z4.to_graph_state().unwrap();
        assert!(graph.edges().is_empty());
        assert_eq!(gates, vec![Gate::H(0), Gate::H(1), Gate::H(2), Gate::H(3)]);

        // A graph-state tableau is a fixed point with no gates.
        let t = parse("+XZZ\n+ZXI\n+ZIX\n");
        let (graph, gates) = t.to_graph_state().unwrap();
        assert_eq!(graph.edges(), vec![(0, 1), (0, 2)]);
        assert!(gates.is_empty());
    }

    #[test]
    fn to_graph_state_dense_verified() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..20 {
            let n = rng.gen_range(1..=6);
            let t = random_pure_tableau(n, &mut rng);
            let (graph, gates) = t.to_graph_state().unwrap();
            let mut state = t.to_dense().unwrap();
            for g in &gates {
                dense::apply_gate(&mut state, g);
            }
            let target = dense::graph_state_from_edges(n, &graph.edges());
            assert!(
                dense::global_phase_between(&target, &state, 1e-9).is_some(),
                "graph-state conversion wrong for n={n}"
            );
        }
    }

    #[test]
    fn disentangling_circuit_reaches_zero_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let n = rng.gen_range(1..=6);
            let t = random_pure_tableau(n, &mut rng);
            let gates = t.disentangling_circuit().unwrap();
            let mut state = t.to_dense().unwrap();
            for g in &gates {
                dense::apply_gate(&mut state, g);
            }
            let zero = dense::zero_state(n);
            assert!(dense::global_phase_between(&zero, &state, 1e-9).is_some());
        }
    }
}
