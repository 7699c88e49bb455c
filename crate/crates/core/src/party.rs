//! Assignment of qubits (or graph vertices) to named parties, and bitmask
//! subsets of the party list.

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartyError {
    #[error("party '{0}' not present in this state")]
    UnknownParty(String),
    #[error("too many parties: {0} (subset tables support at most 16)")]
    TooManyParties(usize),
}

/// A subset of parties as a bitmask over the sorted party-name list.
pub type PartyMask = u16;

/// Total map from qubit index to party label. Labels are arbitrary strings;
/// the sorted unique label list defines party indices and mask bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyMap {
    names: Vec<String>,
    assignment: Vec<usize>,
}

impl PartyMap {
    pub fn new(labels: Vec<String>) -> Self {
        let names: Vec<String> = labels
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let assignment = labels
            .iter()
            .map(|l| names.iter().position(|n| n == l).unwrap())
            .collect();
        PartyMap { names, assignment }
    }

    /// All qubits in one party named "A".
    pub fn single(n_qubits: usize) -> Self {
        PartyMap::new(vec!["A".to_string(); n_qubits])
    }

    /// Round-robin assignment over generated names A, B, C, ...
    pub fn round_robin(n_qubits: usize, q: usize) -> Self {
        let labels = (0..n_qubits)
            .map(|i| party_name(i % q))
            .collect();
        PartyMap::new(labels)
    }

    pub fn n_qubits(&self) -> usize {
        self.assignment.len()
    }

    /// Number of distinct parties.
    pub fn q(&self) -> usize {
        self.names.len()
    }

    /// Sorted unique party names.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn party_of(&self, qubit: usize) -> usize {
        self.assignment[qubit]
    }

    pub fn label_of(&self, qubit: usize) -> &str {
        &self.names[self.assignment[qubit]]
    }

    pub fn full_mask(&self) -> PartyMask {
        if self.q() == 16 {
            u16::MAX
        } else {
            (1u16 << self.q()) - 1
        }
    }

    pub fn mask_for(&self, labels: &[&str]) -> Result<PartyMask, PartyError> {
        let mut mask = 0u16;
        for l in labels {
            let idx = self
                .names
                .iter()
                .position(|n| n == l)
                .ok_or_else(|| PartyError::UnknownParty(l.to_string()))?;
            mask |= 1 << idx;
        }
        Ok(mask)
    }

    /// Qubits whose party is inside the mask.
    pub fn qubits_in(&self, mask: PartyMask) -> Vec<usize> {
        (0..self.n_qubits())
            .filter(|&i| mask >> self.assignment[i] & 1 == 1)
            .collect()
    }

    /// Qubits whose party is outside the mask.
    pub fn qubits_outside(&self, mask: PartyMask) -> Vec<usize> {
        (0..self.n_qubits())
            .filter(|&i| mask >> self.assignment[i] & 1 == 0)
            .collect()
    }

    pub fn check_table_size(&self) -> Result<(), PartyError> {
        if self.q() > 16 {
            Err(PartyError::TooManyParties(self.q()))
        } else {
            Ok(())
        }
    }
}

/// Generated party names: A..Z then P26, P27, ...
pub fn party_name(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("P{i}")
    }
}

/// Renders a mask like "{A,B}" for diagnostics.
pub fn mask_label(names: &[String], mask: PartyMask) -> String {
    let parts: Vec<&str> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, n)| n.as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}
