//! Stabilizer inner products via canonical tableaux: |⟨φ|ψ⟩| = 2^{−s/2}
//! where s counts the X-block rows of the canonical form of φ rotated
//! into ψ's computational frame, or 0 when the states are orthogonal.

use super::{EngineError, EngineResult, Method};
use crate::graph::ColoredGraph;
use crate::omega::DyadicOmega;
use crate::tableau::{StabilizerTableau, TableauError};
use num_rational::Rational64;

/// Returns (orthogonal, s) with |⟨φ|ψ⟩| = 2^{−s/2} when not orthogonal.
pub fn canonical_inner_product(
    psi: &StabilizerTableau,
    phi: &StabilizerTableau,
) -> Result<(bool, usize), TableauError> {
    // U with U|ψ⟩ = |0...0⟩, applied to φ: ⟨φ|ψ⟩ = (U|φ⟩)†|0...0⟩.
    let circuit = psi.disentangling_circuit()?;
    let mut rotated = phi.clone();
    rotated.apply_circuit(&circuit);
    let canon = rotated.canonical_form()?;
    let s = canon.x_rank();
    // ⟨0...0| is annihilated exactly when some stabilizer of the rotated
    // state is a pure-Z element with a minus sign.
    let orthogonal = canon
        .generators()
        .iter()
        .any(|g| g.x.is_zero() && g.sign_exponent() == 2);
    Ok((orthogonal, s))
}

/// Magnitude of ⟨+...+|G⟩ for the big graph, as an engine result. The
/// value field holds the positive real 2^{−s/2}; only its magnitude is
/// meaningful.
pub fn canonical_magnitude(big: &ColoredGraph) -> Result<EngineResult, EngineError> {
    let psi = big.to_tableau();
    let plus = StabilizerTableau::all_plus(psi.parties().clone());
    let (orthogonal, s) = canonical_inner_product(&psi, &plus)?;
    if orthogonal {
        return Ok(EngineResult {
            value: DyadicOmega::ZERO,
            magnitude_log2: None,
            method: Method::Canonical,
            magnitude_only: true,
        });
    }
    let mut value = DyadicOmega::ONE;
    for _ in 0..s {
        value = value.mul(&DyadicOmega::inv_sqrt2());
    }
    Ok(EngineResult {
        value,
        magnitude_log2: Some(Rational64::new(-(s as i64), 2)),
        method: Method::Canonical,
        magnitude_only: true,
    })
}
