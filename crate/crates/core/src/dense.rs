//! Dense state vectors for small qubit counts.
//!
//! Index convention: big-endian, qubit 0 is the most significant bit, so
//! index i represents |b_0 b_1 ... b_{n-1}⟩ with i = Σ b_q · 2^(n−1−q).
//! Used both by the brute-force engine and as the oracle in tests.

use crate::gf2::BitVector;
use crate::pauli::PauliString;
use crate::tableau::Gate;
use num_complex::Complex64;

pub type State = Vec<Complex64>;

pub fn n_qubits_of(state: &State) -> usize {
    debug_assert!(state.len().is_power_of_two());
    state.len().trailing_zeros() as usize
}

/// Position of qubit q's bit inside an index, given n qubits.
#[inline]
pub fn bit_pos(n: usize, q: usize) -> usize {
    n - 1 - q
}

/// Index mask with a 1 at every qubit set in the bit vector.
pub fn index_mask(bits: &BitVector) -> usize {
    let n = bits.len();
    bits.iter_set().map(|q| 1usize << bit_pos(n, q)).sum()
}

pub fn zero_state(n: usize) -> State {
    let mut s = vec![Complex64::new(0.0, 0.0); 1 << n];
    s[0] = Complex64::new(1.0, 0.0);
    s
}

pub fn all_plus(n: usize) -> State {
    vec![Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0); 1 << n]
}

/// Applies a single-qubit matrix to qubit q.
pub fn apply_1q(state: &mut State, q: usize, m: &[[Complex64; 2]; 2]) {
    let n = n_qubits_of(state);
    let stride = 1usize << bit_pos(n, q);
    for base in 0..state.len() {
        if base & stride == 0 {
            let a = state[base];
            let b = state[base | stride];
            state[base] = m[0][0] * a + m[0][1] * b;
            state[base | stride] = m[1][0] * a + m[1][1] * b;
        }
    }
}

pub fn apply_cz(state: &mut State, a: usize, b: usize) {
    let n = n_qubits_of(state);
    let ma = 1usize << bit_pos(n, a);
    let mb = 1usize << bit_pos(n, b);
    for i in 0..state.len() {
        if i & ma != 0 && i & mb != 0 {
            state[i] = -state[i];
        }
    }
}

pub fn apply_cnot(state: &mut State, control: usize, target: usize) {
    let n = n_qubits_of(state);
    let mc = 1usize << bit_pos(n, control);
    let mt = 1usize << bit_pos(n, target);
    for i in 0..state.len() {
        if i & mc != 0 && i & mt == 0 {
            state.swap(i, i | mt);
        }
    }
}

pub fn h_matrix() -> [[Complex64; 2]; 2] {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

pub fn s_matrix() -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    [
        [Complex64::new(1.0, 0.0), zero],
        [zero, Complex64::new(0.0, 1.0)],
    ]
}

pub fn z_matrix() -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    [
        [Complex64::new(1.0, 0.0), zero],
        [zero, Complex64::new(-1.0, 0.0)],
    ]
}

pub fn apply_gate(state: &mut State, gate: &Gate) {
    match *gate {
        Gate::H(q) => apply_1q(state, q, &h_matrix()),
        Gate::S(q) => apply_1q(state, q, &s_matrix()),
        Gate::Z(q) => apply_1q(state, q, &z_matrix()),
        Gate::Cnot(c, t) => apply_cnot(state, c, t),
        Gate::Cz(a, b) => apply_cz(state, a, b),
    }
}

/// |ψ'⟩ = i^phase X^x Z^z |ψ⟩.
pub fn apply_pauli(state: &State, p: &PauliString) -> State {
    let n = n_qubits_of(state);
    assert_eq!(p.n_qubits(), n);
    let xmask = index_mask(&p.x);
    let zmask = index_mask(&p.z);
    let i_pow = |e: u8| match e % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let phase = i_pow(p.phase);
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    for b in 0..state.len() {
        let sign = if (b & zmask).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        out[b ^ xmask] = phase * sign * state[b];
    }
    out
}

/// Graph state on n vertices from an edge list: CZ over each edge acting
/// on |+⟩^⊗n.
pub fn graph_state_from_edges(n: usize, edges: &[(usize, usize)]) -> State {
    let mut s = all_plus(n);
    for &(a, b) in edges {
        apply_cz(&mut s, a, b);
    }
    s
}

/// ⟨a|b⟩ with the conjugate on the first argument.
pub fn inner(a: &State, b: &State) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(state: &State) -> f64 {
    inner(state, state).re.sqrt()
}

/// Tensor product a ⊗ b (qubits of a come first, i.e. more significant).
pub fn tensor(a: &State, b: &State) -> State {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

pub fn states_close(a: &State, b: &State, tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
}

/// Equality up to a global phase; returns the phase e^{iθ} with b ≈ e^{iθ}·a
/// when it exists.
pub fn global_phase_between(a: &State, b: &State, tol: f64) -> Option<Complex64> {
    if a.len() != b.len() {
        return None;
    }
    let k = a.iter().position(|x| x.norm() > tol)?;
    if b[k].norm() < tol {
        return None;
    }
    let phase = b[k] / a[k];
    if (phase.norm() - 1.0).abs() > tol {
        return None;
    }
    let scaled: State = a.iter().map(|x| phase * x).collect();
    if states_close(&scaled, b, tol) {
        Some(phase)
    } else {
        None
    }
}
