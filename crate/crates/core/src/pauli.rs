//! Signed n-qubit Pauli operators in symplectic form.
//!
//! An operator is stored as i^phase · X^x · Z^z with phase mod 4. In this
//! encoding the letter Y at a site contributes one factor of i to the
//! phase (Y = i·XZ), so the conventional sign of a Pauli string is
//! i^(phase − #Y).

use crate::gf2::BitVector;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliParseError {
    #[error("line {line}: invalid Pauli character '{ch}' (expected I, X, Y or Z)")]
    InvalidChar { line: usize, ch: char },
    #[error("line {line}: empty Pauli string")]
    Empty { line: usize },
    #[error("line {line}: expected {expected} qubits, found {found}")]
    LengthMismatch { line: usize, expected: usize, found: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub x: BitVector,
    pub z: BitVector,
    /// Exponent of i, mod 4.
    pub phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    /// Builds from a letter string like "XXZ", with an overall sign.
    pub fn from_letters(letters: &str, negative: bool, line: usize) -> Result<Self, PauliParseError> {
        let n = letters.chars().count();
        if n == 0 {
            return Err(PauliParseError::Empty { line });
        }
        let mut p = PauliString::identity(n);
        for (i, ch) in letters.chars().enumerate() {
            match ch {
                'I' => {}
                'X' => p.x.set(i, true),
                'Z' => p.z.set(i, true),
                'Y' => {
                    p.x.set(i, true);
                    p.z.set(i, true);
                    p.phase = (p.phase + 1) % 4;
                }
                _ => return Err(PauliParseError::InvalidChar { line, ch }),
            }
        }
        if negative {
            p.phase = (p.phase + 2) % 4;
        }
        Ok(p)
    }

    /// Number of sites with both x and z set (letter Y).
    pub fn y_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n_qubits() {
            if self.x.get(i) && self.z.get(i) {
                count += 1;
            }
        }
        count
    }

    /// Conventional sign exponent: operator = i^k · (letter string),
    /// k = phase − #Y mod 4.
    pub fn sign_exponent(&self) -> u8 {
        ((self.phase as usize + 4 * self.n_qubits() - self.y_count()) % 4) as u8
    }

    pub fn is_identity_letters(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Exact product with phase tracked mod 4.
    pub fn multiply(&self, other: &PauliString) -> PauliString {
        assert_eq!(self.n_qubits(), other.n_qubits(), "qubit count mismatch");
        // (i^p X^x1 Z^z1)(i^q X^x2 Z^z2) = i^(p+q) (−1)^(z1·x2) X^(x1+x2) Z^(z1+z2)
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let swap = self.z.dot(&other.x);
        let phase = (self.phase + other.phase + if swap { 2 } else { 0 }) % 4;
        PauliString { x, z, phase }
    }

    /// True iff the symplectic form x1·z2 + z1·x2 vanishes.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    /// Trivial (identity) action on qubit i.
    pub fn is_identity_on(&self, i: usize) -> bool {
        !self.x.get(i) && !self.z.get(i)
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign_exponent() {
            0 => write!(f, "+")?,
            1 => write!(f, "+i")?,
            2 => write!(f, "-")?,
            3 => write!(f, "-i")?,
            _ => unreachable!(),
        }
        for i in 0..self.n_qubits() {
            let ch = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    /// Dense 2^n × 2^n matrix of a Pauli string, for oracle checks.
    pub fn dense(p: &PauliString) -> Vec<Vec<Complex64>> {
        let n = p.n_qubits();
        let dim = 1 << n;
        let i_pow = |e: u8| match e % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        // i^phase X^x Z^z |b> = i^phase (−1)^(z·b) |b ⊕ x>
        for b in 0..dim {
            let mut zdotb = 0u32;
            let mut target = b;
            for q in 0..n {
                if p.z.get(q) && (b >> q) & 1 == 1 {
                    zdotb ^= 1;
                }
                if p.x.get(q) {
                    target ^= 1 << q;
                }
            }
            let val = i_pow(p.phase) * if zdotb == 1 { -1.0 } else { 1.0 };
            m[target][b] = val;
        }
        m
    }

    fn mat_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let n = a.len();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    fn mat_eq(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> bool {
        a.iter()
            .zip(b)
            .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() < 1e-12))
    }

    fn parse(s: &str) -> PauliString {
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        PauliString::from_letters(rest, neg, 0).unwrap()
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let p = parse("X").multiply(&parse("Z"));
        assert_eq!(p.x.get(0), true);
        assert_eq!(p.z.get(0), true);
        assert_eq!(p.sign_exponent(), 3); // XZ = −iY
    }

    #[test]
    fn zz_times_xx_is_minus_yy() {
        let p = parse("ZZ").multiply(&parse("XX"));
        assert_eq!(format!("{p}"), "-YY");
    }

    #[test]
    fn squaring_gives_identity() {
        for s in ["XX", "ZZ", "-YY", "XZY", "-ZIX"] {
            let g = parse(s);
            let sq = g.multiply(&g);
            assert!(sq.is_identity_letters());
            assert_eq!(sq.phase, 0);
        }
    }

    #[test]
    fn product_matches_dense_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(1..=3);
            let rand_p = |rng: &mut rand_chacha::ChaCha8Rng| PauliString {
                x: BitVector::from_bits((0..n).map(|_| rng.gen())),
                z: BitVector::from_bits((0..n).map(|_| rng.gen())),
                phase: rng.gen_range(0..4),
            };
            let p = rand_p(&mut rng);
            let q = rand_p(&mut rng);
            let prod = p.multiply(&q);
            assert!(mat_eq(&dense(&prod), &mat_mul(&dense(&p), &dense(&q))));
            // Commutation test against the dense commutator.
            let pq = mat_mul(&dense(&p), &dense(&q));
            let qp = mat_mul(&dense(&q), &dense(&p));
            assert_eq!(p.commutes_with(&q), mat_eq(&pq, &qp));
        }
    }

    #[test]
    fn display_round_trip() {
        for s in ["+XYZ", "-IZX", "+III", "-YYY"] {
            assert_eq!(format!("{}", parse(s)), s);
        }
    }
}
