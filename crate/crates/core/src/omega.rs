//! Exact scalars of the form (a + bω + cω² + dω³)·2^(−k/2) with ω = e^{iπ/4}.
//!
//! Every matrix element that shows up in the projector engine (entries of
//! the elementary single-qubit byproduct unitaries, the ⟨+| and |j,±⟩
//! vectors, and the 1/√2 projection factors) lives in this ring, so engine
//! results are exact and zero tests never need a tolerance.

use num_complex::Complex64;
use num_rational::Rational64;

/// ω satisfies ω⁴ = −1; note √2 = ω − ω³.
#[derive(Clone, Copy, Debug)]
pub struct DyadicOmega {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    /// value = (a + bω + cω² + dω³) · 2^(−k/2)
    pub k: i64,
}

impl DyadicOmega {
    pub const ZERO: DyadicOmega = DyadicOmega { a: 0, b: 0, c: 0, d: 0, k: 0 };
    pub const ONE: DyadicOmega = DyadicOmega { a: 1, b: 0, c: 0, d: 0, k: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64, k: i64) -> Self {
        DyadicOmega { a, b, c, d, k }.normalized()
    }

    pub fn integer(n: i64) -> Self {
        DyadicOmega::new(n, 0, 0, 0, 0)
    }

    /// i = ω².
    pub fn i() -> Self {
        DyadicOmega::new(0, 0, 1, 0, 0)
    }

    /// ω^p for any integer power.
    pub fn omega_pow(p: i64) -> Self {
        let p = p.rem_euclid(8);
        let (idx, sign) = if p < 4 { (p, 1) } else { (p - 4, -1) };
        let mut coeffs = [0i64; 4];
        coeffs[idx as usize] = sign;
        DyadicOmega::new(coeffs[0], coeffs[1], coeffs[2], coeffs[3], 0)
    }

    /// 2^(−1/2).
    pub fn inv_sqrt2() -> Self {
        DyadicOmega::new(1, 0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0 && self.d == 0
    }

    fn all_even(&self) -> bool {
        self.a % 2 == 0 && self.b % 2 == 0 && self.c % 2 == 0 && self.d % 2 == 0
    }

    /// Keeps coefficients small; the representation is not globally unique
    /// (equality goes through `eq` below) but is deterministic.
    fn normalized(mut self) -> Self {
        if self.is_zero() {
            self.k = 0;
            return self;
        }
        while self.all_even() && self.k >= 1 {
            self.a /= 2;
            self.b /= 2;
            self.c /= 2;
            self.d /= 2;
            self.k -= 2;
        }
        while self.k < 0 {
            if self.k == -1 {
                self = self.mul_sqrt2_numerator();
                self.k += 1;
            } else {
                self.a *= 2;
                self.b *= 2;
                self.c *= 2;
                self.d *= 2;
                self.k += 2;
            }
        }
        self
    }

    /// Multiplies the numerator by √2 = ω − ω³ (does not touch k).
    fn mul_sqrt2_numerator(self) -> Self {
        // (a+bω+cω²+dω³)(ω−ω³) with ω⁴=−1:
        //   ·ω  : aω + bω² + cω³ − d
        //   ·−ω³: −aω³ + b + cω − dω²... (bω⁴=−b? recompute below)
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        // x·ω: shifts coefficients up with wraparound sign.
        let m1 = (-d, a, b, c);
        // x·ω³ = x·ω·ω·ω
        let m2 = (-b, -c, -d, a);
        DyadicOmega {
            a: m1.0 - m2.0,
            b: m1.1 - m2.1,
            c: m1.2 - m2.2,
            d: m1.3 - m2.3,
            k: self.k,
        }
    }

    /// Scales the representation so that it uses exponent `k_target >= k`.
    fn at_k(self, k_target: i64) -> Self {
        assert!(k_target >= self.k);
        let mut v = self;
        while v.k < k_target {
            if k_target - v.k >= 2 {
                v.a *= 2;
                v.b *= 2;
                v.c *= 2;
                v.d *= 2;
                v.k += 2;
            } else {
                v = v.mul_sqrt2_numerator();
                v.k += 1;
            }
        }
        v
    }

    pub fn mul(&self, other: &DyadicOmega) -> DyadicOmega {
        let mut coeffs = [0i64; 4];
        let x = [self.a, self.b, self.c, self.d];
        let y = [other.a, other.b, other.c, other.d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let p = i + j;
                if p < 4 {
                    coeffs[p] += xi * yj;
                } else {
                    coeffs[p - 4] -= xi * yj;
                }
            }
        }
        DyadicOmega::new(coeffs[0], coeffs[1], coeffs[2], coeffs[3], self.k + other.k)
    }

    pub fn add(&self, other: &DyadicOmega) -> DyadicOmega {
        let k = self.k.max(other.k);
        let x = self.at_k(k);
        let y = other.at_k(k);
        DyadicOmega::new(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d, k)
    }

    pub fn neg(&self) -> DyadicOmega {
        DyadicOmega::new(-self.a, -self.b, -self.c, -self.d, self.k)
    }

    pub fn conj(&self) -> DyadicOmega {
        // conj(ω) = ω⁻¹ = −ω³, conj(ω²) = −ω², conj(ω³) = −ω.
        DyadicOmega::new(self.a, -self.d, -self.c, -self.b, self.k)
    }

    /// |value|² as (e, f, k) meaning (e + f·√2)·2^(−k/2); always real.
    fn abs_sq_parts(&self) -> (i64, i64, i64) {
        let m = self.mul(&self.conj());
        // m is real: m = a' + b'ω + c'ω² + d'ω³ with c' = 0 and d' = −b',
        // so m = a' + b'√2.
        debug_assert_eq!(m.c, 0);
        debug_assert_eq!(m.d, -m.b);
        (m.a, m.b, m.k)
    }

    /// log₂ of the magnitude, exact, when the magnitude is a power of √2.
    /// Returns None for zero or for values off the √2 ladder.
    pub fn magnitude_log2(&self) -> Option<Rational64> {
        if self.is_zero() {
            return None;
        }
        let (e, f, k) = self.abs_sq_parts();
        // |v|² = (e + f√2)·2^(−k/2)
        if f == 0 && e > 0 && e.count_ones() == 1 {
            let t = e.trailing_zeros() as i64;
            // |v|² = 2^(t − k/2)
            return Some(Rational64::new(2 * t - k, 4));
        }
        if e == 0 && f > 0 && f.count_ones() == 1 {
            let t = f.trailing_zeros() as i64;
            // |v|² = 2^(t + 1/2 − k/2)
            return Some(Rational64::new(2 * t + 1 - k, 4));
        }
        None
    }

    pub fn to_complex(&self) -> Complex64 {
        let omega = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let num = Complex64::new(self.a as f64, 0.0)
            + omega * self.b as f64
            + omega * omega * self.c as f64
            + omega * omega * omega * self.d as f64;
        num * 2f64.powf(-(self.k as f64) / 2.0)
    }

    /// Normalized 5-tuple (a, b, c, d, k) for serialization.
    pub fn as_tuple(&self) -> (i64, i64, i64, i64, i64) {
        let v = self.normalized();
        (v.a, v.b, v.c, v.d, v.k)
    }
}

impl PartialEq for DyadicOmega {
    fn eq(&self, other: &Self) -> bool {
        let k = self.k.max(other.k);
        let x = self.at_k(k);
        let y = other.at_k(k);
        x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d
    }
}

impl Eq for DyadicOmega {}

/// A 2×2 matrix over the exact ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Matrix2(pub [[DyadicOmega; 2]; 2]);

impl Matrix2 {
    pub fn identity() -> Self {
        Matrix2([
            [DyadicOmega::ONE, DyadicOmega::ZERO],
            [DyadicOmega::ZERO, DyadicOmega::ONE],
        ])
    }

    pub fn mul(&self, other: &Matrix2) -> Matrix2 {
        let mut out = [[DyadicOmega::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[i][0]
                    .mul(&other.0[0][j])
                    .add(&self.0[i][1].mul(&other.0[1][j]));
            }
        }
        Matrix2(out)
    }

    pub fn apply(&self, v: &[DyadicOmega; 2]) -> [DyadicOmega; 2] {
        [
            self.0[0][0].mul(&v[0]).add(&self.0[0][1].mul(&v[1])),
            self.0[1][0].mul(&v[0]).add(&self.0[1][1].mul(&v[1])),
        ]
    }

    pub fn scale(&self, s: &DyadicOmega) -> Matrix2 {
        let mut out = self.0;
        for row in out.iter_mut() {
            for cell in row.iter_mut() {
                *cell = cell.mul(s);
            }
        }
        Matrix2(out)
    }

    pub fn to_complex(&self) -> [[Complex64; 2]; 2] {
        [
            [self.0[0][0].to_complex(), self.0[0][1].to_complex()],
            [self.0[1][0].to_complex(), self.0[1][1].to_complex()],
        ]
    }
}
