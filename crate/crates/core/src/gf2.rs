//! Bit-packed linear algebra over GF(2).
//!
//! Rows are stored as arrays of 64-bit words; elimination is word-parallel
//! XOR. The pivot rule is fixed (leftmost nonzero column, first available
//! row) so every operation is deterministic.

use std::fmt;

/// A fixed-length vector over GF(2), packed 64 bits to a word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of '0'/'1' characters.
    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(BitVector::from_bits(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) addition");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    /// Standard GF(2) inner product (parity of the AND).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) dot");
        let mut acc = 0u64;
        for (w, o) in self.words.iter().zip(&other.words) {
            acc ^= w & o;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first set bit, if any.
    pub fn first_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                let i = wi * 64 + w.trailing_zeros() as usize;
                if i < self.len {
                    return Some(i);
                }
            }
        }
        None
    }

    pub fn iter_set(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenates two vectors.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_set() {
            out.set(i, true);
        }
        for i in other.iter_set() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2), stored row-major as `BitVector`s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        BitMatrix { rows, cols }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// Matrix-vector product m·x, with x indexed by columns.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols);
        BitVector::from_bits(self.rows.iter().map(|r| r.dot(x)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_set() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Reduced row echelon form. Returns (echelon matrix, pivot columns).
    /// Zero rows are dropped from the result.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, pr);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (BitMatrix::from_rows(rows, self.cols), pivots)
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : m·x = 0}. Row count is cols − rank.
    pub fn kernel_basis(&self) -> BitMatrix {
        let (ech, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if ech.rows[i].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix::from_rows(basis, self.cols)
    }

    /// Basis of the space orthogonal (standard inner product) to every row.
    /// Over GF(2) with the standard form this coincides with the kernel.
    pub fn orthogonal_complement(&self) -> BitMatrix {
        self.kernel_basis()
    }

    /// True iff v is a GF(2) combination of the rows.
    pub fn in_span(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols, "length mismatch in span test");
        let (ech, pivots) = self.rref();
        let mut w = v.clone();
        for (i, &p) in pivots.iter().enumerate() {
            if w.get(p) {
                w.xor_assign(&ech.rows[i]);
            }
        }
        w.is_zero()
    }

    /// Solves m·x = rhs, returning one solution if consistent.
    pub fn solve(&self, rhs: &BitVector) -> Option<BitVector> {
        assert_eq!(rhs.len(), self.rows.len());
        // Eliminate on the augmented system.
        let mut rows = self.rows.clone();
        let mut b: Vec<bool> = (0..rhs.len()).map(|i| rhs.get(i)).collect();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, pr);
            b.swap(next, pr);
            let pivot_row = rows[next].clone();
            let pivot_b = b[next];
            for r in 0..rows.len() {
                if r != next && rows[r].get(col) {
                    rows[r].xor_assign(&pivot_row);
                    b[r] ^= pivot_b;
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        // Inconsistent if a zero row has rhs 1.
        for r in next..rows.len() {
            if b[r] && rows[r].is_zero() {
                return None;
            }
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if b[i] {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn mat(rows: &[&str]) -> BitMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        BitMatrix::from_rows(
            rows.iter().map(|r| BitVector::parse(r).unwrap()).collect(),
            cols,
        )
    }

    /// Brute-force span of the rows: every GF(2) combination.
    fn enumerate_span(m: &BitMatrix) -> Vec<BitVector> {
        let k = m.n_rows();
        assert!(k <= 20);
        let mut out = Vec::new();
        for mask in 0u32..(1 << k) {
            let mut v = BitVector::zeros(m.n_cols());
            for i in 0..k {
                if mask >> i & 1 == 1 {
                    v.xor_assign(m.row(i));
                }
            }
            out.push(v);
        }
        out.sort_by_key(|v| format!("{v:?}"));
        out.dedup();
        out
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn rank_identity() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn rank_dependent_rows() {
        // Oracle: the span of {110, 011, 101} has 4 elements = 2^2.
        let m = mat(&["110", "011", "101"]);
        assert_eq!(enumerate_span(&m).len(), 4);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_identity_is_trivial() {
        assert_eq!(BitMatrix::identity(3).kernel_basis().n_rows(), 0);
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let k = BitMatrix::zeros(2, 5).kernel_basis();
        assert_eq!(k.n_rows(), 5);
        assert_eq!(k.rank(), 5);
    }

    #[test]
    fn kernel_single_row() {
        // Oracle: brute force over all 16 vectors orthogonal to 1101.
        let m = mat(&["1101"]);
        let row = BitVector::parse("1101").unwrap();
        let mut expected = 0;
        for mask in 0u32..16 {
            let v = BitVector::from_bits((0..4).map(|i| mask >> i & 1 == 1));
            if !v.dot(&row) {
                expected += 1;
            }
        }
        assert_eq!(expected, 8); // 2^3
        let k = m.kernel_basis();
        assert_eq!(k.n_rows(), 3);
        for r in k.rows() {
            assert!(!r.dot(&row));
        }
    }

    #[test]
    fn orthogonal_complement_self_dual() {
        let m = mat(&["11"]);
        let c = m.orthogonal_complement();
        assert_eq!(c.n_rows(), 1);
        assert!(c.in_span(&BitVector::parse("11").unwrap()));
    }

    #[test]
    fn orthogonal_complement_of_111() {
        // Oracle: brute force over the 8 vectors of GF(2)^3.
        let m = mat(&["111"]);
        let c = m.orthogonal_complement();
        assert_eq!(c.n_rows(), 2);
        assert!(c.in_span(&BitVector::parse("110").unwrap()));
        assert!(c.in_span(&BitVector::parse("011").unwrap()));
        assert!(!c.in_span(&BitVector::parse("100").unwrap()));
    }

    #[test]
    fn orthogonal_complement_of_empty_span() {
        let m = BitMatrix::zeros(0, 4);
        assert_eq!(m.orthogonal_complement().rank(), 4);
    }

    #[test]
    fn in_span_examples() {
        let m = mat(&["100", "010"]);
        assert!(m.in_span(&BitVector::parse("000").unwrap()));
        assert!(m.in_span(&BitVector::parse("110").unwrap()));
        // Oracle: the 4 combinations of {110, 011} are 000, 110, 011, 101.
        let m2 = mat(&["110", "011"]);
        assert!(!m2.in_span(&BitVector::parse("111").unwrap()));
    }

    #[test]
    fn solve_finds_solution() {
        let m = mat(&["110", "011"]);
        let rhs = BitVector::parse("10").unwrap();
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.mul_vec(&x), rhs);
        // Inconsistent system.
        let m2 = mat(&["110", "110"]);
        assert!(m2.solve(&BitVector::parse("10").unwrap()).is_none());
    }

    fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> BitMatrix {
        BitMatrix::from_rows(
            (0..rows)
                .map(|_| BitVector::from_bits((0..cols).map(|_| rng.gen())))
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_nullity_up_to_64() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let r = rng.gen_range(0..=64);
            let c = rng.gen_range(1..=64);
            let m = random_matrix(&mut rng, r, c);
            let kernel = m.kernel_basis();
            assert_eq!(m.rank() + kernel.n_rows(), c);
            assert_eq!(kernel.rank(), kernel.n_rows());
            for row in kernel.rows() {
                assert!(m.mul_vec(row).is_zero());
            }
        }
    }

    #[test]
    fn double_complement_spans_original() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..30 {
            let r = rng.gen_range(0..=10);
            let c = rng.gen_range(1..=12);
            let m = random_matrix(&mut rng, r, c);
            let cc = m.orthogonal_complement().orthogonal_complement();
            assert_eq!(cc.rank(), m.rank());
            for row in m.rows() {
                assert!(cc.in_span(row));
            }
        }
    }

    #[test]
    fn transpose_rank_equals_rank() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let r = rng.gen_range(0..=16);
            let c = rng.gen_range(1..=16);
            let m = random_matrix(&mut rng, r, c);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    proptest! {
        #[test]
        fn xor_is_commutative(a in prop::collection::vec(any::<bool>(), 1..100),
                              b_seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(b_seed);
            let b: Vec<bool> = (0..a.len()).map(|_| rng.gen()).collect();
            let va = BitVector::from_bits(a.clone());
            let vb = BitVector::from_bits(b);
            let mut ab = va.clone();
            ab.xor_assign(&vb);
            let mut ba = vb.clone();
            ba.xor_assign(&va);
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn in_span_agrees_with_enumeration(seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let r = rng.gen_range(0..=6);
            let c = rng.gen_range(1..=8);
            let m = random_matrix(&mut rng, r, c);
            let span = enumerate_span(&m);
            let v = BitVector::from_bits((0..m.n_cols()).map(|_| rng.gen()));
            prop_assert_eq!(m.in_span(&v), span.contains(&v));
        }
    }
}
