//! Finite Coxeter groups: generation via the geometric reflection
//! representation, Cayley graphs with per-generator matchings, colored
//! subgraph counts, and conversion to replica permutation tuples.

use crate::party::party_name;
use crate::perm::{Perm, PermutationTuple};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("bad Coxeter matrix: {0}")]
    BadMatrix(String),
    #[error("Coxeter spec is not finite-type (Gram matrix not positive definite)")]
    NotFinite,
    #[error("element closure exceeded the bound of {0} (non-finite spec?)")]
    BoundExceeded(usize),
}

/// Coxeter presentation: q involutive generators with (r_i r_j)^{m_ij} = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSpec {
    m: Vec<Vec<u32>>,
}

impl CoxeterSpec {
    pub fn new(m: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let q = m.len();
        if q == 0 {
            return Err(CoxeterError::BadMatrix("empty matrix".into()));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != q {
                return Err(CoxeterError::BadMatrix("matrix is not square".into()));
            }
            if row[i] != 1 {
                return Err(CoxeterError::BadMatrix(format!("m[{i}][{i}] must be 1")));
            }
            for j in 0..q {
                if i != j && row[j] < 2 {
                    return Err(CoxeterError::BadMatrix(format!(
                        "m[{i}][{j}] must be at least 2"
                    )));
                }
                if row[j] != m[j][i] {
                    return Err(CoxeterError::BadMatrix("matrix is not symmetric".into()));
                }
            }
        }
        Ok(CoxeterSpec { m })
    }

    /// Builds from the upper-triangle entries (row-major): for q = 3 these
    /// are m_AB, m_AC, m_BC.
    pub fn from_upper_triangle(entries: &[u32]) -> Result<Self, CoxeterError> {
        // q(q−1)/2 = len
        let mut q = 1usize;
        while q * (q - 1) / 2 < entries.len() {
            q += 1;
        }
        if q * (q - 1) / 2 != entries.len() {
            return Err(CoxeterError::BadMatrix(format!(
                "{} entries do not form an upper triangle",
                entries.len()
            )));
        }
        let mut m = vec![vec![2u32; q]; q];
        let mut it = entries.iter();
        for i in 0..q {
            m[i][i] = 1;
            for j in i + 1..q {
                let v = *it.next().unwrap();
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        CoxeterSpec::new(m)
    }

    /// Convenience for tripartite specs (m_AB, m_BC, m_CA).
    pub fn tripartite(m_ab: u32, m_bc: u32, m_ca: u32) -> Result<Self, CoxeterError> {
        CoxeterSpec::from_upper_triangle(&[m_ab, m_ca, m_bc])
    }

    pub fn q(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }

    /// Gram matrix of the geometric representation: B_ij = −cos(π/m_ij).
    fn gram(&self) -> Vec<Vec<f64>> {
        let q = self.q();
        (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| -(std::f64::consts::PI / self.m[i][j] as f64).cos())
                    .collect()
            })
            .collect()
    }

    /// Finite iff the Gram matrix is positive definite (Cholesky pivots
    /// all positive).
    pub fn is_finite(&self) -> bool {
        let mut a = self.gram();
        let q = self.q();
        for i in 0..q {
            let mut pivot = a[i][i];
            for k in 0..i {
                pivot -= a[i][k] * a[i][k];
            }
            if pivot < 1e-10 {
                return false;
            }
            let root = pivot.sqrt();
            a[i][i] = root;
            for j in i + 1..q {
                let mut v = a[j][i];
                for k in 0..i {
                    v -= a[j][k] * a[i][k];
                }
                a[j][i] = v / root;
            }
        }
        true
    }
}

/// Cayley graph of a finite Coxeter group: elements in BFS order (by word
/// length, ties by generator index), a perfect matching per generator, and
/// the word-length parity of each element.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    /// edges[i][e] = index of r_i · g_e; an involution without fixed points.
    edges: Vec<Vec<usize>>,
    parity: Vec<u8>,
}

impl CayleyGraph {
    pub fn order(&self) -> usize {
        self.parity.len()
    }

    pub fn q(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbor(&self, generator: usize, element: usize) -> usize {
        self.edges[generator][element]
    }

    pub fn parity(&self, element: usize) -> u8 {
        self.parity[element]
    }
}

const DEFAULT_BOUND: usize = 1 << 16;

/// Generates the full element set by BFS closure in the reflection
/// representation r_i(e_j) = e_j − 2 B_ij e_i, deduplicating matrices by
/// rounding entries to 1e-9. The classification orders anchor correctness
/// in tests; a bound guards against non-finite input.
pub fn generate_coxeter(spec: &CoxeterSpec) -> Result<CayleyGraph, CoxeterError> {
    generate_coxeter_bounded(spec, DEFAULT_BOUND)
}

pub fn generate_coxeter_bounded(
    spec: &CoxeterSpec,
    bound: usize,
) -> Result<CayleyGraph, CoxeterError> {
    if !spec.is_finite() {
        return Err(CoxeterError::NotFinite);
    }
    let q = spec.q();
    let b = spec.gram();
    // Generator matrices acting on column vectors: (R_i)_{kj} entry of
    // r_i(e_j) along e_k.
    let mut gens = Vec::with_capacity(q);
    for i in 0..q {
        let mut r = vec![vec![0.0f64; q]; q];
        for j in 0..q {
            r[j][j] = 1.0;
            r[i][j] -= 2.0 * b[i][j];
        }
        gens.push(r);
    }
    let mat_mul = |x: &Vec<Vec<f64>>, y: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; q]; q];
        for r in 0..q {
            for k in 0..q {
                let v = x[r][k];
                if v != 0.0 {
                    for c in 0..q {
                        out[r][c] += v * y[k][c];
                    }
                }
            }
        }
        out
    };
    let key_of = |m: &Vec<Vec<f64>>| -> Vec<i64> {
        m.iter()
            .flatten()
            .map(|&x| (x / 1e-9).round() as i64)
            .collect()
    };
    let identity: Vec<Vec<f64>> = (0..q)
        .map(|r| (0..q).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut elements = vec![identity.clone()];
    let mut parity = vec![0u8];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(key_of(&identity), 0);
    let mut edges = vec![vec![usize::MAX; 1]; q];
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        for (i, r) in gens.iter().enumerate() {
            let product = mat_mul(r, &current);
            let key = key_of(&product);
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    let t = elements.len();
                    if t >= bound {
                        return Err(CoxeterError::BoundExceeded(bound));
                    }
                    elements.push(product);
                    parity.push(1 - parity[head]);
                    index.insert(key, t);
                    for col in edges.iter_mut() {
                        col.push(usize::MAX);
                    }
                    t
                }
            };
            edges[i][head] = target;
        }
        head += 1;
    }
    for (i, col) in edges.iter().enumerate() {
        for (e, &t) in col.iter().enumerate() {
            debug_assert_ne!(t, e, "generator {i} fixes element {e}");
            debug_assert_eq!(col[t], e, "generator {i} edge set is not an involution");
            debug_assert_ne!(parity[e], parity[t]);
        }
    }
    Ok(CayleyGraph { edges, parity })
}

/// Counts of S-colored connected components for every nonempty proper
/// subset S of generators, plus the total replica count |K|/2.
#[derive(Clone, Debug)]
pub struct SubgraphCounts {
    /// Indexed by generator-subset bitmask (nonempty proper subsets are
    /// meaningful; full mask and 0 are filled for convenience).
    n_s: Vec<usize>,
    pub n_rep_total: usize,
}

impl SubgraphCounts {
    pub fn get(&self, mask: u16) -> usize {
        self.n_s[mask as usize]
    }
}

pub fn subgraph_counts(cg: &CayleyGraph) -> SubgraphCounts {
    let q = cg.q();
    let order = cg.order();
    let mut n_s = Vec::with_capacity(1 << q);
    for mask in 0..1u16 << q {
        let mut parent: Vec<usize> = (0..order).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..q {
            if mask >> i & 1 == 0 {
                continue;
            }
            for e in 0..order {
                let a = find(&mut parent, e);
                let b = find(&mut parent, cg.neighbor(i, e));
                parent[a] = b;
            }
        }
        let mut count = 0;
        for e in 0..order {
            if find(&mut parent, e) == e {
                count += 1;
            }
        }
        n_s.push(count);
    }
    SubgraphCounts {
        n_s,
        n_rep_total: order / 2,
    }
}

/// Order of the parabolic subgroup generated by {r_i : i ∈ mask}:
/// |K| / n_S by the orbit-coset correspondence.
pub fn parabolic_order(cg: &CayleyGraph, counts: &SubgraphCounts, mask: u16) -> usize {
    cg.order() / counts.get(mask)
}

/// Replica tuple of the Cayley-graph contraction: kets are the even
/// elements, bras the odd elements (each numbered in BFS order); party i's
/// permutation sends the ket slot of g to the bra slot of r_i·g. The
/// constructor gauge-fixes the last party to the identity.
pub fn cayley_to_tuple(cg: &CayleyGraph) -> PermutationTuple {
    let mut ket_slot = vec![usize::MAX; cg.order()];
    let mut bra_slot = vec![usize::MAX; cg.order()];
    let mut kets = 0;
    let mut bras = 0;
    for e in 0..cg.order() {
        if cg.parity(e) == 0 {
            ket_slot[e] = kets;
            kets += 1;
        } else {
            bra_slot[e] = bras;
            bras += 1;
        }
    }
    assert_eq!(kets, bras);
    let mut entries = Vec::new();
    for i in 0..cg.q() {
        let mut images = vec![0usize; kets];
        for e in 0..cg.order() {
            if cg.parity(e) == 0 {
                images[ket_slot[e]] = bra_slot[cg.neighbor(i, e)];
            }
        }
        entries.push((party_name(i), Perm::from_images(images).unwrap()));
    }
    PermutationTuple::new(entries).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::tripartite_topology;

    fn dihedral(n: u32) -> CoxeterSpec {
        CoxeterSpec::from_upper_triangle(&[n]).unwrap()
    }

    #[test]
    fn finiteness_classification() {
        assert!(dihedral(7).is_finite());
        assert!(CoxeterSpec::tripartite(2, 3, 3).unwrap().is_finite());
        assert!(CoxeterSpec::tripartite(2, 3, 4).unwrap().is_finite());
        assert!(CoxeterSpec::tripartite(2, 3, 5).unwrap().is_finite());
        assert!(CoxeterSpec::tripartite(2, 2, 9).unwrap().is_finite());
        // (2,3,6) is affine, (3,3,3) is affine: infinite.
        assert!(!CoxeterSpec::tripartite(2, 3, 6).unwrap().is_finite());
        assert!(!CoxeterSpec::tripartite(3, 3, 3).unwrap().is_finite());
        assert_eq!(
            generate_coxeter(&CoxeterSpec::tripartite(3, 3, 3).unwrap()),
            Err(CoxeterError::NotFinite)
        );
    }

    #[test]
    fn group_orders_match_classification() {
        for n in 2..=8 {
            assert_eq!(generate_coxeter(&dihedral(n)).unwrap().order(), 2 * n as usize);
        }
        let cases = [((2, 3, 3), 24), ((2, 3, 4), 48), ((2, 3, 5), 120)];
        for ((a, b, c), order) in cases {
            let cg = generate_coxeter(&CoxeterSpec::tripartite(a, b, c).unwrap()).unwrap();
            assert_eq!(cg.order(), order, "({a},{b},{c})");
        }
        // (2,2,n) = I₂(n) × A₁: order 4n.
        for n in 2..=6 {
            let cg = generate_coxeter(&CoxeterSpec::tripartite(2, n, 2).unwrap()).unwrap();
            assert_eq!(cg.order(), 4 * n as usize);
        }
    }

    #[test]
    fn bound_guard_fires() {
        let spec = CoxeterSpec::tripartite(2, 3, 5).unwrap();
        assert_eq!(
            generate_coxeter_bounded(&spec, 100),
            Err(CoxeterError::BoundExceeded(100))
        );
    }

    impl PartialEq for CayleyGraph {
        fn eq(&self, other: &Self) -> bool {
            self.edges == other.edges && self.parity == other.parity
        }
    }

    #[test]
    fn subgraph_counts_examples() {
        // A₃-type spec: pairwise counts 6, 4, 4; singleton counts 12.
        let cg = generate_coxeter(&CoxeterSpec::tripartite(2, 3, 3).unwrap()).unwrap();
        let counts = subgraph_counts(&cg);
        assert_eq!(counts.n_rep_total, 12);
        assert_eq!(counts.get(0b011), 6); // generators A,B with m_AB = 2
        assert_eq!(counts.get(0b110), 4); // B,C with m_BC = 3
        assert_eq!(counts.get(0b101), 4); // A,C with m_CA = 3
        assert_eq!(counts.get(0b001), 12);
        assert_eq!(counts.get(0b010), 12);
        assert_eq!(counts.get(0b100), 12);

        // Three disconnected nodes (all m = 2): Klein-type cube.
        let cg = generate_coxeter(&CoxeterSpec::tripartite(2, 2, 2).unwrap()).unwrap();
        let counts = subgraph_counts(&cg);
        assert_eq!(cg.order(), 8);
        assert_eq!(counts.get(0b011), 2);
        assert_eq!(counts.get(0b110), 2);
        assert_eq!(counts.get(0b101), 2);
        assert_eq!(counts.get(0b001), 4);

        // Single color on I₂(m): m matchings of the 2m-cycle.
        for m in 2..=6u32 {
            let cg = generate_coxeter(&dihedral(m)).unwrap();
            let counts = subgraph_counts(&cg);
            assert_eq!(counts.get(0b01), m as usize);
            assert_eq!(counts.get(0b10), m as usize);
        }
    }

    #[test]
    fn parabolic_orders_divide_group() {
        for spec in [
            CoxeterSpec::tripartite(2, 3, 3).unwrap(),
            CoxeterSpec::tripartite(2, 3, 4).unwrap(),
            CoxeterSpec::tripartite(2, 4, 2).unwrap(),
        ] {
            let cg = generate_coxeter(&spec).unwrap();
            let counts = subgraph_counts(&cg);
            for mask in 1..(1u16 << spec.q()) - 1 {
                assert_eq!(cg.order() % counts.get(mask), 0);
                // Pair subsets generate dihedral parabolics of order 2m.
                if (mask as u32).count_ones() == 2 {
                    let (i, j) = {
                        let i = mask.trailing_zeros() as usize;
                        let j = (15 - (mask as u16).leading_zeros()) as usize;
                        (i, j)
                    };
                    assert_eq!(
                        parabolic_order(&cg, &counts, mask),
                        2 * spec.m(i, j) as usize
                    );
                }
                if (mask as u32).count_ones() == 1 {
                    assert_eq!(parabolic_order(&cg, &counts, mask), 2);
                }
            }
        }
    }

    #[test]
    fn cayley_regularity() {
        let cg = generate_coxeter(&CoxeterSpec::tripartite(2, 3, 4).unwrap()).unwrap();
        // Every element has exactly q incident matching edges (one per
        // color), i.e. the union of matchings covers each vertex q times.
        for e in 0..cg.order() {
            for i in 0..cg.q() {
                assert_ne!(cg.neighbor(i, e), e);
                assert_eq!(cg.neighbor(i, cg.neighbor(i, e)), e);
            }
        }
    }

    #[test]
    fn cayley_to_tuple_consistency() {
        // Klein four-group (I₂(2)): the two permutations form the n=2
        // Rényi square.
        let cg = generate_coxeter(&dihedral(2)).unwrap();
        let t = cayley_to_tuple(&cg);
        assert_eq!(t.n_rep(), 2);
        assert_eq!(t.q(), 2);
        assert!(t.perm_for("B").unwrap().is_identity());
        assert_eq!(t.perm_for("A").unwrap().cycles().len(), 1); // a transposition

        // A₃-type: pairwise cycle counts equal the subgraph counts.
        let cg = generate_coxeter(&CoxeterSpec::tripartite(2, 3, 3).unwrap()).unwrap();
        let t = cayley_to_tuple(&cg);
        assert_eq!(t.n_rep(), 12);
        let counts = subgraph_counts(&cg);
        let names = ["A", "B", "C"];
        let pair_masks = [(0, 1, 0b011u16), (1, 2, 0b110), (2, 0, 0b101)];
        for (x, y, mask) in pair_masks {
            let prod = t
                .perm_for(names[x])
                .unwrap()
                .compose(&t.perm_for(names[y]).unwrap().inverse());
            assert_eq!(prod.cycles().len(), counts.get(mask), "pair {x}{y}");
        }
    }

    #[test]
    fn i2m_times_a1_is_genus_zero() {
        for m in 2..=8u32 {
            let spec = CoxeterSpec::tripartite(2, m, 2).unwrap();
            let cg = generate_coxeter(&spec).unwrap();
            let t = cayley_to_tuple(&cg);
            let top = tripartite_topology(&t).unwrap();
            assert_eq!(top.genus, 0, "(2,2,{m})");
        }
    }
}
