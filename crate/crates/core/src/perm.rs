//! Permutations of replicas, party-indexed permutation tuples with gauge
//! fixing, multi-entropy tuples, and the topology (Euler characteristic,
//! genus) of tripartite contractions.

use crate::party::party_name;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("images {0:?} are not a bijection")]
    NotBijection(Vec<usize>),
    #[error("bad cycle notation: {0}")]
    BadCycles(String),
    #[error("permutation sizes differ across parties")]
    SizeMismatch,
    #[error("tuple has no parties")]
    Empty,
    #[error("expected exactly 3 parties, got {0}")]
    NotTripartite(usize),
    #[error("component has odd Euler characteristic {0} (non-orientable gluing)")]
    OddEuler(i64),
}

/// Permutation of {0..n−1} stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijection(images));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            images: (0..self.n()).map(|i| self.images[other.images[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    /// Cycle decomposition including fixed points, each cycle starting at
    /// its smallest element, cycles ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    pub fn n_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Parses "(0 1 2)(3)" into a permutation on {0..n−1}; elements not
    /// mentioned are fixed points.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Perm, PermError> {
        let s = s.trim();
        let mut images: Vec<usize> = (0..n).collect();
        let mut mentioned = vec![false; n];
        if s != "()" && !s.is_empty() {
            let body = s;
            if !body.starts_with('(') || !body.ends_with(')') {
                return Err(PermError::BadCycles(s.to_string()));
            }
            for chunk in body[1..body.len() - 1].split(")(") {
                let elems: Result<Vec<usize>, _> = chunk
                    .split(|c: char| c == ' ' || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>())
                    .collect();
                let elems = elems.map_err(|_| PermError::BadCycles(s.to_string()))?;
                if elems.is_empty() {
                    return Err(PermError::BadCycles(s.to_string()));
                }
                for (pos, &e) in elems.iter().enumerate() {
                    if e >= n || mentioned[e] {
                        return Err(PermError::BadCycles(s.to_string()));
                    }
                    mentioned[e] = true;
                    images[e] = elems[(pos + 1) % elems.len()];
                }
            }
        }
        Perm::from_images(images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, e) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")?;
        }
        if self.n() == 0 {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// One permutation per party, parties in sorted-name order. Constructed
/// tuples are gauge-fixed: every σ is right-composed with the inverse of
/// the last party's σ, so the last party carries the identity. The
/// relabeling redundancy makes this harmless for any invariant value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationTuple {
    entries: Vec<(String, Perm)>,
}

impl PermutationTuple {
    pub fn new(mut entries: Vec<(String, Perm)>) -> Result<Self, PermError> {
        if entries.is_empty() {
            return Err(PermError::Empty);
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let n = entries[0].1.n();
        if entries.iter().any(|(_, p)| p.n() != n) {
            return Err(PermError::SizeMismatch);
        }
        let last_inv = entries.last().unwrap().1.inverse();
        for (_, p) in entries.iter_mut() {
            *p = p.compose(&last_inv);
        }
        Ok(PermutationTuple { entries })
    }

    /// No gauge fixing; used to exercise the relabeling redundancy in tests.
    pub fn new_ungauged(mut entries: Vec<(String, Perm)>) -> Result<Self, PermError> {
        if entries.is_empty() {
            return Err(PermError::Empty);
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let n = entries[0].1.n();
        if entries.iter().any(|(_, p)| p.n() != n) {
            return Err(PermError::SizeMismatch);
        }
        Ok(PermutationTuple { entries })
    }

    pub fn identity(names: &[String], n_rep: usize) -> Self {
        PermutationTuple::new(
            names
                .iter()
                .map(|s| (s.clone(), Perm::identity(n_rep)))
                .collect(),
        )
        .expect("identity tuple is always valid")
    }

    pub fn q(&self) -> usize {
        self.entries.len()
    }

    pub fn n_rep(&self) -> usize {
        self.entries[0].1.n()
    }

    pub fn party_names(&self) -> Vec<&str> {
        self.entries.iter().map(|(s, _)| s.as_str()).collect()
    }

    pub fn has_party(&self, name: &str) -> bool {
        self.entries.iter().any(|(s, _)| s == name)
    }

    pub fn perm_for(&self, name: &str) -> Option<&Perm> {
        self.entries
            .iter()
            .find(|(s, _)| s == name)
            .map(|(_, p)| p)
    }

    pub fn perms(&self) -> impl Iterator<Item = (&str, &Perm)> {
        self.entries.iter().map(|(s, p)| (s.as_str(), p))
    }
}

/// Rényi multi-entropy tuple: q parties named A, B, ..., replicas indexed
/// by Z_n^{q−1} (coordinate j has stride n^j); party j < q−1 increments
/// coordinate j mod n, the last party is the identity.
pub fn multi_entropy_tuple(n: usize, q: usize) -> PermutationTuple {
    assert!(n >= 1 && q >= 2);
    let n_rep = n.pow((q - 1) as u32);
    let mut entries = Vec::new();
    for a in 0..q {
        let name = party_name(a);
        let perm = if a + 1 == q {
            Perm::identity(n_rep)
        } else {
            let stride = n.pow(a as u32);
            let images = (0..n_rep)
                .map(|r| {
                    let coord = r / stride % n;
                    r - coord * stride + (coord + 1) % n * stride
                })
                .collect();
            Perm::from_images(images).unwrap()
        };
        entries.push((name, perm));
    }
    PermutationTuple::new(entries).unwrap()
}

/// The simplest tripartite tuple with non-trivial genus:
/// (id, (0 1 2), (0 2 1)) on three replicas.
pub fn kempe_tuple() -> PermutationTuple {
    PermutationTuple::new(vec![
        ("A".to_string(), Perm::identity(3)),
        ("B".to_string(), Perm::from_images(vec![1, 2, 0]).unwrap()),
        ("C".to_string(), Perm::from_images(vec![2, 0, 1]).unwrap()),
    ])
    .unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    /// Total vertices N = 2·n_rep (kets plus bras).
    pub n_vertices: usize,
    /// Total faces: Σ over party pairs of cycles(σ_X σ_Y^{-1}).
    pub f_faces: usize,
    /// N − 3N/2 + F over the whole contraction.
    pub chi: i64,
    pub components: usize,
    /// Σ over connected components of (2 − χ_c)/2.
    pub genus: i64,
}

/// Topology of a tripartite contraction surface: vertices are ket/bra
/// replicas, edges join ket r to bra σ_X(r) for each party X, faces are
/// the cycles of the pairwise products. χ and genus are accumulated per
/// connected component (disjoint spheres don't masquerade as negative
/// genus).
pub fn tripartite_topology(t: &PermutationTuple) -> Result<Topology, PermError> {
    if t.q() != 3 {
        return Err(PermError::NotTripartite(t.q()));
    }
    let n_rep = t.n_rep();
    let sigmas: Vec<&Perm> = t.perms().map(|(_, p)| p).collect();
    // Union-find over 2·n_rep vertices: ket r = r, bra r = n_rep + r.
    let mut parent: Vec<usize> = (0..2 * n_rep).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for s in &sigmas {
        for r in 0..n_rep {
            let a = find(&mut parent, r);
            let b = find(&mut parent, n_rep + s.apply(r));
            parent[a] = b;
        }
    }
    // Per-component tallies of V, E and F.
    let mut comp_v = std::collections::HashMap::new();
    let mut comp_e = std::collections::HashMap::new();
    let mut comp_f = std::collections::HashMap::new();
    for v in 0..2 * n_rep {
        let root = find(&mut parent, v);
        *comp_v.entry(root).or_insert(0i64) += 1;
    }
    for s in &sigmas {
        for r in 0..n_rep {
            let root = find(&mut parent, r);
            debug_assert_eq!(root, find(&mut parent, n_rep + s.apply(r)));
            *comp_e.entry(root).or_insert(0i64) += 1;
        }
    }
    let pairs = [(0, 1), (1, 2), (2, 0)];
    let mut f_total = 0usize;
    for (x, y) in pairs {
        let prod = sigmas[x].compose(&sigmas[y].inverse());
        for cycle in prod.cycles() {
            f_total += 1;
            let root = find(&mut parent, cycle[0]);
            *comp_f.entry(root).or_insert(0i64) += 1;
        }
    }
    let mut chi_total = 0i64;
    let mut genus = 0i64;
    let roots: Vec<usize> = comp_v.keys().copied().collect();
    for root in &roots {
        let v = comp_v[root];
        let e = *comp_e.get(root).unwrap_or(&0);
        let f = *comp_f.get(root).unwrap_or(&0);
        let chi = v - e + f;
        chi_total += chi;
        if (2 - chi) % 2 != 0 {
            return Err(PermError::OddEuler(chi));
        }
        genus += (2 - chi) / 2;
    }
    Ok(Topology {
        n_vertices: 2 * n_rep,
        f_faces: f_total,
        chi: chi_total,
        components: roots.len(),
        genus,
    })
}
