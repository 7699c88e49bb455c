//! Text file format for invariant specifications. A spec file declares
//! which multi-invariant to compute: an explicit permutation tuple, a
//! reflection-group (Coxeter) diagram, or a Rényi multi-entropy choice of
//! (n, q). Lines starting with '#' and blank lines are ignored.

use crate::coxeter::{generate_coxeter, cayley_to_tuple, CoxeterError, CoxeterSpec};
use crate::perm::{multi_entropy_tuple, Perm, PermError, PermutationTuple};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("line {0}: expected 'key: value', got '{1}'")]
    BadLine(usize, String),
    #[error("missing 'type:' header")]
    MissingType,
    #[error("unknown invariant type '{0}'")]
    UnknownType(String),
    #[error("line {0}: {1}")]
    BadField(usize, String),
    #[error("a permutations spec needs at least one party line")]
    NoParties,
    #[error("upper triangle has {0} entries, which is not q(q-1)/2 for any q >= 2")]
    BadTriangle(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A parsed invariant specification.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantSpec {
    /// An explicit gauge-fixed permutation tuple.
    Permutations(PermutationTuple),
    /// A finite reflection group given by its Coxeter matrix; the tuple is
    /// read off the group's Cayley graph.
    Coxeter(CoxeterSpec),
    /// The (n, q) Rényi multi-entropy replica tuple.
    RenyiMultientropy { n: usize, q: usize },
}

/// Key/value lines with comments and blanks stripped, with 1-based line
/// numbers preserved for error messages.
fn key_value_lines(text: &str) -> Result<Vec<(usize, &str, &str)>, InvariantError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| InvariantError::BadLine(i + 1, line.to_string()))?;
        out.push((i + 1, key.trim(), value.trim()));
    }
    Ok(out)
}

fn parse_usize(lineno: usize, key: &str, value: &str) -> Result<usize, InvariantError> {
    value
        .parse()
        .map_err(|_| InvariantError::BadField(lineno, format!("{key} must be an integer, got '{value}'")))
}

impl InvariantSpec {
    pub fn parse_text(text: &str) -> Result<Self, InvariantError> {
        let lines = key_value_lines(text)?;
        let (&(_, key, type_name), rest) = lines.split_first().ok_or(InvariantError::MissingType)?;
        if key != "type" {
            return Err(InvariantError::MissingType);
        }
        match type_name {
            "permutations" => {
                // Two passes: the replica count is the largest index
                // mentioned in any cycle, plus one.
                let mut n_rep = 1;
                for &(lineno, _, cycles) in rest {
                    for token in cycles.split(|c: char| !c.is_ascii_digit()) {
                        if token.is_empty() {
                            continue;
                        }
                        let idx: usize = token.parse().map_err(|_| {
                            InvariantError::BadField(lineno, format!("bad index '{token}'"))
                        })?;
                        n_rep = n_rep.max(idx + 1);
                    }
                }
                let mut entries = Vec::new();
                for &(lineno, name, cycles) in rest {
                    let perm = Perm::parse_cycles(cycles, n_rep)
                        .map_err(|e| InvariantError::BadField(lineno, e.to_string()))?;
                    entries.push((name.to_string(), perm));
                }
                if entries.is_empty() {
                    return Err(InvariantError::NoParties);
                }
                Ok(InvariantSpec::Permutations(PermutationTuple::new(entries)?))
            }
            "coxeter" => {
                let &(lineno, key, value) = rest
                    .first()
                    .ok_or_else(|| InvariantError::BadField(0, "missing 'm:' line".into()))?;
                if key != "m" {
                    return Err(InvariantError::BadField(lineno, format!("expected 'm:', got '{key}:'")));
                }
                let entries: Result<Vec<u32>, _> = value
                    .split_whitespace()
                    .map(|t| t.parse::<u32>())
                    .collect();
                let entries = entries
                    .map_err(|_| InvariantError::BadField(lineno, format!("bad 'm:' entries '{value}'")))?;
                // q(q-1)/2 entries for some q >= 2.
                let len = entries.len();
                let q = (1..=64).find(|q| q * (q - 1) / 2 == len);
                if q.is_none() {
                    return Err(InvariantError::BadTriangle(len));
                }
                Ok(InvariantSpec::Coxeter(CoxeterSpec::from_upper_triangle(&entries)?))
            }
            "renyi-multientropy" => {
                let mut n = None;
                let mut q = None;
                for &(lineno, key, value) in rest {
                    match key {
                        "n" => n = Some(parse_usize(lineno, "n", value)?),
                        "q" => q = Some(parse_usize(lineno, "q", value)?),
                        other => {
                            return Err(InvariantError::BadField(
                                lineno,
                                format!("unknown field '{other}'"),
                            ))
                        }
                    }
                }
                let n = n.ok_or_else(|| InvariantError::BadField(0, "missing 'n:' line".into()))?;
                let q = q.ok_or_else(|| InvariantError::BadField(0, "missing 'q:' line".into()))?;
                if n < 1 || q < 2 {
                    return Err(InvariantError::BadField(
                        0,
                        format!("need n >= 1 and q >= 2, got n={n}, q={q}"),
                    ));
                }
                Ok(InvariantSpec::RenyiMultientropy { n, q })
            }
            other => Err(InvariantError::UnknownType(other.to_string())),
        }
    }

    pub fn format_text(&self) -> String {
        match self {
            InvariantSpec::Permutations(tuple) => {
                let mut out = String::from("type: permutations\n");
                for (name, perm) in tuple.perms() {
                    out.push_str(&format!("{name}: {perm}\n"));
                }
                out
            }
            InvariantSpec::Coxeter(spec) => {
                let q = spec.q();
                let mut entries = Vec::new();
                for i in 0..q {
                    for j in i + 1..q {
                        entries.push(spec.m(i, j).to_string());
                    }
                }
                format!("type: coxeter\nm: {}\n", entries.join(" "))
            }
            InvariantSpec::RenyiMultientropy { n, q } => {
                format!("type: renyi-multientropy\nn: {n}\nq: {q}\n")
            }
        }
    }

    /// The permutation tuple this spec evaluates to.
    pub fn to_tuple(&self) -> Result<PermutationTuple, InvariantError> {
        match self {
            InvariantSpec::Permutations(tuple) => Ok(tuple.clone()),
            InvariantSpec::Coxeter(spec) => Ok(cayley_to_tuple(&generate_coxeter(spec)?)),
            InvariantSpec::RenyiMultientropy { n, q } => Ok(multi_entropy_tuple(*n, *q)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::kempe_tuple;

    #[test]
    fn parses_permutations() {
        let text = "# tripartite example\ntype: permutations\nA: ()\nB: (0 1 2)\nC: (0 2 1)\n";
        let spec = InvariantSpec::parse_text(text).unwrap();
        match &spec {
            InvariantSpec::Permutations(t) => {
                assert_eq!(t.q(), 3);
                assert_eq!(t.n_rep(), 3);
                assert_eq!(*t, kempe_tuple());
            }
            other => panic!("wrong variant: {other:?}"),
        }
    }

    #[test]
    fn infers_replica_count_from_fixed_points() {
        let text = "type: permutations\nA: (0 1)(3)\nB: ()\n";
        let spec = InvariantSpec::parse_text(text).unwrap();
        match spec {
            InvariantSpec::Permutations(t) => assert_eq!(t.n_rep(), 4),
            other => panic!("wrong variant: {other:?}"),
        }
    }

    #[test]
    fn parses_coxeter_and_renyi() {
        let spec = InvariantSpec::parse_text("type: coxeter\nm: 2 3 3\n").unwrap();
        match &spec {
            InvariantSpec::Coxeter(c) => {
                assert_eq!(c.q(), 3);
                assert_eq!((c.m(0, 1), c.m(0, 2), c.m(1, 2)), (2, 3, 3));
            }
            other => panic!("wrong variant: {other:?}"),
        }
        assert_eq!(spec.to_tuple().unwrap().n_rep(), 12);

        let spec = InvariantSpec::parse_text("type: renyi-multientropy\nn: 2\nq: 3\n").unwrap();
        assert_eq!(spec, InvariantSpec::RenyiMultientropy { n: 2, q: 3 });
        let tuple = spec.to_tuple().unwrap();
        assert_eq!(tuple.n_rep(), 4);
        assert_eq!(tuple.q(), 3);
    }

    #[test]
    fn round_trips() {
        for text in [
            "type: permutations\nA: ()\nB: (0 1 2)\nC: (0 2 1)\n",
            "type: coxeter\nm: 2 3 4\n",
            "type: renyi-multientropy\nn: 3\nq: 2\n",
        ] {
            let spec = InvariantSpec::parse_text(text).unwrap();
            let reparsed = InvariantSpec::parse_text(&spec.format_text()).unwrap();
            assert_eq!(spec, reparsed);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            InvariantSpec::parse_text(""),
            Err(InvariantError::MissingType)
        ));
        assert!(matches!(
            InvariantSpec::parse_text("type: frobnicate\n"),
            Err(InvariantError::UnknownType(_))
        ));
        assert!(matches!(
            InvariantSpec::parse_text("type: coxeter\nm: 2 3\n"),
            Err(InvariantError::BadTriangle(2))
        ));
        assert!(matches!(
            InvariantSpec::parse_text("type: permutations\n"),
            Err(InvariantError::NoParties)
        ));
        assert!(InvariantSpec::parse_text("type: renyi-multientropy\nn: 0\nq: 3\n").is_err());
    }
}
