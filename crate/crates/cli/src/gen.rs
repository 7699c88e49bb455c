//! `gen`: write model state files. Lattice models emit an X-generator
//! file plus a qubit→coordinate sidecar JSON for partition tooling.

use serde_json::json;
use stabinv::analytic::{build_toric_code, build_x_cube, XStabilizerState};
use stabinv::graph::ColoredGraph;
use stabinv::party::PartyMap;
use stabinv::random::{random_graph, rng_from_seed};
use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

fn x_generator_text(xs: &XStabilizerState) -> String {
    let mut out = String::new();
    for row in xs.basis().rows() {
        for q in 0..xs.n_qubits() {
            out.push(if row.get(q) { 'X' } else { 'I' });
        }
        out.push('\n');
    }
    out
}

fn write_files(path: &Path, contents: &str, sidecar: Option<String>) -> std::io::Result<()> {
    std::fs::write(path, contents)?;
    if let Some(s) = sidecar {
        let mut side = path.as_os_str().to_owned();
        side.push(".coords.json");
        std::fs::write(PathBuf::from(side), s)?;
    }
    Ok(())
}

pub fn run(
    model: &str,
    l: Option<usize>,
    n: Option<usize>,
    p: f64,
    q: usize,
    seed: u64,
    output: Option<&Path>,
) -> Result<ExitCode, Box<dyn Error>> {
    let (default_name, contents, sidecar) = match model {
        "ghz" => {
            // Three-vertex path graph: the canonical tripartite GHZ state.
            let g = ColoredGraph::from_edges(
                3,
                &[(0, 1), (0, 2)],
                PartyMap::new(vec!["A".into(), "B".into(), "C".into()]),
            )?;
            ("ghz.graph".to_string(), g.format_text(), None)
        }
        "bell" => {
            let g = ColoredGraph::from_edges(
                2,
                &[(0, 1)],
                PartyMap::new(vec!["A".into(), "B".into()]),
            )?;
            ("bell.graph".to_string(), g.format_text(), None)
        }
        "toric" => {
            let l = l.ok_or("toric needs --l")?;
            if l < 2 {
                return Err("toric needs --l >= 2".into());
            }
            let xs = build_toric_code(l);
            // Qubit layout: horizontal links first (x + y·l), then vertical.
            let coords: Vec<_> = (0..xs.n_qubits())
                .map(|qb| {
                    let (kind, idx) = if qb < l * l { ("horizontal", qb) } else { ("vertical", qb - l * l) };
                    json!({ "qubit": qb, "kind": kind, "x": idx % l, "y": idx / l })
                })
                .collect();
            (
                format!("toric-L{l}.xgen"),
                x_generator_text(&xs),
                Some(serde_json::to_string_pretty(&coords)?),
            )
        }
        "xcube" => {
            let l = l.ok_or("xcube needs --l")?;
            if l < 2 {
                return Err("xcube needs --l >= 2".into());
            }
            let xs = build_x_cube(l);
            // Qubit layout: axis·l³ + x + y·l + z·l².
            let coords: Vec<_> = (0..xs.n_qubits())
                .map(|qb| {
                    let axis = ["x", "y", "z"][qb / (l * l * l)];
                    let r = qb % (l * l * l);
                    json!({
                        "qubit": qb,
                        "axis": axis,
                        "x": r % l, "y": (r / l) % l, "z": r / (l * l),
                    })
                })
                .collect();
            (
                format!("xcube-L{l}.xgen"),
                x_generator_text(&xs),
                Some(serde_json::to_string_pretty(&coords)?),
            )
        }
        "random-graph" => {
            let n = n.ok_or("random-graph needs --n")?;
            if q == 0 || q > n {
                return Err(format!("party count {q} out of range for {n} vertices").into());
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("edge probability {p} out of [0, 1]").into());
            }
            let mut rng = rng_from_seed(seed);
            let g = random_graph(&mut rng, n, p, PartyMap::round_robin(n, q));
            (
                format!("random-n{n}-seed{seed}.graph"),
                g.format_text(),
                None,
            )
        }
        other => return Err(format!("unknown model '{other}'").into()),
    };
    let path = output
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(default_name));
    write_files(&path, &contents, sidecar)?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}
