//! `benchmark`: engine wall times on random connected graphs of growing
//! size. Emits CSV (one row per size, median of five repetitions) and a
//! log-log fitted slope per engine as trailing comment lines.

use stabinv::engines::{evaluate_graph, Method};
use stabinv::graph::ColoredGraph;
use stabinv::invariant::InvariantSpec;
use stabinv::party::PartyMap;
use stabinv::perm::PermutationTuple;
use stabinv::random::{random_graph, rng_from_seed};
use std::error::Error;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

fn is_connected(g: &ColoredGraph) -> bool {
    let n = g.n_slots();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn connected_graph(seed: u64, n: usize, q: usize) -> ColoredGraph {
    let mut rng = rng_from_seed(seed);
    loop {
        let g = random_graph(&mut rng, n, 0.5, PartyMap::round_robin(n, q));
        if is_connected(&g) {
            return g;
        }
    }
}

fn median_us(g: &ColoredGraph, tuple: &PermutationTuple, method: Method) -> u128 {
    let mut times: Vec<u128> = (0..5)
        .map(|_| {
            let start = Instant::now();
            evaluate_graph(g, tuple, method).expect("benchmark inputs are in-contract");
            start.elapsed().as_micros()
        })
        .collect();
    times.sort_unstable();
    times[2]
}

/// Least-squares slope of ln(time) against ln(size).
fn loglog_slope(points: &[(usize, u128)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, t)| (t.max(1) as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(num / den)
}

pub fn run(
    min: usize,
    max: usize,
    step: usize,
    spec_path: Option<&Path>,
    seed: u64,
    output: Option<&Path>,
) -> Result<ExitCode, Box<dyn Error>> {
    if min == 0 || max < min || step == 0 {
        return Err("benchmark needs 0 < min <= max and step > 0".into());
    }
    let spec = match spec_path {
        Some(p) => InvariantSpec::parse_text(&std::fs::read_to_string(p)?)?,
        None => InvariantSpec::RenyiMultientropy { n: 2, q: 3 },
    };
    let tuple = spec.to_tuple()?;
    let q = tuple.q();

    crate::emit_line(output, "size,projector_us,canonical_us")?;
    let mut proj_points = Vec::new();
    let mut canon_points = Vec::new();
    let mut size = min;
    while size <= max {
        let g = connected_graph(seed.wrapping_add(size as u64), size, q);
        let tp = median_us(&g, &tuple, Method::Projector);
        let tc = median_us(&g, &tuple, Method::Canonical);
        crate::emit_line(output, &format!("{size},{tp},{tc}"))?;
        proj_points.push((size, tp));
        canon_points.push((size, tc));
        size += step;
    }
    if let Some(sp) = loglog_slope(&proj_points) {
        crate::emit_line(output, &format!("# slope projector {sp:.3}"))?;
    }
    if let Some(sc) = loglog_slope(&canon_points) {
        crate::emit_line(output, &format!("# slope canonical {sc:.3}"))?;
    }
    Ok(ExitCode::SUCCESS)
}
