//! `compute`: evaluate one invariant of one state with any engine, the
//! applicable closed form, or all of them with agreement flags.

use crate::record::{InputDescriptor, MethodResult, RunRecord};
use crate::state::parse_state;
use num_rational::Rational64;
use stabinv::analytic::{coxeter_invariant_conjecture, tripartite_multi_invariant};
use stabinv::engines::{evaluate_tableau_with_budget, Method};
use stabinv::invariant::InvariantSpec;
use stabinv::tableau::StabilizerTableau;
use std::error::Error;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

/// The closed form applicable to this (state, spec) pair, if any:
/// tripartite states get the exact factorization, everything else with a
/// reflection-group spec gets the group-counting formula.
fn analytic_log2(
    t: &StabilizerTableau,
    spec: &InvariantSpec,
) -> Option<Result<Rational64, Box<dyn Error>>> {
    if t.parties().q() == 3 {
        if let Ok(tuple) = spec.to_tuple() {
            if tuple.q() == 3 {
                return Some(tripartite_multi_invariant(t, &tuple).map_err(Into::into));
            }
        }
    }
    if let InvariantSpec::Coxeter(c) = spec {
        if c.q() == t.parties().q() {
            // The counting formula gives log₂ Z²; halve for the magnitude.
            return Some(
                coxeter_invariant_conjecture(t, c)
                    .map(|l| l / 2)
                    .map_err(Into::into),
            );
        }
    }
    None
}

pub fn run(
    state_path: &Path,
    spec_path: &Path,
    partition: Option<&str>,
    method: &str,
    budget: usize,
    output: Option<&Path>,
) -> Result<ExitCode, Box<dyn Error>> {
    let state_text = std::fs::read_to_string(state_path)?;
    let spec_text = std::fs::read_to_string(spec_path)?;
    let state = parse_state(&state_text, partition)?;
    let spec = InvariantSpec::parse_text(&spec_text)?;
    let tuple = spec.to_tuple()?;
    let tableau = state.tableau();

    let engine_methods: Vec<Method> = match method {
        "projector" => vec![Method::Projector],
        "canonical" => vec![Method::Canonical],
        "dense" => vec![Method::Dense],
        "analytic" => vec![],
        "all" => vec![Method::Projector, Method::Canonical, Method::Dense],
        other => return Err(format!("unknown method '{other}'").into()),
    };
    let want_analytic = method == "analytic" || method == "all";

    let mut results = Vec::new();
    for m in engine_methods {
        let start = Instant::now();
        match evaluate_tableau_with_budget(&tableau, &tuple, m, budget) {
            Ok(r) => results.push(MethodResult::from_engine(&r, start.elapsed().as_micros())),
            // With "all", an over-budget dense run is skipped, not fatal.
            Err(e) if method == "all" && m == Method::Dense => {
                eprintln!("note: dense engine skipped: {e}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    if want_analytic {
        let start = Instant::now();
        match analytic_log2(&tableau, &spec) {
            Some(Ok(log2)) => {
                results.push(MethodResult::from_log2(
                    "analytic",
                    log2,
                    start.elapsed().as_micros(),
                ));
            }
            Some(Err(e)) => return Err(e),
            None if method == "analytic" => {
                return Err("no closed form applies: analytic needs a tripartite state \
                     or a reflection-group spec matching the party count"
                    .into());
            }
            None => {}
        }
    }

    let record = RunRecord {
        command: "compute".to_string(),
        inputs: vec![
            InputDescriptor::new(&state_path.display().to_string(), &state_text),
            InputDescriptor::new(&spec_path.display().to_string(), &spec_text),
        ],
        invariant: Some(spec.format_text()),
        agreement: RunRecord::agreement_from_results(&results),
        results,
        extra: None,
    };
    crate::emit_line(output, &serde_json::to_string(&record)?)?;
    Ok(ExitCode::SUCCESS)
}
