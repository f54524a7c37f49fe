//! Browser bindings: each export takes the text formats of the command-line
//! tool and returns a JSON string, or an error message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use quditsynth::format;
use quditsynth::synth_stab::{self, Variant};

/// Distance searches in the page give up after this many candidate vectors.
pub const DISTANCE_CAP: u64 = 20_000_000;

/// Largest register the page will simulate.
pub const MAX_DEMO_AMPLITUDES: usize = 1 << 16;

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|p| p + 1).collect()
}

/// Synthesizes decoder and encoder for a stabilizer matrix, with the
/// reduced matrix after each row.
#[wasm_bindgen]
pub fn synthesize(stabilizer: &str, variant: &str) -> Result<String, String> {
    let m = format::parse_stabilizer(stabilizer).map_err(|e| e.to_string())?;
    let variant = match variant {
        "x" | "" => Variant::XTarget,
        "z" => Variant::ZTarget,
        other => return Err(format!("variant: expected x or z, got '{other}'")),
    };
    let res = synth_stab::synthesize(&m, variant).map_err(|e| e.to_string())?;
    let stages: Vec<Value> = res
        .step_log
        .iter()
        .map(|s| {
            json!({
                "row": s.row + 1,
                "pivot": s.pivot + 1,
                "after_t": format::write_rows(m.field(), m.n(), &s.after_t),
                "after_a": format::write_rows(m.field(), m.n(), &s.after_a),
            })
        })
        .collect();
    let counts = res.encoder.counts();
    Ok(json!({
        "n": m.n(),
        "k": m.k(),
        "pivots": one_based(&res.pivots),
        "adds": res.add_count,
        "singles": res.single_count,
        "add_bound": synth_stab::gate_count_bound(m.n(), m.k()),
        "counts": counts.to_string(),
        "stages": stages,
        "encoder": format::write_circuit(&res.encoder),
        "decoder": format::write_circuit(&res.decoder),
    })
    .to_string())
}

/// Runs a circuit on a basis state; returns the nonzero amplitudes.
#[wasm_bindgen]
pub fn simulate(circuit: &str, input: &str) -> Result<String, String> {
    let c = format::parse_circuit(circuit).map_err(|e| e.to_string())?;
    let dim = (c.field.q() as usize).checked_pow(c.n as u32).filter(|&d| d <= MAX_DEMO_AMPLITUDES);
    if dim.is_none() {
        return Err(format!("{} qudits of dimension {} is too large for the page", c.n, c.field.q()));
    }
    let digits = format::parse_digits(input).map_err(|e| format!("input: {e}"))?;
    let state = quditsynth::sim::simulate(&c, &digits).map_err(|e| format!("input: {e}"))?;
    let amps: Vec<Value> = state
        .support(1e-12)
        .into_iter()
        .map(|(d, a)| {
            let basis: Vec<String> = d.iter().map(u32::to_string).collect();
            json!({ "basis": basis.join(","), "re": a.re, "im": a.im })
        })
        .collect();
    Ok(json!({ "n": c.n, "q": c.field.q(), "amplitudes": amps }).to_string())
}

/// Minimum distance by exhaustive search, capped at [`DISTANCE_CAP`].
#[wasm_bindgen]
pub fn distance(stabilizer: &str) -> Result<String, String> {
    let m = format::parse_stabilizer(stabilizer).map_err(|e| e.to_string())?;
    let d = m.min_distance_bruteforce(DISTANCE_CAP).map_err(|e| e.to_string())?;
    Ok(json!({ "n": m.n(), "k": m.k(), "d": d }).to_string())
}
