//! Rewriting a matchgate circuit to input `0...0` and measurement on line 1.
//!
//! Preparation: `G(X, X)` pairs at the bottom create the needed number of
//! 1s (plus one spare on an extra line when the weight is odd), then
//! fermionic swaps walk them up to the positions of the original input.
//! A final `W` ladder brings the measured line to the top.

use crate::circuit::{MatchgateCircuit, MgGate};
use crate::{Error, Result};

/// Upper bound on the gates added for an `n`-line circuit.
pub fn added_gate_bound(n: usize) -> usize {
    2 * n * n + n
}

pub fn standardize(c: &MatchgateCircuit) -> Result<MatchgateCircuit> {
    let v = c.validate();
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    let n = c.width;
    let targets: Vec<usize> = (1..=n).filter(|&q| c.input[q - 1]).collect();
    let r = targets.len();
    let width = if r.is_multiple_of(2) { n } else { n + 1 };

    let mut gates = Vec::with_capacity(c.gates.len() + r.div_ceil(2) + r * n + n);
    for p in 0..r.div_ceil(2) {
        gates.push(MgGate::Gxx { line: width - 1 - 2 * p });
    }
    // ones now sit on lines n-r+1 ..= n; move the i-th one up to targets[i]
    for (i, &t) in targets.iter().enumerate() {
        let mut p = n - r + 1 + i;
        while p > t {
            gates.push(MgGate::W { line: p - 1 });
            p -= 1;
        }
    }
    gates.extend_from_slice(&c.gates);
    for line in (1..c.measure).rev() {
        gates.push(MgGate::W { line });
    }

    let mut out = MatchgateCircuit::new(width, gates, vec![false; width], 1);
    out.allow_idle = c.allow_idle;
    Ok(out)
}
