//! Multiply-controlled gates from one- and two-qubit gates.
//!
//! Toffoli: five controlled gates with `V = sqrt(X)`. `k`-controlled NOT:
//! the linear chain of `4(k-2)` Toffolis over `k-2` borrowed (dirty) lines
//! when enough are free, otherwise one split into two halves that each
//! borrow lines from the other. `Lambda^r T` for `r >= 2` computes the AND
//! of its controls into a clean ancilla, applies controlled-`T`, and
//! uncomputes.

use crate::algebra::Mat2;
use crate::circuit::QcGate;
use crate::{Error, Result, C64};

/// A line together with the value it must hold for the gate to fire.
pub type Control = (usize, bool);

fn sqrt_x() -> Mat2 {
    let p = C64::new(0.5, 0.5);
    let m = C64::new(0.5, -0.5);
    Mat2::new(p, m, m, p)
}

pub fn toffoli(c1: usize, c2: usize, t: usize, out: &mut impl FnMut(QcGate)) {
    let v = sqrt_x();
    let vd = v.adjoint();
    out(QcGate::Cu1 { control: c2, target: t, m: v });
    out(QcGate::cx(c1, c2));
    out(QcGate::Cu1 { control: c2, target: t, m: vd });
    out(QcGate::cx(c1, c2));
    out(QcGate::Cu1 { control: c1, target: t, m: v });
}

fn free_lines(width: usize, busy: &[usize]) -> Vec<usize> {
    (1..=width).filter(|q| !busy.contains(q)).collect()
}

// k >= 3 controls, a.len() >= k - 2
fn chain(c: &[usize], a: &[usize], t: usize, out: &mut impl FnMut(QcGate)) {
    let k = c.len();
    let ladder = |out: &mut dyn FnMut(QcGate)| {
        let mut o = |g| out(g);
        for i in (1..k - 2).rev() {
            toffoli(c[i + 1], a[i - 1], a[i], &mut o);
        }
        toffoli(c[0], c[1], a[0], &mut o);
        for i in 1..k - 2 {
            toffoli(c[i + 1], a[i - 1], a[i], &mut o);
        }
    };
    toffoli(c[k - 1], a[k - 3], t, out);
    ladder(out);
    toffoli(c[k - 1], a[k - 3], t, out);
    ladder(out);
}

/// NOT on `target` when every line of `controls` is 1. Lines outside
/// `controls` and `target` may be borrowed and are restored.
pub fn mcx(controls: &[usize], target: usize, width: usize, out: &mut impl FnMut(QcGate)) -> Result<()> {
    match controls.len() {
        0 => out(QcGate::X(target)),
        1 => out(QcGate::cx(controls[0], target)),
        2 => toffoli(controls[0], controls[1], target, out),
        k => {
            let mut busy = controls.to_vec();
            busy.push(target);
            let free = free_lines(width, &busy);
            if free.len() >= k - 2 {
                chain(controls, &free, target, out);
            } else if let Some(&a) = free.first() {
                let (c1, c2) = controls.split_at(k.div_ceil(2));
                let mut c2a = c2.to_vec();
                c2a.push(a);
                for _ in 0..2 {
                    mcx(c1, a, width, out)?;
                    mcx(&c2a, target, width, out)?;
                }
            } else {
                return Err(Error::Internal(format!(
                    "no spare line for a {k}-controlled NOT on width {width}"
                )));
            }
        }
    }
    Ok(())
}

fn check_lines(controls: &[Control], target: usize, extra: Option<usize>, width: usize) -> Result<()> {
    let mut lines: Vec<usize> = controls.iter().map(|c| c.0).collect();
    lines.push(target);
    lines.extend(extra);
    for &q in &lines {
        if q == 0 || q > width {
            return Err(Error::Range(format!("line {q} outside 1..={width}")));
        }
    }
    let mut sorted = lines.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != lines.len() {
        return Err(Error::Range(format!("line collision in {lines:?}")));
    }
    Ok(())
}

fn flip_zeros(controls: &[Control], out: &mut impl FnMut(QcGate)) {
    for &(q, v) in controls {
        if !v {
            out(QcGate::X(q));
        }
    }
}

/// NOT on `target` conditioned on a mixed pattern of 1- and 0-controls.
pub fn emit_pattern_x(controls: &[Control], target: usize, width: usize, out: &mut impl FnMut(QcGate)) -> Result<()> {
    check_lines(controls, target, None, width)?;
    let lines: Vec<usize> = controls.iter().map(|c| c.0).collect();
    flip_zeros(controls, out);
    mcx(&lines, target, width, out)?;
    flip_zeros(controls, out);
    Ok(())
}

/// `Lambda^r t` on `target` with `ancilla` entering and leaving in `|0>`.
pub fn emit_lambda_r(
    controls: &[Control],
    target: usize,
    t: &Mat2,
    ancilla: usize,
    width: usize,
    out: &mut impl FnMut(QcGate),
) -> Result<()> {
    check_lines(controls, target, Some(ancilla), width)?;
    flip_zeros(controls, out);
    match controls {
        [] => out(QcGate::U1 { q: target, m: *t }),
        [(c, _)] => out(QcGate::Cu1 { control: *c, target, m: *t }),
        _ => {
            let lines: Vec<usize> = controls.iter().map(|c| c.0).collect();
            mcx(&lines, ancilla, width, out)?;
            out(QcGate::Cu1 { control: ancilla, target, m: *t });
            mcx(&lines, ancilla, width, out)?;
        }
    }
    flip_zeros(controls, out);
    Ok(())
}

pub fn lambda_r_decompose(
    controls: &[Control],
    target: usize,
    t: &Mat2,
    ancilla: usize,
    width: usize,
) -> Result<Vec<QcGate>> {
    let mut gates = Vec::new();
    emit_lambda_r(controls, target, t, ancilla, width, &mut |g| gates.push(g))?;
    Ok(gates)
}

/// Gates emitted by [`emit_lambda_r`] for `r` positive controls when at
/// least `r - 2` lines besides controls, target and ancilla are spare.
pub fn lambda_r_gate_count(r: usize) -> usize {
    match r {
        0 | 1 => 1,
        2 => 2 * 5 + 1,
        r => 2 * 20 * (r - 2) + 1,
    }
}
