//! General circuit of width `m` to a matchgate circuit of width `2^(m+1)`.
//!
//! Pipeline:
//!
//! 1. absorb the input into a prefix of `X` gates;
//! 2. append the gadget `w` on line 1 and a fresh ancilla `A`, then `Z_A`;
//! 3. realify every gate with one more rebit `B`;
//! 4. label the `2^(m+2)` real dimensions by `j - 1 = (b_1 ... b_m b_B b_A)_2`,
//!    so dimensions `2k-1, 2k` belong to matchgate line `k` and `Y~_A` is
//!    the `S` matrix of input `0...0`;
//! 5. walk the real gates from last to first, Givens-factor each transpose,
//!    lift every factor over all spectator rebits and emit the resulting
//!    two-level rotations as matchgates behind `W` ladders.
//!
//! The rotation of the matchgate circuit is then the transpose of the real
//! circuit. `Z_A` compensates the sign of the antisymmetric pairing so
//! that `<Z_1>` of the result equals `<Z_1>` of the source.

use nalgebra::{DMatrix, Matrix4};

use crate::algebra::{givens_factor, pauli_z, y_tilde, Mat4, OrthogonalMatrix, PlaneRotation};
use crate::circuit::{GeneralCircuit, MatchgateCircuit, MgGate, QcGate};
use crate::{Error, Result, C64, TOL};

/// Default limit on the source width.
pub const EXPAND_WIDTH_LIMIT: usize = 4;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `v = |+><+| (x) I + |-><-| (x) Y~`.
pub fn v_gadget() -> Mat4 {
    let h = 0.5;
    // |+><+| = [[h, h], [h, h]], |-><-| = [[h, -h], [-h, h]]
    let plus = [[h, h], [h, h]];
    let minus = [[h, -h], [-h, h]];
    let yt = y_tilde();
    Mat4::from_fn(|r, col| {
        let (r1, r2, c1, c2) = (r / 2, r % 2, col / 2, col % 2);
        let id = if r2 == c2 { 1.0 } else { 0.0 };
        c(plus[r1][c1] * id) + c(minus[r1][c1]) * yt[(r2, c2)]
    })
}

pub fn swap_gate() -> Mat4 {
    let mut m = Mat4::zeros();
    for (r, col) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        m[(r, col)] = c(1.0);
    }
    m
}

/// `w = SWAP v`.
pub fn w_gadget() -> Mat4 {
    swap_gate() * v_gadget()
}

/// Replaces the input by `X` gates on a `0...0` input.
pub fn absorb_input(c: &GeneralCircuit) -> GeneralCircuit {
    let mut gates: Vec<QcGate> = (1..=c.width).filter(|&q| c.input[q - 1]).map(QcGate::X).collect();
    gates.extend_from_slice(&c.gates);
    GeneralCircuit::new(c.width, gates, vec![false; c.width])
}

/// Adds the ancilla line `m + 1` in `|0>` and appends `w` on `(1, m + 1)`.
pub fn append_w_gadget(c: &GeneralCircuit) -> GeneralCircuit {
    let a = c.width + 1;
    let mut gates = c.gates.clone();
    gates.push(QcGate::U2 { q1: 1, q2: a, m: w_gadget() });
    let mut input = c.input.clone();
    input.push(false);
    GeneralCircuit::new(a, gates, input)
}

/// Real orthogonal gate on rebit lines; `lines[0]` is the most
/// significant index bit of `matrix`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGate {
    pub lines: Vec<usize>,
    pub matrix: DMatrix<f64>,
}

impl RealGate {
    pub fn arity(&self) -> usize {
        self.lines.len()
    }
}

/// `U^ = Re(U) (x) I_B - Im(U) (x) Y~_B`, with `B` appended as the least
/// significant rebit.
pub fn realify_gate(u: &DMatrix<C64>, lines: &[usize], b: usize) -> Result<RealGate> {
    let dev = crate::algebra::unitarity_deviation(u);
    if dev.is_nan() || dev > TOL {
        return Err(Error::NonUnitary(dev));
    }
    let d = u.nrows();
    let yt = y_tilde();
    let m = DMatrix::from_fn(2 * d, 2 * d, |r, col| {
        let z = u[(r / 2, col / 2)];
        let (rb, cb) = (r % 2, col % 2);
        let id = if rb == cb { 1.0 } else { 0.0 };
        z.re * id - z.im * yt[(rb, cb)].re
    });
    let mut all = lines.to_vec();
    all.push(b);
    Ok(RealGate { lines: all, matrix: m })
}

/// Matchgates whose composed rotation is the plane rotation `p` in the
/// `2n`-dimensional space.
pub fn two_level_to_matchgates(p: &PlaneRotation, n: usize) -> Result<Vec<MgGate>> {
    if p.a == 0 || p.a >= p.b || p.b > 2 * n || n < 2 {
        return Err(Error::Range(format!(
            "plane ({}, {}) for width {n}",
            p.a, p.b
        )));
    }
    let line_of = |d: usize| d.div_ceil(2);
    let (la, lb) = (line_of(p.a), line_of(p.b));
    if lb <= la + 1 {
        let window = la.min(n - 1);
        let off = 2 * (window - 1);
        let local = PlaneRotation::new(p.a - off, p.b - off, p.theta);
        return Ok(vec![MgGate::from_plane_rotation(window, &local)]);
    }
    // W ladder bringing b's pair from line lb down to line la + 1
    let ladder: Vec<usize> = (la + 1..lb).rev().collect();
    let mut pos = [p.a, p.b];
    for &k in &ladder {
        for d in pos.iter_mut() {
            if line_of(*d) == k {
                *d += 2;
            } else if line_of(*d) == k + 1 {
                *d -= 2;
            }
        }
    }
    let off = 2 * (la - 1);
    let local = PlaneRotation::oriented(pos[0] - off, pos[1] - off, p.theta);
    let mut out: Vec<MgGate> = ladder.iter().map(|&line| MgGate::W { line }).collect();
    out.push(MgGate::from_plane_rotation(la, &local));
    out.extend(ladder.iter().rev().map(|&line| MgGate::W { line }));
    Ok(out)
}

/// Bit position (0 = least significant) of a rebit line in the global
/// dimension index, for `m` source lines plus `A = m + 1`, `B = m + 2`.
fn bit_position(line: usize, m: usize) -> usize {
    match line {
        q if q <= m => m + 2 - q,
        q if q == m + 1 => 0,
        _ => 1,
    }
}

/// Emits the matchgates realizing the `2n`-dimensional lift of `g^T`.
fn emit_transposed(g: &RealGate, m: usize, n: usize, out: &mut Vec<MgGate>) -> Result<()> {
    let k = g.arity();
    let positions: Vec<usize> = g.lines.iter().map(|&q| bit_position(q, m)).collect();
    let deposit = |local: usize| -> usize {
        (0..k)
            .filter(|t| local >> (k - 1 - t) & 1 == 1)
            .map(|t| 1usize << positions[t])
            .sum()
    };
    let mask = deposit((1 << k) - 1);
    let gt = OrthogonalMatrix::special(g.matrix.transpose())?;
    // g^T = Q_1 ... Q_q, so Q_q is emitted first
    for f in givens_factor(&gt)?.iter().rev() {
        let (da, db) = (deposit(f.a - 1), deposit(f.b - 1));
        for base in (0..2 * n).filter(|b| b & mask == 0) {
            let p = PlaneRotation::oriented(base + da + 1, base + db + 1, f.theta);
            out.extend(two_level_to_matchgates(&p, n)?);
        }
    }
    Ok(())
}

pub fn expand_circuit(c: &GeneralCircuit) -> Result<MatchgateCircuit> {
    expand_circuit_with_limit(c, EXPAND_WIDTH_LIMIT)
}

pub fn expand_circuit_with_limit(c: &GeneralCircuit, limit: usize) -> Result<MatchgateCircuit> {
    let v = c.validate();
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    let m = c.width;
    if m > limit {
        return Err(Error::Guard { what: "width", value: m, limit });
    }
    let mut tilde = append_w_gadget(&absorb_input(c));
    tilde.gates.push(QcGate::U1 { q: m + 1, m: pauli_z() });

    let n = 1usize << (m + 1);
    let b = m + 2;
    let mut gates = Vec::new();
    for g in tilde.gates.iter().rev() {
        let real = realify_gate(&g.matrix(), &g.lines(), b)?;
        emit_transposed(&real, m, n, &mut gates)?;
    }
    let mut out = MatchgateCircuit::new(n, gates, vec![false; n], 1);
    out.allow_idle = 2 * out.size() < n;
    Ok(out)
}

/// Dense 4x4 real view of a complex matrix known to be real.
pub fn real_part4(m: &Mat4) -> Matrix4<f64> {
    Matrix4::from_fn(|r, col| m[(r, col)].re)
}
