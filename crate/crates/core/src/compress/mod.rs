//! Matchgate circuit of width `n` (a power of two) to a general circuit of
//! width `log2(n) + 3` evaluating the same `<Z_1>`.
//!
//! The compiled circuit is a Hadamard test of `U = S^-1 R S R^-1` on a
//! register of `mu = log2(2n)` rebits, where dimension `j` of the rotation
//! space is the basis state `gray(j - 1)`:
//!
//! ```text
//! line 1            control, measured
//! lines 2..=mu+1    data, most significant bit first
//! line mu+2         clean ancilla for multiply-controlled gates
//! ```
//!
//! `R^-1` is emitted during a reverse pass over the source gates and `R`
//! during a forward pass. Each gate's 4x4 block is Givens-factored on the
//! fly and every plane rotation becomes an aligned, fully controlled
//! single-rebit rotation, so working memory per gate is `O(mu)`.

pub mod align;
pub mod gray;
pub mod mcx;

use nalgebra::Matrix2;

use crate::algebra::{givens_factor, rot4_to_dense, y_tilde, Mat2, OrthogonalMatrix, PlaneRotation};
use crate::circuit::{GeneralCircuit, MatchgateCircuit, MgGate, QcGate};
use crate::{Error, Result, C64};

use align::{align_conjugation, ConjGate};
use gray::{binary_to_gray_on, gray, gray_to_binary_on};
use mcx::{emit_lambda_r, emit_pattern_x, Control};

/// Largest Hamming distance between the labels of one plane rotation.
pub const MAX_LABEL_DISTANCE: u32 = 3;

/// `log2(n) + 3`.
pub fn compiled_width(n: usize) -> usize {
    n.trailing_zeros() as usize + 3
}

/// Adds idle lines until the width is a power of two.
pub fn pad_to_power_of_two(c: &MatchgateCircuit) -> MatchgateCircuit {
    let n = c.width.next_power_of_two();
    if n == c.width {
        return c.clone();
    }
    let mut out = c.clone();
    out.width = n;
    out.input.resize(n, false);
    out.allow_idle = true;
    out
}

struct Emitter<'a, F: FnMut(QcGate)> {
    mu: usize,
    width: usize,
    ancilla: usize,
    out: &'a mut F,
    count: usize,
}

impl<F: FnMut(QcGate)> Emitter<'_, F> {
    fn push(&mut self, g: QcGate) {
        self.count += 1;
        (self.out)(g);
    }

    fn data_line(bit: usize) -> usize {
        bit + 1
    }

    fn conj(&mut self, g: &ConjGate, condition: &[(usize, bool)]) -> Result<()> {
        let mut controls: Vec<Control> = condition
            .iter()
            .map(|&(b, v)| (Self::data_line(b), v))
            .collect();
        let target = match *g {
            ConjGate::X { bit } => bit,
            ConjGate::Cx { control, target } => {
                controls.push((Self::data_line(control), true));
                target
            }
        };
        let (width, count) = (self.width, &mut self.count);
        let out = &mut *self.out;
        emit_pattern_x(&controls, Self::data_line(target), width, &mut |g| {
            *count += 1;
            out(g)
        })
    }

    /// Controlled plane rotation between global dimensions `p.a`, `p.b`.
    fn plane(&mut self, p: &PlaneRotation) -> Result<()> {
        let la = gray(p.a - 1, self.mu)?;
        let lb = gray(p.b - 1, self.mu)?;
        let dist = la.iter().zip(&lb).filter(|(x, y)| x != y).count() as u32;
        if dist > MAX_LABEL_DISTANCE {
            return Err(Error::Internal(format!(
                "dimensions {} and {} have labels at distance {dist}",
                p.a, p.b
            )));
        }
        let al = align_conjugation(&la, &lb)?;
        for g in &al.gates {
            self.conj(g, &al.condition)?;
        }
        let (s, c) = p.theta.sin_cos();
        let t = if al.first_is_low { rot2(c, s) } else { rot2(c, -s) };
        let mut controls: Vec<Control> = vec![(1, true)];
        controls.extend(al.pattern.controls().map(|(b, v)| (Self::data_line(b), v)));
        let target = Self::data_line(al.pattern.target());
        let (width, ancilla, count) = (self.width, self.ancilla, &mut self.count);
        let out = &mut *self.out;
        emit_lambda_r(&controls, target, &t, ancilla, width, &mut |g| {
            *count += 1;
            out(g)
        })?;
        for g in al.gates.iter().rev() {
            self.conj(g, &al.condition)?;
        }
        Ok(())
    }

    /// Controlled `S` (or `S^-1`) for input `0...0`: `Y~` on the paired bit.
    fn pairing(&mut self, inverse: bool) {
        let m = if inverse { y_tilde().transpose() } else { y_tilde() };
        for g in gray_to_binary_on(self.mu, 2) {
            self.push(g);
        }
        self.push(QcGate::Cu1 { control: 1, target: self.mu + 1, m });
        for g in binary_to_gray_on(self.mu, 2) {
            self.push(g);
        }
    }
}

fn rot2(c: f64, s: f64) -> Mat2 {
    Matrix2::new(
        C64::new(c, 0.0),
        C64::new(-s, 0.0),
        C64::new(s, 0.0),
        C64::new(c, 0.0),
    )
}

/// Plane rotations `f` of a gate's block in global dimensions, with the
/// block equal to `f[0] * f[1] * ...`.
fn gate_factors(g: &MgGate) -> Result<Vec<PlaneRotation>> {
    let block = OrthogonalMatrix::special(rot4_to_dense(&g.rotation()))?;
    let off = 2 * (g.line() - 1);
    Ok(givens_factor(&block)?
        .into_iter()
        .map(|f| PlaneRotation::new(f.a + off, f.b + off, f.theta))
        .collect())
}

fn check_source(c: &MatchgateCircuit) -> Result<usize> {
    let v = c.validate();
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    if !c.is_standard() {
        return Err(Error::NotStandardized(
            "input must be all zeros and the measured line 1".into(),
        ));
    }
    if !c.width.is_power_of_two() {
        return Err(Error::Range(format!(
            "width {} is not a power of two; pad with idle lines first",
            c.width
        )));
    }
    Ok((2 * c.width).trailing_zeros() as usize)
}

/// Compiles `c` gate by gate into `sink`; returns the number of gates
/// emitted. The compiled circuit has width [`compiled_width`] and input
/// `0...0`.
pub fn compress_stream(c: &MatchgateCircuit, mut sink: impl FnMut(QcGate)) -> Result<usize> {
    let mu = check_source(c)?;
    let mut e = Emitter {
        mu,
        width: mu + 2,
        ancilla: mu + 2,
        out: &mut sink,
        count: 0,
    };
    e.push(QcGate::H(1));
    // R^-1 = R_1^T ... R_N^T, with R_t^T = f[k-1]^T ... f[0]^T
    for g in c.gates.iter().rev() {
        for f in gate_factors(g)? {
            e.plane(&f.inverse())?;
        }
    }
    e.pairing(false);
    // R = R_N ... R_1, with R_t = f[0] ... f[k-1]
    for g in &c.gates {
        for f in gate_factors(g)?.iter().rev() {
            e.plane(f)?;
        }
    }
    e.pairing(true);
    e.push(QcGate::H(1));
    Ok(e.count)
}

pub fn compress_circuit(c: &MatchgateCircuit) -> Result<GeneralCircuit> {
    let mut gates = Vec::new();
    compress_stream(c, |g| gates.push(g))?;
    let width = compiled_width(c.width);
    Ok(GeneralCircuit::new(width, gates, vec![false; width]))
}
