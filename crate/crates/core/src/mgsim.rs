//! Classical simulation of matchgate circuits through the rotation
//! representation.
//!
//! With `R = R_N ... R_1` and a basis input `x`,
//!
//! ```text
//! <Z_k> = u_{2k-1}^T S(x) u_{2k},    u_j = R^T e_j
//! ```
//!
//! The fast path never forms `R`: it pulls `e_{2k-1}` and `e_{2k}` back
//! through the gates, each touching four coordinates.

use nalgebra::{DMatrix, DVector};

use crate::algebra::OrthogonalMatrix;
use crate::circuit::MatchgateCircuit;
use crate::{Error, Result};

/// Width limit of the dense reference path.
pub const REFERENCE_WIDTH_LIMIT: usize = 64;

/// Overshoot of `|<Z_k>|` past 1 that is silently clamped.
pub const CLAMP_TOL: f64 = 1e-9;
/// Overshoot that signals a numerical fault.
pub const OVERSHOOT_LIMIT: f64 = 1e-6;

/// `S(x)` for a basis input, kept as the per-pair signs.
///
/// Block `i` is `(-1)^{x_i} [[0, 1], [-1, 0]]` on dimensions `2i-1, 2i`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymmetricS {
    signs: Vec<f64>,
}

impl AntisymmetricS {
    pub fn dim(&self) -> usize {
        2 * self.signs.len()
    }

    /// `u^T S v`.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        self.signs
            .iter()
            .enumerate()
            .map(|(i, s)| s * (u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]))
            .sum()
    }

    /// `v <- S v`.
    pub fn apply(&self, v: &mut [f64]) {
        for (i, s) in self.signs.iter().enumerate() {
            let (a, b) = (v[2 * i], v[2 * i + 1]);
            v[2 * i] = s * b;
            v[2 * i + 1] = -s * a;
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (i, s) in self.signs.iter().enumerate() {
            m[(2 * i, 2 * i + 1)] = *s;
            m[(2 * i + 1, 2 * i)] = -s;
        }
        m
    }
}

pub fn s_matrix(x: &[bool]) -> AntisymmetricS {
    AntisymmetricS {
        signs: x.iter().map(|&b| if b { -1.0 } else { 1.0 }).collect(),
    }
}

fn check(c: &MatchgateCircuit) -> Result<()> {
    let v = c.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(v))
    }
}

/// `R^T e_j` for 1-based `j`, pulled back gate by gate.
pub fn pullback(c: &MatchgateCircuit, j: usize) -> Vec<f64> {
    let mut u = vec![0.0; 2 * c.width];
    u[j - 1] = 1.0;
    for g in c.gates.iter().rev() {
        let r = g.rotation();
        let off = 2 * (g.line() - 1);
        let w: [f64; 4] = std::array::from_fn(|a| u[off + a]);
        for b in 0..4 {
            u[off + b] = (0..4).map(|a| r[(a, b)] * w[a]).sum();
        }
    }
    u
}

pub fn simulate_expectation(c: &MatchgateCircuit) -> Result<f64> {
    check(c)?;
    let k = c.measure;
    let u1 = pullback(c, 2 * k - 1);
    let u2 = pullback(c, 2 * k);
    Ok(s_matrix(&c.input).bilinear(&u1, &u2))
}

/// Dense `R = R_N ... R_1`.
pub fn total_rotation(c: &MatchgateCircuit) -> Result<OrthogonalMatrix> {
    if c.width > REFERENCE_WIDTH_LIMIT {
        return Err(Error::Guard {
            what: "width",
            value: c.width,
            limit: REFERENCE_WIDTH_LIMIT,
        });
    }
    let dim = 2 * c.width;
    let mut r = DMatrix::<f64>::identity(dim, dim);
    for g in &c.gates {
        let mut big = DMatrix::<f64>::identity(dim, dim);
        let off = 2 * (g.line() - 1);
        big.view_mut((off, off), (4, 4)).copy_from(&g.rotation());
        r = big * r;
    }
    OrthogonalMatrix::special(r)
}

pub fn simulate_expectation_reference(c: &MatchgateCircuit) -> Result<f64> {
    check(c)?;
    let r = total_rotation(c)?;
    let s = s_matrix(&c.input).to_dense();
    let m = r.matrix() * s * r.matrix().transpose();
    let k = c.measure;
    Ok(m[(2 * k - 2, 2 * k - 1)])
}

/// `(p0, p1)` from `<Z_k>`.
pub fn distribution_from_expectation(z: f64) -> Result<(f64, f64)> {
    if !z.is_finite() || z.abs() > 1.0 + OVERSHOOT_LIMIT {
        return Err(Error::Internal(format!("<Z> = {z} outside [-1, 1]")));
    }
    let z = z.clamp(-1.0, 1.0);
    Ok((((1.0 + z) / 2.0).clamp(0.0, 1.0), ((1.0 - z) / 2.0).clamp(0.0, 1.0)))
}

pub fn output_distribution(c: &MatchgateCircuit) -> Result<(f64, f64)> {
    distribution_from_expectation(simulate_expectation(c)?)
}

/// `sum_{j,l} R[2k-1, j] R[2k, l] <x| -i c_j c_l |x>` with every term kept,
/// the diagonal included, evaluated on dense Jordan-Wigner operators.
/// Returns the complex total as `(re, im)`.
pub fn full_sum_dense(c: &MatchgateCircuit) -> Result<(f64, f64)> {
    use crate::algebra::jordan_wigner;
    use crate::oracle::Statevector;
    use crate::C64;
    check(c)?;
    let r = total_rotation(c)?;
    let n = c.width;
    let psi = DVector::from_vec(Statevector::basis(&c.input)?.amplitudes().to_vec());
    let cs: Vec<DMatrix<C64>> = (1..=2 * n).map(|j| jordan_wigner(n, j)).collect::<Result<_>>()?;
    let k = c.measure;
    let mut total = C64::new(0.0, 0.0);
    for j in 0..2 * n {
        for l in 0..2 * n {
            let op = &cs[j] * &cs[l] * C64::new(0.0, -1.0);
            let amp = (psi.adjoint() * op * &psi)[(0, 0)];
            total += amp * r.matrix()[(2 * k - 2, j)] * r.matrix()[(2 * k - 1, l)];
        }
    }
    Ok((total.re, total.im))
}
