//! The two circuit flavors.
//!
//! Lines are numbered from 1. A matchgate application names only its
//! upper line `k`; it acts on `(k, k+1)`.

use std::fmt;

use nalgebra::DMatrix;

use crate::algebra::{
    self, fermionic_swap, gxx, kron2, mat2_to_dense, mat4_to_dense, plane_rotation_unitary,
    rotation_of_unitary, unitarity_deviation, Mat2, Mat4, PlaneRotation, Rot4,
};
use crate::{Error, Result, C64, TOL};

/// Coordinate planes of the local operators `c'_1..c'_4`, in the order
/// used by the `plane=` field of `rot` gates.
pub const PLANES: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

pub fn plane_index(a: usize, b: usize) -> Option<u8> {
    PLANES
        .iter()
        .position(|&p| p == (a, b))
        .map(|i| i as u8 + 1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MgGate {
    /// Fermionic swap `G(Z, X)`.
    W { line: usize },
    /// `G(X, X)`.
    Gxx { line: usize },
    /// `exp((theta/2) c'_a c'_b)` for `(a, b) = PLANES[plane - 1]`.
    Rot { line: usize, plane: u8, theta: f64 },
    /// `G(A, B)` given by its blocks.
    Explicit { line: usize, a: Mat2, b: Mat2 },
}

impl MgGate {
    pub fn line(&self) -> usize {
        match *self {
            MgGate::W { line }
            | MgGate::Gxx { line }
            | MgGate::Rot { line, .. }
            | MgGate::Explicit { line, .. } => line,
        }
    }

    pub fn unitary(&self) -> Mat4 {
        match self {
            MgGate::W { .. } => fermionic_swap().unitary(),
            MgGate::Gxx { .. } => gxx().unitary(),
            MgGate::Rot { plane, theta, .. } => {
                plane_rotation_unitary(&self.rot_as_plane_rotation(*plane, *theta))
            }
            MgGate::Explicit { a, b, .. } => algebra::embed_blocks(a, b),
        }
    }

    // exp((theta/2) c'_a c'_b) rotates by -theta in the (a, b) plane.
    fn rot_as_plane_rotation(&self, plane: u8, theta: f64) -> PlaneRotation {
        let (a, b) = PLANES[plane as usize - 1];
        PlaneRotation::new(a, b, -theta)
    }

    /// The local SO(4) block acting on dimensions `2k-1 ..= 2k+2`.
    pub fn rotation(&self) -> Rot4 {
        match self {
            MgGate::W { .. } => {
                let mut r = Rot4::zeros();
                r[(0, 2)] = 1.0;
                r[(1, 3)] = 1.0;
                r[(2, 0)] = 1.0;
                r[(3, 1)] = 1.0;
                r
            }
            MgGate::Gxx { .. } => Rot4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, 1.0)),
            MgGate::Rot { plane, theta, .. } => {
                let p = self.rot_as_plane_rotation(*plane, *theta);
                let m = p.to_matrix(4);
                Rot4::from_fn(|r, c| m[(r, c)])
            }
            MgGate::Explicit { .. } => rotation_of_unitary(&self.unitary()),
        }
    }

    /// A `rot` gate realizing the plane rotation `p` (local indices).
    pub fn from_plane_rotation(line: usize, p: &PlaneRotation) -> MgGate {
        let plane = plane_index(p.a, p.b).expect("plane inside a 4-dim window");
        MgGate::Rot { line, plane, theta: -p.theta }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MgGate::W { .. } => "w",
            MgGate::Gxx { .. } => "gxx",
            MgGate::Rot { .. } => "rot",
            MgGate::Explicit { .. } => "mg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QcGate {
    X(usize),
    H(usize),
    U1 { q: usize, m: Mat2 },
    /// `m` acts on `|q1 q2>` with `q1` as the upper tensor factor.
    U2 { q1: usize, q2: usize, m: Mat4 },
    /// Applies `m` to `target` when `control` is 1.
    Cu1 { control: usize, target: usize, m: Mat2 },
}

impl QcGate {
    pub fn lines(&self) -> Vec<usize> {
        match *self {
            QcGate::X(q) | QcGate::H(q) | QcGate::U1 { q, .. } => vec![q],
            QcGate::U2 { q1, q2, .. } => vec![q1, q2],
            QcGate::Cu1 { control, target, .. } => vec![control, target],
        }
    }

    pub fn cx(control: usize, target: usize) -> QcGate {
        QcGate::Cu1 {
            control,
            target,
            m: algebra::pauli_x(),
        }
    }

    /// Dense matrix on [`QcGate::lines`], first line most significant.
    pub fn matrix(&self) -> DMatrix<C64> {
        match self {
            QcGate::X(_) => mat2_to_dense(&algebra::pauli_x()),
            QcGate::H(_) => mat2_to_dense(&algebra::hadamard()),
            QcGate::U1 { m, .. } => mat2_to_dense(m),
            QcGate::U2 { m, .. } => mat4_to_dense(m),
            QcGate::Cu1 { m, .. } => {
                let p0 = Mat2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0));
                let p1 = Mat2::identity() - p0;
                mat4_to_dense(&(kron2(&p0, &Mat2::identity()) + kron2(&p1, m)))
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            QcGate::X(_) => "x",
            QcGate::H(_) => "h",
            QcGate::U1 { .. } => "u1",
            QcGate::U2 { .. } => "u2",
            QcGate::Cu1 { .. } => "cu1",
        }
    }
}

/// A matchgate circuit `MG(n; N; x; k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchgateCircuit {
    pub width: usize,
    pub gates: Vec<MgGate>,
    pub input: Vec<bool>,
    pub measure: usize,
    /// Waives the `N >= n/2` size rule for circuits that carry idle
    /// lines, such as power-of-two padding.
    pub allow_idle: bool,
}

impl MatchgateCircuit {
    pub fn new(width: usize, gates: Vec<MgGate>, input: Vec<bool>, measure: usize) -> Self {
        MatchgateCircuit {
            width,
            gates,
            input,
            measure,
            allow_idle: false,
        }
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn is_standard(&self) -> bool {
        self.measure == 1 && self.input.iter().all(|&b| !b)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.width;
        if n == 0 {
            out.push(Violation::circuit("width must be positive"));
        }
        if self.input.len() != n {
            out.push(Violation::circuit(format!(
                "input has {} bits, width is {n}",
                self.input.len()
            )));
        }
        if self.measure == 0 || self.measure > n {
            out.push(Violation::circuit(format!(
                "measured line {} outside 1..={n}",
                self.measure
            )));
        }
        if !self.allow_idle && 2 * self.gates.len() < n {
            out.push(Violation::circuit(format!(
                "size {} below width/2 leaves idle lines",
                self.gates.len()
            )));
        }
        for (i, g) in self.gates.iter().enumerate() {
            let k = g.line();
            if k == 0 || k + 1 > n {
                out.push(Violation::gate(i, format!("line {k} requires width ≥ {}", k + 1)));
            }
            match g {
                MgGate::Rot { plane, theta, .. } => {
                    if !(1..=6).contains(plane) {
                        out.push(Violation::gate(i, format!("plane {plane} outside 1..=6")));
                    }
                    if !theta.is_finite() {
                        out.push(Violation::gate(i, "angle is not finite"));
                    }
                }
                MgGate::Explicit { a, b, .. } => {
                    for (name, m) in [("A", a), ("B", b)] {
                        let dev = unitarity_deviation(&mat2_to_dense(m));
                        if dev.is_nan() || dev > TOL {
                            out.push(Violation::gate(i, format!("non-unitary {name} (deviation {dev:.3e})")));
                        }
                    }
                    let det = |m: &Mat2| m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
                    let gap = (det(a) - det(b)).norm();
                    if gap.is_nan() || gap > TOL {
                        out.push(Violation::gate(i, format!("det(A) ≠ det(B) (gap {gap:.3e})")));
                    }
                }
                MgGate::W { .. } | MgGate::Gxx { .. } => {}
            }
        }
        out
    }

    pub fn validated(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Invalid(v))
        }
    }
}

/// A general circuit `QC(m; M; y)`, measured on line 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralCircuit {
    pub width: usize,
    pub gates: Vec<QcGate>,
    pub input: Vec<bool>,
}

impl GeneralCircuit {
    pub fn new(width: usize, gates: Vec<QcGate>, input: Vec<bool>) -> Self {
        GeneralCircuit { width, gates, input }
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let m = self.width;
        if m == 0 {
            out.push(Violation::circuit("width must be positive"));
        }
        if self.input.len() != m {
            out.push(Violation::circuit(format!(
                "input has {} bits, width is {m}",
                self.input.len()
            )));
        }
        for (i, g) in self.gates.iter().enumerate() {
            let lines = g.lines();
            for &q in &lines {
                if q == 0 || q > m {
                    out.push(Violation::gate(i, format!("line {q} outside 1..={m}")));
                }
            }
            if lines.len() == 2 && lines[0] == lines[1] {
                out.push(Violation::gate(i, format!("repeated line {}", lines[0])));
            }
            let dev = match g {
                QcGate::U1 { m, .. } | QcGate::Cu1 { m, .. } => unitarity_deviation(&mat2_to_dense(m)),
                QcGate::U2 { m, .. } => unitarity_deviation(&mat4_to_dense(m)),
                QcGate::X(_) | QcGate::H(_) => 0.0,
            };
            if dev.is_nan() || dev > TOL {
                out.push(Violation::gate(i, format!("non-unitary (deviation {dev:.3e})")));
            }
        }
        out
    }

    pub fn validated(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Invalid(v))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Circuit {
    Matchgate(MatchgateCircuit),
    General(GeneralCircuit),
}

impl Circuit {
    pub fn width(&self) -> usize {
        match self {
            Circuit::Matchgate(c) => c.width,
            Circuit::General(c) => c.width,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Circuit::Matchgate(c) => c.size(),
            Circuit::General(c) => c.size(),
        }
    }

    /// Line whose `Z` expectation is the circuit's output.
    pub fn measured_line(&self) -> usize {
        match self {
            Circuit::Matchgate(c) => c.measure,
            Circuit::General(_) => 1,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Circuit::Matchgate(c) => c.validate(),
            Circuit::General(c) => c.validate(),
        }
    }
}

impl From<MatchgateCircuit> for Circuit {
    fn from(c: MatchgateCircuit) -> Self {
        Circuit::Matchgate(c)
    }
}

impl From<GeneralCircuit> for Circuit {
    fn from(c: GeneralCircuit) -> Self {
        Circuit::General(c)
    }
}

/// One broken rule, optionally attributed to a gate (0-based index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub gate: Option<usize>,
    pub rule: String,
}

impl Violation {
    fn circuit(rule: impl Into<String>) -> Self {
        Violation { gate: None, rule: rule.into() }
    }

    fn gate(index: usize, rule: impl Into<String>) -> Self {
        Violation {
            gate: Some(index),
            rule: rule.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gate {
            Some(i) => write!(f, "gate {i}: {}", self.rule),
            None => write!(f, "{}", self.rule),
        }
    }
}

pub fn bits_from_str(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pauli_x, pauli_z};

    fn one_gate(g: MgGate, width: usize) -> MatchgateCircuit {
        MatchgateCircuit::new(width, vec![g], vec![false; width], 1)
    }

    #[test]
    fn swap_pair_violates_determinant() {
        let c = one_gate(MgGate::Explicit { line: 1, a: Mat2::identity(), b: pauli_x() }, 2);
        let v = c.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].rule.starts_with("det(A) ≠ det(B)"));
        assert_eq!(v[0].gate, Some(0));
    }

    #[test]
    fn fermionic_swap_pair_is_valid() {
        let c = one_gate(MgGate::Explicit { line: 1, a: pauli_z(), b: pauli_x() }, 2);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn perturbed_unitary_flagged() {
        let mut a = Mat2::identity();
        a[(0, 1)] = C64::new(1e-3, 0.0);
        let c = GeneralCircuit::new(1, vec![QcGate::U1 { q: 1, m: a }], vec![false]);
        let v = c.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].rule.starts_with("non-unitary"));
    }

    #[test]
    fn line_bound_message() {
        let v = one_gate(MgGate::W { line: 2 }, 2).validate();
        assert_eq!(v[0].rule, "line 2 requires width ≥ 3");
    }

    #[test]
    fn size_rule_and_idle_flag() {
        let mut c = one_gate(MgGate::W { line: 1 }, 4);
        c.input = vec![false; 4];
        assert!(!c.validate().is_empty());
        c.allow_idle = true;
        assert!(c.validate().is_empty());
    }

    #[test]
    fn named_rotations_match_unitaries() {
        for g in [
            MgGate::W { line: 1 },
            MgGate::Gxx { line: 1 },
            MgGate::Rot { line: 1, plane: 3, theta: 0.4 },
            MgGate::Rot { line: 1, plane: 6, theta: -2.0 },
        ] {
            let fast = g.rotation();
            let slow = rotation_of_unitary(&g.unitary());
            assert!((fast - slow).abs().max() < 1e-14, "{g:?}");
        }
    }

    #[test]
    fn cu1_matrix_is_controlled() {
        let g = QcGate::cx(1, 2);
        let m = g.matrix();
        assert_eq!(m[(3, 2)], C64::new(1.0, 0.0));
        assert_eq!(m[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(m[(2, 2)], C64::new(0.0, 0.0));
    }
}
