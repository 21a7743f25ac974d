//! Matchgates, Jordan-Wigner operators and the rotation representation.
//!
//! A matchgate `G(A, B)` acts as `A` on the even-parity subspace
//! `span{|00>, |11>}` and as `B` on the odd-parity subspace
//! `span{|01>, |10>}`. Conjugation by a matchgate on lines `(k, k+1)`
//! rotates the four Jordan-Wigner operators `c_{2k-1} .. c_{2k+2}` among
//! themselves by a matrix in SO(4):
//!
//! ```text
//! U^dag c_j U = sum_l R[j, l] c_l
//! ```
//!
//! Indices in this module follow the circuit conventions: lines and
//! dimensions are 1-based, and the first tensor factor of a two-qubit
//! matrix is the upper line (most significant bit of the basis index).

use std::sync::LazyLock;

use nalgebra::{DMatrix, Matrix2, Matrix4};

use crate::{Error, Result, C64, TOL};

pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Rot4 = Matrix4<f64>;

/// Dense width limit for Jordan-Wigner realizations.
pub const DENSE_WIDTH_LIMIT: usize = 14;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn pauli_x() -> Mat2 {
    Mat2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Mat2 {
    Mat2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, -ONE)
}

pub fn hadamard() -> Mat2 {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Mat2::new(h, h, h, -h)
}

/// `Y~ = iY = [[0, 1], [-1, 0]]`.
pub fn y_tilde() -> Mat2 {
    Mat2::new(ZERO, ONE, -ONE, ZERO)
}

pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Largest entry of `|M^dag M - I|`.
pub fn unitarity_deviation(m: &DMatrix<C64>) -> f64 {
    let p = m.adjoint() * m;
    let mut dev = 0.0f64;
    for r in 0..p.nrows() {
        for c in 0..p.ncols() {
            let target = if r == c { ONE } else { ZERO };
            dev = dev.max((p[(r, c)] - target).norm());
        }
    }
    dev
}

pub fn mat2_to_dense(m: &Mat2) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |r, c| m[(r, c)])
}

pub fn mat4_to_dense(m: &Mat4) -> DMatrix<C64> {
    DMatrix::from_fn(4, 4, |r, c| m[(r, c)])
}

/// A 2x2 unitary, checked to [`TOL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    pub fn new(m: Mat2) -> Result<Self> {
        let dev = unitarity_deviation(&mat2_to_dense(&m));
        if dev > TOL {
            return Err(Error::NonUnitary(dev));
        }
        Ok(Unitary2(m))
    }

    pub fn identity() -> Self {
        Unitary2(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn det(&self) -> C64 {
        self.0[(0, 0)] * self.0[(1, 1)] - self.0[(0, 1)] * self.0[(1, 0)]
    }
}

/// A validated pair `(A, B)` with equal determinants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matchgate {
    pub a: Unitary2,
    pub b: Unitary2,
}

impl Matchgate {
    pub fn new(a: Unitary2, b: Unitary2) -> Result<Self> {
        let gap = (a.det() - b.det()).norm();
        if gap > TOL {
            return Err(Error::DeterminantMismatch(gap));
        }
        Ok(Matchgate { a, b })
    }

    pub fn from_matrices(a: Mat2, b: Mat2) -> Result<Self> {
        Matchgate::new(Unitary2::new(a)?, Unitary2::new(b)?)
    }

    /// The 4x4 matrix `G(A, B)`.
    pub fn unitary(&self) -> Mat4 {
        embed_blocks(self.a.matrix(), self.b.matrix())
    }

    /// Reads `(A, B)` back out of a 4x4 matrix with matchgate block
    /// structure; fails if the matrix mixes the parity sectors.
    pub fn from_unitary(u: &Mat4) -> Result<Self> {
        const EVEN: [usize; 2] = [0, 3];
        const ODD: [usize; 2] = [1, 2];
        for &r in &EVEN {
            for &c in &ODD {
                let leak = u[(r, c)].norm().max(u[(c, r)].norm());
                if leak > TOL {
                    return Err(Error::Range(format!(
                        "matrix couples parity sectors (entry magnitude {leak:.3e})"
                    )));
                }
            }
        }
        let a = Mat2::new(u[(0, 0)], u[(0, 3)], u[(3, 0)], u[(3, 3)]);
        let b = Mat2::new(u[(1, 1)], u[(1, 2)], u[(2, 1)], u[(2, 2)]);
        Matchgate::from_matrices(a, b)
    }

    pub fn rotation(&self) -> Rot4 {
        rotation_of_unitary(&self.unitary())
    }
}

/// Places `a` on the even-parity sector and `b` on the odd one.
pub fn embed_blocks(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut g = Mat4::zeros();
    g[(0, 0)] = a[(0, 0)];
    g[(0, 3)] = a[(0, 1)];
    g[(3, 0)] = a[(1, 0)];
    g[(3, 3)] = a[(1, 1)];
    g[(1, 1)] = b[(0, 0)];
    g[(1, 2)] = b[(0, 1)];
    g[(2, 1)] = b[(1, 0)];
    g[(2, 2)] = b[(1, 1)];
    g
}

/// The matrix of `G(A, B)`, rejecting invalid pairs.
pub fn make_matchgate(a: &Unitary2, b: &Unitary2) -> Result<Mat4> {
    Ok(Matchgate::new(*a, *b)?.unitary())
}

/// `W = G(Z, X)`: swaps adjacent lines with a sign on `|11>`.
pub fn fermionic_swap() -> Matchgate {
    Matchgate {
        a: Unitary2(pauli_z()),
        b: Unitary2(pauli_x()),
    }
}

/// `G(X, X)`, which maps `|00>` to `|11>`.
pub fn gxx() -> Matchgate {
    Matchgate {
        a: Unitary2(pauli_x()),
        b: Unitary2(pauli_x()),
    }
}

/// Dense `c_j` on `n` lines: `Z^(k-1) X I^(n-k)` for `j = 2k-1` and
/// `Z^(k-1) Y I^(n-k)` for `j = 2k`.
pub fn jordan_wigner(n: usize, j: usize) -> Result<DMatrix<C64>> {
    if n > DENSE_WIDTH_LIMIT {
        return Err(Error::Guard {
            what: "width",
            value: n,
            limit: DENSE_WIDTH_LIMIT,
        });
    }
    if n == 0 || j == 0 || j > 2 * n {
        return Err(Error::Range(format!(
            "Jordan-Wigner index {j} outside 1..={}",
            2 * n
        )));
    }
    let k = j.div_ceil(2);
    let slot = if j % 2 == 1 { pauli_x() } else { pauli_y() };
    let mut m = DMatrix::from_element(1, 1, ONE);
    for line in 1..=n {
        let f = match line.cmp(&k) {
            std::cmp::Ordering::Less => pauli_z(),
            std::cmp::Ordering::Equal => slot,
            std::cmp::Ordering::Greater => Mat2::identity(),
        };
        m = m.kronecker(&mat2_to_dense(&f));
    }
    Ok(m)
}

/// A matrix with a single nonzero entry per row: row `r` holds
/// `phase[r]` in column `col[r]`. All Pauli strings have this shape.
#[derive(Debug, Clone, Copy)]
struct Monomial4 {
    col: [usize; 4],
    phase: [C64; 4],
}

impl Monomial4 {
    fn from_dense(m: &Mat4) -> Self {
        let mut col = [0; 4];
        let mut phase = [ZERO; 4];
        for r in 0..4 {
            let c = (0..4)
                .find(|&c| m[(r, c)].norm() > 0.5)
                .expect("Pauli string rows are nonzero");
            col[r] = c;
            phase[r] = m[(r, c)];
        }
        Monomial4 { col, phase }
    }
}

/// The two-line operators `c'_1..c'_4 = X I, Y I, Z X, Z Y`.
pub fn local_majorana(j: usize) -> Mat4 {
    assert!((1..=4).contains(&j), "local Majorana index {j} outside 1..=4");
    match j {
        1 => kron2(&pauli_x(), &Mat2::identity()),
        2 => kron2(&pauli_y(), &Mat2::identity()),
        3 => kron2(&pauli_z(), &pauli_x()),
        _ => kron2(&pauli_z(), &pauli_y()),
    }
}

static LOCAL_MAJORANAS: LazyLock<[Monomial4; 4]> =
    LazyLock::new(|| std::array::from_fn(|i| Monomial4::from_dense(&local_majorana(i + 1))));

/// `R[j, l] = tr(U^dag c'_j U c'_l) / 4` for any two-qubit unitary.
///
/// For a matchgate the result is special orthogonal; for other unitaries
/// the imaginary parts (discarded here) need not vanish.
pub fn rotation_of_unitary(u: &Mat4) -> Rot4 {
    let cs = &*LOCAL_MAJORANAS;
    let ud = u.adjoint();
    let mut r = Rot4::zeros();
    for (j, cj) in cs.iter().enumerate() {
        // c_j U permutes and rephases the rows of U
        let cu = Mat4::from_fn(|row, c| cj.phase[row] * u[(cj.col[row], c)]);
        let w = ud * cu;
        for (l, cl) in cs.iter().enumerate() {
            let mut tr = ZERO;
            for s in 0..4 {
                tr += w[(cl.col[s], s)] * cl.phase[s];
            }
            r[(j, l)] = tr.re / 4.0;
        }
    }
    r
}

pub fn rotation_of_matchgate(g: &Matchgate) -> OrthogonalMatrix {
    OrthogonalMatrix(rot4_to_dense(&g.rotation()))
}

pub fn rot4_to_dense(r: &Rot4) -> DMatrix<f64> {
    DMatrix::from_fn(4, 4, |i, j| r[(i, j)])
}

/// Two-qubit unitary whose rotation is `rot` (embedded in a 4-dim window).
///
/// `exp(phi c'_a c'_b)` rotates `c'_a` toward `c'_b` by `2 phi` with
/// `R[a, b] = +sin(2 phi)`, which is the transpose of the plane-rotation
/// convention used here, hence the negated half angle.
pub fn plane_rotation_unitary(rot: &PlaneRotation) -> Mat4 {
    assert!(rot.b <= 4, "plane ({}, {}) outside a 4-dim window", rot.a, rot.b);
    let (a, b) = (local_majorana(rot.a), local_majorana(rot.b));
    let half = -rot.theta / 2.0;
    Mat4::identity() * C64::new(half.cos(), 0.0) + a * b * C64::new(half.sin(), 0.0)
}

/// Some matchgate (unique up to phase) whose rotation is `r`.
pub fn matchgate_of_rotation(r: &OrthogonalMatrix) -> Result<Matchgate> {
    if r.dim() != 4 {
        return Err(Error::Range(format!(
            "expected a 4x4 rotation, got {}x{}",
            r.dim(),
            r.dim()
        )));
    }
    let factors = givens_factor(r)?;
    let u = factors
        .iter()
        .fold(Mat4::identity(), |acc, f| acc * plane_rotation_unitary(f));
    Matchgate::from_unitary(&u)
}

/// Dense real matrix satisfying `M^T M = I` to [`TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMatrix(DMatrix<f64>);

impl OrthogonalMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSpecialOrthogonal(format!(
                "{}x{} is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let dev = orthogonality_deviation(&m);
        if dev > TOL {
            return Err(Error::NotSpecialOrthogonal(format!(
                "deviation from orthogonality {dev:.3e}"
            )));
        }
        Ok(OrthogonalMatrix(m))
    }

    /// Like [`OrthogonalMatrix::new`], additionally requiring `det = +1`.
    pub fn special(m: DMatrix<f64>) -> Result<Self> {
        let o = OrthogonalMatrix::new(m)?;
        let det = o.det();
        if (det - 1.0).abs() > TOL {
            return Err(Error::NotSpecialOrthogonal(format!("determinant {det}")));
        }
        Ok(o)
    }

    pub fn identity(dim: usize) -> Self {
        OrthogonalMatrix(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn det(&self) -> f64 {
        self.0.clone().determinant()
    }

    pub fn transpose(&self) -> Self {
        OrthogonalMatrix(self.0.transpose())
    }
}

pub fn orthogonality_deviation(m: &DMatrix<f64>) -> f64 {
    let p = m.transpose() * m;
    let mut dev = 0.0f64;
    for r in 0..p.nrows() {
        for c in 0..p.ncols() {
            let target = if r == c { 1.0 } else { 0.0 };
            dev = dev.max((p[(r, c)] - target).abs());
        }
    }
    dev
}

/// Rotation by `theta` in the coordinate plane `(a, b)`, `a < b`, 1-based.
///
/// Within the plane it acts as `[[cos, -sin], [sin, cos]]`, so that
/// `e_a -> cos e_a + sin e_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneRotation {
    pub a: usize,
    pub b: usize,
    pub theta: f64,
}

impl PlaneRotation {
    pub fn new(a: usize, b: usize, theta: f64) -> Self {
        assert!(a >= 1 && a < b, "plane ({a}, {b}) must satisfy 1 <= a < b");
        PlaneRotation { a, b, theta }
    }

    /// Same rotation described with the plane indices in either order.
    pub fn oriented(a: usize, b: usize, theta: f64) -> Self {
        if a < b {
            PlaneRotation::new(a, b, theta)
        } else {
            PlaneRotation::new(b, a, -theta)
        }
    }

    pub fn inverse(&self) -> Self {
        PlaneRotation { theta: -self.theta, ..*self }
    }

    pub fn to_matrix(&self, dim: usize) -> DMatrix<f64> {
        let mut m = DMatrix::identity(dim, dim);
        let (s, c) = self.theta.sin_cos();
        let (a, b) = (self.a - 1, self.b - 1);
        m[(a, a)] = c;
        m[(b, b)] = c;
        m[(a, b)] = -s;
        m[(b, a)] = s;
        m
    }

    /// `v <- P v`.
    pub fn apply(&self, v: &mut [f64]) {
        let (s, c) = self.theta.sin_cos();
        let (x, y) = (v[self.a - 1], v[self.b - 1]);
        v[self.a - 1] = c * x - s * y;
        v[self.b - 1] = s * x + c * y;
    }
}

/// Angles smaller than this are dropped from factorizations.
pub const ANGLE_EPS: f64 = 1e-12;

/// Factors a special orthogonal matrix into plane rotations
/// `r = f[0] * f[1] * ... * f[k-1]` with `k <= d(d-1)/2`.
///
/// Column-by-column elimination: rotations in planes `(j, i)` zero the
/// subdiagonal of column `j`, leaving the identity.
pub fn givens_factor(r: &OrthogonalMatrix) -> Result<Vec<PlaneRotation>> {
    let d = r.dim();
    let mut work = r.matrix().clone();
    let mut factors = Vec::new();
    for j in 0..d.saturating_sub(1) {
        for i in (j + 1..d).rev() {
            let (x, y) = (work[(j, j)], work[(i, j)]);
            if y == 0.0 && x >= 0.0 {
                continue;
            }
            let phi = y.atan2(x);
            // left-multiply by the inverse rotation P(j, i, phi)^T
            let (s, c) = phi.sin_cos();
            for col in 0..d {
                let (p, q) = (work[(j, col)], work[(i, col)]);
                work[(j, col)] = c * p + s * q;
                work[(i, col)] = -s * p + c * q;
            }
            if phi.abs() >= ANGLE_EPS {
                factors.push(PlaneRotation::new(j + 1, i + 1, phi));
            }
        }
    }
    if d > 0 && work[(d - 1, d - 1)] < 0.0 {
        return Err(Error::NotSpecialOrthogonal("determinant -1".into()));
    }
    Ok(factors)
}

/// Dense product `f[0] * f[1] * ... ` in dimension `dim`.
pub fn compose_rotations(factors: &[PlaneRotation], dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::identity(dim, dim);
    for f in factors.iter().rev() {
        for col in 0..dim {
            let mut v = [m[(f.a - 1, col)], m[(f.b - 1, col)]];
            let (s, c) = f.theta.sin_cos();
            v = [c * v[0] - s * v[1], s * v[0] + c * v[1]];
            m[(f.a - 1, col)] = v[0];
            m[(f.b - 1, col)] = v[1];
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).abs().max()
    }

    fn random_so(d: usize, rng: &mut impl Rng) -> OrthogonalMatrix {
        let mut m = DMatrix::<f64>::identity(d, d);
        for _ in 0..3 {
            for a in 1..=d {
                for b in a + 1..=d {
                    let p = PlaneRotation::new(a, b, rng.random_range(-3.1..3.1));
                    m = p.to_matrix(d) * m;
                }
            }
        }
        OrthogonalMatrix::special(m).unwrap()
    }

    #[test]
    fn identity_pair_gives_identity() {
        let g = make_matchgate(&Unitary2::identity(), &Unitary2::identity()).unwrap();
        assert_eq!(g, Mat4::identity());
    }

    #[test]
    fn fermionic_swap_layout() {
        let w = fermionic_swap().unitary();
        let mut expected = Mat4::zeros();
        expected[(0, 0)] = ONE;
        expected[(3, 3)] = -ONE;
        expected[(1, 2)] = ONE;
        expected[(2, 1)] = ONE;
        assert_eq!(w, expected);
        assert_eq!(w * w, Mat4::identity());
        // W|01> = |10>, W|11> = -|11>
        assert_eq!(w[(2, 1)], ONE);
        assert_eq!(w[(3, 3)], -ONE);
    }

    #[test]
    fn gxx_maps_00_to_11() {
        let g = gxx().unitary();
        assert_eq!(g[(3, 0)], ONE);
        assert_eq!(g[(0, 3)], ONE);
        assert_eq!(g[(0, 0)], ZERO);
    }

    #[test]
    fn swap_is_not_a_matchgate() {
        let err = Matchgate::from_matrices(Mat2::identity(), pauli_x()).unwrap_err();
        assert!(matches!(err, Error::DeterminantMismatch(_)));
        assert!(Matchgate::from_matrices(pauli_z(), pauli_x()).is_ok());
    }

    #[test]
    fn non_unitary_rejected() {
        let mut m = Mat2::identity();
        m[(0, 0)] = C64::new(1.001, 0.0);
        assert!(matches!(Unitary2::new(m), Err(Error::NonUnitary(_))));
    }

    #[test]
    fn jordan_wigner_small_cases() {
        assert_eq!(jordan_wigner(1, 1).unwrap(), mat2_to_dense(&pauli_x()));
        let zy = mat2_to_dense(&pauli_z()).kronecker(&mat2_to_dense(&pauli_y()));
        assert_eq!(jordan_wigner(2, 4).unwrap(), zy);
        assert!(jordan_wigner(2, 5).is_err());
        assert!(matches!(jordan_wigner(15, 1), Err(Error::Guard { .. })));
    }

    #[test]
    fn jordan_wigner_anticommutation() {
        let n = 3;
        let cs: Vec<_> = (1..=2 * n).map(|j| jordan_wigner(n, j).unwrap()).collect();
        let id = DMatrix::<C64>::identity(8, 8);
        for (j, cj) in cs.iter().enumerate() {
            for (l, cl) in cs.iter().enumerate() {
                let ac = cj * cl + cl * cj;
                let expected = if j == l { &id * C64::new(2.0, 0.0) } else { id.scale(0.0) };
                assert!((ac - expected).iter().all(|z| z.norm() < 1e-14));
            }
        }
    }

    #[test]
    fn local_majoranas_match_two_line_jordan_wigner() {
        for j in 1..=4 {
            assert_eq!(mat4_to_dense(&local_majorana(j)), jordan_wigner(2, j).unwrap());
        }
    }

    #[test]
    fn swap_rotation_is_pair_exchange() {
        let r = fermionic_swap().rotation();
        let mut expected = Rot4::zeros();
        expected[(0, 2)] = 1.0;
        expected[(1, 3)] = 1.0;
        expected[(2, 0)] = 1.0;
        expected[(3, 1)] = 1.0;
        assert!((r - expected).abs().max() < 1e-15);
    }

    #[test]
    fn rotation_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g1 = crate::random::random_matchgate(&mut rng);
            let g2 = crate::random::random_matchgate(&mut rng);
            let r12 = rotation_of_unitary(&(g2.unitary() * g1.unitary()));
            let prod = g2.rotation() * g1.rotation();
            assert!((r12 - prod).abs().max() < 1e-9);
        }
    }

    #[test]
    fn plane_rotation_unitary_sign() {
        for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let p = PlaneRotation::new(a, b, 0.7);
            let r = rotation_of_unitary(&plane_rotation_unitary(&p));
            assert!(max_abs_diff(&rot4_to_dense(&r), &p.to_matrix(4)) < 1e-14);
        }
    }

    #[test]
    fn givens_identity_and_single_rotation() {
        assert!(givens_factor(&OrthogonalMatrix::identity(4)).unwrap().is_empty());
        for (a, b) in [(1, 2), (2, 4), (3, 4), (1, 4)] {
            let p = PlaneRotation::new(a, b, -1.3);
            let f = givens_factor(&OrthogonalMatrix::special(p.to_matrix(4)).unwrap()).unwrap();
            assert_eq!(f.len(), 1);
            assert_eq!((f[0].a, f[0].b), (a, b));
            assert!((f[0].theta + 1.3).abs() < 1e-12);
        }
    }

    #[test]
    fn givens_reproduces_random_so() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [2, 3, 4, 8] {
            for _ in 0..20 {
                let r = random_so(d, &mut rng);
                let f = givens_factor(&r).unwrap();
                assert!(f.len() <= d * (d - 1) / 2);
                assert!(f.iter().all(|p| p.theta.is_finite() && p.theta.abs() <= std::f64::consts::PI));
                assert!(max_abs_diff(&compose_rotations(&f, d), r.matrix()) < 1e-10);
            }
        }
    }

    #[test]
    fn givens_rejects_reflection() {
        let mut m = DMatrix::<f64>::identity(4, 4);
        m[(2, 2)] = -1.0;
        let o = OrthogonalMatrix::new(m).unwrap();
        assert!(givens_factor(&o).is_err());
        assert!(OrthogonalMatrix::new(DMatrix::from_element(2, 2, 1.0)).is_err());
    }

    #[test]
    fn matchgate_of_rotation_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let r = random_so(4, &mut rng);
            let g = matchgate_of_rotation(&r).unwrap();
            assert!(max_abs_diff(rotation_of_matchgate(&g).matrix(), r.matrix()) < 1e-8);
        }
        let id = matchgate_of_rotation(&OrthogonalMatrix::identity(4)).unwrap();
        assert_eq!(id.unitary(), Mat4::identity());
    }

    #[test]
    fn swap_recovered_up_to_phase() {
        let w = fermionic_swap();
        let back = matchgate_of_rotation(&rotation_of_matchgate(&w)).unwrap();
        let overlap = (w.unitary().adjoint() * back.unitary()).trace().norm();
        assert!((overlap - 4.0).abs() < 1e-7);
    }

    #[test]
    fn round_trip_random_matchgates_up_to_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let g = crate::random::random_matchgate(&mut rng);
            let back = matchgate_of_rotation(&rotation_of_matchgate(&g)).unwrap();
            let overlap = (g.unitary().adjoint() * back.unitary()).trace().norm();
            assert!((overlap - 4.0).abs() < 1e-7, "overlap {overlap}");
        }
    }
}
