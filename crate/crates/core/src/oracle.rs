//! Dense statevector simulation, used as ground truth at small width.
//!
//! Basis index convention: line 1 is the most significant bit.

use nalgebra::DMatrix;

use crate::algebra::{jordan_wigner, mat4_to_dense, rotation_of_matchgate, Matchgate};
use crate::circuit::Circuit;
use crate::{Error, Result, C64};

pub const ORACLE_WIDTH_LIMIT: usize = 14;
const ADJOINT_WIDTH_LIMIT: usize = 7;
const NORM_TOL: f64 = 1e-9;

fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::Guard { what, value, limit })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    width: usize,
    amps: Vec<C64>,
}

impl Statevector {
    pub fn basis(bits: &[bool]) -> Result<Self> {
        guard("width", bits.len(), ORACLE_WIDTH_LIMIT)?;
        let width = bits.len();
        let mut amps = vec![C64::new(0.0, 0.0); 1 << width];
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        amps[idx] = C64::new(1.0, 0.0);
        Ok(Statevector { width, amps })
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let width = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << width {
            return Err(Error::Range(format!("{} amplitudes is not a power of two", amps.len())));
        }
        guard("width", width, ORACLE_WIDTH_LIMIT)?;
        Ok(Statevector { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies a `2^K x 2^K` matrix to the given lines; `lines[0]` is the
    /// most significant bit of the matrix index.
    pub fn apply(&mut self, lines: &[usize], m: &DMatrix<C64>) {
        let k = lines.len();
        let dim = 1usize << k;
        assert_eq!(m.nrows(), dim);
        let shifts: Vec<usize> = lines.iter().map(|&q| self.width - q).collect();
        let mask = shifts.iter().fold(0usize, |acc, &s| acc | (1 << s));
        let offsets: Vec<usize> = (0..dim)
            .map(|local| {
                (0..k)
                    .filter(|&i| local >> (k - 1 - i) & 1 == 1)
                    .fold(0, |acc, i| acc | (1 << shifts[i]))
            })
            .collect();
        let mut scratch = vec![C64::new(0.0, 0.0); dim];
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            for (s, &off) in scratch.iter_mut().zip(&offsets) {
                *s = self.amps[base | off];
            }
            for (r, &off) in offsets.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (c, s) in scratch.iter().enumerate() {
                    acc += m[(r, c)] * s;
                }
                self.amps[base | off] = acc;
            }
        }
    }
}

/// Runs a circuit of either flavor from its basis input.
pub fn run_statevector(c: &Circuit) -> Result<Statevector> {
    guard("width", c.width(), ORACLE_WIDTH_LIMIT)?;
    if let Some(v) = c.validate().into_iter().next() {
        return Err(Error::Invalid(vec![v]));
    }
    let mut s = match c {
        Circuit::Matchgate(mg) => {
            let mut s = Statevector::basis(&mg.input)?;
            for g in &mg.gates {
                let k = g.line();
                s.apply(&[k, k + 1], &mat4_to_dense(&g.unitary()));
            }
            s
        }
        Circuit::General(qc) => {
            let mut s = Statevector::basis(&qc.input)?;
            for g in &qc.gates {
                s.apply(&g.lines(), &g.matrix());
            }
            s
        }
    };
    let norm = s.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Internal(format!("statevector norm drifted to {norm}")));
    }
    // renormalize away rounding so expectations stay inside [-1, 1]
    for a in &mut s.amps {
        *a /= norm;
    }
    Ok(s)
}

/// `<Z_k> = sum_x |amp(x)|^2 (-1)^(x_k)`.
pub fn expectation_z(s: &Statevector, k: usize) -> Result<f64> {
    if k == 0 || k > s.width {
        return Err(Error::Range(format!("line {k} outside 1..={}", s.width)));
    }
    let shift = s.width - k;
    Ok(s.amps
        .iter()
        .enumerate()
        .map(|(x, a)| if x >> shift & 1 == 0 { a.norm_sqr() } else { -a.norm_sqr() })
        .sum())
}

/// Largest entry of `U^dag c_j U - sum_l R[j, l] c_l` over all `j`, for
/// the matchgate `g` on lines `(k, k+1)` of an `n`-line register.
pub fn adjoint_action_check(g: &Matchgate, k: usize, n: usize) -> Result<f64> {
    guard("width", n, ADJOINT_WIDTH_LIMIT)?;
    if k == 0 || k + 1 > n {
        return Err(Error::Range(format!("lines ({k}, {}) outside 1..={n}", k + 1)));
    }
    let id2 = DMatrix::<C64>::identity(2, 2);
    let mut u = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
    let mut line = 1;
    while line <= n {
        if line == k {
            u = u.kronecker(&mat4_to_dense(&g.unitary()));
            line += 2;
        } else {
            u = u.kronecker(&id2);
            line += 1;
        }
    }
    let local = rotation_of_matchgate(g);
    let dim = 2 * n;
    let mut r = DMatrix::<f64>::identity(dim, dim);
    let off = 2 * (k - 1);
    for a in 0..4 {
        for b in 0..4 {
            r[(off + a, off + b)] = local.matrix()[(a, b)];
        }
    }
    let cs: Vec<_> = (1..=dim).map(|j| jordan_wigner(n, j)).collect::<Result<_>>()?;
    let ud = u.adjoint();
    let mut worst = 0.0f64;
    for (j, cj) in cs.iter().enumerate() {
        let lhs = &ud * cj * &u;
        let mut rhs = DMatrix::<C64>::zeros(1 << n, 1 << n);
        for (l, cl) in cs.iter().enumerate() {
            if r[(j, l)] != 0.0 {
                rhs += cl * C64::new(r[(j, l)], 0.0);
            }
        }
        worst = worst.max((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub z_a: f64,
    pub z_b: f64,
    pub difference: f64,
    pub tol: f64,
    pub pass: bool,
}

impl std::fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "z_a={:.15} z_b={:.15} diff={:.3e} tol={:e} result={}",
            self.z_a,
            self.z_b,
            self.difference,
            self.tol,
            if self.pass { "pass" } else { "fail" }
        )
    }
}

/// Compares `<Z>` of two circuits on the given lines by dense simulation.
pub fn verify_equivalent(
    a: &Circuit,
    b: &Circuit,
    line_a: usize,
    line_b: usize,
    tol: f64,
) -> Result<EquivalenceReport> {
    let z_a = expectation_z(&run_statevector(a)?, line_a)?;
    let z_b = expectation_z(&run_statevector(b)?, line_b)?;
    Ok(report(z_a, z_b, tol))
}

pub fn report(z_a: f64, z_b: f64, tol: f64) -> EquivalenceReport {
    let difference = (z_a - z_b).abs();
    EquivalenceReport {
        z_a,
        z_b,
        difference,
        tol,
        pass: difference <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{fermionic_swap, Matchgate, Unitary2};
    use crate::circuit::{GeneralCircuit, MatchgateCircuit, MgGate, QcGate};
    use crate::random::{random_matchgate, random_unitary2, random_unitary4};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mg(width: usize, gates: Vec<MgGate>, input: &str) -> Circuit {
        let bits = crate::circuit::bits_from_str(input).unwrap();
        let mut c = MatchgateCircuit::new(width, gates, bits, 1);
        c.allow_idle = true;
        c.into()
    }

    #[test]
    fn identity_circuit_keeps_basis_state() {
        let c = mg(3, vec![], "101");
        let s = run_statevector(&c).unwrap();
        assert_eq!(s, Statevector::basis(&[true, false, true]).unwrap());
    }

    #[test]
    fn gxx_maps_00_to_11() {
        let s = run_statevector(&mg(2, vec![MgGate::Gxx { line: 1 }], "00")).unwrap();
        assert_eq!(s.amplitudes()[3], C64::new(1.0, 0.0));
    }

    #[test]
    fn w_on_11_flips_sign() {
        let s = run_statevector(&mg(2, vec![MgGate::W { line: 1 }], "11")).unwrap();
        assert_eq!(s.amplitudes()[3], C64::new(-1.0, 0.0));
    }

    #[test]
    fn expectation_simple_states() {
        let zero = Statevector::basis(&[false]).unwrap();
        assert_eq!(expectation_z(&zero, 1).unwrap(), 1.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = Statevector::from_amplitudes(vec![C64::new(h, 0.0), C64::new(h, 0.0)]).unwrap();
        assert!(expectation_z(&plus, 1).unwrap().abs() < 1e-15);
        assert!(expectation_z(&plus, 2).is_err());
    }

    #[test]
    fn expectation_matches_bitwise_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = 5;
        let mut amps: Vec<C64> = (0..1 << w)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        let s = Statevector::from_amplitudes(amps.clone()).unwrap();
        for k in 1..=w {
            // enumerate outcomes as explicit bitstrings, high line first
            let mut p = [0.0f64; 2];
            for (x, a) in amps.iter().enumerate() {
                let bits: Vec<usize> = (0..w).map(|i| (x >> (w - 1 - i)) & 1).collect();
                p[bits[k - 1]] += a.norm_sqr();
            }
            assert!((expectation_z(&s, k).unwrap() - (p[0] - p[1])).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_preserved_over_long_random_circuit() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = 10;
        let mut s = Statevector::basis(&vec![false; w]).unwrap();
        for _ in 0..1000 {
            if rng.random_bool(0.5) {
                let q = rng.random_range(1..=w);
                s.apply(&[q], &crate::algebra::mat2_to_dense(&random_unitary2(&mut rng)));
            } else {
                let q1 = rng.random_range(1..w);
                s.apply(&[q1 + 1, q1], &mat4_to_dense(&random_unitary4(&mut rng)));
            }
        }
        assert!((s.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn apply_respects_line_order() {
        // CX with control on line 2 and target on line 1: |01> -> |11>
        let c: Circuit = GeneralCircuit::new(2, vec![QcGate::cx(2, 1)], vec![false, true]).into();
        let s = run_statevector(&c).unwrap();
        assert_eq!(s.amplitudes()[3], C64::new(1.0, 0.0));
    }

    #[test]
    fn adjoint_action_identity_and_swap() {
        let id = Matchgate::new(Unitary2::identity(), Unitary2::identity()).unwrap();
        assert_eq!(adjoint_action_check(&id, 2, 3).unwrap(), 0.0);
        assert!(adjoint_action_check(&fermionic_swap(), 1, 3).unwrap() <= 1e-12);
        assert!(matches!(adjoint_action_check(&id, 1, 8), Err(Error::Guard { .. })));
    }

    #[test]
    fn adjoint_action_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let g = random_matchgate(&mut rng);
            let k = rng.random_range(1..4);
            assert!(adjoint_action_check(&g, k, 4).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn verify_detects_perturbation() {
        let a = mg(2, vec![MgGate::Rot { line: 1, plane: 2, theta: 0.9 }], "00");
        let b = mg(2, vec![MgGate::Rot { line: 1, plane: 2, theta: 1.0 }], "00");
        let same = verify_equivalent(&a, &a, 1, 1, 1e-12).unwrap();
        assert_eq!(same.difference, 0.0);
        assert!(same.pass);
        assert!(!verify_equivalent(&a, &b, 1, 1, 1e-9).unwrap().pass);
    }
}
