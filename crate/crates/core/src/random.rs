//! Seeded random gates and circuits.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Mat2, Mat4, Matchgate, Unitary2};
use crate::circuit::{GeneralCircuit, MatchgateCircuit, MgGate, QcGate};
use crate::C64;

fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random `N x N` unitary: Gram-Schmidt on a complex Gaussian matrix
/// (the implied `R` factor has a positive real diagonal).
fn haar_unitary<const N: usize>(rng: &mut impl Rng) -> [[C64; N]; N] {
    let mut cols: [[C64; N]; N] = [[C64::new(0.0, 0.0); N]; N];
    for col in cols.iter_mut() {
        for x in col.iter_mut() {
            *x = complex_normal(rng);
        }
    }
    for j in 0..N {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let proj: C64 = (0..N).map(|i| done[k][i].conj() * rest[0][i]).sum();
            for i in 0..N {
                rest[0][i] -= proj * done[k][i];
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    // transpose: cols[j][i] is entry (i, j)
    let mut m = [[C64::new(0.0, 0.0); N]; N];
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m[i][j] = v;
        }
    }
    m
}

pub fn random_unitary2(rng: &mut impl Rng) -> Mat2 {
    let u = haar_unitary::<2>(rng);
    Mat2::from_fn(|r, c| u[r][c])
}

pub fn random_unitary4(rng: &mut impl Rng) -> Mat4 {
    let u = haar_unitary::<4>(rng);
    Mat4::from_fn(|r, c| u[r][c])
}

/// `A` and `B` Haar on U(2), with `B` rephased to share `det A`.
pub fn random_matchgate(rng: &mut impl Rng) -> Matchgate {
    let a = random_unitary2(rng);
    let b = random_unitary2(rng);
    let det = |m: &Mat2| m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let (da, db) = (det(&a), det(&b));
    let b = b * (da / db).sqrt();
    Matchgate::new(
        Unitary2::new(a).expect("Haar sample is unitary"),
        Unitary2::new(b).expect("rephased unitary"),
    )
    .expect("determinants matched by construction")
}

pub fn random_matchgate_gate(rng: &mut impl Rng, line: usize) -> MgGate {
    let g = random_matchgate(rng);
    MgGate::Explicit {
        line,
        a: *g.a.matrix(),
        b: *g.b.matrix(),
    }
}

pub fn random_bits(rng: &mut impl Rng, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.random()).collect()
}

/// Random matchgate circuit with uniformly placed explicit gates.
pub fn random_matchgate_circuit(rng: &mut impl Rng, width: usize, size: usize) -> MatchgateCircuit {
    assert!(width >= 2, "matchgate circuits need at least two lines");
    let gates = (0..size)
        .map(|_| {
            let line = rng.random_range(1..width);
            random_matchgate_gate(rng, line)
        })
        .collect();
    let input = random_bits(rng, width);
    let measure = rng.random_range(1..=width);
    MatchgateCircuit::new(width, gates, input, measure)
}

/// Random general circuit mixing one- and two-qubit Haar gates.
pub fn random_general_circuit(rng: &mut impl Rng, width: usize, size: usize) -> GeneralCircuit {
    assert!(width >= 1);
    let gates = (0..size)
        .map(|_| {
            if width >= 2 && rng.random_bool(0.5) {
                let q1 = rng.random_range(1..=width);
                let mut q2 = rng.random_range(1..width);
                if q2 >= q1 {
                    q2 += 1;
                }
                QcGate::U2 {
                    q1,
                    q2,
                    m: random_unitary4(rng),
                }
            } else {
                QcGate::U1 {
                    q: rng.random_range(1..=width),
                    m: random_unitary2(rng),
                }
            }
        })
        .collect();
    GeneralCircuit::new(width, gates, random_bits(rng, width))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Matchgate,
    General,
}

/// Deterministic generator behind the `gen-random` command.
pub fn gen_random(flavor: Flavor, width: usize, size: usize, seed: u64) -> crate::Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match flavor {
        Flavor::Matchgate => random_matchgate_circuit(&mut rng, width, size).into(),
        Flavor::General => random_general_circuit(&mut rng, width, size).into(),
    }
}
