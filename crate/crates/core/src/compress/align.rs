//! Reducing a two-level operation on two arbitrary labels to a
//! singly-targeted controlled operation.
//!
//! Let `p` be the first bit where the labels differ and `lo` the label
//! with a 0 there. Every other differing bit `d` is first set to 0 on
//! `lo` by `X_d` (when `lo_d = 1`), then cleared on the partner by
//! `CX(p -> d)`. All conjugation gates are conditioned on the bits where
//! the labels agree, so they act only on the block that contains both.

use crate::{Error, Result};

/// Bit positions are 1-based, most significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    One,
    Zero,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlPattern {
    bits: Vec<Requirement>,
    target: usize,
}

impl ControlPattern {
    pub fn new(bits: Vec<Requirement>, target: usize) -> Result<Self> {
        if target == 0 || target > bits.len() {
            return Err(Error::Range(format!("target bit {target} outside 1..={}", bits.len())));
        }
        if bits[target - 1] != Requirement::Free {
            return Err(Error::Range(format!("target bit {target} is also a control")));
        }
        Ok(ControlPattern { bits, target })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn requirement(&self, bit: usize) -> Requirement {
        self.bits[bit - 1]
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `(bit, value)` for every control.
    pub fn controls(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.bits.iter().enumerate().filter_map(|(i, r)| match r {
            Requirement::One => Some((i + 1, true)),
            Requirement::Zero => Some((i + 1, false)),
            Requirement::Free => None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjGate {
    X { bit: usize },
    Cx { control: usize, target: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    /// Applied in order before the controlled operation, reversed after.
    pub gates: Vec<ConjGate>,
    /// Agreement bits and their common values; every conjugation gate is
    /// conditioned on these.
    pub condition: Vec<(usize, bool)>,
    pub pattern: ControlPattern,
    /// Whether the first label lands on the target-bit-0 state.
    pub first_is_low: bool,
}

pub fn align_conjugation(label_a: &[bool], label_b: &[bool]) -> Result<Alignment> {
    if label_a.len() != label_b.len() {
        return Err(Error::Range(format!(
            "labels of length {} and {}",
            label_a.len(),
            label_b.len()
        )));
    }
    let diff: Vec<usize> = (0..label_a.len()).filter(|&i| label_a[i] != label_b[i]).collect();
    let Some(&p) = diff.first() else {
        return Err(Error::Range("identical labels".into()));
    };
    let first_is_low = !label_a[p];
    let lo = if first_is_low { label_a } else { label_b };

    let condition: Vec<(usize, bool)> = (0..lo.len())
        .filter(|i| !diff.contains(i))
        .map(|i| (i + 1, lo[i]))
        .collect();
    let mut gates = Vec::new();
    for &d in &diff[1..] {
        if lo[d] {
            gates.push(ConjGate::X { bit: d + 1 });
        }
    }
    for &d in &diff[1..] {
        gates.push(ConjGate::Cx { control: p + 1, target: d + 1 });
    }

    let bits = (0..lo.len())
        .map(|i| {
            if i == p {
                Requirement::Free
            } else if diff.contains(&i) {
                Requirement::Zero
            } else if lo[i] {
                Requirement::One
            } else {
                Requirement::Zero
            }
        })
        .collect();
    Ok(Alignment {
        gates,
        condition,
        pattern: ControlPattern::new(bits, p + 1)?,
        first_is_low,
    })
}
