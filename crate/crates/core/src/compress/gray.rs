//! Reflected binary Gray code on `mu` bits, most significant bit first.

use crate::circuit::QcGate;
use crate::{Error, Result};

pub fn gray_value(i: usize) -> usize {
    i ^ (i >> 1)
}

pub fn gray_inverse_value(g: usize) -> usize {
    let mut b = g;
    let mut s = g >> 1;
    while s != 0 {
        b ^= s;
        s >>= 1;
    }
    b
}

pub fn to_bits(v: usize, mu: usize) -> Vec<bool> {
    (0..mu).map(|i| v >> (mu - 1 - i) & 1 == 1).collect()
}

pub fn from_bits(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

pub fn gray(i: usize, mu: usize) -> Result<Vec<bool>> {
    if mu >= usize::BITS as usize || i >> mu != 0 {
        return Err(Error::Range(format!("{i} does not fit in {mu} bits")));
    }
    Ok(to_bits(gray_value(i), mu))
}

pub fn gray_inverse(bits: &[bool]) -> usize {
    gray_inverse_value(from_bits(bits))
}

/// Controlled-NOTs taking `|binary(i)>` to `|gray(i)>` on lines
/// `first ..= first + mu - 1`.
pub fn binary_to_gray_on(mu: usize, first: usize) -> Vec<QcGate> {
    (2..=mu)
        .rev()
        .map(|i| QcGate::cx(first + i - 2, first + i - 1))
        .collect()
}

/// Inverse of [`binary_to_gray_on`].
pub fn gray_to_binary_on(mu: usize, first: usize) -> Vec<QcGate> {
    let mut g = binary_to_gray_on(mu, first);
    g.reverse();
    g
}

/// `binary -> gray` converter on lines `1 ..= mu`.
pub fn gray_converter_circuit(mu: usize) -> Vec<QcGate> {
    binary_to_gray_on(mu, 1)
}
