//! Line-oriented text encoding of circuits.
//!
//! ```text
//! circuit mg width=3 input=010 measure=2
//! w 1
//! gxx 2
//! rot 1 plane=3 theta=0.6435011087932844
//! mg 2 a=<8 reals> b=<8 reals>
//! ```
//!
//! ```text
//! circuit qc width=2 input=00
//! x 1
//! h 2
//! u1 1 m=<8 reals>
//! u2 1 2 m=<32 reals>
//! cu1 1 2 m=<8 reals>
//! ```
//!
//! Matrices are listed row-major with the real part of each entry before
//! its imaginary part, comma separated without spaces. `#` starts a
//! comment. Reals are written in the shortest form that parses back to
//! the identical `f64`. A matchgate header may carry a trailing
//! `idle=allowed` token, which sets [`MatchgateCircuit::allow_idle`].

use std::fmt::Write as _;

use crate::algebra::{Mat2, Mat4};
use crate::circuit::{bits_from_str, bits_to_string, Circuit, GeneralCircuit, MatchgateCircuit, MgGate, QcGate};
use crate::{Error, Result, C64};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Header {
    flavor_mg: bool,
    width: usize,
    input: Vec<bool>,
    measure: Option<usize>,
    allow_idle: bool,
}

fn parse_header(lineno: usize, tokens: &[&str]) -> Result<Header> {
    if tokens.first() != Some(&"circuit") {
        return Err(perr(lineno, "expected header 'circuit <mg|qc> ...'"));
    }
    let flavor_mg = match tokens.get(1) {
        Some(&"mg") => true,
        Some(&"qc") => false,
        Some(other) => return Err(perr(lineno, format!("unknown circuit flavor '{other}'"))),
        None => return Err(perr(lineno, "missing circuit flavor")),
    };
    let mut width = None;
    let mut input = None;
    let mut measure = None;
    let mut allow_idle = false;
    for tok in &tokens[2..] {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| perr(lineno, format!("expected key=value, got '{tok}'")))?;
        match key {
            "width" => width = Some(parse_usize(lineno, value)?),
            "input" => {
                input = Some(
                    bits_from_str(value)
                        .ok_or_else(|| perr(lineno, format!("input '{value}' is not a bitstring")))?,
                )
            }
            "measure" if flavor_mg => measure = Some(parse_usize(lineno, value)?),
            "measure" => return Err(perr(lineno, "qc circuits are always measured on line 1")),
            "idle" if flavor_mg && value == "allowed" => allow_idle = true,
            _ => return Err(perr(lineno, format!("unexpected header field '{tok}'"))),
        }
    }
    let width = width.ok_or_else(|| perr(lineno, "header missing width="))?;
    let input = input.ok_or_else(|| perr(lineno, "header missing input="))?;
    if flavor_mg && measure.is_none() {
        return Err(perr(lineno, "mg header missing measure="));
    }
    Ok(Header {
        flavor_mg,
        width,
        input,
        measure,
        allow_idle,
    })
}

fn parse_usize(lineno: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| perr(lineno, format!("expected a non-negative integer, got '{s}'")))
}

fn parse_real(lineno: usize, s: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| perr(lineno, format!("expected a real number, got '{s}'")))?;
    if !v.is_finite() {
        return Err(perr(lineno, format!("non-finite real '{s}'")));
    }
    Ok(v)
}

fn parse_keyed<'a>(lineno: usize, tok: Option<&&'a str>, key: &str) -> Result<&'a str> {
    let tok = tok.ok_or_else(|| perr(lineno, format!("missing {key}=")))?;
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| perr(lineno, format!("expected {key}=..., got '{tok}'")))
}

fn parse_complex_list(lineno: usize, s: &str, count: usize) -> Result<Vec<C64>> {
    let reals = s
        .split(',')
        .map(|x| parse_real(lineno, x))
        .collect::<Result<Vec<_>>>()?;
    if reals.len() != 2 * count {
        return Err(perr(
            lineno,
            format!("expected {} reals, got {}", 2 * count, reals.len()),
        ));
    }
    Ok(reals.chunks(2).map(|p| C64::new(p[0], p[1])).collect())
}

fn parse_mat2(lineno: usize, s: &str) -> Result<Mat2> {
    let v = parse_complex_list(lineno, s, 4)?;
    Ok(Mat2::from_row_slice(&v))
}

fn parse_mat4(lineno: usize, s: &str) -> Result<Mat4> {
    let v = parse_complex_list(lineno, s, 16)?;
    Ok(Mat4::from_row_slice(&v))
}

fn expect_arity(lineno: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() != n {
        return Err(perr(
            lineno,
            format!("'{}' takes {} fields, got {}", tokens[0], n - 1, tokens.len() - 1),
        ));
    }
    Ok(())
}

fn parse_mg_gate(lineno: usize, tokens: &[&str]) -> Result<MgGate> {
    let line = || -> Result<usize> {
        parse_usize(lineno, tokens.get(1).ok_or_else(|| perr(lineno, "missing line number"))?)
    };
    match tokens[0] {
        "w" => {
            expect_arity(lineno, tokens, 2)?;
            Ok(MgGate::W { line: line()? })
        }
        "gxx" => {
            expect_arity(lineno, tokens, 2)?;
            Ok(MgGate::Gxx { line: line()? })
        }
        "rot" => {
            expect_arity(lineno, tokens, 4)?;
            let plane = parse_usize(lineno, parse_keyed(lineno, tokens.get(2), "plane")?)?;
            let plane = u8::try_from(plane).map_err(|_| perr(lineno, "plane out of range"))?;
            let theta = parse_real(lineno, parse_keyed(lineno, tokens.get(3), "theta")?)?;
            Ok(MgGate::Rot {
                line: line()?,
                plane,
                theta,
            })
        }
        "mg" => {
            expect_arity(lineno, tokens, 4)?;
            let a = parse_mat2(lineno, parse_keyed(lineno, tokens.get(2), "a")?)?;
            let b = parse_mat2(lineno, parse_keyed(lineno, tokens.get(3), "b")?)?;
            Ok(MgGate::Explicit { line: line()?, a, b })
        }
        other => Err(perr(lineno, format!("unknown matchgate kind '{other}'"))),
    }
}

fn parse_qc_gate(lineno: usize, tokens: &[&str]) -> Result<QcGate> {
    let field = |i: usize| -> Result<usize> {
        parse_usize(lineno, tokens.get(i).ok_or_else(|| perr(lineno, "missing line number"))?)
    };
    match tokens[0] {
        "x" => {
            expect_arity(lineno, tokens, 2)?;
            Ok(QcGate::X(field(1)?))
        }
        "h" => {
            expect_arity(lineno, tokens, 2)?;
            Ok(QcGate::H(field(1)?))
        }
        "u1" => {
            expect_arity(lineno, tokens, 3)?;
            let m = parse_mat2(lineno, parse_keyed(lineno, tokens.get(2), "m")?)?;
            Ok(QcGate::U1 { q: field(1)?, m })
        }
        "u2" => {
            expect_arity(lineno, tokens, 4)?;
            let m = parse_mat4(lineno, parse_keyed(lineno, tokens.get(3), "m")?)?;
            Ok(QcGate::U2 {
                q1: field(1)?,
                q2: field(2)?,
                m,
            })
        }
        "cu1" => {
            expect_arity(lineno, tokens, 4)?;
            let m = parse_mat2(lineno, parse_keyed(lineno, tokens.get(3), "m")?)?;
            Ok(QcGate::Cu1 {
                control: field(1)?,
                target: field(2)?,
                m,
            })
        }
        other => Err(perr(lineno, format!("unknown gate kind '{other}'"))),
    }
}

/// Parses and validates a circuit of either flavor.
///
/// Validation failures are reported as [`Error::Parse`] at the line of
/// the offending gate (or the header for circuit-level rules).
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut header: Option<(usize, Header)> = None;
    let mut mg_gates = Vec::new();
    let mut qc_gates = Vec::new();
    let mut gate_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match &header {
            None => header = Some((lineno, parse_header(lineno, &tokens)?)),
            Some((_, h)) => {
                if h.flavor_mg {
                    mg_gates.push(parse_mg_gate(lineno, &tokens)?);
                } else {
                    qc_gates.push(parse_qc_gate(lineno, &tokens)?);
                }
                gate_lines.push(lineno);
            }
        }
    }
    let (header_line, h) = header.ok_or_else(|| perr(1, "empty circuit text"))?;
    let circuit = if h.flavor_mg {
        Circuit::Matchgate(MatchgateCircuit {
            width: h.width,
            gates: mg_gates,
            input: h.input,
            measure: h.measure.unwrap_or(0),
            allow_idle: h.allow_idle,
        })
    } else {
        Circuit::General(GeneralCircuit::new(h.width, qc_gates, h.input))
    };
    if let Some(v) = circuit.validate().into_iter().next() {
        let line = v.gate.map_or(header_line, |g| gate_lines[g]);
        return Err(perr(line, v.rule));
    }
    Ok(circuit)
}

pub fn parse_matchgate(text: &str) -> Result<MatchgateCircuit> {
    match parse_circuit(text)? {
        Circuit::Matchgate(c) => Ok(c),
        Circuit::General(_) => Err(perr(1, "expected a matchgate (mg) circuit")),
    }
}

pub fn parse_general(text: &str) -> Result<GeneralCircuit> {
    match parse_circuit(text)? {
        Circuit::General(c) => Ok(c),
        Circuit::Matchgate(_) => Err(perr(1, "expected a general (qc) circuit")),
    }
}

fn push_reals(out: &mut String, entries: impl Iterator<Item = C64>) {
    let mut first = true;
    for z in entries {
        for x in [z.re, z.im] {
            if !first {
                out.push(',');
            }
            first = false;
            // shortest representation that round-trips exactly
            write!(out, "{}", normalize_zero(x)).unwrap();
        }
    }
}

fn normalize_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn row_major2(m: &Mat2) -> impl Iterator<Item = C64> + '_ {
    (0..2).flat_map(move |r| (0..2).map(move |c| m[(r, c)]))
}

fn row_major4(m: &Mat4) -> impl Iterator<Item = C64> + '_ {
    (0..4).flat_map(move |r| (0..4).map(move |c| m[(r, c)]))
}

pub fn write_mg_gate(out: &mut String, g: &MgGate) {
    match g {
        MgGate::W { line } => writeln!(out, "w {line}").unwrap(),
        MgGate::Gxx { line } => writeln!(out, "gxx {line}").unwrap(),
        MgGate::Rot { line, plane, theta } => {
            writeln!(out, "rot {line} plane={plane} theta={}", normalize_zero(*theta)).unwrap()
        }
        MgGate::Explicit { line, a, b } => {
            write!(out, "mg {line} a=").unwrap();
            push_reals(out, row_major2(a));
            out.push_str(" b=");
            push_reals(out, row_major2(b));
            out.push('\n');
        }
    }
}

pub fn write_qc_gate(out: &mut String, g: &QcGate) {
    match g {
        QcGate::X(q) => writeln!(out, "x {q}").unwrap(),
        QcGate::H(q) => writeln!(out, "h {q}").unwrap(),
        QcGate::U1 { q, m } => {
            write!(out, "u1 {q} m=").unwrap();
            push_reals(out, row_major2(m));
            out.push('\n');
        }
        QcGate::U2 { q1, q2, m } => {
            write!(out, "u2 {q1} {q2} m=").unwrap();
            push_reals(out, row_major4(m));
            out.push('\n');
        }
        QcGate::Cu1 { control, target, m } => {
            write!(out, "cu1 {control} {target} m=").unwrap();
            push_reals(out, row_major2(m));
            out.push('\n');
        }
    }
}

pub fn mg_header(c: &MatchgateCircuit) -> String {
    let mut s = format!(
        "circuit mg width={} input={} measure={}",
        c.width,
        bits_to_string(&c.input),
        c.measure
    );
    if c.allow_idle {
        s.push_str(" idle=allowed");
    }
    s
}

pub fn qc_header(c: &GeneralCircuit) -> String {
    format!("circuit qc width={} input={}", c.width, bits_to_string(&c.input))
}

pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    match c {
        Circuit::Matchgate(c) => {
            out.push_str(&mg_header(c));
            out.push('\n');
            for g in &c.gates {
                write_mg_gate(&mut out, g);
            }
        }
        Circuit::General(c) => {
            out.push_str(&qc_header(c));
            out.push('\n');
            for g in &c.gates {
                write_qc_gate(&mut out, g);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pauli_x;

    #[test]
    fn parses_single_gxx() {
        let c = parse_circuit("circuit mg width=2 input=00 measure=1\ngxx 1").unwrap();
        assert_eq!(
            c,
            Circuit::Matchgate(MatchgateCircuit::new(2, vec![MgGate::Gxx { line: 1 }], vec![false, false], 1))
        );
    }

    #[test]
    fn parses_single_h() {
        let c = parse_circuit("circuit qc width=1 input=0\nh 1").unwrap();
        assert_eq!(c, Circuit::General(GeneralCircuit::new(1, vec![QcGate::H(1)], vec![false])));
    }

    #[test]
    fn out_of_range_line_reports_line_number() {
        let err = parse_circuit("circuit mg width=2 input=00 measure=1\nw 2").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert_eq!(msg, "line 2 requires width ≥ 3");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        for (text, line) in [
            ("", 1),
            ("circuit xx width=1 input=0", 1),
            ("circuit mg width=2 input=00", 1),
            ("circuit qc width=1 input=0 measure=1", 1),
            ("circuit qc width=1 input=0\n\nfoo 1", 3),
            ("circuit qc width=1 input=0\nu1 1 m=1,0,0", 2),
            ("circuit mg width=2 input=00 measure=1\nrot 1 plane=7 theta=0", 2),
            ("circuit mg width=2 input=00 measure=1\nrot 1 theta=0 plane=1", 2),
            ("circuit mg width=2 input=0 measure=1\nw 1", 1),
        ] {
            match parse_circuit(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# leading comment\n\ncircuit mg width=2 input=10 measure=2 # trailing\n  w 1   # swap\n";
        let c = parse_matchgate(text).unwrap();
        assert_eq!(c.gates, vec![MgGate::W { line: 1 }]);
        assert_eq!(c.input, vec![true, false]);
    }

    #[test]
    fn arctan_three_quarters_is_printed_exactly() {
        let theta = (3.0f64 / 4.0).atan();
        let c = MatchgateCircuit::new(2, vec![MgGate::Rot { line: 1, plane: 1, theta }], vec![false; 2], 1);
        let text = serialize_circuit(&c.into());
        assert!(text.contains("0.6435011087932844"), "{text}");
    }

    #[test]
    fn u2_emits_32_reals_row_major() {
        let mut m = Mat4::identity();
        m[(0, 1)] = C64::new(0.0, 0.5);
        let c = GeneralCircuit::new(2, vec![QcGate::U2 { q1: 1, q2: 2, m }], vec![false; 2]);
        let text = serialize_circuit(&c.into());
        let line = text.lines().nth(1).unwrap();
        let reals: Vec<&str> = line.split("m=").nth(1).unwrap().split(',').collect();
        assert_eq!(reals.len(), 32);
        assert_eq!(&reals[..4], &["1", "0", "0", "0.5"]);
    }

    #[test]
    fn canonical_text() {
        let c = MatchgateCircuit::new(2, vec![MgGate::Gxx { line: 1 }], vec![false; 2], 1);
        assert_eq!(serialize_circuit(&c.into()), "circuit mg width=2 input=00 measure=1\ngxx 1\n");
        let g = GeneralCircuit::new(2, vec![QcGate::Cu1 { control: 2, target: 1, m: pauli_x() }], vec![true, false]);
        assert_eq!(
            serialize_circuit(&g.into()),
            "circuit qc width=2 input=10\ncu1 2 1 m=0,0,1,0,1,0,0,0\n"
        );
    }

    #[test]
    fn idle_flag_round_trips() {
        let mut c = MatchgateCircuit::new(4, vec![MgGate::W { line: 1 }], vec![false; 4], 1);
        c.allow_idle = true;
        let text = serialize_circuit(&c.clone().into());
        assert_eq!(parse_matchgate(&text).unwrap(), c);
        assert!(parse_matchgate(&text.replace(" idle=allowed", "")).is_err());
    }
}
