//! DIMACS max-flow text format and the matching flow-output format.
//!
//! ```text
//! c <comment>
//! p max <n> <m>
//! n <id> s
//! n <id> t
//! a <u> <v> <cap>
//! ```
//!
//! Vertex ids are 1-based in the file and 0-based in [`Network`]. Capacities
//! are non-negative integers or `p/q` rationals. Flow output is one
//! `f <u> <v> <value>` line per arc carrying positive flow followed by
//! `s <|f|>`.

use super::{net_flow, Capacity, FlowAssignment, FlowRole, NetError, Network};
use crate::numeric::{parse_rational, Rational};
use num_traits::Signed;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Network(#[from] NetError),
    #[error("capacity on arc ({0}, {1}) is unbounded and has no DIMACS encoding")]
    Unencodable(usize, usize),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_id(tok: Option<&str>, line: usize, n: usize) -> Result<usize, FormatError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing vertex id"))?;
    let id: usize = tok
        .parse()
        .map_err(|_| syntax(line, format!("bad vertex id `{tok}`")))?;
    if id == 0 || id > n {
        return Err(syntax(line, format!("vertex id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

fn parse_value(tok: Option<&str>, line: usize) -> Result<Rational, FormatError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing value"))?;
    parse_rational(tok).ok_or_else(|| syntax(line, format!("bad rational `{tok}`")))
}

/// Reads a network. Antiparallel arcs are rejected unless
/// `allow_antiparallel` is set, in which case they are subdivided.
pub fn read_network(text: &str, allow_antiparallel: bool) -> Result<Network, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let (mut source, mut sink) = (None, None);
    let mut arcs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                if toks.next() != Some("max") {
                    return Err(syntax(line, "expected `p max <n> <m>`"));
                }
                let n = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(line, "bad vertex count"))?;
                let m = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(line, "bad arc count"))?;
                header = Some((n, m));
            }
            "n" => {
                let (n, _) = header.ok_or_else(|| syntax(line, "node line before `p`"))?;
                let id = parse_id(toks.next(), line, n)?;
                let slot = match toks.next() {
                    Some("s") => &mut source,
                    Some("t") => &mut sink,
                    _ => return Err(syntax(line, "expected `n <id> s|t`")),
                };
                if slot.replace(id).is_some() {
                    return Err(syntax(line, "terminal declared twice"));
                }
            }
            "a" => {
                let (n, _) = header.ok_or_else(|| syntax(line, "arc line before `p`"))?;
                let u = parse_id(toks.next(), line, n)?;
                let v = parse_id(toks.next(), line, n)?;
                let cap = parse_value(toks.next(), line)?;
                if cap.is_negative() {
                    return Err(syntax(line, "negative capacity"));
                }
                arcs.push((u, v, Capacity::Finite(cap)));
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| syntax(0, "missing problem line"))?;
    if arcs.len() != m {
        return Err(syntax(
            0,
            format!("problem line declares {m} arcs, found {}", arcs.len()),
        ));
    }
    let source = source.ok_or_else(|| syntax(0, "missing source"))?;
    let sink = sink.ok_or_else(|| syntax(0, "missing sink"))?;
    Ok(Network::build(n, source, sink, arcs, allow_antiparallel)?)
}

pub fn write_network(net: &Network) -> Result<String, FormatError> {
    let mut out = String::new();
    writeln!(out, "p max {} {}", net.vertex_count(), net.arc_count()).unwrap();
    writeln!(out, "n {} s", net.source() + 1).unwrap();
    writeln!(out, "n {} t", net.sink() + 1).unwrap();
    for a in net.arcs() {
        let cap = a
            .capacity
            .finite()
            .ok_or(FormatError::Unencodable(a.tail, a.head))?;
        writeln!(out, "a {} {} {}", a.tail + 1, a.head + 1, cap).unwrap();
    }
    Ok(out)
}

/// Flow lines for every positive arc plus the final value line.
pub fn write_flow(net: &Network, f: &FlowAssignment) -> Result<String, NetError> {
    let value = net_flow(net, f)?;
    let mut out = String::new();
    for (a, x) in net.arcs().iter().zip(&f.values) {
        if x.is_positive() {
            writeln!(out, "f {} {} {}", a.tail + 1, a.head + 1, x).unwrap();
        }
    }
    writeln!(out, "s {value}").unwrap();
    Ok(out)
}

/// Reads flow output against `net`; arcs without an `f` line carry zero.
/// The trailing `s` value must agree with the flow.
pub fn read_flow(net: &Network, text: &str) -> Result<FlowAssignment, FormatError> {
    let mut f = FlowAssignment::zero(net, FlowRole::Flow);
    let mut declared = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("f") => {
                let u = parse_id(toks.next(), line, net.vertex_count())?;
                let v = parse_id(toks.next(), line, net.vertex_count())?;
                let x = parse_value(toks.next(), line)?;
                let idx = net
                    .arc_index(u, v)
                    .ok_or_else(|| syntax(line, format!("no arc ({}, {})", u + 1, v + 1)))?;
                f.values[idx] = x;
            }
            Some("s") => declared = Some(parse_value(toks.next(), line)?),
            Some(other) => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
    }
    let declared = declared.ok_or_else(|| syntax(0, "missing `s` line"))?;
    let value = net_flow(net, &f)?;
    if value != declared {
        return Err(syntax(
            0,
            format!("declared value {declared} differs from flow value {value}"),
        ));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    const SAMPLE: &str = "c sample\np max 4 5\nn 1 s\nn 4 t\na 1 2 3\na 1 3 5/2\na 2 4 2\na 3 4 3\na 2 3 1\n";

    #[test]
    fn reads_sample() {
        let net = read_network(SAMPLE, false).unwrap();
        assert_eq!(net.vertex_count(), 4);
        assert_eq!((net.source(), net.sink()), (0, 3));
        assert_eq!(net.arc(1).capacity, Capacity::Finite(ratio(5, 2)));
    }

    #[test]
    fn write_then_read_reproduces_network() {
        let net = read_network(SAMPLE, false).unwrap();
        let text = write_network(&net).unwrap();
        assert_eq!(read_network(&text, false).unwrap(), net);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let bad = "p max 2 1\nn 1 s\nn 2 t\na 1 2 x\n";
        assert!(matches!(
            read_network(bad, false),
            Err(FormatError::Syntax { line: 4, .. })
        ));
        let bad = "p max 2 2\nn 1 s\nn 2 t\na 1 2 1\n";
        assert!(read_network(bad, false).is_err());
        let bad = "p max 2 1\nn 1 s\nn 2 t\na 2 1 1\n";
        assert!(matches!(
            read_network(bad, false),
            Err(FormatError::Network(NetError::SourceSinkViolation(1, 0)))
        ));
    }

    #[test]
    fn flow_output_round_trip() {
        let net = read_network(SAMPLE, false).unwrap();
        let f = FlowAssignment::new(
            vec![int(2), ratio(5, 2), int(2), ratio(5, 2), int(0)],
            FlowRole::Flow,
        );
        let text = write_flow(&net, &f).unwrap();
        assert!(text.ends_with("s 9/2\n"));
        assert_eq!(read_flow(&net, &text).unwrap(), f);
    }
}
