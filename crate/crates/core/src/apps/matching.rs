use std::collections::BTreeSet;

use super::{content_lines, parse_error, AppError};
use crate::decompose::min_cut_from_flow;
use crate::network::Network;
use crate::numeric::int;
use crate::solvers::edmonds_karp;
use num_traits::One;

/// Bipartite graph with parts `V = {0..n}` and `W = {0..n}`; an edge
/// `(v, w)` joins `v ∈ V` to `w ∈ W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, AppError> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(v, w)) = edges.iter().find(|&&(v, w)| v >= n || w >= n) {
            return Err(AppError::InvalidGraph(format!("edge ({}, {}) leaves the parts", v + 1, w + 1)));
        }
        Ok(BipartiteGraph { n, edges })
    }

    pub fn part_size(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.edges.contains(&(v, w))
    }

    /// `bip n` header, then `e v w` per edge, 1-based on both sides.
    pub fn parse(text: &str) -> Result<Self, AppError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (line, tokens) in content_lines(text) {
            let num = |t: &str| -> Result<usize, AppError> {
                match t.parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(parse_error(line, format!("bad vertex `{t}`"))),
                }
            };
            match (tokens[0], n) {
                ("bip", None) if tokens.len() == 2 => {
                    n = Some(tokens[1].parse().map_err(|_| parse_error(line, "bad part size"))?);
                }
                ("e", Some(size)) if tokens.len() == 3 => {
                    let (v, w) = (num(tokens[1])?, num(tokens[2])?);
                    if v >= size || w >= size {
                        return Err(parse_error(line, "vertex exceeds the part size"));
                    }
                    edges.push((v, w));
                }
                (_, None) => return Err(parse_error(line, "expected `bip <n>`")),
                _ => return Err(parse_error(line, "expected `e <v> <w>`")),
            }
        }
        let n = n.ok_or_else(|| parse_error(0, "missing `bip` header"))?;
        BipartiteGraph::new(n, edges)
    }
}

/// `N(S)`: vertices of `W` adjacent to some vertex of `S ⊆ V`.
pub fn neighborhood(g: &BipartiteGraph, s: &[usize]) -> BTreeSet<usize> {
    g.edges().filter(|(v, _)| s.contains(v)).map(|(_, w)| w).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingOutcome {
    /// `partner[v]` is the vertex of `W` matched to `v`.
    Perfect(Vec<usize>),
    /// A set `S ⊆ V` with `|N(S)| < |S|`.
    HallViolation(Vec<usize>),
}

/// Perfect matching through unit source and sink arcs and cross arcs of
/// capacity `n + 1`, or a Hall violation read from a minimum cut.
pub fn perfect_matching(g: &BipartiteGraph) -> Result<MatchingOutcome, AppError> {
    let n = g.n;
    let (s, t) = (0, 2 * n + 1);
    let big = i64::try_from(n + 1).expect("part size fits in i64");
    let mut arcs = Vec::new();
    for v in 0..n {
        arcs.push((s, 1 + v, 1));
    }
    for (v, w) in g.edges() {
        arcs.push((1 + v, 1 + n + w, big));
    }
    for w in 0..n {
        arcs.push((1 + n + w, t, 1));
    }
    let net = Network::from_int_arcs(2 * n + 2, s, t, &arcs)?;
    let (flow, stats) = edmonds_karp(&net)?;
    if stats.value == int(big - 1) /* = n */ {
        let mut partner = vec![usize::MAX; n];
        for (v, w) in g.edges() {
            let arc = net.arc_index(1 + v, 1 + n + w).expect("cross arc exists");
            if flow.values[arc].is_one() {
                partner[v] = w;
            }
        }
        return Ok(MatchingOutcome::Perfect(partner));
    }
    // Cross arcs are too expensive to cut, so every neighbour of a source
    // side vertex of V is on the source side too and pays its sink arc.
    let cut = min_cut_from_flow(&net, &flow)?;
    let s_side: Vec<usize> = (0..n).filter(|&v| cut.contains(1 + v)).collect();
    Ok(MatchingOutcome::HallViolation(s_side))
}
