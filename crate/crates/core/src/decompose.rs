//! Flow decomposition into path- and cycle-flows, minimum cuts from maximal
//! flows, and recovery of a maximum flow from an optimal normalized tree.

use crate::network::{
    excess, residual_graph, validate, Cut, FlowAssignment, FlowRole, NetError, Network,
};
use crate::numeric::{parse_rational, Rational};
use crate::solvers::NormalizedTree;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecomposeError {
    #[error(transparent)]
    Network(#[from] NetError),
    /// The flow admits an augmenting path; the vertex sequence is attached.
    #[error("flow is not maximal: augmenting path {0:?}")]
    NotMaximal(Vec<usize>),
    #[error("normalized tree is not optimal: residual arc {0} from strong to weak")]
    NotOptimal(usize),
    #[error("line {0}: {1}")]
    Parse(usize, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Path,
    Cycle,
}

/// One path-flow (`s .. t`) or cycle-flow (closed; the first vertex is not
/// repeated at the end of `vertices`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowComponent {
    pub kind: ComponentKind,
    pub vertices: Vec<usize>,
    pub amount: Rational,
}

impl FlowComponent {
    /// Consecutive vertex pairs traversed by the component.
    pub fn steps(&self) -> Vec<(usize, usize)> {
        let mut steps: Vec<(usize, usize)> =
            self.vertices.windows(2).map(|w| (w[0], w[1])).collect();
        if self.kind == ComponentKind::Cycle {
            if let (Some(&last), Some(&first)) = (self.vertices.last(), self.vertices.first()) {
                steps.push((last, first));
            }
        }
        steps
    }
}

/// Serialized as `path a v1 .. vk` or `cycle a v1 .. vk v1`, 1-based ids.
impl fmt::Display for FlowComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ComponentKind::Path => "path",
            ComponentKind::Cycle => "cycle",
        };
        write!(f, "{kind} {}", self.amount)?;
        for v in &self.vertices {
            write!(f, " {}", v + 1)?;
        }
        if self.kind == ComponentKind::Cycle {
            write!(f, " {}", self.vertices[0] + 1)?;
        }
        Ok(())
    }
}

pub fn parse_components(text: &str) -> Result<Vec<FlowComponent>, DecomposeError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut toks = line.split_whitespace();
        let kind = match toks.next() {
            None | Some("c") => continue,
            Some("path") => ComponentKind::Path,
            Some("cycle") => ComponentKind::Cycle,
            Some(other) => {
                return Err(DecomposeError::Parse(i + 1, format!("unknown record `{other}`")))
            }
        };
        let amount = toks
            .next()
            .and_then(parse_rational)
            .ok_or_else(|| DecomposeError::Parse(i + 1, "bad amount".into()))?;
        let mut vertices = toks
            .map(|t| t.parse::<usize>().ok().filter(|&v| v > 0).map(|v| v - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| DecomposeError::Parse(i + 1, "bad vertex id".into()))?;
        if kind == ComponentKind::Cycle {
            if vertices.len() < 3 || vertices.first() != vertices.last() {
                return Err(DecomposeError::Parse(i + 1, "cycle must be closed".into()));
            }
            vertices.pop();
        }
        out.push(FlowComponent {
            kind,
            vertices,
            amount,
        });
    }
    Ok(out)
}

/// Lowest-index arc out of `v` carrying positive flow.
fn positive_out(net: &Network, x: &[Rational], v: usize) -> Option<usize> {
    net.out_arcs(v).find(|&i| x[i].is_positive())
}

/// Decomposes a valid flow into at most `m` path- and cycle-flows.
///
/// Paths are extracted first, each by walking positive-flow arcs out of the
/// source (a loop closed by the walk is split off as a cycle); the remaining
/// circulation is then split into cycles. Every extraction zeroes at least
/// one arc.
pub fn decompose(net: &Network, f: &FlowAssignment) -> Result<Vec<FlowComponent>, DecomposeError> {
    let violations = validate(net, f, FlowRole::Flow);
    if !violations.is_empty() {
        return Err(NetError::InvalidFlow(violations).into());
    }
    let mut x = f.values.clone();
    let mut out = Vec::new();
    let (s, t) = (net.source(), net.sink());
    while positive_out(net, &x, s).is_some() {
        let mut vertices = vec![s];
        let mut arcs = Vec::new();
        let mut pos = vec![None; net.vertex_count()];
        pos[s] = Some(0);
        let mut v = s;
        while v != t {
            let arc = positive_out(net, &x, v).expect("conservation keeps the walk going");
            let w = net.arc(arc).head;
            if let Some(p) = pos[w] {
                // the walk closed a loop: split it off as a cycle-flow
                let mut loop_arcs = arcs.split_off(p);
                loop_arcs.push(arc);
                let amount = loop_arcs.iter().map(|&a| x[a].clone()).min().unwrap();
                for &a in &loop_arcs {
                    x[a] -= &amount;
                }
                for &u in &vertices[p + 1..] {
                    pos[u] = None;
                }
                out.push(FlowComponent {
                    kind: ComponentKind::Cycle,
                    vertices: vertices.split_off(p),
                    amount,
                });
                vertices.push(w);
            } else {
                pos[w] = Some(vertices.len());
                vertices.push(w);
                arcs.push(arc);
            }
            v = w;
        }
        let amount = arcs.iter().map(|&a| x[a].clone()).min().expect("path has arcs");
        for &a in &arcs {
            x[a] -= &amount;
        }
        out.push(FlowComponent {
            kind: ComponentKind::Path,
            vertices,
            amount,
        });
    }
    while let Some(start_arc) = (0..x.len()).find(|&i| x[i].is_positive()) {
        let start = net.arc(start_arc).tail;
        let mut vertices = vec![start];
        let mut arcs = Vec::new();
        let mut pos = vec![None; net.vertex_count()];
        pos[start] = Some(0);
        let mut v = start;
        let cycle_start = loop {
            let arc = positive_out(net, &x, v).expect("circulation has no dead ends");
            let w = net.arc(arc).head;
            arcs.push(arc);
            if let Some(p) = pos[w] {
                break p;
            }
            pos[w] = Some(vertices.len());
            vertices.push(w);
            v = w;
        };
        let vertices = vertices[cycle_start..].to_vec();
        let arcs = &arcs[cycle_start..];
        let amount = arcs.iter().map(|&a| x[a].clone()).min().expect("cycle has arcs");
        for &a in arcs {
            x[a] -= &amount;
        }
        out.push(FlowComponent {
            kind: ComponentKind::Cycle,
            vertices,
            amount,
        });
    }
    Ok(out)
}

/// Arc-by-arc sum of the components; `None` if a step is not an arc.
pub fn recompose(net: &Network, components: &[FlowComponent]) -> Option<FlowAssignment> {
    let mut f = FlowAssignment::zero(net, FlowRole::Flow);
    for c in components {
        for (u, v) in c.steps() {
            let arc = net.arc_index(u, v)?;
            f.values[arc] += &c.amount;
        }
    }
    Some(f)
}

/// Source side of a minimum cut, read off the residual graph of a maximal
/// flow. If the sink is still reachable the augmenting path is returned in
/// the error.
pub fn min_cut_from_flow(net: &Network, f: &FlowAssignment) -> Result<Cut, DecomposeError> {
    let violations = validate(net, f, FlowRole::Flow);
    if !violations.is_empty() {
        return Err(NetError::InvalidFlow(violations).into());
    }
    let g = residual_graph(net, f);
    let succ = g.successors();
    let mut pred: Vec<Option<usize>> = vec![None; net.vertex_count()];
    let mut seen = vec![false; net.vertex_count()];
    let s = net.source();
    seen[s] = true;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &i in &succ[u] {
            let w = g.arcs[i].to;
            if !seen[w] {
                seen[w] = true;
                pred[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    if seen[net.sink()] {
        let mut path = vec![net.sink()];
        while let Some(p) = pred[*path.last().unwrap()] {
            path.push(p);
        }
        path.reverse();
        return Err(DecomposeError::NotMaximal(path));
    }
    Ok(Cut::from_mask(net, seen)?)
}

/// Walks from `start` along positive-flow arcs (backwards into `start` when
/// `backward`) until a vertex satisfying `stop` is met. A repeated vertex
/// closes a cycle, which is cancelled before the walk restarts. Returns the
/// arcs of the walk and its end vertex.
fn walk(
    net: &Network,
    x: &mut [Rational],
    start: usize,
    backward: bool,
    stop: impl Fn(usize) -> bool,
) -> (Vec<usize>, usize) {
    'restart: loop {
        let mut pos = vec![None; net.vertex_count()];
        pos[start] = Some(0);
        let mut vertices = vec![start];
        let mut arcs: Vec<usize> = Vec::new();
        let mut v = start;
        while v == start || !stop(v) {
            let arc = (0..net.arc_count())
                .find(|&i| {
                    let a = net.arc(i);
                    (if backward { a.head } else { a.tail }) == v && x[i].is_positive()
                })
                .expect("unbalanced vertex has a positive arc to follow");
            let a = net.arc(arc);
            let w = if backward { a.tail } else { a.head };
            arcs.push(arc);
            if let Some(p) = pos[w] {
                let cycle = &arcs[p..];
                let amount = cycle.iter().map(|&i| x[i].clone()).min().unwrap();
                for &i in cycle {
                    x[i] -= &amount;
                }
                continue 'restart;
            }
            pos[w] = Some(vertices.len());
            vertices.push(w);
            v = w;
        }
        return (arcs, v);
    }
}

/// Turns the pseudoflow of an optimal normalized tree into a maximum flow.
///
/// Excess at strong vertices is returned towards the source along
/// positive-flow paths; deficits at weak vertices are then drained
/// towards the sink. Because the tree is optimal no arc between the strong
/// and weak sets changes, so the result saturates the strong/weak cut.
pub fn recover_flow(
    gst: &Network,
    pseudoflow: &FlowAssignment,
    tree: &NormalizedTree,
) -> Result<FlowAssignment, DecomposeError> {
    let violations = validate(gst, pseudoflow, FlowRole::Pseudoflow);
    if !violations.is_empty() {
        return Err(NetError::InvalidFlow(violations).into());
    }
    if let Some((arc, _)) = tree.strong_to_weak_arc(gst, pseudoflow) {
        return Err(DecomposeError::NotOptimal(arc));
    }
    let (s, t) = (gst.source(), gst.sink());
    let mut x = pseudoflow.values.clone();
    let mut e = excess(gst, pseudoflow);
    for v in 0..gst.vertex_count() {
        if v == s || v == t {
            continue;
        }
        while e[v].is_positive() {
            let (arcs, end) = walk(gst, &mut x, v, true, |u| u == s || (u != t && e[u].is_negative()));
            let mut delta = arcs.iter().map(|&i| x[i].clone()).min().unwrap();
            delta = delta.min(e[v].clone());
            if end != s {
                delta = delta.min(-e[end].clone());
                e[end] += &delta;
            }
            for &i in &arcs {
                x[i] -= &delta;
            }
            e[v] -= delta;
        }
    }
    for v in 0..gst.vertex_count() {
        if v == s || v == t {
            continue;
        }
        while e[v].is_negative() {
            let (arcs, _) = walk(gst, &mut x, v, false, |u| u == t);
            let delta = arcs
                .iter()
                .map(|&i| x[i].clone())
                .min()
                .unwrap()
                .min(-e[v].clone());
            for &i in &arcs {
                x[i] -= &delta;
            }
            e[v] += delta;
        }
    }
    debug_assert!(e
        .iter()
        .enumerate()
        .all(|(v, ex)| v == s || v == t || ex.is_zero()));
    Ok(FlowAssignment::new(x, FlowRole::Flow))
}
