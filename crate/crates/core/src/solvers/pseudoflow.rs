//! Hochbaum's pseudoflow algorithm on normalized trees.
//!
//! The algorithm runs on `G_st`: a network whose source arcs `A(s)` and sink
//! arcs `A(t)` are kept saturated while the interior arcs carry a
//! pseudoflow. The source and sink are merged into a virtual root `r`; each
//! remaining vertex hangs in a tree below `r`. Only the branch roots (direct
//! children of `r`) may carry nonzero excess. A branch is strong when its
//! root has positive excess and weak otherwise.
//!
//! Each iteration picks a merger arc, a residual arc from a strong vertex to
//! a weak one, hangs the strong branch below the weak vertex and pushes the
//! strong root's excess up the (unique) tree path to the weak root,
//! splitting off every tree edge that cannot carry the full amount. When no
//! merger arc remains the strong vertices form a maximum blocking cut and
//! `{s} ∪ strong` is the source side of a minimum cut of `G_st`.

use super::{SolverError, SolverOptions};
use crate::decompose::recover_flow;
use crate::network::{
    validate, Capacity, Cut, FlowAssignment, FlowRole, NetError, Network,
};
use crate::numeric::Rational;
use num_traits::{Signed, Zero};

/// Directed graph with signed vertex weights and arc capacities.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    pub weights: Vec<Rational>,
    pub arcs: Vec<(usize, usize, Rational)>,
}

impl WeightedGraph {
    pub fn new(weights: Vec<Rational>, arcs: Vec<(usize, usize, Rational)>) -> Self {
        WeightedGraph { weights, arcs }
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }
}

/// `Σ_{v∈S} w_v - Σ_{a∈S, b∉S} c(a, b)`.
pub fn surplus(g: &WeightedGraph, in_set: &[bool]) -> Rational {
    let weight: Rational = g
        .weights
        .iter()
        .zip(in_set)
        .filter(|(_, &m)| m)
        .map(|(w, _)| w.clone())
        .sum();
    let boundary: Rational = g
        .arcs
        .iter()
        .filter(|(a, b, _)| in_set[*a] && !in_set[*b])
        .map(|(_, _, c)| c.clone())
        .sum();
    weight - boundary
}

/// Builds `G_st`: vertex `0` is `s`, graph vertex `v` becomes `v + 1`,
/// vertex `|V| + 1` is `t`. Interior arcs come first in input order, then
/// `(s, v)` with capacity `w_v` for positive weights, then `(v, t)` with
/// capacity `-w_v` for negative weights. Antiparallel interior arcs are
/// subdivided.
pub fn build_gst(g: &WeightedGraph) -> Result<Network, NetError> {
    let n = g.vertex_count();
    let (s, t) = (0, n + 1);
    let mut arcs: Vec<(usize, usize, Capacity)> = g
        .arcs
        .iter()
        .map(|(a, b, c)| (a + 1, b + 1, Capacity::Finite(c.clone())))
        .collect();
    for (v, w) in g.weights.iter().enumerate() {
        if w.is_positive() {
            arcs.push((s, v + 1, Capacity::Finite(w.clone())));
        }
    }
    for (v, w) in g.weights.iter().enumerate() {
        if w.is_negative() {
            arcs.push((v + 1, t, Capacity::Finite(-w.clone())));
        }
    }
    Network::build(n + 2, s, t, arcs, true)
}

/// Position of a vertex in the normalized tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeLink {
    /// The source or the sink, both merged into the virtual root.
    Terminal,
    /// Branch root: a direct child of the virtual root.
    Root,
    /// Tree edge to `parent` realized by network arc `arc`.
    Child { parent: usize, arc: usize },
}

/// Rooted spanning tree of the extended graph together with the excess at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedTree {
    pub links: Vec<TreeLink>,
    pub excess: Vec<Rational>,
}

impl NormalizedTree {
    /// Every non-terminal vertex forms its own branch.
    pub fn simple(net: &Network, pseudoflow: &FlowAssignment) -> Self {
        let links = (0..net.vertex_count())
            .map(|v| {
                if v == net.source() || v == net.sink() {
                    TreeLink::Terminal
                } else {
                    TreeLink::Root
                }
            })
            .collect();
        NormalizedTree {
            links,
            excess: crate::network::excess(net, pseudoflow),
        }
    }

    /// Branch root above `v`; `None` for terminals.
    pub fn root_of(&self, mut v: usize) -> Option<usize> {
        let mut steps = 0;
        loop {
            match self.links[v] {
                TreeLink::Terminal => return None,
                TreeLink::Root => return Some(v),
                TreeLink::Child { parent, .. } => v = parent,
            }
            steps += 1;
            assert!(steps <= self.links.len(), "cycle in normalized tree");
        }
    }

    pub fn branch_roots(&self) -> Vec<usize> {
        (0..self.links.len())
            .filter(|&v| self.links[v] == TreeLink::Root)
            .collect()
    }

    /// Strong flags for every vertex (terminals are neither, reported false).
    pub fn strong_mask(&self) -> Vec<bool> {
        let roots: Vec<Option<usize>> = (0..self.links.len()).map(|v| self.root_of(v)).collect();
        roots
            .iter()
            .map(|r| r.is_some_and(|r| self.excess[r].is_positive()))
            .collect()
    }

    pub fn is_strong(&self, v: usize) -> bool {
        self.root_of(v)
            .is_some_and(|r| self.excess[r].is_positive())
    }

    /// Residual interior arc from a strong vertex to a weak one, as
    /// `(arc, forward)`, lowest arc index first.
    pub fn strong_to_weak_arc(&self, net: &Network, pseudoflow: &FlowAssignment) -> Option<(usize, bool)> {
        let strong = self.strong_mask();
        let interior = |v: usize| self.links[v] != TreeLink::Terminal;
        net.arcs().iter().enumerate().find_map(|(i, a)| {
            if !interior(a.tail) || !interior(a.head) {
                return None;
            }
            let x = &pseudoflow.values[i];
            if strong[a.tail] && !strong[a.head] && a.capacity.sub(x).is_positive() {
                Some((i, true))
            } else if strong[a.head] && !strong[a.tail] && x.is_positive() {
                Some((i, false))
            } else {
                None
            }
        })
    }

    pub fn is_optimal(&self, net: &Network, pseudoflow: &FlowAssignment) -> bool {
        self.strong_to_weak_arc(net, pseudoflow).is_none()
    }

    /// Checks the four normalized-tree conditions plus pseudoflow
    /// feasibility and the stored excesses.
    pub fn check(&self, net: &Network, pseudoflow: &FlowAssignment) -> Result<(), String> {
        let violations = validate(net, pseudoflow, FlowRole::Pseudoflow);
        if !violations.is_empty() {
            return Err(format!("not a pseudoflow: {violations:?}"));
        }
        if self.excess != crate::network::excess(net, pseudoflow) {
            return Err("stored excess disagrees with the pseudoflow".into());
        }
        let (s, t) = (net.source(), net.sink());
        let mut in_tree = vec![false; net.arc_count()];
        for v in 0..self.links.len() {
            let _ = self.root_of(v);
            if let TreeLink::Child { parent, arc } = self.links[v] {
                let a = net.arc(arc);
                if !((a.tail == v && a.head == parent) || (a.head == v && a.tail == parent)) {
                    return Err(format!("tree edge {v}-{parent} does not match arc {arc}"));
                }
                in_tree[arc] = true;
                // downward residual: parent -> v
                let x = &pseudoflow.values[arc];
                let down = if a.tail == parent {
                    a.capacity.sub(x)
                } else {
                    Capacity::Finite(x.clone())
                };
                if !down.is_positive() {
                    return Err(format!("downward residual {parent}->{v} is not positive"));
                }
            }
        }
        for (i, a) in net.arcs().iter().enumerate() {
            let x = &pseudoflow.values[i];
            let saturated = a.capacity.finite() == Some(x);
            if a.tail == s || a.head == t {
                if !saturated {
                    return Err(format!("terminal arc ({}, {}) not saturated", a.tail, a.head));
                }
            } else if !in_tree[i] && !x.is_zero() && !saturated {
                return Err(format!(
                    "non-tree arc ({}, {}) carries {x}, neither zero nor saturated",
                    a.tail, a.head
                ));
            }
        }
        for v in 0..self.links.len() {
            if matches!(self.links[v], TreeLink::Child { .. }) && !self.excess[v].is_zero() {
                return Err(format!("non-root vertex {v} has excess {}", self.excess[v]));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoflowStats {
    /// Number of merger iterations.
    pub iterations: usize,
    pub value: Rational,
    /// Whether the run was performed on the reversed network.
    pub reversed: bool,
}

/// Outcome of the blocking-cut phase on some `G_st`.
#[derive(Debug, Clone)]
pub struct PseudoflowRun {
    pub pseudoflow: FlowAssignment,
    pub tree: NormalizedTree,
    pub iterations: usize,
}

struct Engine<'a> {
    net: &'a Network,
    x: Vec<Rational>,
    tree: NormalizedTree,
    instrumented: bool,
}

impl Engine<'_> {
    fn residual_up(&self, child: usize, parent: usize, arc: usize) -> Rational {
        let a = self.net.arc(arc);
        let cap = a.capacity.finite().expect("finite capacities");
        if a.tail == child {
            debug_assert_eq!(a.head, parent);
            cap - &self.x[arc]
        } else {
            self.x[arc].clone()
        }
    }

    fn push_up(&mut self, child: usize, arc: usize, amount: &Rational) {
        if self.net.arc(arc).tail == child {
            self.x[arc] += amount;
        } else {
            self.x[arc] -= amount;
        }
    }

    /// Lowest-index strong root with an outgoing residual arc to a weak
    /// vertex, and the lowest-index such arc from its branch. Returns
    /// `(strong_vertex, weak_vertex, arc)`.
    fn merger_arc(&self) -> Option<(usize, usize, usize)> {
        let n = self.net.vertex_count();
        let roots: Vec<Option<usize>> = (0..n).map(|v| self.tree.root_of(v)).collect();
        let strong: Vec<bool> = roots
            .iter()
            .map(|r| r.is_some_and(|r| self.tree.excess[r].is_positive()))
            .collect();
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (i, a) in self.net.arcs().iter().enumerate() {
            let (u, v) = (a.tail, a.head);
            if roots[u].is_none() || roots[v].is_none() {
                continue;
            }
            let cap = a.capacity.finite().expect("finite capacities");
            let candidate = if strong[u] && !strong[v] && &self.x[i] < cap {
                Some((u, v))
            } else if strong[v] && !strong[u] && self.x[i].is_positive() {
                Some((v, u))
            } else {
                None
            };
            if let Some((from, to)) = candidate {
                let root = roots[from].unwrap();
                if best.is_none_or(|(r, ..)| root < r) {
                    best = Some((root, from, to, i));
                }
            }
        }
        best.map(|(_, from, to, arc)| (from, to, arc))
    }

    fn merge(&mut self, strong: usize, weak: usize, merger: usize) {
        // re-root the strong branch at `strong`
        let mut path = vec![(strong, None)];
        let mut v = strong;
        while let TreeLink::Child { parent, arc } = self.tree.links[v] {
            path.push((parent, Some(arc)));
            v = parent;
        }
        for w in (1..path.len()).rev() {
            let (node, _) = path[w];
            let (below, _) = path[w - 1];
            let arc = path[w].1.expect("child link");
            self.tree.links[node] = TreeLink::Child { parent: below, arc };
        }
        self.tree.links[strong] = TreeLink::Child {
            parent: weak,
            arc: merger,
        };
        // push the old root's excess up to the weak root
        let mut cur = v;
        while let TreeLink::Child { parent, arc } = self.tree.links[cur] {
            let amount = self.tree.excess[cur].clone();
            if !amount.is_positive() {
                break;
            }
            let room = self.residual_up(cur, parent, arc);
            let delta = if room >= amount {
                amount
            } else {
                self.tree.links[cur] = TreeLink::Root;
                room
            };
            self.push_up(cur, arc, &delta);
            self.tree.excess[cur] -= &delta;
            self.tree.excess[parent] += &delta;
            cur = parent;
        }
    }

    fn audit(&self) {
        if !self.instrumented {
            return;
        }
        let f = FlowAssignment::new(self.x.clone(), FlowRole::Pseudoflow);
        if let Err(e) = self.tree.check(self.net, &f) {
            panic!("normalized tree invariant broken: {e}");
        }
    }
}

/// Runs the blocking-cut phase on an arbitrary finite network treated as
/// `G_st` (arcs out of the source form `A(s)`, arcs into the sink `A(t)`).
pub fn run_pseudoflow(net: &Network, options: SolverOptions) -> Result<PseudoflowRun, SolverError> {
    let caps = net.finite_capacities()?;
    let (s, t) = (net.source(), net.sink());
    let x: Vec<Rational> = net
        .arcs()
        .iter()
        .zip(caps)
        .map(|(a, c)| if a.tail == s || a.head == t { c } else { Rational::zero() })
        .collect();
    let start = FlowAssignment::new(x.clone(), FlowRole::Pseudoflow);
    let mut engine = Engine {
        net,
        tree: NormalizedTree::simple(net, &start),
        x,
        instrumented: options.instrumented,
    };
    engine.audit();
    let mut iterations = 0;
    while let Some((strong, weak, arc)) = engine.merger_arc() {
        engine.merge(strong, weak, arc);
        iterations += 1;
        engine.audit();
    }
    Ok(PseudoflowRun {
        pseudoflow: FlowAssignment::new(engine.x, FlowRole::Pseudoflow),
        tree: engine.tree,
        iterations,
    })
}

/// Result of [`max_blocking_cut`].
#[derive(Debug, Clone)]
pub struct BlockingCut {
    /// Maximum surplus set, as vertex ids of the input graph.
    pub set: Vec<usize>,
    pub surplus: Rational,
    /// The `G_st` network the tree and pseudoflow live on.
    pub gst: Network,
    pub tree: NormalizedTree,
    pub pseudoflow: FlowAssignment,
    pub iterations: usize,
}

pub fn max_blocking_cut(g: &WeightedGraph) -> Result<BlockingCut, SolverError> {
    max_blocking_cut_with(g, SolverOptions::default())
}

/// Maximum surplus set via the pseudoflow algorithm. The empty set (surplus
/// zero) is returned when no set has positive surplus.
pub fn max_blocking_cut_with(
    g: &WeightedGraph,
    options: SolverOptions,
) -> Result<BlockingCut, SolverError> {
    let gst = build_gst(g)?;
    let run = run_pseudoflow(&gst, options)?;
    let strong = run.tree.strong_mask();
    let mask: Vec<bool> = (0..g.vertex_count()).map(|v| strong[v + 1]).collect();
    Ok(BlockingCut {
        set: (0..g.vertex_count()).filter(|&v| mask[v]).collect(),
        surplus: surplus(g, &mask),
        gst,
        tree: run.tree,
        pseudoflow: run.pseudoflow,
        iterations: run.iterations,
    })
}

/// Same network with every arc reversed and the terminals swapped.
fn reversed(net: &Network) -> Network {
    Network::build(
        net.vertex_count(),
        net.sink(),
        net.source(),
        net.arcs()
            .iter()
            .map(|a| (a.head, a.tail, a.capacity.clone())),
        false,
    )
    .expect("reversal of a valid network is valid")
}

pub fn hochbaum_maxflow(net: &Network) -> Result<(FlowAssignment, PseudoflowStats), SolverError> {
    hochbaum_maxflow_with(net, SolverOptions::default())
}

/// Maximum flow by pseudoflow plus flow recovery.
///
/// When the total sink capacity `M⁻` is smaller than the total source
/// capacity `M⁺` the algorithm runs on the reversed network, so the number
/// of iterations is governed by `min{M⁺, M⁻}`.
pub fn hochbaum_maxflow_with(
    net: &Network,
    options: SolverOptions,
) -> Result<(FlowAssignment, PseudoflowStats), SolverError> {
    let caps = net.finite_capacities()?;
    let (s, t) = (net.source(), net.sink());
    let m_plus: Rational = net
        .arcs()
        .iter()
        .zip(&caps)
        .filter(|(a, _)| a.tail == s)
        .map(|(_, c)| c.clone())
        .sum();
    let m_minus: Rational = net
        .arcs()
        .iter()
        .zip(&caps)
        .filter(|(a, _)| a.head == t)
        .map(|(_, c)| c.clone())
        .sum();
    let reverse = m_minus < m_plus;
    let work = if reverse { reversed(net) } else { net.clone() };
    let run = run_pseudoflow(&work, options)?;
    let flow = recover_flow(&work, &run.pseudoflow, &run.tree)
        .map_err(|e| SolverError::Recovery(e.to_string()))?;
    // arc i of the reversed network is arc i of the input, traversed backwards
    let flow = FlowAssignment::new(flow.values, FlowRole::Flow);
    let value = crate::network::net_flow(net, &flow)?;
    if options.instrumented {
        let strong = run.tree.strong_mask();
        let mut side: Vec<bool> = strong.clone();
        side[work.source()] = true;
        let cut = Cut::from_mask(&work, side)?;
        assert_eq!(
            crate::network::cut_capacity(&work, &cut),
            Capacity::Finite(value.clone()),
            "strong set is not a minimum cut"
        );
    }
    Ok((
        flow,
        PseudoflowStats {
            iterations: run.iterations,
            value,
            reversed: reverse,
        },
    ))
}
