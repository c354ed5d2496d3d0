use super::{Capacity, FlowAssignment, Network};
use num_traits::Signed;

/// A vertex pair with strictly positive residual capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualArc {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
    /// Underlying network arc.
    pub arc: usize,
    /// `true` when `(from, to)` is the arc itself, `false` for its reverse.
    pub forward: bool,
}

/// Residual graph `G_f` of a flow or preflow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualGraph {
    pub vertex_count: usize,
    pub arcs: Vec<ResidualArc>,
}

impl ResidualGraph {
    pub fn capacity(&self, from: usize, to: usize) -> Capacity {
        self.arcs
            .iter()
            .find(|a| a.from == from && a.to == to)
            .map_or_else(Capacity::zero, |a| a.capacity.clone())
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for (i, a) in self.arcs.iter().enumerate() {
            out[a.from].push(i);
        }
        out
    }

    /// Vertices reachable from `start`.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let succ = self.successors();
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &i in &succ[u] {
                let w = self.arcs[i].to;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// `c_f(u, v) = c̄(u, v) - f(u, v)` on every pair where it is positive.
pub fn residual_graph(net: &Network, f: &FlowAssignment) -> ResidualGraph {
    let mut arcs = Vec::new();
    for (i, (a, x)) in net.arcs().iter().zip(&f.values).enumerate() {
        let fwd = a.capacity.sub(x);
        if fwd.is_positive() {
            arcs.push(ResidualArc {
                from: a.tail,
                to: a.head,
                capacity: fwd,
                arc: i,
                forward: true,
            });
        }
        if x.is_positive() {
            arcs.push(ResidualArc {
                from: a.head,
                to: a.tail,
                capacity: Capacity::Finite(x.clone()),
                arc: i,
                forward: false,
            });
        }
    }
    ResidualGraph {
        vertex_count: net.vertex_count(),
        arcs,
    }
}
