//! Network data model: capacitated simple digraphs with a source and a sink,
//! incidence matrices, flow validation, cuts and residual graphs.

mod cut;
pub mod dimacs;
mod flow;
mod residual;

pub use cut::{cut_capacity, flow_across_cut, Cut};
pub use flow::{excess, net_flow, validate, FlowAssignment, FlowRole, Violation};
pub use residual::{residual_graph, ResidualArc, ResidualGraph};

use crate::matrix::IntMatrix;
use crate::numeric::Rational;
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("source and sink coincide")]
    SourceIsSink,
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("arc ({0}, {1}) enters the source or leaves the sink")]
    SourceSinkViolation(usize, usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("antiparallel arcs ({0}, {1}) and ({1}, {0}) in a simple network")]
    AntiparallelArc(usize, usize),
    #[error("negative capacity on arc ({0}, {1})")]
    NegativeCapacity(usize, usize),
    #[error("unbounded capacity on arc ({0}, {1}) where a finite one is required")]
    UnboundedCapacity(usize, usize),
    #[error("invalid flow: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidFlow(Vec<Violation>),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
}

/// Arc capacity. `Unbounded` is absorbing under addition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(Rational),
    Unbounded,
}

impl Capacity {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Capacity::Finite(c) => Some(c),
            Capacity::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Capacity::Unbounded)
    }

    pub fn zero() -> Self {
        Capacity::Finite(Rational::zero())
    }

    pub fn add(&self, other: &Capacity) -> Capacity {
        match (self, other) {
            (Capacity::Finite(a), Capacity::Finite(b)) => Capacity::Finite(a + b),
            _ => Capacity::Unbounded,
        }
    }

    /// `self - amount`; unbounded stays unbounded.
    pub fn sub(&self, amount: &Rational) -> Capacity {
        match self {
            Capacity::Finite(a) => Capacity::Finite(a - amount),
            Capacity::Unbounded => Capacity::Unbounded,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Capacity::Finite(a) => a.is_positive(),
            Capacity::Unbounded => true,
        }
    }

    /// Whether `value <= self`.
    pub fn admits(&self, value: &Rational) -> bool {
        match self {
            Capacity::Finite(a) => value <= a,
            Capacity::Unbounded => true,
        }
    }
}

impl From<Rational> for Capacity {
    fn from(v: Rational) -> Self {
        Capacity::Finite(v)
    }
}

impl From<i64> for Capacity {
    fn from(v: i64) -> Self {
        Capacity::Finite(crate::numeric::int(v))
    }
}

impl PartialOrd for Capacity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Capacity {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Capacity::Finite(a), Capacity::Finite(b)) => a.cmp(b),
            (Capacity::Finite(_), Capacity::Unbounded) => Less,
            (Capacity::Unbounded, Capacity::Finite(_)) => Greater,
            (Capacity::Unbounded, Capacity::Unbounded) => Equal,
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(c) => write!(f, "{c}"),
            Capacity::Unbounded => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
}

/// Record of an input arc that was replaced by a two-arc path through a
/// fresh midpoint vertex because its reverse was also present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub tail: usize,
    pub head: usize,
    pub midpoint: usize,
    /// Indices of the arcs `(tail, midpoint)` and `(midpoint, head)`.
    pub arcs: [usize; 2],
}

/// A capacitated simple directed graph with distinguished source and sink.
///
/// Vertex ids are `0..n`. No arc enters the source, no arc leaves the sink
/// and no pair of antiparallel arcs exists.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
    lookup: HashMap<(usize, usize), usize>,
    subdivisions: Vec<Subdivision>,
    original_vertices: usize,
}

impl Network {
    /// Builds a network from `(tail, head, capacity)` triples.
    ///
    /// With `allow_antiparallel`, every arc whose reverse also appears is
    /// replaced by `(tail, c) , (c, head)` with a fresh vertex `c` carrying the
    /// same capacity on both halves. Fresh vertices are numbered from `n`
    /// upwards in input order. Otherwise antiparallel input is an error.
    pub fn build(
        n: usize,
        source: usize,
        sink: usize,
        arcs: impl IntoIterator<Item = (usize, usize, Capacity)>,
        allow_antiparallel: bool,
    ) -> Result<Network, NetError> {
        if source >= n {
            return Err(NetError::InvalidVertex(source));
        }
        if sink >= n {
            return Err(NetError::InvalidVertex(sink));
        }
        if source == sink {
            return Err(NetError::SourceIsSink);
        }
        let input: Vec<(usize, usize, Capacity)> = arcs.into_iter().collect();
        let mut seen = HashMap::new();
        for &(u, v, ref c) in &input {
            for w in [u, v] {
                if w >= n {
                    return Err(NetError::InvalidVertex(w));
                }
            }
            if u == v {
                return Err(NetError::SelfLoop(u));
            }
            if v == source || u == sink {
                return Err(NetError::SourceSinkViolation(u, v));
            }
            if let Capacity::Finite(c) = c {
                if c.is_negative() {
                    return Err(NetError::NegativeCapacity(u, v));
                }
            }
            if seen.insert((u, v), ()).is_some() {
                return Err(NetError::DuplicateArc(u, v));
            }
        }
        let mut net = Network {
            n,
            source,
            sink,
            arcs: Vec::with_capacity(input.len()),
            lookup: HashMap::new(),
            subdivisions: Vec::new(),
            original_vertices: n,
        };
        for (u, v, c) in input {
            if seen.contains_key(&(v, u)) {
                if !allow_antiparallel {
                    return Err(NetError::AntiparallelArc(u.min(v), u.max(v)));
                }
                let mid = net.n;
                net.n += 1;
                let first = net.push_arc(u, mid, c.clone());
                let second = net.push_arc(mid, v, c);
                net.subdivisions.push(Subdivision {
                    tail: u,
                    head: v,
                    midpoint: mid,
                    arcs: [first, second],
                });
            } else {
                net.push_arc(u, v, c);
            }
        }
        Ok(net)
    }

    /// Shorthand for a simple network with integer capacities.
    pub fn from_int_arcs(
        n: usize,
        source: usize,
        sink: usize,
        arcs: &[(usize, usize, i64)],
    ) -> Result<Network, NetError> {
        Network::build(
            n,
            source,
            sink,
            arcs.iter().map(|&(u, v, c)| (u, v, Capacity::from(c))),
            false,
        )
    }

    fn push_arc(&mut self, tail: usize, head: usize, capacity: Capacity) -> usize {
        let idx = self.arcs.len();
        self.arcs.push(Arc {
            tail,
            head,
            capacity,
        });
        self.lookup.insert((tail, head), idx);
        idx
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, idx: usize) -> &Arc {
        &self.arcs[idx]
    }

    pub fn arc_index(&self, tail: usize, head: usize) -> Option<usize> {
        self.lookup.get(&(tail, head)).copied()
    }

    /// Capacity extended by zero to every vertex pair.
    pub fn pair_capacity(&self, u: usize, v: usize) -> Capacity {
        self.arc_index(u, v)
            .map_or_else(Capacity::zero, |i| self.arcs[i].capacity.clone())
    }

    pub fn subdivisions(&self) -> &[Subdivision] {
        &self.subdivisions
    }

    /// Number of vertices before any subdivision midpoints were added.
    pub fn original_vertex_count(&self) -> usize {
        self.original_vertices
    }

    pub fn is_finite(&self) -> bool {
        self.arcs.iter().all(|a| !a.capacity.is_unbounded())
    }

    /// Finite capacities as a vector, or the first unbounded arc as error.
    pub fn finite_capacities(&self) -> Result<Vec<Rational>, NetError> {
        self.arcs
            .iter()
            .map(|a| {
                a.capacity
                    .finite()
                    .cloned()
                    .ok_or(NetError::UnboundedCapacity(a.tail, a.head))
            })
            .collect()
    }

    /// Vertex enumeration used for matrices: source first, sink last, the
    /// rest in increasing id order.
    pub fn vertex_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        order.push(self.source);
        order.extend((0..self.n).filter(|&v| v != self.source && v != self.sink));
        order.push(self.sink);
        order
    }

    /// Incidence function: `+1` if the arc leaves `v`, `-1` if it enters.
    pub fn incidence(&self, v: usize, arc: usize) -> i64 {
        let a = &self.arcs[arc];
        if a.tail == v {
            1
        } else if a.head == v {
            -1
        } else {
            0
        }
    }

    /// `n x m` incidence matrix with rows in [`Network::vertex_order`] and
    /// columns in arc order.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let order = self.vertex_order();
        let mut m = IntMatrix::zeros(self.n, self.arcs.len());
        for (row, &v) in order.iter().enumerate() {
            for j in 0..self.arcs.len() {
                m.set(row, j, self.incidence(v, j));
            }
        }
        m
    }

    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arcs.len()).filter(move |&i| self.arcs[i].tail == v)
    }

    /// Adjacency lists: for every vertex, the indices of arcs touching it.
    pub(crate) fn incident_arcs(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, a) in self.arcs.iter().enumerate() {
            adj[a.tail].push(i);
            adj[a.head].push(i);
        }
        adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Network {
        Network::from_int_arcs(
            4,
            0,
            3,
            &[(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1), (1, 2, 1)],
        )
        .unwrap()
    }

    #[test]
    fn minimal_network() {
        let net = Network::from_int_arcs(2, 0, 1, &[(0, 1, 5)]).unwrap();
        assert_eq!(net.arc_count(), 1);
        assert_eq!(net.incidence_matrix().to_rows(), vec![vec![1], vec![-1]]);
    }

    #[test]
    fn g1_incidence_matrix_matches_table() {
        let expected = vec![
            vec![1, 1, 0, 0, 0],
            vec![-1, 0, 1, 0, 1],
            vec![0, -1, 0, 1, -1],
            vec![0, 0, -1, -1, 0],
        ];
        assert_eq!(g1().incidence_matrix().to_rows(), expected);
    }

    #[test]
    fn rejects_arc_into_source() {
        let err = Network::from_int_arcs(3, 0, 2, &[(1, 0, 1)]).unwrap_err();
        assert_eq!(err, NetError::SourceSinkViolation(1, 0));
        let err = Network::from_int_arcs(3, 0, 2, &[(2, 1, 1)]).unwrap_err();
        assert_eq!(err, NetError::SourceSinkViolation(2, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Network::from_int_arcs(3, 0, 2, &[(0, 1, 1), (0, 1, 2)]).unwrap_err(),
            NetError::DuplicateArc(0, 1)
        );
        assert_eq!(
            Network::from_int_arcs(3, 0, 2, &[(0, 5, 1)]).unwrap_err(),
            NetError::InvalidVertex(5)
        );
        assert_eq!(
            Network::from_int_arcs(3, 0, 2, &[(0, 1, -1)]).unwrap_err(),
            NetError::NegativeCapacity(0, 1)
        );
        assert_eq!(
            Network::from_int_arcs(4, 0, 3, &[(1, 2, 1), (2, 1, 1)]).unwrap_err(),
            NetError::AntiparallelArc(1, 2)
        );
    }

    #[test]
    fn antiparallel_pair_is_subdivided() {
        let net = Network::build(
            4,
            0,
            3,
            [(0, 1, 3), (1, 2, 2), (2, 1, 4), (2, 3, 3)]
                .into_iter()
                .map(|(u, v, c)| (u, v, Capacity::from(c))),
            true,
        )
        .unwrap();
        assert_eq!(net.vertex_count(), 6);
        assert_eq!(net.original_vertex_count(), 4);
        assert_eq!(net.arc_count(), 6);
        assert_eq!(net.subdivisions().len(), 2);
        let s = &net.subdivisions()[0];
        assert_eq!((s.tail, s.head, s.midpoint), (1, 2, 4));
        assert!(net.arc_index(1, 4).is_some() && net.arc_index(4, 2).is_some());
        assert!(net.arc_index(1, 2).is_none());
        for (i, j) in [(1usize, 2usize), (2, 1)] {
            assert!(net.arc_index(i, j).is_none());
        }
    }

    #[test]
    fn incidence_columns_sum_to_zero() {
        let m = g1().incidence_matrix();
        for c in 0..m.cols() {
            let col = m.column(c);
            assert_eq!(col.iter().sum::<i64>(), 0);
            assert_eq!(col.iter().filter(|&&v| v == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&v| v == -1).count(), 1);
        }
    }

    #[test]
    fn capacity_ordering_and_sum() {
        let a = Capacity::from(3);
        assert!(a < Capacity::Unbounded);
        assert_eq!(a.add(&Capacity::Unbounded), Capacity::Unbounded);
        assert_eq!(a.add(&Capacity::from(2)), Capacity::from(5));
    }
}
