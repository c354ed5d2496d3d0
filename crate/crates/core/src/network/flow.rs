use super::{NetError, Network};
use crate::numeric::Rational;
use num_traits::{Signed, Zero};
use std::fmt;

/// Which constraints a [`FlowAssignment`] is meant to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowRole {
    /// Capacity and conservation at every vertex except source and sink.
    Flow,
    /// Capacity and non-negative excess at every vertex except the source.
    Preflow,
    /// Capacity only.
    Pseudoflow,
}

/// Flow values stored per arc.
///
/// The value on a vertex pair is antisymmetric by construction:
/// `f(u, v) = x[(u, v)]`, `f(v, u) = -x[(u, v)]`, and `0` off the arc set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub values: Vec<Rational>,
    pub role: FlowRole,
}

impl FlowAssignment {
    pub fn zero(net: &Network, role: FlowRole) -> Self {
        FlowAssignment {
            values: vec![Rational::zero(); net.arc_count()],
            role,
        }
    }

    pub fn new(values: Vec<Rational>, role: FlowRole) -> Self {
        FlowAssignment { values, role }
    }

    /// Antisymmetric pair value `f(u, v)`.
    pub fn pair(&self, net: &Network, u: usize, v: usize) -> Rational {
        if let Some(i) = net.arc_index(u, v) {
            self.values[i].clone()
        } else if let Some(i) = net.arc_index(v, u) {
            -self.values[i].clone()
        } else {
            Rational::zero()
        }
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }
}

/// A single violated constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Length { expected: usize, found: usize },
    /// `f(from, to) > c̄(from, to)`.
    Capacity {
        from: usize,
        to: usize,
        value: Rational,
        capacity: Rational,
    },
    /// Nonzero excess at an internal vertex of a flow.
    Conservation { vertex: usize, excess: Rational },
    /// Negative excess at a non-source vertex of a preflow.
    NegativeExcess { vertex: usize, excess: Rational },
}

impl Violation {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Violation::Capacity { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { expected, found } => {
                write!(f, "expected {expected} arc values, found {found}")
            }
            Violation::Capacity {
                from,
                to,
                value,
                capacity,
            } => write!(f, "f({from},{to}) = {value} exceeds capacity {capacity}"),
            Violation::Conservation { vertex, excess } => {
                write!(f, "conservation fails at {vertex} (excess {excess})")
            }
            Violation::NegativeExcess { vertex, excess } => {
                write!(f, "negative excess {excess} at {vertex}")
            }
        }
    }
}

/// Excess `e(v) = inflow - outflow` for every vertex.
pub fn excess(net: &Network, f: &FlowAssignment) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); net.vertex_count()];
    for (a, x) in net.arcs().iter().zip(&f.values) {
        e[a.head] += x;
        e[a.tail] -= x;
    }
    e
}

/// Every constraint of `role` that `f` violates; empty means valid.
pub fn validate(net: &Network, f: &FlowAssignment, role: FlowRole) -> Vec<Violation> {
    if f.values.len() != net.arc_count() {
        return vec![Violation::Length {
            expected: net.arc_count(),
            found: f.values.len(),
        }];
    }
    let mut out = Vec::new();
    for (a, x) in net.arcs().iter().zip(&f.values) {
        if !a.capacity.admits(x) {
            out.push(Violation::Capacity {
                from: a.tail,
                to: a.head,
                value: x.clone(),
                capacity: a.capacity.finite().cloned().unwrap_or_default(),
            });
        }
        // reverse pair: f(head, tail) = -x against c̄ = 0
        if x.is_negative() {
            out.push(Violation::Capacity {
                from: a.head,
                to: a.tail,
                value: -x.clone(),
                capacity: Rational::zero(),
            });
        }
    }
    if role == FlowRole::Pseudoflow {
        return out;
    }
    for (v, e) in excess(net, f).into_iter().enumerate() {
        if v == net.source() {
            continue;
        }
        match role {
            FlowRole::Flow if v != net.sink() && !e.is_zero() => {
                out.push(Violation::Conservation {
                    vertex: v,
                    excess: e,
                })
            }
            FlowRole::Preflow if e.is_negative() => out.push(Violation::NegativeExcess {
                vertex: v,
                excess: e,
            }),
            _ => {}
        }
    }
    out
}

pub(crate) fn require_flow(net: &Network, f: &FlowAssignment) -> Result<(), NetError> {
    let violations = validate(net, f, FlowRole::Flow);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(NetError::InvalidFlow(violations))
    }
}

/// Net flow `|f| = Σ_e f(e) φ(s, e)`.
pub fn net_flow(net: &Network, f: &FlowAssignment) -> Result<Rational, NetError> {
    require_flow(net, f)?;
    Ok(net
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, _)| &f.values[i] * Rational::from_integer(net.incidence(net.source(), i).into()))
        .sum())
}
