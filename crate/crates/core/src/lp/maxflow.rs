//! The maximum-flow linear program, its reduced dual and the conversions
//! between cuts and dual points.

use num_traits::{One, Signed, Zero};

use super::program::{LinearProgram, Sense};
use super::simplex::{simplex_solve, LPResult};
use super::LpError;
use crate::network::{cut_capacity, Capacity, Cut, Network};
use crate::numeric::{int, Rational};

/// Primal maxflow LP: one variable per arc, objective the source row of the
/// incidence matrix, conservation at internal vertices written as the two
/// blocks `Φ* x ≤ 0` and `-Φ* x ≤ 0`, then `x ≤ c` for every finite arc.
pub fn build_primal(net: &Network) -> LinearProgram {
    let m = net.arc_count();
    let objective: Vec<Rational> = (0..m).map(|k| int(net.incidence(net.source(), k))).collect();
    let internal = internal_vertices(net);
    let mut matrix = Vec::new();
    for sign in [1, -1] {
        for &v in &internal {
            matrix.push((0..m).map(|k| int(sign * net.incidence(v, k))).collect());
        }
    }
    let mut rhs = vec![Rational::zero(); matrix.len()];
    for (k, arc) in net.arcs().iter().enumerate() {
        if let Capacity::Finite(c) = &arc.capacity {
            let mut row = vec![Rational::zero(); m];
            row[k] = Rational::one();
            matrix.push(row);
            rhs.push(c.clone());
        }
    }
    LinearProgram { sense: Sense::Max, objective, matrix, rhs, nonneg: vec![true; m] }
}

fn internal_vertices(net: &Network) -> Vec<usize> {
    let order = net.vertex_order();
    order[1..order.len() - 1].to_vec()
}

/// Value fixed for `v` in the reduced dual: `-1` at the source, `0` at the
/// sink, `None` for internal vertices.
fn pinned(net: &Network, v: usize) -> Option<Rational> {
    if v == net.source() {
        Some(-Rational::one())
    } else if v == net.sink() {
        Some(Rational::zero())
    } else {
        None
    }
}

/// Reduced dual of the maxflow LP.
///
/// Variables are one free `v` per internal vertex (in matrix order)
/// followed by one non-negative `e` per finite arc (in arc order). With
/// `v_s = -1` and `v_t = 0` substituted, every arc `k = (i, j)` contributes
/// the row `v_i - v_j + e_k ≥ 0`. Unbounded arcs get no `e` variable, which
/// forces `v_i ≥ v_j` on them.
pub fn build_reduced_dual(net: &Network) -> LinearProgram {
    let internal = internal_vertices(net);
    let mut column_of_vertex = vec![None; net.vertex_count()];
    for (i, &v) in internal.iter().enumerate() {
        column_of_vertex[v] = Some(i);
    }
    let mut objective = vec![Rational::zero(); internal.len()];
    let mut column_of_arc = vec![None; net.arc_count()];
    for (k, arc) in net.arcs().iter().enumerate() {
        if let Capacity::Finite(c) = &arc.capacity {
            column_of_arc[k] = Some(objective.len());
            objective.push(c.clone());
        }
    }
    let width = objective.len();
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for (k, arc) in net.arcs().iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        let mut constant = Rational::zero();
        for (v, sign) in [(arc.tail, 1), (arc.head, -1)] {
            match column_of_vertex[v] {
                Some(col) => row[col] += int(sign),
                None => constant += pinned(net, v).unwrap() * int(sign),
            }
        }
        if let Some(col) = column_of_arc[k] {
            row[col] = Rational::one();
        }
        matrix.push(row);
        rhs.push(-constant);
    }
    let mut nonneg = vec![false; internal.len()];
    nonneg.resize(width, true);
    LinearProgram { sense: Sense::Min, objective, matrix, rhs, nonneg }
}

/// Solve the primal maxflow LP.
pub fn lp_maxflow(net: &Network) -> Result<LPResult, LpError> {
    simplex_solve(&build_primal(net))
}

/// Point of the maxflow dual: a potential per vertex and a length per arc.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPoint {
    pub v: Vec<Rational>,
    pub e: Vec<Rational>,
}

impl DualPoint {
    /// `Σ c_k e_k`; unbounded as soon as an infinite arc has positive length.
    pub fn objective(&self, net: &Network) -> Capacity {
        let mut total = Capacity::zero();
        for (arc, e) in net.arcs().iter().zip(&self.e) {
            if e.is_zero() {
                continue;
            }
            total = match &arc.capacity {
                Capacity::Finite(c) => total.add(&Capacity::Finite(c * e)),
                Capacity::Unbounded => Capacity::Unbounded,
            };
        }
        total
    }

    /// Check every dual constraint, reporting the first violated one.
    pub fn check(&self, net: &Network) -> Result<(), String> {
        if self.v.len() != net.vertex_count() || self.e.len() != net.arc_count() {
            return Err("dimension mismatch".into());
        }
        for v in [net.source(), net.sink()] {
            if Some(&self.v[v]) != pinned(net, v).as_ref() {
                return Err(format!("vertex {} must be pinned to {}", v + 1, pinned(net, v).unwrap()));
            }
        }
        for (k, arc) in net.arcs().iter().enumerate() {
            let e = &self.e[k];
            if e.is_negative() {
                return Err(format!("arc {} has negative length", k + 1));
            }
            if &self.v[arc.tail] - &self.v[arc.head] + e < Rational::zero() {
                return Err(format!("arc ({}, {}) violates its row", arc.tail + 1, arc.head + 1));
            }
        }
        Ok(())
    }
}

/// Dual point of a cut: potential `-1` on `S`, `0` on `S̄`, unit length on
/// every arc from `S` to `S̄`.
pub fn dual_from_cut(net: &Network, cut: &Cut) -> DualPoint {
    let v = (0..net.vertex_count())
        .map(|u| if cut.contains(u) { -Rational::one() } else { Rational::zero() })
        .collect();
    let e = net
        .arcs()
        .iter()
        .map(|a| {
            if cut.contains(a.tail) && !cut.contains(a.head) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    DualPoint { v, e }
}

/// Expand a solution of [`build_reduced_dual`] into a full [`DualPoint`].
pub fn dual_point_from_solution(net: &Network, solution: &[Rational]) -> DualPoint {
    let internal = internal_vertices(net);
    let mut v: Vec<Rational> = (0..net.vertex_count())
        .map(|u| pinned(net, u).unwrap_or_else(Rational::zero))
        .collect();
    for (i, &u) in internal.iter().enumerate() {
        v[u] = solution[i].clone();
    }
    let mut next = internal.len();
    let e = net
        .arcs()
        .iter()
        .map(|a| match a.capacity {
            Capacity::Finite(_) => {
                next += 1;
                solution[next - 1].clone()
            }
            Capacity::Unbounded => Rational::zero(),
        })
        .collect();
    DualPoint { v, e }
}

/// Cut extracted from a feasible dual point by a threshold sweep.
///
/// Potentials are clamped to `[-1, 0]` and every threshold `χ` among the
/// distinct clamped values below zero yields `S_χ = {u : v_u ≤ χ}`. A
/// uniformly random `χ` cuts each arc with probability at most its length,
/// so the cheapest of these cuts costs no more than the dual objective.
pub fn cut_from_dual(net: &Network, point: &DualPoint) -> Result<Cut, LpError> {
    point.check(net).map_err(LpError::Infeasible)?;
    let zero = Rational::zero();
    let minus_one = -Rational::one();
    let clamped: Vec<Rational> = point
        .v
        .iter()
        .map(|x| x.clone().max(minus_one.clone()).min(zero.clone()))
        .collect();
    let mut thresholds: Vec<Rational> = clamped.iter().filter(|x| **x < zero).cloned().collect();
    thresholds.sort();
    thresholds.dedup();
    let mut best: Option<(Capacity, Cut)> = None;
    for chi in thresholds {
        let cut = Cut::from_mask(net, clamped.iter().map(|x| *x <= chi).collect())?;
        let cap = cut_capacity(net, &cut);
        if best.as_ref().is_none_or(|(b, _)| cap < *b) {
            best = Some((cap, cut));
        }
    }
    // the source sits at -1, so at least one threshold exists
    Ok(best.expect("source potential is a threshold").1)
}
