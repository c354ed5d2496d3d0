use super::SolverError;
use crate::network::{FlowAssignment, FlowRole, Network};
use crate::numeric::Rational;
use num_traits::{Signed, Zero};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentStats {
    pub augmentations: usize,
    pub value: Rational,
}

/// Residual capacity of `arc` when traversed out of `from`.
fn residual(net: &Network, caps: &[Rational], x: &[Rational], arc: usize, from: usize) -> Rational {
    if net.arc(arc).tail == from {
        &caps[arc] - &x[arc]
    } else {
        x[arc].clone()
    }
}

/// Ford-Fulkerson with breadth-first augmenting paths.
pub fn edmonds_karp(net: &Network) -> Result<(FlowAssignment, AugmentStats), SolverError> {
    let caps = net.finite_capacities()?;
    let adj = net.incident_arcs();
    let (s, t) = (net.source(), net.sink());
    let mut x = vec![Rational::zero(); net.arc_count()];
    let mut value = Rational::zero();
    let mut augmentations = 0;
    loop {
        // parent[v] = arc used to reach v
        let mut parent: Vec<Option<usize>> = vec![None; net.vertex_count()];
        let mut seen = vec![false; net.vertex_count()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &arc in &adj[u] {
                let a = net.arc(arc);
                let w = if a.tail == u { a.head } else { a.tail };
                if !seen[w] && residual(net, &caps, &x, arc, u).is_positive() {
                    seen[w] = true;
                    parent[w] = Some(arc);
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut path = Vec::new();
        let mut v = t;
        while v != s {
            let arc = parent[v].expect("bfs tree");
            let a = net.arc(arc);
            let u = if a.head == v { a.tail } else { a.head };
            path.push((arc, u));
            v = u;
        }
        let bottleneck = path
            .iter()
            .map(|&(arc, u)| residual(net, &caps, &x, arc, u))
            .min()
            .expect("non-empty path");
        for &(arc, u) in &path {
            if net.arc(arc).tail == u {
                x[arc] += &bottleneck;
            } else {
                x[arc] -= &bottleneck;
            }
        }
        value += bottleneck;
        augmentations += 1;
    }
    Ok((
        FlowAssignment::new(x, FlowRole::Flow),
        AugmentStats {
            augmentations,
            value,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{net_flow, validate};
    use crate::numeric::int;

    #[test]
    fn single_arc() {
        let net = Network::from_int_arcs(2, 0, 1, &[(0, 1, 5)]).unwrap();
        let (f, stats) = edmonds_karp(&net).unwrap();
        assert_eq!(stats.value, int(5));
        assert_eq!(stats.augmentations, 1);
        assert_eq!(net_flow(&net, &f).unwrap(), int(5));
    }

    #[test]
    fn zero_capacities() {
        let net = Network::from_int_arcs(3, 0, 2, &[(0, 1, 0), (1, 2, 0)]).unwrap();
        let (_, stats) = edmonds_karp(&net).unwrap();
        assert_eq!(stats.value, int(0));
        assert_eq!(stats.augmentations, 0);
    }

    #[test]
    fn two_disjoint_paths() {
        let net = Network::from_int_arcs(
            4,
            0,
            3,
            &[(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        )
        .unwrap();
        let (f, stats) = edmonds_karp(&net).unwrap();
        assert_eq!(stats.value, int(2));
        assert!(validate(&net, &f, FlowRole::Flow).is_empty());
    }

    #[test]
    fn unbounded_capacity_is_rejected() {
        let net = Network::build(
            2,
            0,
            1,
            vec![(0, 1, crate::network::Capacity::Unbounded)],
            false,
        )
        .unwrap();
        assert!(edmonds_karp(&net).is_err());
    }
}
