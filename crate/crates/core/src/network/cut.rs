use super::flow::require_flow;
use super::{Capacity, FlowAssignment, NetError, Network};
use crate::numeric::Rational;

/// Vertex bipartition `(S, S̄)` with the source in `S` and the sink in `S̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    side: Vec<bool>,
}

impl Cut {
    /// Cut whose source side is exactly `source_side`.
    pub fn new(
        net: &Network,
        source_side: impl IntoIterator<Item = usize>,
    ) -> Result<Cut, NetError> {
        let mut side = vec![false; net.vertex_count()];
        for v in source_side {
            if v >= side.len() {
                return Err(NetError::InvalidVertex(v));
            }
            side[v] = true;
        }
        Cut::from_mask(net, side)
    }

    pub fn from_mask(net: &Network, side: Vec<bool>) -> Result<Cut, NetError> {
        if side.len() != net.vertex_count() {
            return Err(NetError::InvalidCut(format!(
                "mask has {} entries for {} vertices",
                side.len(),
                net.vertex_count()
            )));
        }
        if !side[net.source()] {
            return Err(NetError::InvalidCut("source not on the source side".into()));
        }
        if side[net.sink()] {
            return Err(NetError::InvalidCut("sink on the source side".into()));
        }
        Ok(Cut { side })
    }

    pub fn contains(&self, v: usize) -> bool {
        self.side[v]
    }

    pub fn source_side(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }

    pub fn mask(&self) -> &[bool] {
        &self.side
    }

    /// Arcs directed from `S` to `S̄`.
    pub fn traversing_arcs<'a>(&'a self, net: &'a Network) -> impl Iterator<Item = usize> + 'a {
        net.arcs()
            .iter()
            .enumerate()
            .filter(|(_, a)| self.side[a.tail] && !self.side[a.head])
            .map(|(i, _)| i)
    }
}

/// `C(S, S̄)`: total capacity of the traversing arcs.
pub fn cut_capacity(net: &Network, cut: &Cut) -> Capacity {
    cut.traversing_arcs(net)
        .fold(Capacity::zero(), |acc, i| acc.add(&net.arc(i).capacity))
}

/// `f(S, S̄) - f(S̄, S)`.
pub fn flow_across_cut(
    net: &Network,
    f: &FlowAssignment,
    cut: &Cut,
) -> Result<Rational, NetError> {
    require_flow(net, f)?;
    let mut total = Rational::default();
    for (a, x) in net.arcs().iter().zip(&f.values) {
        match (cut.contains(a.tail), cut.contains(a.head)) {
            (true, false) => total += x,
            (false, true) => total -= x,
            _ => {}
        }
    }
    Ok(total)
}
