use super::{SolverError, SolverOptions};
use crate::network::{residual_graph, validate, FlowAssignment, FlowRole, Network};
use crate::numeric::Rational;
use num_traits::{Signed, Zero};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushRelabelStats {
    pub pushes: usize,
    pub relabels: usize,
    pub value: Rational,
}

impl PushRelabelStats {
    pub fn operations(&self) -> usize {
        self.pushes + self.relabels
    }
}

/// Distance labels `d: V -> Z≥0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelFunction {
    pub labels: Vec<usize>,
}

impl LabelFunction {
    /// Checks `d(s) = n`, `d(t) = 0` and `d(u) <= d(v) + 1` on every residual
    /// arc `(u, v)` of `f`.
    pub fn check(&self, net: &Network, f: &FlowAssignment) -> Result<(), String> {
        let d = &self.labels;
        if d[net.source()] != net.vertex_count() {
            return Err(format!("d(s) = {} != n", d[net.source()]));
        }
        if d[net.sink()] != 0 {
            return Err(format!("d(t) = {} != 0", d[net.sink()]));
        }
        for a in residual_graph(net, f).arcs {
            if d[a.from] > d[a.to] + 1 {
                return Err(format!(
                    "residual arc ({}, {}) with d = {} > {} + 1",
                    a.from, a.to, d[a.from], d[a.to]
                ));
            }
        }
        Ok(())
    }
}

pub fn push_relabel(net: &Network) -> Result<(FlowAssignment, PushRelabelStats), SolverError> {
    push_relabel_with(net, SolverOptions::default())
}

struct State<'a> {
    net: &'a Network,
    caps: Vec<Rational>,
    adj: Vec<Vec<usize>>,
    x: Vec<Rational>,
    excess: Vec<Rational>,
    d: Vec<usize>,
    current: Vec<usize>,
    queue: VecDeque<usize>,
    stats: PushRelabelStats,
    instrumented: bool,
}

impl State<'_> {
    fn other(&self, arc: usize, v: usize) -> usize {
        let a = self.net.arc(arc);
        if a.tail == v {
            a.head
        } else {
            a.tail
        }
    }

    fn residual(&self, arc: usize, from: usize) -> Rational {
        if self.net.arc(arc).tail == from {
            &self.caps[arc] - &self.x[arc]
        } else {
            self.x[arc].clone()
        }
    }

    fn is_terminal(&self, v: usize) -> bool {
        v == self.net.source() || v == self.net.sink()
    }

    fn push(&mut self, v: usize, arc: usize, amount: Rational) {
        let w = self.other(arc, v);
        if self.net.arc(arc).tail == v {
            self.x[arc] += &amount;
        } else {
            self.x[arc] -= &amount;
        }
        let was_inactive = !self.excess[w].is_positive();
        self.excess[v] -= &amount;
        self.excess[w] += amount;
        if was_inactive && self.excess[w].is_positive() && !self.is_terminal(w) {
            self.queue.push_back(w);
        }
        self.stats.pushes += 1;
        self.audit();
    }

    fn relabel(&mut self, v: usize) {
        let new = self.adj[v]
            .iter()
            .filter(|&&arc| self.residual(arc, v).is_positive())
            .map(|&arc| self.d[self.other(arc, v)] + 1)
            .min()
            .expect("a vertex with positive excess has a residual arc");
        self.d[v] = new;
        self.current[v] = 0;
        self.stats.relabels += 1;
        self.audit();
    }

    /// Pushes from `v` until its excess is gone or it needs a relabel.
    /// Returns `true` if `v` was relabeled (and is still active).
    fn discharge(&mut self, v: usize) -> bool {
        while self.excess[v].is_positive() {
            if self.current[v] == self.adj[v].len() {
                self.relabel(v);
                return true;
            }
            let arc = self.adj[v][self.current[v]];
            let w = self.other(arc, v);
            let r = self.residual(arc, v);
            if r.is_positive() && self.d[v] == self.d[w] + 1 {
                let delta = r.min(self.excess[v].clone());
                self.push(v, arc, delta);
            } else {
                self.current[v] += 1;
            }
        }
        false
    }

    fn audit(&self) {
        if !self.instrumented {
            return;
        }
        let f = FlowAssignment::new(self.x.clone(), FlowRole::Preflow);
        let violations = validate(self.net, &f, FlowRole::Preflow);
        assert!(violations.is_empty(), "preflow invariant broken: {violations:?}");
        let labels = LabelFunction {
            labels: self.d.clone(),
        };
        if let Err(e) = labels.check(self.net, &f) {
            panic!("labeling invariant broken: {e}");
        }
    }
}

/// FIFO push-relabel. The initial preflow saturates every source arc, the
/// initial labels are `d(s) = n` and zero elsewhere. A vertex is active when
/// it is neither terminal and has strictly positive excess.
pub fn push_relabel_with(
    net: &Network,
    options: SolverOptions,
) -> Result<(FlowAssignment, PushRelabelStats), SolverError> {
    let caps = net.finite_capacities()?;
    let n = net.vertex_count();
    let mut st = State {
        net,
        adj: net.incident_arcs(),
        x: vec![Rational::zero(); net.arc_count()],
        excess: vec![Rational::zero(); n],
        d: vec![0; n],
        current: vec![0; n],
        queue: VecDeque::new(),
        stats: PushRelabelStats {
            pushes: 0,
            relabels: 0,
            value: Rational::zero(),
        },
        instrumented: options.instrumented,
        caps,
    };
    let s = net.source();
    st.d[s] = n;
    for arc in net.out_arcs(s).collect::<Vec<_>>() {
        let c = st.caps[arc].clone();
        let w = net.arc(arc).head;
        st.x[arc] = c.clone();
        st.excess[w] += &c;
        st.excess[s] -= c;
    }
    for v in 0..n {
        if !st.is_terminal(v) && st.excess[v].is_positive() {
            st.queue.push_back(v);
        }
    }
    st.audit();
    while let Some(v) = st.queue.pop_front() {
        if st.discharge(v) {
            st.queue.push_back(v);
        }
    }
    st.stats.value = st.excess[net.sink()].clone();
    let flow = FlowAssignment::new(st.x, FlowRole::Flow);
    debug_assert!(validate(net, &flow, FlowRole::Flow).is_empty());
    Ok((flow, st.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn single_arc() {
        let net = Network::from_int_arcs(2, 0, 1, &[(0, 1, 5)]).unwrap();
        let (f, stats) = push_relabel_with(&net, SolverOptions::instrumented()).unwrap();
        assert_eq!(stats.value, int(5));
        assert_eq!(f.values, vec![int(5)]);
    }

    #[test]
    fn excess_returns_to_source() {
        // vertex 1 receives 10 but can only forward 3
        let net = Network::from_int_arcs(3, 0, 2, &[(0, 1, 10), (1, 2, 3)]).unwrap();
        let (f, stats) = push_relabel_with(&net, SolverOptions::instrumented()).unwrap();
        assert_eq!(stats.value, int(3));
        assert_eq!(f.values, vec![int(3), int(3)]);
        assert!(validate(&net, &f, FlowRole::Flow).is_empty());
    }

    #[test]
    fn final_labels_separate_source_from_sink() {
        let net = Network::from_int_arcs(
            5,
            0,
            4,
            &[(0, 1, 4), (0, 2, 2), (1, 2, 2), (1, 3, 1), (2, 3, 3), (3, 4, 5), (2, 4, 1)],
        )
        .unwrap();
        let (f, stats) = push_relabel_with(&net, SolverOptions::instrumented()).unwrap();
        assert_eq!(stats.value, int(5));
        let reach = residual_graph(&net, &f).reachable_from(0);
        assert!(!reach[4]);
    }
}
