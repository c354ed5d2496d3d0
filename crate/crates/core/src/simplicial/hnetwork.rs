use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use super::complex::OrientedComplex;
use super::SimplicialError;
use crate::network::{Capacity, Cut, NetError, Network};
use crate::numeric::{int, parse_rational, Rational};

/// Facets that violate the source condition for `source`: they share a
/// `(d-1)`-face with it on which both boundaries carry the same sign.
pub fn check_source_condition(complex: &OrientedComplex, source: usize) -> Vec<usize> {
    let t_signs: HashMap<usize, i64> = complex.boundary_column(source).into_iter().collect();
    (0..complex.facet_count())
        .filter(|&j| j != source)
        .filter(|&j| {
            complex
                .boundary_column(j)
                .iter()
                .any(|(face, sign)| t_signs.get(face) == Some(sign))
        })
        .collect()
}

/// `d`-dimensional network: a complex, a source facet `T` with unbounded
/// capacity, and non-negative capacities on every other facet.
#[derive(Debug, Clone, PartialEq)]
pub struct HNetwork {
    complex: OrientedComplex,
    source: usize,
    capacity: Vec<Capacity>,
}

/// Build a network, checking capacities and the source condition.
/// The entry of `capacities` at the source index is ignored.
pub fn build_hnetwork(
    complex: OrientedComplex,
    source: usize,
    capacities: Vec<Rational>,
) -> Result<HNetwork, SimplicialError> {
    if source >= complex.facet_count() {
        return Err(SimplicialError::InvalidSource(source));
    }
    if capacities.len() != complex.facet_count() {
        return Err(SimplicialError::DimensionMismatch(format!(
            "{} capacities for {} facets",
            capacities.len(),
            complex.facet_count()
        )));
    }
    if let Some(j) = (0..capacities.len()).find(|&j| j != source && capacities[j].is_negative()) {
        return Err(SimplicialError::NegativeCapacity(j));
    }
    let bad = check_source_condition(&complex, source);
    if !bad.is_empty() {
        return Err(SimplicialError::SourceConditionViolated(bad));
    }
    let capacity = capacities
        .into_iter()
        .enumerate()
        .map(|(j, c)| if j == source { Capacity::Unbounded } else { Capacity::Finite(c) })
        .collect();
    Ok(HNetwork { complex, source, capacity })
}

impl HNetwork {
    pub fn complex(&self) -> &OrientedComplex {
        &self.complex
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn capacity(&self, j: usize) -> &Capacity {
        &self.capacity[j]
    }

    /// Capacity of a facet other than the source.
    pub fn finite_capacity(&self, j: usize) -> &Rational {
        self.capacity[j].finite().expect("only the source is unbounded")
    }

    /// Non-source facets in order.
    pub fn interior_facets(&self) -> Vec<usize> {
        (0..self.complex.facet_count()).filter(|&j| j != self.source).collect()
    }

    /// Boundary matrix with columns ordered as the LP variables: non-source
    /// facets first, then the source when `include_source` is set.
    pub fn boundary_matrix(&self, include_source: bool) -> crate::IntMatrix {
        let full = self.complex.boundary_matrix();
        let mut cols = self.interior_facets();
        if include_source {
            cols.push(self.source);
        }
        let rows: Vec<usize> = (0..full.rows()).collect();
        full.submatrix(&rows, &cols)
    }

    /// Parse the `.hnet` line format:
    ///
    /// ```text
    /// hnet dim 2
    /// t 1 3 2          # source facet, orientation as written
    /// f 2 3 4 1        # facet vertices, then capacity
    /// r 1 2            # optional: face enumeration with reference orientation
    /// ```
    pub fn parse(text: &str) -> Result<HNetwork, SimplicialError> {
        let err = |line: usize, message: &str| SimplicialError::Parse { line, message: message.into() };
        let mut dim = None;
        let mut facets = Vec::new();
        let mut caps = Vec::new();
        let mut faces = Vec::new();
        let mut source = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let tag = tokens.next().unwrap();
            let rest: Vec<&str> = tokens.collect();
            if dim.is_none() {
                if tag != "hnet" || rest.len() != 2 || rest[0] != "dim" {
                    return Err(err(line, "expected `hnet dim <d>`"));
                }
                let d: usize = rest[1].parse().map_err(|_| err(line, "bad dimension"))?;
                dim = Some(d);
                continue;
            }
            let d = dim.unwrap();
            let vertices = |tokens: &[&str]| -> Result<Vec<usize>, SimplicialError> {
                tokens.iter().map(|t| t.parse().map_err(|_| err(line, "bad vertex label"))).collect()
            };
            match tag {
                "t" => {
                    if source.is_some() {
                        return Err(err(line, "second source facet"));
                    }
                    if rest.len() != d + 1 {
                        return Err(err(line, "source facet has the wrong size"));
                    }
                    source = Some(facets.len());
                    facets.push(vertices(&rest)?);
                    caps.push(Rational::zero());
                }
                "f" => {
                    if rest.len() != d + 2 {
                        return Err(err(line, "expected d+1 vertices and a capacity"));
                    }
                    facets.push(vertices(&rest[..d + 1])?);
                    caps.push(parse_rational(rest[d + 1]).ok_or_else(|| err(line, "bad capacity"))?);
                }
                "r" => {
                    if rest.len() != d {
                        return Err(err(line, "face has the wrong size"));
                    }
                    faces.push(vertices(&rest)?);
                }
                _ => return Err(err(line, "unknown record")),
            }
        }
        let dim = dim.ok_or_else(|| err(0, "missing header"))?;
        let source = source.ok_or_else(|| err(0, "missing source facet"))?;
        let complex = if faces.is_empty() {
            OrientedComplex::new(dim, facets)?
        } else {
            OrientedComplex::with_faces(dim, facets, faces)?
        };
        build_hnetwork(complex, source, caps)
    }

    /// Serialize in the format read by [`HNetwork::parse`]. Face lines are
    /// always written so that the boundary matrix survives a round trip.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = format!("hnet dim {}\n", self.complex.dim());
        for (j, f) in self.complex.facets().iter().enumerate() {
            match &self.capacity[j] {
                Capacity::Unbounded => writeln!(out, "t {}", join(f)).unwrap(),
                Capacity::Finite(c) => writeln!(out, "f {} {}", join(f), c).unwrap(),
            }
        }
        for r in self.complex.faces() {
            writeln!(out, "r {}", join(r)).unwrap();
        }
        out
    }
}

/// Assignment of a value to every facet, in complex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFlow {
    pub values: Vec<Rational>,
}

impl HFlow {
    pub fn zero(hnet: &HNetwork) -> Self {
        HFlow { values: vec![Rational::zero(); hnet.complex().facet_count()] }
    }

    /// `f(T)`, the amount carried through the source.
    pub fn value(&self, hnet: &HNetwork) -> &Rational {
        &self.values[hnet.source()]
    }

    /// Sum of two flows.
    pub fn sum(&self, other: &HFlow) -> HFlow {
        HFlow { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    /// `hf <facet> <value>` lines with 1-based facet indices, then `s <f(T)>`.
    pub fn to_text(&self, hnet: &HNetwork) -> String {
        let mut out = String::new();
        for (j, v) in self.values.iter().enumerate() {
            writeln!(out, "hf {} {}", j + 1, v).unwrap();
        }
        writeln!(out, "s {}", self.value(hnet)).unwrap();
        out
    }
}

/// `∂f` per face; all zero exactly when `f` is a weighted cycle.
pub fn boundary_residuals(complex: &OrientedComplex, values: &[Rational]) -> Vec<Rational> {
    let mut residual = vec![Rational::zero(); complex.faces().len()];
    for (j, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        for (i, s) in complex.boundary_column(j) {
            residual[i] += v * int(s);
        }
    }
    residual
}

/// Whether `f` lies in the kernel of the boundary operator. On failure the
/// faces with nonzero residual are returned.
pub fn is_weighted_cycle(hnet: &HNetwork, f: &HFlow) -> Result<(), Vec<(usize, Rational)>> {
    let bad: Vec<(usize, Rational)> = boundary_residuals(hnet.complex(), &f.values)
        .into_iter()
        .enumerate()
        .filter(|(_, r)| !r.is_zero())
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// Full feasibility: weighted cycle and `0 ≤ f ≤ c` on every facet.
pub fn check_hflow(hnet: &HNetwork, f: &HFlow) -> Result<(), String> {
    if f.values.len() != hnet.complex().facet_count() {
        return Err("wrong number of facet values".into());
    }
    for (j, v) in f.values.iter().enumerate() {
        if v.is_negative() || !hnet.capacity(j).admits(v) {
            return Err(format!("facet {} carries {} outside [0, {}]", j + 1, v, hnet.capacity(j)));
        }
    }
    is_weighted_cycle(hnet, f).map_err(|bad| {
        format!("boundary does not vanish on {} face(s), first is face {}", bad.len(), bad[0].0 + 1)
    })
}

/// A graph network seen as a 1-dimensional network.
#[derive(Debug, Clone)]
pub struct GraphComplex {
    pub hnet: HNetwork,
    /// Face (vertex) index of every graph vertex.
    pub vertex_face: Vec<usize>,
    /// Facet carrying each graph arc; a direct `s → t` arc is split in two
    /// so that it stays distinct from the source facet `[t, s]`.
    pub arc_facets: Vec<Vec<usize>>,
}

/// Encode arc `(u, v)` as the edge `[u, v]` and add the source `[t, s]`.
pub fn graph_complex(net: &Network) -> Result<GraphComplex, SimplicialError> {
    let (s, t) = (net.source(), net.sink());
    let mut facets = Vec::new();
    let mut caps = Vec::new();
    let mut arc_facets = Vec::new();
    let mut spare = net.vertex_count();
    for arc in net.arcs() {
        let c = arc.capacity.finite().ok_or(NetError::UnboundedCapacity(arc.tail, arc.head))?.clone();
        if arc.tail == s && arc.head == t {
            arc_facets.push(vec![facets.len(), facets.len() + 1]);
            facets.push(vec![s, spare]);
            facets.push(vec![spare, t]);
            caps.extend([c.clone(), c]);
            spare += 1;
        } else {
            arc_facets.push(vec![facets.len()]);
            facets.push(vec![arc.tail, arc.head]);
            caps.push(c);
        }
    }
    let source = facets.len();
    facets.push(vec![t, s]);
    caps.push(Rational::zero());
    let complex = OrientedComplex::new(1, facets)?;
    let vertex_face = (0..net.vertex_count())
        .map(|v| complex.face_index(&[v]).unwrap_or(usize::MAX))
        .collect();
    let hnet = build_hnetwork(complex, source, caps)?;
    Ok(GraphComplex { hnet, vertex_face, arc_facets })
}

impl GraphComplex {
    /// Faces on the `λ = 1` side for a graph cut: the source side `S`.
    pub fn induced_hcut(&self, cut: &Cut) -> super::HCut {
        let mut s_prime = vec![false; self.hnet.complex().faces().len()];
        for (v, &face) in self.vertex_face.iter().enumerate() {
            if face != usize::MAX && cut.contains(v) {
                s_prime[face] = true;
            }
        }
        super::HCut { s_prime }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::fixtures::tetrahedron;

    #[test]
    fn tetrahedron_source_condition() {
        let hnet = tetrahedron();
        assert!(check_source_condition(hnet.complex(), 3).is_empty());
        let flipped = hnet.complex().flipped(1);
        assert_eq!(check_source_condition(&flipped, 3), vec![1]);
        let e = build_hnetwork(flipped, 3, vec![int(1); 4]).unwrap_err();
        assert_eq!(e, SimplicialError::SourceConditionViolated(vec![1]));
    }

    #[test]
    fn sphere_is_a_cycle() {
        let hnet = tetrahedron();
        assert!(is_weighted_cycle(&hnet, &HFlow::zero(&hnet)).is_ok());
        let ones = HFlow { values: vec![int(1); 4] };
        assert!(is_weighted_cycle(&hnet, &ones).is_ok());
        check_hflow(&hnet, &ones).unwrap();
        let single = HFlow { values: vec![int(1), int(0), int(0), int(0)] };
        assert_eq!(is_weighted_cycle(&hnet, &single).unwrap_err().len(), 3);
    }

    #[test]
    fn negative_capacity_is_rejected() {
        let c = tetrahedron().complex().clone();
        let e = build_hnetwork(c, 3, vec![int(1), int(-1), int(1), int(0)]).unwrap_err();
        assert_eq!(e, SimplicialError::NegativeCapacity(1));
    }

    #[test]
    fn text_round_trip() {
        let hnet = tetrahedron();
        let back = HNetwork::parse(&hnet.to_text()).unwrap();
        assert_eq!(back, hnet);
        let e = HNetwork::parse("hnet dim 2\nf 1 2 3 1\n").unwrap_err();
        assert!(matches!(e, SimplicialError::Parse { .. }));
    }

    #[test]
    fn graph_source_condition_holds() {
        let net = Network::from_int_arcs(3, 0, 2, &[(0, 1, 2), (1, 2, 1), (0, 2, 4)]).unwrap();
        let g = graph_complex(&net).unwrap();
        assert_eq!(g.hnet.complex().facet_count(), 5);
        assert_eq!(g.arc_facets[2], vec![2, 3]);
    }
}
