use std::collections::HashMap;

use super::{content_lines, parse_error, AppError};
use crate::decompose::{decompose, ComponentKind};
use crate::network::Network;
use crate::solvers::edmonds_karp;

/// Finite poset with a least element `0̂` and a greatest element `1̂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// `less[a][b]` iff `a < b`.
    less: Vec<Vec<bool>>,
    bottom: usize,
    top: usize,
}

impl Poset {
    /// Build from any generating set of strict relations `a < b`; the
    /// transitive closure is taken on ingest.
    pub fn from_relation(
        names: Vec<String>,
        pairs: &[(usize, usize)],
        bottom: usize,
        top: usize,
    ) -> Result<Self, AppError> {
        let n = names.len();
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(AppError::NotPartialOrder(format!("element index {} out of range", a.max(b))));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(AppError::NotPartialOrder(format!("`{}` lies on a cycle", names[i])));
        }
        if bottom >= n || top >= n {
            return Err(AppError::NotBounded("missing bottom or top".into()));
        }
        if bottom == top {
            return Err(AppError::NotBounded("bottom and top coincide".into()));
        }
        for x in 0..n {
            if x != bottom && !less[bottom][x] {
                return Err(AppError::NotBounded(format!("`{}` is not above the bottom", names[x])));
            }
            if x != top && !less[x][top] {
                return Err(AppError::NotBounded(format!("`{}` is not below the top", names[x])));
            }
        }
        Ok(Poset { names, less, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.less[a][b] && !(0..self.len()).any(|k| self.less[a][k] && self.less[k][b])
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.covers(a, b))
            .collect()
    }

    /// A chain listed bottom to top is maximal when it runs from `0̂` to `1̂`
    /// through cover relations.
    pub fn is_maximal_chain(&self, chain: &[usize]) -> bool {
        chain.first() == Some(&self.bottom)
            && chain.last() == Some(&self.top)
            && chain.windows(2).all(|w| self.covers(w[0], w[1]))
    }

    /// Line format with `el <name>`, `cover <lo> <hi>`, `bottom <name>` and
    /// `top <name>` records. Elements must be declared before use; `cover`
    /// may name any strict relation.
    pub fn parse(text: &str) -> Result<Self, AppError> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        let mut pairs = Vec::new();
        let (mut bottom, mut top) = (None, None);
        for (line, tokens) in content_lines(text) {
            let lookup = |name: &str| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| parse_error(line, format!("undeclared element `{name}`")))
            };
            match (tokens[0], tokens.len()) {
                ("el", 2) => {
                    if index.insert(tokens[1].to_string(), names.len()).is_some() {
                        return Err(parse_error(line, format!("element `{}` declared twice", tokens[1])));
                    }
                    names.push(tokens[1].to_string());
                }
                ("cover", 3) => pairs.push((lookup(tokens[1])?, lookup(tokens[2])?)),
                ("bottom", 2) => bottom = Some(lookup(tokens[1])?),
                ("top", 2) => top = Some(lookup(tokens[1])?),
                _ => return Err(parse_error(line, "expected `el`, `cover`, `bottom` or `top`")),
            }
        }
        let bottom = bottom.ok_or_else(|| AppError::NotBounded("no `bottom` record".into()))?;
        let top = top.ok_or_else(|| AppError::NotBounded("no `top` record".into()))?;
        Poset::from_relation(names, &pairs, bottom, top)
    }
}

/// Maximum set of pairwise cover-disjoint maximal chains.
///
/// Every cover relation becomes a unit arc from `0̂` towards `1̂`; the path
/// components of an integral maximum flow are the chains.
pub fn max_disjoint_chains(p: &Poset) -> Result<Vec<Vec<usize>>, AppError> {
    let arcs: Vec<(usize, usize, i64)> = p.cover_pairs().into_iter().map(|(a, b)| (a, b, 1)).collect();
    let net = Network::from_int_arcs(p.len(), p.bottom, p.top, &arcs)?;
    let (flow, _) = edmonds_karp(&net)?;
    let chains: Vec<Vec<usize>> = decompose(&net, &flow)?
        .into_iter()
        .filter(|c| c.kind == ComponentKind::Path)
        .map(|c| c.vertices)
        .collect();
    debug_assert!(chains.iter().all(|c| p.is_maximal_chain(c)));
    Ok(chains)
}
