use super::complex::OrientedComplex;
use super::SimplicialError;

/// Largest facet count for which [`is_simplicial_tree`] enumerates subsets.
pub const DEFAULT_TREE_FACET_LIMIT: usize = 16;

fn intersection_within(f: &[usize], h: &[usize], g: &[usize]) -> bool {
    f.iter().filter(|v| h.contains(v)).all(|v| g.contains(v))
}

/// Leaf test within the subcomplex spanned by the facets `members`:
/// `(F, F')` is a leaf when `F ∩ H ⊆ F'` for every other member `H`. A
/// facet paired with itself is a leaf only when it is alone.
pub fn is_leaf_among(complex: &OrientedComplex, members: &[usize], f: usize, f_prime: usize) -> bool {
    let facets = complex.facets();
    if f == f_prime {
        return members.iter().all(|&h| h == f);
    }
    members
        .iter()
        .filter(|&&h| h != f)
        .all(|&h| intersection_within(&facets[f], &facets[h], &facets[f_prime]))
}

pub fn is_leaf(complex: &OrientedComplex, f: usize, f_prime: usize) -> bool {
    let all: Vec<usize> = (0..complex.facet_count()).collect();
    is_leaf_among(complex, &all, f, f_prime)
}

fn has_leaf(complex: &OrientedComplex, members: &[usize]) -> bool {
    members
        .iter()
        .any(|&f| members.iter().any(|&g| is_leaf_among(complex, members, f, g)))
}

fn check_budget(count: usize, limit: usize) -> Result<(), SimplicialError> {
    if count > limit {
        return Err(SimplicialError::BudgetExceeded(format!(
            "{} facets exceed the subset enumeration limit of {}",
            count, limit
        )));
    }
    Ok(())
}

fn subset_is_tree(complex: &OrientedComplex, kept: &[usize]) -> bool {
    let facets: Vec<Vec<usize>> = kept.iter().map(|&j| complex.facets()[j].clone()).collect();
    let sub = OrientedComplex::new(complex.dim(), facets).expect("subcomplex of a valid complex");
    if !sub.is_connected() {
        return false;
    }
    let k = kept.len();
    (1u64..(1 << k)).all(|mask| {
        let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        has_leaf(&sub, &members)
    })
}

/// Connected, and every nonempty set of facets contains a leaf.
pub fn is_simplicial_tree(complex: &OrientedComplex, facet_limit: usize) -> Result<bool, SimplicialError> {
    check_budget(complex.facet_count(), facet_limit)?;
    let all: Vec<usize> = (0..complex.facet_count()).collect();
    Ok(subset_is_tree(complex, &all))
}

/// Pairwise vertex-disjoint facets whose removal leaves a simplicial tree,
/// smallest sets first. Only dimension two is supported; `None` means no
/// such set exists and says nothing about unimodularity.
pub fn tu_certificate_via_tree(
    complex: &OrientedComplex,
    facet_limit: usize,
) -> Result<Option<Vec<usize>>, SimplicialError> {
    if complex.dim() != 2 {
        return Err(SimplicialError::DimensionMismatch("tree certificates need dimension 2".into()));
    }
    check_budget(complex.facet_count(), facet_limit)?;
    let k = complex.facet_count();
    let facets = complex.facets();
    let disjoint = |a: usize, b: usize| !facets[a].iter().any(|v| facets[b].contains(v));
    let mut candidates: Vec<u64> = (0u64..(1 << k))
        .filter(|&mask| {
            let chosen: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            chosen.iter().enumerate().all(|(x, &a)| chosen[x + 1..].iter().all(|&b| disjoint(a, b)))
        })
        .collect();
    candidates.sort_by_key(|m| (m.count_ones(), *m));
    for mask in candidates {
        let kept: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 0).collect();
        if !kept.is_empty() && subset_is_tree(complex, &kept) {
            return Ok(Some((0..k).filter(|&i| mask >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}
