use num_traits::{One, Signed, Zero};

use super::hnetwork::HNetwork;
use super::SimplicialError;
use crate::network::Capacity;
use crate::numeric::{int, Rational};

/// Partition `(S, S')` of the `(d-1)`-faces; `s_prime[i]` marks faces in
/// `S'`, which receive potential one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HCut {
    pub s_prime: Vec<bool>,
}

impl HCut {
    pub fn from_mask(mask: u64, faces: usize) -> HCut {
        HCut { s_prime: (0..faces).map(|i| mask >> i & 1 == 1).collect() }
    }
}

/// Dual point induced by a cut together with its objective.
#[derive(Debug, Clone, PartialEq)]
pub struct HCutValue {
    /// One potential per face.
    pub lambda: Vec<Rational>,
    /// One slack per facet, the source included.
    pub eta: Vec<Rational>,
    /// `Σ η_σ c(σ)` over non-source facets.
    pub finite_part: Rational,
    /// `finite_part`, or unbounded when the source slack is positive, since
    /// the source has infinite capacity.
    pub capacity: Capacity,
}

/// `Σ_{τ ∈ +(σ)} λ_τ - Σ_{τ ∈ -(σ)} λ_τ` for facet `j`.
fn signed_potential(hnet: &HNetwork, lambda: &[Rational], j: usize) -> Rational {
    hnet.complex()
        .boundary_column(j)
        .into_iter()
        .fold(Rational::zero(), |acc, (i, s)| acc + &lambda[i] * int(s))
}

/// Capacity of a cut: potentials `0` on `S` and `1` on `S'`, and each
/// facet slack the least value keeping its dual row satisfied.
pub fn hcut_capacity(hnet: &HNetwork, cut: &HCut) -> HCutValue {
    let lambda: Vec<Rational> = cut
        .s_prime
        .iter()
        .map(|&p| if p { Rational::one() } else { Rational::zero() })
        .collect();
    let mut eta = Vec::with_capacity(hnet.complex().facet_count());
    let mut finite_part = Rational::zero();
    for j in 0..hnet.complex().facet_count() {
        let demand = if j == hnet.source() { Rational::one() } else { Rational::zero() };
        let slack = (demand - signed_potential(hnet, &lambda, j)).max(Rational::zero());
        if j != hnet.source() {
            finite_part += &slack * hnet.finite_capacity(j);
        }
        eta.push(slack);
    }
    let capacity = if eta[hnet.source()].is_positive() {
        Capacity::Unbounded
    } else {
        Capacity::Finite(finite_part.clone())
    };
    HCutValue { lambda, eta, finite_part, capacity }
}

/// Substitute a dual point into every dual row.
pub fn check_hdual_point(hnet: &HNetwork, lambda: &[Rational], eta: &[Rational]) -> Result<(), String> {
    if lambda.len() != hnet.complex().faces().len() || eta.len() != hnet.complex().facet_count() {
        return Err("dimension mismatch".into());
    }
    for (j, e) in eta.iter().enumerate() {
        if e.is_negative() {
            return Err(format!("facet {} has negative slack", j + 1));
        }
        let demand = if j == hnet.source() { Rational::one() } else { Rational::zero() };
        if signed_potential(hnet, lambda, j) + e < demand {
            return Err(format!("row of facet {} is violated", j + 1));
        }
    }
    Ok(())
}

/// Cheapest cut over all `2^faces` partitions, ties going to the first
/// partition in mask order.
pub fn min_hcut_exhaustive(hnet: &HNetwork, max_faces: usize) -> Result<(HCut, HCutValue), SimplicialError> {
    let faces = hnet.complex().faces().len();
    if faces > max_faces || faces >= 63 {
        return Err(SimplicialError::BudgetExceeded(format!(
            "{} faces exceed the enumeration limit of {}",
            faces, max_faces
        )));
    }
    let mut best: Option<(HCut, HCutValue)> = None;
    for mask in 0u64..(1 << faces) {
        let cut = HCut::from_mask(mask, faces);
        let value = hcut_capacity(hnet, &cut);
        if best.as_ref().is_none_or(|(_, b)| value.capacity < b.capacity) {
            best = Some((cut, value));
        }
    }
    Ok(best.expect("at least the empty partition exists"))
}
