use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hnetwork::{HFlow, HNetwork};
use crate::lp::{simplex_solve, LPStatus, LinearProgram, Sense};
use crate::numeric::{int, primitive_integer_vector, Rational};

/// Outcome of [`hmaxflow_lp`]; `flow` is present only when optimal.
#[derive(Debug, Clone, PartialEq)]
pub struct HMaxflowLp {
    pub status: LPStatus,
    pub flow: Option<HFlow>,
}

impl HMaxflowLp {
    pub fn value(&self, hnet: &HNetwork) -> Option<Rational> {
        self.flow.as_ref().map(|f| f.value(hnet).clone())
    }
}

/// The flow LP on a complex: variables are the non-source facets followed
/// by the source, `max x_T` subject to `∂x ≤ 0`, `-∂x ≤ 0` and `x ≤ c` on
/// non-source facets. The source column has no upper bound.
pub fn hmaxflow_program(hnet: &HNetwork) -> LinearProgram {
    let b = hnet.boundary_matrix(true);
    let k = b.cols();
    let mut objective = vec![Rational::zero(); k];
    objective[k - 1] = Rational::one();
    let mut matrix = Vec::new();
    for sign in [1, -1] {
        for r in 0..b.rows() {
            matrix.push(b.row(r).iter().map(|&x| int(sign * x)).collect());
        }
    }
    let mut rhs = vec![Rational::zero(); matrix.len()];
    for (col, j) in hnet.interior_facets().into_iter().enumerate() {
        let mut row = vec![Rational::zero(); k];
        row[col] = Rational::one();
        matrix.push(row);
        rhs.push(hnet.finite_capacity(j).clone());
    }
    LinearProgram { sense: Sense::Max, objective, matrix, rhs, nonneg: vec![true; k] }
}

/// Solve the flow LP exactly; the result is mapped back to facet order.
pub fn hmaxflow_lp(hnet: &HNetwork) -> HMaxflowLp {
    let lp = hmaxflow_program(hnet);
    let result = simplex_solve(&lp).expect("flow program is well formed");
    let flow = (result.status == LPStatus::Optimal).then(|| {
        let mut values = vec![Rational::zero(); hnet.complex().facet_count()];
        let mut columns = hnet.interior_facets();
        columns.push(hnet.source());
        for (col, j) in columns.into_iter().enumerate() {
            values[j] = result.point[col].clone();
        }
        HFlow { values }
    });
    HMaxflowLp { status: result.status, flow }
}

/// One term `c · (sign) facet` of an augmenting cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTerm {
    pub facet: usize,
    /// `+1` for the facet as oriented, `-1` for its reversal.
    pub sign: i64,
    pub coefficient: BigInt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Augmentation {
    pub cycle: Vec<CycleTerm>,
    /// The scale `m` applied to the integer cycle.
    pub amount: Rational,
    /// `f(T)` after this step.
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HAugmentResult {
    pub flow: HFlow,
    pub trace: Vec<Augmentation>,
    /// `false` when the step limit stopped the run before a fixpoint.
    pub fixpoint: bool,
}

pub const DEFAULT_AUGMENT_LIMIT: usize = 10_000;

/// Oriented facets with positive residual capacity. The source only
/// appears forwards, with no bound.
fn residual_facets(hnet: &HNetwork, f: &HFlow) -> Vec<(usize, i64, Option<Rational>)> {
    let mut out = Vec::new();
    for j in 0..hnet.complex().facet_count() {
        if j == hnet.source() {
            out.push((j, 1, None));
            continue;
        }
        let forward = hnet.finite_capacity(j) - &f.values[j];
        if forward.is_positive() {
            out.push((j, 1, Some(forward)));
        }
        if f.values[j].is_positive() {
            out.push((j, -1, Some(f.values[j].clone())));
        }
    }
    out
}

/// Smallest augmenting cycle through the source, if any.
///
/// The search is an LP over the residual oriented facets: the source
/// coefficient is pinned to one, the signed boundary must vanish, and the
/// total weight is minimized. The rational vertex is scaled to a primitive
/// integer vector.
pub fn find_augmenting_cycle(hnet: &HNetwork, f: &HFlow) -> Option<Vec<CycleTerm>> {
    let residual = residual_facets(hnet, f);
    let faces = hnet.complex().faces().len();
    let k = residual.len();
    let mut boundary = vec![vec![Rational::zero(); k]; faces];
    for (col, &(j, sign, _)) in residual.iter().enumerate() {
        for (i, s) in hnet.complex().boundary_column(j) {
            boundary[i][col] = int(sign * s);
        }
    }
    let mut matrix = Vec::new();
    for row in &boundary {
        matrix.push(row.clone());
        matrix.push(row.iter().map(|x| -x).collect());
    }
    let source_col = residual.iter().position(|r| r.0 == hnet.source()).unwrap();
    let mut pin = vec![Rational::zero(); k];
    pin[source_col] = Rational::one();
    matrix.push(pin.clone());
    matrix.push(pin.iter().map(|x| -x).collect());
    let mut rhs = vec![Rational::zero(); 2 * faces];
    rhs.extend([Rational::one(), -Rational::one()]);
    let lp = LinearProgram {
        sense: Sense::Min,
        objective: vec![Rational::one(); k],
        matrix,
        rhs,
        nonneg: vec![true; k],
    };
    let result = simplex_solve(&lp).expect("cycle program is well formed");
    if result.status != LPStatus::Optimal {
        return None;
    }
    let scaled = primitive_integer_vector(&result.point);
    Some(
        residual
            .iter()
            .zip(scaled)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(facet, sign, _), coefficient)| CycleTerm { facet, sign, coefficient })
            .collect(),
    )
}

/// Augment along cycles until none is left or `limit` steps were taken.
pub fn hmaxflow_augment_with(hnet: &HNetwork, limit: usize) -> HAugmentResult {
    let mut flow = HFlow::zero(hnet);
    let mut trace = Vec::new();
    while trace.len() < limit {
        let Some(cycle) = find_augmenting_cycle(hnet, &flow) else {
            return HAugmentResult { flow, trace, fixpoint: true };
        };
        let residual = residual_facets(hnet, &flow);
        let amount = cycle
            .iter()
            .filter_map(|term| {
                let cap = residual
                    .iter()
                    .find(|r| r.0 == term.facet && r.1 == term.sign)
                    .and_then(|r| r.2.clone())?;
                Some(cap / Rational::from_integer(term.coefficient.clone()))
            })
            .min()
            .expect("a cycle through the source uses a bounded facet");
        for term in &cycle {
            let delta = &amount * Rational::from_integer(term.coefficient.clone()) * int(term.sign);
            flow.values[term.facet] += delta;
        }
        let value = flow.value(hnet).clone();
        trace.push(Augmentation { cycle, amount, value });
    }
    let fixpoint = find_augmenting_cycle(hnet, &flow).is_none();
    HAugmentResult { flow, trace, fixpoint }
}

pub fn hmaxflow_augment(hnet: &HNetwork) -> HAugmentResult {
    hmaxflow_augment_with(hnet, DEFAULT_AUGMENT_LIMIT)
}
