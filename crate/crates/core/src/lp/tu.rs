use super::LpError;
use crate::matrix::IntMatrix;

/// Square submatrices examined before [`is_totally_unimodular`] gives up.
pub const DEFAULT_TU_BUDGET: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TuVerdict {
    Unimodular,
    /// A smallest square submatrix whose determinant lies outside
    /// `{-1, 0, 1}`.
    NotUnimodular { rows: Vec<usize>, cols: Vec<usize>, determinant: i128 },
}

impl TuVerdict {
    pub fn is_unimodular(&self) -> bool {
        matches!(self, TuVerdict::Unimodular)
    }

    pub fn witness(&self, m: &IntMatrix) -> Option<IntMatrix> {
        match self {
            TuVerdict::Unimodular => None,
            TuVerdict::NotUnimodular { rows, cols, .. } => Some(m.submatrix(rows, cols)),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of non-empty square submatrices of an `r x c` matrix.
pub fn square_submatrix_count(r: usize, c: usize) -> u128 {
    (1..=r.min(c)).map(|k| binomial(r, k) * binomial(c, k)).sum()
}

/// Exhaustive total-unimodularity test.
///
/// Entries outside `{-1, 0, 1}` fail immediately with a `1 x 1` witness.
/// Otherwise square submatrices are enumerated by increasing size, so the
/// first failure found is minimal.
pub fn is_totally_unimodular(m: &IntMatrix, budget: u128) -> Result<TuVerdict, LpError> {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if !(-1..=1).contains(&x) {
                return Ok(TuVerdict::NotUnimodular {
                    rows: vec![r],
                    cols: vec![c],
                    determinant: x as i128,
                });
            }
        }
    }
    let needed = square_submatrix_count(m.rows(), m.cols());
    if needed > budget {
        return Err(LpError::BudgetExceeded { needed, budget });
    }
    let row_sets: Vec<Vec<Vec<usize>>> = (0..=m.rows().min(m.cols()))
        .map(|k| combinations(m.rows(), k))
        .collect();
    for k in 2..=m.rows().min(m.cols()) {
        let col_sets = combinations(m.cols(), k);
        for rows in &row_sets[k] {
            for cols in &col_sets {
                let det = m.submatrix(rows, cols).determinant();
                if det.abs() > 1 {
                    return Ok(TuVerdict::NotUnimodular {
                        rows: rows.clone(),
                        cols: cols.clone(),
                        determinant: det,
                    });
                }
            }
        }
    }
    Ok(TuVerdict::Unimodular)
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}
