use num_traits::{One, Signed, Zero};

use super::program::{LinearProgram, Sense};
use super::LpError;
use crate::numeric::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LPStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// Outcome of [`simplex_solve`]. `point` and `value` are only meaningful
/// for [`LPStatus::Optimal`]; they are empty and zero otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct LPResult {
    pub status: LPStatus,
    pub point: Vec<Rational>,
    pub value: Rational,
    pub pivots: usize,
}

impl LPResult {
    fn without_point(status: LPStatus, pivots: usize) -> Self {
        LPResult { status, point: Vec::new(), value: Rational::zero(), pivots }
    }
}

/// Dense tableau over `A x = b`, `x ≥ 0`, `b ≥ 0`.
struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for x in self.a[row].iter_mut() {
            *x *= &inv;
        }
        self.b[row] *= &inv;
        let (pivot_row, pivot_b) = (self.a[row].clone(), self.b[row].clone());
        for r in 0..self.a.len() {
            if r == row || self.a[r][col].is_zero() {
                continue;
            }
            let factor = self.a[r][col].clone();
            for (x, p) in self.a[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
            self.b[r] -= &factor * &pivot_b;
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Maximize `cost · x` over columns where `allowed` is set, using
    /// Bland's rule. Returns `false` when the objective is unbounded.
    fn maximize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..cost.len()).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive()
            });
            let Some(col) = entering else { return true };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.a.len() {
                if !self.a[r][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / &self.a[r][col];
                let better = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[r] < self.basis[*best])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut r = cost[j].clone();
        for (row, &bv) in self.basis.iter().enumerate() {
            if !cost[bv].is_zero() && !self.a[row][j].is_zero() {
                r -= &cost[bv] * &self.a[row][j];
            }
        }
        r
    }

    fn value_of(&self, j: usize) -> Rational {
        self.basis
            .iter()
            .position(|&bv| bv == j)
            .map_or_else(Rational::zero, |row| self.b[row].clone())
    }
}

/// Solve `lp` exactly with the two-phase simplex method and Bland's
/// anti-cycling rule.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LPResult, LpError> {
    lp.check_dimensions()?;
    let n = lp.variable_count();
    let m = lp.constraint_count();

    // Columns: x⁺ for every variable, x⁻ for free ones, one slack per row,
    // then artificials for rows whose right-hand side is negative.
    let mut negative_part = vec![None; n];
    let mut width = n;
    for j in 0..n {
        if !lp.nonneg[j] {
            negative_part[j] = Some(width);
            width += 1;
        }
    }
    let slack0 = width;
    width += m;
    // Everything is brought to `max` with `≤` rows.
    let flip = if lp.sense == Sense::Min { -Rational::one() } else { Rational::one() };

    let mut a = vec![vec![Rational::zero(); width]; m];
    let mut b = Vec::with_capacity(m);
    let mut needs_artificial = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let coef = &lp.matrix[i][j] * &flip;
            if let Some(neg) = negative_part[j] {
                a[i][neg] = -coef.clone();
            }
            a[i][j] = coef;
        }
        a[i][slack0 + i] = Rational::one();
        let mut rhs = &lp.rhs[i] * &flip;
        if rhs.is_negative() {
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
            rhs = -rhs;
            needs_artificial.push(i);
        }
        b.push(rhs);
    }
    let art0 = width;
    width += needs_artificial.len();
    for row in a.iter_mut() {
        row.resize(width, Rational::zero());
    }
    let mut basis: Vec<usize> = (0..m).map(|i| slack0 + i).collect();
    for (k, &i) in needs_artificial.iter().enumerate() {
        a[i][art0 + k] = Rational::one();
        basis[i] = art0 + k;
    }
    let mut t = Tableau { a, b, basis, pivots: 0 };

    if !needs_artificial.is_empty() {
        let mut phase1 = vec![Rational::zero(); width];
        for c in phase1.iter_mut().skip(art0) {
            *c = -Rational::one();
        }
        t.maximize(&phase1, &vec![true; width]);
        if (art0..width).any(|j| t.value_of(j).is_positive()) {
            return Ok(LPResult::without_point(LPStatus::Infeasible, t.pivots));
        }
        // Drive zero-valued artificials out of the basis, dropping rows
        // that turn out to be redundant.
        let mut row = 0;
        while row < t.a.len() {
            if t.basis[row] >= art0 {
                match (0..art0).find(|&j| !t.a[row][j].is_zero()) {
                    Some(col) => t.pivot(row, col),
                    None => {
                        t.a.remove(row);
                        t.b.remove(row);
                        t.basis.remove(row);
                        continue;
                    }
                }
            }
            row += 1;
        }
    }

    let mut cost = vec![Rational::zero(); width];
    for j in 0..n {
        let c = &lp.objective[j] * &flip;
        if let Some(neg) = negative_part[j] {
            cost[neg] = -c.clone();
        }
        cost[j] = c;
    }
    let allowed: Vec<bool> = (0..width).map(|j| j < art0).collect();
    if !t.maximize(&cost, &allowed) {
        return Ok(LPResult::without_point(LPStatus::Unbounded, t.pivots));
    }

    let point: Vec<Rational> = (0..n)
        .map(|j| {
            let pos = t.value_of(j);
            match negative_part[j] {
                Some(neg) => pos - t.value_of(neg),
                None => pos,
            }
        })
        .collect();
    debug_assert!(lp.is_feasible(&point), "simplex returned an infeasible point");
    let value = lp.objective_value(&point);
    Ok(LPResult { status: LPStatus::Optimal, point, value, pivots: t.pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    fn solve(text: &str) -> LPResult {
        simplex_solve(&LinearProgram::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn single_bound() {
        let r = solve("max\n1\n1 | 5\n");
        assert_eq!(r.status, LPStatus::Optimal);
        assert_eq!(r.value, int(5));
    }

    #[test]
    fn unbounded_ray() {
        let r = solve("max\n1\n-1 | 0\n");
        assert_eq!(r.status, LPStatus::Unbounded);
        assert_eq!(solve("max\n1\n").status, LPStatus::Unbounded);
    }

    #[test]
    fn infeasible_system() {
        let r = solve("max\n1\n1 | 1\n-1 | -2\n");
        assert_eq!(r.status, LPStatus::Infeasible);
    }

    #[test]
    fn min_program_with_free_variable() {
        // min x + y with x - y >= -1, x >= 2, y free but y >= 1/2
        let r = solve("min\n1 1\n1 -1 | -1\n1 0 | 2\n0 1 | 1/2\nnonneg 1 0\n");
        assert_eq!(r.status, LPStatus::Optimal);
        assert_eq!(r.value, ratio(5, 2));
        assert_eq!(r.point, vec![int(2), ratio(1, 2)]);
    }

    #[test]
    fn degenerate_program_terminates() {
        // a classic cycling example under the largest-coefficient rule
        let text = "max\n10 -57 -9 -24\n\
                    1/2 -11/2 -5/2 9 | 0\n\
                    1/2 -3/2 -1/2 1 | 0\n\
                    1 0 0 0 | 1\n";
        let r = solve(text);
        assert_eq!(r.status, LPStatus::Optimal);
        assert_eq!(r.value, int(1));
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 2 stated twice
        let r = solve("max\n1 0\n1 1 | 2\n-1 -1 | -2\n1 1 | 2\n-1 -1 | -2\n");
        assert_eq!(r.status, LPStatus::Optimal);
        assert_eq!(r.value, int(2));
    }
}
