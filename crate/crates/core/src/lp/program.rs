use std::fmt;

use num_traits::{Signed, Zero};

use super::LpError;
use crate::numeric::{parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Linear program in canonical form.
///
/// `Max` programs read `max c·x  s.t.  Ax ≤ b`, `Min` programs read
/// `min c·x  s.t.  Ax ≥ b`. Variables flagged in `nonneg` carry `x ≥ 0`,
/// the others are free.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub matrix: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub nonneg: Vec<bool>,
}

impl LinearProgram {
    pub fn new(
        sense: Sense,
        objective: Vec<Rational>,
        matrix: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        nonneg: Vec<bool>,
    ) -> Result<Self, LpError> {
        let lp = LinearProgram { sense, objective, matrix, rhs, nonneg };
        lp.check_dimensions()?;
        Ok(lp)
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.matrix.len()
    }

    pub fn check_dimensions(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if self.nonneg.len() != n {
            return Err(LpError::Malformed(format!(
                "{} sign flags for {} variables",
                self.nonneg.len(),
                n
            )));
        }
        if self.rhs.len() != self.matrix.len() {
            return Err(LpError::Malformed(format!(
                "{} right-hand sides for {} rows",
                self.rhs.len(),
                self.matrix.len()
            )));
        }
        if let Some((i, row)) = self.matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(LpError::Malformed(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                n
            )));
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// Constraints violated by `x`, as row indices. Sign restrictions are
    /// reported as `constraint_count() + j`.
    pub fn violations(&self, x: &[Rational]) -> Vec<usize> {
        let mut bad = Vec::new();
        for (i, (row, b)) in self.matrix.iter().zip(&self.rhs).enumerate() {
            let lhs = dot(row, x);
            let ok = match self.sense {
                Sense::Max => lhs <= *b,
                Sense::Min => lhs >= *b,
            };
            if !ok {
                bad.push(i);
            }
        }
        for (j, v) in x.iter().enumerate() {
            if self.nonneg[j] && v.is_negative() {
                bad.push(self.matrix.len() + j);
            }
        }
        bad
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.variable_count() && self.violations(x).is_empty()
    }

    /// Parse the row format written by `Display`:
    ///
    /// ```text
    /// max
    /// 1 0            # objective
    /// 1 1 | 4        # one row per constraint
    /// nonneg 1 1     # optional, defaults to all ones
    /// ```
    pub fn parse(text: &str) -> Result<Self, LpError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line, message: &str| LpError::Parse { line, message: message.into() };
        let (line, head) = lines.next().ok_or_else(|| err(0, "empty program"))?;
        let sense = match head {
            "max" => Sense::Max,
            "min" => Sense::Min,
            _ => return Err(err(line, "expected `max` or `min`")),
        };
        let (line, obj) = lines.next().ok_or_else(|| err(line, "missing objective"))?;
        let objective = parse_numbers(obj).ok_or_else(|| err(line, "bad objective row"))?;
        let mut matrix = Vec::new();
        let mut rhs = Vec::new();
        let mut nonneg = None;
        for (line, l) in lines {
            if nonneg.is_some() {
                return Err(err(line, "content after the sign flags"));
            }
            if let Some(flags) = l.strip_prefix("nonneg") {
                let flags: Option<Vec<bool>> = flags
                    .split_whitespace()
                    .map(|f| match f {
                        "1" => Some(true),
                        "0" => Some(false),
                        _ => None,
                    })
                    .collect();
                nonneg = Some(flags.ok_or_else(|| err(line, "sign flags must be 0 or 1"))?);
                continue;
            }
            let (a, b) = l.split_once('|').ok_or_else(|| err(line, "missing `|`"))?;
            matrix.push(parse_numbers(a).ok_or_else(|| err(line, "bad coefficient"))?);
            let b = parse_numbers(b).ok_or_else(|| err(line, "bad right-hand side"))?;
            if b.len() != 1 {
                return Err(err(line, "expected exactly one right-hand side"));
            }
            rhs.extend(b);
        }
        let nonneg = nonneg.unwrap_or_else(|| vec![true; objective.len()]);
        LinearProgram::new(sense, objective, matrix, rhs, nonneg)
    }
}

fn parse_numbers(s: &str) -> Option<Vec<Rational>> {
    s.split_whitespace().map(parse_rational).collect()
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "{}", if self.sense == Sense::Max { "max" } else { "min" })?;
        writeln!(f, "{}", join(&self.objective))?;
        for (row, b) in self.matrix.iter().zip(&self.rhs) {
            writeln!(f, "{} | {}", join(row), b)?;
        }
        let flags: Vec<&str> = self.nonneg.iter().map(|&p| if p { "1" } else { "0" }).collect();
        writeln!(f, "nonneg {}", flags.join(" "))
    }
}

/// Mechanical dual.
///
/// `max c·x, Ax ≤ b` becomes `min b·y, Aᵀy ≥ c, y ≥ 0`; a free primal
/// variable turns its dual row into an equality, written as two opposite
/// inequalities. `Min` programs dualize symmetrically.
pub fn build_dual(lp: &LinearProgram) -> Result<LinearProgram, LpError> {
    lp.check_dimensions()?;
    let sense = match lp.sense {
        Sense::Max => Sense::Min,
        Sense::Min => Sense::Max,
    };
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..lp.variable_count() {
        let column: Vec<Rational> = lp.matrix.iter().map(|row| row[j].clone()).collect();
        let negated: Vec<Rational> = column.iter().map(|x| -x).collect();
        matrix.push(column);
        rhs.push(lp.objective[j].clone());
        if !lp.nonneg[j] {
            matrix.push(negated);
            rhs.push(-lp.objective[j].clone());
        }
    }
    LinearProgram::new(
        sense,
        lp.rhs.clone(),
        matrix,
        rhs,
        vec![true; lp.constraint_count()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    #[test]
    fn round_trips_text_format() {
        let text = "max\n3 2\n1 1 | 4\n1 -1 | 1/2\nnonneg 1 0\n";
        let lp = LinearProgram::parse(text).unwrap();
        assert_eq!(lp.rhs[1], crate::numeric::ratio(1, 2));
        assert_eq!(lp.nonneg, vec![true, false]);
        assert_eq!(LinearProgram::parse(&lp.to_string()).unwrap(), lp);
    }

    #[test]
    fn rejects_ragged_rows() {
        let e = LinearProgram::parse("min\n1 1\n1 | 2\n").unwrap_err();
        assert!(matches!(e, LpError::Malformed(_)));
        assert!(matches!(LinearProgram::parse("maximize\n1\n"), Err(LpError::Parse { line: 1, .. })));
    }

    #[test]
    fn dual_of_dual_is_primal_for_nonneg_programs() {
        let lp = LinearProgram::parse("max\n1 2\n1 1 | 3\n0 1 | 2\n").unwrap();
        let dd = build_dual(&build_dual(&lp).unwrap()).unwrap();
        assert_eq!(dd, lp);
    }

    #[test]
    fn free_variable_gives_equality_rows() {
        let lp = LinearProgram::parse("max\n1\n1 | 5\nnonneg 0\n").unwrap();
        let d = build_dual(&lp).unwrap();
        assert_eq!(d.sense, Sense::Min);
        assert_eq!(d.matrix, vec![vec![int(1)], vec![int(-1)]]);
        assert_eq!(d.rhs, vec![int(1), int(-1)]);
    }
}
