//! Dense exact-rational simplex for `max c·x  s.t.  A x ≤ b, x ≥ 0` with `b ≥ 0`.
//!
//! The all-slack basis is feasible under `b ≥ 0`, so no phase one is needed.
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! leaving basic variable among ratio ties), which cannot cycle.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// Optimal multipliers of the constraint rows.
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    /// Adds `row · x ≤ rhs`.
    pub fn add_row(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.objective.len(), "row width mismatch");
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Adds a row given as sparse `(column, coefficient)` pairs.
    pub fn add_sparse_row(&mut self, entries: &[(usize, Rational)], rhs: Rational) {
        let mut row = vec![Rational::zero(); self.objective.len()];
        for (j, c) in entries {
            row[*j] += c;
        }
        self.add_row(row, rhs);
    }

    pub fn maximize(&self) -> Result<LpOutcome> {
        if self.rhs.iter().any(Rational::is_negative) {
            return Err(Error::Internal("simplex requires a nonnegative right-hand side".into()));
        }
        Tableau::new(self).solve()
    }
}

struct Tableau {
    n: usize,
    m: usize,
    /// `m` rows of width `n + m` (structural then slack columns).
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    /// Reduced profits `c_j - y·A_j`.
    profit: Vec<Rational>,
    value: Rational,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let n = lp.objective.len();
        let m = lp.rows.len();
        let a = lp
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut full = row.clone();
                full.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
                full
            })
            .collect();
        let mut profit = lp.objective.clone();
        profit.extend((0..m).map(|_| Rational::zero()));
        Tableau {
            n,
            m,
            a,
            b: lp.rhs.clone(),
            profit,
            value: Rational::zero(),
            basis: (n..n + m).collect(),
        }
    }

    fn solve(mut self) -> Result<LpOutcome> {
        loop {
            let Some(enter) = self.profit.iter().position(Rational::is_positive) else {
                return Ok(LpOutcome::Optimal(self.solution()));
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let coef = &self.a[i][enter];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / coef;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Ok(LpOutcome::Unbounded);
            };
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let width = self.n + self.m;
        let inv = self.a[r][e].recip();
        if inv != Rational::one() {
            for x in self.a[r].iter_mut().filter(|x| !x.is_zero()) {
                *x = &*x * &inv;
            }
            self.b[r] = &self.b[r] * &inv;
        }
        let support: Vec<usize> = (0..width).filter(|&j| !self.a[r][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.a[r]);
        let pivot_rhs = self.b[r].clone();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let factor = self.a[i][e].clone();
            if factor.is_zero() {
                continue;
            }
            let row = &mut self.a[i];
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
            if !pivot_rhs.is_zero() {
                self.b[i] -= &factor * &pivot_rhs;
            }
        }
        let factor = self.profit[e].clone();
        if !factor.is_zero() {
            for &j in &support {
                self.profit[j] -= &factor * &pivot_row[j];
            }
            self.value += &factor * &pivot_rhs;
        }
        self.a[r] = pivot_row;
        self.basis[r] = e;
    }

    fn solution(&self) -> LpSolution {
        let mut primal = vec![Rational::zero(); self.n];
        for (i, &var) in self.basis.iter().enumerate() {
            if var < self.n {
                primal[var] = self.b[i].clone();
            }
        }
        let dual = (0..self.m).map(|i| -&self.profit[self.n + i]).collect();
        LpSolution {
            value: self.value.clone(),
            primal,
            dual,
        }
    }
}
