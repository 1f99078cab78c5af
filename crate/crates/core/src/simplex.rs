//! Exact rational simplex for the eutaxy feasibility certificate.
//!
//! Two-phase dense tableau with Bland's rule, so termination is
//! unconditional and every optimum is an exact rational certificate.

use crate::budget::BudgetMeter;
use crate::qmat::QMat;
use crate::rat::Rat;
use num_traits::{Signed, Zero};

/// Outcome of maximizing `c . x` subject to `A x = b`, `x >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { objective: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
    /// The pivot budget ran out before optimality was proven.
    BudgetExceeded,
}

struct Tableau {
    /// m x (n + 1) matrix; the last column is the right-hand side.
    rows: Vec<Vec<Rat>>,
    /// Reduced-cost row of length n + 1; the last entry is the negated
    /// objective value.
    cost: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (a, p) in r.iter_mut().zip(&pivot_row) {
                *a -= &f * p;
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (a, p) in self.cost.iter_mut().zip(&pivot_row) {
                *a -= &f * p;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering column is the lowest index with positive
    /// reduced cost; leaving row minimizes the ratio, ties broken by the
    /// lowest basis variable index.
    fn run(&mut self, meter: &mut BudgetMeter) -> LpOutcome {
        loop {
            let entering = (0..self.ncols).find(|&j| self.cost[j].is_positive());
            let Some(col) = entering else {
                return LpOutcome::Optimal { objective: -self.cost[self.ncols].clone(), solution: vec![] };
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.ncols] / &self.rows[i][col];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
            let Some((row, _)) = leave else {
                return LpOutcome::Unbounded;
            };
            if !meter.tick() {
                return LpOutcome::BudgetExceeded;
            }
            self.pivot(row, col);
        }
    }

    fn solution(&self, nvars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nvars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < nvars {
                x[b] = self.rows[i][self.ncols].clone();
            }
        }
        x
    }
}

/// Maximizes `objective . x` over `constraints * x = rhs`, `x >= 0`.
/// Every pivot ticks the meter; exhaustion yields `BudgetExceeded`.
pub fn maximize(
    constraints: &QMat,
    rhs: &[Rat],
    objective: &[Rat],
    meter: &mut BudgetMeter,
) -> LpOutcome {
    let m = constraints.rows();
    let n = constraints.cols();
    assert_eq!(rhs.len(), m);
    assert_eq!(objective.len(), n);

    // Normalize to nonnegative right-hand sides.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rat> = constraints.row(i).to_vec();
        let mut b = rhs[i].clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        row.push(b);
        rows.push(row);
    }

    // Phase 1: minimize the sum of artificial variables.
    let ncols = n + m;
    let mut t_rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut r = vec![Rat::zero(); ncols + 1];
        r[..n].clone_from_slice(&row[..n]);
        r[n + i] = Rat::from_integer(1.into());
        r[ncols] = row[n].clone();
        t_rows.push(r);
    }
    // Maximizing -(sum of artificials): reduced costs are the column sums
    // over the constraint rows, because the artificial basis starts active.
    let mut cost = vec![Rat::zero(); ncols + 1];
    for j in 0..n {
        for r in &t_rows {
            cost[j] += &r[j];
        }
    }
    for r in &t_rows {
        cost[ncols] += &r[ncols];
    }
    let mut tableau = Tableau { rows: t_rows, cost, basis: (n..n + m).collect(), ncols };

    match tableau.run(meter) {
        LpOutcome::Optimal { objective: phase1, .. } => {
            if !phase1.is_zero() {
                return LpOutcome::Infeasible;
            }
        }
        LpOutcome::Unbounded => unreachable!("phase 1 objective is bounded by zero"),
        other => return other,
    }

    // Drive artificial variables out of the basis; rows that cannot pivot
    // on a structural column are redundant and dropped.
    let mut i = 0;
    while i < tableau.rows.len() {
        if tableau.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !tableau.rows[i][j].is_zero()) {
                if !meter.tick() {
                    return LpOutcome::BudgetExceeded;
                }
                tableau.pivot(i, col);
                i += 1;
            } else {
                debug_assert!(tableau.rows[i][tableau.ncols].is_zero());
                tableau.rows.remove(i);
                tableau.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    // Phase 2: restrict to structural columns and install the real
    // objective, priced out against the current basis.
    for r in tableau.rows.iter_mut() {
        let rhs_val = r[ncols].clone();
        r.truncate(n);
        r.push(rhs_val);
    }
    tableau.ncols = n;
    let mut cost = vec![Rat::zero(); n + 1];
    cost[..n].clone_from_slice(objective);
    for (i, &b) in tableau.basis.iter().enumerate() {
        debug_assert!(b < n);
        if objective[b].is_zero() {
            continue;
        }
        let f = objective[b].clone();
        let row = tableau.rows[i].clone();
        for (a, p) in cost.iter_mut().zip(&row) {
            *a -= &f * p;
        }
    }
    // The objective-value slot tracks -(value); basic costs were priced out
    // into it by the loop above.
    tableau.cost = cost;

    match tableau.run(meter) {
        LpOutcome::Optimal { objective: value, .. } => {
            let solution = tableau.solution(n);
            LpOutcome::Optimal { objective: value, solution }
        }
        other => other,
    }
}
