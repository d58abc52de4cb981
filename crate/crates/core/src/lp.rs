//! Exact rational linear programming: two-phase tableau simplex with Bland's rule.
//!
//! Variables are free unless marked nonnegative; constraints are `≤`, `=` or `≥`.
//! Free variables are split as `x = x⁺ − x⁻` internally.

use num_traits::{One, Signed, Zero};

use crate::linalg::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rat>,
    nonneg: Vec<bool>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

impl LinearProgram {
    /// Maximize `objective · x` over free `x`.
    pub fn maximize(objective: Vec<Rat>) -> Self {
        LinearProgram { num_vars: objective.len(), nonneg: vec![false; objective.len()], objective, constraints: Vec::new() }
    }

    /// Restricts `x_j ≥ 0` without an explicit constraint row.
    pub fn nonnegative(&mut self, j: usize) -> &mut Self {
        self.nonneg[j] = true;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width mismatch");
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    /// Constraint rows, then the reduced-cost row; last column is the rhs.
    a: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    num_cols: usize,
    /// Column of each variable's positive part, and of its negative part if free.
    var_cols: Vec<(usize, Option<usize>)>,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut col = 0;
        for &nn in &lp.nonneg {
            if nn {
                var_cols.push((col, None));
                col += 1;
            } else {
                var_cols.push((col, Some(col + 1)));
                col += 2;
            }
        }
        let num_slack = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let first_artificial = col + num_slack;
        // rows whose slack enters with coefficient +1 after making the rhs nonnegative start basic in it
        let mut rows = Vec::with_capacity(lp.constraints.len());
        let mut slack = col;
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            let slack_col = match c.relation {
                Relation::Eq => None,
                Relation::Le | Relation::Ge => {
                    slack += 1;
                    let sign_pos = (c.relation == Relation::Le) != flip;
                    Some((slack - 1, sign_pos))
                }
            };
            rows.push((flip, slack_col));
        }
        let num_artificial = rows.iter().filter(|(_, s)| !matches!(s, Some((_, true)))).count();
        let num_cols = first_artificial + num_artificial;
        let mut a = Vec::with_capacity(lp.constraints.len() + 1);
        let mut basis = Vec::with_capacity(lp.constraints.len());
        let mut art = first_artificial;
        for (c, &(flip, slack_col)) in lp.constraints.iter().zip(&rows) {
            let mut row = vec![Rat::zero(); num_cols + 1];
            for (v, &(p, q)) in c.coeffs.iter().zip(&var_cols) {
                row[p] = v.clone();
                if let Some(q) = q {
                    row[q] = -v.clone();
                }
            }
            if let Some((sc, _)) = slack_col {
                row[sc] = if c.relation == Relation::Le { Rat::one() } else { -Rat::one() };
            }
            row[num_cols] = c.rhs.clone();
            if flip {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            match slack_col {
                Some((sc, true)) => basis.push(sc),
                _ => {
                    row[art] = Rat::one();
                    basis.push(art);
                    art += 1;
                }
            }
            a.push(row);
        }
        a.push(vec![Rat::zero(); num_cols + 1]);
        Tableau { a, basis, num_cols, var_cols, first_artificial }
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    /// Installs the reduced-cost row `z_j − c_j` for maximizing `cost`.
    fn set_objective(&mut self, cost: &[Rat]) {
        let m = self.m();
        let mut z: Vec<Rat> = cost.iter().map(|c| -c.clone()).chain(std::iter::once(Rat::zero())).collect();
        for r in 0..m {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (zj, aj) in z.iter_mut().zip(&self.a[r]) {
                if !aj.is_zero() {
                    *zj += cb * aj;
                }
            }
        }
        self.a[m] = z;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for x in self.a[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = std::mem::take(&mut self.a[r]);
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        self.a[r] = prow;
        self.basis[r] = c;
    }

    /// Simplex iterations with Bland's rule over the allowed columns.
    /// Returns `false` if the objective is unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let m = self.m();
        let rhs = self.num_cols;
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.a[m][j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..m {
                let row = &self.a[r];
                if row[enter].is_positive() {
                    let ratio = &row[rhs] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((lr, lv)) => ratio < *lv || (ratio == *lv && self.basis[r] < self.basis[*lr]),
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let rhs = self.num_cols;
        if self.first_artificial < self.num_cols {
            // phase 1: maximize −Σ artificials
            let mut cost1 = vec![Rat::zero(); self.num_cols];
            for c in cost1.iter_mut().skip(self.first_artificial) {
                *c = -Rat::one();
            }
            self.set_objective(&cost1);
            self.optimize(self.num_cols);
            let infeas: Rat = (0..self.m())
                .filter(|&r| self.basis[r] >= self.first_artificial)
                .fold(Rat::zero(), |acc, r| acc + &self.a[r][rhs]);
            if infeas.is_positive() {
                return LpOutcome::Infeasible;
            }
            // drive remaining (zero-valued) artificials out of the basis
            let mut r = 0;
            while r < self.m() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.a[r][j].is_zero()) {
                        Some(j) => self.pivot(r, j),
                        None => {
                            // redundant constraint
                            self.a.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }
        let mut cost2 = vec![Rat::zero(); self.num_cols];
        for (c, &(p, q)) in lp.objective.iter().zip(&self.var_cols) {
            cost2[p] = c.clone();
            if let Some(q) = q {
                cost2[q] = -c.clone();
            }
        }
        self.set_objective(&cost2);
        if !self.optimize(self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut value_of = vec![Rat::zero(); self.num_cols];
        for r in 0..self.m() {
            value_of[self.basis[r]] = self.a[r][rhs].clone();
        }
        let point: Vec<Rat> = self
            .var_cols
            .iter()
            .map(|&(p, q)| match q {
                Some(q) => &value_of[p] - &value_of[q],
                None => value_of[p].clone(),
            })
            .collect();
        let value = point.iter().zip(&lp.objective).fold(Rat::zero(), |acc, (x, c)| acc + x * c);
        LpOutcome::Optimal { value, point }
    }
}
