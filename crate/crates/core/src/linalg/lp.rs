//! Two-phase dense simplex over exact rationals with Bland's rule.

use num_traits::{Signed, Zero};

use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Ge,
    Le,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub cmp: Cmp,
    pub rhs: Rational,
}

/// Variables are implicitly nonnegative.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub vars: usize,
    pub constraints: Vec<Constraint>,
    /// Minimized when present; otherwise any feasible point is returned.
    pub minimize: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Vec<Rational>),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let lead = self.rows[r][c].clone();
        for a in self.rows[r].iter_mut() {
            *a /= &lead;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (a, b) in row.iter_mut().zip(&prow) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        self.basis[r] = c;
    }

    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width]
    }

    /// Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.width {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    let cb = &cost[self.basis[i]];
                    if !cb.is_zero() && !row[j].is_zero() {
                        d -= cb * &row[j];
                    }
                }
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = self.rhs(i) / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, c);
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> LpOutcome {
    let n = lp.vars;
    let m = lp.constraints.len();
    let slacks = lp.constraints.iter().filter(|c| c.cmp != Cmp::Eq).count();
    let width = n + slacks + m;
    let art0 = n + slacks;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = n;
    for (i, c) in lp.constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n, "constraint width");
        let mut row = vec![Rational::zero(); width + 1];
        row[..n].clone_from_slice(&c.coeffs);
        match c.cmp {
            Cmp::Eq => {}
            Cmp::Le => {
                row[slack] = Rational::from_integer(1.into());
                slack += 1;
            }
            Cmp::Ge => {
                row[slack] = Rational::from_integer((-1).into());
                slack += 1;
            }
        }
        row[width] = c.rhs.clone();
        if c.rhs.is_negative() {
            for a in row.iter_mut() {
                *a = -&*a;
            }
        }
        row[art0 + i] = Rational::from_integer(1.into());
        rows.push(row);
        basis.push(art0 + i);
    }
    let mut tab = Tableau { rows, basis, width };

    let mut phase1 = vec![Rational::zero(); width];
    for c in phase1.iter_mut().skip(art0) {
        *c = Rational::from_integer(1.into());
    }
    let all = vec![true; width];
    tab.optimize(&phase1, &all);
    let infeasibility: Rational = (0..m)
        .filter(|&i| tab.basis[i] >= art0)
        .map(|i| tab.rhs(i).clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= art0 {
            match (0..art0).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    if let Some(obj) = &lp.minimize {
        assert_eq!(obj.len(), n, "objective width");
        let mut cost = vec![Rational::zero(); width];
        cost[..n].clone_from_slice(obj);
        let mut allowed = vec![true; width];
        for a in allowed.iter_mut().skip(art0) {
            *a = false;
        }
        if !tab.optimize(&cost, &allowed) {
            return LpOutcome::Unbounded;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs(i).clone();
        }
    }
    LpOutcome::Optimal(x)
}
