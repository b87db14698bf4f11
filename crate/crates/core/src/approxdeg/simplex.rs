//! Dense two-phase simplex over exact rationals.
//!
//! Problems are `minimize c·x` subject to linear rows and `x >= 0`. Pivoting
//! uses Bland's rule, so the method terminates without cycling on the
//! degenerate programs that minimax fitting produces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    /// Minimised.
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // each row: coefficients for every column, then the right-hand side
    rows: Vec<Vec<Rational>>,
    // reduced costs per column, then minus the current objective value
    costs: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        if !self.costs[c].is_zero() {
            let factor = self.costs[c].clone();
            for (v, p) in self.costs.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over the allowed columns. Returns false when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.costs[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn set_costs(&mut self, cost: &[Rational]) {
        let mut costs = vec![Rational::zero(); self.width + 1];
        costs[..cost.len()].clone_from_slice(cost);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < cost.len() && !cost[b].is_zero() {
                let cb = cost[b].clone();
                for (v, a) in costs.iter_mut().zip(row) {
                    *v -= &cb * a;
                }
            }
        }
        self.costs = costs;
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let nvars = lp.objective.len();
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            assert_eq!(c.coefficients.len(), nvars, "constraint width must match objective");
            let (mut a, mut rel, mut b) = (c.coefficients.clone(), c.relation, c.rhs.clone());
            let flip = b.is_negative() || (b.is_zero() && rel == Relation::Ge);
            if flip {
                a.iter_mut().for_each(|v| *v = -v.clone());
                b = -b;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            (a, rel, b)
        })
        .collect();

    let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let width = nvars + n_slack + n_art;
    let art_start = nvars + n_slack;

    let mut table = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_art) = (nvars, art_start);
    for (a, rel, b) in rows.drain(..) {
        let mut row = a;
        row.resize(width + 1, Rational::zero());
        row[width] = b;
        match rel {
            Relation::Le => {
                row[next_slack] = Rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        table.push(row);
    }

    let mut t = Tableau {
        rows: table,
        costs: Vec::new(),
        basis,
        width,
    };

    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); width];
        phase1[art_start..].iter_mut().for_each(|c| *c = Rational::one());
        t.set_costs(&phase1);
        t.optimize(width);
        if !t.costs[width].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= art_start {
                match (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(j) => t.pivot(r, j),
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    t.set_costs(&lp.objective);
    if !t.optimize(art_start) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); nvars];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < nvars {
            x[b] = row[width].clone();
        }
    }
    let value = -t.costs[width].clone();
    LpOutcome::Optimal { x, value }
}
