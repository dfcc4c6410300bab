//! Exact two-phase simplex over ℚ.
//!
//! Standard form: maximize `c·x` subject to `A x = b`, `x ≥ 0`. Entering and
//! leaving variables follow Bland's rule, so the method terminates without any
//! tolerance.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.rows[r][e].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.cost[e].is_zero() {
            let f = self.cost[e].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = e;
    }

    fn reset_cost(&mut self, c: &[BigRational]) {
        let mut cost = c.to_vec();
        cost.push(BigRational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (v, rv) in cost.iter_mut().zip(row) {
                *v -= cb * rv;
            }
        }
        self.cost = cost;
    }

    /// Runs Bland's rule over columns `0..allowed`. Returns false when the
    /// problem is unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(e) = (0..allowed).find(|&j| self.cost[j].is_positive()) else {
                return true;
            };
            let rhs = self.rhs();
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[e];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, e),
                None => return false,
            }
        }
    }

    fn value(&self) -> BigRational {
        -self.cost[self.rhs()].clone()
    }
}

pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "rhs length must match constraint count");
    assert!(a.iter().all(|r| r.len() == n), "constraint rows must have one entry per variable");

    // Phase 1: artificial variable per row, rows flipped so b ≥ 0.
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (ar, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row: Vec<BigRational> = ar
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        row.extend((0..m).map(|k| {
            if k == i {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        }));
        row.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        cost: Vec::new(),
        basis: (n..n + m).collect(),
        width,
    };
    let mut phase1_cost = vec![BigRational::zero(); n];
    phase1_cost.extend((0..m).map(|_| BigRational::from_integer((-1).into())));
    t.reset_cost(&phase1_cost);
    t.optimize(width);
    if t.value().is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis; drop rows that are redundant.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2_cost = c.to_vec();
    phase2_cost.extend((0..m).map(|_| BigRational::zero()));
    t.reset_cost(&phase2_cost);
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    let rhs = t.rhs();
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = row[rhs].clone();
    }
    let value = t.value();
    LpOutcome::Optimal { x, value }
}
