//! Smith normal form with unimodular transforms.
//!
//! Pivoting picks the smallest nonzero entry (by absolute value) of the
//! active block, clears its row and column by Euclidean division, and
//! re-pivots whenever a remainder survives. A final pass folds any row that
//! is not divisible by the pivot back into the pivot row, which enforces the
//! divisibility chain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `left · source · right = diagonal`, with `left`, `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub source: IntMatrix,
    pub left: IntMatrix,
    /// Inverse of `left`, tracked alongside it.
    pub left_inverse: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: IntMatrix,
    /// The nonzero diagonal entries `d₁ | d₂ | … | d_r`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    /// Free rank of `ℤ^rows / colspan(source)`.
    pub fn cokernel_free_rank(&self) -> usize {
        self.source.rows() - self.rank
    }

    /// Checks every defining identity exactly. Used by tests and by callers
    /// that want a belt-and-braces certificate.
    pub fn verify(&self) -> bool {
        let m = self.source.rows();
        let n = self.source.cols();
        let Ok(prod) = self
            .left
            .mul(&self.source)
            .and_then(|x| x.mul(&self.right))
        else {
            return false;
        };
        if prod != self.diagonal {
            return false;
        }
        if self.left.mul(&self.left_inverse).ok() != Some(IntMatrix::identity(m)) {
            return false;
        }
        if !self.left.determinant().abs().is_one() || !self.right.determinant().abs().is_one() {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                let d = &self.diagonal[(i, j)];
                if i != j && !d.is_zero() {
                    return false;
                }
                if i == j && i < self.rank && d != &self.invariant_factors[i] {
                    return false;
                }
                if i == j && i >= self.rank && !d.is_zero() {
                    return false;
                }
            }
        }
        self.invariant_factors.iter().all(|d| d.is_positive())
            && self
                .invariant_factors
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero())
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.d.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest |entry| in the block `[t.., t..]`.
    fn block_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let a = self.d[(i, j)].abs();
                if a.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Smallest |entry| in row `t` and column `t` beyond the pivot, if it
    /// beats the pivot.
    fn cross_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let p = self.d[(t, t)].abs();
        let mut best: Option<(usize, usize, BigInt)> = None;
        let candidates = (t + 1..self.d.rows())
            .map(|i| (i, t))
            .chain((t + 1..self.d.cols()).map(|j| (t, j)));
        for (i, j) in candidates {
            let a = self.d[(i, j)].abs();
            if !a.is_zero() && a < p && best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn bring_to(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    fn reduce_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.d.rows() {
            if self.d[(i, t)].is_zero() {
                continue;
            }
            let q = self.d[(i, t)].div_floor(&self.d[(t, t)]);
            self.add_row(i, t, &-q);
            clean &= self.d[(i, t)].is_zero();
        }
        for j in t + 1..self.d.cols() {
            if self.d[(t, j)].is_zero() {
                continue;
            }
            let q = self.d[(t, j)].div_floor(&self.d[(t, t)]);
            self.add_col(j, t, &-q);
            clean &= self.d[(t, j)].is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.d[(t, t)];
        (t + 1..self.d.rows()).find(|&i| {
            (t + 1..self.d.cols()).any(|j| !(&self.d[(i, j)] % p).is_zero())
        })
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.rows();
    let n = a.cols();
    let mut r = Reducer {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        let Some(pos) = r.block_pivot(t) else { break };
        r.bring_to(t, pos);
        loop {
            if !r.reduce_cross(t) {
                if let Some(pos) = r.cross_pivot(t) {
                    r.bring_to(t, pos);
                }
                continue;
            }
            match r.non_divisible_row(t) {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.d[(t, t)].is_negative() {
            r.negate_row(t);
        }
        rank += 1;
    }
    let invariant_factors = (0..rank).map(|i| r.d[(i, i)].clone()).collect();
    SmithForm {
        source: a.clone(),
        left: r.u,
        left_inverse: r.u_inv,
        right: r.v,
        diagonal: r.d,
        invariant_factors,
        rank,
    }
}

/// Solves `a · x = b` over ℤ, returning one solution if any exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() != a.rows() {
        return None;
    }
    let snf = smith_normal_form(a);
    let c = snf.left.mul_vec(b).ok()?;
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let (q, rem) = ci.div_rem(&snf.invariant_factors[i]);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    snf.right.mul_vec(&z).ok()
}
