//! Canonical bases for subgroups of ℤⁿ.
//!
//! Convention (column-style Hermite form): the basis columns `b₁ … b_r` have
//! strictly increasing pivot rows `p₁ < … < p_r`; column `b_j` vanishes above
//! `p_j` and has a positive pivot `b_j[p_j]`; every earlier column satisfies
//! `0 ≤ b_i[p_j] < b_j[p_j]` for `i < j`. Two sets of generators span the same
//! subgroup exactly when their canonical bases are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HermiteLattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

/// Canonical Hermite basis of the column span of `a`.
pub fn lattice_of_columns(a: &IntMatrix) -> HermiteLattice {
    HermiteLattice::from_generators(a.rows(), a.columns())
}

impl HermiteLattice {
    pub fn zero(ambient_dim: usize) -> Self {
        HermiteLattice {
            ambient_dim,
            basis: IntMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        HermiteLattice {
            ambient_dim,
            basis: IntMatrix::identity(ambient_dim),
        }
    }

    pub fn from_generators(ambient_dim: usize, mut cols: Vec<Vec<BigInt>>) -> Self {
        cols.retain(|c| c.iter().any(|x| !x.is_zero()));
        let mut k = 0;
        for row in 0..ambient_dim {
            if k == cols.len() {
                break;
            }
            for j in k + 1..cols.len() {
                if cols[j][row].is_zero() {
                    continue;
                }
                if cols[k][row].is_zero() {
                    cols.swap(k, j);
                    continue;
                }
                let a = cols[k][row].clone();
                let b = cols[j][row].clone();
                let ext = a.extended_gcd(&b);
                let (g, x, y) = (ext.gcd, ext.x, ext.y);
                let a_g = &a / &g;
                let b_g = &b / &g;
                let (left, right) = cols.split_at_mut(j);
                let ck = &mut left[k];
                let cj = &mut right[0];
                for r in row..ambient_dim {
                    let u = ck[r].clone();
                    let w = cj[r].clone();
                    ck[r] = &x * &u + &y * &w;
                    cj[r] = &a_g * &w - &b_g * &u;
                }
            }
            if cols[k][row].is_zero() {
                continue;
            }
            if cols[k][row].is_negative() {
                for v in cols[k].iter_mut() {
                    *v = -&*v;
                }
            }
            let pivot = cols[k][row].clone();
            let (before, rest) = cols.split_at_mut(k);
            let ck = &rest[0];
            for c in before.iter_mut() {
                let q = c[row].div_floor(&pivot);
                if !q.is_zero() {
                    for r in row..ambient_dim {
                        let v = &q * &ck[r];
                        c[r] -= v;
                    }
                }
            }
            k += 1;
        }
        cols.truncate(k);
        HermiteLattice {
            ambient_dim,
            basis: IntMatrix::from_columns(ambient_dim, &cols),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_full(&self) -> bool {
        self.basis == IntMatrix::identity(self.ambient_dim)
    }

    /// Pivot row of each basis column.
    pub fn pivot_rows(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|j| {
                (0..self.ambient_dim)
                    .find(|&i| !self.basis[(i, j)].is_zero())
                    .expect("basis columns are nonzero")
            })
            .collect()
    }

    /// Smallest lattice containing both.
    pub fn join(&self, other: &HermiteLattice) -> Result<HermiteLattice> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "cannot join lattices in ℤ^{} and ℤ^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        let mut cols = self.basis.columns();
        cols.extend(other.basis.columns());
        Ok(HermiteLattice::from_generators(self.ambient_dim, cols))
    }

    /// Membership with an integer certificate `c` such that `basis · c = v`.
    pub fn contains(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "vector of length {} tested against a lattice in ℤ^{}",
                v.len(),
                self.ambient_dim
            )));
        }
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (j, p) in self.pivot_rows().into_iter().enumerate() {
            let (q, rem) = residual[p].div_rem(&self.basis[(p, j)]);
            if !rem.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (r, x) in residual.iter_mut().enumerate().skip(p) {
                    *x -= &q * &self.basis[(r, j)];
                }
            }
            coeffs.push(q);
        }
        Ok(residual.iter().all(Zero::is_zero).then_some(coeffs))
    }

    pub fn contains_all(&self, m: &IntMatrix) -> Result<bool> {
        for col in m.columns() {
            if self.contains(&col)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_sublattice_of(&self, other: &HermiteLattice) -> Result<bool> {
        other.contains_all(&self.basis)
    }

    /// Rational coordinates of `v` in the basis, if `v` lies in the rational
    /// span of the lattice.
    pub fn rational_coordinates(&self, v: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "vector of length {} tested against a lattice in ℤ^{}",
                v.len(),
                self.ambient_dim
            )));
        }
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (j, p) in self.pivot_rows().into_iter().enumerate() {
            let q = &residual[p] / BigRational::from_integer(self.basis[(p, j)].clone());
            for (r, x) in residual.iter_mut().enumerate().skip(p) {
                *x -= &q * BigRational::from_integer(self.basis[(r, j)].clone());
            }
            coeffs.push(q);
        }
        Ok(residual.iter().all(Zero::is_zero).then_some(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;

    #[test]
    fn mixed_generators() {
        let a = IntMatrix::from_i64(&[&[2, 0, 1], &[0, 2, 1]]);
        let l = lattice_of_columns(&a);
        assert_eq!(l.basis(), &IntMatrix::from_i64(&[&[1, 0], &[1, 2]]));
    }

    #[test]
    fn empty_and_identity() {
        assert!(lattice_of_columns(&IntMatrix::zeros(3, 0)).is_zero());
        assert!(lattice_of_columns(&IntMatrix::identity(2)).is_full());
    }

    #[test]
    fn membership() {
        let l = lattice_of_columns(&IntMatrix::from_i64(&[&[1], &[-1]]));
        assert_eq!(l.contains(&int_vec(&[2, -2])).unwrap(), Some(int_vec(&[2])));
        assert_eq!(l.contains(&int_vec(&[1, 0])).unwrap(), None);
        let l = lattice_of_columns(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        let c = l.contains(&int_vec(&[2, 3])).unwrap().unwrap();
        assert_eq!(l.basis().mul_vec(&c).unwrap(), int_vec(&[2, 3]));
        assert!(l.contains(&int_vec(&[1])).is_err());
    }

    #[test]
    fn canonical_under_reordering() {
        let a = IntMatrix::from_i64(&[&[3, 5, 0], &[1, 2, 7], &[0, 4, 4]]);
        let b = IntMatrix::from_i64(&[&[0, 5, 8], &[7, 2, 3], &[4, 4, 4]]);
        // b's columns: c3, c2, c1 + c2 of a.
        assert_eq!(lattice_of_columns(&a), lattice_of_columns(&b));
    }
}
