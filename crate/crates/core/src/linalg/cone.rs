//! Does a rational subspace meet the nonnegative orthant away from zero?
//!
//! A subgroup `L ⊆ ℤⁿ` contains a nonzero vector of `ℕⁿ` exactly when its
//! rational span contains a nonzero vector of `ℚⁿ_{≥0}`: any rational vector
//! of the span has a positive integer multiple in `L`. The span is cut out by
//! `C x = 0` where the rows of `C` span the left kernel of the basis, so the
//! question becomes the LP
//!
//! ```text
//! maximize 1ᵀx   subject to   C x = 0,  1ᵀx + s = 1,  x ≥ 0,  s ≥ 0
//! ```
//!
//! whose optimum is 0 (no such vector) or 1 (witness found).

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hermite::HermiteLattice;
use super::kernel_basis;
use super::lp::{maximize, LpOutcome};

/// A nonzero nonnegative vector in the rational span, with its coordinates in
/// the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeWitness {
    pub vector: Vec<BigRational>,
    pub coefficients: Vec<BigRational>,
}

pub fn subspace_meets_positive_cone(lattice: &HermiteLattice) -> Option<ConeWitness> {
    let n = lattice.ambient_dim();
    if lattice.is_zero() {
        return None;
    }
    let orth = kernel_basis(&lattice.basis().transpose());
    let mut rows: Vec<Vec<BigRational>> = orth
        .columns()
        .into_iter()
        .map(|c| {
            let mut r: Vec<BigRational> = c.into_iter().map(BigRational::from_integer).collect();
            r.push(BigRational::zero());
            r
        })
        .collect();
    rows.push(vec![BigRational::one(); n + 1]);
    let mut rhs = vec![BigRational::zero(); rows.len()];
    *rhs.last_mut().expect("normalisation row") = BigRational::one();
    let mut objective = vec![BigRational::one(); n];
    objective.push(BigRational::zero());

    match maximize(&rows, &rhs, &objective) {
        LpOutcome::Optimal { mut x, value } if !value.is_zero() => {
            x.truncate(n);
            let coefficients = lattice
                .rational_coordinates(&x)
                .expect("dimensions agree")
                .expect("LP solution lies in the span");
            Some(ConeWitness {
                vector: x,
                coefficients,
            })
        }
        LpOutcome::Optimal { .. } => None,
        LpOutcome::Infeasible | LpOutcome::Unbounded => {
            unreachable!("x = 0, s = 1 is feasible and the objective is bounded by 1")
        }
    }
}
