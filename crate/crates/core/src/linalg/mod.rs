//! Exact integer and rational linear algebra.

mod cone;
mod hermite;
mod lp;
mod matrix;
mod smith;

pub use cone::{subspace_meets_positive_cone, ConeWitness};
pub use hermite::{lattice_of_columns, HermiteLattice};
pub use lp::{maximize, LpOutcome};
pub use matrix::{int_vec, IntMatrix};
pub use smith::{smith_normal_form, solve_integer, SmithForm};

/// Basis of the integer kernel `{x ∈ ℤⁿ : A x = 0}`, as the columns of an
/// `n × (n − rank)` matrix in canonical Hermite form.
///
/// The trailing columns of the right Smith transform span the kernel and,
/// being part of a unimodular matrix, span all of it (the kernel is pure).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let n = a.cols();
    let cols: Vec<usize> = (snf.rank..n).collect();
    let raw = snf.right.select(&(0..n).collect::<Vec<_>>(), &cols);
    lattice_of_columns(&raw).basis().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).cols(), 0);
        assert_eq!(kernel_basis(&IntMatrix::zeros(1, 2)), IntMatrix::identity(2));
        assert_eq!(
            kernel_basis(&IntMatrix::from_i64(&[&[1, -1]])),
            IntMatrix::from_i64(&[&[1], &[1]])
        );
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x − 4y = 0 has kernel spanned by (2, 1), not (4, 2).
        let k = kernel_basis(&IntMatrix::from_i64(&[&[2, -4]]));
        assert_eq!(k, IntMatrix::from_i64(&[&[2], &[1]]));
    }
}
