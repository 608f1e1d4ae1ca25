//! Sublattices of Z^k: canonical column bases, saturation, membership of a
//! rational vector modulo the standard lattice, and integer kernels.

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::normal_form::{hermite_normal_form, smith_normal_form};
use super::rat::{is_integer, Rat};

/// A saturated sublattice of Z^(ambient_rank), stored as a canonical
/// (Hermite-form) column basis so equal sublattices compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeBasis {
    pub ambient_rank: usize,
    pub rank: usize,
    /// ambient_rank x rank; columns generate the sublattice.
    pub basis: IntMatrix,
}

impl SublatticeBasis {
    /// Saturate the column span of `columns` inside Z^k and store the
    /// canonical basis.
    pub fn from_columns(columns: &IntMatrix) -> Self {
        let basis = saturate(columns);
        SublatticeBasis {
            ambient_rank: columns.rows(),
            rank: basis.cols(),
            basis,
        }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        SublatticeBasis {
            ambient_rank,
            rank: 0,
            basis: IntMatrix::zero(ambient_rank, 0),
        }
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.ambient_rank
    }
}

/// Canonical basis of the lattice generated by the columns of `m`: the
/// nonzero rows of the row-HNF of the transpose, transposed back.  Zero
/// columns are dropped, so the result has exactly rank(m) columns.
pub fn column_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(&m.transpose());
    let nonzero: Vec<usize> = (0..h.rows())
        .filter(|&r| (0..h.cols()).any(|c| !h.get(r, c).is_zero()))
        .collect();
    let mut out = IntMatrix::zero(m.rows(), nonzero.len());
    for (j, &r) in nonzero.iter().enumerate() {
        for i in 0..m.rows() {
            out.set(i, j, h.get(r, i).clone());
        }
    }
    out
}

/// Basis (in Hermite form) of span_Q(columns of b) intersected with Z^k.
pub fn saturate(b: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(b);
    if snf.rank == 0 {
        return IntMatrix::zero(b.rows(), 0);
    }
    // U*B*V = D, so the saturation is spanned by the first `rank` columns
    // of U^{-1}.
    let u_inv = snf.u.inverse_unimodular();
    let mut cols = IntMatrix::zero(b.rows(), snf.rank);
    for j in 0..snf.rank {
        for i in 0..b.rows() {
            cols.set(i, j, u_inv.get(i, j).clone());
        }
    }
    column_basis(&cols)
}

/// Does t lie in Im_Q(M) + Z^k?  Decided through the Smith form: with
/// U*M*V = D, the condition is that the coordinates of U*t past the rank
/// are integers.
pub fn member_mod_lattice(t: &[Rat], m: &IntMatrix) -> bool {
    assert_eq!(t.len(), m.rows(), "vector length must match row count");
    let snf = smith_normal_form(m);
    let ut = snf.u.mul_vec_rat(t);
    ut.iter().skip(snf.rank).all(is_integer)
}

/// Saturated basis of the integer kernel {x in Z^c : M x = 0}.
pub fn kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    // columns of V past the rank are a primitive basis of the kernel
    let c = m.cols();
    let free = c - snf.rank;
    let mut cols = IntMatrix::zero(c, free);
    for j in 0..free {
        for i in 0..c {
            cols.set(i, j, snf.v.get(i, snf.rank + j).clone());
        }
    }
    column_basis(&cols)
}

/// Index of a finite-index sublattice spanned by the columns of `b`
/// (absolute determinant); panics unless `b` is square.
pub fn lattice_index(b: &IntMatrix) -> BigInt {
    use num_traits::Signed;
    b.det().expect("basis must be square").abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::{rat, rat_int};

    #[test]
    fn saturate_scaled_vector() {
        // cols {(2,0)} in Z^2  ->  {(1,0)}
        let b = IntMatrix::from_rows(&[vec![2], vec![0]]);
        let s = saturate(&b);
        assert_eq!(s, IntMatrix::from_rows(&[vec![1], vec![0]]));
    }

    #[test]
    fn saturate_scaled_identity() {
        let b = IntMatrix::identity(4).scale(&BigInt::from(2));
        assert_eq!(saturate(&b), IntMatrix::identity(4));
    }

    #[test]
    fn saturate_full_rank_pair() {
        // cols {(2,4),(0,6)}: the saturation is all of Z^2, whose
        // determinant 1 divides det of the input basis (12).
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![4, 6]]);
        let s = saturate(&b);
        assert_eq!(s.cols(), 2);
        let ds = lattice_index(&s);
        let db = lattice_index(&b);
        assert!((db % &ds).is_zero());
        assert_eq!(s, IntMatrix::identity(2));
    }

    #[test]
    fn saturate_is_idempotent_and_primitive() {
        let b = IntMatrix::from_rows(&[vec![2, 1], vec![4, 3], vec![6, 5]]);
        let s = saturate(&b);
        assert_eq!(saturate(&s), s);
        // torsion-free quotient: all invariant factors of the basis are 1
        let snf = smith_normal_form(&s);
        assert!(snf.factors.is_trivial());
    }

    #[test]
    fn membership_examples() {
        let m = IntMatrix::from_rows(&[
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, -2, 0],
            vec![0, 0, 0, -2],
        ]);
        assert!(member_mod_lattice(
            &[rat_int(0), rat_int(0), rat_int(0), rat_int(0)],
            &m
        ));
        assert!(!member_mod_lattice(
            &[rat(1, 2), rat_int(0), rat_int(0), rat_int(0)],
            &m
        ));
        let inv = IntMatrix::identity(2).scale(&BigInt::from(-2));
        assert!(member_mod_lattice(&[rat(1, 3), rat(1, 7)], &inv));
    }

    #[test]
    fn kernel_of_projection() {
        let m = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]);
        let k = kernel_lattice(&m);
        assert_eq!(k, IntMatrix::from_rows(&[vec![0], vec![0], vec![1]]));
        assert!(m.mul(&k).is_zero());
    }
}
