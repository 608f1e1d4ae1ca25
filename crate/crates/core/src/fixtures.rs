//! Standard worked examples used across the test suites: the Kummer
//! involution, diagonal cyclic actions on cubes of CM elliptic curves, a
//! free hyperelliptic-type involution, and the symmetric-group action on
//! the kernel of the sum map of an abelian surface cube.
//!
//! All carry a period matrix, so both tiers are exercised.

use num_traits::Zero;

use crate::exactmath::cyclotomic::{CycloElem, CycloMatrix};
use crate::exactmath::matrix::IntMatrix;
use crate::exactmath::rat::{rat, Rat};
use crate::torus::{AffineAut, TorusAction};

/// Period matrix of a product of `n` copies of the elliptic curve with
/// period lattice Z + Z*tau, tau = zeta_conductor^power.
fn product_period(n: usize, conductor: u64, power: i64) -> CycloMatrix {
    let mut p = CycloMatrix::zero(n, 2 * n, conductor);
    for j in 0..n {
        p.set(j, 2 * j, CycloElem::one(conductor));
        p.set(j, 2 * j + 1, CycloElem::zeta_pow(conductor, power));
    }
    p
}

/// Block-diagonal matrix with `n` copies of a 2x2 integer block.
fn block_diag(n: usize, block: [[i64; 2]; 2]) -> IntMatrix {
    let mut m = IntMatrix::zero(2 * n, 2 * n);
    for j in 0..n {
        for r in 0..2 {
            for c in 0..2 {
                m.set(2 * j + r, 2 * j + c, block[r][c].into());
            }
        }
    }
    m
}

/// The Kummer surface involution: x -> -x on a two-dimensional torus.
pub fn kummer() -> TorusAction {
    let h = IntMatrix::identity(4).neg();
    TorusAction::new(
        "kummer",
        2,
        vec![AffineAut::linear_only(h)],
        Some(product_period(2, 4, 1)),
    )
    .unwrap()
}

/// Multiplication by a primitive cube root of unity, diagonally on the cube
/// of the Eisenstein elliptic curve.
pub fn eisenstein() -> TorusAction {
    let h = block_diag(3, [[0, -1], [1, -1]]);
    TorusAction::new(
        "eisenstein-z3",
        3,
        vec![AffineAut::linear_only(h)],
        Some(product_period(3, 3, 1)),
    )
    .unwrap()
}

/// Multiplication by i, diagonally on the cube of the Gauss elliptic curve.
pub fn gauss() -> TorusAction {
    let h = block_diag(3, [[0, -1], [1, 0]]);
    TorusAction::new(
        "gauss-z4",
        3,
        vec![AffineAut::linear_only(h)],
        Some(product_period(3, 4, 1)),
    )
    .unwrap()
}

/// A free involution of hyperelliptic type on a product of two elliptic
/// curves: -1 on the second factor combined with a half-period translation
/// on the first.
pub fn hyperelliptic() -> TorusAction {
    let h = IntMatrix::from_rows(&[
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, -1, 0],
        vec![0, 0, 0, -1],
    ]);
    let t = vec![rat(1, 2), Rat::zero(), Rat::zero(), Rat::zero()];
    TorusAction::new(
        "hyperelliptic",
        2,
        vec![AffineAut::new(h, t)],
        Some(product_period(2, 4, 1)),
    )
    .unwrap()
}

/// S3 permuting the factors of B^3 restricted to the kernel of the sum map,
/// B the square of the Gauss elliptic curve.  In coordinates (x, y) on
/// B^2 = ker(sum), the 3-cycle acts by (x, y) -> (-x-y, x) and a
/// transposition by (x, y) -> (y, x); each End(B) entry is a 4x4 scalar
/// block on the lattice.
pub fn beauville_s3() -> TorusAction {
    let scalar = |v: i64| -> IntMatrix { IntMatrix::identity(4).scale(&v.into()) };
    let from_blocks = |b: [[i64; 2]; 2]| -> IntMatrix {
        let mut m = IntMatrix::zero(8, 8);
        for br in 0..2 {
            for bc in 0..2 {
                let blk = scalar(b[br][bc]);
                for r in 0..4 {
                    for c in 0..4 {
                        m.set(4 * br + r, 4 * bc + c, blk.get(r, c).clone());
                    }
                }
            }
        }
        m
    };
    let three_cycle = from_blocks([[-1, -1], [1, 0]]);
    let transposition = from_blocks([[0, 1], [1, 0]]);
    TorusAction::new(
        "beauville-s3",
        4,
        vec![
            AffineAut::linear_only(three_cycle),
            AffineAut::linear_only(transposition),
        ],
        Some(product_period(4, 4, 1)),
    )
    .unwrap()
}

/// A Klein four-group on a product of two elliptic curves containing a
/// quasi-reflection: the sign involution, composed with a free half-period
/// shift on the first factor.  The product of the two generators fixes a
/// curve of codimension one, so the quotient is uniruled even though the
/// subgroup generated by elements with fixpoints is everything.
pub fn quasi_reflection() -> TorusAction {
    let minus = IntMatrix::identity(4).neg();
    let mut split = IntMatrix::identity(4);
    split.set(2, 2, (-1).into());
    split.set(3, 3, (-1).into());
    let shift = vec![rat(1, 2), Rat::zero(), Rat::zero(), Rat::zero()];
    TorusAction::new(
        "quasi-reflection",
        2,
        vec![
            AffineAut::linear_only(minus),
            AffineAut::new(split, shift),
        ],
        Some(product_period(2, 4, 1)),
    )
    .unwrap()
}

/// The Kummer involution on the first two complex dimensions times a
/// trivial action on an elliptic curve; base of the Albanese fibration is
/// the untouched elliptic curve.
pub fn kummer_times_elliptic() -> TorusAction {
    let mut h = IntMatrix::identity(6);
    for i in 0..4 {
        h.set(i, i, (-1).into());
    }
    TorusAction::new(
        "kummer-x-elliptic",
        3,
        vec![AffineAut::linear_only(h)],
        Some(product_period(3, 4, 1)),
    )
    .unwrap()
}

/// Every fixture, paired with its name.
pub fn all() -> Vec<TorusAction> {
    vec![
        kummer(),
        eisenstein(),
        gauss(),
        hyperelliptic(),
        beauville_s3(),
        quasi_reflection(),
        kummer_times_elliptic(),
    ]
}
