//! Hermite and Smith normal forms over the integers, with transformation
//! matrices.  Conventions: row-style HNF with positive pivots and entries
//! above a pivot reduced into [0, pivot); SNF diagonal nonnegative with each
//! entry dividing the next.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// A finite abelian group in invariant-factor form: each factor is >= 2 and
/// divides the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<BigInt>) -> Self {
        for w in invariant_factors.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "invariant factors must form a divisibility chain"
            );
        }
        assert!(invariant_factors.iter().all(|f| *f >= BigInt::from(2)));
        FiniteAbelianGroup { invariant_factors }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, f| acc * f)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Smallest e with e*x = 0 for all x (1 for the trivial group).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }
}

/// Row Hermite normal form: returns (H, U) with U unimodular and U*M = H.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);

    let row_op_sub = |h: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, q: &BigInt| {
        for c in 0..cols {
            let v = h.get(dst, c) - q * h.get(src, c);
            h.set(dst, c, v);
        }
        for c in 0..rows {
            let v = u.get(dst, c) - q * u.get(src, c);
            u.set(dst, c, v);
        }
    };
    let row_swap = |h: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for c in 0..cols {
            let x = h.get(a, c).clone();
            let y = h.get(b, c).clone();
            h.set(a, c, y);
            h.set(b, c, x);
        }
        for c in 0..rows {
            let x = u.get(a, c).clone();
            let y = u.get(b, c).clone();
            u.set(a, c, y);
            u.set(b, c, x);
        }
    };
    let row_negate = |h: &mut IntMatrix, u: &mut IntMatrix, r: usize| {
        for c in 0..cols {
            let v = -h.get(r, c);
            h.set(r, c, v);
        }
        for c in 0..rows {
            let v = -u.get(r, c);
            u.set(r, c, v);
        }
    };

    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // gcd out everything below the pivot in this column
        loop {
            let mut min_row = None;
            for r in pivot_row..rows {
                if !h.get(r, col).is_zero() {
                    let a = h.get(r, col).abs();
                    match &min_row {
                        None => min_row = Some((r, a)),
                        Some((_, b)) if a < *b => min_row = Some((r, a)),
                        _ => {}
                    }
                }
            }
            let Some((r, _)) = min_row else { break };
            row_swap(&mut h, &mut u, pivot_row, r);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if !h.get(r, col).is_zero() {
                    let q = h.get(r, col).div_floor(h.get(pivot_row, col));
                    row_op_sub(&mut h, &mut u, r, pivot_row, &q);
                    if !h.get(r, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            row_negate(&mut h, &mut u, pivot_row);
        }
        // reduce the entries above the pivot into [0, pivot)
        let p = h.get(pivot_row, col).clone();
        for r in 0..pivot_row {
            let q = h.get(r, col).div_floor(&p);
            if !q.is_zero() {
                row_op_sub(&mut h, &mut u, r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form data: U*M*V = D with U, V unimodular.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
    pub factors: FiniteAbelianGroup,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    fn row_sub(d: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
        for c in 0..d.cols() {
            let x = d.get(dst, c) - q * d.get(src, c);
            d.set(dst, c, x);
        }
        for c in 0..u.cols() {
            let x = u.get(dst, c) - q * u.get(src, c);
            u.set(dst, c, x);
        }
    }
    fn col_sub(d: &mut IntMatrix, v: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
        for r in 0..d.rows() {
            let x = d.get(r, dst) - q * d.get(r, src);
            d.set(r, dst, x);
        }
        for r in 0..v.rows() {
            let x = v.get(r, dst) - q * v.get(r, src);
            v.set(r, dst, x);
        }
    }
    fn row_swap(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..d.cols() {
            let x = d.get(a, c).clone();
            let y = d.get(b, c).clone();
            d.set(a, c, y);
            d.set(b, c, x);
        }
        for c in 0..u.cols() {
            let x = u.get(a, c).clone();
            let y = u.get(b, c).clone();
            u.set(a, c, y);
            u.set(b, c, x);
        }
    }
    fn col_swap(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..d.rows() {
            let x = d.get(r, a).clone();
            let y = d.get(r, b).clone();
            d.set(r, a, y);
            d.set(r, b, x);
        }
        for r in 0..v.rows() {
            let x = v.get(r, a).clone();
            let y = v.get(r, b).clone();
            v.set(r, a, y);
            v.set(r, b, x);
        }
    }

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // locate a smallest nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize, BigInt)> = None;
        for r in t..rows {
            for c in t..cols {
                if !d.get(r, c).is_zero() {
                    let a = d.get(r, c).abs();
                    match &pivot {
                        None => pivot = Some((r, c, a)),
                        Some((_, _, b)) if a < *b => pivot = Some((r, c, a)),
                        _ => {}
                    }
                }
            }
        }
        let Some((pr, pc, _)) = pivot else { break };
        row_swap(&mut d, &mut u, t, pr);
        col_swap(&mut d, &mut v, t, pc);

        // clear row and column t
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if !d.get(r, t).is_zero() {
                    let q = d.get(r, t).div_floor(d.get(t, t));
                    row_sub(&mut d, &mut u, r, t, &q);
                    if !d.get(r, t).is_zero() {
                        row_swap(&mut d, &mut u, t, r);
                        clean = false;
                    }
                }
            }
            for c in t + 1..cols {
                if !d.get(t, c).is_zero() {
                    let q = d.get(t, c).div_floor(d.get(t, t));
                    col_sub(&mut d, &mut v, c, t, &q);
                    if !d.get(t, c).is_zero() {
                        col_swap(&mut d, &mut v, t, c);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // enforce divisibility d_t | d_j for the rest of the block
        let mut redo = false;
        for r in t + 1..rows {
            for c in t + 1..cols {
                if !(d.get(r, c) % d.get(t, t)).is_zero() {
                    // add row r to row t and restart the pivot cleanup
                    let minus_one = -BigInt::one();
                    row_sub(&mut d, &mut u, t, r, &minus_one);
                    redo = true;
                    break;
                }
            }
            if redo {
                break;
            }
        }
        if redo {
            continue;
        }
        t += 1;
    }

    // make the diagonal nonnegative
    for i in 0..n {
        if d.get(i, i).is_negative() {
            for c in 0..cols {
                let x = -d.get(i, c);
                d.set(i, c, x);
            }
            for c in 0..u.cols() {
                let x = -u.get(i, c);
                u.set(i, c, x);
            }
        }
    }

    let rank = (0..n).take_while(|&i| !d.get(i, i).is_zero()).count();
    let factors = FiniteAbelianGroup::new(
        (0..rank)
            .map(|i| d.get(i, i).clone())
            .filter(|f| *f > BigInt::one())
            .collect(),
    );
    Snf { d, u, v, rank, factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_unimodular(m: &IntMatrix) {
        let d = m.det().unwrap();
        assert!(d == BigInt::one() || d == -BigInt::one(), "det = {d}");
    }

    #[test]
    fn hnf_identity_and_permutation() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(2));
        assert!(h.is_identity());
        assert!(u.is_identity());
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let (h, u) = hermite_normal_form(&m);
        assert!(h.is_identity());
        assert_eq!(u.mul(&m), h);
        assert_unimodular(&u);
    }

    #[test]
    fn hnf_reduction_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(u.mul(&m), h);
        assert_unimodular(&u);
    }

    #[test]
    fn snf_gcd_structure() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        assert_unimodular(&snf.u);
        assert_unimodular(&snf.v);
        assert_eq!(snf.factors.invariant_factors(), &[BigInt::from(6)]);
    }

    #[test]
    fn snf_negative_scalar_matrix() {
        let m = IntMatrix::identity(4).scale(&BigInt::from(-2));
        let snf = smith_normal_form(&m);
        for i in 0..4 {
            assert_eq!(*snf.d.get(i, i), BigInt::from(2));
        }
        assert_eq!(snf.factors.order(), BigInt::from(16));
        assert_eq!(snf.factors.exponent(), BigInt::from(2));
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::zero(3, 2);
        let snf = smith_normal_form(&m);
        assert!(snf.d.is_zero());
        assert_eq!(snf.rank, 0);
        assert!(snf.factors.is_trivial());
        assert_eq!(snf.factors.order(), BigInt::one());
    }
}
