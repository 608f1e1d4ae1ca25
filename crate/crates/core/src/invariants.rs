//! Invariants of the quotient: the maximal etale irregularity q', the
//! cotangent dimensions (both equal to q' - n), the fundamental-group
//! report, invariant Hodge numbers, and the Albanese fibration data.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::lattice::{member_mod_lattice, SublatticeBasis};
use crate::exactmath::matrix::IntMatrix;
use crate::exactmath::normal_form::smith_normal_form;
use crate::exactmath::rat::{mod_one, Rat};
use crate::singular::{tangent_weights, HolomorphicRep, SingularError};
use crate::torus::{classify, normalize_translations, AffineAut, Classification, GroupTable, TorusError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("the span generated by the subtori is not preserved by the group")]
    InvarianceViolation,
    #[error("a character average is not a nonnegative integer; inconsistent input")]
    NonIntegerDimension,
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

/// Fundamental-group data of the quotient: the image of the lattice group
/// has rank 2q'; the whole group is finite exactly when q' = 0, and when
/// the action has an isolated common fixed point it is abelian of exponent
/// dividing the group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Report {
    pub image_rank: usize,
    pub finite: bool,
    pub abelian_exponent_bound: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub n: usize,
    pub q_prime: usize,
    pub kappa1_star: i64,
    pub nu1_star: i64,
    /// The subgroup generated by elements with fixpoints is trivial, so the
    /// quotient map is a covering.
    pub etale: bool,
    /// True when the invariants were computed on the proper subgroup F'
    /// (the outer quotient being etale).
    pub reduced_to_f_prime: bool,
    pub pi1: Pi1Report,
    pub hodge: Option<Vec<BigInt>>,
    pub euler_char: Option<BigInt>,
}

/// The lattice of the subtorus generated by the images of (g - 1) over the
/// primary-order elements with fixpoints, saturated; it is checked to be
/// preserved by the whole group.
pub fn c_big(
    table: &GroupTable,
    cls: &Classification,
) -> Result<SublatticeBasis, InvariantsError> {
    let rank = table.rank();
    let mut cols = IntMatrix::zero(rank, 0);
    for &i in &cls.f_star {
        let hm1 = table.element(i).linear().sub(&IntMatrix::identity(rank));
        cols = cols.hcat(&hm1);
    }
    let basis = SublatticeBasis::from_columns(&cols);
    if basis.rank > 0 {
        let s_rank = basis.rank;
        for el in table.elements() {
            let mapped = el.linear().mul(&basis.basis);
            if basis.basis.hcat(&mapped).rank() != s_rank {
                return Err(InvariantsError::InvarianceViolation);
            }
        }
    }
    Ok(basis)
}

/// q' and the cotangent dimensions.  q' is computed from F' even when the
/// group is larger; the outer quotient is etale and does not change any of
/// the invariants.
pub fn q_prime_and_dims(
    table: &GroupTable,
    cls: &Classification,
) -> Result<InvariantReport, InvariantsError> {
    let n = table.rank() / 2;
    let c = c_big(table, cls)?;
    debug_assert!(c.rank % 2 == 0);
    let q_prime = n - c.rank / 2;
    let kappa = q_prime as i64 - n as i64;
    let pi1 = pi1_report_with_q(table, q_prime);
    Ok(InvariantReport {
        n,
        q_prime,
        kappa1_star: kappa,
        nu1_star: kappa,
        etale: cls.f_prime_is_trivial(),
        reduced_to_f_prime: !cls.g_equals_fprime,
        pi1,
        hodge: None,
        euler_char: None,
    })
}

pub fn pi1_report(table: &GroupTable, cls: &Classification) -> Result<Pi1Report, InvariantsError> {
    let n = table.rank() / 2;
    let c = c_big(table, cls)?;
    Ok(pi1_report_with_q(table, n - c.rank / 2))
}

fn pi1_report_with_q(table: &GroupTable, q_prime: usize) -> Pi1Report {
    let rank = table.rank();
    // the bound applies when the whole group fixes one point and the joint
    // fixed subspace is zero
    let mut stacked = IntMatrix::zero(0, rank);
    let mut neg_t: Vec<Rat> = Vec::new();
    for el in table.elements() {
        let hm1 = el.linear().sub(&IntMatrix::identity(rank));
        stacked = stacked.vcat(&hm1);
        neg_t.extend(el.translation().iter().map(|t| -t.clone()));
    }
    let isolated_common_fixpoint =
        stacked.rank() == rank && member_mod_lattice(&neg_t, &stacked);
    Pi1Report {
        image_rank: 2 * q_prime,
        finite: q_prime == 0,
        abelian_exponent_bound: isolated_common_fixpoint.then_some(table.order() as u64),
    }
}

/// Invariant Hodge numbers h^{0,p} for p = 0..n and the Euler
/// characteristic of the structure sheaf: character averages of the
/// exterior powers of the conjugate tangent representation, computed
/// exactly in a cyclotomic field.
pub fn hodge_invariants(
    table: &GroupTable,
    rep: &HolomorphicRep,
) -> Result<(Vec<BigInt>, BigInt), InvariantsError> {
    let n = rep.matrix(0).rows();
    let order = table.order();
    let mut sums: Vec<crate::exactmath::cyclotomic::CycloElem> = Vec::new();
    for i in 0..order {
        // char poly of the conjugate matrix: conjugate the coefficients
        let poly = rep.matrix(i).char_poly();
        let conj: Vec<_> = poly.iter().map(|c| c.conjugate()).collect();
        // e_p of the eigenvalues is (-1)^p times the coefficient of x^{n-p}
        for p in 0..=n {
            let mut e_p = conj[n - p].clone();
            if p % 2 == 1 {
                e_p = e_p.neg();
            }
            if sums.len() <= p {
                sums.push(e_p);
            } else {
                sums[p] = sums[p].add(&e_p);
            }
        }
    }
    let scale = Rat::new(BigInt::one(), BigInt::from(order as i64));
    let mut hodge = Vec::with_capacity(n + 1);
    for s in &sums {
        let avg = s.scale(&scale);
        let value = avg.to_rat().ok_or(InvariantsError::NonIntegerDimension)?;
        if !value.denom().is_one() || value.numer().is_negative() {
            return Err(InvariantsError::NonIntegerDimension);
        }
        hodge.push(value.numer().clone());
    }
    let mut euler = BigInt::zero();
    for (p, h) in hodge.iter().enumerate() {
        if p % 2 == 0 {
            euler += h;
        } else {
            euler -= h;
        }
    }
    Ok((hodge, euler))
}

/// Independent Euler-characteristic formula: the average over the group of
/// the product of (1 - conjugate eigenvalue), with eigenvalues taken from
/// the weight data rather than characteristic-polynomial coefficients.
pub fn euler_char_direct(
    table: &GroupTable,
    rep: &HolomorphicRep,
) -> Result<Rat, InvariantsError> {
    use crate::exactmath::cyclotomic::CycloElem;
    let mut sum = CycloElem::zero(1);
    for (i, el) in table.elements().iter().enumerate() {
        let sing = tangent_weights(el, rep.matrix(i))?;
        let n = sing.order;
        let mut prod = CycloElem::one(n);
        for &a in &sing.weights {
            let conj = CycloElem::zeta_pow(n, -(a as i64));
            prod = prod.mul(&CycloElem::one(n).sub(&conj));
        }
        sum = sum.add(&prod);
    }
    let avg = sum.scale(&Rat::new(BigInt::one(), BigInt::from(table.order() as i64)));
    avg.to_rat().ok_or(InvariantsError::NonIntegerDimension)
}

/// The Albanese fibration of the quotient: base torus of dimension q'
/// (the quotient lattice), and the induced action on the fibre subtorus,
/// whose own q' vanishes.
#[derive(Debug, Clone)]
pub struct AlbaneseDecomposition {
    /// Order of the etale outer quotient G/F' (1 when G = F').
    pub outer_quotient_order: usize,
    pub base_half_dim: usize,
    /// Rows express the quotient-lattice coordinates of a lattice vector.
    pub base_projection: IntMatrix,
    /// Basis of the fibre subtorus lattice inside the ambient lattice.
    pub fiber_basis: IntMatrix,
    pub fiber_table: GroupTable,
    pub fiber_report: InvariantReport,
}

pub fn albanese_decomposition(
    table: &GroupTable,
    cls: &Classification,
) -> Result<AlbaneseDecomposition, InvariantsError> {
    let rank = table.rank();
    // reduce to F' when the outer quotient is nontrivial
    let (work_table, work_cls, outer) = if cls.g_equals_fprime {
        (table.clone(), cls.clone(), 1usize)
    } else {
        let elements: Vec<AffineAut> = cls
            .f_prime
            .iter()
            .map(|&i| table.element(i).clone())
            .collect();
        let sub = GroupTable::from_elements(rank, elements)?;
        let sub_cls = classify(&sub);
        (sub, sub_cls, cls.quotient_order)
    };

    let c = c_big(&work_table, &work_cls)?;
    let r = c.rank;
    let snf = smith_normal_form(&c.basis);
    debug_assert_eq!(snf.rank, r);
    debug_assert!(snf.factors.is_trivial(), "saturated basis is primitive");

    // base projection: rows of U past the rank give coordinates on the
    // quotient lattice
    let mut base_projection = IntMatrix::zero(rank - r, rank);
    for i in 0..rank - r {
        for j in 0..rank {
            base_projection.set(i, j, snf.u.get(r + i, j).clone());
        }
    }

    // restricted action on the fibre
    let s_rat = c.basis.to_rat();
    let u_rat = snf.u.to_rat();
    let mut fiber_elements: Vec<AffineAut> = Vec::new();
    for el in work_table.elements() {
        // linear part: solve S * hC = h * S, integral by saturation
        let hs = el.linear().mul(&c.basis).to_rat();
        let mut h_c = IntMatrix::zero(r, r);
        for col in 0..r {
            let rhs: Vec<Rat> = (0..rank).map(|row| hs.get(row, col).clone()).collect();
            let sol = s_rat.solve(&rhs).expect("fibre lattice is group-stable");
            for (row, v) in sol.iter().enumerate() {
                assert!(v.denom().is_one(), "restricted action must be integral");
                h_c.set(row, col, v.numer().clone());
            }
        }
        // translation: write t = S y (mod the ambient lattice)
        let u_t = u_rat.mul(&crate::exactmath::matrix::RatMatrix::new(
            rank,
            1,
            el.translation().to_vec(),
        ));
        let mut y = vec![Rat::zero(); r];
        let mut v_coords = vec![Rat::zero(); c.basis.cols().max(r)];
        for i in 0..r {
            v_coords[i] = u_t.get(i, 0).clone();
        }
        for i in r..rank {
            assert!(
                u_t.get(i, 0).denom().is_one(),
                "translation of a fibre-preserving element must project to zero"
            );
        }
        let v_rat = snf.v.to_rat();
        for row in 0..r {
            let mut acc = Rat::zero();
            for k in 0..r {
                acc += v_rat.get(row, k) * &v_coords[k];
            }
            y[row] = mod_one(&acc);
        }
        fiber_elements.push(AffineAut::new(h_c, y));
    }
    let mut dedup: Vec<AffineAut> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for e in fiber_elements {
        if seen.insert(e.clone()) {
            dedup.push(e);
        }
    }
    let fiber_table_raw = GroupTable::from_elements(r, dedup)?;
    let (fiber_table, _) = normalize_translations(&fiber_table_raw);
    let fiber_cls = classify(&fiber_table);
    let fiber_report = q_prime_and_dims(&fiber_table, &fiber_cls)?;

    Ok(AlbaneseDecomposition {
        outer_quotient_order: outer,
        base_half_dim: (rank - r) / 2,
        base_projection,
        fiber_basis: c.basis,
        fiber_table,
        fiber_report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::singular::holomorphic_rep;
    use crate::torus::enumerate_group;

    fn setup(action: &crate::torus::TorusAction) -> (GroupTable, Classification) {
        let table = enumerate_group(action, 1000).unwrap();
        let (table, _) = normalize_translations(&table);
        let cls = classify(&table);
        (table, cls)
    }

    #[test]
    fn c_big_of_fixtures() {
        let (table, cls) = setup(&fixtures::kummer());
        let c = c_big(&table, &cls).unwrap();
        assert_eq!(c.rank, 4);

        let (table, cls) = setup(&fixtures::hyperelliptic());
        let c = c_big(&table, &cls).unwrap();
        assert_eq!(c.rank, 0);

        let (table, cls) = setup(&fixtures::beauville_s3());
        let c = c_big(&table, &cls).unwrap();
        assert_eq!(c.rank, 8);
    }

    #[test]
    fn q_prime_of_fixtures() {
        let (table, cls) = setup(&fixtures::kummer());
        let rep = q_prime_and_dims(&table, &cls).unwrap();
        assert_eq!(rep.q_prime, 0);
        assert_eq!(rep.kappa1_star, -2);
        assert_eq!(rep.nu1_star, -2);
        assert!(!rep.etale);

        let (table, cls) = setup(&fixtures::eisenstein());
        let rep = q_prime_and_dims(&table, &cls).unwrap();
        assert_eq!(rep.q_prime, 0);
        assert_eq!(rep.kappa1_star, -3);

        let (table, cls) = setup(&fixtures::hyperelliptic());
        let rep = q_prime_and_dims(&table, &cls).unwrap();
        assert_eq!(rep.q_prime, 2);
        assert_eq!(rep.kappa1_star, 0);
        assert!(rep.etale);
        assert!(rep.reduced_to_f_prime);
    }

    #[test]
    fn pi1_of_fixtures() {
        let (table, cls) = setup(&fixtures::kummer());
        let pi1 = pi1_report(&table, &cls).unwrap();
        assert_eq!(pi1.image_rank, 0);
        assert!(pi1.finite);
        assert_eq!(pi1.abelian_exponent_bound, Some(2));

        let (table, cls) = setup(&fixtures::eisenstein());
        let pi1 = pi1_report(&table, &cls).unwrap();
        assert!(pi1.finite);
        assert_eq!(pi1.abelian_exponent_bound, Some(3));

        let (table, cls) = setup(&fixtures::hyperelliptic());
        let pi1 = pi1_report(&table, &cls).unwrap();
        assert_eq!(pi1.image_rank, 4);
        assert!(!pi1.finite);
        assert_eq!(pi1.abelian_exponent_bound, None);
    }

    #[test]
    fn hodge_numbers_of_fixtures() {
        let action = fixtures::kummer();
        let table = enumerate_group(&action, 100).unwrap();
        let rep = holomorphic_rep(&action, &table).unwrap();
        let (hodge, euler) = hodge_invariants(&table, &rep).unwrap();
        assert_eq!(hodge, vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]);
        assert_eq!(euler, BigInt::from(2));

        let action = fixtures::beauville_s3();
        let table = enumerate_group(&action, 100).unwrap();
        let rep = holomorphic_rep(&action, &table).unwrap();
        let (hodge, _) = hodge_invariants(&table, &rep).unwrap();
        assert_eq!(hodge[1], BigInt::zero());
        assert_eq!(hodge[2], BigInt::one());

        // trivial group: binomial coefficients
        let trivial = crate::torus::TorusAction::new(
            "trivial",
            2,
            vec![],
            fixtures::kummer().period,
        )
        .unwrap();
        let table = enumerate_group(&trivial, 10).unwrap();
        let rep = holomorphic_rep(&trivial, &table).unwrap();
        let (hodge, _) = hodge_invariants(&table, &rep).unwrap();
        assert_eq!(hodge, vec![BigInt::from(1), BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn euler_formulas_agree() {
        for action in fixtures::all() {
            let table = enumerate_group(&action, 100).unwrap();
            let rep = holomorphic_rep(&action, &table).unwrap();
            let (_, euler) = hodge_invariants(&table, &rep).unwrap();
            let direct = euler_char_direct(&table, &rep).unwrap();
            assert_eq!(Rat::from_integer(euler), direct, "{}", action.name);
        }
    }

    #[test]
    fn albanese_of_product_fixture() {
        let (table, cls) = setup(&fixtures::kummer_times_elliptic());
        let dec = albanese_decomposition(&table, &cls).unwrap();
        assert_eq!(dec.base_half_dim, 1);
        assert_eq!(dec.fiber_table.rank(), 4);
        assert_eq!(dec.fiber_report.q_prime, 0);
        assert_eq!(dec.outer_quotient_order, 1);
    }

    #[test]
    fn albanese_degenerate_cases() {
        // base is a point for the Kummer fixture
        let (table, cls) = setup(&fixtures::kummer());
        let dec = albanese_decomposition(&table, &cls).unwrap();
        assert_eq!(dec.base_half_dim, 0);
        assert_eq!(dec.fiber_report.q_prime, 0);

        // free action: applied to the trivial F', the base is everything
        let (table, cls) = setup(&fixtures::hyperelliptic());
        let dec = albanese_decomposition(&table, &cls).unwrap();
        assert_eq!(dec.outer_quotient_order, 2);
        assert_eq!(dec.base_half_dim, 2);
        assert_eq!(dec.fiber_table.order(), 1);
        assert_eq!(dec.fiber_report.q_prime, 0);
    }

    #[test]
    fn fiber_q_prime_always_vanishes() {
        for action in fixtures::all() {
            let (table, cls) = setup(&action);
            let dec = albanese_decomposition(&table, &cls).unwrap();
            assert_eq!(dec.fiber_report.q_prime, 0, "{}", action.name);
        }
    }
}
