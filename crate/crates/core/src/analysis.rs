//! End-to-end pipeline: enumerate the group, normalise translations,
//! classify, compute the lattice-tier invariants and, when a period matrix
//! is available, the analytic tier (tangent weights, canonicity, Hodge
//! numbers).

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactmath::matrix::IntMatrix;
use crate::invariants::{
    albanese_decomposition, hodge_invariants, q_prime_and_dims, AlbaneseDecomposition,
    InvariantReport, InvariantsError,
};
use crate::singular::{holomorphic_rep, reid_tai, CanonicityReport, SingularError};
use crate::torus::{
    classify, enumerate_group, fix_locus, normalize_translations, Classification, FixLocusInfo,
    GroupTable, TorusAction, TorusError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Lattice,
    Analytic,
}

/// Per-element summary assembled for reports.
#[derive(Debug, Clone)]
pub struct ElementSummary {
    pub order: u64,
    pub fix: FixLocusInfo,
    /// Singularity order and weights, analytic tier only.
    pub weights: Option<(u64, Vec<u64>)>,
    pub age: Option<crate::exactmath::rat::Rat>,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub name: String,
    pub n: usize,
    pub rank: usize,
    pub tier: Tier,
    pub group_order: usize,
    /// Index of the lattice enlargement that removed pure translations
    /// (1 when none were present).
    pub translation_index: usize,
    pub basis_change: IntMatrix,
    pub table: GroupTable,
    pub classification: Classification,
    pub invariants: InvariantReport,
    pub elements: Vec<ElementSummary>,
    pub canonicity: Option<CanonicityReport>,
    pub albanese: AlbaneseDecomposition,
}

pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Run the whole pipeline.  `tier` forces the lattice tier even when a
/// period matrix is present; requesting the analytic tier without a period
/// is an error.
pub fn analyze(
    action: &TorusAction,
    cap: usize,
    tier: Option<Tier>,
) -> Result<Analysis, AnalysisError> {
    let raw_table = enumerate_group(action, cap)?;
    let raw_order = raw_table.order();
    let (table, basis_change) = normalize_translations(&raw_table);
    let translation_index = raw_order / table.order();

    // carry the period through the basis change: columns transform by the
    // inverse of the change matrix
    let tier = match (tier, &action.period) {
        (Some(Tier::Analytic), None) => return Err(SingularError::NoPeriod.into()),
        (Some(t), _) => t,
        (None, Some(_)) => Tier::Analytic,
        (None, None) => Tier::Lattice,
    };
    let period = match (tier, &action.period) {
        (Tier::Analytic, Some(p)) => {
            let inv = basis_change
                .to_rat()
                .inverse()
                .expect("basis change is invertible");
            Some(p.mul_rat_matrix(&inv))
        }
        _ => None,
    };

    let classification = classify(&table);
    let invariants_base = q_prime_and_dims(&table, &classification)?;
    let albanese = albanese_decomposition(&table, &classification)?;

    let mut elements: Vec<ElementSummary> = table
        .elements()
        .iter()
        .enumerate()
        .map(|(i, el)| ElementSummary {
            order: table.element_order(i),
            fix: fix_locus(el),
            weights: None,
            age: None,
        })
        .collect();

    let mut invariants = invariants_base;
    let mut canonicity = None;
    if let Some(period) = period {
        let analytic_action = TorusAction::new(
            action.name.clone(),
            action.half_dim,
            table.elements().to_vec(),
            Some(period),
        )?;
        let rep = holomorphic_rep(&analytic_action, &table)?;
        let report = reid_tai(&table, &rep)?;
        for (i, summary) in elements.iter_mut().enumerate() {
            let sing = &report.types[i];
            summary.weights = Some((sing.order, sing.weights.clone()));
            summary.age = Some(sing.age.clone());
        }
        let (hodge, euler) = hodge_invariants(&table, &rep)?;
        invariants.hodge = Some(hodge);
        invariants.euler_char = Some(euler);
        canonicity = Some(report);
    }

    Ok(Analysis {
        name: action.name.clone(),
        n: action.half_dim,
        rank: action.rank(),
        tier,
        group_order: table.order(),
        translation_index,
        basis_change,
        table,
        classification,
        invariants,
        elements,
        canonicity,
        albanese,
    })
}

/// Largest isolated fixpoint count over the table, a convenient headline
/// number for reports (e.g. 16 for the Kummer involution).
pub fn max_isolated_fixpoints(analysis: &Analysis) -> Option<BigInt> {
    analysis
        .elements
        .iter()
        .filter_map(|e| e.fix.isolated_count.clone())
        .max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn kummer_full_analysis() {
        let a = analyze(&fixtures::kummer(), DEFAULT_GROUP_CAP, None).unwrap();
        assert_eq!(a.tier, Tier::Analytic);
        assert_eq!(a.group_order, 2);
        assert_eq!(a.invariants.q_prime, 0);
        assert_eq!(a.invariants.kappa1_star, -2);
        assert_eq!(
            max_isolated_fixpoints(&a),
            Some(num_bigint::BigInt::from(16))
        );
        let canon = a.canonicity.unwrap();
        assert!(canon.canonical);
        assert_eq!(
            a.invariants.hodge.unwrap(),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
    }

    #[test]
    fn lattice_tier_is_forced() {
        let a = analyze(&fixtures::kummer(), DEFAULT_GROUP_CAP, Some(Tier::Lattice)).unwrap();
        assert_eq!(a.tier, Tier::Lattice);
        assert!(a.canonicity.is_none());
        assert!(a.invariants.hodge.is_none());
    }

    #[test]
    fn analytic_without_period_fails() {
        let mut action = fixtures::kummer();
        action.period = None;
        assert!(analyze(&action, DEFAULT_GROUP_CAP, Some(Tier::Analytic)).is_err());
        let a = analyze(&action, DEFAULT_GROUP_CAP, None).unwrap();
        assert_eq!(a.tier, Tier::Lattice);
    }

    #[test]
    fn normalization_is_reported() {
        use crate::exactmath::rat::{rat, rat_int};
        let h = IntMatrix::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
        ]);
        let g = crate::torus::AffineAut::new(h, vec![rat(1, 4), rat_int(0), rat_int(0), rat_int(0)]);
        let action = TorusAction::new("quarter", 2, vec![g], None).unwrap();
        let a = analyze(&action, DEFAULT_GROUP_CAP, None).unwrap();
        assert_eq!(a.translation_index, 2);
        assert_eq!(a.group_order, 2);
        assert!(!a.basis_change.is_identity());
    }

    #[test]
    fn normalization_transforms_the_period() {
        use crate::exactmath::rat::{rat, rat_int};
        // the square of the generator is a pure half-period translation;
        // after enlarging the lattice the survivor acts freely, so this is
        // a bielliptic-type quotient seen through a basis change
        let h = IntMatrix::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
        ]);
        let g = crate::torus::AffineAut::new(h, vec![rat(1, 4), rat_int(0), rat_int(0), rat_int(0)]);
        let action = TorusAction::new(
            "quarter-analytic",
            2,
            vec![g],
            crate::fixtures::kummer().period,
        )
        .unwrap();
        let a = analyze(&action, DEFAULT_GROUP_CAP, None).unwrap();
        assert_eq!(a.tier, Tier::Analytic);
        assert_eq!(a.translation_index, 2);
        assert_eq!(a.group_order, 2);
        assert!(a.invariants.etale);
        assert_eq!(a.invariants.q_prime, 2);
        // bielliptic invariants: h^{0,1} = 1, h^{0,2} = 0
        assert_eq!(
            a.invariants.hodge.unwrap(),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)]
        );
    }

    #[test]
    fn quasi_reflection_analysis() {
        let a = analyze(&fixtures::quasi_reflection(), DEFAULT_GROUP_CAP, None).unwrap();
        assert_eq!(a.group_order, 4);
        // two of the three involutions have fixpoints and together they
        // generate everything
        assert_eq!(a.classification.f.len(), 3);
        assert!(a.classification.g_equals_fprime);
        assert_eq!(a.invariants.q_prime, 0);
        assert_eq!(a.invariants.kappa1_star, -2);
        // the codimension-one fixed locus makes the quotient uniruled
        let canon = a.canonicity.as_ref().unwrap();
        assert!(!canon.canonical);
        assert!(canon.uniruled);
        assert_eq!(canon.quasi_reflections.len(), 1);
        assert_eq!(canon.min_age_witness.as_ref().unwrap().1, crate::exactmath::rat::rat(1, 2));
        assert_eq!(
            a.invariants.hodge.as_ref().unwrap(),
            &vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)]
        );
        assert_eq!(a.invariants.euler_char.as_ref().unwrap(), &BigInt::from(1));
        // finite fundamental group, but no common fixed point, so no
        // exponent bound is claimed
        assert!(a.invariants.pi1.finite);
        assert_eq!(a.invariants.pi1.abelian_exponent_bound, None);
    }
}
