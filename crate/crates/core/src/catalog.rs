//! Closed-form cotangent dimensions: submanifolds of abelian varieties,
//! complete intersections in projective space, and the decision tree for
//! surfaces not of general type, together with the degree-growth estimator
//! used in the isotrivial elliptic case and the two general inference
//! rules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid dimensions: require 1 <= dim < ambient, got dim {dim}, ambient {ambient}")]
    InvalidDims { dim: u32, ambient: u32 },
    #[error("general-type surfaces are outside the catalog: no closed form is available")]
    GeneralType,
    #[error("inconsistent surface description: {0}")]
    InvalidSurface(String),
}

/// An extended integer: the value of a Kodaira-type dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtInt {
    NegInfinity,
    Finite(i64),
}

impl std::fmt::Display for ExtInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtInt::NegInfinity => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A cotangent-dimension value together with the bundle rank, so the
/// starred normalisation (-infinity replaced by -rank) and the unstarred
/// one interconvert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimValue {
    rank: u32,
    value: ExtInt,
}

impl DimValue {
    pub fn from_unstarred(rank: u32, value: ExtInt) -> Self {
        if let ExtInt::Finite(v) = value {
            assert!(v >= -(rank as i64 - 1), "unstarred value below -(rank-1)");
        }
        DimValue { rank, value }
    }

    pub fn from_starred(rank: u32, starred: i64) -> Self {
        assert!(starred >= -(rank as i64));
        let value = if starred == -(rank as i64) {
            ExtInt::NegInfinity
        } else {
            ExtInt::Finite(starred)
        };
        DimValue { rank, value }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn unstarred(&self) -> ExtInt {
        self.value
    }

    pub fn starred(&self) -> i64 {
        match self.value {
            ExtInt::NegInfinity => -(self.rank as i64),
            ExtInt::Finite(v) => v,
        }
    }
}

/// Cotangent dimensions of a submanifold with ample normal bundle in an
/// abelian variety: both equal min(dim, codim).
pub fn abelian_submanifold(dim: u32, ambient: u32) -> Result<(i64, i64), CatalogError> {
    if dim < 1 || dim >= ambient {
        return Err(CatalogError::InvalidDims { dim, ambient });
    }
    let v = dim.min(ambient - dim) as i64;
    Ok((v, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiVerdict {
    /// Both dimensions are -infinity.
    NotPseudoeffective,
    /// The low-codimension regime is not covered by the closed form.
    OutOfScope,
}

/// Complete intersections in projective space: when 2*dim > ambient the
/// cotangent bundle is not pseudoeffective and both dimensions are
/// -infinity; otherwise the closed form does not apply.
pub fn complete_intersection(dim: u32, ambient: u32) -> Result<CiVerdict, CatalogError> {
    if dim < 1 || dim >= ambient {
        return Err(CatalogError::InvalidDims { dim, ambient });
    }
    if 2 * dim > ambient {
        Ok(CiVerdict::NotPseudoeffective)
    } else {
        Ok(CiVerdict::OutOfScope)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKodaira {
    MinusInfinity,
    Zero,
    One,
}

/// Input data for the surface decision tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub kappa: SurfaceKodaira,
    /// Genus of the base curve (kappa = 1) or of the second ruling factor
    /// (kappa = -infinity).
    pub genus: u32,
    pub isotrivial: bool,
    pub has_singular_fiber: bool,
    /// Multiplicities of multiple fibres; empty when there are none.
    pub multiple_fibers: Vec<u32>,
    /// For kappa = 0: the maximal etale irregularity of the surface
    /// (2 for tori and bielliptic surfaces, 0 for K3 and Enriques).
    pub q_prime_hint: Option<u32>,
}

/// The second cotangent dimension may be open: some non-isotrivial
/// elliptic cases carry only a conjectured value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nu1Verdict {
    Known(DimValue),
    Open { conjectured: DimValue },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub kappa1: DimValue,
    pub nu1: Nu1Verdict,
    pub rationale: String,
}

/// Either a full report, or a marker that the input needs an etale
/// reduction this tool does not perform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceOutcome {
    Report(SurfaceReport),
    NeedsEtaleReduction,
}

const SURFACE_RANK: u32 = 2;

fn both_known(starred: i64, rationale: &str) -> SurfaceOutcome {
    let v = DimValue::from_starred(SURFACE_RANK, starred);
    SurfaceOutcome::Report(SurfaceReport {
        kappa1: v,
        nu1: Nu1Verdict::Known(v),
        rationale: rationale.to_string(),
    })
}

/// The decision tree for smooth compact surfaces not of general type.
pub fn surface_invariants(spec: &SurfaceSpec) -> Result<SurfaceOutcome, CatalogError> {
    if !spec.multiple_fibers.is_empty() {
        if spec.kappa != SurfaceKodaira::One {
            return Err(CatalogError::InvalidSurface(
                "multiple fibres only make sense for an elliptic fibration".into(),
            ));
        }
        // a base P^1 with exactly two multiple fibres of different
        // multiplicities is killed by a cyclic base change; anything else
        // needs an etale reduction first
        if spec.genus == 0
            && spec.multiple_fibers.len() == 2
            && spec.multiple_fibers[0] != spec.multiple_fibers[1]
        {
            let mut reduced = spec.clone();
            reduced.multiple_fibers.clear();
            return surface_invariants(&reduced);
        }
        return Ok(SurfaceOutcome::NeedsEtaleReduction);
    }

    match spec.kappa {
        SurfaceKodaira::MinusInfinity => {
            // birationally P^1 x C: the dimensions add over the factors
            let g = spec.genus as i64;
            let starred = -1 + 1.min(g - 1);
            Ok(both_known(starred, "ruled: product with a rational curve"))
        }
        SurfaceKodaira::Zero => {
            let q = spec.q_prime_hint.ok_or_else(|| {
                CatalogError::InvalidSurface(
                    "kappa = 0 needs q_prime_hint (2: torus/bielliptic, 0: K3/Enriques)".into(),
                )
            })?;
            if q != 0 && q != 2 {
                return Err(CatalogError::InvalidSurface(
                    "q_prime_hint must be 0 or 2 for a surface".into(),
                ));
            }
            Ok(both_known(
                q as i64 - 2,
                "vanishing first Chern class: value is q' - 2",
            ))
        }
        SurfaceKodaira::One => {
            if spec.isotrivial {
                if spec.has_singular_fiber {
                    // chart analysis at a singular fibre
                    let value = match spec.genus {
                        0 => ExtInt::NegInfinity,
                        1 => ExtInt::Finite(-1),
                        _ => ExtInt::Finite(1),
                    };
                    let v = DimValue::from_unstarred(SURFACE_RANK, value);
                    Ok(SurfaceOutcome::Report(SurfaceReport {
                        kappa1: v,
                        nu1: Nu1Verdict::Known(v),
                        rationale: "isotrivial elliptic with a singular fibre: degree bound at the fibre".into(),
                    }))
                } else {
                    // an etale cover is a product (elliptic curve) x (curve
                    // of general type); kappa_1 = 1 = dim - 1 forces nu_1
                    Ok(both_known(
                        1,
                        "isotrivial elliptic without singular fibres: etale product",
                    ))
                }
            } else {
                // non-isotrivial: kappa_1^* = -2, -1, 0 for g = 0, 1, >= 2
                let starred = match spec.genus {
                    0 => -2,
                    1 => -1,
                    _ => 0,
                };
                let kappa1 = DimValue::from_starred(SURFACE_RANK, starred);
                let nu1 = if spec.genus == 0 {
                    Nu1Verdict::Known(kappa1)
                } else {
                    Nu1Verdict::Open { conjectured: kappa1 }
                };
                Ok(SurfaceOutcome::Report(SurfaceReport {
                    kappa1,
                    nu1,
                    rationale: "non-isotrivial elliptic: pushforward computation on the base"
                        .into(),
                }))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthVerdict {
    /// All twisted section spaces vanish for large degree.
    NotPseudoeffective,
    /// Bounded growth.
    Bounded,
    /// Quadratic growth.
    Quadratic,
}

impl GrowthVerdict {
    pub fn nu1(&self) -> ExtInt {
        match self {
            GrowthVerdict::NotPseudoeffective => ExtInt::NegInfinity,
            GrowthVerdict::Bounded => ExtInt::Finite(-1),
            GrowthVerdict::Quadratic => ExtInt::Finite(1),
        }
    }
}

/// Upper bound for the twisted section dimensions over an isotrivial
/// elliptic surface with a singular fibre: summing the crude line-bundle
/// bound h^0 <= max(0, degree + 1) over the degrees
/// d(m, p) = (m - p) * 2(g-1) - floor(p/N) * l + d.
pub fn isotrivial_growth(
    genus: u32,
    order: u64,
    fiber_degree: u32,
    twist_degree: u32,
    m: u32,
) -> (u64, GrowthVerdict) {
    assert!(order == 2 || order == 3);
    assert!(fiber_degree >= 1 && twist_degree >= 1);
    let g = genus as i64;
    let l = fiber_degree as i64;
    let d = twist_degree as i64;
    let n = order as i64;
    let mut h_upper = 0u64;
    for p in 0..=m as i64 {
        let deg = (m as i64 - p) * 2 * (g - 1) - (p / n) * l + d;
        h_upper += (deg + 1).max(0) as u64;
    }
    let verdict = match genus {
        0 => GrowthVerdict::NotPseudoeffective,
        1 => GrowthVerdict::Bounded,
        _ => GrowthVerdict::Quadratic,
    };
    (h_upper, verdict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownDim {
    Kappa1(i64),
    Nu1(i64),
}

/// The two inference rules relating the normalised dimensions: a maximal
/// numerical dimension forces the Kodaira one, and Kodaira dimension n-1
/// forces the numerical one.  Everything else is undetermined.
pub fn dimension_inference(known: KnownDim, n: u32) -> Option<(i64, i64)> {
    let n = n as i64;
    match known {
        KnownDim::Nu1(v) if v == n => Some((n, n)),
        KnownDim::Kappa1(v) if v == n - 1 => Some((n - 1, n - 1)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starred_unstarred_round_trip() {
        for rank in [2u32, 3, 5] {
            for starred in -(rank as i64)..=rank as i64 {
                let v = DimValue::from_starred(rank, starred);
                assert_eq!(v.starred(), starred);
                let back = DimValue::from_unstarred(rank, v.unstarred());
                assert_eq!(back.starred(), starred);
            }
        }
    }

    #[test]
    fn abelian_submanifold_values() {
        assert_eq!(abelian_submanifold(2, 5).unwrap(), (2, 2));
        assert_eq!(abelian_submanifold(3, 4).unwrap(), (1, 1));
        assert_eq!(abelian_submanifold(1, 2).unwrap(), (1, 1));
        assert!(abelian_submanifold(3, 3).is_err());
        assert!(abelian_submanifold(0, 4).is_err());
    }

    #[test]
    fn complete_intersection_values() {
        assert_eq!(
            complete_intersection(3, 5).unwrap(),
            CiVerdict::NotPseudoeffective
        );
        assert_eq!(
            complete_intersection(4, 7).unwrap(),
            CiVerdict::NotPseudoeffective
        );
        assert_eq!(complete_intersection(2, 4).unwrap(), CiVerdict::OutOfScope);
        assert!(complete_intersection(5, 5).is_err());
    }

    fn surface(
        kappa: SurfaceKodaira,
        genus: u32,
        isotrivial: bool,
        singular: bool,
        multiples: &[u32],
        hint: Option<u32>,
    ) -> SurfaceSpec {
        SurfaceSpec {
            kappa,
            genus,
            isotrivial,
            has_singular_fiber: singular,
            multiple_fibers: multiples.to_vec(),
            q_prime_hint: hint,
        }
    }

    fn expect_known(outcome: SurfaceOutcome, starred: i64) {
        match outcome {
            SurfaceOutcome::Report(r) => {
                assert_eq!(r.kappa1.starred(), starred);
                match r.nu1 {
                    Nu1Verdict::Known(v) => assert_eq!(v.starred(), starred),
                    Nu1Verdict::Open { .. } => panic!("expected known value"),
                }
            }
            SurfaceOutcome::NeedsEtaleReduction => panic!("expected a report"),
        }
    }

    #[test]
    fn ruled_surfaces() {
        let out =
            surface_invariants(&surface(SurfaceKodaira::MinusInfinity, 0, false, false, &[], None))
                .unwrap();
        expect_known(out, -2);
        let out =
            surface_invariants(&surface(SurfaceKodaira::MinusInfinity, 1, false, false, &[], None))
                .unwrap();
        expect_known(out, -1);
        let out =
            surface_invariants(&surface(SurfaceKodaira::MinusInfinity, 3, false, false, &[], None))
                .unwrap();
        expect_known(out, 0);
    }

    #[test]
    fn kappa_zero_surfaces() {
        let out =
            surface_invariants(&surface(SurfaceKodaira::Zero, 0, false, false, &[], Some(2)))
                .unwrap();
        expect_known(out, 0);
        let out =
            surface_invariants(&surface(SurfaceKodaira::Zero, 0, false, false, &[], Some(0)))
                .unwrap();
        expect_known(out, -2);
        assert!(
            surface_invariants(&surface(SurfaceKodaira::Zero, 0, false, false, &[], None)).is_err()
        );
    }

    #[test]
    fn isotrivial_elliptic_with_singular_fiber() {
        let out = surface_invariants(&surface(SurfaceKodaira::One, 2, true, true, &[], None))
            .unwrap();
        match out {
            SurfaceOutcome::Report(r) => {
                assert_eq!(r.kappa1.unstarred(), ExtInt::Finite(1));
                assert_eq!(r.nu1, Nu1Verdict::Known(r.kappa1));
            }
            _ => panic!(),
        }
        let out = surface_invariants(&surface(SurfaceKodaira::One, 0, true, true, &[], None))
            .unwrap();
        match out {
            SurfaceOutcome::Report(r) => {
                assert_eq!(r.kappa1.unstarred(), ExtInt::NegInfinity);
                assert_eq!(r.kappa1.starred(), -2);
            }
            _ => panic!(),
        }
        let out = surface_invariants(&surface(SurfaceKodaira::One, 1, true, true, &[], None))
            .unwrap();
        expect_known(out, -1);
    }

    #[test]
    fn non_isotrivial_open_cases() {
        let out = surface_invariants(&surface(SurfaceKodaira::One, 1, false, true, &[], None))
            .unwrap();
        match out {
            SurfaceOutcome::Report(r) => {
                assert_eq!(r.kappa1.starred(), -1);
                assert_eq!(
                    r.nu1,
                    Nu1Verdict::Open {
                        conjectured: DimValue::from_starred(2, -1)
                    }
                );
            }
            _ => panic!(),
        }
        // genus zero is settled
        let out = surface_invariants(&surface(SurfaceKodaira::One, 0, false, true, &[], None))
            .unwrap();
        expect_known(out, -2);
    }

    #[test]
    fn multiple_fiber_handling() {
        // two distinct multiplicities over P^1 reduce away
        let out = surface_invariants(&surface(SurfaceKodaira::One, 0, true, true, &[2, 3], None))
            .unwrap();
        match out {
            SurfaceOutcome::Report(r) => assert_eq!(r.kappa1.starred(), -2),
            _ => panic!("cyclic base change applies"),
        }
        // equal multiplicities need an etale reduction
        let out = surface_invariants(&surface(SurfaceKodaira::One, 0, true, true, &[2, 2], None))
            .unwrap();
        assert_eq!(out, SurfaceOutcome::NeedsEtaleReduction);
        // genus >= 1 with multiple fibres likewise
        let out = surface_invariants(&surface(SurfaceKodaira::One, 1, false, true, &[2, 3], None))
            .unwrap();
        assert_eq!(out, SurfaceOutcome::NeedsEtaleReduction);
    }

    #[test]
    fn growth_estimates() {
        let (h, verdict) = isotrivial_growth(0, 2, 1, 1, 10);
        assert_eq!(h, 0);
        assert_eq!(verdict, GrowthVerdict::NotPseudoeffective);
        assert_eq!(verdict.nu1(), ExtInt::NegInfinity);

        let (_, verdict) = isotrivial_growth(1, 2, 1, 1, 10);
        assert_eq!(verdict, GrowthVerdict::Bounded);
        // boundedness: the value stabilises
        let (h20, _) = isotrivial_growth(1, 2, 1, 1, 20);
        let (h40, _) = isotrivial_growth(1, 2, 1, 1, 40);
        assert_eq!(h20, h40);

        let (_, verdict) = isotrivial_growth(2, 2, 1, 1, 10);
        assert_eq!(verdict, GrowthVerdict::Quadratic);
        // quadratic growth: ratios h(2m)/h(m) approach 4
        let (h20, _) = isotrivial_growth(2, 2, 1, 1, 20);
        let (h40, _) = isotrivial_growth(2, 2, 1, 1, 40);
        assert!(h40 > 3 * h20);
    }

    #[test]
    fn inference_rules() {
        assert_eq!(dimension_inference(KnownDim::Nu1(3), 3), Some((3, 3)));
        assert_eq!(dimension_inference(KnownDim::Kappa1(2), 3), Some((2, 2)));
        assert_eq!(dimension_inference(KnownDim::Kappa1(0), 3), None);
        assert_eq!(dimension_inference(KnownDim::Nu1(1), 3), None);
    }
}
