//! Analytic-tier computations: the holomorphic tangent representation, the
//! cyclic singularity type 1/N(a_1,...,a_n) of each element, Reid-Tai ages
//! and the canonicity verdict for the quotient.

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::exactmath::cyclotomic::{
    eval_poly, is_prime_power, poly_derivative, solve_intertwiner, CycloElem, CycloMatrix,
};
use crate::exactmath::rat::Rat;
use crate::torus::{has_fixpoint, GroupTable, TorusAction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("the action has no period matrix; analytic-tier data unavailable")]
    NoPeriod,
    #[error("period matrix is rank-deficient")]
    RankDeficientPeriod,
    #[error("the intertwining system has no solution for element {0}")]
    NoSolution(usize),
    #[error("an eigenvalue of the tangent representation is not a root of unity of the expected order")]
    EigenvalueNotRootOfUnity,
    #[error("all weights share a factor with the order; no unit weight to normalise")]
    NoUnitWeight,
    #[error("unsupported cyclic order {0}; only 2 and 3 occur in the chart analysis")]
    UnsupportedOrder(u64),
}

/// The holomorphic tangent representation: for each table element the
/// unique n x n cyclotomic matrix R with R * P = P * h.
#[derive(Debug, Clone)]
pub struct HolomorphicRep {
    matrices: Vec<CycloMatrix>,
}

impl HolomorphicRep {
    pub fn matrix(&self, element: usize) -> &CycloMatrix {
        &self.matrices[element]
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

pub fn holomorphic_rep(
    action: &TorusAction,
    table: &GroupTable,
) -> Result<HolomorphicRep, SingularError> {
    let period = action.period.as_ref().ok_or(SingularError::NoPeriod)?;
    if period.rank() != action.half_dim {
        return Err(SingularError::RankDeficientPeriod);
    }
    let mut matrices = Vec::with_capacity(table.order());
    for (i, el) in table.elements().iter().enumerate() {
        let rho = solve_intertwiner(period, el.linear())
            .ok_or(SingularError::NoSolution(i))?;
        matrices.push(rho);
    }
    let rep = HolomorphicRep { matrices };
    // The intertwiner is unique for a full-rank period, so the assignment
    // is automatically multiplicative; verify on generator pairs anyway.
    for g1 in &action.generators {
        for g2 in &action.generators {
            let i = table.index_of(g1).expect("generator in table");
            let j = table.index_of(g2).expect("generator in table");
            let k = table.compose_indices(i, j);
            let prod = rep.matrices[i].mul(&rep.matrices[j]);
            if !prod.sub(&rep.matrices[k]).is_zero() {
                return Err(SingularError::NoSolution(k));
            }
        }
    }
    Ok(rep)
}

/// A cyclic quotient singularity type 1/N(a_1,...,a_n): the weights are the
/// exponents of the tangent eigenvalues with respect to a fixed primitive
/// N-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityType {
    pub order: u64,
    /// Sorted ascending; length n.
    pub weights: Vec<u64>,
    pub age: Rat,
    /// Number of zero weights = complex dimension of the fixed subspace.
    pub fixed_dim: usize,
}

impl SingularityType {
    fn from_weights(order: u64, mut weights: Vec<u64>) -> Self {
        weights.sort_unstable();
        let sum: u64 = weights.iter().sum();
        let age = Rat::new(BigInt::from(sum), BigInt::from(order));
        let fixed_dim = weights.iter().filter(|&&a| a == 0).count();
        SingularityType {
            order,
            weights,
            age,
            fixed_dim,
        }
    }

    /// Count of nonzero weights.
    pub fn moving_dim(&self) -> usize {
        self.weights.len() - self.fixed_dim
    }
}

/// Extract the weights of one element from its tangent matrix: each
/// candidate zeta_N^a is tested as a root of the characteristic polynomial,
/// with multiplicity read off from the derivatives.
pub fn tangent_weights(
    el: &crate::torus::AffineAut,
    rho: &CycloMatrix,
) -> Result<SingularityType, SingularError> {
    let order = el
        .linear_order()
        .map_err(|_| SingularError::EigenvalueNotRootOfUnity)?;
    let n = rho.rows();
    let char_poly = rho.char_poly();
    let conductor = char_poly
        .first()
        .map(|c| c.conductor())
        .unwrap_or(1)
        .lcm(&order);
    let poly: Vec<CycloElem> = char_poly.iter().map(|c| c.embed_into(conductor)).collect();

    let mut weights = Vec::with_capacity(n);
    let mut remaining = n;
    for a in 0..order {
        if remaining == 0 {
            break;
        }
        let candidate = CycloElem::zeta_pow(conductor, (conductor / order) as i64 * a as i64);
        let mut mult = 0usize;
        let mut deriv = poly.clone();
        while mult < remaining && eval_poly(&deriv, &candidate).is_zero() {
            mult += 1;
            deriv = poly_derivative(&deriv);
        }
        for _ in 0..mult {
            weights.push(a);
        }
        remaining -= mult;
    }
    if remaining != 0 {
        return Err(SingularError::EigenvalueNotRootOfUnity);
    }
    Ok(SingularityType::from_weights(order, weights))
}

/// Replace the generator by the power that turns the first weight coprime
/// to N into 1, i.e. the type of g^k with k the inverse of that weight.
/// The result is reordered so the unit weight comes first.
pub fn normalize_weights(sing: &SingularityType) -> Result<SingularityType, SingularError> {
    let n = sing.order;
    if n == 1 {
        return Ok(sing.clone());
    }
    let unit = sing
        .weights
        .iter()
        .copied()
        .find(|&a| a > 0 && a.gcd(&n) == 1)
        .ok_or(SingularError::NoUnitWeight)?;
    let k = mod_inverse(unit, n).expect("unit weight is invertible");
    let mut weights: Vec<u64> = sing.weights.iter().map(|&a| (a * k) % n).collect();
    weights.sort_unstable();
    // move the first 1 to the front
    if let Some(pos) = weights.iter().position(|&a| a == 1) {
        let w = weights.remove(pos);
        weights.insert(0, w);
    }
    let sum: u64 = weights.iter().sum();
    let fixed_dim = weights.iter().filter(|&&a| a == 0).count();
    Ok(SingularityType {
        order: n,
        age: Rat::new(BigInt::from(sum), BigInt::from(n)),
        weights,
        fixed_dim,
    })
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

/// The Reid-Tai verdict for the quotient: canonical iff every non-identity
/// element with a fixed point has age at least 1.  For a torus quotient
/// this is also the dividing line between Kodaira dimension zero and
/// uniruledness of the smooth models.
#[derive(Debug, Clone)]
pub struct CanonicityReport {
    pub canonical: bool,
    /// Element index and age realising the minimal age among non-identity
    /// elements with fixpoints; None for a free action.
    pub min_age_witness: Option<(usize, Rat)>,
    pub kodaira_zero: bool,
    pub uniruled: bool,
    /// Order of the determinant character of the tangent representation
    /// (the torsion order of the canonical class of the quotient).
    pub canonical_torsion_order: u64,
    /// Elements whose fixed locus has complex codimension one.
    pub quasi_reflections: Vec<usize>,
    /// Singularity data per element, parallel to the table.
    pub types: Vec<SingularityType>,
}

pub fn reid_tai(table: &GroupTable, rep: &HolomorphicRep) -> Result<CanonicityReport, SingularError> {
    let mut canonical = true;
    let mut min_age: Option<(usize, Rat)> = None;
    let mut quasi_reflections = Vec::new();
    let mut torsion = 1u64;
    let mut types = Vec::with_capacity(table.order());

    for (i, el) in table.elements().iter().enumerate() {
        let sing = tangent_weights(el, rep.matrix(i))?;
        let det = rep.matrix(i).determinant();
        let det_order = det
            .root_of_unity_order()
            .ok_or(SingularError::EigenvalueNotRootOfUnity)?;
        torsion = torsion.lcm(&det_order);

        if i != table.identity_index() && has_fixpoint(el) {
            if sing.moving_dim() == 1 {
                quasi_reflections.push(i);
            }
            let age = sing.age.clone();
            if age < Rat::from_integer(BigInt::from(1)) {
                canonical = false;
            }
            match &min_age {
                None => min_age = Some((i, age)),
                Some((_, best)) if age < *best => min_age = Some((i, age)),
                _ => {}
            }
        }
        types.push(sing);
    }

    Ok(CanonicityReport {
        canonical,
        min_age_witness: min_age,
        kodaira_zero: canonical,
        uniruled: !canonical,
        canonical_torsion_order: torsion,
        quasi_reflections,
        types,
    })
}

/// The singularity type of g^k, by multiplying weights; used to cross-check
/// that ages of powers computed directly agree with weight multiplication.
pub fn power_type(sing: &SingularityType, k: u64) -> SingularityType {
    let n = sing.order;
    if n == 1 {
        return sing.clone();
    }
    let g = k.gcd(&n);
    let new_order = n / g;
    let weights: Vec<u64> = sing
        .weights
        .iter()
        .map(|&a| ((a * k) % n) / g)
        .collect();
    SingularityType::from_weights(new_order, weights)
}

/// Is the singularity order a prime power (the primary case singled out by
/// the weight normalisation)?
pub fn has_primary_order(sing: &SingularityType) -> bool {
    is_prime_power(sing.order)
}
