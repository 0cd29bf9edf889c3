//! Rotation graphings T_β on ℝ/ℤ and measurable Roman domination checks.
//!
//! The graphing joins v to v ± β, so every vertex has degree 2 once 2β ∉ ℤ
//! (β = 0 would give loops, β = 1/2 double edges). A labeling splits the
//! circle into the three measurable label classes; it is a Roman dominating
//! function when every point of the 0-class has a neighbor in the 2-class,
//! and its measured value is 2μ(l2) + μ(l1).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::alpha::Alpha;
use crate::circle::{CirclePoint, CircleSet};
use crate::error::{Error, Result};
use crate::exact::AlphaNum;

#[derive(Clone, Debug)]
pub struct RotationGraphing {
    beta: CirclePoint,
    alpha: Alpha,
}

impl RotationGraphing {
    /// Requires 2β ∉ ℤ so the graphing is simple and 2-regular.
    pub fn new(beta: CirclePoint, alpha: Alpha) -> Result<Self> {
        if beta.alpha_coeff() == 0 {
            let two_beta = beta.rational_part() * BigRational::from_integer(BigInt::from(2));
            if two_beta.is_integer() {
                return Err(Error::InvalidParameter(format!(
                    "β = {beta} has 2β ∈ ℤ, which degenerates the graphing"
                )));
            }
        }
        Ok(RotationGraphing { beta, alpha })
    }

    /// The graphing rotated by α itself.
    pub fn irrational(alpha: Alpha) -> Self {
        let beta = CirclePoint::alpha_multiple(1, &alpha).expect("α ∈ (0,1)");
        RotationGraphing { beta, alpha }
    }

    pub fn beta(&self) -> &CirclePoint {
        &self.beta
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    /// N(A) = (A + β) ∪ (A − β).
    pub fn neighborhood_set(&self, a: &CircleSet) -> Result<CircleSet> {
        let fwd = a.translate(&self.beta, &self.alpha)?;
        let bwd = a.translate(&self.beta.negated(&self.alpha)?, &self.alpha)?;
        fwd.union(&bwd, &self.alpha)
    }

    pub fn is_rdf(&self, f: &Labeling) -> Result<DominationReport> {
        let covered = self.neighborhood_set(f.l2())?;
        let violating_set = f.l0().difference(&covered, &self.alpha)?;
        // a nonempty finite arc union has positive measure, so the exact
        // check and the up-to-null-sets check coincide here
        let valid = violating_set.is_empty();
        let measured_value =
            &f.l2().measure(&self.alpha)?.scale_int(2) + &f.l1().measure(&self.alpha)?;
        let social_measure = self.social_set(f)?.measure(&self.alpha)?;
        let needy_measure = self.needy_set(f)?.measure(&self.alpha)?;
        Ok(DominationReport {
            valid,
            violating_set,
            measured_value,
            social_measure,
            needy_measure,
        })
    }

    /// Points labeled 2 with at least one neighbor labeled 2:
    /// l2 ∩ ((l2 + β) ∪ (l2 − β)).
    pub fn social_set(&self, f: &Labeling) -> Result<CircleSet> {
        let n = self.neighborhood_set(f.l2())?;
        f.l2().intersect(&n, &self.alpha)
    }

    /// Points labeled 0 whose both neighbors are labeled 2:
    /// l0 ∩ (l2 + β) ∩ (l2 − β).
    pub fn needy_set(&self, f: &Labeling) -> Result<CircleSet> {
        let fwd = f.l2().translate(&self.beta, &self.alpha)?;
        let bwd = f.l2().translate(&self.beta.negated(&self.alpha)?, &self.alpha)?;
        f.l0()
            .intersect(&fwd, &self.alpha)?
            .intersect(&bwd, &self.alpha)
    }

    /// Both sides of the edge-measure identity
    /// μ(A ∩ (B+β)) + μ(A ∩ (B−β)) = μ(B ∩ (A+β)) + μ(B ∩ (A−β)).
    pub fn edge_measure_identity(
        &self,
        a: &CircleSet,
        b: &CircleSet,
    ) -> Result<(AlphaNum, AlphaNum)> {
        let side = |x: &CircleSet, y: &CircleSet| -> Result<AlphaNum> {
            let fwd = y.translate(&self.beta, &self.alpha)?;
            let bwd = y.translate(&self.beta.negated(&self.alpha)?, &self.alpha)?;
            let m1 = x.intersect(&fwd, &self.alpha)?.measure(&self.alpha)?;
            let m2 = x.intersect(&bwd, &self.alpha)?.measure(&self.alpha)?;
            Ok(&m1 + &m2)
        };
        Ok((side(a, b)?, side(b, a)?))
    }
}

/// A measurable {0,1,2}-labeling given by its three label classes, which
/// must partition the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    l0: CircleSet,
    l1: CircleSet,
    l2: CircleSet,
}

impl Labeling {
    pub fn new(l0: CircleSet, l1: CircleSet, l2: CircleSet, alpha: &Alpha) -> Result<Self> {
        let pairs = [("l0", &l0, "l1", &l1), ("l0", &l0, "l2", &l2), ("l1", &l1, "l2", &l2)];
        for (na, a, nb, b) in pairs {
            let overlap = a.intersect(b, alpha)?;
            if !overlap.is_empty() {
                return Err(Error::PartitionViolation(format!(
                    "{na} and {nb} overlap on {overlap}"
                )));
            }
        }
        let union = l0.union(&l1, alpha)?.union(&l2, alpha)?;
        if !union.is_full() {
            let missing = union.complement(alpha)?;
            return Err(Error::PartitionViolation(format!(
                "labels miss {} (measure {})",
                missing,
                missing.measure(alpha)?.exact_string()
            )));
        }
        Ok(Labeling { l0, l1, l2 })
    }

    pub fn l0(&self) -> &CircleSet {
        &self.l0
    }

    pub fn l1(&self) -> &CircleSet {
        &self.l1
    }

    pub fn l2(&self) -> &CircleSet {
        &self.l2
    }
}

#[derive(Clone, Debug)]
pub struct DominationReport {
    pub valid: bool,
    pub violating_set: CircleSet,
    pub measured_value: AlphaNum,
    pub social_measure: AlphaNum,
    pub needy_measure: AlphaNum,
}

/// Lower bound for the Roman domination measure of any graphing with
/// maximum degree Δ: the LP `min m1 + 2·m2 s.t. m1 + (Δ+1)·m2 ≥ 1` attains
/// its optimum at a vertex, either (1, 0) or (0, 1/(Δ+1)).
pub fn rdm_lower_bound(max_degree: u64) -> BigRational {
    let all_ones = BigRational::one();
    let all_twos = BigRational::new(BigInt::from(2), BigInt::from(max_degree + 1));
    all_ones.min(all_twos)
}

/// μ(S Δ (S + step)): how far S is from being invariant under the step
/// rotation. Positive for every finite arc union when step generates a
/// dense orbit, which is what rules out exact optimizers.
pub fn invariance_defect(s: &CircleSet, step: &CirclePoint, alpha: &Alpha) -> Result<AlphaNum> {
    let shifted = s.translate(step, alpha)?;
    s.symmetric_difference(&shifted, alpha)?.measure(alpha)
}

/// Convenience: exact comparison `lhs ≤ rhs` for report consumers.
pub fn le(lhs: &AlphaNum, rhs: &AlphaNum, alpha: &Alpha) -> Result<bool> {
    Ok(lhs.cmp_in(rhs, alpha)? != Ordering::Greater)
}
