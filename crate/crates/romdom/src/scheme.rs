//! The ε-scheme: a near-optimal explicit Roman dominating labeling for the
//! irrational rotation graphing.
//!
//! Fix a base window [0, ε) and the hit time d(v) = min { k ≥ 0 : v − kα ∈
//! [0, ε) }, truncated at a depth K divisible by 3. The level set D_k holds
//! the points with hit time exactly k, so D_k ⊆ [0, ε) + kα and the level
//! sets are pairwise disjoint. Label 2 the core X = D_0 ∪ D_3 ∪ D_6 ∪ …
//! together with the (small) uncovered remainder, label 0 everything else,
//! use no 1s. Points with hit time k ≡ 1 (mod 3) step down to X by −α,
//! points with k ≡ 2 step up by +α (k + 1 ≤ K because 3 | K), so the
//! labeling dominates. Since consecutive translates of the window overlap
//! in at most the window and its α-shift, μ(X) ≤ 1/3 + (4/3)ε, and the
//! measured value is within O(ε) of the 2/3 lower bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::alpha::Alpha;
use crate::circle::{Arc, CirclePoint, CircleSet};
use crate::error::{Error, Result};
use crate::exact::AlphaNum;
use crate::graphing::{Labeling, RotationGraphing};

/// Keeps level-set construction from exhausting memory on absurd depths.
pub const MAX_DEPTH: u32 = 1_000_000;

#[derive(Clone, Debug)]
pub struct SchemeParams {
    alpha: Alpha,
    epsilon: BigRational,
    depth: u32,
}

impl SchemeParams {
    pub fn new(alpha: Alpha, epsilon: BigRational, depth: u32) -> Result<Self> {
        if epsilon <= BigRational::zero() || epsilon >= BigRational::one() {
            return Err(Error::InvalidParameter(format!(
                "ε must lie in (0, 1), got {epsilon}"
            )));
        }
        if depth < 3 || !depth.is_multiple_of(3) {
            return Err(Error::InvalidParameter(format!(
                "depth must be a positive multiple of 3, got {depth}"
            )));
        }
        if depth > MAX_DEPTH {
            return Err(Error::InvalidParameter(format!(
                "depth {depth} exceeds the supported maximum {MAX_DEPTH}"
            )));
        }
        Ok(SchemeParams {
            alpha,
            epsilon,
            depth,
        })
    }

    /// K = 3·⌈10/ε⌉, deep enough that the uncovered remainder is tiny.
    pub fn default_depth(epsilon: &BigRational) -> Result<u32> {
        if epsilon <= &BigRational::zero() || epsilon >= &BigRational::one() {
            return Err(Error::InvalidParameter(format!(
                "ε must lie in (0, 1), got {epsilon}"
            )));
        }
        let steps = (BigRational::from_integer(10.into()) / epsilon).ceil().to_integer();
        let steps = steps
            .to_u32()
            .filter(|s| s.checked_mul(3).is_some_and(|d| d <= MAX_DEPTH))
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "ε = {epsilon} needs a depth beyond the supported maximum {MAX_DEPTH}"
                ))
            })?;
        Ok(3 * steps)
    }

    pub fn with_default_depth(alpha: Alpha, epsilon: BigRational) -> Result<Self> {
        let depth = Self::default_depth(&epsilon)?;
        Self::new(alpha, epsilon, depth)
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn epsilon(&self) -> &BigRational {
        &self.epsilon
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// The base window [0, ε).
    pub fn base_window(&self) -> CircleSet {
        let end = CirclePoint::from_rational(self.epsilon.clone());
        CircleSet::from_arc(Arc::new(CirclePoint::zero(), end).expect("ε ∈ (0,1)"))
    }
}

/// D_0, …, D_K together with their union and its complement.
#[derive(Clone, Debug)]
pub struct LevelSets {
    pub levels: Vec<CircleSet>,
    pub covered: CircleSet,
    pub uncovered: CircleSet,
}

/// Exact certificates for a built scheme. `x_bound` is 1/3 + (4/3)ε and
/// always dominates `x_measure`; `completed_value` is the measured value
/// 2·(μX + μ uncovered) of the final labeling.
#[derive(Clone, Debug)]
pub struct SchemeReport {
    pub x_measure: AlphaNum,
    pub x_bound: AlphaNum,
    pub uncovered_measure: AlphaNum,
    pub completed_value: AlphaNum,
    pub domination_valid: bool,
}

#[derive(Clone, Debug)]
pub struct Scheme {
    pub params: SchemeParams,
    pub level_sets: LevelSets,
    pub core: CircleSet,
    pub labeling: Labeling,
    pub report: SchemeReport,
}

/// min { k ≤ depth : v − kα ∈ [0, ε) }, or None when the orbit misses the
/// window within the depth budget.
pub fn hit_time(v: &CirclePoint, params: &SchemeParams) -> Result<Option<u32>> {
    let alpha = params.alpha();
    let window = params.base_window();
    let back = CirclePoint::alpha_multiple(-1, alpha)?;
    let mut w = v.clone();
    for k in 0..=params.depth() {
        if window.contains(&w, alpha)? {
            return Ok(Some(k));
        }
        w = w.add(&back, alpha)?;
    }
    Ok(None)
}

pub fn build_level_sets(params: &SchemeParams) -> Result<LevelSets> {
    let alpha = params.alpha();
    let base = params.base_window();
    let step = CirclePoint::alpha_multiple(1, alpha)?;
    let mut levels = Vec::with_capacity(params.depth() as usize + 1);
    levels.push(base.clone());
    let mut covered = base.clone();
    let mut shifted = base;
    for _ in 1..=params.depth() {
        shifted = shifted.translate(&step, alpha)?;
        let fresh = shifted.difference(&covered, alpha)?;
        covered = covered.union(&shifted, alpha)?;
        levels.push(fresh);
    }
    let uncovered = covered.complement(alpha)?;
    Ok(LevelSets {
        levels,
        covered,
        uncovered,
    })
}

impl Scheme {
    pub fn build(params: SchemeParams) -> Result<Scheme> {
        let alpha = params.alpha().clone();
        let level_sets = build_level_sets(&params)?;
        let mut core_arcs = Vec::new();
        for k in (0..=params.depth()).step_by(3) {
            core_arcs.extend_from_slice(level_sets.levels[k as usize].arcs());
        }
        // level sets are pairwise disjoint by construction
        let core = CircleSet::from_disjoint_arcs(core_arcs, &alpha)?;
        let l2 = core.union(&level_sets.uncovered, &alpha)?;
        let l0 = level_sets.covered.difference(&core, &alpha)?;
        let labeling = Labeling::new(l0, CircleSet::empty(), l2, &alpha)?;

        let graphing = RotationGraphing::irrational(alpha.clone());
        let check = graphing.is_rdf(&labeling)?;
        if !check.valid {
            return Err(Error::DominationFailure(format!(
                "scheme labeling leaves {} undominated",
                check.violating_set
            )));
        }

        let x_measure = core.measure(&alpha)?;
        let uncovered_measure = level_sets.uncovered.measure(&alpha)?;
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let four_thirds = BigRational::new(BigInt::from(4), BigInt::from(3));
        let x_bound = AlphaNum::from_rational(&third + four_thirds * params.epsilon());
        let completed_value = check.measured_value.clone();
        debug_assert_eq!(
            completed_value,
            (&x_measure + &uncovered_measure).scale_int(2)
        );
        let report = SchemeReport {
            x_measure,
            x_bound,
            uncovered_measure,
            completed_value,
            domination_valid: check.valid,
        };
        Ok(Scheme {
            params,
            level_sets,
            core,
            labeling,
            report,
        })
    }
}

/// Convenience wrapper returning just the labeling and its certificates.
pub fn build_scheme(params: SchemeParams) -> Result<(Labeling, SchemeReport)> {
    let scheme = Scheme::build(params)?;
    Ok((scheme.labeling, scheme.report))
}

/// Measures of the social and needy sets restricted to the covered region.
#[derive(Clone, Debug)]
pub struct SchemeAudit {
    pub social_covered: AlphaNum,
    pub needy_covered: AlphaNum,
    /// 2ε + 2·μ(uncovered), the certified ceiling for `social_covered`.
    pub social_bound: AlphaNum,
}

pub fn social_needy_audit(scheme: &Scheme) -> Result<SchemeAudit> {
    let alpha = scheme.params.alpha();
    let graphing = RotationGraphing::irrational(alpha.clone());
    let covered = &scheme.level_sets.covered;
    let social = graphing.social_set(&scheme.labeling)?;
    let needy = graphing.needy_set(&scheme.labeling)?;
    let social_covered = social.intersect(covered, alpha)?.measure(alpha)?;
    let needy_covered = needy.intersect(covered, alpha)?.measure(alpha)?;
    let two_eps = AlphaNum::from_rational(
        scheme.params.epsilon() * BigRational::from_integer(BigInt::from(2)),
    );
    let social_bound = &two_eps + &scheme.report.uncovered_measure.scale_int(2);
    Ok(SchemeAudit {
        social_covered,
        needy_covered,
        social_bound,
    })
}
