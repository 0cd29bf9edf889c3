//! Exact computation for measurable Roman domination on circle rotation
//! graphings.
//!
//! The central object is the graphing on ℝ/ℤ that joins every point v to
//! v ± α for an irrational α ∈ (0, 1). A measurable {0,1,2}-labeling of the
//! circle is Roman dominating when almost-every 0-labeled point has a
//! 2-labeled neighbor, and its measured value is 2μ(f⁻¹2) + μ(f⁻¹1). The
//! infimum of measured values is 2/3 for these graphings, yet no labeling
//! attains it, which makes explicit near-optimal constructions
//! interesting: the [`scheme`] module builds, for every rational ε, a
//! 1-free labeling whose value is within O(ε) of 2/3, with every claim
//! certified by exact arithmetic.
//!
//! Everything runs over the field ℚ + ℚα: set endpoints are p + qα with
//! rational p and integer q, measures are r + cα, and equality is symbolic
//! (α being irrational makes the representation unique). Order decisions
//! use rational enclosures of α derived from its continued fraction, so no
//! comparison is ever trusted to floating point beyond a certified filter.
//!
//! Modules:
//! - [`alpha`]: the rotation constant and exact sign/floor/compare ladders
//! - [`exact`]: scalars r + cα used for measures and bounds
//! - [`circle`]: canonical points and half-open arc unions with full
//!   boolean set algebra
//! - [`graphing`]: rotation graphings, labelings, domination reports,
//!   measure identities
//! - [`scheme`]: the ε-scheme construction and its certificates
//! - [`finite`]: exact Roman domination solvers for finite graphs
//! - [`experiments`]: convergent studies, property sweeps, CSV/JSON output

pub mod alpha;
pub mod circle;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod finite;
pub mod graphing;
pub mod scheme;

pub use alpha::{Alpha, AlphaKind, DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS};
pub use circle::{Arc, CirclePoint, CircleSet};
pub use error::{Error, Result};
pub use exact::AlphaNum;
pub use finite::{FiniteGraph, FiniteRdf, PathOrCycle, BRUTE_FORCE_CAP};
pub use graphing::{DominationReport, Labeling, RotationGraphing};
pub use scheme::{LevelSets, Scheme, SchemeAudit, SchemeParams, SchemeReport};
