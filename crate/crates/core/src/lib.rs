//! Fuzzy control of an inverted pendulum with two interchangeable controllers:
//! a conventional triangular MAX-MIN controller that clips its consequent
//! sets, and a Parabolic-II controller that scales them and reuses areas
//! computed once at construction.
//!
//! The numeric modules ([`membership`], [`rulebase`], [`defuzz`], [`plant`])
//! are generic over [`Scalar`] so they run in `f32` or `f64`. The aliases at
//! the crate root fix the scalar to `f64`, which is what the [`harness`] and
//! the `parafuzz` binary use.
//!
//! ```
//! use parafuzz::{make_partition, CurveKind, Label};
//!
//! let p = make_partition::<f64>(CurveKind::ParabolicII, -1.0, 1.0).unwrap();
//! let mu = p.degrees(0.0);
//! assert_eq!(mu[Label::ZE], 1.0);
//! ```

pub mod controller;
pub mod defuzz;
pub mod harness;
pub mod membership;
pub mod ops;
pub mod plant;
pub mod rulebase;
mod scalar;

pub use controller::{ControlOutput, FuzzyController};
pub use defuzz::{
    centroid_defuzz, clipped_area, reference_centroid, scaled_area, ConsequentSet, DefuzzError,
    InferenceMode, PrecomputedAreas,
};
pub use membership::{
    degree_of_fuzziness, make_partition, CurveKind, Label, LabelMap, MembershipCurve,
    MembershipError, Partition,
};
pub use ops::OpCount;
pub use plant::{PendulumState, PlantError, PlantParams, Scaler};
pub use rulebase::{
    format_rule_table, infer, parse_rule_table, FiredOutput, FuzzifiedInput, RuleParseError,
    RuleTable, DEFAULT_RULES,
};
pub use scalar::Scalar;

/// A membership curve over `f64`.
pub type Curve = MembershipCurve<f64>;
/// A seven-set partition over `f64`.
pub type Partition64 = Partition<f64>;
/// Consequent set over `f64`.
pub type Consequent = ConsequentSet<f64>;
/// Precomputed output-set areas over `f64`.
pub type Areas = PrecomputedAreas<f64>;
/// Pendulum state over `f64`.
pub type State = PendulumState<f64>;
/// Plant parameters over `f64`.
pub type Params = PlantParams<f64>;
/// Physical/normalized scaler over `f64`.
pub type Scaling = Scaler<f64>;
/// A controller over `f64`.
pub type Controller = FuzzyController<f64>;
