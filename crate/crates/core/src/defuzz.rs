//! Consequent sets, their areas, and centroid defuzzification.
//!
//! The conventional path clips each output set at its rule strength and
//! computes the trapezoid area `D·s·(2 - s)` per call. The parabolic path
//! scales each output set by its strength, so its area is the strength times
//! a base area computed once in [`PrecomputedAreas`].
//!
//! [`centroid_defuzz`] sums per-set `area · center` products, so overlapping
//! mass is counted once per set. [`reference_centroid`] integrates the true
//! max-envelope and serves as the accuracy reference.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::membership::{CurveKind, Label, LabelMap, MembershipCurve, Partition};
use crate::ops::OpCount;
use crate::Scalar;

/// Panels used by [`reference_centroid`].
pub const REFERENCE_PANELS: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DefuzzError {
    #[error("no rule fired: every consequent strength is zero")]
    AllRulesSilent,
    #[error("strength {0} outside [0, 1]")]
    StrengthOutOfRange(f64),
    #[error("clipped area is only defined for triangular sets, got {0}")]
    NotTriangular(CurveKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InferenceMode {
    /// `min(μ(x), s)`
    Clip,
    /// `s · μ(x)`
    Scale,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsequentSet<T> {
    pub label: Label,
    pub curve: MembershipCurve<T>,
    pub strength: T,
    pub mode: InferenceMode,
}

impl<T: Scalar> ConsequentSet<T> {
    pub fn eval(&self, x: T) -> T {
        let mu = self.curve.eval(x);
        match self.mode {
            InferenceMode::Clip => mu.min(self.strength),
            InferenceMode::Scale => mu * self.strength,
        }
    }
}

/// Base area of each output primary set, fixed at controller construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecomputedAreas<T>(LabelMap<T>);

impl<T: Scalar> PrecomputedAreas<T> {
    pub fn new(output: &Partition<T>) -> Self {
        PrecomputedAreas(LabelMap::from_fn(|l| output.curve(l).base_area()))
    }

    pub fn get(&self, label: Label) -> T {
        self.0[label]
    }
}

fn check_strength<T: Scalar>(s: T) -> Result<(), DefuzzError> {
    if s >= T::zero() && s <= T::one() {
        Ok(())
    } else {
        Err(DefuzzError::StrengthOutOfRange(
            s.to_f64().unwrap_or(f64::NAN),
        ))
    }
}

/// Area of a triangular set clipped at height `s`.
pub fn clipped_area<T: Scalar>(curve: &MembershipCurve<T>, s: T) -> Result<T, DefuzzError> {
    clipped_area_counted(curve, s, &mut OpCount::default())
}

pub fn clipped_area_counted<T: Scalar>(
    curve: &MembershipCurve<T>,
    s: T,
    ops: &mut OpCount,
) -> Result<T, DefuzzError> {
    check_strength(s)?;
    if curve.kind != CurveKind::Triangular {
        return Err(DefuzzError::NotTriangular(curve.kind));
    }
    ops.add(1);
    ops.mul(2);
    Ok(curve.d() * s * (T::two() - s))
}

/// Area of output set `label` scaled by `s`.
pub fn scaled_area<T: Scalar>(
    label: Label,
    s: T,
    pre: &PrecomputedAreas<T>,
) -> Result<T, DefuzzError> {
    scaled_area_counted(label, s, pre, &mut OpCount::default())
}

pub fn scaled_area_counted<T: Scalar>(
    label: Label,
    s: T,
    pre: &PrecomputedAreas<T>,
    ops: &mut OpCount,
) -> Result<T, DefuzzError> {
    check_strength(s)?;
    ops.mul(1);
    Ok(s * pre.get(label))
}

/// Area-weighted mean of the fired sets' centers.
pub fn centroid_defuzz<T: Scalar>(
    consequents: &[ConsequentSet<T>],
    pre: &PrecomputedAreas<T>,
) -> Result<T, DefuzzError> {
    centroid_defuzz_counted(consequents, pre, &mut OpCount::default())
}

pub fn centroid_defuzz_counted<T: Scalar>(
    consequents: &[ConsequentSet<T>],
    pre: &PrecomputedAreas<T>,
    ops: &mut OpCount,
) -> Result<T, DefuzzError> {
    let mut num = T::zero();
    let mut den = T::zero();
    for set in consequents {
        check_strength(set.strength)?;
        if set.strength <= T::zero() {
            continue;
        }
        let area = match set.mode {
            InferenceMode::Clip => clipped_area_counted(&set.curve, set.strength, ops)?,
            InferenceMode::Scale => scaled_area_counted(set.label, set.strength, pre, ops)?,
        };
        num = num + area * set.curve.b();
        den = den + area;
        ops.mul(1);
        ops.add(2);
    }
    if den <= T::zero() {
        return Err(DefuzzError::AllRulesSilent);
    }
    ops.div(1);
    Ok(num / den)
}

/// Centroid of the max-envelope of the fired sets, by trapezoidal
/// integration over the union of their supports.
pub fn reference_centroid<T: Scalar>(consequents: &[ConsequentSet<T>]) -> Result<T, DefuzzError> {
    let fired: Vec<&ConsequentSet<T>> = consequents
        .iter()
        .filter(|s| s.strength > T::zero())
        .collect();
    if fired.is_empty() {
        return Err(DefuzzError::AllRulesSilent);
    }
    for s in &fired {
        check_strength(s.strength)?;
    }
    let lo = fired
        .iter()
        .map(|s| s.curve.a())
        .fold(T::infinity(), T::min);
    let hi = fired
        .iter()
        .map(|s| s.curve.c())
        .fold(T::neg_infinity(), T::max);
    let n = REFERENCE_PANELS;
    let h = (hi - lo) / T::lit(n as f64);
    let envelope = |x: T| fired.iter().map(|s| s.eval(x)).fold(T::zero(), T::max);

    let mut mass = T::zero();
    let mut moment = T::zero();
    for i in 0..=n {
        let x = if i == n {
            hi
        } else {
            lo + h * T::lit(i as f64)
        };
        let w = if i == 0 || i == n {
            T::half()
        } else {
            T::one()
        };
        let g = envelope(x) * w;
        mass = mass + g;
        moment = moment + g * x;
    }
    if mass <= T::zero() {
        return Err(DefuzzError::AllRulesSilent);
    }
    Ok(moment / mass)
}
