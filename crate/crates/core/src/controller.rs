//! A two-input fuzzy controller: fuzzify angle and angular velocity, fire the
//! rule table, defuzzify to a normalized force.

use crate::defuzz::{
    centroid_defuzz_counted, reference_centroid, ConsequentSet, DefuzzError, InferenceMode,
    PrecomputedAreas,
};
use crate::membership::{CurveKind, Label, MembershipError, Partition};
use crate::ops::OpCount;
use crate::rulebase::{fuzzify, infer, FiredOutput, RuleTable};
use crate::Scalar;

#[derive(Debug, Clone)]
pub struct FuzzyController<T> {
    input: Partition<T>,
    output: Partition<T>,
    rules: RuleTable,
    mode: InferenceMode,
    areas: PrecomputedAreas<T>,
}

#[derive(Debug, Clone, Copy)]
pub struct ControlOutput<T> {
    /// Normalized force, `None` when no rule fired.
    pub crisp: Option<T>,
    pub fired: FiredOutput<T>,
    /// Arithmetic performed by the area and centroid kernels for this call.
    pub ops: OpCount,
}

impl<T: Scalar> FuzzyController<T> {
    /// Builds a controller whose input and output universes are `[-1, 1]`.
    pub fn new(
        kind: CurveKind,
        mode: InferenceMode,
        rules: RuleTable,
    ) -> Result<Self, MembershipError> {
        let input = Partition::new(kind, -T::one(), T::one())?;
        let output = input.clone();
        Ok(Self::with_partitions(input, output, mode, rules))
    }

    pub fn with_partitions(
        input: Partition<T>,
        output: Partition<T>,
        mode: InferenceMode,
        rules: RuleTable,
    ) -> Self {
        let areas = PrecomputedAreas::new(&output);
        FuzzyController {
            input,
            output,
            rules,
            mode,
            areas,
        }
    }

    pub fn mode(&self) -> InferenceMode {
        self.mode
    }

    pub fn rules(&self) -> &RuleTable {
        &self.rules
    }

    pub fn input(&self) -> &Partition<T> {
        &self.input
    }

    pub fn output(&self) -> &Partition<T> {
        &self.output
    }

    pub fn areas(&self) -> &PrecomputedAreas<T> {
        &self.areas
    }

    pub fn fire(&self, angle: T, vel: T) -> FiredOutput<T> {
        infer(
            &self.rules,
            &fuzzify(&self.input, angle),
            &fuzzify(&self.input, vel),
        )
    }

    pub fn consequents(&self, fired: &FiredOutput<T>) -> Vec<ConsequentSet<T>> {
        Label::ALL
            .into_iter()
            .filter(|&l| fired[l] > T::zero())
            .map(|label| ConsequentSet {
                label,
                curve: *self.output.curve(label),
                strength: fired[label],
                mode: self.mode,
            })
            .collect()
    }

    /// One control evaluation on normalized inputs.
    pub fn control(&self, angle: T, vel: T) -> Result<ControlOutput<T>, DefuzzError> {
        let fired = self.fire(angle, vel);
        let mut ops = OpCount::default();
        let sets = self.consequents(&fired);
        let crisp = match centroid_defuzz_counted(&sets, &self.areas, &mut ops) {
            Ok(y) => Some(y),
            Err(DefuzzError::AllRulesSilent) => None,
            Err(e) => return Err(e),
        };
        Ok(ControlOutput { crisp, fired, ops })
    }

    /// Centroid of the true output envelope for the same firing.
    pub fn reference(&self, fired: &FiredOutput<T>) -> Result<T, DefuzzError> {
        reference_centroid(&self.consequents(fired))
    }
}
