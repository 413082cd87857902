//! Arithmetic operation tallies for the area and centroid kernels.
//!
//! Counting is explicit: each kernel bumps the counter for the operations it
//! actually executes. Fuzzification and inference are not counted.

use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCount {
    pub mul: u64,
    pub div: u64,
    /// Additions and subtractions.
    pub add: u64,
}

impl OpCount {
    pub const ZERO: OpCount = OpCount {
        mul: 0,
        div: 0,
        add: 0,
    };

    pub fn total(&self) -> u64 {
        self.mul + self.div + self.add
    }

    #[inline]
    pub(crate) fn mul(&mut self, n: u64) {
        self.mul += n;
    }

    #[inline]
    pub(crate) fn div(&mut self, n: u64) {
        self.div += n;
    }

    #[inline]
    pub(crate) fn add(&mut self, n: u64) {
        self.add += n;
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: Self) {
        self.mul += rhs.mul;
        self.div += rhs.div;
        self.add += rhs.add;
    }
}
