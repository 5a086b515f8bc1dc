use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

/// Tally of real floating-point operations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlopCount {
    pub add: u64,
    pub mul: u64,
    pub div: u64,
    pub sqrt: u64,
}

impl FlopCount {
    pub const ZERO: Self = Self::new(0, 0, 0, 0);

    pub const fn new(add: u64, mul: u64, div: u64, sqrt: u64) -> Self {
        Self { add, mul, div, sqrt }
    }

    pub const fn total(&self) -> u64 {
        self.add + self.mul + self.div + self.sqrt
    }
}

impl Add for FlopCount {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.add + r.add, self.mul + r.mul, self.div + r.div, self.sqrt + r.sqrt)
    }
}

impl AddAssign for FlopCount {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Mul<u64> for FlopCount {
    type Output = Self;
    fn mul(self, k: u64) -> Self {
        Self::new(self.add * k, self.mul * k, self.div * k, self.sqrt * k)
    }
}

/// Accumulation context for one solve. Kernels add the operations they
/// execute; nothing is shared between contexts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlopCounter {
    count: FlopCount,
    factorizations: u32,
}

impl FlopCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn charge(&mut self, op: FlopCount, times: u64) {
        self.count += op * times;
    }

    pub(crate) fn note_factorization(&mut self) {
        self.factorizations += 1;
    }

    pub fn count(&self) -> FlopCount {
        self.count
    }

    pub fn factorizations(&self) -> u32 {
        self.factorizations
    }
}
