//! Compensated (Kahan–Babuška / Neumaier) summation.
//!
//! The dilation sum accumulates on the order of `1/ε` terms that shrink toward
//! zero while the running total grows toward `1/ε`. Plain `+=` loses roughly
//! three digits over a million such terms; carrying the rounding error in a
//! separate compensation term keeps the total within a few ulps.

use std::ops::AddAssign;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new(initial: f64) -> Self {
        Self {
            sum: initial,
            compensation: 0.0,
        }
    }

    pub fn add(&mut self, value: f64) {
        let total = self.sum + value;
        // Neumaier's variant: recover the low-order bits of whichever operand
        // is smaller in magnitude.
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - total) + value;
        } else {
            self.compensation += (value - total) + self.sum;
        }
        self.sum = total;
    }

    /// Best estimate of the exact sum.
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Accumulated rounding error not yet folded into the leading term.
    pub fn compensation(&self) -> f64 {
        self.compensation
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}
