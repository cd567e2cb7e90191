//! Compensated (Neumaier) summation in storage order.

use crate::liegroup::AxialVec3;

/// Running Neumaier sum of scalars.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Componentwise compensated sum of 3-vectors.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedVecSum([CompensatedSum; 3]);

impl CompensatedVecSum {
    pub fn add(&mut self, v: &AxialVec3) {
        for (acc, x) in self.0.iter_mut().zip(v.iter()) {
            acc.add(*x);
        }
    }

    pub fn value(&self) -> AxialVec3 {
        AxialVec3::new(self.0[0].value(), self.0[1].value(), self.0[2].value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_low_order_bits() {
        let mut s = CompensatedSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn vector_sum_is_componentwise() {
        let mut s = CompensatedVecSum::default();
        s.add(&AxialVec3::new(1.0, 1e16, -3.0));
        s.add(&AxialVec3::new(2.0, 1.0, 3.0));
        s.add(&AxialVec3::new(0.5, -1e16, 0.0));
        assert_eq!(s.value(), AxialVec3::new(3.5, 1.0, 0.0));
    }
}
