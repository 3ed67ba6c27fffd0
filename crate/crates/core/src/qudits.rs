//! Planning base-b register widths for simulating traces of n-fold
//! a-dimensional qudit operators.
//!
//! An a-dimensional qudit is packed into d base-b digits; c = floor(b^d/a)
//! copies of its state space tile the digit space, leaving a norm deficit
//! delta = 1 - c a / b^d per qudit.  The planner picks the smallest d with
//! b^d >= 2 n a / delta_target, which keeps the n-qudit deficit, and with
//! it the trace discrepancy, inside the requested budget.  All
//! comparisons are exact rational arithmetic; the f64 target is used at
//! its exact binary value.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive};

#[derive(Clone, Debug)]
pub struct QuditPlan {
    pub a: u64,
    pub b: u64,
    pub n: u32,
    pub delta_target: f64,
    /// Digits per qudit.
    pub d: u32,
    /// Copies of the qudit space per digit register, floor(b^d / a).
    pub c: BigUint,
}

pub fn plan(a: u64, b: u64, n: u32, delta_target: f64) -> Result<QuditPlan> {
    if a < 2 {
        return Err(Error::BadPlan(format!("qudit dimension a={a} must be >= 2")));
    }
    if b < 2 {
        return Err(Error::BadPlan(format!("digit base b={b} must be >= 2")));
    }
    if n < 1 {
        return Err(Error::BadPlan("need at least one qudit".into()));
    }
    if !(delta_target.is_finite() && 0.0 < delta_target && delta_target < 1.0) {
        return Err(Error::BadPlan(format!(
            "delta target {delta_target} must lie in (0, 1)"
        )));
    }
    let delta = BigRational::from_f64(delta_target).expect("finite target");
    // smallest d with b^d * num(delta) >= 2 n a * den(delta)
    let rhs = BigInt::from(2u32) * BigInt::from(n) * BigInt::from(a) * delta.denom();
    let bb = BigInt::from(b);
    let mut d = 1u32;
    let mut pow = bb.clone();
    while &pow * delta.numer() < rhs {
        d += 1;
        pow *= &bb;
    }
    let c = pow.to_biguint().unwrap() / BigUint::from(a);
    Ok(QuditPlan {
        a,
        b,
        n,
        delta_target,
        d,
        c,
    })
}

impl QuditPlan {
    pub fn b_pow_d(&self) -> BigUint {
        BigUint::from(self.b).pow(self.d)
    }

    /// Per-qudit norm deficit 1 - c a / b^d, exact.
    pub fn delta_rational(&self) -> BigRational {
        let ca = BigInt::from(self.c.clone()) * BigInt::from(self.a);
        BigRational::one() - BigRational::new(ca, self.b_pow_d().into())
    }

    pub fn delta(&self) -> f64 {
        self.delta_rational().to_f64().unwrap()
    }

    /// 1 - (1 - delta)^n: the weight the padded registers lose against
    /// the embedded qudit trace, exact.
    pub fn deficit_weight_rational(&self) -> BigRational {
        let r = BigRational::one() - self.delta_rational();
        let mut pow = BigRational::one();
        for _ in 0..self.n {
            pow *= &r;
        }
        BigRational::one() - pow
    }

    /// |simulated normalized trace - true normalized trace| for a qudit
    /// operator with normalized trace `tr_a` (|tr_a| <= 1): the padding
    /// fixes the surplus states, mixing the true trace with 1 at weight
    /// (1-delta)^n.
    pub fn trace_discrepancy(&self, tr_a: Complex64) -> f64 {
        let w = self.deficit_weight_rational().to_f64().unwrap();
        w * (Complex64::new(1.0, 0.0) - tr_a).norm()
    }

    /// Guaranteed ceiling 2 |(1 - delta)^n - 1| on the discrepancy over
    /// all normalized traces in the unit disk.
    pub fn discrepancy_bound(&self) -> f64 {
        2.0 * self.deficit_weight_rational().abs().to_f64().unwrap()
    }
}
