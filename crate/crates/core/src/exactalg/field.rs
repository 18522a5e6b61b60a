//! The scalar-field abstraction shared by polynomials and operator matrices.

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::mp::{real_to_f64, Cplx};
use super::rational::{rat_to_f64, Rat};

/// Field operations with an explicit "like" argument for constants, so
/// numeric values inherit the precision of their neighbours.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fdiv(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn from_rat_like(r: &Rat, like: &Self) -> Self;
    /// Rough magnitude, for pivot choice and diagnostics.
    fn magnitude(&self) -> f64;
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fdiv(&self, o: &Self) -> Self {
        self / o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn from_rat_like(r: &Rat, _: &Self) -> Self {
        r.clone()
    }
    fn magnitude(&self) -> f64 {
        rat_to_f64(&self.abs())
    }
}

impl Field for Cplx {
    fn zero_like(&self) -> Self {
        Cplx::zero(self.bits())
    }
    fn one_like(&self) -> Self {
        Cplx::one(self.bits())
    }
    fn is_zero(&self) -> bool {
        Cplx::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fdiv(&self, o: &Self) -> Self {
        self / o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn from_rat_like(r: &Rat, like: &Self) -> Self {
        Cplx::from_rat(r, like.bits())
    }
    fn magnitude(&self) -> f64 {
        real_to_f64(&self.abs1())
    }
}
