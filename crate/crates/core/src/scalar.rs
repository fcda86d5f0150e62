//! Scalar rings the representation code is generic over.
//!
//! Everything in the skein model lives in the cyclotomic field Q(A). The same
//! formulas are evaluated either exactly ([`CycloNum`](crate::CycloNum)) or in
//! floating point at the distinguished embedding A = e^{iπ/2r}
//! (`Complex<f32>` / `Complex<f64>`).

use std::fmt::Debug;

use num_complex::{Complex, Complex64};
use num_traits::{Float, FloatConst};

/// A field containing a primitive 4r-th root of unity A.
pub trait Scalar: Clone + Debug + Send + Sync + 'static {
    /// Per-level data needed to build constants (the level itself for the
    /// exact field, the root of unity for floats).
    type Ctx: Copy + Debug + Send + Sync;

    /// The integer r of the level carried by a context.
    fn ctx_r(ctx: Self::Ctx) -> u32;

    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_int(ctx: Self::Ctx, n: i64) -> Self;
    /// A^e.
    fn root_power(ctx: Self::Ctx, e: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
    fn try_inv(&self) -> Option<Self>;
    /// Complex conjugation, A ↦ A^{-1}.
    fn conj(&self) -> Self;
    /// Exact for exact fields; a literal `== 0` test for floats.
    fn is_zero(&self) -> bool;
    fn to_c64(&self) -> Complex64;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|inv| self.mul(&inv))
    }
}

/// Context for floating point evaluation at A = e^{iπ/2r}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCtx<T> {
    pub r: u32,
    pub root: Complex<T>,
}

impl<T: Float + FloatConst> RootCtx<T> {
    pub fn new(r: u32) -> Self {
        let angle = T::PI() / T::from(2 * r).unwrap();
        RootCtx { r, root: Complex::new(angle.cos(), angle.sin()) }
    }
}

impl<T> Scalar for Complex<T>
where
    T: Float + FloatConst + Debug + Send + Sync + 'static,
{
    type Ctx = RootCtx<T>;

    fn ctx_r(ctx: Self::Ctx) -> u32 {
        ctx.r
    }

    fn zero(_: Self::Ctx) -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn one(_: Self::Ctx) -> Self {
        Complex::new(T::one(), T::zero())
    }
    fn from_int(_: Self::Ctx, n: i64) -> Self {
        Complex::new(T::from(n).unwrap(), T::zero())
    }
    fn root_power(ctx: Self::Ctx, e: i64) -> Self {
        // reduce mod 4r first so large exponents stay accurate
        let order = 4 * ctx.r as i64;
        let e = e.rem_euclid(order);
        let angle = T::PI() * T::from(e).unwrap() / T::from(2 * ctx.r).unwrap();
        Complex::new(angle.cos(), angle.sin())
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self = *self + *a * *b;
    }
    fn try_inv(&self) -> Option<Self> {
        if self.re == T::zero() && self.im == T::zero() {
            None
        } else {
            Some(self.inv())
        }
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == T::zero() && self.im == T::zero()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_root_is_primitive() {
        let ctx = RootCtx::<f64>::new(5);
        let a = Complex64::root_power(ctx, 1);
        assert!((a - ctx.root).norm() < 1e-15);
        let full = Complex64::root_power(ctx, 20);
        assert!((full - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let half = Complex64::root_power(ctx, 10);
        assert!((half + Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn single_precision_works_too() {
        let ctx = RootCtx::<f32>::new(4);
        let x = <Complex<f32> as Scalar>::root_power(ctx, 2);
        let y = <Complex<f32> as Scalar>::root_power(ctx, -2);
        let d = x.add(&y);
        assert!((d.re - std::f32::consts::SQRT_2).abs() < 1e-6);
    }
}
