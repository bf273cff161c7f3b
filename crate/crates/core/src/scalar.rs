//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar the simulator is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance used for validation when the caller does not supply one.
    ///
    /// `f64` uses 1e-12; `f32` cannot resolve that, so it gets 1e-5.
    fn default_tolerance() -> Self;

    /// Lossless for `f64`, rounding for `f32`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_tolerance() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn default_tolerance() -> Self {
        1e-5
    }
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
///
/// A single point yields `[start]`.
pub fn linspace<T: Real>(start: T, stop: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = T::from_usize(count - 1).unwrap();
            (0..count)
                .map(|k| {
                    if k == count - 1 {
                        stop
                    } else {
                        start + (stop - start) * T::from_usize(k).unwrap() / last
                    }
                })
                .collect()
        }
    }
}
