//! Finite-difference helpers.

use std::ops::{Add, Mul, Sub};

use crate::error::Result;
use crate::linalg::Point;
use crate::scalar::{lit, Real};

/// Values that can be combined linearly in a difference stencil.
pub trait Linear<T>: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> {}

impl<T, V> Linear<T> for V where V: Clone + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V> {}

/// Central difference with one Richardson level, `(4 D(h/2) − D(h)) / 3`.
pub fn richardson<T, V, F>(f: F, x: T, h: T) -> Result<V>
where
    T: Real,
    V: Linear<T>,
    F: Fn(T) -> Result<V>,
{
    let central = |h: T| -> Result<V> { Ok((f(x + h)? - f(x - h)?) * (T::one() / (h + h))) };
    let coarse = central(h)?;
    let fine = central(h * lit(0.5))?;
    Ok((fine * lit(4.0) - coarse) * lit(1.0 / 3.0))
}

/// `∂_k f(p)` with step `h · max(1, |p_k|)`.
pub fn chart_partial<T, V, F>(f: F, p: &Point<T>, k: usize, h: T) -> Result<V>
where
    T: Real,
    V: Linear<T>,
    F: Fn(&Point<T>) -> Result<V>,
{
    let step = h * T::one().max(p[k].abs());
    richardson(
        |t| {
            let mut q = *p;
            q[k] = t;
            f(&q)
        },
        p[k],
        step,
    )
}

/// Five-point derivative of order 1 or 2 along a parameter with open domain `(lo, hi)`.
///
/// Central stencils are used when they fit, one-sided five-point stencils near
/// the ends, and the step is halved if neither fits.
pub fn along<T, V, F>(f: F, s: T, h: T, lo: T, hi: T, order: u8) -> Result<V>
where
    T: Real,
    V: Linear<T>,
    F: Fn(T) -> Result<V>,
{
    let mut h = h;
    for _ in 0..40 {
        let fits = |a: T, b: T| a > lo && b < hi;
        if fits(s - h - h, s + h + h) {
            let (m2, m1, p1, p2) = (f(s - h - h)?, f(s - h)?, f(s + h)?, f(s + h + h)?);
            return Ok(match order {
                1 => (m2 - p2 + (p1 - m1) * lit(8.0)) * (T::one() / (lit::<T>(12.0) * h)),
                _ => {
                    let c = f(s)?;
                    ((m1 + p1) * lit(16.0) - m2 - p2 - c * lit(30.0))
                        * (T::one() / (lit::<T>(12.0) * h * h))
                }
            });
        }
        let dir = if fits(s, s + lit::<T>(4.0) * h) {
            Some(T::one())
        } else if fits(s - lit::<T>(4.0) * h, s) {
            Some(-T::one())
        } else {
            None
        };
        if let Some(d) = dir {
            let step = h * d;
            let vals: Vec<V> = (0..5)
                .map(|k| f(s + step * lit(k as f64)))
                .collect::<Result<_>>()?;
            let c: [f64; 5] = match order {
                1 => [-25.0, 48.0, -36.0, 16.0, -3.0],
                _ => [35.0, -104.0, 114.0, -56.0, 11.0],
            };
            let mut acc = vals[0].clone() * lit(c[0]);
            for k in 1..5 {
                acc = acc + vals[k].clone() * lit(c[k]);
            }
            let denom = match order {
                1 => lit::<T>(12.0) * step,
                _ => lit::<T>(12.0) * h * h,
            };
            return Ok(acc * (T::one() / denom));
        }
        h *= lit(0.5);
    }
    Err(crate::error::GeomError::ParameterOutsideDomain(s.to_f64_lossy()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector3;

    #[test]
    fn richardson_accuracy() {
        let d: f64 = richardson(|x: f64| Ok(x.exp()), 0.3, 1e-3).unwrap();
        assert!((d - 0.3f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn partial_of_vector_field() {
        let p = Vector3::new(1.0, 2.0, -0.5);
        let d: Vector3<f64> = chart_partial(
            |q: &Vector3<f64>| Ok(Vector3::new(q[1] * q[1], q[0] * q[1], (2.0 * q[2]).exp())),
            &p,
            1,
            1e-5,
        )
        .unwrap();
        assert!((d - Vector3::new(4.0, 1.0, 0.0)).abs().max() < 1e-9);
    }

    #[test]
    fn one_sided_near_boundary() {
        // domain (0, 1); s close to the left end forces a forward stencil
        let f = |s: f64| Ok(s.sin());
        let d1: f64 = along(f, 1e-4, 1e-3, 0.0, 1.0, 1).unwrap();
        let d2: f64 = along(f, 1.0 - 1e-4, 1e-3, 0.0, 1.0, 2).unwrap();
        assert!((d1 - 1e-4f64.cos()).abs() < 1e-9);
        assert!((d2 + (1.0 - 1e-4f64).sin()).abs() < 1e-5);
        let c: f64 = along(f, 0.5, 1e-3, 0.0, 1.0, 2).unwrap();
        assert!((c + 0.5f64.sin()).abs() < 1e-8);
    }
}
