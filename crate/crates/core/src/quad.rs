//! Composite Simpson quadrature.

use crate::error::{GeomError, Result};
use crate::scalar::{lit, Real};

/// Composite Simpson rule with `panels` (rounded up to even) subintervals.
pub fn simpson<T: Real>(f: impl Fn(T) -> Result<T>, a: T, b: T, panels: usize) -> Result<T> {
    let n = (panels.max(2) + 1) & !1;
    let h = (b - a) / lit(n as f64);
    let mut acc = f(a)? + f(b)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += lit::<T>(w) * f(a + h * lit(i as f64))?;
    }
    Ok(acc * h / lit(3.0))
}

/// Result of [`simpson_converged`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    /// `|I(4n) − I(n)|` at the accepted level.
    pub error_estimate: T,
    pub panels: usize,
}

/// Simpson with successive 4× refinement until two levels agree to `tol`
/// (relative to `max(1, |I|)`).
pub fn simpson_converged<T: Real>(
    f: impl Fn(T) -> Result<T>,
    a: T,
    b: T,
    tol: T,
) -> Result<Quadrature<T>> {
    let mut n = 16;
    let mut coarse = simpson(&f, a, b, n)?;
    loop {
        let fine = simpson(&f, a, b, 4 * n)?;
        let err = (fine - coarse).abs();
        if err <= tol * T::one().max(fine.abs()) || n >= 1 << 18 {
            return Ok(Quadrature {
                value: fine,
                error_estimate: err,
                panels: 4 * n,
            });
        }
        n *= 4;
        coarse = fine;
    }
}

/// Running integral `∫_a^s f` on a uniform table of Simpson cells.
///
/// Each cell is integrated with the three-point rule; evaluation between nodes
/// adds a two-panel Simpson piece from the nearest node to the left.
#[derive(Debug, Clone)]
pub struct CumulativeSimpson<T> {
    start: T,
    step: T,
    values: Vec<T>,
}

impl<T: Real> CumulativeSimpson<T> {
    pub fn new(f: &impl Fn(T) -> Result<T>, a: T, b: T, cells: usize, offset: T) -> Result<Self> {
        if !(b > a) || cells == 0 {
            return Err(GeomError::InvalidGrid(format!(
                "cumulative table needs a < b and cells > 0 (a = {a}, b = {b})"
            )));
        }
        let step = (b - a) / lit(cells as f64);
        let mut values = Vec::with_capacity(cells + 1);
        let mut acc = offset;
        values.push(acc);
        let mut left = f(a)?;
        for i in 0..cells {
            let x0 = a + step * lit(i as f64);
            let x1 = if i + 1 == cells { b } else { x0 + step };
            let mid = f((x0 + x1) * lit(0.5))?;
            let right = f(x1)?;
            acc += (x1 - x0) / lit(6.0) * (left + lit::<T>(4.0) * mid + right);
            values.push(acc);
            left = right;
        }
        Ok(CumulativeSimpson {
            start: a,
            step,
            values,
        })
    }

    pub fn end(&self) -> T {
        self.start + self.step * lit((self.values.len() - 1) as f64)
    }

    /// Integral over the whole table.
    pub fn total(&self) -> T {
        self.values[self.values.len() - 1]
    }

    pub fn nodes(&self) -> usize {
        self.values.len()
    }

    /// Integral from the table start to `s` (plus the construction offset).
    pub fn at(&self, f: &impl Fn(T) -> Result<T>, s: T) -> Result<T> {
        let last = self.values.len() - 1;
        let pos = ((s - self.start) / self.step).floor();
        let i = pos.to_usize().map(|i| i.min(last)).unwrap_or(0);
        let x0 = self.start + self.step * lit(i as f64);
        if s == x0 {
            return Ok(self.values[i]);
        }
        let piece = simpson(f, x0, s, 2)?;
        Ok(self.values[i] + piece)
    }
}
