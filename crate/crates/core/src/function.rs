//! Scalar functions of one parameter with derivatives up to third order.

use std::sync::Arc;

use crate::diff::along;
use crate::error::{GeomError, Result};
use crate::expr::{Bindings, Expr, Var};
use crate::scalar::{lit, Real};

pub trait ScalarFunction<T: Real>: Send + Sync {
    /// Open interval of definition.
    fn domain(&self) -> (T, T) {
        (T::neg_infinity(), T::infinity())
    }

    fn value(&self, s: T) -> Result<T>;

    /// Derivative of order 1 to 3; defaults to five-point differences.
    fn derivative(&self, s: T, order: u8) -> Result<T> {
        let (lo, hi) = self.domain();
        let h = T::curve_step();
        let f = |t: T| self.value(t);
        match order {
            0 => self.value(s),
            1 | 2 => along(f, s, h, lo, hi, order),
            3 => along(|t| along(f, t, h, lo, hi, 2), s, h, lo, hi, 1),
            _ => Err(GeomError::InvalidGrid(format!("derivative order {order} unsupported"))),
        }
    }
}

impl<T: Real, F: ScalarFunction<T> + ?Sized> ScalarFunction<T> for Arc<F> {
    fn domain(&self) -> (T, T) {
        (**self).domain()
    }
    fn value(&self, s: T) -> Result<T> {
        (**self).value(s)
    }
    fn derivative(&self, s: T, order: u8) -> Result<T> {
        (**self).derivative(s, order)
    }
}

impl<T: Real, F: ScalarFunction<T> + ?Sized> ScalarFunction<T> for &F {
    fn domain(&self) -> (T, T) {
        (**self).domain()
    }
    fn value(&self, s: T) -> Result<T> {
        (**self).value(s)
    }
    fn derivative(&self, s: T, order: u8) -> Result<T> {
        (**self).derivative(s, order)
    }
}

/// An expression in `s` with symbolic derivatives.
#[derive(Debug, Clone)]
pub struct ExprFunction {
    chain: [Expr; 4],
    domain: (f64, f64),
}

impl ExprFunction {
    pub fn new(expr: Expr, domain: (f64, f64)) -> Result<Self> {
        if let Some(v) = expr.variables().into_iter().find(|v| *v != Var::S) {
            return Err(GeomError::CurveData(format!(
                "`{expr}` uses {v}; a function of the curve parameter may only use s"
            )));
        }
        let d1 = expr.derivative(Var::S);
        let d2 = d1.derivative(Var::S);
        let d3 = d2.derivative(Var::S);
        Ok(ExprFunction {
            chain: [expr, d1, d2, d3],
            domain,
        })
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::new(src.parse()?, (f64::NEG_INFINITY, f64::INFINITY))
    }

    pub fn expr(&self) -> &Expr {
        &self.chain[0]
    }
}

impl<T: Real> ScalarFunction<T> for ExprFunction {
    fn domain(&self) -> (T, T) {
        (lit(self.domain.0), lit(self.domain.1))
    }

    fn value(&self, s: T) -> Result<T> {
        Ok(self.chain[0].eval(&Bindings::s(s))?)
    }

    fn derivative(&self, s: T, order: u8) -> Result<T> {
        let e = self
            .chain
            .get(order as usize)
            .ok_or_else(|| GeomError::InvalidGrid(format!("derivative order {order} unsupported")))?;
        Ok(e.eval(&Bindings::s(s))?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant<T>(pub T);

impl<T: Real> ScalarFunction<T> for Constant<T> {
    fn value(&self, _s: T) -> Result<T> {
        Ok(self.0)
    }

    fn derivative(&self, s: T, order: u8) -> Result<T> {
        Ok(if order == 0 { self.value(s)? } else { T::zero() })
    }
}

/// A closure differentiated numerically on `domain`.
pub struct FnScalar<F> {
    f: F,
    domain: (f64, f64),
}

impl<F> FnScalar<F> {
    pub fn new(f: F, domain: (f64, f64)) -> Self {
        FnScalar { f, domain }
    }
}

impl<T: Real, F: Fn(T) -> Result<T> + Send + Sync> ScalarFunction<T> for FnScalar<F> {
    fn domain(&self) -> (T, T) {
        (lit(self.domain.0), lit(self.domain.1))
    }

    fn value(&self, s: T) -> Result<T> {
        (self.f)(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_derivatives_are_exact() {
        let f = ExprFunction::parse("sin(s)^2").unwrap();
        let s = 0.7f64;
        assert!((f.derivative(s, 1).unwrap() - (2.0 * s).sin()).abs() < 1e-15);
        assert!((f.derivative(s, 3).unwrap() + 4.0 * (2.0 * s).sin()).abs() < 1e-14);
        assert!(ExprFunction::parse("x + s").is_err());
    }

    #[test]
    fn numeric_default_matches() {
        let f = FnScalar::new(|s: f64| Ok(s.exp()), (-1.0, 1.0));
        for (order, tol) in [(1u8, 1e-10), (2, 1e-8), (3, 1e-5)] {
            let d = f.derivative(0.2, order).unwrap();
            assert!((d - 0.2f64.exp()).abs() < tol, "{order}");
        }
        let c = Constant(2.0f64);
        assert_eq!(c.derivative(3.0, 2).unwrap(), 0.0);
    }
}
