use num_traits::Float;

use super::{BinOp, Expr, ExprError, Func, Var};
use crate::scalar::{lit, Real};

/// Values for the free variables of an expression.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Bindings<T> {
    pub s: Option<T>,
    pub x: Option<T>,
    pub y: Option<T>,
    pub z: Option<T>,
}

impl<T: Real> Bindings<T> {
    pub fn s(s: T) -> Self {
        Bindings {
            s: Some(s),
            x: None,
            y: None,
            z: None,
        }
    }

    pub fn xyz(x: T, y: T, z: T) -> Self {
        Bindings {
            s: None,
            x: Some(x),
            y: Some(y),
            z: Some(z),
        }
    }

    pub fn point(p: &nalgebra::Vector3<T>) -> Self {
        Self::xyz(p[0], p[1], p[2])
    }

    pub fn get(&self, v: Var) -> Option<T> {
        match v {
            Var::S => self.s,
            Var::X => self.x,
            Var::Y => self.y,
            Var::Z => self.z,
        }
    }

    pub fn with(mut self, v: Var, value: T) -> Self {
        match v {
            Var::S => self.s = Some(value),
            Var::X => self.x = Some(value),
            Var::Y => self.y = Some(value),
            Var::Z => self.z = Some(value),
        }
        self
    }
}

impl Expr {
    /// Evaluates the expression. Domain violations (log of a non-positive
    /// number, division by zero, non-finite intermediate results) are reported
    /// with the offending sub-expression instead of producing NaN.
    pub fn eval<T: Real>(&self, b: &Bindings<T>) -> Result<T, ExprError> {
        let v = match self {
            Expr::Num(v) => lit(*v),
            Expr::Var(var) => b.get(*var).ok_or(ExprError::Unbound(*var))?,
            Expr::Neg(a) => -a.eval(b)?,
            Expr::Bin(op, l, r) => {
                let (x, y) = (l.eval(b)?, r.eval(b)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == T::zero() {
                            return Err(self.domain("division by zero"));
                        }
                        x / y
                    }
                    BinOp::Pow => self.eval_pow(x, y)?,
                }
            }
            Expr::Call(f, a) => {
                let x = a.eval(b)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => x.tan(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Exp => x.exp(),
                    Func::Ln => {
                        if x <= T::zero() {
                            return Err(self.domain("logarithm of a non-positive number"));
                        }
                        x.ln()
                    }
                    Func::Sqrt => {
                        if x < T::zero() {
                            return Err(self.domain("square root of a negative number"));
                        }
                        x.sqrt()
                    }
                    Func::Abs => x.abs(),
                    Func::Sgn => {
                        if x == T::zero() {
                            return Err(self.domain("derivative of abs undefined at 0"));
                        }
                        x.signum()
                    }
                }
            }
        };
        if !Float::is_finite(v) {
            return Err(self.domain("non-finite result"));
        }
        Ok(v)
    }

    fn eval_pow<T: Real>(&self, base: T, exp: T) -> Result<T, ExprError> {
        let integral = exp == exp.round() && exp.abs() <= lit(1e9);
        if integral {
            if base == T::zero() && exp < T::zero() {
                return Err(self.domain("zero raised to a negative power"));
            }
            let n = exp.to_i32().expect("bounded integral exponent");
            return Ok(base.powi(n));
        }
        if base <= T::zero() {
            return Err(self.domain("non-integer power of a non-positive base"));
        }
        Ok(base.powf(exp))
    }

    fn domain(&self, msg: &str) -> ExprError {
        ExprError::Domain {
            expr: self.to_string(),
            msg: msg.to_string(),
        }
    }
}
