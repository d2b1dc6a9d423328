//! A small expression language for scalar functions of `s` or `(x, y, z)`.
//!
//! Expressions are parsed into an immutable AST that can be evaluated in any
//! [`Real`](crate::Real) type and differentiated symbolically. Derivatives are
//! built with constant folding only, so their trees may grow with the order.

mod deriv;
mod eval;
mod parse;
pub mod random;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use eval::Bindings;
pub use parse::parse;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("variable `{0}` is not bound")]
    Unbound(Var),
    #[error("domain error in `{expr}`: {msg}")]
    Domain { expr: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S,
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::S, Var::X, Var::Y, Var::Z];

    /// Chart coordinate variables in index order.
    pub const CHART: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "s" => Var::S,
            "x" => Var::X,
            "y" => Var::Y,
            "z" => Var::Z,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Exp,
    Ln,
    Sqrt,
    Abs,
    /// Sign of the argument; appears in derivatives of `abs` and is undefined at 0.
    Sgn,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Sgn => "sgn",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "sgn" => Func::Sgn,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

/// Expression tree. Literals are stored as `f64` and converted on evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Self {
        Expr::Num(v)
    }

    pub fn var(v: Var) -> Self {
        Expr::Var(v)
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Expr::Num(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_num() == Some(0.0)
    }

    pub fn is_one(&self) -> bool {
        self.as_num() == Some(1.0)
    }

    pub fn depends_on(&self, var: Var) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(v) => *v == var,
            Expr::Neg(a) | Expr::Call(_, a) => a.depends_on(var),
            Expr::Bin(_, a, b) => a.depends_on(var) || b.depends_on(var),
        }
    }

    /// Free variables in canonical order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.depends_on(*v)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.variables().is_empty()
    }

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Num(v) => Expr::Num(-v),
            Expr::Neg(inner) => *inner,
            other => Expr::Neg(Box::new(other)),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        fold(BinOp::Add, a, b, |x, y| x + y)
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        if b.is_zero() {
            return a;
        }
        if a.is_zero() {
            return Expr::neg(b);
        }
        fold(BinOp::Sub, a, b, |x, y| x - y)
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        if a.is_zero() || b.is_zero() {
            return Expr::Num(0.0);
        }
        if a.is_one() {
            return b;
        }
        if b.is_one() {
            return a;
        }
        fold(BinOp::Mul, a, b, |x, y| x * y)
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        if a.is_zero() && !b.is_zero() {
            return Expr::Num(0.0);
        }
        if b.is_one() {
            return a;
        }
        fold(BinOp::Div, a, b, |x, y| x / y)
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        if b.is_one() {
            return a;
        }
        if b.is_zero() {
            return Expr::Num(1.0);
        }
        fold(BinOp::Pow, a, b, f64::powf)
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::Call(f, Box::new(a))
    }
}

fn fold(op: BinOp, a: Expr, b: Expr, f: impl Fn(f64, f64) -> f64) -> Expr {
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        let v = f(x, y);
        if v.is_finite() {
            return Expr::Num(v);
        }
    }
    Expr::Bin(op, Box::new(a), Box::new(b))
}

/// Prints a fully parenthesized form that re-parses to an equivalent tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if *v < 0.0 => write!(f, "(-{:?})", -v),
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
