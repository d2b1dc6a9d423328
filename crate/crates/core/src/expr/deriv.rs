use super::{BinOp, Expr, Func, Var};

impl Expr {
    /// Exact symbolic derivative with respect to `var`.
    pub fn derivative(&self, var: Var) -> Expr {
        match self {
            Expr::Num(_) => Expr::num(0.0),
            Expr::Var(v) => Expr::num(if *v == var { 1.0 } else { 0.0 }),
            Expr::Neg(a) => Expr::neg(a.derivative(var)),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.as_ref(), b.as_ref());
                match op {
                    BinOp::Add => Expr::add(a.derivative(var), b.derivative(var)),
                    BinOp::Sub => Expr::sub(a.derivative(var), b.derivative(var)),
                    BinOp::Mul => Expr::add(
                        Expr::mul(a.derivative(var), b.clone()),
                        Expr::mul(a.clone(), b.derivative(var)),
                    ),
                    BinOp::Div => Expr::sub(
                        Expr::div(a.derivative(var), b.clone()),
                        Expr::div(
                            Expr::mul(a.clone(), b.derivative(var)),
                            Expr::pow(b.clone(), Expr::num(2.0)),
                        ),
                    ),
                    BinOp::Pow if !b.depends_on(var) => Expr::mul(
                        Expr::mul(
                            b.clone(),
                            Expr::pow(a.clone(), Expr::sub(b.clone(), Expr::num(1.0))),
                        ),
                        a.derivative(var),
                    ),
                    // d(a^b) = a^b (b' ln a + b a'/a)
                    BinOp::Pow => Expr::mul(
                        self.clone(),
                        Expr::add(
                            Expr::mul(b.derivative(var), Expr::call(Func::Ln, a.clone())),
                            Expr::div(Expr::mul(b.clone(), a.derivative(var)), a.clone()),
                        ),
                    ),
                }
            }
            Expr::Call(f, a) => {
                let inner = a.derivative(var);
                if inner.is_zero() {
                    return Expr::num(0.0);
                }
                let a = a.as_ref().clone();
                let outer = match f {
                    Func::Sin => Expr::call(Func::Cos, a),
                    Func::Cos => Expr::neg(Expr::call(Func::Sin, a)),
                    Func::Tan => Expr::div(
                        Expr::num(1.0),
                        Expr::pow(Expr::call(Func::Cos, a), Expr::num(2.0)),
                    ),
                    Func::Sinh => Expr::call(Func::Cosh, a),
                    Func::Cosh => Expr::call(Func::Sinh, a),
                    Func::Exp => Expr::call(Func::Exp, a),
                    Func::Ln => Expr::div(Expr::num(1.0), a),
                    Func::Sqrt => Expr::div(
                        Expr::num(1.0),
                        Expr::mul(Expr::num(2.0), Expr::call(Func::Sqrt, a)),
                    ),
                    Func::Abs => Expr::call(Func::Sgn, a),
                    Func::Sgn => return Expr::num(0.0),
                };
                Expr::mul(outer, inner)
            }
        }
    }

    /// Repeated derivative; `order == 0` returns a clone.
    pub fn nth_derivative(&self, var: Var, order: usize) -> Expr {
        (0..order).fold(self.clone(), |e, _| e.derivative(var))
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, Bindings, Var};

    fn five_point(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
    }

    #[test]
    fn log_derivative_matches_upsilon2_velocity() {
        let e = parse("-ln(s)").unwrap();
        let d = e.derivative(Var::S);
        let v: f64 = d.eval(&Bindings::s(2.0)).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
        let fd = five_point(|s| e.eval(&Bindings::s(s)).unwrap(), 2.0, 1e-3);
        assert!((fd - v).abs() < 1e-9);
    }

    #[test]
    fn second_derivative_of_sine() {
        let e = parse("sin(s)").unwrap().nth_derivative(Var::S, 2);
        for s in [-1.0, 0.3, 2.0] {
            let v: f64 = e.eval(&Bindings::s(s)).unwrap();
            assert!((v + s.sin()).abs() < 1e-15);
        }
        assert_eq!(e, parse("-sin(s)").unwrap());
    }

    #[test]
    fn partials_ignore_other_variables() {
        let e = parse("x^2*y + exp(2*z)").unwrap();
        let dx = e.derivative(Var::X);
        let dz = e.derivative(Var::Z);
        let b = Bindings::xyz(1.5, 2.0, 0.25);
        assert!((dx.eval(&b).unwrap() - 6.0f64).abs() < 1e-14);
        assert!((dz.eval(&b).unwrap() - 2.0 * 0.5f64.exp()).abs() < 1e-14);
        assert!(e.derivative(Var::S).is_zero());
    }

    #[test]
    fn abs_derivative_errors_at_zero() {
        let d = parse("abs(x)").unwrap().derivative(Var::X);
        assert_eq!(d.eval(&Bindings::xyz(-2.0f64, 0.0, 0.0)).unwrap(), -1.0);
        assert!(d.eval(&Bindings::xyz(0.0f64, 0.0, 0.0)).is_err());
    }

    #[test]
    fn variable_exponent() {
        let e = parse("x^x").unwrap();
        let d = e.derivative(Var::X);
        let x = 1.7f64;
        let want = x.powf(x) * (x.ln() + 1.0);
        assert!((d.eval(&Bindings::xyz(x, 0.0, 0.0)).unwrap() - want).abs() < 1e-13);
    }
}
