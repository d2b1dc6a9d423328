//! Seeded random expressions in `s`, for property tests of the parser and
//! the differentiator.

use rand::Rng;

use super::{BinOp, Expr, Func, Var};
use crate::expr::Bindings;

const FUNCS: [Func; 9] = [
    Func::Sin,
    Func::Cos,
    Func::Tan,
    Func::Sinh,
    Func::Cosh,
    Func::Exp,
    Func::Ln,
    Func::Sqrt,
    Func::Abs,
];

/// A random tree of at most `depth` levels over `s`, literals, the five binary
/// operators, negation and every elementary function except `sgn`.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.6) {
            Expr::Var(Var::S)
        } else {
            Expr::Num((rng.gen_range(-3.0..3.0f64) * 100.0).round() / 100.0)
        };
    }
    match rng.gen_range(0..8) {
        0 => Expr::Neg(Box::new(random_expr(rng, depth - 1))),
        1 | 2 => Expr::Call(
            FUNCS[rng.gen_range(0..FUNCS.len())],
            Box::new(random_expr(rng, depth - 1)),
        ),
        3 => {
            // small integer or positive literal exponents
            let exp = if rng.gen_bool(0.7) {
                Expr::Num(rng.gen_range(2..4) as f64)
            } else {
                Expr::Num((rng.gen_range(0.2..2.5f64) * 10.0).round() / 10.0)
            };
            Expr::Bin(BinOp::Pow, Box::new(random_expr(rng, depth - 1)), Box::new(exp))
        }
        k => {
            let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div][k - 4];
            Expr::Bin(
                op,
                Box::new(random_expr(rng, depth - 1)),
                Box::new(random_expr(rng, depth - 1)),
            )
        }
    }
}

/// True when `e` evaluates on `[s − w, s + w]` (checked at 33 points) with
/// `|e| ≤ bound` and its symbolic derivative evaluates at `s`.
pub fn well_conditioned(e: &Expr, s: f64, w: f64, bound: f64) -> bool {
    let ok = |v: Result<f64, _>| matches!(v, Ok(v) if v.is_finite() && v.abs() <= bound);
    (0..33).all(|i| ok(e.eval(&Bindings::s(s - w + w * i as f64 / 16.0))))
        && e.derivative(Var::S).eval(&Bindings::s(s)).is_ok_and(f64::is_finite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_expr(&mut ChaCha8Rng::seed_from_u64(3), 5).to_string();
        let b = random_expr(&mut ChaCha8Rng::seed_from_u64(3), 5).to_string();
        assert_eq!(a, b);
    }
}
