use pseudocontact::expr::random::{random_expr, well_conditioned};
use pseudocontact::expr::Bindings;
use pseudocontact::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn eval(e: &Expr, s: f64) -> f64 {
    e.eval(&Bindings::s(s)).unwrap()
}

/// Richardson-combined five-point differences at `h` and `h/2`, with the gap
/// between the two estimates.
fn five_point(e: &Expr, s: f64, h: f64) -> (f64, f64) {
    let d = |h: f64| (eval(e, s - 2.0 * h) - 8.0 * eval(e, s - h) + 8.0 * eval(e, s + h) - eval(e, s + 2.0 * h)) / (12.0 * h);
    let (a, b) = (d(h), d(h / 2.0));
    ((64.0 * b - a) / 63.0, (a - b).abs())
}

#[test]
fn random_derivatives_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let (mut checked, mut drawn) = (0, 0);
    while checked < 1000 {
        drawn += 1;
        let e = random_expr(&mut rng, 4);
        let s: f64 = rng.gen_range(-2.0..2.0);
        if !well_conditioned(&e, s, 0.05, 1e4) {
            continue;
        }
        let (fd, gap) = five_point(&e, s, 2e-3);
        if gap > 1e-8 * fd.abs().max(1.0) {
            continue;
        }
        checked += 1;
        let d = eval(&e.derivative(Var::S), s);
        let rel = (d - fd).abs() / d.abs().max(1.0);
        assert!(rel < 1e-7, "{e} at s = {s}: {d} vs {fd}");
    }
    assert!(drawn < 2 * checked, "{drawn} draws for {checked} checks");
}

#[test]
fn random_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 1000 {
        let e = random_expr(&mut rng, 5);
        let s: f64 = rng.gen_range(-2.0..2.0);
        let Ok(v) = e.eval(&Bindings::s(s)) else { continue };
        if !v.is_finite() {
            continue;
        }
        checked += 1;
        let back: Expr = e.to_string().parse().unwrap();
        let w = eval(&back, s);
        assert!((v - w).abs() <= 1e-12 * v.abs().max(1.0), "{e}: {v} vs {w}");
        assert_eq!(back.to_string().parse::<Expr>().unwrap().to_string(), back.to_string());
    }
}

#[test]
fn precedence_and_associativity() {
    let cases = [
        ("2 + 3 * 4", 14.0),
        ("2 ^ 3 ^ 2", 512.0),
        ("-2 ^ 2", -4.0),
        ("(1 - 2) - 3", -4.0),
        ("8 / 4 / 2", 1.0),
        ("2 * -3", -6.0),
        ("1e-3 * 1000", 1.0),
    ];
    for (src, v) in cases {
        let e: Expr = src.parse().unwrap();
        assert!((eval(&e, 0.0) - v).abs() < 1e-15, "{src}");
    }
}

#[test]
fn errors_report_positions() {
    match "sin(s".parse::<Expr>() {
        Err(ExprError::Syntax { pos, .. }) => assert_eq!(pos, 5),
        other => panic!("{other:?}"),
    }
    assert!(matches!("foo(s)".parse::<Expr>(), Err(ExprError::UnknownIdentifier { .. })));
    assert!("1 +".parse::<Expr>().is_err());
    let e: Expr = "ln(s)".parse().unwrap();
    assert!(e.eval(&Bindings::s(-1.0f64)).is_err());
    let e: Expr = "abs(s)".parse().unwrap();
    assert!(e.derivative(Var::S).eval(&Bindings::s(0.0f64)).is_err());
}

#[test]
fn chart_variables() {
    let e: Expr = "x^2 * exp(-2*z) + y".parse().unwrap();
    let b = Bindings::xyz(1.5f64, 0.25, 0.1);
    let v = e.eval(&b).unwrap();
    assert!((v - (2.25 * (-0.2f64).exp() + 0.25)).abs() < 1e-15);
    let dz = e.derivative(Var::Z).eval(&b).unwrap();
    assert!((dz + 4.5 * (-0.2f64).exp()).abs() < 1e-14);
    assert!(e.eval(&Bindings::s(1.0f64)).is_err());
}

proptest! {
    #[test]
    fn literals_round_trip(v in -1e6f64..1e6) {
        let e = Expr::Num(v);
        let back: Expr = e.to_string().parse().unwrap();
        prop_assert_eq!(eval(&back, 0.0), v);
    }

    #[test]
    fn polynomial_derivative(a in -3.0f64..3.0, b in -3.0f64..3.0, s in -2.0f64..2.0) {
        let e: Expr = format!("({a:?})*s^3 + ({b:?})*s").parse().unwrap();
        let d = eval(&e.derivative(Var::S), s);
        prop_assert!((d - (3.0 * a * s * s + b)).abs() < 1e-12);
    }
}
