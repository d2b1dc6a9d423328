#![allow(dead_code)]

use std::sync::Arc;

use pseudocontact::curve::{grid, reparametrize_arclength, ReparamCurve};
use pseudocontact::manifold::AlmostContactStructure;
use pseudocontact::*;

pub type Structure = Arc<dyn AlmostContactStructure<f64>>;

pub fn structure(name: &str, eps: f64) -> Structure {
    Arc::from(builtin_manifold::<f64>(name, eps).unwrap())
}

/// A non-Legendre unit-speed curve in N³ (ε = +1).
pub fn generic_n3() -> ReparamCurve<f64> {
    let base = ExprCurve::new(
        "generic-n3",
        ["1.2 + 0.3*s + 0.1*sin(2*s)", "0.1 + 0.2*cos(s)", "0.25*s"],
        (-1.5, 1.5),
    )
    .unwrap();
    reparametrize_arclength(structure("n3", 1.0), Arc::new(base), 0.0, &grid(-1.4, 1.4, 401).unwrap())
        .unwrap()
}

/// A non-Legendre unit-speed curve in Q³ (ε = +1).
pub fn generic_q3() -> ReparamCurve<f64> {
    let base = ExprCurve::new(
        "generic-q3",
        ["1.4 + 0.4*cos(s)", "0.3*sin(s)", "0.6*s"],
        (-1.5, 1.5),
    )
    .unwrap();
    reparametrize_arclength(structure("q3", 1.0), Arc::new(base), 0.0, &grid(-1.4, 1.4, 401).unwrap())
        .unwrap()
}

/// `n` samples strictly inside the curve's domain.
pub fn inner_grid<C: Curve<f64> + ?Sized>(c: &C, n: usize) -> Vec<f64> {
    let (lo, hi) = c.domain();
    let pad = 1e-3 * (hi - lo);
    grid(lo + pad, hi - pad, n).unwrap()
}

/// The curve generated from `ψ(s) = s` on `(0.1, 3)`.
pub fn psi_s_curve() -> GeneratedLegendre64 {
    let psi = AngleFunction::parse("s", 0.0).unwrap();
    generate_legendre_q3(&psi, (0.1, 3.0), 2048).unwrap()
}
