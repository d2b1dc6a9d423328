//! Legendre curves: the two explicit curves in N³ and the angle-function
//! generator in Q³.

use nalgebra::Vector3;

use crate::curve::{check_parameter, Curve, ExprCurve, Jet};
use crate::error::{GeomError, Result};
use crate::expr::{Bindings, Expr, Var};
use crate::linalg::Point;
use crate::quad::{simpson_converged, CumulativeSimpson};
use crate::scalar::{lit, Real};

/// `upsilon1 = (1, s, 0)` on ℝ or `upsilon2 = (−ln s, 1/2, ln s)` on `s > 0`.
pub fn builtin_legendre(name: &str) -> Result<ExprCurve> {
    match name.to_ascii_lowercase().as_str() {
        "upsilon1" => ExprCurve::new("upsilon1", ["1", "s", "0"], (f64::NEG_INFINITY, f64::INFINITY)),
        "upsilon2" => ExprCurve::new("upsilon2", ["-ln(s)", "1/2", "ln(s)"], (0.0, f64::INFINITY)),
        other => Err(GeomError::UnknownCurve(other.to_string())),
    }
}

/// Angle `ψ(s)` of the unit tangent of the planar projection, with base point
/// `s0` where `μ²` vanishes.
#[derive(Debug, Clone)]
pub struct AngleFunction {
    chain: [Expr; 3],
    pub s0: f64,
}

impl AngleFunction {
    pub fn new(psi: Expr, s0: f64) -> Result<Self> {
        if let Some(v) = psi.variables().into_iter().find(|v| *v != Var::S) {
            return Err(GeomError::CurveData(format!(
                "angle function `{psi}` uses {v}; only s is allowed"
            )));
        }
        let d1 = psi.derivative(Var::S);
        let d2 = d1.derivative(Var::S);
        Ok(AngleFunction {
            chain: [psi, d1, d2],
            s0,
        })
    }

    pub fn parse(src: &str, s0: f64) -> Result<Self> {
        Self::new(src.parse()?, s0)
    }

    pub fn expr(&self) -> &Expr {
        &self.chain[0]
    }

    /// `(ψ, ψ′, ψ″)` at `s`.
    pub fn jet<T: Real>(&self, s: T) -> Result<[T; 3]> {
        let b = Bindings::s(s);
        Ok([
            self.chain[0].eval(&b)?,
            self.chain[1].eval(&b)?,
            self.chain[2].eval(&b)?,
        ])
    }

    /// `μ²(s) = 2∫_{s0}^{s} cos ψ` by converged Simpson quadrature.
    pub fn mu2<T: Real>(&self, s: T) -> Result<T> {
        let f = |t: T| Ok(self.chain[0].eval(&Bindings::s(t))?.cos());
        let q = simpson_converged(f, lit(self.s0), s, lit(1e-13))?;
        Ok(q.value * lit(2.0))
    }
}

/// A Legendre curve in Q³ generated from an angle function:
/// `υ₁ = μ`, `υ₂ = ∫ μ⁻¹ sin ψ`, `υ₃ = 2∫ sin ψ`, with `υ₂ = υ₃ = 0` at the
/// start of the interval.
#[derive(Debug, Clone)]
pub struct GeneratedLegendre<T: Real> {
    label: String,
    psi: AngleFunction,
    interval: (T, T),
    cos_table: CumulativeSimpson<T>,
    cos_at_start: T,
    y_table: CumulativeSimpson<T>,
    z_table: CumulativeSimpson<T>,
}

/// Smallest number of Simpson cells used for the generator tables.
const MIN_CELLS: usize = 2048;

impl<T: Real> GeneratedLegendre<T> {
    pub fn psi(&self) -> &AngleFunction {
        &self.psi
    }

    pub fn interval(&self) -> (T, T) {
        self.interval
    }

    fn cos_psi(&self, t: T) -> Result<T> {
        Ok(self.psi.chain[0].eval(&Bindings::s(t))?.cos())
    }

    fn sin_psi(&self, t: T) -> Result<T> {
        Ok(self.psi.chain[0].eval(&Bindings::s(t))?.sin())
    }

    /// `μ²(s)`.
    pub fn mu2(&self, s: T) -> Result<T> {
        let c = self.cos_table.at(&|t| self.cos_psi(t), s)? - self.cos_at_start;
        Ok(c * lit(2.0))
    }

    fn y_integrand(&self, t: T) -> Result<T> {
        Ok(self.sin_psi(t)? / self.mu2(t)?.sqrt())
    }

    /// `(κ, τ) = (ψ′ + sin ψ / μ², 1/μ²)`.
    pub fn kappa_tau(&self, s: T) -> Result<KappaTauK2<T>> {
        k2_values(&self.psi, self.mu2(s)?, s)
    }
}

/// Builds the generator tables on `interval`, refining until doubling the
/// cell count changes the end values by less than `1e-12`.
pub fn generate_legendre_q3<T: Real>(
    psi: &AngleFunction,
    interval: (T, T),
    cells: usize,
) -> Result<GeneratedLegendre<T>> {
    let (a, b) = interval;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(GeomError::InvalidGrid(format!("bad interval ({a}, {b})")));
    }
    let s0: T = lit(psi.s0);
    if s0 > a && s0 < b {
        // μ² vanishes at s0
        return Err(GeomError::MuNonPositive {
            s: psi.s0,
            mu2: 0.0,
        });
    }
    let mut cells = cells.max(MIN_CELLS);
    let mut previous: Option<[T; 3]> = None;
    loop {
        let g = build(psi, interval, cells)?;
        let ends = [g.mu2(b)?, g.y_table.total(), g.z_table.total()];
        if let Some(p) = previous {
            let change = (0..3).fold(T::zero(), |m, i| m.max((ends[i] - p[i]).abs()));
            if change < lit(1e-12) || cells >= 1 << 20 {
                return Ok(g);
            }
        }
        previous = Some(ends);
        cells *= 2;
    }
}

fn build<T: Real>(psi: &AngleFunction, interval: (T, T), cells: usize) -> Result<GeneratedLegendre<T>> {
    let (a, b) = interval;
    let s0: T = lit(psi.s0);
    let (lo, hi) = (s0.min(a), s0.max(b));
    let cos = |t: T| Ok(psi.chain[0].eval(&Bindings::s(t))?.cos());
    let sin = |t: T| Ok(psi.chain[0].eval(&Bindings::s(t))?.sin());
    let span_cells = ((hi - lo) / (b - a) * lit(cells as f64))
        .to_usize()
        .unwrap_or(cells)
        .max(cells);
    let cos_table = CumulativeSimpson::new(&cos, lo, hi, span_cells, T::zero())?;
    let cos_at_start = cos_table.at(&cos, s0)?;
    let mut g = GeneratedLegendre {
        label: format!("k2[{}]", psi.expr()),
        psi: psi.clone(),
        interval,
        cos_table,
        cos_at_start,
        y_table: CumulativeSimpson::new(&|_| Ok(T::zero()), a, b, 1, T::zero())?,
        z_table: CumulativeSimpson::new(&sin, a, b, cells, T::zero())?,
    };
    // positivity of μ² on the closed interval, checked at every table node
    let step = (b - a) / lit(cells as f64);
    for i in 0..=cells {
        let s = if i == cells { b } else { a + step * lit(i as f64) };
        let m2 = g.mu2(s)?;
        if !(m2 > T::zero()) {
            return Err(GeomError::MuNonPositive {
                s: s.to_f64_lossy(),
                mu2: m2.to_f64_lossy(),
            });
        }
    }
    let yf = |t: T| g.y_integrand(t);
    let y_table = CumulativeSimpson::new(&yf, a, b, cells, T::zero())?;
    g.y_table = y_table;
    Ok(g)
}

impl<T: Real> Curve<T> for GeneratedLegendre<T> {
    fn label(&self) -> &str {
        &self.label
    }

    fn domain(&self) -> (T, T) {
        self.interval
    }

    fn position(&self, s: T) -> Result<Point<T>> {
        check_parameter(self, s)?;
        Ok(Vector3::new(
            self.mu2(s)?.sqrt(),
            self.y_table.at(&|t| self.y_integrand(t), s)?,
            self.z_table.at(&|t| self.sin_psi(t), s)? * lit(2.0),
        ))
    }

    fn jet(&self, s: T) -> Result<Jet<T>> {
        let position = self.position(s)?;
        let [psi, p1, p2] = self.psi.jet(s)?;
        let mu = position[0];
        let (sn, cs) = (psi.sin(), psi.cos());
        let two: T = lit(2.0);
        let three: T = lit(3.0);
        let mu_p = cs / mu;
        let (m1, m2, m3, m4) = (mu, mu * mu, mu * mu * mu, mu * mu * mu * mu);
        let d1 = Vector3::new(cs / m1, sn / m1, two * sn);
        let d2 = Vector3::new(
            -p1 * sn / m1 - cs * cs / m3,
            p1 * cs / m1 - sn * cs / m3,
            two * p1 * cs,
        );
        let x3 = -p2 * sn / m1 - p1 * p1 * cs / m1 + p1 * sn * mu_p / m2
            + two * cs * sn * p1 / m3
            + three * cs * cs * mu_p / m4;
        let y3 = p2 * cs / m1 - p1 * p1 * sn / m1 - p1 * cs * mu_p / m2
            - p1 * (cs * cs - sn * sn) / m3
            + three * sn * cs * mu_p / m4;
        let z3 = two * (p2 * cs - p1 * p1 * sn);
        Ok(Jet {
            position,
            d1,
            d2,
            d3: Vector3::new(x3, y3, z3),
        })
    }
}

/// Closed-form curvature and torsion of a generated curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaTauK2<T> {
    /// `ψ′ + sin ψ / μ²` as written, possibly negative.
    pub kappa_signed: T,
    pub kappa: T,
    pub tau: T,
    pub mu2: T,
}

fn k2_values<T: Real>(psi: &AngleFunction, mu2: T, s: T) -> Result<KappaTauK2<T>> {
    if !(mu2 > T::zero()) {
        return Err(GeomError::MuNonPositive {
            s: s.to_f64_lossy(),
            mu2: mu2.to_f64_lossy(),
        });
    }
    let [p, p1, _] = psi.jet(s)?;
    let k = p1 + p.sin() / mu2;
    if k.abs() <= lit(crate::frenet::KAPPA_MIN) {
        return Err(GeomError::Geodesic(s.to_f64_lossy()));
    }
    Ok(KappaTauK2 {
        kappa_signed: k,
        kappa: k.abs(),
        tau: mu2.recip(),
        mu2,
    })
}

/// `κ = ψ′ + sin ψ / μ²`, `τ = 1/μ²` with `μ²` integrated from `psi.s0`.
pub fn kappa_tau_k2<T: Real>(psi: &AngleFunction, s: T) -> Result<KappaTauK2<T>> {
    k2_values(psi, psi.mu2(s)?, s)
}
