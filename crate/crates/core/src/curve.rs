//! Parametrized curves with derivative jets, sampling and reparametrization.

use std::io::{Read, Write};
use std::sync::Arc;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::diff::along;
use crate::error::{GeomError, Result};
use crate::expr::{Bindings, Expr, Var};
use crate::linalg::{inner, Point};
use crate::manifold::{classify, outside, AlmostContactStructure, Causal, NULL_BAND};
use crate::quad::CumulativeSimpson;
use crate::scalar::{lit, Real};

/// Position and the first three derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T: Real> {
    pub position: Point<T>,
    pub d1: Vector3<T>,
    pub d2: Vector3<T>,
    pub d3: Vector3<T>,
}

pub trait Curve<T: Real>: Send + Sync {
    fn label(&self) -> &str;

    /// Open parameter interval; bounds may be infinite.
    fn domain(&self) -> (T, T);

    fn position(&self, s: T) -> Result<Point<T>>;

    /// Defaults to five-point differences of [`position`](Self::position).
    fn jet(&self, s: T) -> Result<Jet<T>> {
        check_parameter(self, s)?;
        let (lo, hi) = self.domain();
        let h = T::curve_step();
        let pos = |t: T| self.position(t);
        let d2 = |t: T| along(pos, t, h, lo, hi, 2);
        Ok(Jet {
            position: self.position(s)?,
            d1: along(pos, s, h, lo, hi, 1)?,
            d2: d2(s)?,
            d3: along(d2, s, h, lo, hi, 1)?,
        })
    }

    /// Step for differentiating derived quantities along the curve.
    fn preferred_step(&self) -> T {
        T::curve_step()
    }
}

impl<T: Real, C: Curve<T> + ?Sized> Curve<T> for Arc<C> {
    fn label(&self) -> &str {
        (**self).label()
    }
    fn domain(&self) -> (T, T) {
        (**self).domain()
    }
    fn position(&self, s: T) -> Result<Point<T>> {
        (**self).position(s)
    }
    fn jet(&self, s: T) -> Result<Jet<T>> {
        (**self).jet(s)
    }
    fn preferred_step(&self) -> T {
        (**self).preferred_step()
    }
}

impl<T: Real, C: Curve<T> + ?Sized> Curve<T> for Box<C> {
    fn label(&self) -> &str {
        (**self).label()
    }
    fn domain(&self) -> (T, T) {
        (**self).domain()
    }
    fn position(&self, s: T) -> Result<Point<T>> {
        (**self).position(s)
    }
    fn jet(&self, s: T) -> Result<Jet<T>> {
        (**self).jet(s)
    }
    fn preferred_step(&self) -> T {
        (**self).preferred_step()
    }
}

pub fn check_parameter<T: Real, C: Curve<T> + ?Sized>(c: &C, s: T) -> Result<()> {
    let (lo, hi) = c.domain();
    if s > lo && s < hi {
        Ok(())
    } else {
        Err(GeomError::ParameterOutsideDomain(s.to_f64_lossy()))
    }
}

/// A curve whose components are expressions in `s`, with exact derivatives.
#[derive(Debug, Clone)]
pub struct ExprCurve {
    label: String,
    domain: (f64, f64),
    comps: [[Expr; 3]; 4],
}

impl ExprCurve {
    pub fn new(label: &str, components: [&str; 3], domain: (f64, f64)) -> Result<Self> {
        let mut parsed: [Expr; 3] = Default::default();
        for (slot, src) in parsed.iter_mut().zip(components) {
            let e: Expr = src.parse()?;
            if let Some(v) = e.variables().into_iter().find(|v| *v != Var::S) {
                return Err(GeomError::CurveData(format!(
                    "curve component `{src}` uses chart variable {v}; only s is allowed"
                )));
            }
            *slot = e;
        }
        Self::from_exprs(label, parsed, domain)
    }

    pub fn from_exprs(label: &str, components: [Expr; 3], domain: (f64, f64)) -> Result<Self> {
        if !(domain.0 < domain.1) {
            return Err(GeomError::InvalidGrid(format!(
                "empty parameter interval ({}, {})",
                domain.0, domain.1
            )));
        }
        let d1 = components.clone().map(|e| e.derivative(Var::S));
        let d2 = d1.clone().map(|e| e.derivative(Var::S));
        let d3 = d2.clone().map(|e| e.derivative(Var::S));
        Ok(ExprCurve {
            label: label.to_string(),
            domain,
            comps: [components, d1, d2, d3],
        })
    }

    pub fn components(&self) -> &[Expr; 3] {
        &self.comps[0]
    }

    fn eval<T: Real>(&self, order: usize, s: T) -> Result<Vector3<T>> {
        let b = Bindings::s(s);
        let c = &self.comps[order];
        Ok(Vector3::new(c[0].eval(&b)?, c[1].eval(&b)?, c[2].eval(&b)?))
    }
}

impl<T: Real> Curve<T> for ExprCurve {
    fn label(&self) -> &str {
        &self.label
    }

    fn domain(&self) -> (T, T) {
        (lit(self.domain.0), lit(self.domain.1))
    }

    fn position(&self, s: T) -> Result<Point<T>> {
        check_parameter(self, s)?;
        self.eval(0, s)
    }

    fn jet(&self, s: T) -> Result<Jet<T>> {
        check_parameter(self, s)?;
        Ok(Jet {
            position: self.eval(0, s)?,
            d1: self.eval(1, s)?,
            d2: self.eval(2, s)?,
            d3: self.eval(3, s)?,
        })
    }
}

/// One `(s, x, y, z)` row of the curve CSV format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A curve known only at nodes; values and derivatives come from the
/// Lagrange polynomial through the five nodes nearest to `s`.
#[derive(Debug, Clone)]
pub struct SampledCurve<T: Real> {
    label: String,
    s: Vec<T>,
    points: Vec<Point<T>>,
}

impl<T: Real> SampledCurve<T> {
    pub fn new(label: &str, s: Vec<T>, points: Vec<Point<T>>) -> Result<Self> {
        if s.len() != points.len() {
            return Err(GeomError::CurveData("parameter and point counts differ".into()));
        }
        if s.len() < 5 {
            return Err(GeomError::CurveData(format!(
                "sampled curve needs at least 5 rows, got {}",
                s.len()
            )));
        }
        if let Some(w) = s.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(GeomError::CurveData(format!(
                "parameter column must be strictly increasing (at s = {})",
                w[1]
            )));
        }
        if points.iter().flat_map(|p| p.iter()).any(|c| !c.is_finite()) {
            return Err(GeomError::CurveData("non-finite coordinate".into()));
        }
        Ok(SampledCurve {
            label: label.to_string(),
            s,
            points,
        })
    }

    pub fn from_rows(label: &str, rows: &[CurveRow]) -> Result<Self> {
        Self::new(
            label,
            rows.iter().map(|r| lit(r.s)).collect(),
            rows.iter()
                .map(|r| Vector3::new(lit(r.x), lit(r.y), lit(r.z)))
                .collect(),
        )
    }

    pub fn from_csv<R: Read>(label: &str, reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let rows = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<CurveRow>, _>>()
            .map_err(|e| GeomError::CurveData(e.to_string()))?;
        Self::from_rows(label, &rows)
    }

    /// Samples `curve` at the given parameters.
    pub fn from_curve<C: Curve<T> + ?Sized>(label: &str, curve: &C, grid: &[T]) -> Result<Self> {
        let points = grid
            .iter()
            .map(|s| curve.position(*s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, grid.to_vec(), points)
    }

    pub fn rows(&self) -> Vec<CurveRow> {
        self.s
            .iter()
            .zip(&self.points)
            .map(|(s, p)| CurveRow {
                s: s.to_f64_lossy(),
                x: p[0].to_f64_lossy(),
                y: p[1].to_f64_lossy(),
                z: p[2].to_f64_lossy(),
            })
            .collect()
    }

    fn window(&self, s: T) -> usize {
        let n = self.s.len();
        let idx = self.s.partition_point(|v| *v < s);
        idx.saturating_sub(2).min(n - 5)
    }

    /// Value and derivatives up to third order of the local interpolant.
    fn interpolate(&self, s: T) -> [Vector3<T>; 4] {
        let start = self.window(s);
        let nodes = &self.s[start..start + 5];
        let mut out = [Vector3::zeros(); 4];
        for j in 0..5 {
            // coefficients of Π_{m≠j} (t − t_m) in powers of (s − t_j)
            let mut poly = [T::zero(); 5];
            poly[0] = T::one();
            let mut deg = 0;
            let mut denom = T::one();
            for m in 0..5 {
                if m == j {
                    continue;
                }
                let shift = nodes[m] - nodes[j];
                // multiply by (u − shift) with u = t − t_j
                for k in (0..=deg + 1).rev() {
                    let lower = if k > 0 { poly[k - 1] } else { T::zero() };
                    poly[k] = lower - shift * poly[k];
                }
                deg += 1;
                denom *= -shift;
            }
            let u = s - nodes[j];
            let vals: [T; 4] = std::array::from_fn(|order| horner_derivative(&poly, order, u));
            for order in 0..4 {
                out[order] += self.points[start + j] * (vals[order] / denom);
            }
        }
        out
    }

    pub fn parameters(&self) -> &[T] {
        &self.s
    }
}

fn horner_derivative<T: Real>(poly: &[T; 5], order: usize, u: T) -> T {
    let mut acc = T::zero();
    for k in (order..5).rev() {
        let mut fall = T::one();
        for r in 0..order {
            fall *= lit((k - r) as f64);
        }
        acc = acc * u + poly[k] * fall;
    }
    acc
}

impl<T: Real> Curve<T> for SampledCurve<T> {
    fn label(&self) -> &str {
        &self.label
    }

    /// The node range; the end nodes themselves are admissible parameters.
    fn domain(&self) -> (T, T) {
        let pad = (self.s[self.s.len() - 1] - self.s[0]) * lit(1e-12);
        (self.s[0] - pad, self.s[self.s.len() - 1] + pad)
    }

    fn position(&self, s: T) -> Result<Point<T>> {
        check_parameter(self, s)?;
        Ok(self.interpolate(s)[0])
    }

    fn jet(&self, s: T) -> Result<Jet<T>> {
        check_parameter(self, s)?;
        let [position, d1, d2, d3] = self.interpolate(s);
        Ok(Jet {
            position,
            d1,
            d2,
            d3,
        })
    }

    fn preferred_step(&self) -> T {
        let n = self.s.len();
        (self.s[n - 1] - self.s[0]) / lit((n - 1) as f64)
    }
}

/// Writes `(s, x, y, z)` rows with a header.
pub fn write_curve_csv<W: Write>(writer: W, rows: &[CurveRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in rows {
        w.serialize(r).map_err(|e| GeomError::CurveData(e.to_string()))?;
    }
    w.flush().map_err(|e| GeomError::CurveData(e.to_string()))
}

/// Uniform grid of `count` points on `[lo, hi]` with both ends moved inward by
/// `1e-6 · (hi − lo)`.
pub fn grid<T: Real>(lo: T, hi: T, count: usize) -> Result<Vec<T>> {
    if count == 0 {
        return Err(GeomError::EmptyGrid);
    }
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(GeomError::InvalidGrid(format!("bad interval [{lo}, {hi}]")));
    }
    let inset = (hi - lo) * lit(1e-6);
    let (a, b) = (lo + inset, hi - inset);
    if count == 1 {
        return Ok(vec![(a + b) * lit(0.5)]);
    }
    let step = (b - a) / lit((count - 1) as f64);
    Ok((0..count)
        .map(|i| if i + 1 == count { b } else { a + step * lit(i as f64) })
        .collect())
}

/// Default number of grid points.
pub const DEFAULT_GRID: usize = 401;

/// Pointwise kinematic data of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample<T: Real> {
    pub s: T,
    pub position: Point<T>,
    pub velocity: Vector3<T>,
    pub acceleration: Vector3<T>,
    /// `m = η(υ′)`.
    pub m: T,
    /// `g(υ′, υ′)`.
    pub speed2: T,
}

impl<T: Real> CurveSample<T> {
    pub fn causal(&self, g: &nalgebra::Matrix3<T>) -> Result<Causal> {
        classify(g, &self.velocity, lit(NULL_BAND))
    }
}

pub fn sample<T, M, C>(m: &M, curve: &C, s: T) -> Result<CurveSample<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let jet = curve.jet(s)?;
    let p = jet.position;
    if !m.in_domain(&p) {
        return Err(outside(&p));
    }
    let g = m.metric(&p)?;
    Ok(CurveSample {
        s,
        position: p,
        velocity: jet.d1,
        acceleration: jet.d2,
        m: m.eta(&p)?.dot(&jet.d1),
        speed2: inner(&g, &jet.d1, &jet.d1),
    })
}

/// Residual pair of the explicit Legendre system of a built-in structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplicitLegendreResiduals {
    /// `"con"` for N³ (`2υ₁′υ₂ + υ₃′`, `υ₁′² + υ₂′² − e^{−2υ₃}`),
    /// `"k1"` for Q³ (`υ₃′ − 2υ₁υ₂′`, `υ₁′² + υ₂′² − υ₁⁻²`).
    pub system: String,
    pub contact: f64,
    pub speed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegendreReport {
    pub legendre: bool,
    pub max_abs_m: f64,
    pub tol: f64,
    pub explicit: Option<ExplicitLegendreResiduals>,
}

pub fn is_legendre<T, M, C>(m: &M, curve: &C, grid: &[T], tol: T) -> Result<LegendreReport>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    if grid.is_empty() {
        return Err(GeomError::EmptyGrid);
    }
    let system = match m.name() {
        "n3" => Some("con"),
        "q3" => Some("k1"),
        _ => None,
    };
    let (mut worst_m, mut contact, mut speed) = (T::zero(), T::zero(), T::zero());
    for &s in grid {
        let smp = sample(m, curve, s)?;
        worst_m = worst_m.max(smp.m.abs());
        let (p, v) = (smp.position, smp.velocity);
        let two: T = lit(2.0);
        match system {
            Some("con") => {
                contact = contact.max((two * v[0] * p[1] + v[2]).abs());
                speed = speed.max((v[0] * v[0] + v[1] * v[1] - (-two * p[2]).exp()).abs());
            }
            Some(_) => {
                contact = contact.max((v[2] - two * p[0] * v[1]).abs());
                speed = speed.max((v[0] * v[0] + v[1] * v[1] - (p[0] * p[0]).recip()).abs());
            }
            None => {}
        }
    }
    Ok(LegendreReport {
        legendre: worst_m < tol,
        max_abs_m: worst_m.to_f64_lossy(),
        tol: tol.to_f64_lossy(),
        explicit: system.map(|system| ExplicitLegendreResiduals {
            system: system.to_string(),
            contact: contact.to_f64_lossy(),
            speed: speed.to_f64_lossy(),
        }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSpeedReport {
    pub unit_speed: bool,
    pub max_speed_defect: f64,
    pub tol: f64,
}

pub fn is_unit_speed<T, M, C>(m: &M, curve: &C, grid: &[T], tol: T) -> Result<UnitSpeedReport>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    if grid.is_empty() {
        return Err(GeomError::EmptyGrid);
    }
    let mut worst = T::zero();
    for &s in grid {
        worst = worst.max((sample(m, curve, s)?.speed2 - T::one()).abs());
    }
    Ok(UnitSpeedReport {
        unit_speed: worst < tol,
        max_speed_defect: worst.to_f64_lossy(),
        tol: tol.to_f64_lossy(),
    })
}

/// `base` reparametrized by arc length `σ = ∫_{s0} √|g(υ′, υ′)|`.
pub struct ReparamCurve<T: Real> {
    label: String,
    base: Arc<dyn Curve<T>>,
    manifold: Arc<dyn AlmostContactStructure<T>>,
    table: CumulativeSimpson<T>,
    range: (T, T),
    sigma_range: (T, T),
}

impl<T: Real> ReparamCurve<T> {
    fn speed(&self, t: T) -> Result<T> {
        speed_of(self.manifold.as_ref(), self.base.as_ref(), t)
    }

    fn sigma(&self, t: T) -> Result<T> {
        self.table.at(&|u| self.speed(u), t)
    }

    /// Base parameter `t(σ)` by bracketed Newton iteration.
    pub fn base_parameter(&self, sigma: T) -> Result<T> {
        let (lo, hi) = self.range;
        let (mut a, mut b) = (lo, hi);
        let mut t = lo + (hi - lo) * ((sigma - self.sigma_range.0) / (self.sigma_range.1 - self.sigma_range.0));
        let tol = lit::<T>(1e-14) * T::one().max(sigma.abs());
        for _ in 0..100 {
            let f = self.sigma(t)? - sigma;
            if f.abs() <= tol {
                return Ok(t);
            }
            if f > T::zero() {
                b = t;
            } else {
                a = t;
            }
            let newton = t - f / self.speed(t)?;
            t = if newton > a && newton < b {
                newton
            } else {
                (a + b) * lit(0.5)
            };
            if b - a <= T::epsilon() * T::one().max(t.abs()) * lit(4.0) {
                return Ok(t);
            }
        }
        Ok(t)
    }
}

fn speed_of<T: Real>(
    m: &dyn AlmostContactStructure<T>,
    c: &dyn Curve<T>,
    t: T,
) -> Result<T> {
    let smp = sample(m, c, t)?;
    Ok(smp.speed2.abs().sqrt())
}

impl<T: Real> Curve<T> for ReparamCurve<T> {
    fn label(&self) -> &str {
        &self.label
    }

    fn domain(&self) -> (T, T) {
        self.sigma_range
    }

    fn position(&self, sigma: T) -> Result<Point<T>> {
        check_parameter(self, sigma)?;
        self.base.position(self.base_parameter(sigma)?)
    }

    fn jet(&self, sigma: T) -> Result<Jet<T>> {
        check_parameter(self, sigma)?;
        let t = self.base_parameter(sigma)?;
        let j = self.base.jet(t)?;
        let (lo, hi) = self.base.domain();
        let h = self.base.preferred_step();
        let v = self.speed(t)?;
        let dv: T = along(|u| self.speed(u), t, h, lo, hi, 1)?;
        let ddv: T = along(|u| self.speed(u), t, h, lo, hi, 2)?;
        let t1 = v.recip();
        let t2 = -dv / (v * v * v);
        let t3 = -ddv / (v * v * v * v) + lit::<T>(3.0) * dv * dv / (v * v * v * v * v);
        let three: T = lit(3.0);
        Ok(Jet {
            position: j.position,
            d1: j.d1 * t1,
            d2: j.d2 * (t1 * t1) + j.d1 * t2,
            d3: j.d3 * (t1 * t1 * t1) + j.d2 * (three * t1 * t2) + j.d1 * t3,
        })
    }

    fn preferred_step(&self) -> T {
        T::curve_step()
    }
}

/// Arc-length reparametrization with `σ(s0) = 0`, valid over the span of `grid`.
///
/// Fails when `g(υ′, υ′)` changes sign or comes within the null band on the grid.
pub fn reparametrize_arclength<T: Real>(
    m: Arc<dyn AlmostContactStructure<T>>,
    curve: Arc<dyn Curve<T>>,
    s0: T,
    grid: &[T],
) -> Result<ReparamCurve<T>> {
    if grid.len() < 2 {
        return Err(GeomError::EmptyGrid);
    }
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    if !(s0 >= lo && s0 <= hi) {
        return Err(GeomError::ParameterOutsideDomain(s0.to_f64_lossy()));
    }
    let mut sign = None;
    for &s in grid {
        let smp = sample(m.as_ref(), curve.as_ref(), s)?;
        let band = lit::<T>(NULL_BAND) * smp.velocity.dot(&smp.velocity);
        if smp.speed2.abs() <= band {
            return Err(GeomError::SpeedSignChange(s.to_f64_lossy()));
        }
        let sg = smp.speed2 > T::zero();
        if *sign.get_or_insert(sg) != sg {
            return Err(GeomError::SpeedSignChange(s.to_f64_lossy()));
        }
    }
    let speed = |t: T| speed_of(m.as_ref(), curve.as_ref(), t);
    let cells = 4 * (grid.len() - 1).max(256);
    let raw = CumulativeSimpson::new(&speed, lo, hi, cells, T::zero())?;
    let offset = raw.at(&speed, s0)?;
    let table = CumulativeSimpson::new(&speed, lo, hi, cells, -offset)?;
    let end = table.at(&speed, hi)?;
    let label = format!("{}-arclength", curve.label());
    Ok(ReparamCurve {
        label,
        base: curve,
        manifold: m,
        table,
        range: (lo, hi),
        sigma_range: (-offset, end),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{Epsilon, N3, Q3};

    #[test]
    fn grid_is_inset() {
        let g: Vec<f64> = grid(0.0, 1.0, 401).unwrap();
        assert_eq!(g.len(), 401);
        assert!((g[0] - 1e-6).abs() < 1e-18);
        assert!((g[400] - (1.0 - 1e-6)).abs() < 1e-15);
        assert_eq!(grid::<f64>(0.0, 1.0, 0), Err(GeomError::EmptyGrid));
    }

    #[test]
    fn expr_curve_jets() {
        let c = ExprCurve::new("u2", ["-ln(s)", "0.5", "ln(s)"], (0.0, f64::INFINITY)).unwrap();
        let j: Jet<f64> = c.jet(1.0).unwrap();
        assert_eq!(j.d1, Vector3::new(-1.0, 0.0, 1.0));
        assert_eq!(j.d3, Vector3::new(-2.0, 0.0, 2.0));
        assert!(matches!(
            Curve::<f64>::position(&c, -1.0),
            Err(GeomError::ParameterOutsideDomain(_))
        ));
    }

    #[test]
    fn exact_jets_match_differences() {
        let c = ExprCurve::new("c", ["sin(s)*s", "exp(s/3)", "s^3 - cos(2*s)"], (-5.0, 5.0))
            .unwrap();
        for s in [-1.3, 0.2, 2.7] {
            let exact: Jet<f64> = c.jet(s).unwrap();
            let h = 1e-3;
            let pos = |t: f64| Curve::<f64>::position(&c, t);
            let d1: Vector3<f64> = along(pos, s, h, -5.0, 5.0, 1).unwrap();
            let d2: Vector3<f64> = along(pos, s, h, -5.0, 5.0, 2).unwrap();
            assert!((d1 - exact.d1).amax() < 1e-6 * exact.d1.amax().max(1.0));
            assert!((d2 - exact.d2).amax() < 1e-6 * exact.d2.amax().max(1.0));
        }
    }

    #[test]
    fn sampled_curve_reproduces_polynomial_jets() {
        let s: Vec<f64> = (0..41).map(|i| -1.0 + 0.05 * i as f64).collect();
        let pts = s
            .iter()
            .map(|t| Vector3::new(t * t * t, 2.0 * t - 1.0, t.powi(4)))
            .collect();
        let c = SampledCurve::new("poly", s, pts).unwrap();
        for t in [-1.0, -0.33, 0.0, 0.41, 1.0] {
            let j = c.jet(t).unwrap();
            let want = Jet {
                position: Vector3::new(t * t * t, 2.0 * t - 1.0, t.powi(4)),
                d1: Vector3::new(3.0 * t * t, 2.0, 4.0 * t.powi(3)),
                d2: Vector3::new(6.0 * t, 0.0, 12.0 * t * t),
                d3: Vector3::new(6.0, 0.0, 24.0 * t),
            };
            assert!((j.position - want.position).amax() < 1e-12);
            assert!((j.d1 - want.d1).amax() < 1e-10);
            assert!((j.d2 - want.d2).amax() < 1e-8);
            assert!((j.d3 - want.d3).amax() < 1e-6);
        }
    }

    #[test]
    fn csv_roundtrip() {
        let rows: Vec<CurveRow> = (0..6)
            .map(|i| {
                let s = i as f64 * 0.5;
                CurveRow {
                    s,
                    x: 1.0,
                    y: s,
                    z: 0.0,
                }
            })
            .collect();
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("s,x,y,z\n"));
        let c = SampledCurve::<f64>::from_csv("u1", buf.as_slice()).unwrap();
        assert_eq!(c.rows(), rows);
        assert!(SampledCurve::<f64>::from_csv("bad", "s,x,y,z\n1,2,3\n".as_bytes()).is_err());
    }

    #[test]
    fn samples_of_example_curves() {
        let n3 = N3 { epsilon: Epsilon::Plus };
        let u1 = ExprCurve::new("u1", ["1", "s", "0"], (f64::NEG_INFINITY, f64::INFINITY)).unwrap();
        let smp = sample::<f64, _, _>(&n3, &u1, 0.3).unwrap();
        assert_eq!(smp.velocity, Vector3::new(0.0, 1.0, 0.0));
        assert_eq!(smp.m, 0.0);
        assert_eq!(smp.speed2, 1.0);
        let u2 = ExprCurve::new("u2", ["-ln(s)", "1/2", "ln(s)"], (0.0, f64::INFINITY)).unwrap();
        let smp = sample::<f64, _, _>(&n3, &u2, 1.0).unwrap();
        assert_eq!(smp.velocity, Vector3::new(-1.0, 0.0, 1.0));
        assert_eq!(smp.m, 0.0);
        assert!(sample::<f64, _, _>(&n3, &u2, 0.0).is_err());
    }

    #[test]
    fn straight_line_in_q3() {
        let q3 = Q3 { epsilon: Epsilon::Plus };
        let line = ExprCurve::new("line", ["s", "0", "0"], (0.0, f64::INFINITY)).unwrap();
        let g = grid(0.5, 3.0, 51).unwrap();
        let r = is_legendre::<f64, _, _>(&q3, &line, &g, 1e-12).unwrap();
        assert!(r.legendre);
        let k1 = r.explicit.unwrap();
        assert_eq!(k1.system, "k1");
        assert_eq!(k1.contact, 0.0);
        assert!(k1.speed > 0.5);
        assert!(!is_unit_speed::<f64, _, _>(&q3, &line, &g, 1e-8).unwrap().unit_speed);
    }

    #[test]
    fn unit_speed_depends_on_height() {
        let n3 = N3 { epsilon: Epsilon::Plus };
        let g = grid(-1.0, 1.0, 21).unwrap();
        let flat = ExprCurve::new("l0", ["s", "0", "0"], (-2.0, 2.0)).unwrap();
        let up = ExprCurve::new("l1", ["s", "0", "1"], (-2.0, 2.0)).unwrap();
        assert!(is_unit_speed::<f64, _, _>(&n3, &flat, &g, 1e-12).unwrap().unit_speed);
        assert!(!is_unit_speed::<f64, _, _>(&n3, &up, &g, 1e-12).unwrap().unit_speed);
    }

    #[test]
    fn half_rate_reparametrization() {
        let n3: Arc<dyn AlmostContactStructure<f64>> = Arc::new(N3 { epsilon: Epsilon::Plus });
        let c: Arc<dyn Curve<f64>> =
            Arc::new(ExprCurve::new("l", ["2*s", "0", "0"], (-1.0, 2.0)).unwrap());
        let g = grid(0.0, 1.0, 101).unwrap();
        let r = reparametrize_arclength(n3.clone(), c, g[0], &g).unwrap();
        let (lo, hi) = r.domain();
        assert!(lo.abs() < 1e-14 && (hi - 2.0).abs() < 1e-5);
        for sigma in [0.1, 0.7, 1.5] {
            let smp = sample(n3.as_ref(), &r, sigma).unwrap();
            assert!((smp.speed2 - 1.0).abs() < 1e-8);
            assert!((smp.position[0] - (sigma + 2.0 * g[0])).abs() < 1e-10);
            assert!(r.jet(sigma).unwrap().d2.amax() < 1e-8);
        }
    }

    #[test]
    fn reparametrization_of_unit_speed_curve_is_identity() {
        let n3: Arc<dyn AlmostContactStructure<f64>> = Arc::new(N3 { epsilon: Epsilon::Minus });
        let c: Arc<dyn Curve<f64>> =
            Arc::new(ExprCurve::new("u1", ["1", "s", "0"], (-3.0, 3.0)).unwrap());
        let g = grid(-2.0, 2.0, 101).unwrap();
        let r = reparametrize_arclength(n3, c, 0.0, &g).unwrap();
        for s in [-1.5, 0.0, 0.3, 1.9] {
            assert!((r.base_parameter(s).unwrap() - s).abs() < 1e-8);
        }
    }

    #[test]
    fn null_curve_cannot_be_reparametrized() {
        let q3: Arc<dyn AlmostContactStructure<f64>> = Arc::new(Q3 { epsilon: Epsilon::Minus });
        let c: Arc<dyn Curve<f64>> =
            Arc::new(ExprCurve::new("null", ["1+s", "0", "s+s^2/2"], (-0.5, 1.0)).unwrap());
        let g = grid(0.0, 0.5, 11).unwrap();
        assert!(matches!(
            reparametrize_arclength(q3, c, g[0], &g),
            Err(GeomError::SpeedSignChange(_))
        ));
    }
}
