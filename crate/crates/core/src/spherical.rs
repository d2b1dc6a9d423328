//! Osculating spheres and spherical Legendre curves.

use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::connection::{alpha_beta, christoffel};
use crate::curve::Curve;
use crate::diff::along;
use crate::error::{GeomError, Result};
use crate::frenet::{frame_vectors, frenet_direct, legendre_kappa_tau, theta_along, KAPPA_MIN};
use crate::function::ScalarFunction;
use crate::linalg::{euclid_norm, Point};
use crate::manifold::{AlmostContactStructure, Epsilon};
use crate::quad::CumulativeSimpson;
use crate::scalar::{lit, Real};

/// Bound on `|β|` for a structure to count as quasi-Sasakian along a curve.
pub const BETA_TOL: f64 = 1e-8;
/// Smallest admissible `|α|`.
pub const ALPHA_MIN: f64 = 1e-12;
/// Band used to recognise the excluded θ profiles.
pub const EXCLUDED_TOL: f64 = 1e-6;

/// `τ/κ + ((1/τ)(1/κ)′)′`, zero exactly for curves on a sphere in Euclidean space.
pub fn euclidean_spherical_residual<T, K, U>(kappa: &K, tau: &U, s: T) -> Result<T>
where
    T: Real,
    K: ScalarFunction<T> + ?Sized,
    U: ScalarFunction<T> + ?Sized,
{
    let (k, k1, k2) = (kappa.value(s)?, kappa.derivative(s, 1)?, kappa.derivative(s, 2)?);
    let (t, t1) = (tau.value(s)?, tau.derivative(s, 1)?);
    if k == T::zero() {
        return Err(GeomError::Geodesic(s.to_f64_lossy()));
    }
    if t == T::zero() {
        return Err(GeomError::SingularTorsion(s.to_f64_lossy()));
    }
    let two: T = lit(2.0);
    let rho1 = -k1 / (k * k);
    let rho2 = -k2 / (k * k) + two * k1 * k1 / (k * k * k);
    let sigma = t.recip();
    let sigma1 = -t1 / (t * t);
    Ok(t / k + sigma1 * rho1 + sigma * rho2)
}

/// Value of the spherical ODE at one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalResidual<T> {
    /// `(θ′/(θ²|α|))′ − ε|α|/θ`
    pub os2: T,
    /// `((1/θ)′/|α|)′ + ε|α|/θ`, equal to `−os2`.
    pub os5: T,
    /// `θ′/(θ²|α|)`
    pub q: T,
    /// `1/θ² + εq²`
    pub radius2: T,
}

pub fn spherical_residual_q3<T, F, A>(theta: &F, alpha: &A, epsilon: Epsilon, s: T) -> Result<SphericalResidual<T>>
where
    T: Real,
    F: ScalarFunction<T> + ?Sized,
    A: ScalarFunction<T> + ?Sized,
{
    let sf = s.to_f64_lossy();
    let (th, th1, th2) = (theta.value(s)?, theta.derivative(s, 1)?, theta.derivative(s, 2)?);
    if th.abs() < lit(KAPPA_MIN) {
        return Err(GeomError::VanishingTheta(sf));
    }
    let al = alpha.value(s)?;
    if al.abs() < lit(ALPHA_MIN) {
        return Err(GeomError::VanishingAlpha(sf));
    }
    let a = al.abs();
    let a1 = al.signum() * alpha.derivative(s, 1)?;
    let eps: T = epsilon.value();
    let two: T = lit(2.0);
    let q = th1 / (th * th * a);
    let q1 = th2 / (th * th * a) - two * th1 * th1 / (th * th * th * a) - th1 * a1 / (th * th * a * a);
    let os2 = q1 - eps * a / th;
    // (1/θ)′ = −θ′/θ², so the first term of os5 is −q′
    let y = th.recip();
    let y1 = -th1 / (th * th);
    let y2 = -th2 / (th * th) + two * th1 * th1 / (th * th * th);
    let os5 = y2 / a - y1 * a1 / (a * a) + eps * a * y;
    Ok(SphericalResidual {
        os2,
        os5,
        q,
        radius2: y * y + eps * q * q,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaKind {
    /// `1/θ = A₁ cos Z + A₂ sin Z`
    SpacelikeTrig,
    /// `1/θ = B₁ cosh Z + B₂ sinh Z`
    TimelikeHyp,
}

impl ThetaKind {
    pub fn for_epsilon(e: Epsilon) -> Self {
        match e {
            Epsilon::Plus => ThetaKind::SpacelikeTrig,
            Epsilon::Minus => ThetaKind::TimelikeHyp,
        }
    }

    pub fn epsilon(self) -> Epsilon {
        match self {
            ThetaKind::SpacelikeTrig => Epsilon::Plus,
            ThetaKind::TimelikeHyp => Epsilon::Minus,
        }
    }
}

/// Closed-form solution of the spherical ODE, `Z(s) = ∫_{s0}^{s} |α|`.
#[derive(Clone)]
pub struct ThetaSolution<T: Real> {
    pub kind: ThetaKind,
    pub coefficients: [T; 2],
    pub s0: T,
    interval: (T, T),
    alpha: Arc<dyn ScalarFunction<T>>,
    table: CumulativeSimpson<T>,
}

impl<T: Real> fmt::Debug for ThetaSolution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThetaSolution")
            .field("kind", &self.kind)
            .field("coefficients", &self.coefficients)
            .field("s0", &self.s0)
            .field("interval", &self.interval)
            .finish()
    }
}

impl<T: Real> ThetaSolution<T> {
    fn abs_alpha(&self, t: T) -> Result<T> {
        Ok(self.alpha.value(t)?.abs())
    }

    /// `∫_{s0}^{s} |α|`
    pub fn z(&self, s: T) -> Result<T> {
        self.table.at(&|t| self.abs_alpha(t), s)
    }

    /// `(y, y′, y″)` for `y = 1/θ`.
    pub fn y_jet(&self, s: T) -> Result<[T; 3]> {
        let z = self.z(s)?;
        let [c1, c2] = self.coefficients;
        let al = self.alpha.value(s)?;
        let a = al.abs();
        let a1 = al.signum() * self.alpha.derivative(s, 1)?;
        let (y, w, sign) = match self.kind {
            ThetaKind::SpacelikeTrig => (c1 * z.cos() + c2 * z.sin(), -c1 * z.sin() + c2 * z.cos(), -T::one()),
            ThetaKind::TimelikeHyp => (c1 * z.cosh() + c2 * z.sinh(), c1 * z.sinh() + c2 * z.cosh(), T::one()),
        };
        Ok([y, a * w, a1 * w + sign * a * a * y])
    }

    pub fn interval(&self) -> (T, T) {
        self.interval
    }
}

impl<T: Real> ScalarFunction<T> for ThetaSolution<T> {
    fn domain(&self) -> (T, T) {
        self.interval
    }

    fn value(&self, s: T) -> Result<T> {
        Ok(self.y_jet(s)?[0].recip())
    }

    fn derivative(&self, s: T, order: u8) -> Result<T> {
        let [y, y1, y2] = self.y_jet(s)?;
        let two: T = lit(2.0);
        match order {
            0 => Ok(y.recip()),
            1 => Ok(-y1 / (y * y)),
            2 => Ok(-y2 / (y * y) + two * y1 * y1 / (y * y * y)),
            _ => {
                let (lo, hi) = self.interval;
                along(|t| self.derivative(t, 2), s, T::curve_step(), lo, hi, 1)
            }
        }
    }
}

/// Builds `θ` from the closed-form solution on `interval`, checking that
/// `1/θ` keeps its sign and `α` does not vanish at the quadrature nodes.
pub fn theta_solution<T: Real>(
    kind: ThetaKind,
    coefficients: [T; 2],
    alpha: Arc<dyn ScalarFunction<T>>,
    s0: T,
    interval: (T, T),
) -> Result<ThetaSolution<T>> {
    let [c1, c2] = coefficients;
    if kind == ThetaKind::TimelikeHyp
        && ((c1.abs() - c2.abs()).abs() <= lit::<T>(1e-12) * T::one().max(c1.abs()))
    {
        return Err(GeomError::ExcludedCoefficients(c1.to_f64_lossy(), c2.to_f64_lossy()));
    }
    let (a, b) = interval;
    if !(a < b) {
        return Err(GeomError::InvalidGrid(format!("bad interval ({a}, {b})")));
    }
    let (lo, hi) = (s0.min(a), s0.max(b));
    let f = |t: T| Ok(alpha.value(t)?.abs());
    let mut cells = 1024usize;
    let mut previous: Option<T> = None;
    let table = loop {
        let raw = CumulativeSimpson::new(&f, lo, hi, cells, T::zero())?;
        let offset = raw.at(&f, s0)?;
        let table = CumulativeSimpson::new(&f, lo, hi, cells, -offset)?;
        let end = table.total();
        if let Some(p) = previous {
            if (end - p).abs() < lit(1e-12) || cells >= 1 << 20 {
                break table;
            }
        }
        previous = Some(end);
        cells *= 4;
    };
    let sol = ThetaSolution {
        kind,
        coefficients,
        s0,
        interval,
        alpha,
        table,
    };
    let nodes = 512;
    let step = (b - a) / lit(nodes as f64);
    let mut prev_sign = None;
    for i in 0..=nodes {
        let s = if i == nodes { b } else { a + step * lit(i as f64) };
        if sol.alpha.value(s)?.abs() < lit(ALPHA_MIN) {
            return Err(GeomError::VanishingAlpha(s.to_f64_lossy()));
        }
        let y = sol.y_jet(s)?[0];
        let sg = y > T::zero();
        if y == T::zero() || *prev_sign.get_or_insert(sg) != sg {
            return Err(GeomError::ThetaBlowsUp(s.to_f64_lossy()));
        }
    }
    Ok(sol)
}

/// Frame data of the osculating sphere at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OsculatingData<T: Real> {
    /// `1/θ`
    pub center_offset_n: T,
    /// `−θ′/(θ²|α|)`, the coefficient on `B₊ = sgn(τ) B`.
    pub center_offset_b: T,
    /// `1/θ² + ε(θ′/(θ²|α|))²`
    pub radius2_signed: T,
    /// Chart coordinates of `υ + (1/θ)N − qB₊` (coordinate addition).
    pub center_chart: Point<T>,
    /// `|∇_T c|` with `∇_T c = T + ∇_T(c − υ)`.
    pub center_drift: T,
    /// `|∇_T c + r B₊|` with `r` the spherical residual.
    pub os3_defect: T,
    pub residual: T,
    pub theta: T,
}

/// `θ` along a curve as a scalar function, differentiated with the curve's step.
pub struct CurveTheta<'a, M: ?Sized, C: ?Sized> {
    pub manifold: &'a M,
    pub curve: &'a C,
}

impl<T, M, C> ScalarFunction<T> for CurveTheta<'_, M, C>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    fn domain(&self) -> (T, T) {
        self.curve.domain()
    }

    fn value(&self, s: T) -> Result<T> {
        theta_along(self.manifold, self.curve, s)
    }

    fn derivative(&self, s: T, order: u8) -> Result<T> {
        curve_rate(self.curve, |t| self.value(t), s, order)
    }
}

/// `α(υ(s))` as a scalar function.
pub struct CurveAlpha<'a, M: ?Sized, C: ?Sized> {
    pub manifold: &'a M,
    pub curve: &'a C,
}

impl<T, M, C> ScalarFunction<T> for CurveAlpha<'_, M, C>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    fn domain(&self) -> (T, T) {
        self.curve.domain()
    }

    fn value(&self, s: T) -> Result<T> {
        Ok(alpha_beta(self.manifold, &self.curve.position(s)?)?.alpha)
    }

    fn derivative(&self, s: T, order: u8) -> Result<T> {
        curve_rate(self.curve, |t| self.value(t), s, order)
    }
}

fn curve_rate<T: Real, C: Curve<T> + ?Sized>(c: &C, f: impl Fn(T) -> Result<T>, s: T, order: u8) -> Result<T> {
    let (lo, hi) = c.domain();
    let h = c.preferred_step();
    match order {
        0 => f(s),
        1 | 2 => along(f, s, h, lo, hi, order),
        _ => along(|t| along(&f, t, h, lo, hi, 2), s, h, lo, hi, 1),
    }
}

fn require_quasi_sasakian<T, M>(m: &M, p: &Point<T>) -> Result<T>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
{
    let ab = alpha_beta(m, p)?;
    if ab.beta.abs() > lit(BETA_TOL) {
        return Err(GeomError::NotQuasiSasakian {
            beta: ab.beta.to_f64_lossy(),
            xi_alpha: f64::NAN,
        });
    }
    if ab.alpha.abs() < lit(ALPHA_MIN) {
        return Err(GeomError::VanishingAlpha(f64::NAN));
    }
    Ok(ab.alpha)
}

/// Osculating sphere of a non-geodesic Legendre curve in a quasi-Sasakian
/// structure.
///
/// The center is `c = υ + (1/θ)N − qB₊` with `q = θ′/(θ²|α|)`; along the
/// curve `∇_T c = −r B₊` where `r` is the spherical residual.
pub fn osculating_sphere<T, M, C>(m: &M, c: &C, s: T) -> Result<OsculatingData<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let lk = legendre_kappa_tau(m, c, s)?;
    let fr = frenet_direct(m, c, s)?;
    let p = fr.t.base;
    require_quasi_sasakian(m, &p)?;
    if lk.theta.abs() < lit(KAPPA_MIN) {
        return Err(GeomError::VanishingTheta(s.to_f64_lossy()));
    }
    let eps = m.epsilon();
    let sgn_tau: T = if fr.tau_signed < T::zero() { -T::one() } else { T::one() };
    let theta_fn = CurveTheta { manifold: m, curve: c };
    let alpha_fn = CurveAlpha { manifold: m, curve: c };
    let res = spherical_residual_q3(&theta_fn, &alpha_fn, eps, s)?;

    let offset = |u: T| -> Result<Vector3<T>> {
        let (_, n, b) = frame_vectors(m, c, u)?;
        let th = theta_fn.value(u)?;
        let th1 = theta_fn.derivative(u, 1)?;
        let a = alpha_fn.value(u)?.abs();
        Ok(n / th - b * (sgn_tau * th1 / (th * th * a)))
    };
    let d = offset(s)?;
    let (lo, hi) = c.domain();
    let dd: Vector3<T> = along(offset, s, c.preferred_step(), lo, hi, 1)?;
    let gamma = christoffel(m, &p)?;
    let t = fr.t.components;
    let nabla_c = t + dd + gamma.apply(&t, &d);
    let b_plus = fr.b.components * sgn_tau;
    Ok(OsculatingData {
        center_offset_n: lk.theta.recip(),
        center_offset_b: -res.q,
        radius2_signed: res.radius2,
        center_chart: p + d,
        center_drift: euclid_norm(&nabla_c),
        os3_defect: euclid_norm(&(nabla_c + b_plus * res.os2)),
        residual: res.os2,
        theta: lk.theta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Spherical,
    NotSpherical,
    ExcludedCase,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Spherical => "spherical",
            Verdict::NotSpherical => "not_spherical",
            Verdict::ExcludedCase => "excluded_case",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualSample {
    pub s: f64,
    pub theta: f64,
    pub residual: f64,
    pub radius2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalReport {
    pub verdict: Verdict,
    pub excluded_reason: Option<String>,
    pub epsilon: Epsilon,
    pub max_residual: f64,
    /// Smallest `|residual|` away from the two end samples.
    pub min_interior_residual: f64,
    /// `max − min` of the signed squared radius.
    pub radius2_variation: f64,
    /// Largest `|∇_T c|` measured from the frame, when a curve was supplied.
    pub max_center_drift: Option<f64>,
    pub tol: f64,
    pub profile: Vec<ResidualSample>,
}

impl SphericalReport {
    /// Radius constant within `factor · tol`.
    pub fn radius_constant(&self, factor: f64) -> bool {
        self.radius2_variation < factor * self.tol
    }

    pub fn residual_vanishes(&self) -> bool {
        self.max_residual < self.tol
    }
}

/// Classifies a `θ` profile against the spherical ODE on `grid`.
pub fn classify_profile<T, F, A>(theta: &F, alpha: &A, epsilon: Epsilon, grid: &[T], tol: T) -> Result<SphericalReport>
where
    T: Real,
    F: ScalarFunction<T> + ?Sized,
    A: ScalarFunction<T> + ?Sized,
{
    if grid.is_empty() {
        return Err(GeomError::EmptyGrid);
    }
    let mut profile = Vec::with_capacity(grid.len());
    let (mut max_r, mut min_r) = (0f64, f64::INFINITY);
    let (mut r2_lo, mut r2_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut max_th1, mut exp_defect) = (0f64, 0f64);
    for (i, &s) in grid.iter().enumerate() {
        let r = spherical_residual_q3(theta, alpha, epsilon, s)?;
        let th = theta.value(s)?;
        let th1 = theta.derivative(s, 1)?;
        let a = alpha.value(s)?.abs();
        let rf = r.os2.to_f64_lossy();
        let r2 = r.radius2.to_f64_lossy();
        max_r = max_r.max(rf.abs());
        if i > 0 && i + 1 < grid.len() {
            min_r = min_r.min(rf.abs());
        }
        r2_lo = r2_lo.min(r2);
        r2_hi = r2_hi.max(r2);
        max_th1 = max_th1.max(th1.abs().to_f64_lossy());
        exp_defect = exp_defect.max(((th1 / (th * a)).abs() - T::one()).abs().to_f64_lossy());
        profile.push(ResidualSample {
            s: s.to_f64_lossy(),
            theta: th.to_f64_lossy(),
            residual: rf,
            radius2: r2,
        });
    }
    if grid.len() < 3 {
        min_r = max_r;
    }
    let excluded_reason = match epsilon {
        Epsilon::Plus if max_th1 < EXCLUDED_TOL => Some("theta is constant".to_string()),
        Epsilon::Minus if exp_defect < EXCLUDED_TOL => {
            Some("theta is theta(s0) exp(+-int |alpha|)".to_string())
        }
        _ => None,
    };
    let tolf = tol.to_f64_lossy();
    let verdict = if excluded_reason.is_some() {
        Verdict::ExcludedCase
    } else if max_r < tolf {
        Verdict::Spherical
    } else {
        Verdict::NotSpherical
    };
    Ok(SphericalReport {
        verdict,
        excluded_reason,
        epsilon,
        max_residual: max_r,
        min_interior_residual: min_r,
        radius2_variation: r2_hi - r2_lo,
        max_center_drift: None,
        tol: tolf,
        profile,
    })
}

/// Spherical classification of a Legendre curve in a quasi-Sasakian structure.
/// Every grid point must pass the Legendre, non-geodesic and `α ≠ 0` checks.
pub fn classify_spherical<T, M, C>(m: &M, c: &C, grid: &[T], tol: T) -> Result<SphericalReport>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    if grid.is_empty() {
        return Err(GeomError::EmptyGrid);
    }
    let mut drift = T::zero();
    for &s in grid {
        let o = osculating_sphere(m, c, s)?;
        drift = drift.max(o.center_drift);
    }
    let theta = CurveTheta { manifold: m, curve: c };
    let alpha = CurveAlpha { manifold: m, curve: c };
    let mut report = classify_profile(&theta, &alpha, m.epsilon(), grid, tol)?;
    report.max_center_drift = Some(drift.to_f64_lossy());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Constant, ExprFunction};

    #[test]
    fn euclidean_examples() {
        let one = Constant(1.0f64);
        let r = euclidean_spherical_residual(&one, &one, 0.3).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
        // 1/κ = cos s, τ = 1
        let k = ExprFunction::parse("1/cos(s)").unwrap();
        for s in [-1.0f64, 0.0, 0.7] {
            assert!(euclidean_spherical_residual(&k, &one, s).unwrap().abs() < 1e-12);
        }
        // 1/κ = C cos(∫τ) + D sin(∫τ) with τ = 2s
        let k = ExprFunction::parse("1/(2*cos(s^2) + 0.5*sin(s^2))").unwrap();
        let t = ExprFunction::parse("2*s").unwrap();
        for s in [0.2f64, 0.5, 0.9] {
            assert!(euclidean_spherical_residual(&k, &t, s).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn sec_profile_is_spherical() {
        let th = ExprFunction::parse("1/cos(s)").unwrap();
        let one = Constant(1.0f64);
        for s in [-1.0f64, 0.0, 1.2] {
            let r = spherical_residual_q3(&th, &one, Epsilon::Plus, s).unwrap();
            assert!(r.os2.abs() < 1e-12);
            assert!((r.os5 + r.os2).abs() < 1e-12);
            assert!((r.radius2 - 1.0).abs() < 1e-12);
        }
        let c = Constant(2.0f64);
        let r = spherical_residual_q3(&c, &one, Epsilon::Plus, 0.0).unwrap();
        assert!((r.os2 + 0.5).abs() < 1e-15);
    }

    #[test]
    fn exponential_profile_is_flagged() {
        let th = ExprFunction::parse("3*exp(s)").unwrap();
        let one = Arc::new(Constant(1.0f64));
        let r = spherical_residual_q3(&th, one.as_ref(), Epsilon::Minus, 0.4).unwrap();
        assert!(r.os2.abs() < 1e-12);
        let g: Vec<f64> = crate::curve::grid(0.0, 1.0, 21).unwrap();
        let rep = classify_profile(&th, one.as_ref(), Epsilon::Minus, &g, 1e-8).unwrap();
        assert_eq!(rep.verdict, Verdict::ExcludedCase);
    }

    #[test]
    fn theta_solutions() {
        let one: Arc<dyn ScalarFunction<f64>> = Arc::new(Constant(1.0));
        let sec = theta_solution(ThetaKind::SpacelikeTrig, [1.0, 0.0], one.clone(), 0.0, (-1.5, 1.5)).unwrap();
        for s in [-1.2f64, 0.3, 1.4] {
            assert!((sec.value(s).unwrap() - 1.0 / s.cos()).abs() < 1e-12);
        }
        let hyp = theta_solution(ThetaKind::TimelikeHyp, [2.0, 1.0], one.clone(), 0.0, (0.0, 1.0)).unwrap();
        for s in [0.1f64, 0.5, 0.9] {
            let y = 2.0 * s.cosh() + s.sinh();
            assert!((hyp.value(s).unwrap() - 1.0 / y).abs() < 1e-13);
            let r = spherical_residual_q3(&hyp, one.as_ref(), Epsilon::Minus, s).unwrap();
            assert!(r.os2.abs() < 1e-12);
        }
        assert!(matches!(
            theta_solution(ThetaKind::TimelikeHyp, [1.0, 1.0], one.clone(), 0.0, (0.0, 1.0)),
            Err(GeomError::ExcludedCoefficients(..))
        ));
        assert!(matches!(
            theta_solution(ThetaKind::TimelikeHyp, [1.0, -1.0], one.clone(), 0.0, (0.0, 1.0)),
            Err(GeomError::ExcludedCoefficients(..))
        ));
        assert!(matches!(
            theta_solution(ThetaKind::SpacelikeTrig, [1.0, 0.0], one, 0.0, (0.0, 2.0)),
            Err(GeomError::ThetaBlowsUp(_))
        ));
    }
}
