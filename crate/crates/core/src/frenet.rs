//! Frenet apparatus of curves in an almost contact pseudo-metric 3-manifold:
//! direct frames, the θ-formulas for Legendre curves, the φ-adapted frame of a
//! general curve, Reeb decompositions and null frames.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::connection::{alpha_beta, christoffel, AlphaBeta, Christoffel};
use crate::curve::{Curve, Jet};
use crate::diff::along;
use crate::error::{GeomError, Result};
use crate::linalg::{euclid_norm, inner, orthogonal_complement, Point};
use crate::manifold::{metric_with_inverse, outside, AlmostContactStructure, Epsilon, TangentVector, NULL_BAND};
use crate::scalar::{lit, Real};

/// Curvature below which a point is treated as geodesic.
pub const KAPPA_MIN: f64 = 1e-7;
/// Smallest admissible `δ = √|1 − εm²|`.
pub const DELTA_MIN: f64 = 1e-7;
/// Allowed defect `|g(υ′, υ′) − 1|` for unit-speed operations.
pub const UNIT_SPEED_TOL: f64 = 1e-6;
/// Bound on `|η(υ′)|` for the Legendre formulas.
pub const LEGENDRE_TOL: f64 = 1e-7;
/// Smallest admissible denominator in the general torsion formula.
pub const SINGULAR_DEN: f64 = 1e-10;
/// Relative band `|g(υ′, υ′)| ≤ NULL_TOL · |υ′|²` accepted as null.
pub const NULL_TOL: f64 = 1e-7;

/// Everything pointwise that the frame operations share.
struct Kinematics<T: Real> {
    s: T,
    p: Point<T>,
    g: Matrix3<T>,
    g_inv: Matrix3<T>,
    gamma: Christoffel<T>,
    eps: T,
    t: Vector3<T>,
    /// `∇_T T`
    a: Vector3<T>,
    m: T,
    /// `m′ = dη(υ′)/ds`
    m_prime: T,
    xi: Vector3<T>,
    phi: Matrix3<T>,
}

fn kinematics<T, M, C>(mf: &M, c: &C, s: T) -> Result<Kinematics<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let Jet { position: p, d1, d2, .. } = c.jet(s)?;
    if !mf.in_domain(&p) {
        return Err(outside(&p));
    }
    let (g, g_inv) = metric_with_inverse(mf, &p)?;
    let gamma = christoffel(mf, &p)?;
    let eta = mf.eta(&p)?;
    let deta = mf.eta_partials(&p)?;
    Ok(Kinematics {
        s,
        p,
        g,
        g_inv,
        eps: mf.epsilon().value(),
        a: d2 + gamma.apply(&d1, &d1),
        gamma,
        t: d1,
        m: eta.dot(&d1),
        m_prime: d1.dot(&(deta * d1)) + eta.dot(&d2),
        xi: mf.xi(&p)?,
        phi: mf.phi(&p)?,
    })
}

impl<T: Real> Kinematics<T> {
    fn sf(&self) -> f64 {
        self.s.to_f64_lossy()
    }

    fn g(&self, u: &Vector3<T>, v: &Vector3<T>) -> T {
        inner(&self.g, u, v)
    }

    fn require_unit_speed(&self) -> Result<()> {
        let q = self.g(&self.t, &self.t);
        if (q - T::one()).abs() > lit(UNIT_SPEED_TOL) {
            return Err(GeomError::NotUnitSpeed {
                s: self.sf(),
                speed2: q.to_f64_lossy(),
            });
        }
        Ok(())
    }

    fn require_legendre(&self) -> Result<()> {
        if self.m.abs() > lit(LEGENDRE_TOL) {
            return Err(GeomError::NotLegendre(self.m.to_f64_lossy()));
        }
        Ok(())
    }

    /// `(N, κ, g(N, N))`.
    fn normal(&self) -> Result<(Vector3<T>, T, T)> {
        let na = euclid_norm(&self.a);
        if na < lit(KAPPA_MIN) {
            return Err(GeomError::Geodesic(self.sf()));
        }
        let q = self.g(&self.a, &self.a);
        if q.abs() <= lit::<T>(NULL_BAND) * na * na {
            return Err(GeomError::LightlikeNormal(self.sf()));
        }
        let kappa = q.abs().sqrt();
        if kappa <= lit(KAPPA_MIN) {
            return Err(GeomError::Geodesic(self.sf()));
        }
        Ok((self.a / kappa, kappa, q.signum()))
    }

    /// Unit `g`-normal of the `T, N` plane, `(B, g(B, B))`.
    fn binormal(&self, n: &Vector3<T>) -> (Vector3<T>, T) {
        let w = orthogonal_complement(&self.g_inv, &self.t, n);
        let q = self.g(&w, &w);
        (w / q.abs().sqrt(), q.signum())
    }

    fn delta(&self) -> Result<T> {
        let d = (T::one() - self.eps * self.m * self.m).abs().sqrt();
        if d <= lit(DELTA_MIN) {
            return Err(GeomError::DegenerateFrame {
                s: self.sf(),
                delta: d.to_f64_lossy(),
            });
        }
        Ok(d)
    }

    /// `g(∇_T T, φT)`.
    fn theta(&self) -> T {
        self.g(&self.a, &(self.phi * self.t))
    }

    fn tangent(&self, v: Vector3<T>) -> TangentVector<T> {
        TangentVector::new(self.p, v)
    }
}

/// `∇_T X` for a field `x` defined along the curve.
fn nabla_along<T, C, F>(c: &C, k: &Kinematics<T>, x0: &Vector3<T>, x: F) -> Result<Vector3<T>>
where
    T: Real,
    C: Curve<T> + ?Sized,
    F: Fn(T) -> Result<Vector3<T>>,
{
    let (lo, hi) = c.domain();
    let dx: Vector3<T> = along(x, k.s, c.preferred_step(), lo, hi, 1)?;
    Ok(dx + k.gamma.apply(&k.t, x0))
}

fn scalar_rate<T, C, F>(c: &C, s: T, f: F) -> Result<T>
where
    T: Real,
    C: Curve<T> + ?Sized,
    F: Fn(T) -> Result<T>,
{
    let (lo, hi) = c.domain();
    along(f, s, c.preferred_step(), lo, hi, 1)
}

fn sign_i8<T: Real>(v: T) -> i8 {
    if v < T::zero() {
        -1
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetResiduals<T> {
    /// Worst defect among the pairings of `T, N, B`.
    pub orthonormality: T,
    /// `|∇_T T − κN|`
    pub tangent: T,
    /// `|∇_T N + g(N,N) κT − ε τ B|`
    pub normal: T,
    /// `|∇_T B + τ N|`
    pub binormal: T,
}

impl<T: Real> FrenetResiduals<T> {
    pub fn max(&self) -> T {
        self.orthonormality
            .max(self.tangent)
            .max(self.normal)
            .max(self.binormal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetData<T: Real> {
    pub t: TangentVector<T>,
    pub n: TangentVector<T>,
    pub b: TangentVector<T>,
    pub kappa: T,
    pub tau: T,
    pub tau_signed: T,
    /// `g(N, N)`
    pub sign_n: i8,
    /// `g(B, B)`
    pub sign_b: i8,
    pub residuals: FrenetResiduals<T>,
}

/// Frenet frame from `∇_T T`, with `B` the `g`-normal of the `T, N` plane
/// (`g⁻¹` applied to the chart cross product), so `B` varies continuously
/// wherever `N` does.
///
/// The equations checked are `∇_T N = −g(N,N) κT + ε τ B` and `∇_T B = −τN`,
/// with `τ` signed.
pub fn frenet_direct<T, M, C>(mf: &M, c: &C, s: T) -> Result<FrenetData<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let k = kinematics(mf, c, s)?;
    k.require_unit_speed()?;
    let (n, kappa, sn) = k.normal()?;
    let (b, sb) = k.binormal(&n);

    let dt = nabla_along(c, &k, &k.t, |u| Ok(c.jet(u)?.d1))?;
    let dn = nabla_along(c, &k, &n, |u| Ok(kinematics(mf, c, u)?.normal()?.0))?;
    let db = nabla_along(c, &k, &b, |u| {
        let ku = kinematics(mf, c, u)?;
        let (nu, _, _) = ku.normal()?;
        Ok(ku.binormal(&nu).0)
    })?;

    let r = dn - k.t * (k.g(&dn, &k.t) / k.g(&k.t, &k.t));
    let tau_signed = k.eps * k.g(&r, &b) * sb;

    let one = T::one();
    let orth = [
        (k.g(&k.t, &k.t) - one).abs(),
        k.g(&k.t, &n).abs(),
        k.g(&k.t, &b).abs(),
        k.g(&n, &b).abs(),
        (k.g(&n, &n).abs() - one).abs(),
        (k.g(&b, &b).abs() - one).abs(),
    ]
    .into_iter()
    .fold(T::zero(), T::max);
    let residuals = FrenetResiduals {
        orthonormality: orth,
        tangent: euclid_norm(&(dt - n * kappa)),
        normal: euclid_norm(&(dn + k.t * (sn * kappa) - b * (k.eps * tau_signed))),
        binormal: euclid_norm(&(db + n * tau_signed)),
    };
    Ok(FrenetData {
        t: k.tangent(k.t),
        n: k.tangent(n),
        b: k.tangent(b),
        kappa,
        tau: tau_signed.abs(),
        tau_signed,
        sign_n: sign_i8(sn),
        sign_b: sign_i8(sb),
        residuals,
    })
}

/// `θ = g(∇_T T, φT)` without any hypothesis checks.
pub fn theta_along<T, M, C>(mf: &M, c: &C, s: T) -> Result<T>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    Ok(kinematics(mf, c, s)?.theta())
}

/// `(T, N, B)` of the direct frame, without derivatives.
pub(crate) fn frame_vectors<T, M, C>(mf: &M, c: &C, s: T) -> Result<(Vector3<T>, Vector3<T>, Vector3<T>)>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let k = kinematics(mf, c, s)?;
    let (n, _, _) = k.normal()?;
    let (b, _) = k.binormal(&n);
    Ok((k.t, n, b))
}

/// Curvature and torsion of a Legendre curve from `θ = g(∇_T T, φT)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegendreKappaTau<T> {
    pub kappa: T,
    pub tau: T,
    /// `α + (βθ′ − β′θ)/κ²`
    pub tau_signed: T,
    /// `α + (βθ′ − β′θ)/(θ² + εβ²)`; differs from `tau_signed` in sign of the
    /// correction when `θ² + εβ² < 0`.
    pub tau_c: T,
    pub theta: T,
    pub theta_prime: T,
    pub alpha: T,
    pub beta: T,
    pub beta_prime: T,
}

pub fn legendre_kappa_tau<T, M, C>(mf: &M, c: &C, s: T) -> Result<LegendreKappaTau<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let k = kinematics(mf, c, s)?;
    k.require_unit_speed()?;
    k.require_legendre()?;
    let AlphaBeta { alpha, beta } = alpha_beta(mf, &k.p)?;
    let theta = k.theta();
    let den = theta * theta + k.eps * beta * beta;
    let kappa = den.abs().sqrt();
    if kappa <= lit(KAPPA_MIN) {
        return Err(GeomError::Geodesic(k.sf()));
    }
    let theta_prime = scalar_rate(c, s, |u| Ok(kinematics(mf, c, u)?.theta()))?;
    let beta_prime = scalar_rate(c, s, |u| Ok(alpha_beta(mf, &c.position(u)?)?.beta))?;
    let num = beta * theta_prime - beta_prime * theta;
    let tau_signed = alpha + num / (kappa * kappa);
    Ok(LegendreKappaTau {
        kappa,
        tau: tau_signed.abs(),
        tau_signed,
        tau_c: alpha + num / den,
        theta,
        theta_prime,
        alpha,
        beta,
        beta_prime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReebLegendre<T> {
    /// `−εβ/κ`
    pub coeff_n: T,
    /// `εθ/κ`
    pub coeff_b: T,
    /// `|ξ − coeff_n N − coeff_b B|` in the frame of [`frenet_direct`].
    pub residual: T,
    /// Whether `B` of the direct frame had to be reversed to match.
    pub b_reversed: bool,
}

/// `ξ = (ε/κ)(−βN + θB)`. `B` is taken from [`frenet_direct`] and reversed
/// when `g(ξ, B)` has the opposite sign to `θ`.
pub fn reeb_decomposition_legendre<T, M, C>(mf: &M, c: &C, s: T) -> Result<ReebLegendre<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let kt = legendre_kappa_tau(mf, c, s)?;
    let fr = frenet_direct(mf, c, s)?;
    let k = kinematics(mf, c, s)?;
    let eps = k.eps;
    let (n, mut b) = (fr.n.components, fr.b.components);
    let along_b = k.g(&k.xi, &b);
    let b_reversed = along_b * eps * kt.theta < T::zero();
    if b_reversed {
        b = -b;
    }
    let coeff_n = -eps * kt.beta / kt.kappa;
    let coeff_b = eps * kt.theta / kt.kappa;
    Ok(ReebLegendre {
        coeff_n,
        coeff_b,
        residual: euclid_norm(&(k.xi - n * coeff_n - b * coeff_b)),
        b_reversed,
    })
}

/// The frame `V₁ = υ′`, `V₂ = φυ′/δ`, `V₃ = (ξ − εmυ′)/δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiFrameData<T: Real> {
    /// `g(∇_υ′υ′, φυ′)`
    pub theta: T,
    pub m: T,
    pub m_prime: T,
    pub delta: T,
    /// `θ/δ²`
    pub theta1: T,
    pub v1: TangentVector<T>,
    pub v2: TangentVector<T>,
    pub v3: TangentVector<T>,
    /// Worst defect of `g(Vᵢ, Vⱼ) = diag(1, 1, ε)`.
    pub orthonormality: T,
    /// `|ξ − εmV₁ − δV₃|`
    pub xi_residual: T,
}

fn phi_vectors<T: Real>(k: &Kinematics<T>) -> Result<(T, Vector3<T>, Vector3<T>)> {
    let delta = k.delta()?;
    let v2 = k.phi * k.t / delta;
    let v3 = (k.xi - k.t * (k.eps * k.m)) / delta;
    Ok((delta, v2, v3))
}

pub fn vframe<T, M, C>(mf: &M, c: &C, s: T) -> Result<PhiFrameData<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let k = kinematics(mf, c, s)?;
    k.require_unit_speed()?;
    let (delta, v2, v3) = phi_vectors(&k)?;
    let v1 = k.t;
    let one = T::one();
    let orthonormality = [
        (k.g(&v1, &v1) - one).abs(),
        (k.g(&v2, &v2) - one).abs(),
        (k.g(&v3, &v3) - k.eps).abs(),
        k.g(&v1, &v2).abs(),
        k.g(&v1, &v3).abs(),
        k.g(&v2, &v3).abs(),
    ]
    .into_iter()
    .fold(T::zero(), T::max);
    let theta = k.theta();
    Ok(PhiFrameData {
        theta,
        m: k.m,
        m_prime: k.m_prime,
        delta,
        theta1: theta / (delta * delta),
        v1: k.tangent(v1),
        v2: k.tangent(v2),
        v3: k.tangent(v3),
        orthonormality,
        xi_residual: euclid_norm(&(k.xi - v1 * (k.eps * k.m) - v3 * delta)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VFrameResiduals<T> {
    /// `|∇V₁ − δθ₁V₂ + (βδ − m′/δ)V₃|`
    pub e1: T,
    /// `|∇V₂ + δθ₁V₁ − (α + mθ₁)V₃|`
    pub e2: T,
    /// `|∇V₃ − ε((βδ − m′/δ)V₁ − (α + mθ₁)V₂)|`
    pub e3: T,
}

impl<T: Real> VFrameResiduals<T> {
    pub fn max(&self) -> T {
        self.e1.max(self.e2).max(self.e3)
    }
}

/// Residuals of the covariant derivatives of `V₁, V₂, V₃` against their
/// expansion in the frame.
pub fn vframe_derivative_residuals<T, M, C>(mf: &M, c: &C, s: T) -> Result<VFrameResiduals<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let k = kinematics(mf, c, s)?;
    k.require_unit_speed()?;
    let (delta, v2, v3) = phi_vectors(&k)?;
    let v1 = k.t;
    let AlphaBeta { alpha, beta } = alpha_beta(mf, &k.p)?;
    let theta1 = k.theta() / (delta * delta);
    let frame_at = |u: T| -> Result<(Vector3<T>, Vector3<T>)> {
        let ku = kinematics(mf, c, u)?;
        let (_, a, b) = phi_vectors(&ku)?;
        Ok((a, b))
    };
    let dv1 = k.a;
    let dv2 = nabla_along(c, &k, &v2, |u| Ok(frame_at(u)?.0))?;
    let dv3 = nabla_along(c, &k, &v3, |u| Ok(frame_at(u)?.1))?;
    let p = beta * delta - k.m_prime / delta;
    let q = alpha + k.m * theta1;
    Ok(VFrameResiduals {
        e1: euclid_norm(&(dv1 - v2 * (delta * theta1) + v3 * p)),
        e2: euclid_norm(&(dv2 + v1 * (delta * theta1) - v3 * q)),
        e3: euclid_norm(&(dv3 - (v1 * p - v2 * q) * k.eps)),
    })
}

/// Curvature and torsion of a unit-speed curve through `m = η(υ′)`, `δ` and `θ₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralKappaTau<T> {
    pub kappa: T,
    pub tau: T,
    pub tau_signed: T,
    pub m: T,
    pub m_prime: T,
    pub delta: T,
    pub theta1: T,
    /// `θ₁² + ε(β − m′/δ²)²`
    pub den: T,
    pub alpha: T,
    pub beta: T,
}

pub fn general_kappa_tau<T, M, C>(mf: &M, c: &C, s: T) -> Result<GeneralKappaTau<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let k = kinematics(mf, c, s)?;
    k.require_unit_speed()?;
    let delta = k.delta()?;
    let AlphaBeta { alpha, beta } = alpha_beta(mf, &k.p)?;
    let d2 = delta * delta;
    let theta1 = k.theta() / d2;
    let w = beta - k.m_prime / d2;
    let den = theta1 * theta1 + k.eps * w * w;
    let kappa = delta * den.abs().sqrt();
    if kappa <= lit(KAPPA_MIN) {
        return Err(GeomError::Geodesic(k.sf()));
    }
    if den.abs() < lit(SINGULAR_DEN) {
        return Err(GeomError::SingularTorsion(k.sf()));
    }
    // (θ₁, β, m′θ₁/δ²) along the curve
    let triple = |u: T| -> Result<Vector3<T>> {
        let ku = kinematics(mf, c, u)?;
        let du = ku.delta()?;
        let t1 = ku.theta() / (du * du);
        Ok(Vector3::new(
            t1,
            alpha_beta(mf, &ku.p)?.beta,
            ku.m_prime * t1 / (du * du),
        ))
    };
    let (lo, hi) = c.domain();
    let rate: Vector3<T> = along(triple, s, c.preferred_step(), lo, hi, 1)?;
    let (theta1_p, beta_p, p_p) = (rate[0], rate[1], rate[2]);
    let two: T = lit(2.0);
    let num = beta * theta1_p - beta_p * theta1 - two * k.m_prime * theta1_p / d2 + p_p;
    let tau_signed = alpha + k.m * theta1 + num / den;
    Ok(GeneralKappaTau {
        kappa,
        tau: tau_signed.abs(),
        tau_signed,
        m: k.m,
        m_prime: k.m_prime,
        delta,
        theta1,
        den,
        alpha,
        beta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReebGeneral<T> {
    pub m: T,
    /// `(m′ − βδ²)/κ`
    pub eta_n: T,
    /// `ε sgn(τ) δ²θ₁/κ`
    pub eta_b: T,
    /// `η(N)` read off the direct frame.
    pub eta_n_frame: T,
    /// `η(B₊)` read off the direct frame, `B₊ = sgn(τ) B`.
    pub eta_b_frame: T,
    /// `|ξ − εmT − ε g(N,N) η(N) N − ε g(B,B) η(B) B₊|` with the formula values.
    pub residual: T,
    /// `η(B)² + εη(N)² − δ²`, meaningful when `N` is spacelike.
    pub identity_spacelike_n: T,
    /// `ε(g(N,N)η(N)² + g(B,B)η(B)²) − δ²`, valid for either causal type of `N`.
    pub identity_general: T,
    pub n_spacelike: bool,
    pub delta: T,
}

/// Coefficients of `ξ` in the direct Frenet frame from `m`, `δ`, `θ₁`.
pub fn reeb_decomposition_general<T, M, C>(mf: &M, c: &C, s: T) -> Result<ReebGeneral<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    let kt = general_kappa_tau(mf, c, s)?;
    let fr = frenet_direct(mf, c, s)?;
    let k = kinematics(mf, c, s)?;
    let eps = k.eps;
    let d2 = kt.delta * kt.delta;
    let sgn_tau: T = if kt.tau_signed < T::zero() { -T::one() } else { T::one() };
    let eta_n = (kt.m_prime - kt.beta * d2) / kt.kappa;
    let eta_b = eps * sgn_tau * d2 * kt.theta1 / kt.kappa;

    let sgn_direct: T = if fr.tau_signed < T::zero() { -T::one() } else { T::one() };
    let (n, b_plus) = (fr.n.components, fr.b.components * sgn_direct);
    let sn: T = lit(fr.sign_n as f64);
    let sb: T = lit(fr.sign_b as f64);
    let eta = mf.eta(&k.p)?;
    let residual = euclid_norm(
        &(k.xi - k.t * (eps * k.m) - n * (eps * sn * eta_n) - b_plus * (eps * sb * eta_b)),
    );
    Ok(ReebGeneral {
        m: k.m,
        eta_n,
        eta_b,
        eta_n_frame: eta.dot(&n),
        eta_b_frame: eta.dot(&b_plus),
        residual,
        identity_spacelike_n: eta_b * eta_b + eps * eta_n * eta_n - d2,
        identity_general: eps * (sn * eta_n * eta_n + sb * eta_b * eta_b) - d2,
        n_spacelike: fr.sign_n > 0,
        delta: kt.delta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullFrameResiduals<T> {
    /// Worst defect of the pairings `g(U,U)=1`, `g(T,T)=g(V,V)=0`, `g(T,V)=−1`,
    /// `g(T,U)=g(U,V)=0`.
    pub pairings: T,
    /// `|∇_T T − hT − κ₁U|`
    pub tangent: T,
    /// `|∇_T U + τ₁T − κ₁V|`
    pub screen: T,
    /// `|∇_T V + hV + τ₁U|`
    pub transversal: T,
}

impl<T: Real> NullFrameResiduals<T> {
    pub fn reconstruction(&self) -> T {
        self.tangent.max(self.screen).max(self.transversal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullFrameData<T: Real> {
    pub t: TangentVector<T>,
    pub u: TangentVector<T>,
    pub v: TangentVector<T>,
    pub h: T,
    pub kappa1: T,
    pub tau1: T,
    pub residuals: NullFrameResiduals<T>,
}

fn require_null<T: Real>(k: &Kinematics<T>) -> Result<()> {
    let q = k.g(&k.t, &k.t);
    let n2 = k.t.dot(&k.t);
    if n2 == T::zero() {
        return Err(GeomError::ZeroVector);
    }
    if q.abs() > lit::<T>(NULL_TOL) * n2 {
        return Err(GeomError::NotNull {
            s: k.sf(),
            speed2: q.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Screen vector `U` and transversal `V` at a null point.
fn null_legs<T: Real>(k: &Kinematics<T>) -> Result<(Vector3<T>, Vector3<T>)> {
    let cov = k.g * k.t;
    let cc = cov.dot(&cov);
    let band: T = lit(1e-8);
    let mut u = None;
    for seed in [k.phi * k.t, k.xi] {
        let w = seed - cov * (cov.dot(&seed) / cc);
        let q = k.g(&w, &w);
        if q > band * w.dot(&w).max(T::one()) {
            u = Some(w / q.sqrt());
            break;
        }
    }
    let u = u.ok_or(GeomError::DegenerateSeed(k.sf()))?;
    let mut z = k.xi;
    if k.g(&z, &k.t).abs() <= band * euclid_norm(&cov) * euclid_norm(&z) {
        let i = (0..3)
            .max_by(|&i, &j| cov[i].abs().partial_cmp(&cov[j].abs()).unwrap())
            .unwrap_or(0);
        z = Vector3::ith(i, T::one());
    }
    z -= u * k.g(&z, &u);
    z /= -k.g(&z, &k.t);
    let v = z + k.t * (k.g(&z, &z) * lit(0.5));
    Ok((u, v))
}

/// Null frame `{T, U, V}` of a null curve in a structure with timelike `ξ`.
/// `U` is `φT` (or `ξ` when that fails) projected to `T^⊥` along the Euclidean
/// normal of that plane; `V` starts from `ξ`.
pub fn build_null_frame<T, M, C>(mf: &M, c: &C, s: T) -> Result<NullFrameData<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    if mf.epsilon() != Epsilon::Minus {
        return Err(GeomError::NullFrameNeedsTimelike);
    }
    let k = kinematics(mf, c, s)?;
    require_null(&k)?;
    let (u, v) = null_legs(&k)?;
    let legs_at = |w: T| -> Result<(Vector3<T>, Vector3<T>)> { null_legs(&kinematics(mf, c, w)?) };
    let du = nabla_along(c, &k, &u, |w| Ok(legs_at(w)?.0))?;
    let dv = nabla_along(c, &k, &v, |w| Ok(legs_at(w)?.1))?;
    let t = k.t;
    let h = -k.g(&k.a, &v);
    let kappa1 = k.g(&k.a, &u);
    let tau1 = k.g(&du, &v);
    let one = T::one();
    let pairings = [
        (k.g(&u, &u) - one).abs(),
        k.g(&t, &t).abs(),
        k.g(&v, &v).abs(),
        (k.g(&t, &v) + one).abs(),
        k.g(&t, &u).abs(),
        k.g(&u, &v).abs(),
    ]
    .into_iter()
    .fold(T::zero(), T::max);
    let residuals = NullFrameResiduals {
        pairings,
        tangent: euclid_norm(&(k.a - t * h - u * kappa1)),
        screen: euclid_norm(&(du + t * tau1 - v * kappa1)),
        transversal: euclid_norm(&(dv + v * h + u * tau1)),
    };
    Ok(NullFrameData {
        t: k.tangent(t),
        u: k.tangent(u),
        v: k.tangent(v),
        h,
        kappa1,
        tau1,
        residuals,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullGeodesicReport {
    /// `max |η(υ′)| < tol` on the grid.
    pub legendre: bool,
    pub max_abs_m: f64,
    /// `max |b₃|` in `∇_υ′υ′ = a₃υ′ + b₃U`.
    pub max_abs_b3: f64,
    pub max_abs_a3: f64,
    /// `max |∇_υ′υ′ − a₃υ′|` (Euclidean).
    pub max_proportionality_defect: f64,
    pub samples: usize,
    pub tol: f64,
}

/// Decomposes `∇_υ′υ′` in the null frame along `grid`. Runs whether or not
/// the curve is Legendre; `legendre` records that hypothesis.
pub fn null_legendre_geodesic_check<T, M, C>(mf: &M, c: &C, grid: &[T], tol: T) -> Result<NullGeodesicReport>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    C: Curve<T> + ?Sized,
{
    if grid.is_empty() {
        return Err(GeomError::EmptyGrid);
    }
    if mf.epsilon() != Epsilon::Minus {
        return Err(GeomError::NullFrameNeedsTimelike);
    }
    let (mut m, mut a3, mut b3, mut defect) = (T::zero(), T::zero(), T::zero(), T::zero());
    for &s in grid {
        let k = kinematics(mf, c, s)?;
        require_null(&k)?;
        let (u, v) = null_legs(&k)?;
        let a = -k.g(&k.a, &v);
        let b = k.g(&k.a, &u);
        m = m.max(k.m.abs());
        a3 = a3.max(a.abs());
        b3 = b3.max(b.abs());
        defect = defect.max(euclid_norm(&(k.a - k.t * a)));
    }
    Ok(NullGeodesicReport {
        legendre: m < tol,
        max_abs_m: m.to_f64_lossy(),
        max_abs_b3: b3.to_f64_lossy(),
        max_abs_a3: a3.to_f64_lossy(),
        max_proportionality_defect: defect.to_f64_lossy(),
        samples: grid.len(),
        tol: tol.to_f64_lossy(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{ExprCurve, SampledCurve};
    use crate::legendre::builtin_legendre;
    use crate::manifold::{N3, Q3};

    fn n3(e: Epsilon) -> N3 {
        N3 { epsilon: e }
    }

    #[test]
    fn upsilon1_values() {
        let c = builtin_legendre("upsilon1").unwrap();
        let m = n3(Epsilon::Plus);
        for (s, kappa, tau) in [(0.0f64, 1.0, 1.0), (1.0, 5f64.sqrt(), 0.6), (2.0, 17f64.sqrt(), 1.0 - 2.0 / 17.0)] {
            let f = frenet_direct(&m, &c, s).unwrap();
            assert!((f.kappa - kappa).abs() < 1e-9, "{s}");
            assert!((f.tau - tau).abs() < 1e-8, "{s}: {}", f.tau);
            assert!(f.residuals.max() < 1e-7, "{:?}", f.residuals);
            let l = legendre_kappa_tau(&m, &c, s).unwrap();
            assert!((l.kappa - kappa).abs() < 1e-12);
            assert!((l.tau - tau).abs() < 1e-9);
            assert!((l.theta + 2.0 * s).abs() < 1e-12);
        }
    }

    #[test]
    fn upsilon2_values() {
        let c = builtin_legendre("upsilon2").unwrap();
        let m = n3(Epsilon::Plus);
        for s in [1.0f64, 2.0, 4.0] {
            let f = frenet_direct(&m, &c, s).unwrap();
            assert!((f.kappa - 1.0).abs() < 1e-10);
            assert!((f.tau - 1.0 / (s * s)).abs() < 1e-8);
            let l = legendre_kappa_tau(&m, &c, s).unwrap();
            assert!(l.theta.abs() < 1e-12);
            assert!((l.tau - 1.0 / (s * s)).abs() < 1e-9);
            let r = reeb_decomposition_legendre(&m, &c, s).unwrap();
            assert!((r.coeff_n + 1.0).abs() < 1e-12 && r.coeff_b.abs() < 1e-12);
            assert!(r.residual < 1e-9);
            let g = reeb_decomposition_general(&m, &c, s).unwrap();
            assert!((g.eta_n + 1.0).abs() < 1e-9 && g.eta_b.abs() < 1e-9);
        }
    }

    #[test]
    fn geodesic_is_flagged() {
        let m = Q3 { epsilon: Epsilon::Plus };
        let c2 = ExprCurve::new("xi", ["1", "0", "s"], (-1.0, 1.0)).unwrap();
        assert!(matches!(frenet_direct(&m, &c2, 0.2), Err(GeomError::Geodesic(_))));
        assert!(matches!(
            frenet_direct(&n3(Epsilon::Plus), &c2, 0.2),
            Err(GeomError::Geodesic(_))
        ));
        // flow line of ξ: δ = 0
        assert!(matches!(
            vframe(&n3(Epsilon::Plus), &c2, 0.2),
            Err(GeomError::DegenerateFrame { .. })
        ));
    }

    #[test]
    fn legendre_formula_rejects_non_legendre() {
        let c = ExprCurve::new("c", ["0", "sin(s)", "cos(s)"], (-3.0, 3.0)).unwrap();
        let m = n3(Epsilon::Plus);
        let r = legendre_kappa_tau(&m, &c, 0.5);
        assert!(matches!(r, Err(GeomError::NotLegendre(_)) | Err(GeomError::NotUnitSpeed { .. })));
    }

    #[test]
    fn null_frame_on_null_curve() {
        let m = Q3 { epsilon: Epsilon::Minus };
        let c = ExprCurve::new("null", ["1 + s", "0", "s + s^2/2"], (-0.5, 0.5)).unwrap();
        for s in [-0.3f64, 0.0, 0.25] {
            let f = build_null_frame(&m, &c, s).unwrap();
            assert!(f.residuals.pairings < 1e-12, "{:?}", f.residuals);
            assert!(f.residuals.reconstruction() < 1e-8, "{:?}", f.residuals);
        }
        let plus = Q3 { epsilon: Epsilon::Plus };
        assert_eq!(
            build_null_frame(&plus, &c, 0.0).unwrap_err(),
            GeomError::NullFrameNeedsTimelike
        );
        let spacelike = ExprCurve::new("sp", ["1 + s", "0", "0"], (-0.5, 0.5)).unwrap();
        assert!(matches!(
            build_null_frame(&m, &spacelike, 0.0),
            Err(GeomError::NotNull { .. })
        ));
    }

    #[test]
    fn sampled_null_geodesic_has_no_screen_part() {
        let m = Q3 { epsilon: Epsilon::Minus };
        let steps = 400;
        let path = crate::connection::integrate_geodesic(
            &m,
            &Vector3::new(1.0, 0.0, 0.0),
            &Vector3::new(1.0, 0.0, 1.0),
            0.4,
            steps,
        )
        .unwrap();
        let s: Vec<f64> = path.iter().map(|p| p.t).collect();
        let pts = path.iter().map(|p| p.position).collect();
        let c = SampledCurve::new("geo", s.clone(), pts).unwrap();
        let r = null_legendre_geodesic_check(&m, &c, &s[2..steps - 1], 1e-8).unwrap();
        assert!(r.max_abs_b3 < 1e-8, "{r:?}");
        assert!(!r.legendre);
    }
}
