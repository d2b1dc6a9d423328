//! Levi-Civita connection, the structure functions α, β and the normality checks.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::diff::{chart_partial, richardson};
use crate::error::{GeomError, Result};
use crate::linalg::{euclid_norm, inverse3, max_abs_mat, PseudoBasis, Point};
use crate::manifold::{
    ensure_domain, metric_with_inverse, AlmostContactStructure, StructureReport,
};
use crate::scalar::{lit, Real};

/// Coefficients `Γᵏᵢⱼ` at a point; `gamma[k][(i, j)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel<T: Real> {
    pub gamma: [Matrix3<T>; 3],
}

impl<T: Real> Christoffel<T> {
    pub fn zero() -> Self {
        Christoffel {
            gamma: [Matrix3::zeros(); 3],
        }
    }

    /// Sets `∇_{∂i}∂j = ∇_{∂j}∂i = Σ_k v[k] ∂_k`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: [T; 3]) {
        for k in 0..3 {
            self.gamma[k][(i, j)] = v[k];
            self.gamma[k][(j, i)] = v[k];
        }
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> T {
        self.gamma[k][(i, j)]
    }

    /// Components of `∇_{∂i}∂j`.
    pub fn coordinate(&self, i: usize, j: usize) -> Vector3<T> {
        Vector3::new(self.get(0, i, j), self.get(1, i, j), self.get(2, i, j))
    }

    /// `Γᵏᵢⱼ uⁱ vʲ`.
    pub fn apply(&self, u: &Vector3<T>, v: &Vector3<T>) -> Vector3<T> {
        Vector3::new(
            u.dot(&(self.gamma[0] * v)),
            u.dot(&(self.gamma[1] * v)),
            u.dot(&(self.gamma[2] * v)),
        )
    }

    /// `max |Γᵏᵢⱼ − Γᵏⱼᵢ|`.
    pub fn max_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for k in 0..3 {
            worst = worst.max(max_abs_mat(&(self.gamma[k] - self.gamma[k].transpose())));
        }
        worst
    }

    pub fn max_difference(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for k in 0..3 {
            worst = worst.max(max_abs_mat(&(self.gamma[k] - other.gamma[k])));
        }
        worst
    }
}

/// `Γᵏᵢⱼ = ½ gᵏˡ(∂ᵢg_jl + ∂ⱼg_il − ∂_l g_ij)` from the inverse metric and `[∂_x g, ∂_y g, ∂_z g]`.
pub fn christoffel_from_partials<T: Real>(g_inv: &Matrix3<T>, dg: &[Matrix3<T>; 3]) -> Christoffel<T> {
    let half: T = lit(0.5);
    let mut lowered = [Matrix3::<T>::zeros(); 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                lowered[l][(i, j)] = half * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
            }
        }
    }
    let mut c = Christoffel::zero();
    for k in 0..3 {
        for l in 0..3 {
            c.gamma[k] += lowered[l] * g_inv[(k, l)];
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionSource {
    /// Closed-form table when the structure has one, else exact metric partials.
    ClosedForm,
    /// Richardson central differences of the metric itself.
    FiniteDifference,
}

/// Evaluation strategy for `Γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionField<T: Real> {
    pub source: ConnectionSource,
    pub fd_step: T,
}

impl<T: Real> Default for ConnectionField<T> {
    fn default() -> Self {
        ConnectionField::closed_form()
    }
}

impl<T: Real> ConnectionField<T> {
    pub fn closed_form() -> Self {
        ConnectionField {
            source: ConnectionSource::ClosedForm,
            fd_step: T::chart_step(),
        }
    }

    pub fn finite_difference() -> Self {
        ConnectionField {
            source: ConnectionSource::FiniteDifference,
            fd_step: T::chart_step(),
        }
    }

    pub fn gamma<M: AlmostContactStructure<T> + ?Sized>(
        &self,
        m: &M,
        p: &Point<T>,
    ) -> Result<Christoffel<T>> {
        match self.source {
            ConnectionSource::ClosedForm => christoffel(m, p),
            ConnectionSource::FiniteDifference => christoffel_fd(m, p, self.fd_step),
        }
    }
}

/// `Γ` at `p`, from the closed-form table when available.
pub fn christoffel<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
) -> Result<Christoffel<T>> {
    let (_, g_inv) = metric_with_inverse(m, p)?;
    if let Some(c) = m.christoffel_table(p) {
        return Ok(c);
    }
    Ok(christoffel_from_partials(&g_inv, &m.metric_partials(p)?))
}

/// `Γ` at `p` from finite differences of the metric with base step `h`.
pub fn christoffel_fd<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
    h: T,
) -> Result<Christoffel<T>> {
    let (_, g_inv) = metric_with_inverse(m, p)?;
    let f = |q: &Point<T>| m.metric(q);
    let dg = [
        chart_partial(f, p, 0, h)?,
        chart_partial(f, p, 1, h)?,
        chart_partial(f, p, 2, h)?,
    ];
    Ok(christoffel_from_partials(&g_inv, &dg))
}

/// `(∇_X Y)ᵏ = X(Yᵏ) + Γᵏᵢⱼ Xⁱ Yʲ` for a vector field `y` given on a neighbourhood of `p`.
pub fn covariant_derivative<T, M, F>(
    m: &M,
    field: &ConnectionField<T>,
    p: &Point<T>,
    x: &Vector3<T>,
    y: F,
) -> Result<Vector3<T>>
where
    T: Real,
    M: AlmostContactStructure<T> + ?Sized,
    F: Fn(&Point<T>) -> Result<Vector3<T>>,
{
    ensure_domain(m, p)?;
    let gamma = field.gamma(m, p)?;
    let mut dy = Vector3::zeros();
    for i in 0..3 {
        if x[i] != T::zero() {
            let d: Vector3<T> = chart_partial(&y, p, i, field.fd_step)?;
            dy += d * x[i];
        }
    }
    Ok(dy + gamma.apply(x, &y(p)?))
}

/// Matrix whose column `i` is `∇_{∂i} ξ`.
pub fn nabla_xi<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    field: &ConnectionField<T>,
    p: &Point<T>,
) -> Result<Matrix3<T>> {
    let gamma = field.gamma(m, p)?;
    let xi = m.xi(p)?;
    let dxi = m.xi_partials(p)?;
    let mut out = Matrix3::zeros();
    for i in 0..3 {
        let col = dxi.column(i) + gamma.apply(&Vector3::ith(i, T::one()), &xi);
        out.set_column(i, &col);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaBeta<T> {
    pub alpha: T,
    pub beta: T,
}

/// `α = (ε/2) tr(φ∇ξ)`, `β = (ε/2) tr(∇ξ)` with metric traces over a
/// pseudo-orthonormal basis.
pub fn alpha_beta<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
) -> Result<AlphaBeta<T>> {
    alpha_beta_with(m, &ConnectionField::closed_form(), p)
}

pub fn alpha_beta_with<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    field: &ConnectionField<T>,
    p: &Point<T>,
) -> Result<AlphaBeta<T>> {
    ensure_domain(m, p)?;
    let g = m.metric(p)?;
    let basis = PseudoBasis::new(&g)?;
    let a = nabla_xi(m, field, p)?;
    let half_e = m.epsilon().value::<T>() * lit(0.5);
    Ok(AlphaBeta {
        alpha: half_e * basis.trace(&g, &(m.phi(p)? * a)),
        beta: half_e * basis.trace(&g, &a),
    })
}

/// `‖∇_Xξ − (−εαφX + εβ(X − η(X)ξ))‖` for a constant-component `X`.
pub fn nabla_xi_residual<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
    x: &Vector3<T>,
) -> Result<T> {
    let field = ConnectionField::closed_form();
    let ab = alpha_beta_with(m, &field, p)?;
    let e: T = m.epsilon().value();
    let xi = m.xi(p)?;
    let lhs = nabla_xi(m, &field, p)? * x;
    let rhs = m.phi(p)? * x * (-e * ab.alpha) + (x - xi * m.eta(p)?.dot(x)) * (e * ab.beta);
    Ok(euclid_norm(&(lhs - rhs)))
}

/// `‖∇_{φX}ξ − φ∇_Xξ‖`.
pub fn phi_commutation_residual<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
    x: &Vector3<T>,
) -> Result<T> {
    ensure_domain(m, p)?;
    let a = nabla_xi(m, &ConnectionField::closed_form(), p)?;
    let phi = m.phi(p)?;
    Ok(euclid_norm(&(a * (phi * x) - phi * (a * x))))
}

/// `(∇_Xφ)Y` for constant-component `X`, `Y`.
pub fn nabla_phi<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    field: &ConnectionField<T>,
    p: &Point<T>,
    x: &Vector3<T>,
    y: &Vector3<T>,
) -> Result<Vector3<T>> {
    ensure_domain(m, p)?;
    let gamma = field.gamma(m, p)?;
    let phi = m.phi(p)?;
    let dphi = match field.source {
        ConnectionSource::ClosedForm => m.phi_partials(p)?,
        ConnectionSource::FiniteDifference => {
            let f = |q: &Point<T>| m.phi(q);
            [
                chart_partial(f, p, 0, field.fd_step)?,
                chart_partial(f, p, 1, field.fd_step)?,
                chart_partial(f, p, 2, field.fd_step)?,
            ]
        }
    };
    let directional = dphi[0] * x[0] + dphi[1] * x[1] + dphi[2] * x[2];
    Ok(directional * y + gamma.apply(x, &(phi * y)) - phi * gamma.apply(x, y))
}

/// Residual of `(∇_Xφ)Y = β(g(φX,Y)ξ − εη(Y)φX) + α(g(X,Y)ξ − εη(Y)X)`.
pub fn nabla_phi_residual<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    field: &ConnectionField<T>,
    p: &Point<T>,
    x: &Vector3<T>,
    y: &Vector3<T>,
) -> Result<T> {
    let lhs = nabla_phi(m, field, p, x, y)?;
    let ab = alpha_beta_with(m, field, p)?;
    let e: T = m.epsilon().value();
    let g = m.metric(p)?;
    let phi = m.phi(p)?;
    let xi = m.xi(p)?;
    let eta_y = m.eta(p)?.dot(y);
    let phi_x = phi * x;
    let rhs = (xi * (phi_x.dot(&(g * y))) - phi_x * (e * eta_y)) * ab.beta
        + (xi * (x.dot(&(g * y))) - x * (e * eta_y)) * ab.alpha;
    Ok(euclid_norm(&(lhs - rhs)))
}

/// Residual of the general identity `(∇_Xφ)Y = −η(Y)φ∇_Xξ + εg(φ∇_Xξ, Y)ξ`.
pub fn nabla_phi_general_residual<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
    x: &Vector3<T>,
    y: &Vector3<T>,
) -> Result<T> {
    let field = ConnectionField::closed_form();
    let lhs = nabla_phi(m, &field, p, x, y)?;
    let e: T = m.epsilon().value();
    let g = m.metric(p)?;
    let phi = m.phi(p)?;
    let w = phi * (nabla_xi(m, &field, p)? * x);
    let rhs = w * (-m.eta(p)?.dot(y)) + m.xi(p)? * (e * w.dot(&(g * y)));
    Ok(euclid_norm(&(lhs - rhs)))
}

/// `‖N_φ(X,Y) + 2dη(X,Y)ξ‖` for constant-component fields `X`, `Y`, with
/// `dη(X,Y) = ½(X(η(Y)) − Y(η(X)) − η([X,Y]))`.
pub fn normality_residual<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
    x: &Vector3<T>,
    y: &Vector3<T>,
) -> Result<T> {
    ensure_domain(m, p)?;
    let phi = m.phi(p)?;
    let dphi = m.phi_partials(p)?;
    let deta = m.eta_partials(p)?;
    let xi = m.xi(p)?;
    // derivative of the field q ↦ φ(q)v in direction u
    let d = |u: &Vector3<T>, v: &Vector3<T>| (dphi[0] * u[0] + dphi[1] * u[1] + dphi[2] * u[2]) * v;
    let (px, py) = (phi * x, phi * y);
    let br_pxpy = d(&px, y) - d(&py, x);
    let br_pxy = -d(y, x);
    let br_xpy = d(x, y);
    let n_phi = br_pxpy - phi * br_pxy - phi * br_xpy;
    let two_deta = (deta.transpose() * x).dot(y) - (deta.transpose() * y).dot(x);
    Ok(euclid_norm(&(n_phi + xi * two_deta)))
}

/// Max normality residual over all coordinate pairs at the probes.
pub fn check_normality<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    probes: &[Point<T>],
    tol: T,
) -> Result<StructureReport> {
    let mut worst = T::zero();
    for p in probes {
        for i in 0..3 {
            for j in 0..3 {
                let r = normality_residual(
                    m,
                    p,
                    &Vector3::ith(i, T::one()),
                    &Vector3::ith(j, T::one()),
                )?;
                worst = worst.max(r);
            }
        }
    }
    let mut rep = StructureReport::default();
    rep.push("normality", worst, tol);
    Ok(rep)
}

/// `max |∂_k g_ij − Γˡ_ki g_lj − Γˡ_kj g_il|` with finite-difference metric partials.
pub fn metric_compatibility_residual<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    field: &ConnectionField<T>,
    p: &Point<T>,
) -> Result<T> {
    let g = m.metric(p)?;
    let gamma = field.gamma(m, p)?;
    let f = |q: &Point<T>| m.metric(q);
    let mut worst = T::zero();
    for k in 0..3 {
        let dg: Matrix3<T> = chart_partial(f, p, k, field.fd_step)?;
        // (Γ_k)ˡ_i = Γˡ_ki as a matrix with rows l, columns i
        let mut gk = Matrix3::zeros();
        for l in 0..3 {
            for i in 0..3 {
                gk[(l, i)] = gamma.get(l, k, i);
            }
        }
        let r = dg - gk.transpose() * g - g * gk;
        worst = worst.max(max_abs_mat(&r));
    }
    Ok(worst)
}

/// Default tolerances of [`verify_structure`]: axioms, compatibility, normality.
pub const AXIOM_TOL: f64 = 1e-10;
pub const COMPATIBILITY_TOL: f64 = 1e-10;
pub const NORMALITY_TOL: f64 = 1e-8;

/// Axioms, metric compatibility and normality over the probes, at the default
/// tolerances.
pub fn verify_structure<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    probes: &[Point<T>],
) -> Result<StructureReport> {
    let mut rep = crate::manifold::check_almost_contact(m, probes, lit(AXIOM_TOL))?;
    rep.extend(crate::manifold::check_compatibility(m, probes, lit(COMPATIBILITY_TOL))?);
    rep.extend(check_normality(m, probes, lit(NORMALITY_TOL))?);
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiSasakianReport {
    pub quasi_sasakian: bool,
    pub max_abs_beta: f64,
    pub max_abs_xi_alpha: f64,
    pub tol: f64,
}

/// `β = 0` and `ξ(α) = 0` over the probes, with `ξ(α)` differentiated numerically along ξ.
pub fn check_quasi_sasakian<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    probes: &[Point<T>],
    tol: T,
) -> Result<QuasiSasakianReport> {
    let mut max_beta = T::zero();
    let mut max_xa = T::zero();
    for p in probes {
        let ab = alpha_beta(m, p)?;
        max_beta = max_beta.max(ab.beta.abs());
        let xi = m.xi(p)?;
        let h = T::chart_step() * T::one().max(euclid_norm(p));
        let xa = richardson(|t: T| Ok(alpha_beta(m, &(p + xi * t))?.alpha), T::zero(), h)?;
        max_xa = max_xa.max(xa.abs());
    }
    Ok(QuasiSasakianReport {
        quasi_sasakian: max_beta < tol && max_xa < tol,
        max_abs_beta: max_beta.to_f64_lossy(),
        max_abs_xi_alpha: max_xa.to_f64_lossy(),
        tol: tol.to_f64_lossy(),
    })
}

/// One state of a geodesic integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState<T: Real> {
    pub t: T,
    pub position: Point<T>,
    pub velocity: Vector3<T>,
}

/// Classical RK4 for `ẍᵏ = −Γᵏᵢⱼ ẋⁱ ẋʲ` from `t = 0` to `t1`.
pub fn integrate_geodesic<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p0: &Point<T>,
    v0: &Vector3<T>,
    t1: T,
    steps: usize,
) -> Result<Vec<GeodesicState<T>>> {
    if steps == 0 {
        return Err(GeomError::EmptyGrid);
    }
    let h = t1 / lit(steps as f64);
    let acc = |p: &Point<T>, v: &Vector3<T>| -> Result<Vector3<T>> {
        ensure_domain(m, p)?;
        Ok(-christoffel(m, p)?.apply(v, v))
    };
    let mut out = Vec::with_capacity(steps + 1);
    let (mut p, mut v) = (*p0, *v0);
    out.push(GeodesicState {
        t: T::zero(),
        position: p,
        velocity: v,
    });
    let half: T = lit(0.5);
    let sixth: T = lit(1.0 / 6.0);
    let two: T = lit(2.0);
    for n in 0..steps {
        let k1p = v;
        let k1v = acc(&p, &v)?;
        let k2p = v + k1v * (h * half);
        let k2v = acc(&(p + k1p * (h * half)), &k2p)?;
        let k3p = v + k2v * (h * half);
        let k3v = acc(&(p + k2p * (h * half)), &k3p)?;
        let k4p = v + k3v * h;
        let k4v = acc(&(p + k3p * h), &k4p)?;
        p += (k1p + k2p * two + k3p * two + k4p) * (h * sixth);
        v += (k1v + k2v * two + k3v * two + k4v) * (h * sixth);
        out.push(GeodesicState {
            t: h * lit((n + 1) as f64),
            position: p,
            velocity: v,
        });
    }
    Ok(out)
}

/// Inverse metric helper re-exported for callers that already hold `g`.
pub fn inverse_metric<T: Real>(g: &Matrix3<T>) -> Option<Matrix3<T>> {
    inverse3(g)
}
