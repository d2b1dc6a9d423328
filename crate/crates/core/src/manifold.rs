//! Almost contact pseudo-metric structures on a single chart of R³.

use std::fmt;

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::connection::Christoffel;
use crate::diff::chart_partial;
use crate::error::{GeomError, Result};
use crate::expr::{Bindings, Expr, Var};
use crate::linalg::{inner, inverse3, max_abs, max_abs_mat, PseudoBasis, Point};
use crate::scalar::{lit, Real};

/// Causal sign of the Reeb field, `ε = g(ξ, ξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn from_f64(v: f64) -> Result<Self> {
        if v == 1.0 {
            Ok(Epsilon::Plus)
        } else if v == -1.0 {
            Ok(Epsilon::Minus)
        } else {
            Err(GeomError::InvalidEpsilon(v))
        }
    }

    pub fn value<T: Real>(self) -> T {
        match self {
            Epsilon::Plus => T::one(),
            Epsilon::Minus => -T::one(),
        }
    }

    pub fn is_timelike(self) -> bool {
        self == Epsilon::Minus
    }
}

impl TryFrom<i8> for Epsilon {
    type Error = GeomError;

    fn try_from(v: i8) -> Result<Self> {
        Epsilon::from_f64(v as f64)
    }
}

impl From<Epsilon> for i8 {
    fn from(e: Epsilon) -> i8 {
        match e {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Plus => "+1",
            Epsilon::Minus => "-1",
        })
    }
}

/// Tensors `(φ, ξ, η, g)` of an almost contact pseudo-metric structure, evaluated
/// pointwise in chart coordinates.
///
/// Matrices follow the coordinate convention: column `j` of [`phi`](Self::phi)
/// is `φ∂_j`; `metric()[(i, j)] = g(∂_i, ∂_j)`; `eta()[i] = η(∂_i)`.
/// Derivative hooks default to Richardson central differences and can be
/// overridden with exact expressions.
pub trait AlmostContactStructure<T: Real>: Send + Sync {
    fn name(&self) -> &str;

    fn epsilon(&self) -> Epsilon;

    fn in_domain(&self, p: &Point<T>) -> bool;

    /// Box `[lo, hi]` per coordinate from which probes are drawn.
    fn probe_box(&self) -> [(f64, f64); 3] {
        [(-1.0, 1.0); 3]
    }

    fn metric(&self, p: &Point<T>) -> Result<Matrix3<T>>;

    fn phi(&self, p: &Point<T>) -> Result<Matrix3<T>>;

    fn xi(&self, p: &Point<T>) -> Result<Vector3<T>>;

    fn eta(&self, p: &Point<T>) -> Result<Vector3<T>>;

    /// `[∂_x g, ∂_y g, ∂_z g]`.
    fn metric_partials(&self, p: &Point<T>) -> Result<[Matrix3<T>; 3]> {
        partials3(|q| self.metric(q), p)
    }

    /// `[∂_x φ, ∂_y φ, ∂_z φ]`.
    fn phi_partials(&self, p: &Point<T>) -> Result<[Matrix3<T>; 3]> {
        partials3(|q| self.phi(q), p)
    }

    /// Column `k` is `∂_k ξ`.
    fn xi_partials(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        let cols = partials3(|q| self.xi(q), p)?;
        Ok(Matrix3::from_columns(&cols))
    }

    /// Row `k` is `∂_k η`.
    fn eta_partials(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        let rows = partials3(|q| self.eta(q), p)?;
        Ok(Matrix3::from_rows(&[
            rows[0].transpose(),
            rows[1].transpose(),
            rows[2].transpose(),
        ]))
    }

    /// Closed-form Levi-Civita coefficients, when known.
    fn christoffel_table(&self, _p: &Point<T>) -> Option<Christoffel<T>> {
        None
    }
}

fn partials3<T, V, F>(f: F, p: &Point<T>) -> Result<[V; 3]>
where
    T: Real,
    V: crate::diff::Linear<T>,
    F: Fn(&Point<T>) -> Result<V>,
{
    let h = T::chart_step();
    Ok([
        chart_partial(&f, p, 0, h)?,
        chart_partial(&f, p, 1, h)?,
        chart_partial(&f, p, 2, h)?,
    ])
}

pub(crate) fn ensure_domain<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
) -> Result<()> {
    if m.in_domain(p) {
        Ok(())
    } else {
        Err(outside(p))
    }
}

pub(crate) fn outside<T: Real>(p: &Point<T>) -> GeomError {
    GeomError::OutsideDomain(p[0].to_f64_lossy(), p[1].to_f64_lossy(), p[2].to_f64_lossy())
}

/// Metric and its inverse at `p`, failing on singular metrics.
pub fn metric_with_inverse<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
) -> Result<(Matrix3<T>, Matrix3<T>)> {
    ensure_domain(m, p)?;
    let g = m.metric(p)?;
    let gi = inverse3(&g).ok_or_else(|| {
        GeomError::SingularMetric(p[0].to_f64_lossy(), p[1].to_f64_lossy(), p[2].to_f64_lossy())
    })?;
    Ok((g, gi))
}

/// The structure `N³_ε`: `η = 2y dx + dz`, `ξ = ∂₃`, `g = e^{2z}(dx² + dy²) + ε η⊗η`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct N3 {
    pub epsilon: Epsilon,
}

impl<T: Real> AlmostContactStructure<T> for N3 {
    fn name(&self) -> &str {
        "n3"
    }

    fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    fn in_domain(&self, p: &Point<T>) -> bool {
        p.iter().all(|c| c.is_finite())
    }

    fn metric(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        let e: T = self.epsilon.value();
        let (y, w) = (p[1], (p[2] + p[2]).exp());
        let four: T = lit(4.0);
        let two: T = lit(2.0);
        let z = T::zero();
        Ok(Matrix3::new(
            four * e * y * y + w,
            z,
            two * e * y,
            z,
            w,
            z,
            two * e * y,
            z,
            e,
        ))
    }

    fn phi(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        let (o, l) = (T::zero(), T::one());
        Ok(Matrix3::new(o, -l, o, l, o, o, o, p[1] + p[1], o))
    }

    fn xi(&self, _p: &Point<T>) -> Result<Vector3<T>> {
        Ok(Vector3::z())
    }

    fn eta(&self, p: &Point<T>) -> Result<Vector3<T>> {
        Ok(Vector3::new(p[1] + p[1], T::zero(), T::one()))
    }

    fn metric_partials(&self, p: &Point<T>) -> Result<[Matrix3<T>; 3]> {
        let e: T = self.epsilon.value();
        let y = p[1];
        let w2 = lit::<T>(2.0) * (p[2] + p[2]).exp();
        let o = T::zero();
        let dy = Matrix3::new(
            lit::<T>(8.0) * e * y,
            o,
            e + e,
            o,
            o,
            o,
            e + e,
            o,
            o,
        );
        let dz = Matrix3::new(w2, o, o, o, w2, o, o, o, o);
        Ok([Matrix3::zeros(), dy, dz])
    }

    fn phi_partials(&self, _p: &Point<T>) -> Result<[Matrix3<T>; 3]> {
        let mut dy = Matrix3::zeros();
        dy[(2, 1)] = lit(2.0);
        Ok([Matrix3::zeros(), dy, Matrix3::zeros()])
    }

    fn xi_partials(&self, _p: &Point<T>) -> Result<Matrix3<T>> {
        Ok(Matrix3::zeros())
    }

    fn eta_partials(&self, _p: &Point<T>) -> Result<Matrix3<T>> {
        let mut d = Matrix3::zeros();
        d[(1, 0)] = lit(2.0);
        Ok(d)
    }

    fn christoffel_table(&self, p: &Point<T>) -> Option<Christoffel<T>> {
        let e: T = self.epsilon.value();
        let (y, z) = (p[1], p[2]);
        let em = (-(z + z)).exp();
        let ep = (z + z).exp();
        let (two, four) = (lit::<T>(2.0), lit::<T>(4.0));
        let o = T::zero();
        let mut c = Christoffel::zero();
        c.set_sym(0, 0, [two * y, -four * e * y * em, -four * y * y - e * ep]);
        c.set_sym(0, 1, [two * e * y * em, o, T::one() - four * e * y * y * em]);
        c.set_sym(0, 2, [T::one(), -e * em, -two * y]);
        c.set_sym(1, 1, [two * y, o, -four * y * y - e * ep]);
        c.set_sym(1, 2, [e * em, T::one(), -two * e * y * em]);
        Some(c)
    }
}

/// The quasi-Sasakian structure `Q³_α` on `x > 0`: `η = −2x dy + dz`, `ξ = ∂₃`,
/// `g = x²(dx² + dy²) + ε η⊗η`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Q3 {
    pub epsilon: Epsilon,
}

impl<T: Real> AlmostContactStructure<T> for Q3 {
    fn name(&self) -> &str {
        "q3"
    }

    fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    fn in_domain(&self, p: &Point<T>) -> bool {
        p[0] > T::zero() && p.iter().all(|c| c.is_finite())
    }

    fn probe_box(&self) -> [(f64, f64); 3] {
        [(0.5, 2.0), (-1.0, 1.0), (-1.0, 1.0)]
    }

    fn metric(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        let e: T = self.epsilon.value();
        let x = p[0];
        let o = T::zero();
        let two: T = lit(2.0);
        Ok(Matrix3::new(
            x * x,
            o,
            o,
            o,
            x * x * (T::one() + lit::<T>(4.0) * e),
            -two * e * x,
            o,
            -two * e * x,
            e,
        ))
    }

    fn phi(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        let (o, l) = (T::zero(), T::one());
        Ok(Matrix3::new(o, -l, o, l, o, o, p[0] + p[0], o, o))
    }

    fn xi(&self, _p: &Point<T>) -> Result<Vector3<T>> {
        Ok(Vector3::z())
    }

    fn eta(&self, p: &Point<T>) -> Result<Vector3<T>> {
        Ok(Vector3::new(T::zero(), -(p[0] + p[0]), T::one()))
    }

    fn metric_partials(&self, p: &Point<T>) -> Result<[Matrix3<T>; 3]> {
        let e: T = self.epsilon.value();
        let x = p[0];
        let o = T::zero();
        let two: T = lit(2.0);
        let dx = Matrix3::new(
            two * x,
            o,
            o,
            o,
            two * x * (T::one() + lit::<T>(4.0) * e),
            -two * e,
            o,
            -two * e,
            o,
        );
        Ok([dx, Matrix3::zeros(), Matrix3::zeros()])
    }

    fn phi_partials(&self, _p: &Point<T>) -> Result<[Matrix3<T>; 3]> {
        let mut dx = Matrix3::zeros();
        dx[(2, 0)] = lit(2.0);
        Ok([dx, Matrix3::zeros(), Matrix3::zeros()])
    }

    fn xi_partials(&self, _p: &Point<T>) -> Result<Matrix3<T>> {
        Ok(Matrix3::zeros())
    }

    fn eta_partials(&self, _p: &Point<T>) -> Result<Matrix3<T>> {
        let mut d = Matrix3::zeros();
        d[(0, 1)] = lit(-2.0);
        Ok(d)
    }

    fn christoffel_table(&self, p: &Point<T>) -> Option<Christoffel<T>> {
        let e: T = self.epsilon.value();
        let x = p[0];
        let (one, two, four) = (T::one(), lit::<T>(2.0), lit::<T>(4.0));
        let o = T::zero();
        let mut c = Christoffel::zero();
        c.set_sym(0, 0, [one / x, o, o]);
        c.set_sym(0, 1, [o, (two * e + one) / x, four * e + one]);
        c.set_sym(0, 2, [o, -e / (x * x), -two * e / x]);
        c.set_sym(1, 1, [-(four * e + one) / x, o, o]);
        c.set_sym(1, 2, [e / (x * x), o, o]);
        Some(c)
    }
}

/// Returns one of the built-in structures by name (`"n3"` or `"q3"`).
pub fn builtin_manifold<T: Real>(
    name: &str,
    epsilon: f64,
) -> Result<Box<dyn AlmostContactStructure<T>>> {
    let epsilon = Epsilon::from_f64(epsilon)?;
    match name.to_ascii_lowercase().as_str() {
        "n3" => Ok(Box::new(N3 { epsilon })),
        "q3" => Ok(Box::new(Q3 { epsilon })),
        other => Err(GeomError::UnknownManifold(other.to_string())),
    }
}

/// Expression strings describing a user-defined structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureSpec {
    pub name: String,
    pub epsilon: f64,
    /// Rows of `g_ij`.
    pub metric: [[String; 3]; 3],
    /// Rows of the matrix of `φ` (column `j` is `φ∂_j`).
    pub phi: [[String; 3]; 3],
    pub xi: [String; 3],
    pub eta: [String; 3],
    /// Expressions that must all be strictly positive inside the chart.
    #[serde(default)]
    pub domain: Vec<String>,
    #[serde(default)]
    pub probe_box: Option<[(f64, f64); 3]>,
}

/// A structure whose tensors are parsed expressions in `x, y, z`, with exact
/// symbolic partial derivatives.
#[derive(Debug, Clone)]
pub struct ExprStructure {
    name: String,
    epsilon: Epsilon,
    metric: [[Expr; 3]; 3],
    phi: [[Expr; 3]; 3],
    xi: [Expr; 3],
    eta: [Expr; 3],
    domain: Vec<Expr>,
    probe_box: [(f64, f64); 3],
    d_metric: [[[Expr; 3]; 3]; 3],
    d_phi: [[[Expr; 3]; 3]; 3],
    d_xi: [[Expr; 3]; 3],
    d_eta: [[Expr; 3]; 3],
}

fn parse_chart(src: &str) -> Result<Expr> {
    let e: Expr = src.parse()?;
    if e.depends_on(Var::S) {
        return Err(GeomError::InvalidStructure(format!(
            "`{src}` uses the curve parameter s; structure tensors depend on x, y, z only"
        )));
    }
    Ok(e)
}

fn parse_mat(rows: &[[String; 3]; 3]) -> Result<[[Expr; 3]; 3]> {
    let mut out: [[Expr; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = parse_chart(&rows[i][j])?;
        }
    }
    Ok(out)
}

fn parse_vec(v: &[String; 3]) -> Result<[Expr; 3]> {
    Ok([parse_chart(&v[0])?, parse_chart(&v[1])?, parse_chart(&v[2])?])
}

impl Default for Expr {
    fn default() -> Self {
        Expr::Num(0.0)
    }
}

impl ExprStructure {
    /// Parses and validates a structure; the metric must be symmetric at
    /// seeded sample points of the probe box.
    pub fn new(spec: &StructureSpec) -> Result<Self> {
        let metric = parse_mat(&spec.metric)?;
        let phi = parse_mat(&spec.phi)?;
        let xi = parse_vec(&spec.xi)?;
        let eta = parse_vec(&spec.eta)?;
        let domain = spec
            .domain
            .iter()
            .map(|d| parse_chart(d))
            .collect::<Result<Vec<_>>>()?;
        let mut d_metric: [[[Expr; 3]; 3]; 3] = Default::default();
        let mut d_phi: [[[Expr; 3]; 3]; 3] = Default::default();
        let mut d_xi: [[Expr; 3]; 3] = Default::default();
        let mut d_eta: [[Expr; 3]; 3] = Default::default();
        for (k, var) in Var::CHART.into_iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    d_metric[k][i][j] = metric[i][j].derivative(var);
                    d_phi[k][i][j] = phi[i][j].derivative(var);
                }
                d_xi[k][i] = xi[i].derivative(var);
                d_eta[k][i] = eta[i].derivative(var);
            }
        }
        let s = ExprStructure {
            name: spec.name.clone(),
            epsilon: Epsilon::from_f64(spec.epsilon)?,
            metric,
            phi,
            xi,
            eta,
            domain,
            probe_box: spec.probe_box.unwrap_or([(-1.0, 1.0); 3]),
            d_metric,
            d_phi,
            d_xi,
            d_eta,
        };
        s.check_symmetric()?;
        Ok(s)
    }

    fn check_symmetric(&self) -> Result<()> {
        let probes = seeded_probes::<f64, _>(self, 7, 16)?;
        for p in &probes {
            let g = AlmostContactStructure::<f64>::metric(self, p)?;
            let scale = max_abs_mat(&g).max(1.0);
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if (g[(i, j)] - g[(j, i)]).abs() > 1e-12 * scale {
                        return Err(GeomError::InvalidStructure(format!(
                            "metric is not symmetric: g[{i}][{j}] = {} but g[{j}][{i}] = {} at ({}, {}, {})",
                            g[(i, j)],
                            g[(j, i)],
                            p[0],
                            p[1],
                            p[2]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn eval_mat<T: Real>(m: &[[Expr; 3]; 3], b: &Bindings<T>) -> Result<Matrix3<T>> {
    let mut out = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            out[(i, j)] = m[i][j].eval(b)?;
        }
    }
    Ok(out)
}

fn eval_vec<T: Real>(v: &[Expr; 3], b: &Bindings<T>) -> Result<Vector3<T>> {
    Ok(Vector3::new(v[0].eval(b)?, v[1].eval(b)?, v[2].eval(b)?))
}

impl<T: Real> AlmostContactStructure<T> for ExprStructure {
    fn name(&self) -> &str {
        &self.name
    }

    fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    fn in_domain(&self, p: &Point<T>) -> bool {
        let b = Bindings::point(p);
        p.iter().all(|c| c.is_finite())
            && self
                .domain
                .iter()
                .all(|d| d.eval(&b).is_ok_and(|v: T| v > T::zero()))
    }

    fn probe_box(&self) -> [(f64, f64); 3] {
        self.probe_box
    }

    fn metric(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        eval_mat(&self.metric, &Bindings::point(p))
    }

    fn phi(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        eval_mat(&self.phi, &Bindings::point(p))
    }

    fn xi(&self, p: &Point<T>) -> Result<Vector3<T>> {
        eval_vec(&self.xi, &Bindings::point(p))
    }

    fn eta(&self, p: &Point<T>) -> Result<Vector3<T>> {
        eval_vec(&self.eta, &Bindings::point(p))
    }

    fn metric_partials(&self, p: &Point<T>) -> Result<[Matrix3<T>; 3]> {
        let b = Bindings::point(p);
        Ok([
            eval_mat(&self.d_metric[0], &b)?,
            eval_mat(&self.d_metric[1], &b)?,
            eval_mat(&self.d_metric[2], &b)?,
        ])
    }

    fn phi_partials(&self, p: &Point<T>) -> Result<[Matrix3<T>; 3]> {
        let b = Bindings::point(p);
        Ok([
            eval_mat(&self.d_phi[0], &b)?,
            eval_mat(&self.d_phi[1], &b)?,
            eval_mat(&self.d_phi[2], &b)?,
        ])
    }

    fn xi_partials(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        let b = Bindings::point(p);
        let cols = [
            eval_vec(&self.d_xi[0], &b)?,
            eval_vec(&self.d_xi[1], &b)?,
            eval_vec(&self.d_xi[2], &b)?,
        ];
        Ok(Matrix3::from_columns(&cols))
    }

    fn eta_partials(&self, p: &Point<T>) -> Result<Matrix3<T>> {
        let b = Bindings::point(p);
        let rows = [
            eval_vec(&self.d_eta[0], &b)?.transpose(),
            eval_vec(&self.d_eta[1], &b)?.transpose(),
            eval_vec(&self.d_eta[2], &b)?.transpose(),
        ];
        Ok(Matrix3::from_rows(&rows))
    }
}

/// Deterministic pseudo-random probes in the structure's probe box and chart domain.
pub fn seeded_probes<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    seed: u64,
    count: usize,
) -> Result<Vec<Point<T>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bx = m.probe_box();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(GeomError::InvalidStructure(
                "probe box does not meet the chart domain".into(),
            ));
        }
        let p = Vector3::new(
            lit(rng.gen_range(bx[0].0..=bx[0].1)),
            lit(rng.gen_range(bx[1].0..=bx[1].1)),
            lit(rng.gen_range(bx[2].0..=bx[2].1)),
        );
        if m.in_domain(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// A tangent vector with its base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector<T: Real> {
    pub base: Point<T>,
    pub components: Vector3<T>,
}

impl<T: Real> TangentVector<T> {
    pub fn new(base: Point<T>, components: Vector3<T>) -> Self {
        TangentVector { base, components }
    }

    /// Coordinate field `∂_i` at `base`.
    pub fn coordinate(base: Point<T>, i: usize) -> Self {
        TangentVector {
            base,
            components: Vector3::ith(i, T::one()),
        }
    }
}

/// `Φ(X, Y) = ε g(X, φY)`.
pub fn fundamental_two_form<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
    x: &TangentVector<T>,
    y: &TangentVector<T>,
) -> Result<T> {
    if x.base != *p || y.base != *p {
        return Err(GeomError::BasePointMismatch);
    }
    ensure_domain(m, p)?;
    let g = m.metric(p)?;
    let phi = m.phi(p)?;
    Ok(m.epsilon().value::<T>() * inner(&g, &x.components, &(phi * y.components)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Causal {
    Spacelike,
    Timelike,
    Null,
}

impl fmt::Display for Causal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Causal::Spacelike => "spacelike",
            Causal::Timelike => "timelike",
            Causal::Null => "null",
        })
    }
}

/// Default relative zero band for null detection.
pub const NULL_BAND: f64 = 1e-9;

/// Classifies `g(v, v)` with zero band `|g(v, v)| ≤ tol · |v|²` (Euclidean norm).
pub fn classify<T: Real>(g: &Matrix3<T>, v: &Vector3<T>, tol: T) -> Result<Causal> {
    let n2 = v.dot(v);
    if n2 == T::zero() {
        return Err(GeomError::ZeroVector);
    }
    let q = inner(g, v, v);
    Ok(if q.abs() <= tol * n2 {
        Causal::Null
    } else if q > T::zero() {
        Causal::Spacelike
    } else {
        Causal::Timelike
    })
}

pub fn causal_character<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
    x: &TangentVector<T>,
    tol: T,
) -> Result<Causal> {
    if x.base != *p {
        return Err(GeomError::BasePointMismatch);
    }
    ensure_domain(m, p)?;
    classify(&m.metric(p)?, &x.components, tol)
}

/// Maximum residual of one axiom over a probe set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub checks: Vec<AxiomCheck>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push<T: Real>(&mut self, name: &str, max_residual: T, tol: T) {
        let r = max_residual.to_f64_lossy();
        let t = tol.to_f64_lossy();
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            max_residual: r,
            tol: t,
            pass: r.is_finite() && r < t,
        });
    }

    pub fn extend(&mut self, other: StructureReport) {
        self.checks.extend(other.checks);
    }
}

fn sweep<T: Real, M, const K: usize>(
    m: &M,
    probes: &[Point<T>],
    f: impl Fn(&Point<T>) -> Result<[T; K]>,
) -> Result<[T; K]>
where
    M: AlmostContactStructure<T> + ?Sized,
{
    let mut worst = [T::zero(); K];
    for p in probes {
        ensure_domain(m, p)?;
        let r = f(p)?;
        for k in 0..K {
            worst[k] = worst[k].max(r[k]);
        }
    }
    Ok(worst)
}

/// Residuals of `φ² = −I + η⊗ξ`, `η(ξ) = 1`, `φξ = 0`, `η∘φ = 0`.
pub fn check_almost_contact<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    probes: &[Point<T>],
    tol: T,
) -> Result<StructureReport> {
    let worst = sweep(m, probes, |p| {
        let phi = m.phi(p)?;
        let xi = m.xi(p)?;
        let eta = m.eta(p)?;
        let lhs = phi * phi + Matrix3::identity() - xi * eta.transpose();
        Ok([
            max_abs_mat(&lhs),
            (eta.dot(&xi) - T::one()).abs(),
            max_abs(&(phi * xi)),
            max_abs(&(phi.transpose() * eta)),
        ])
    })?;
    let mut r = StructureReport::default();
    r.push("phi_squared", worst[0], tol);
    r.push("eta_of_xi", worst[1], tol);
    r.push("phi_xi", worst[2], tol);
    r.push("eta_phi", worst[3], tol);
    Ok(r)
}

/// Residuals of `g(φX, φY) = g(X, Y) − ε η(X)η(Y)` over coordinate pairs,
/// `η(X) = ε g(X, ξ)` and `g(ξ, ξ) = ε`.
pub fn check_compatibility<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    probes: &[Point<T>],
    tol: T,
) -> Result<StructureReport> {
    let e: T = m.epsilon().value();
    let worst = sweep(m, probes, |p| {
        let g = m.metric(p)?;
        let phi = m.phi(p)?;
        let xi = m.xi(p)?;
        let eta = m.eta(p)?;
        let pairs = phi.transpose() * g * phi - g + eta * eta.transpose() * e;
        Ok([
            max_abs_mat(&pairs),
            max_abs(&(eta - g * xi * e)),
            (inner(&g, &xi, &xi) - e).abs(),
        ])
    })?;
    let mut r = StructureReport::default();
    r.push("compatibility", worst[0], tol);
    r.push("eta_metric_dual", worst[1], tol);
    r.push("xi_norm", worst[2], tol);
    Ok(r)
}

/// `(positive, negative)` counts of the metric signature at `p`.
pub fn signature<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
) -> Result<(usize, usize)> {
    ensure_domain(m, p)?;
    let basis = PseudoBasis::new(&m.metric(p)?)?;
    let neg = basis.negative_count();
    Ok((3 - neg, neg))
}

/// Determinant of `φ` restricted to `ker η`, in a pseudo-orthonormal basis of `ker η`.
pub fn phi_kernel_determinant<T: Real, M: AlmostContactStructure<T> + ?Sized>(
    m: &M,
    p: &Point<T>,
) -> Result<T> {
    ensure_domain(m, p)?;
    let g = m.metric(p)?;
    let phi = m.phi(p)?;
    let eta = m.eta(p)?;
    let xi = m.xi(p)?;
    // ker η is spanned by the projections X − η(X)ξ of the coordinate vectors
    let proj: Vec<Vector3<T>> = (0..3)
        .map(|i| {
            let e = Vector3::ith(i, T::one());
            e - xi * eta[i]
        })
        .collect();
    let mut best = (T::zero(), 0, 1);
    for i in 0..3 {
        for j in (i + 1)..3 {
            let c = proj[i].cross(&proj[j]);
            let n = c.dot(&c);
            if n > best.0 {
                best = (n, i, j);
            }
        }
    }
    let (a, b) = (proj[best.1], proj[best.2]);
    let (gaa, gab, gbb) = (inner(&g, &a, &a), inner(&g, &a, &b), inner(&g, &b, &b));
    let det = gaa * gbb - gab * gab;
    if det.abs() <= T::epsilon() {
        return Err(GeomError::DegenerateBasis);
    }
    // coordinates of w in the basis (a, b) from the Gram system
    let coords = |w: &Vector3<T>| {
        let (wa, wb) = (inner(&g, w, &a), inner(&g, w, &b));
        ((wa * gbb - wb * gab) / det, (wb * gaa - wa * gab) / det)
    };
    let (c0, c1) = coords(&(phi * a));
    let (d0, d1) = coords(&(phi * b));
    Ok(c0 * d1 - d0 * c1)
}
