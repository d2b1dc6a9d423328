//! Almost contact pseudo-metric 3-manifolds, their Levi-Civita connection, and
//! the Frenet apparatus of (Legendre) curves in them.
//!
//! Everything is generic over [`Real`]; the aliases at the bottom fix `f64`.

pub mod connection;
pub mod curve;
pub mod diff;
pub mod error;
pub mod expr;
pub mod frenet;
pub mod function;
pub mod linalg;
pub mod legendre;
pub mod manifold;
pub mod quad;
pub mod scalar;
pub mod spherical;

pub use connection::{alpha_beta, christoffel, AlphaBeta, Christoffel, ConnectionField};
pub use error::{GeomError, Result};
pub use curve::{Curve, ExprCurve, SampledCurve};
pub use expr::{Expr, ExprError, Var};
pub use frenet::{frenet_direct, general_kappa_tau, legendre_kappa_tau, FrenetData};
pub use function::{ExprFunction, ScalarFunction};
pub use legendre::{builtin_legendre, generate_legendre_q3, AngleFunction, GeneratedLegendre};
pub use linalg::Point;
pub use manifold::{builtin_manifold, AlmostContactStructure, Causal, Epsilon, N3, Q3};
pub use scalar::Real;
pub use spherical::{classify_spherical, theta_solution, ThetaKind, Verdict};

pub type Point64 = Point<f64>;
pub type Christoffel64 = Christoffel<f64>;
pub type DynStructure = Box<dyn AlmostContactStructure<f64>>;
pub type FrenetData64 = FrenetData<f64>;
pub type GeneratedLegendre64 = GeneratedLegendre<f64>;
pub type SampledCurve64 = SampledCurve<f64>;
