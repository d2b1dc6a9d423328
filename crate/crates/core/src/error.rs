use thiserror::Error;

use crate::expr::ExprError;

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("unknown manifold `{0}` (expected `n3` or `q3`)")]
    UnknownManifold(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("epsilon must be +1 or -1, got {0}")]
    InvalidEpsilon(f64),
    #[error("point ({0}, {1}, {2}) lies outside the chart domain")]
    OutsideDomain(f64, f64, f64),
    #[error("metric is singular at ({0}, {1}, {2})")]
    SingularMetric(f64, f64, f64),
    #[error("tangent vectors are based at different points")]
    BasePointMismatch,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("no pseudo-orthonormal basis: metric degenerate")]
    DegenerateBasis,
    #[error("parameter s = {0} outside the curve domain")]
    ParameterOutsideDomain(f64),
    #[error("evaluation grid is empty")]
    EmptyGrid,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("curve is not unit speed at s = {s}: g(v', v') = {speed2}")]
    NotUnitSpeed { s: f64, speed2: f64 },
    #[error("geodesic point at s = {0}: frame undefined")]
    Geodesic(f64),
    #[error("lightlike acceleration at s = {0}: principal normal undefined")]
    LightlikeNormal(f64),
    #[error("degenerate phi-frame at s = {s}: delta = {delta}")]
    DegenerateFrame { s: f64, delta: f64 },
    #[error("torsion formula singular at s = {0}")]
    SingularTorsion(f64),
    #[error("curve is not Legendre: max |eta(v')| = {0}")]
    NotLegendre(f64),
    #[error("curve is not null at s = {s}: g(v', v') = {speed2}")]
    NotNull { s: f64, speed2: f64 },
    #[error("null frames need a timelike Reeb field (epsilon = -1)")]
    NullFrameNeedsTimelike,
    #[error("screen seed degenerate at s = {0}")]
    DegenerateSeed(f64),
    #[error("structure is not quasi-Sasakian (max |beta| = {beta}, max |xi(alpha)| = {xi_alpha})")]
    NotQuasiSasakian { beta: f64, xi_alpha: f64 },
    #[error("alpha vanishes at s = {0}")]
    VanishingAlpha(f64),
    #[error("theta vanishes at s = {0}")]
    VanishingTheta(f64),
    #[error("timelike solution needs B1 != +-B2 (got B1 = {0}, B2 = {1})")]
    ExcludedCoefficients(f64, f64),
    #[error("1/theta crosses zero near s = {0}; restrict the working interval")]
    ThetaBlowsUp(f64),
    #[error("mu^2 = {mu2} <= 0 at s = {s}; generator leaves the chart")]
    MuNonPositive { s: f64, mu2: f64 },
    #[error("g(v', v') vanishes or changes sign near s = {0}")]
    SpeedSignChange(f64),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("curve data: {0}")]
    CurveData(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

impl GeomError {
    /// True for failures of a numeric hypothesis of an operation (geodesic points,
    /// non-Legendre inputs, positivity guards), as opposed to malformed input.
    pub fn is_hypothesis_failure(&self) -> bool {
        use GeomError::*;
        matches!(
            self,
            NotUnitSpeed { .. }
                | Geodesic(_)
                | LightlikeNormal(_)
                | DegenerateFrame { .. }
                | SingularTorsion(_)
                | NotLegendre(_)
                | NotNull { .. }
                | NullFrameNeedsTimelike
                | DegenerateSeed(_)
                | NotQuasiSasakian { .. }
                | VanishingAlpha(_)
                | VanishingTheta(_)
                | ThetaBlowsUp(_)
                | MuNonPositive { .. }
                | SpeedSignChange(_)
        )
    }

    /// Short snake-case flag used in tabular output.
    pub fn tag(&self) -> &'static str {
        use GeomError::*;
        match self {
            NotUnitSpeed { .. } => "not_unit_speed",
            Geodesic(_) => "geodesic",
            LightlikeNormal(_) => "lightlike_normal",
            DegenerateFrame { .. } => "degenerate_frame",
            SingularTorsion(_) => "singular_torsion",
            NotLegendre(_) => "not_legendre",
            NotNull { .. } => "not_null",
            NullFrameNeedsTimelike => "needs_timelike_xi",
            DegenerateSeed(_) => "degenerate_seed",
            NotQuasiSasakian { .. } => "not_quasi_sasakian",
            VanishingAlpha(_) => "vanishing_alpha",
            VanishingTheta(_) => "vanishing_theta",
            ThetaBlowsUp(_) => "theta_blows_up",
            MuNonPositive { .. } => "mu_nonpositive",
            SpeedSignChange(_) => "speed_sign_change",
            OutsideDomain(..) | ParameterOutsideDomain(_) => "outside_domain",
            SingularMetric(..) => "singular_metric",
            _ => "error",
        }
    }
}
