//! Run configuration: a TOML file merged with command-line flags.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use pseudocontact::curve::{grid, reparametrize_arclength, DEFAULT_GRID};
use pseudocontact::manifold::{AlmostContactStructure, ExprStructure, StructureSpec};
use pseudocontact::spherical::ThetaKind;
use pseudocontact::{builtin_legendre, builtin_manifold, AngleFunction, Curve, ExprCurve, SampledCurve};
use serde::{Deserialize, Serialize};

use crate::failure::{CliResult, Failure};

/// A closed-form θ profile for `check-spherical` (config file only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaProfile {
    pub kind: ThetaKind,
    pub coefficients: [f64; 2],
    /// `α` as an expression in `s`.
    #[serde(default = "one")]
    pub alpha: String,
    pub s0: Option<f64>,
}

fn one() -> String {
    "1".into()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub manifold: Option<String>,
    pub epsilon: Option<f64>,
    pub structure: Option<StructureSpec>,
    pub curve: Option<String>,
    pub psi: Option<String>,
    /// Base point of the angle function, where `μ²` vanishes.
    pub s0: Option<f64>,
    /// Reparametrize an expression or sampled curve by arc length.
    pub arclength: Option<bool>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub n: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub probes: Option<usize>,
    pub theta: Option<ThetaProfile>,
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Built-in structure: n3 or q3.
    #[arg(long)]
    pub manifold: Option<String>,
    /// Causal character of the Reeb field, +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    /// Built-in curve name, CSV path (s,x,y,z), or three expressions "x, y, z" in s.
    #[arg(long)]
    pub curve: Option<String>,
    /// Angle function ψ(s) of a generated Legendre curve in Q³.
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_toml(src: &str) -> CliResult<Self> {
        Ok(toml::from_str(src)?)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
        Self::from_toml(&src)
    }

    /// Config file (if any) with the flags applied on top.
    pub fn resolve(flags: &Flags) -> CliResult<Self> {
        let mut c = match &flags.config {
            Some(p) => Self::load(p)?,
            None => RunConfig::default(),
        };
        macro_rules! over {
            ($($f:ident),*) => {$(if flags.$f.is_some() { c.$f = flags.$f.clone(); })*};
        }
        over!(manifold, epsilon, curve, psi, from, to, n, tol, out);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.curve.is_some() && self.psi.is_some() {
            return Err(Failure::validation("give exactly one curve source (curve or psi)"));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Failure::validation(format!("tolerance must be positive, got {t}")));
            }
        }
        if self.n == Some(0) {
            return Err(Failure::validation("grid needs at least one point"));
        }
        if let (Some(a), Some(b)) = (self.from, self.to) {
            if !(a < b) {
                return Err(Failure::validation(format!("empty interval [{a}, {b}]")));
            }
        }
        if self.manifold.is_some() && self.structure.is_some() {
            return Err(Failure::validation("give either a built-in manifold or a [structure] table"));
        }
        Ok(())
    }

    pub fn grid_count(&self) -> usize {
        self.n.unwrap_or(DEFAULT_GRID)
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(2024)
    }

    pub fn probe_count(&self) -> usize {
        self.probes.unwrap_or(100)
    }

    /// The structure, defaulting to the built-in `default`.
    pub fn structure(&self, default: &str) -> CliResult<Arc<dyn AlmostContactStructure<f64>>> {
        if let Some(spec) = &self.structure {
            if let Some(e) = self.epsilon {
                if e != spec.epsilon {
                    return Err(Failure::validation(format!(
                        "--epsilon {e} contradicts the structure's epsilon {}",
                        spec.epsilon
                    )));
                }
            }
            return Ok(Arc::new(ExprStructure::new(spec)?));
        }
        let name = self.manifold.as_deref().unwrap_or(default);
        Ok(Arc::from(builtin_manifold::<f64>(name, self.epsilon.unwrap_or(1.0))?))
    }

    fn interval(&self) -> Option<(f64, f64)> {
        Some((self.from?, self.to?))
    }

    /// The curve source and its sampling grid.
    pub fn curve(&self, m: &Arc<dyn AlmostContactStructure<f64>>) -> CliResult<CurveInput> {
        if let Some(psi) = &self.psi {
            let interval = self
                .interval()
                .ok_or_else(|| Failure::validation("a generated curve needs --from and --to"))?;
            let angle = AngleFunction::parse(psi, self.s0.unwrap_or(0.0))?;
            let c = pseudocontact::generate_legendre_q3(&angle, interval, 2048)?;
            let g = node_grid(c.domain(), interval, self.grid_count())?;
            return Ok(CurveInput {
                curve: Arc::new(c.clone()),
                generated: Some(c),
                grid: g,
            });
        }
        let src = self
            .curve
            .as_deref()
            .ok_or_else(|| Failure::validation("no curve given (--curve or --psi)"))?;
        let (curve, default): (Arc<dyn Curve<f64>>, Option<(f64, f64)>) = if Path::new(src).is_file() {
            let file = std::fs::File::open(src)?;
            let c = SampledCurve::from_csv(src, file)?;
            let d = c.domain();
            (Arc::new(c), Some(d))
        } else if let Some(range) = builtin_range(src) {
            (Arc::new(builtin_legendre(src)?), Some(range))
        } else {
            let parts: Vec<&str> = src.split(',').collect();
            if parts.len() != 3 {
                return Err(Failure::validation(format!(
                    "`{src}` is not a file, a built-in curve, or three comma-separated expressions"
                )));
            }
            let domain = self.interval().unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
            (Arc::new(ExprCurve::new("curve", [parts[0], parts[1], parts[2]], domain)?), None)
        };
        let (lo, hi) = self
            .interval()
            .or(default)
            .ok_or_else(|| Failure::validation("an expression curve needs --from and --to"))?;
        if self.arclength.unwrap_or(false) {
            let base_grid = grid(lo, hi, self.grid_count().max(2))?;
            let s0 = self.s0.unwrap_or(base_grid[0]).clamp(base_grid[0], base_grid[base_grid.len() - 1]);
            let rc = reparametrize_arclength(m.clone(), curve, s0, &base_grid)?;
            let (a, b) = rc.domain();
            return Ok(CurveInput {
                grid: node_grid(rc.domain(), (a, b), self.grid_count())?,
                curve: Arc::new(rc),
                generated: None,
            });
        }
        Ok(CurveInput {
            grid: node_grid(curve.domain(), (lo, hi), self.grid_count())?,
            curve,
            generated: None,
        })
    }
}

/// Evenly spaced nodes on `[lo, hi]`; an end that is not strictly inside the
/// curve's open domain moves inward by `1e-6 (hi − lo)`.
fn node_grid(domain: (f64, f64), (lo, hi): (f64, f64), n: usize) -> CliResult<Vec<f64>> {
    let inside = |s: f64| s > domain.0 && s < domain.1;
    if !(inside(lo) && inside(hi)) {
        return Ok(grid(lo, hi, n)?);
    }
    if n == 1 {
        return Ok(vec![0.5 * (lo + hi)]);
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect())
}

fn builtin_range(name: &str) -> Option<(f64, f64)> {
    match name {
        "upsilon1" => Some((-2.0, 2.0)),
        "upsilon2" => Some((0.5, 4.0)),
        _ => None,
    }
}

pub struct CurveInput {
    pub curve: Arc<dyn Curve<f64>>,
    /// Set when the curve came from an angle function.
    pub generated: Option<pseudocontact::GeneratedLegendre64>,
    pub grid: Vec<f64>,
}
