//! The five subcommands. Each returns its output text; writing is left to the caller.

use std::collections::BTreeMap;
use std::sync::Arc;

use pseudocontact::connection::{check_quasi_sasakian, verify_structure};
use pseudocontact::curve::sample;
use pseudocontact::frenet::{
    frenet_direct, general_kappa_tau, legendre_kappa_tau, reeb_decomposition_general, vframe,
    LEGENDRE_TOL,
};
use pseudocontact::function::ExprFunction;
use pseudocontact::manifold::{seeded_probes, signature, AxiomCheck};
use pseudocontact::spherical::{classify_profile, SphericalReport};
use pseudocontact::{alpha_beta, classify_spherical, theta_solution, Curve, GeomError, Result as GeomResult};
use serde::Serialize;

use crate::config::RunConfig;
use crate::failure::{CliResult, Failure};
use crate::svg;

/// Text produced by a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Emitted {
    pub main: String,
    /// JSON summary written next to the main output (or to stderr).
    pub summary: Option<String>,
    pub notices: Vec<String>,
    /// False when a verification ran but did not pass (exit 1).
    pub passed: bool,
}

impl Emitted {
    fn ok(main: String) -> Self {
        Emitted {
            main,
            summary: None,
            notices: Vec::new(),
            passed: true,
        }
    }
}

fn json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize)]
struct FieldSample {
    point: [f64; 3],
    alpha: f64,
    beta: f64,
}

#[derive(Debug, Serialize)]
struct ManifoldReport {
    manifold: String,
    epsilon: i8,
    seed: u64,
    probes: usize,
    checks: Vec<AxiomCheck>,
    signature: [usize; 2],
    signature_matches: bool,
    alpha_range: [f64; 2],
    beta_range: [f64; 2],
    field_samples: Vec<FieldSample>,
    quasi_sasakian: bool,
    max_abs_beta: f64,
    max_abs_xi_alpha: f64,
    passed: bool,
}

pub fn verify_manifold(cfg: &RunConfig) -> CliResult<Emitted> {
    let m = cfg.structure("n3")?;
    let probes = seeded_probes(m.as_ref(), cfg.seed(), cfg.probe_count())?;
    let rep = verify_structure(m.as_ref(), &probes)?;
    let expected = if m.epsilon().is_timelike() { [2, 1] } else { [3, 0] };
    let mut signature_matches = true;
    let (mut a_lo, mut a_hi, mut b_lo, mut b_hi) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    let mut samples = Vec::new();
    for (i, p) in probes.iter().enumerate() {
        let (pos, neg) = signature(m.as_ref(), p)?;
        signature_matches &= [pos, neg] == expected;
        let ab = alpha_beta(m.as_ref(), p)?;
        a_lo = a_lo.min(ab.alpha);
        a_hi = a_hi.max(ab.alpha);
        b_lo = b_lo.min(ab.beta);
        b_hi = b_hi.max(ab.beta);
        if i < 5 {
            samples.push(FieldSample {
                point: [p.x, p.y, p.z],
                alpha: ab.alpha,
                beta: ab.beta,
            });
        }
    }
    let qs = check_quasi_sasakian(m.as_ref(), &probes, cfg.tol_or(1e-7))?;
    let passed = rep.passed() && signature_matches;
    let report = ManifoldReport {
        manifold: m.name().to_string(),
        epsilon: m.epsilon().into(),
        seed: cfg.seed(),
        probes: probes.len(),
        checks: rep.checks,
        signature: expected,
        signature_matches,
        alpha_range: [a_lo, a_hi],
        beta_range: [b_lo, b_hi],
        field_samples: samples,
        quasi_sasakian: qs.quasi_sasakian,
        max_abs_beta: qs.max_abs_beta,
        max_abs_xi_alpha: qs.max_abs_xi_alpha,
        passed,
    };
    let mut out = Emitted::ok(json(&report)?);
    out.passed = passed;
    Ok(out)
}

/// Column order of `analyze-curve`.
pub const ANALYZE_COLUMNS: [&str; 17] = [
    "s",
    "x",
    "y",
    "z",
    "m",
    "speed2",
    "causal",
    "kappa_direct",
    "tau_direct",
    "kappa_formula",
    "tau_formula",
    "theta",
    "delta",
    "theta1",
    "etaN",
    "etaB",
    "frenet_residual",
];

#[derive(Debug, Default, Serialize)]
struct AnalyzeSummary {
    curve: String,
    manifold: String,
    epsilon: i8,
    rows: usize,
    clean_rows: usize,
    max_kappa_disagreement: f64,
    max_tau_disagreement: f64,
    max_frenet_residual: f64,
    max_eta_n_disagreement: f64,
    max_eta_b_disagreement: f64,
    flags: BTreeMap<String, usize>,
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Values of a column group or the flag of the failure, repeated across the group.
fn cells<const K: usize>(r: &GeomResult<[f64; K]>, flags: &mut BTreeMap<String, usize>) -> [String; K] {
    match r {
        Ok(v) => v.map(num),
        Err(e) => {
            *flags.entry(e.tag().to_string()).or_default() += 1;
            std::array::from_fn(|_| e.tag().to_string())
        }
    }
}

pub fn analyze_curve(cfg: &RunConfig) -> CliResult<Emitted> {
    let m = cfg.structure("n3")?;
    let input = cfg.curve(&m)?;
    let (mf, c) = (m.as_ref(), input.curve.as_ref());
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(ANALYZE_COLUMNS)?;
    let mut sum = AnalyzeSummary {
        curve: c.label().to_string(),
        manifold: mf.name().to_string(),
        epsilon: mf.epsilon().into(),
        ..Default::default()
    };
    for &s in &input.grid {
        let mut flags = BTreeMap::new();
        let pos = c.position(s).map(|p| [p.x, p.y, p.z]);
        let smp = sample(mf, c, s).and_then(|k| {
            let causal = k.causal(&mf.metric(&k.position)?)?;
            Ok((k, causal))
        });
        let basic = smp.as_ref().map(|(k, _)| [k.m, k.speed2]).map_err(Clone::clone);
        let causal = match &smp {
            Ok((_, c)) => c.to_string(),
            Err(e) => e.tag().to_string(),
        };
        let direct = frenet_direct(mf, c, s);
        let legendre = matches!(&smp, Ok((k, _)) if k.m.abs() < LEGENDRE_TOL);
        let formula = if legendre {
            legendre_kappa_tau(mf, c, s).map(|k| [k.kappa, k.tau])
        } else {
            general_kappa_tau(mf, c, s).map(|k| [k.kappa, k.tau])
        };
        let frame = vframe(mf, c, s).map(|v| [v.theta, v.delta, v.theta1]);
        let reeb = reeb_decomposition_general(mf, c, s);
        if let (Ok(d), Ok(f)) = (&direct, &formula) {
            sum.max_kappa_disagreement = sum.max_kappa_disagreement.max((d.kappa - f[0]).abs());
            sum.max_tau_disagreement = sum.max_tau_disagreement.max((d.tau - f[1]).abs());
        }
        if let Ok(d) = &direct {
            sum.max_frenet_residual = sum.max_frenet_residual.max(d.residuals.max());
        }
        if let Ok(r) = &reeb {
            sum.max_eta_n_disagreement = sum.max_eta_n_disagreement.max((r.eta_n - r.eta_n_frame).abs());
            sum.max_eta_b_disagreement = sum.max_eta_b_disagreement.max((r.eta_b - r.eta_b_frame).abs());
        }
        let mut row = vec![num(s)];
        row.extend(cells(&pos, &mut flags));
        row.extend(cells(&basic, &mut flags));
        row.push(causal);
        row.extend(cells(&direct.as_ref().map(|d| [d.kappa, d.tau]).map_err(Clone::clone), &mut flags));
        row.extend(cells(&formula, &mut flags));
        row.extend(cells(&frame, &mut flags));
        row.extend(cells(&reeb.map(|r| [r.eta_n, r.eta_b]), &mut flags));
        row.extend(cells(&direct.map(|d| [d.residuals.max()]), &mut flags));
        wtr.write_record(&row)?;
        sum.rows += 1;
        if flags.is_empty() {
            sum.clean_rows += 1;
        }
        for k in flags.into_keys() {
            *sum.flags.entry(k).or_default() += 1;
        }
    }
    let mut out = Emitted::ok(csv_text(wtr)?);
    if sum.clean_rows < sum.rows {
        out.notices.push(format!(
            "{} of {} rows flagged: {:?}",
            sum.rows - sum.clean_rows,
            sum.rows,
            sum.flags
        ));
    }
    out.summary = Some(json(&sum)?);
    Ok(out)
}

fn csv_text(wtr: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = wtr.into_inner().map_err(|e| Failure::validation(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::validation(e.to_string()))
}

pub const GEN_COLUMNS: [&str; 9] = ["s", "x", "y", "z", "mu2", "kappa_k2", "tau_k2", "kappa_direct", "tau_direct"];

pub fn gen_legendre(cfg: &RunConfig) -> CliResult<Emitted> {
    if cfg.psi.is_none() {
        return Err(Failure::validation("gen-legendre needs --psi"));
    }
    if cfg.structure.is_some() || cfg.manifold.as_deref().is_some_and(|m| m != "q3") {
        return Err(Failure::validation("the generator lives in q3"));
    }
    let m = cfg.structure("q3")?;
    let input = cfg.curve(&m)?;
    let gen = input.generated.as_ref().expect("psi source yields a generated curve");
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(GEN_COLUMNS)?;
    let mut flags: BTreeMap<String, usize> = BTreeMap::new();
    for &s in &input.grid {
        let p = gen.position(s)?;
        let mut row_flags = BTreeMap::new();
        let mut row = vec![num(s), num(p.x), num(p.y), num(p.z), num(gen.mu2(s)?)];
        row.extend(cells(&gen.kappa_tau(s).map(|k| [k.kappa, k.tau]), &mut row_flags));
        row.extend(cells(&frenet_direct(m.as_ref(), gen, s).map(|d| [d.kappa, d.tau]), &mut row_flags));
        wtr.write_record(&row)?;
        for k in row_flags.into_keys() {
            *flags.entry(k).or_default() += 1;
        }
    }
    let mut out = Emitted::ok(csv_text(wtr)?);
    if let Some(n) = flags.get("geodesic") {
        out.notices.push(format!("geodesic points: {n} samples have zero curvature"));
    }
    if flags.keys().any(|k| k != "geodesic") {
        out.notices.push(format!("flagged samples: {flags:?}"));
    }
    Ok(out)
}

pub fn check_spherical(cfg: &RunConfig) -> CliResult<Emitted> {
    let tol = cfg.tol_or(1e-8);
    let report: SphericalReport = if let Some(th) = &cfg.theta {
        if cfg.curve.is_some() || cfg.psi.is_some() {
            return Err(Failure::validation("give either a theta profile or a curve"));
        }
        let (a, b) = match (cfg.from, cfg.to) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Failure::validation("a theta profile needs from and to")),
        };
        let eps = th.kind.epsilon();
        if cfg.epsilon.is_some_and(|e| e != eps.value::<f64>()) {
            return Err(Failure::validation(format!("theta kind fixes epsilon = {eps}")));
        }
        let alpha = ExprFunction::new(th.alpha.parse()?, (a, b))?;
        let sol = theta_solution(th.kind, th.coefficients, Arc::new(alpha.clone()), th.s0.unwrap_or(a), (a, b))?;
        let g = pseudocontact::curve::grid(a, b, cfg.grid_count())?;
        classify_profile(&sol, &alpha, th.kind.epsilon(), &g, tol)?
    } else {
        let m = cfg.structure("q3")?;
        let probes = seeded_probes(m.as_ref(), cfg.seed(), 20)?;
        let qs = check_quasi_sasakian(m.as_ref(), &probes, 1e-7)?;
        if !qs.quasi_sasakian {
            return Err(GeomError::NotQuasiSasakian {
                beta: qs.max_abs_beta,
                xi_alpha: qs.max_abs_xi_alpha,
            }
            .into());
        }
        let input = cfg.curve(&m)?;
        classify_spherical(m.as_ref(), input.curve.as_ref(), &input.grid, tol)?
    };
    Ok(Emitted::ok(json(&report)?))
}

pub fn plot(cfg: &RunConfig) -> CliResult<Emitted> {
    let m = cfg.structure("n3")?;
    let input = cfg.curve(&m)?;
    let trace: Vec<_> = input.grid.iter().map(|&s| input.curve.position(s).ok()).collect();
    if trace.iter().all(Option::is_none) {
        return Err(GeomError::EmptyGrid.into());
    }
    Ok(Emitted::ok(svg::projections(input.curve.label(), &trace)))
}
