mod common;

use std::sync::Arc;

use common::{psi_s_curve, structure};
use pseudocontact::curve::grid;
use pseudocontact::function::{Constant, ExprFunction, FnScalar, ScalarFunction};
use pseudocontact::manifold::Epsilon;
use pseudocontact::spherical::{
    classify_profile, euclidean_spherical_residual, osculating_sphere, spherical_residual_q3,
    ThetaSolution,
};
use pseudocontact::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Alpha = Arc<dyn ScalarFunction<f64>>;

fn alphas() -> Vec<(&'static str, Alpha, (f64, f64))> {
    let c = psi_s_curve();
    let along: Alpha = Arc::new(FnScalar::new(
        move |s: f64| {
            let x = c.position(s)?.x;
            Ok(1.0 / (x * x))
        },
        (0.1, 3.0),
    ));
    vec![("unit", Arc::new(Constant(1.0)), (0.0, 1.0)), ("inverse-square", along, (0.6, 2.4))]
}

fn draw(rng: &mut ChaCha8Rng, kind: ThetaKind) -> [f64; 2] {
    match kind {
        ThetaKind::SpacelikeTrig => [rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0)],
        ThetaKind::TimelikeHyp => {
            let b1: f64 = rng.gen_range(0.5..2.0);
            [b1, b1 * rng.gen_range(-0.9..0.9)]
        }
    }
}

fn solutions(kind: ThetaKind, alpha: &Alpha, interval: (f64, f64), seed: u64) -> Vec<ThetaSolution<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < 20 {
        let coeffs = draw(&mut rng, kind);
        match theta_solution(kind, coeffs, alpha.clone(), interval.0, interval) {
            Ok(t) => out.push(t),
            Err(GeomError::ThetaBlowsUp(_)) => continue,
            Err(e) => panic!("{coeffs:?}: {e}"),
        }
    }
    out
}

#[test]
fn closed_form_solutions_solve_the_ode() {
    for (name, alpha, interval) in alphas() {
        for kind in [ThetaKind::SpacelikeTrig, ThetaKind::TimelikeHyp] {
            let eps = kind.epsilon();
            let g = grid(interval.0, interval.1, 41).unwrap();
            for th in solutions(kind, &alpha, interval, 7) {
                for &s in &g {
                    let r = spherical_residual_q3(&th, alpha.as_ref(), eps, s).unwrap();
                    assert!(r.os2.abs() < 1e-8, "{name} {kind:?} s={s}: {r:?}");
                    assert!((r.os5 + r.os2).abs() < 1e-8, "{name} {kind:?} s={s}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn radius_constancy_iff_residual_vanishes() {
    let tol = 1e-8;
    for (name, alpha, interval) in alphas() {
        for kind in [ThetaKind::SpacelikeTrig, ThetaKind::TimelikeHyp] {
            let eps = kind.epsilon();
            let g = grid(interval.0, interval.1, 41).unwrap();
            for th in solutions(kind, &alpha, interval, 11) {
                let rep = classify_profile(&th, alpha.as_ref(), eps, &g, tol).unwrap();
                assert!(rep.residual_vanishes(), "{name} {kind:?}: {}", rep.max_residual);
                assert!(rep.radius_constant(100.0), "{name} {kind:?}: {}", rep.radius2_variation);
                let [c1, c2] = th.coefficients;
                let expect = match kind {
                    ThetaKind::SpacelikeTrig => c1 * c1 + c2 * c2,
                    ThetaKind::TimelikeHyp => c1 * c1 - c2 * c2,
                };
                assert!((rep.profile[0].radius2 - expect).abs() < 1e-8 * expect.abs().max(1.0));

                let th = Arc::new(th);
                let inner = th.clone();
                let bent = FnScalar::new(move |s: f64| Ok(inner.value(s)? * (1.0 + 0.05 * (3.0 * s).sin())), interval);
                let rep = classify_profile(&bent, alpha.as_ref(), eps, &g[1..40], tol).unwrap();
                assert!(!rep.residual_vanishes() && !rep.radius_constant(100.0), "{name} {kind:?}");
                assert_eq!(rep.verdict, Verdict::NotSpherical);
            }
        }
    }
}

#[test]
fn excluded_coefficients() {
    let one: Alpha = Arc::new(Constant(1.0));
    let e = theta_solution(ThetaKind::TimelikeHyp, [1.0, -1.0], one.clone(), 0.0, (0.0, 1.0)).err().unwrap();
    assert!(matches!(e, GeomError::ExcludedCoefficients(..)));
    let e = theta_solution(ThetaKind::SpacelikeTrig, [1.0, 0.0], one, 0.0, (0.0, 3.0)).err().unwrap();
    assert!(matches!(e, GeomError::ThetaBlowsUp(_)));
}

#[test]
fn generated_curve_is_not_spherical() {
    let c = psi_s_curve();
    let g = grid(0.15, 2.95, 201).unwrap();
    let rep = classify_spherical(structure("q3", -1.0).as_ref(), &c, &g, 1e-8).unwrap();
    assert_eq!(rep.verdict, Verdict::NotSpherical);
    assert!(rep.min_interior_residual > 1e-2, "{}", rep.min_interior_residual);
    // θ′ ≡ 0, so q ≡ 0: the radius relation is constant although the centre moves
    assert!(rep.radius_constant(100.0));
    assert!(rep.profile.iter().all(|p| (p.theta - rep.profile[0].theta).abs() < 1e-6));
    assert!(rep.max_center_drift.unwrap() > 1e-2);
    // θ is constant for ε = +1, which the solution family leaves out
    let rep = classify_spherical(structure("q3", 1.0).as_ref(), &c, &g, 1e-8).unwrap();
    assert_eq!(rep.verdict, Verdict::ExcludedCase);
}

#[test]
fn osculating_center_is_consistent() {
    let c = psi_s_curve();
    let m = structure("q3", -1.0);
    for s in grid(0.3, 2.8, 11).unwrap() {
        let o = osculating_sphere(m.as_ref(), &c, s).unwrap();
        assert!(o.os3_defect < 1e-6, "s={s}: {o:?}");
        assert!((o.center_drift - o.residual.abs()).abs() < 1e-6, "s={s}: {o:?}");
    }
}

#[test]
fn euclidean_circle_helices() {
    // κ = 1/cos s, τ = 1: a curve on the unit sphere
    let k = ExprFunction::parse("1/cos(s)").unwrap();
    let one = Constant(1.0);
    for s in [-0.5, 0.0, 0.7] {
        let r: f64 = euclidean_spherical_residual(&k, &one, s).unwrap();
        assert!(r.abs() < 1e-12, "{r}");
    }
    let k = ExprFunction::parse("1 + s^2").unwrap();
    assert!(euclidean_spherical_residual(&k, &one, 0.5).unwrap().abs() > 1e-2);
    let _ = Epsilon::Plus;
}
