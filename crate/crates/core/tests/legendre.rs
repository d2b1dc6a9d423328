mod common;

use std::time::Instant;

use common::{psi_s_curve, structure};
use pseudocontact::curve::{grid, is_legendre, is_unit_speed};
use pseudocontact::frenet::{frenet_direct, legendre_kappa_tau};
use pseudocontact::legendre::kappa_tau_k2;
use pseudocontact::*;

#[test]
fn psi_equals_s_generator() {
    let start = Instant::now();
    let c = psi_s_curve();
    let built = start.elapsed();
    let g = grid(0.1, 3.0, 401).unwrap();
    for eps in [1.0, -1.0] {
        let q3 = structure("q3", eps);
        let rep = is_legendre(q3.as_ref(), &c, &g, 1e-8).unwrap();
        let ex = rep.explicit.as_ref().unwrap();
        assert_eq!(ex.system, "k1");
        assert!(rep.legendre && ex.contact < 1e-8 && ex.speed < 1e-8, "{rep:?}");
        assert!(is_unit_speed(q3.as_ref(), &c, &g, 1e-8).unwrap().unit_speed);
    }
    let q3 = structure("q3", 1.0);
    for &s in &g {
        let kt = c.kappa_tau(s).unwrap();
        assert!((kt.kappa - 1.5).abs() < 1e-6, "s={s}: {kt:?}");
        assert!((kt.tau - 0.5 / s.sin()).abs() < 1e-6, "s={s}: {kt:?}");
        let alpha = alpha_beta(q3.as_ref(), &c.position(s).unwrap()).unwrap().alpha;
        assert!((kt.tau - alpha.abs()).abs() < 1e-8, "s={s}");
    }
    assert!(built.as_secs_f64() < 2.0, "{built:?}");
}

#[test]
fn generated_curves_match_direct_frenet() {
    for (src, interval) in [("s", (0.3, 2.8)), ("1 + 0.3*s", (0.6, 2.2)), ("s + 0.2*sin(3*s)", (0.4, 2.5))] {
        let psi = AngleFunction::parse(src, 0.0).unwrap();
        let c: GeneratedLegendre64 = generate_legendre_q3(&psi, interval, 2048).unwrap();
        for eps in [1.0, -1.0] {
            let q3 = structure("q3", eps);
            for s in grid(interval.0 + 0.05, interval.1 - 0.05, 41).unwrap() {
                let kt = c.kappa_tau(s).unwrap();
                if kt.kappa_signed < 0.05 {
                    continue;
                }
                let f = frenet_direct(q3.as_ref(), &c, s).unwrap();
                let l = legendre_kappa_tau(q3.as_ref(), &c, s).unwrap();
                assert!((f.kappa - kt.kappa).abs() < 1e-5, "{src} {eps} s={s}: {f:?} {kt:?}");
                assert!((f.tau - kt.tau).abs() < 1e-5, "{src} {eps} s={s}: {f:?} {kt:?}");
                assert!((l.kappa - kt.kappa).abs() < 1e-6 && (l.tau - kt.tau).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn standalone_closed_form_matches_generator() {
    let psi = AngleFunction::parse("s + 0.2*sin(3*s)", 0.0).unwrap();
    let c: GeneratedLegendre64 = generate_legendre_q3(&psi, (0.4, 2.5), 2048).unwrap();
    for s in grid(0.4, 2.5, 30).unwrap() {
        let a = c.kappa_tau(s).unwrap();
        let b = kappa_tau_k2::<f64>(&psi, s).unwrap();
        assert!((a.mu2 - b.mu2).abs() < 1e-11 && (a.kappa - b.kappa).abs() < 1e-9);
    }
}

#[test]
fn positivity_guard() {
    let psi = AngleFunction::parse("s", 0.0).unwrap();
    let e = generate_legendre_q3::<f64>(&psi, (0.1, 3.3), 2048).unwrap_err();
    assert_eq!(e.tag(), "mu_nonpositive");
    assert!(e.is_hypothesis_failure());
    let e = generate_legendre_q3::<f64>(&psi, (-0.5, 1.0), 2048).unwrap_err();
    assert!(matches!(e, GeomError::MuNonPositive { .. }));
}

#[test]
fn builtin_examples_satisfy_contact_system() {
    let n3 = structure("n3", 1.0);
    for (name, g) in [("upsilon1", grid(-2.0, 2.0, 81).unwrap()), ("upsilon2", grid(0.5, 4.0, 81).unwrap())] {
        let c = builtin_legendre(name).unwrap();
        let rep = is_legendre(n3.as_ref(), &c, &g, 1e-12).unwrap();
        let ex = rep.explicit.unwrap();
        assert!(rep.legendre && ex.system == "con" && ex.contact < 1e-12 && ex.speed < 1e-12);
    }
}
