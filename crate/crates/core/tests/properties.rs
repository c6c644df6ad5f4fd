use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;

use inflecta::asymptotics::tau0;
use inflecta::poly::Poly;
use inflecta::quad::{find_stationary_points, integrate, valid_sectors, Endpoint, IntegrandSpec, PolyPhase};
use inflecta::special::{airy_ai, fresnel_full, fresnel_halfline};
use inflecta::wavefield::{eval_a, eval_a32, regime_quantities};

const G: f64 = 4.0 / 9.0;

fn cubic(c0: f64, c1: f64, c2: f64, c3: f64) -> PolyPhase {
    PolyPhase::from_real(&[c0, c1, c2, c3], 1.0).unwrap()
}

fn between(phase: &PolyPhase, amp: Poly, a: Endpoint, b: Endpoint) -> Complex64 {
    let spec = IntegrandSpec::new(phase.clone(), amp, a, b).unwrap();
    integrate(&spec, 1e-12).unwrap().value
}

fn close(a: Complex64, b: Complex64, scale: f64, tol: f64) -> bool {
    (a - b).norm() <= tol * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integral_is_linear_in_amplitude(
        c1 in -2.0..2.0f64, c2 in -2.0..2.0f64, c3 in 0.3..2.0f64,
        f in prop::array::uniform3(-1.0..1.0f64), h in prop::array::uniform3(-1.0..1.0f64),
        alpha in -2.0..2.0f64, beta in -2.0..2.0f64,
    ) {
        let phase = cubic(0.0, c1, c2, c3);
        let sec = valid_sectors(&phase);
        let (a, b) = (Endpoint::InfiniteRay(sec[0].center()), Endpoint::InfiniteRay(sec[1].center()));
        let i1 = between(&phase, Poly::from_real(&f), a, b);
        let i2 = between(&phase, Poly::from_real(&h), a, b);
        let mix: Vec<f64> = f.iter().zip(&h).map(|(x, y)| alpha * x + beta * y).collect();
        let whole = between(&phase, Poly::from_real(&mix), a, b);
        let scale = alpha.abs() * i1.norm() + beta.abs() * i2.norm();
        prop_assert!(close(whole, i1 * alpha + i2 * beta, scale, 1e-9), "{whole} vs {}", i1 * alpha + i2 * beta);
    }

    #[test]
    fn contour_splits_at_any_point(
        c1 in -2.0..2.0f64, c2 in -2.0..2.0f64, c3 in 0.3..2.0f64,
        zr in -1.5..1.5f64, zi in -1.0..1.0f64,
    ) {
        let phase = cubic(0.0, c1, c2, c3);
        let sec = valid_sectors(&phase);
        let (a, b) = (Endpoint::InfiniteRay(sec[0].center()), Endpoint::InfiniteRay(sec[2].center()));
        let z = Endpoint::Finite(Complex64::new(zr, zi));
        let one = Poly::from_real(&[1.0]);
        let whole = between(&phase, one.clone(), a, b);
        let left = between(&phase, one.clone(), a, z);
        let right = between(&phase, one, z, b);
        let scale = whole.norm().max(left.norm()).max(right.norm());
        prop_assert!(close(left + right, whole, scale, 1e-9), "{} vs {whole}", left + right);
    }

    #[test]
    fn ray_angle_within_a_sector_is_irrelevant(
        c1 in -2.0..2.0f64, c2 in -2.0..2.0f64, c3 in 0.3..2.0f64,
        u in -0.8..0.8f64, v in -0.8..0.8f64,
    ) {
        let phase = cubic(0.0, c1, c2, c3);
        let sec = valid_sectors(&phase);
        let half = 0.5 * (sec[0].end - sec[0].start);
        let one = Poly::from_real(&[1.0]);
        let end = Endpoint::InfiniteRay(sec[1].center());
        let x = between(&phase, one.clone(), Endpoint::InfiniteRay(sec[0].center() + u * half), end);
        let y = between(&phase, one, Endpoint::InfiniteRay(sec[0].center() + v * half), end);
        prop_assert!(close(x, y, x.norm(), 1e-9));
    }

    #[test]
    fn stationary_points_are_roots_with_full_multiplicity(
        c in prop::collection::vec(-3.0..3.0f64, 3..6), lead in 0.2..2.0f64,
    ) {
        let mut coeffs = c.clone();
        coeffs.push(lead);
        let phase = PolyPhase::from_real(&coeffs, 1.0).unwrap();
        let pts = find_stationary_points(&phase).unwrap();
        let total: usize = pts.iter().map(|p| p.multiplicity).sum();
        prop_assert_eq!(total, phase.degree() - 1);
        let d = phase.poly().derivative();
        for p in &pts {
            if p.multiplicity == 1 {
                let scale: f64 = d.coeffs().iter().map(|a| a.norm()).sum::<f64>() * (1.0 + p.point.norm()).powi(d.degree() as i32);
                prop_assert!(d.eval(p.point).norm() <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn fresnel_halves_complement(a in -3.0..3.0f64) {
        let sum = fresnel_halfline(a).unwrap() + fresnel_halfline(-a).unwrap();
        prop_assert!((sum - fresnel_full()).norm() < 1e-12 * fresnel_full().norm());
    }

    #[test]
    fn tau0_decreases_towards_zero(k1 in -30.0..0.0f64, frac in 0.01..0.99f64, gamma in 0.05..3.0f64) {
        let k2 = k1 * frac;
        let (t1, t2) = (tau0(k1, gamma).unwrap(), tau0(k2, gamma).unwrap());
        prop_assert!(t1 > t2 && t2 > 0.0);
        let b = 2.0 / (3.0 * gamma.sqrt());
        let r = k1 + t1 * t1 + b * t1 * t1 * t1;
        prop_assert!(r.abs() <= 1e-12 * k1.abs().max(1.0));
    }

    #[test]
    fn similarity_variables(s in -20.0..20.0f64, n in -100.0..100.0f64, gamma in 0.01..4.0f64) {
        let q = regime_quantities(s, n, gamma);
        prop_assert_eq!(q.x, s);
        prop_assert_eq!(q.y, n - gamma * (s * s) * s / 3.0);
        if s > 0.0 {
            let (khat, kbar) = (q.khat.unwrap(), q.kbar.unwrap());
            prop_assert!((kbar - s.sqrt() * khat).abs() <= 1e-12 * kbar.abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn prefactor_is_unimodular(s in -4.0..4.0f64, n in -4.0..4.0f64) {
        let a = eval_a(s, n, G, 1e-12).unwrap().value;
        let y = n - G * s * s * s / 3.0;
        let b = eval_a32(s, y, G, 1e-12).unwrap().value;
        prop_assert!((a.norm() - 2.0 * b.norm()).abs() <= 1e-12 * a.norm().max(1e-3));
    }
}

#[test]
fn airy_matches_contour_integral() {
    for i in 0..=30 {
        let x = -10.0 + 0.5 * i as f64;
        let phase = PolyPhase::from_real(&[0.0, x, 0.0, 1.0 / 3.0], 1.0).unwrap();
        let v = between(
            &phase,
            Poly::from_real(&[1.0]),
            Endpoint::InfiniteRay(5.0 * std::f64::consts::PI / 6.0),
            Endpoint::InfiniteRay(std::f64::consts::PI / 6.0),
        );
        let ai = v.re / (2.0 * std::f64::consts::PI);
        assert!((ai - airy_ai(x)).abs() < 1e-8, "x = {x}: {ai} vs {}", airy_ai(x));
    }
}

#[test]
fn fresnel_halfline_on_rotated_ray() {
    // v = a + r e^{-iπ/4} turns the integrand into a Gaussian in r; Simpson on [0, 14].
    let w = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
    for a in [-3.0, -1.0, 0.0, 0.4, 1.0, 3.0] {
        let f = |r: f64| {
            let v = w * r + a;
            (Complex64::new(0.0, -0.5) * v * v).exp() * w
        };
        let (m, h) = (28_000, 14.0 / 28_000.0);
        let mut sum = f(0.0) + f(14.0);
        for k in 1..m {
            sum += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        let oracle = sum * (h / 3.0);
        let got = fresnel_halfline(a).unwrap();
        assert_relative_eq!(got.re, oracle.re, epsilon = 1e-10);
        assert_relative_eq!(got.im, oracle.im, epsilon = 1e-10);
    }
}
