//! Property tests for the library invariants: defining equations, map
//! round-trips, representation identities, and monotonicity.

use num_complex::Complex;
use proptest::prelude::*;

use wpa::conformal::{ExtPoint, ExteriorMap};
use wpa::construction::{pi_eval, pi_poly};
use wpa::geometry::{k_alpha_member, r_k_alpha, CompactFamily, DomainSpec, RationalExponent};
use wpa::potential::pv_density;
use wpa::Real;

fn cx(re: Real, im: Real) -> Complex<Real> {
    Complex::new(re, im)
}

proptest! {
    #[test]
    fn r_k_alpha_satisfies_its_equation(
        m in 1.01f64..50.0,
        sigma in 1u32..=6,
        tau in 1u32..=6,
    ) {
        let exp = RationalExponent::new(sigma, tau).unwrap();
        let r = r_k_alpha(&exp, m).unwrap();
        prop_assert!(r > 0.0 && r < 1.0);
        let (s, t) = (exp.sigma() as i32, exp.tau() as i32);
        let residual = m.powi(t) * r.powi(s) * (1.0 + r).powi(t) - 1.0;
        // The bisection returns the admissible (lower) bracket end.
        prop_assert!(residual <= 1e-12, "residual {residual}");
        prop_assert!(residual.abs() <= 1e-9, "residual {residual}");
    }

    #[test]
    fn r_k_alpha_decreases_in_m(
        m in 1.05f64..20.0,
        bump in 0.01f64..5.0,
        sigma in 1u32..=4,
        tau in 1u32..=4,
    ) {
        let exp = RationalExponent::new(sigma, tau).unwrap();
        let r1 = r_k_alpha(&exp, m).unwrap();
        let r2 = r_k_alpha(&exp, m + bump).unwrap();
        prop_assert!(r2 < r1);
    }

    #[test]
    fn conformal_round_trips(
        x0 in 1.5f64..6.0,
        eps in 0.01f64..0.3,
        radius in 1.0f64..4.0,
        angle in 0.0f64..(2.0 * std::f64::consts::PI),
    ) {
        for spec in [
            DomainSpec::new(CompactFamily::TangentDisc { x0 }, eps),
            DomainSpec::new(CompactFamily::Segment { x0 }, eps.min(0.4 * (x0 - 1.0) / x0)),
        ] {
            let map = ExteriorMap::for_domain(&spec).unwrap();
            let z = cx(x0 + radius * angle.cos(), radius * angle.sin());
            let w = match map.forward(ExtPoint::Finite(z)) {
                Ok(w) => w,
                Err(_) => continue, // point landed inside G
            };
            match map.inverse(w).unwrap() {
                ExtPoint::Finite(back) => {
                    prop_assert!((back - z).norm() < 1e-8 * z.norm().max(1.0));
                }
                ExtPoint::Infinity => prop_assert!(false, "finite point inverted to infinity"),
            }
        }
    }

    #[test]
    fn pi_coefficient_form_matches_product_form(
        n in 1u32..=12,
        c in 0.5f64..3.0,
        sigma in 1u32..=3,
        tau in 1u32..=3,
        re in -0.5f64..0.0,
        im in -0.5f64..0.5,
    ) {
        // Re z ≤ 0 and |z| ≤ 0.5 keep the expanded Horner sum cancellation
        // free, so both forms must agree to relative 1e-9.
        let z = cx(re, im);
        prop_assume!(z.norm() <= 0.5);
        let p = pi_poly::<Real>(n, c, sigma, tau).unwrap();
        let direct = p.eval(z);
        let product = pi_eval(n, c, sigma, tau, z);
        let scale = direct.norm().max(product.norm()).max(1e-300);
        prop_assert!((direct - product).norm() <= 1e-9 * scale);
    }

    #[test]
    fn one_is_always_a_member(
        x0 in 1.2f64..8.0,
        sigma in 1u32..=4,
        tau in 1u32..=4,
        m in 1.01f64..30.0,
    ) {
        let exp = RationalExponent::new(sigma, tau).unwrap();
        for fam in [CompactFamily::Segment { x0 }, CompactFamily::TangentDisc { x0 }] {
            prop_assert!(k_alpha_member(&fam, &exp, m, cx(1.0, 0.0)).unwrap());
        }
    }

    #[test]
    fn density_is_affine_in_alpha(
        x0 in 1.5f64..5.0,
        rho_f in 0.3f64..0.95,
        a1 in 0.0f64..1.0,
        a2 in 1.0f64..3.0,
        theta in 0.0f64..(2.0 * std::f64::consts::PI),
    ) {
        let rho = rho_f * x0; // keep 0 outside the closed disc: rho < x0
        let spec = DomainSpec::new(CompactFamily::TangentDisc { x0 }, rho - (x0 - 1.0));
        prop_assume!(spec.validate().is_ok());
        let map = ExteriorMap::for_domain(&spec).unwrap();
        let zeta = map.boundary_point(theta).unwrap();
        let d1 = pv_density(&map, a1, zeta).unwrap();
        let d2 = pv_density(&map, a2, zeta).unwrap();
        let mid = pv_density(&map, 0.5 * (a1 + a2), zeta).unwrap();
        let scale = d1.abs().max(d2.abs()).max(1.0);
        prop_assert!((mid - 0.5 * (d1 + d2)).abs() <= 1e-10 * scale);
    }

    #[test]
    fn segment_branch_is_continuous(
        x0 in 2.0f64..6.0,
        re in -3.0f64..8.0,
        im in 0.05f64..3.0,
    ) {
        let spec = DomainSpec::new(CompactFamily::Segment { x0 }, 0.05);
        let map = ExteriorMap::for_domain(&spec).unwrap();
        let z = cx(re, im);
        let h = 1e-6;
        let w0 = match map.forward(ExtPoint::Finite(z)) {
            Ok(w) => w,
            Err(_) => return Ok(()),
        };
        for dz in [cx(h, 0.0), cx(0.0, h)] {
            if let Ok(w1) = map.forward(ExtPoint::Finite(z + dz)) {
                prop_assert!((w1 - w0).norm() < 1e-2, "jump at {z}: {w0} vs {w1}");
            }
        }
    }
}
