use std::f64::consts::PI;

use fourier_rearrange::rearrange::{cell_ladder, distribution_function, set_rearrange, symmetric_rearrange};
use fourier_rearrange::specfun::{bessel_j, unit_ball_volume};
use fourier_rearrange::transform::{dft, inverse_transform, schrodinger_evolve};
use fourier_rearrange::verify::{verify_hardy_littlewood, InequalityReport};
use fourier_rearrange::GridFunction;
use num_complex::Complex64;
use proptest::prelude::*;

fn grid(dim: usize, values: Vec<(f64, f64)>) -> GridFunction {
    let n = (values.len() as f64).powf(1.0 / dim as f64).round() as usize;
    let shape = vec![n; dim];
    GridFunction::new(
        0.25,
        vec![-(n as f64) * 0.125; dim],
        shape,
        values.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
    )
    .unwrap()
}

/// Random complex grids in one or two dimensions, with ties.
fn grids() -> impl Strategy<Value = GridFunction> {
    let entry = prop_oneof![Just((0.0, 0.0)), Just((1.0, 0.0)), (-3.0f64..3.0, -3.0f64..3.0),];
    (1usize..=2, 2usize..=12).prop_flat_map(move |(dim, n)| {
        proptest::collection::vec(entry.clone(), n.pow(dim as u32)).prop_map(move |v| grid(dim, v))
    })
}

fn grid_pairs() -> impl Strategy<Value = (GridFunction, GridFunction)> {
    (1usize..=2, 2usize..=10).prop_flat_map(|(dim, n)| {
        let len = n.pow(dim as u32);
        let v = proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len);
        (v.clone(), v).prop_map(move |(a, b)| (grid(dim, a), grid(dim, b)))
    })
}

fn gaussians() -> impl Strategy<Value = GridFunction> {
    (0.5f64..2.0, -1.0f64..1.0, -1.5f64..1.5, 0.3f64..1.5).prop_map(|(a, c, m, amp)| {
        GridFunction::symmetric_from_fn(&[256], 1.0 / 16.0, |x| {
            let y = x[0] - c;
            Complex64::from_polar(amp * (-PI * a * y * y).exp(), 2.0 * PI * m * x[0])
        })
        .unwrap()
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #[test]
    fn rearrangement_is_equimeasurable(f in grids()) {
        let star = symmetric_rearrange(&f);
        prop_assert_eq!(cell_ladder(&star), cell_ladder(&f));
        for p in [1.0, 2.0, 3.5] {
            prop_assert!(rel(star.norm(p), f.norm(p)) <= 1e-12);
        }
        prop_assert_eq!(star.norm(f64::INFINITY), f.norm(f64::INFINITY));
        let lambdas = [0.1, 0.5, 1.0, 2.0];
        prop_assert_eq!(
            distribution_function(&star, &lambdas).unwrap(),
            distribution_function(&f, &lambdas).unwrap()
        );
    }

    #[test]
    fn rearrangement_decreases_outward_and_is_idempotent(f in grids()) {
        let star = symmetric_rearrange(&f);
        let order = star.cell_order();
        let mags = star.magnitudes();
        prop_assert!(order.windows(2).all(|w| mags[w[0]] >= mags[w[1]]));
        prop_assert!(star.values().iter().all(|z| z.im == 0.0 && z.re >= 0.0));
        prop_assert_eq!(symmetric_rearrange(&star), star);
    }

    #[test]
    fn distribution_function_is_nonincreasing(f in grids()) {
        let lambdas: Vec<f64> = (1..40).map(|k| k as f64 * 0.1).collect();
        let mu = distribution_function(&f, &lambdas).unwrap().measures;
        prop_assert!(mu.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(mu[0] <= f.support_measure());
    }

    #[test]
    fn hardy_littlewood_holds((f, g) in grid_pairs()) {
        let r = verify_hardy_littlewood(&f, &g).unwrap();
        prop_assert!(r.raw_pass || r.pass, "{} > {}", r.lhs, r.rhs);
        prop_assert!(r.is_consistent());
    }

    #[test]
    fn balls_have_the_requested_volume(volume in 1e-6f64..1e6, d in 1usize..=6) {
        let r = set_rearrange(volume, d).unwrap();
        prop_assert!(rel(unit_ball_volume(d) * r.powi(d as i32), volume) < 1e-12);
    }

    #[test]
    fn transform_is_unitary_and_invertible(f in grids()) {
        let spec = dft(&f).unwrap();
        let space = f.norm(2.0).powi(2);
        let freq = spec.weighted_energy(|_| 1.0);
        prop_assert!((space - freq).abs() <= 1e-12 * space.max(1e-12));
        let back = inverse_transform(&spec);
        let scale = f.norm(f64::INFINITY).max(1.0);
        for (a, b) in back.values().iter().zip(f.values()) {
            prop_assert!((a - b).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn free_flow_conserves_mass_and_composes(f in gaussians(), s in 0.1f64..3.0, t in 0.1f64..3.0) {
        let vs = schrodinger_evolve(&f, s).unwrap();
        prop_assert!(rel(vs.norm(2.0), f.norm(2.0)) < 1e-12);
        let direct = schrodinger_evolve(&f, s + t).unwrap();
        let composed = schrodinger_evolve(&vs, t).unwrap();
        for (a, b) in direct.values().iter().zip(composed.values()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn bessel_three_term_recurrence(lambda in 0.5f64..4.0, x in 0.5f64..60.0) {
        // J_{λ-1}(x) + J_{λ+1}(x) = (2λ/x) J_λ(x), measured against the envelope
        let lhs = bessel_j(lambda - 1.0, x).unwrap() + bessel_j(lambda + 1.0, x).unwrap();
        let rhs = 2.0 * lambda / x * bessel_j(lambda, x).unwrap();
        let scale = (2.0 / (PI * x)).sqrt().max(rhs.abs()) * (1.0 + 2.0 * lambda / x);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn reports_round_trip_and_stay_consistent(
        lhs in 0.0f64..10.0,
        rhs in 0.0f64..10.0,
        c in 0.1f64..5.0,
        tol in 0.0f64..0.1,
    ) {
        let r = InequalityReport::check("prop-check", "lhs <= C rhs", lhs, rhs, c, tol).with_meta("seed", 3);
        prop_assert!(r.is_consistent());
        prop_assert_eq!(r.pass, lhs <= c * rhs * (1.0 + tol));
        let back: InequalityReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(r.csv_row().split(',').count(), InequalityReport::CSV_HEADER.split(',').count());
    }

    #[test]
    fn grid_files_round_trip_exactly(f in grids()) {
        prop_assert_eq!(GridFunction::from_json(&f.to_json()).unwrap(), f);
    }
}
