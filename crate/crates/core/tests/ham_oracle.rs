mod common;

use common::gl_integrate;
use splab::ham::{convergence_check, ham_solve, HamConfig};
use splab::{Complex64, Interval};

fn first_order_config() -> HamConfig {
    HamConfig {
        b: Complex64::new(0.1, 0.0),
        a_width: 1.0,
        c2: 0.0,
        c4: 1.0,
        mu_max: 1,
        ..HamConfig::default()
    }
}

#[test]
fn first_correction_matches_quadrature() {
    let cfg = first_order_config();
    let series = ham_solve(&cfg).unwrap();
    let u1 = &series.terms[1];
    let frozen = [
        0.007_297_895_756_388_632,
        0.005_515_787_565_459_036,
        0.001_454_608_394_254_84,
    ];
    for (x, want) in [0.0, 1.0, 2.0].into_iter().zip(frozen) {
        let i = cfg.grid.index_of(x).unwrap();
        let oracle = -0.1 / 6.0 * gl_integrate(|y| y.powi(3) / y.cosh().powi(3), -20.0, x, 200, 16);
        assert!((oracle - want).abs() < 1e-12, "oracle drifted at {x}");
        assert!(
            (u1.values()[i].re - oracle).abs() < 1e-8,
            "x={x}: {} vs {oracle}",
            u1.values()[i].re
        );
        assert_eq!(u1.values()[i].im, 0.0);
    }
}

#[test]
fn zero_coupling_returns_initial_guess() {
    let cfg = HamConfig {
        b: Complex64::new(0.0, 0.0),
        mu_max: 3,
        ..HamConfig::default()
    };
    let series = ham_solve(&cfg).unwrap();
    for sum in &series.partial_sums {
        for (x, v) in sum.iter() {
            assert_eq!(v, Complex64::new(1.0 / x.cosh(), 0.0));
        }
    }
}

#[test]
fn criterion_matches_direct_quadrature() {
    let b = Complex64::new(0.3, 0.1);
    let (c2, c4) = (1.5, -0.5);
    let interval = Interval::new(-0.5, 2.0).unwrap();
    let cfg = HamConfig {
        b,
        c2,
        c4,
        conver_interval: Some(interval),
        ..HamConfig::default()
    };
    let (value, _) = convergence_check(|y| cfg.kernel_diagonal(y), interval, 1e-12).unwrap();
    let coeff = -(0.5 * c2 + c4 / 6.0);
    let moment = gl_integrate(|y| y.powi(3), -0.5, 2.0, 4, 8);
    let direct = (Complex64::new(1.0, 0.0) - b * coeff * moment).norm();
    assert!((value - direct).abs() < 1e-10, "{value} vs {direct}");
}

#[test]
fn terms_decay_at_grid_edges() {
    let cfg = HamConfig {
        mu_max: 3,
        ..HamConfig::default()
    };
    let series = ham_solve(&cfg).unwrap();
    for term in &series.terms {
        let weighted: Vec<(f64, f64)> = term
            .iter()
            .filter(|(x, _)| x.abs() >= 15.0)
            .map(|(x, v)| (x, x.abs().powf(1.5) * v.norm()))
            .collect();
        for &(x, w) in &weighted {
            assert!(w < 1e-4, "x={x} weighted={w}");
        }
        let at = |x: f64| {
            weighted
                .iter()
                .find(|(y, _)| (y - x).abs() < 1e-9)
                .unwrap()
                .1
        };
        // Odd moments cancel over the symmetric grid down to rounding.
        assert!(at(20.0) <= at(15.0).max(1e-12) && at(-20.0) <= at(-15.0).max(1e-12));
    }
}

#[test]
fn uncoupled_residual_trend() {
    let mut norms = Vec::new();
    for mu_max in 1..=4 {
        let cfg = HamConfig {
            mu_max,
            ..HamConfig::default()
        };
        let series = ham_solve(&cfg).unwrap();
        let r = splab::ham::residual_uncoupled(series.solution(), cfg.b, 1e-3).unwrap();
        norms.push(r.norms.l2);
    }
    // The sech guess does not solve the uncoupled equation; the corrections
    // only shave the residual.
    assert!(norms.windows(2).all(|p| p[1] < p[0]), "{norms:?}");
}
