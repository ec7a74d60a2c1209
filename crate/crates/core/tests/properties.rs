use proptest::prelude::*;
use splab::family::{eval_e, eval_e_rational, Branch, SolutionParams};
use splab::ham::deformation_constraint;
use splab::numerics::{upper_incomplete_gamma, Quadrature};
use splab::{GridFunction, Interval, UniformGrid};

fn terms_from(rows: &[Vec<f64>]) -> Vec<GridFunction> {
    let grid = UniformGrid::new(0.0, 1.0, rows[0].len()).unwrap();
    rows.iter()
        .map(|r| GridFunction::new(grid, r.clone()).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn constraint_is_homogeneous_of_degree_three(
        rows in prop::collection::vec(prop::collection::vec(-2.0..2.0f64, 6), 4),
        s in -3.0..3.0f64,
        mu in 0usize..4,
    ) {
        let base = terms_from(&rows);
        let scaled: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|v| v * s).collect()).collect();
        let a = deformation_constraint(&base, mu).unwrap();
        let b = deformation_constraint(&terms_from(&scaled), mu).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x * s.powi(3) - y).abs() <= 1e-12 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn constraint_matches_cube_of_sum(
        rows in prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 5), 4),
    ) {
        // Σ_μ Ξ_μ over μ ≤ 3 collects every cubic product of total order ≤ 3,
        // so it is symmetric in the terms and equals the order-≤3 part of (Σ u)³.
        let t = terms_from(&rows);
        for i in 0..5 {
            let u: Vec<f64> = rows.iter().map(|r| r[i]).collect();
            let mut want = 0.0;
            for a in 0..4 { for b in 0..4 { for c in 0..4 {
                if a + b + c <= 3 { want += u[a] * u[b] * u[c]; }
            }}}
            let got: f64 = (0..4).map(|mu| deformation_constraint(&t, mu).unwrap().values()[i]).sum();
            prop_assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_is_linear(alpha in -3.0..3.0f64, beta in -3.0..3.0f64, k in 0.5..4.0f64) {
        let q = Quadrature::with_tol(1e-10);
        let iv = Interval::new(-1.0, 2.0).unwrap();
        let f = |x: f64| (k * x).sin();
        let g = |x: f64| (-x * x).exp();
        let lhs = q.integrate(|x| alpha * f(x) + beta * g(x), iv).unwrap();
        let rhs = alpha * q.integrate(f, iv).unwrap() + beta * q.integrate(g, iv).unwrap();
        prop_assert!((lhs - rhs).abs() <= 2e-10 * (1.0 + alpha.abs() + beta.abs()));
    }

    #[test]
    fn gamma_decreases_in_z(a in 0.1..5.0f64, z in 0.0..40.0f64, dz in 1e-3..5.0f64) {
        let g1 = upper_incomplete_gamma(a, z).unwrap();
        let g2 = upper_incomplete_gamma(a, z + dz).unwrap();
        prop_assert!(g1 > g2);
    }

    #[test]
    fn branches_collapse_to_shifted_sech(
        p in 0.3..3.0f64, a in 0.05..3.0f64, xi in -3.0..3.0f64, x in -5.0..5.0f64, x0 in -1.0..1.0f64,
    ) {
        let base = SolutionParams { x0, ..SolutionParams::sech(p, a, 0.0).unwrap() };
        for branch in [Branch::Xi1, Branch::Xi2] {
            let prm = SolutionParams { branch, xi1: xi, xi2: xi, ..base };
            let fast = eval_e(x, &prm).unwrap();
            let raw = eval_e_rational(x, &prm).unwrap();
            prop_assert!((fast - raw).abs() <= 1e-12 * raw.abs().max(1.0));
        }
    }
}
