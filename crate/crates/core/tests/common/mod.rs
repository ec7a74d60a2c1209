#![allow(dead_code)]

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Composite Gauss–Legendre over `panels` equal pieces of [lo, hi].
pub fn gl_integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize, order: usize) -> f64 {
    let rule = gauss_legendre(order);
    let w = (hi - lo) / panels as f64;
    (0..panels)
        .map(|k| {
            let mid = lo + (k as f64 + 0.5) * w;
            rule.iter()
                .map(|&(t, wt)| wt * f(mid + 0.5 * w * t))
                .sum::<f64>()
                * 0.5
                * w
        })
        .sum()
}

/// Γ(a, z) via s = z + v²: ∫_0^∞ 2v (z + v²)^{a-1} e^{-z-v²} dv.
pub fn gamma_oracle(a: f64, z: f64) -> f64 {
    let f = |v: f64| 2.0 * v * (z + v * v).powf(a - 1.0) * (-v * v).exp();
    (-z).exp() * gl_integrate(f, 0.0, 9.0, 60, 20)
}

/// Symmetric tridiagonal Dirichlet discretization of `-∂xx + u` on [-l, l].
pub fn dense_operator(u: impl Fn(f64) -> f64, l: f64, n: usize) -> nalgebra::DMatrix<f64> {
    let h = 2.0 * l / (n + 1) as f64;
    let mut m = nalgebra::DMatrix::zeros(n, n);
    for i in 0..n {
        let x = -l + (i + 1) as f64 * h;
        m[(i, i)] = 2.0 / (h * h) + u(x);
        if i + 1 < n {
            m[(i, i + 1)] = -1.0 / (h * h);
            m[(i + 1, i)] = -1.0 / (h * h);
        }
    }
    m
}

/// Number of negative eigenvalues of the dense operator.
pub fn oracle_count(u: impl Fn(f64) -> f64) -> usize {
    let m = dense_operator(u, 30.0, 600);
    m.symmetric_eigenvalues()
        .iter()
        .filter(|&&e| e < 0.0)
        .count()
}
