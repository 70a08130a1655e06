//! Independent oracles shared by the integration and acceptance suites.
//! None of these call into the code paths they check.

#![allow(dead_code)]

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 40)
}

/// `K(m)` from its defining integral.
pub fn k_by_quadrature(m: f64) -> f64 {
    let integrand = |t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt();
    adaptive_simpson(&integrand, 0.0, std::f64::consts::FRAC_PI_2, 1e-15)
}

/// `(sn, cn, dn)` at `u` by classical RK4 on `sn' = cn dn`,
/// `cn' = −sn dn`, `dn' = −m sn cn` from `(0, 1, 1)`.
pub fn sn_cn_dn_by_ode(u: f64, m: f64, steps: usize) -> [f64; 3] {
    let rhs = |y: [f64; 3]| [y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]];
    let h = u / steps as f64;
    let mut y = [0.0, 1.0, 1.0];
    let axpy = |y: [f64; 3], k: [f64; 3], s: f64| [y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2]];
    for _ in 0..steps {
        let k1 = rhs(y);
        let k2 = rhs(axpy(y, k1, 0.5 * h));
        let k3 = rhs(axpy(y, k2, 0.5 * h));
        let k4 = rhs(axpy(y, k3, h));
        for i in 0..3 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}

/// Gaussian elimination with partial pivoting for the amplitude system
/// `[[0,1,1],[1,0,1],[1,1,0]]·(X²,Y²,Z²) = c`.
pub fn amplitude_squares_by_elimination(c: [f64; 3]) -> [f64; 3] {
    let mut m = [[0.0, 1.0, 1.0, c[0]], [1.0, 0.0, 1.0, c[1]], [1.0, 1.0, 0.0, c[2]]];
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                let pivot = m[col];
                for (dst, src) in m[row][col..].iter_mut().zip(&pivot[col..]) {
                    *dst -= f * src;
                }
            }
        }
    }
    std::array::from_fn(|i| m[i][3] / m[i][i])
}

/// Frozen high-precision values (30-digit quadrature and Taylor-series ODE
/// integration, computed once outside the build).
pub const K_M1_REFERENCE: f64 = 1.311_028_777_146_059_905_232_419_794_945;
pub const K_HALF_REFERENCE: f64 = 1.854_074_677_301_371_918_433_850_347_195;
pub const SN_1_M1_REFERENCE: f64 = 0.907_683_221_404_946_167_928_233_592_722;
pub const CN_1_M1_REFERENCE: f64 = 0.419_656_013_396_614_483_402_271_212_150;
pub const DN_1_M1_REFERENCE: f64 = 1.350_514_283_678_651_258_580_145_574_333;
