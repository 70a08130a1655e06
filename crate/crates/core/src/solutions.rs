//! The exact diagonal solutions: amplitude algebra for arbitrary gauge
//! parameter, the Landau-gauge solution, the massless quartic scalar
//! solution and the map taking the latter onto the gauge field.

use serde::{Deserialize, Serialize};

use crate::elliptic::Jacobi;
use crate::error::{Error, Result};
use crate::minkowski::FourVector;

/// Elliptic parameter used by every ansatz in this crate.
pub const ANSATZ_PARAMETER: f64 = -1.0;

/// Relative tolerance on the on-shell condition `p² = μ²g`.
pub const DISPERSION_TOLERANCE: f64 = 1e-9;

/// Amplitudes `(X, Y, Z)` of `A¹₁, A²₂, A³₃ = C_k · sn(p·x + θ, −1)`,
/// together with the momentum and the couplings they were solved for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalAnsatz {
    pub amplitudes: [f64; 3],
    /// Contravariant momentum `p^μ`.
    pub p: FourVector,
    pub theta: f64,
    pub mu: f64,
    pub g: f64,
    pub alpha: f64,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn finite_all(name: &str, vs: &[f64]) -> Result<()> {
    if vs.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite, got {vs:?}")))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha != 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "alpha must be finite and nonzero, got {alpha}"
        )))
    }
}

fn check_on_shell(p: &FourVector, mass_sq: f64) -> Result<()> {
    let p_squared = p.square();
    let scale = mass_sq.max(p.time() * p.time());
    if (p_squared - mass_sq).abs() <= DISPERSION_TOLERANCE * scale {
        Ok(())
    } else {
        Err(Error::DispersionViolation {
            p_squared,
            expected: mass_sq,
        })
    }
}

impl DiagonalAnsatz {
    /// Checks the couplings and the dispersion relation `p² = μ²g`.
    pub fn new(amplitudes: [f64; 3], p: FourVector, theta: f64, mu: f64, g: f64, alpha: f64) -> Result<Self> {
        positive("mu", mu)?;
        positive("g", g)?;
        check_alpha(alpha)?;
        finite_all("amplitudes", &amplitudes)?;
        finite_all("theta", &[theta])?;
        finite_all("momentum", &p.0)?;
        check_on_shell(&p, mu * mu * g)?;
        Ok(DiagonalAnsatz {
            amplitudes,
            p,
            theta,
            mu,
            g,
            alpha,
        })
    }

    /// On-shell momentum from its spatial part, amplitudes from the
    /// algebraic system for the given gauge.
    pub fn solve(mu: f64, g: f64, alpha: f64, spatial_p: [f64; 3], theta: f64) -> Result<Self> {
        let p = on_shell_momentum(mu, g, spatial_p)?;
        let amplitudes = solve_amplitudes(mu, g, alpha, &p)?;
        DiagonalAnsatz::new(amplitudes, p, theta, mu, g, alpha)
    }

    /// Same momentum and couplings with the amplitudes replaced.
    pub fn with_amplitudes(&self, amplitudes: [f64; 3]) -> Self {
        DiagonalAnsatz { amplitudes, ..*self }
    }

    /// Argument of `sn` at `x`: `p·x + θ`.
    pub fn phase(&self, x: &FourVector) -> f64 {
        self.p.dot(x) + self.theta
    }

    /// Field values `A^a_μ` at `x` (0-based colour).
    pub fn field(&self, x: &FourVector) -> [[f64; 4]; 3] {
        self.field_with(&Jacobi::new(ANSATZ_PARAMETER).expect("valid parameter"), x)
    }

    pub(crate) fn field_with(&self, jacobi: &Jacobi, x: &FourVector) -> [[f64; 4]; 3] {
        let sn = jacobi.eval(self.phase(x)).sn;
        let mut v = [[0.0; 4]; 3];
        for (k, amp) in self.amplitudes.iter().enumerate() {
            v[k][k + 1] = amp * sn;
        }
        v
    }

    pub fn spatial_p(&self) -> [f64; 3] {
        self.p.spatial()
    }
}

/// `√(|p⃗|² + μ²g)`, the positive energy that puts `p` on shell.
pub fn dispersion_p0(mu: f64, g: f64, spatial_p: [f64; 3]) -> f64 {
    let norm_sq: f64 = spatial_p.iter().map(|c| c * c).sum();
    (norm_sq + mu * mu * g).sqrt()
}

pub fn on_shell_momentum(mu: f64, g: f64, spatial_p: [f64; 3]) -> Result<FourVector> {
    positive("mu", mu)?;
    positive("g", g)?;
    finite_all("spatial momentum", &spatial_p)?;
    Ok(FourVector::from_time_and_space(
        dispersion_p0(mu, g, spatial_p),
        spatial_p,
    ))
}

/// Right-hand sides `c_k = (2/g²)(1 − 1/α)p_k² + 2μ²/g` of
/// `Y² + Z² = c₁`, `X² + Z² = c₂`, `X² + Y² = c₃`.
pub fn amplitude_system_rhs(mu: f64, g: f64, alpha: f64, spatial_p: [f64; 3]) -> [f64; 3] {
    let gauge = 1.0 - 1.0 / alpha;
    spatial_p.map(|pk| 2.0 / (g * g) * gauge * pk * pk + 2.0 * mu * mu / g)
}

/// Closed-form squares `(X², Y², Z²)`; may be negative.
pub fn amplitude_squares(mu: f64, g: f64, alpha: f64, spatial_p: [f64; 3]) -> [f64; 3] {
    let [c1, c2, c3] = amplitude_system_rhs(mu, g, alpha, spatial_p);
    [0.5 * (c2 + c3 - c1), 0.5 * (c1 + c3 - c2), 0.5 * (c1 + c2 - c3)]
}

/// Nonnegative amplitudes `(X, Y, Z)` for an on-shell momentum.
pub fn solve_amplitudes(mu: f64, g: f64, alpha: f64, p: &FourVector) -> Result<[f64; 3]> {
    positive("mu", mu)?;
    positive("g", g)?;
    check_alpha(alpha)?;
    check_on_shell(p, mu * mu * g)?;
    let squares = amplitude_squares(mu, g, alpha, p.spatial());
    if squares.iter().any(|s| *s < 0.0 || !s.is_finite()) {
        return Err(Error::NoRealSolution { squares });
    }
    Ok(squares.map(f64::sqrt))
}

/// Equal amplitude `μ/√g` that solves the diagonal system in the Landau gauge.
pub fn landau_amplitude(mu: f64, g: f64) -> f64 {
    mu / g.sqrt()
}

/// The amplitude `μ/(2g²)^{1/4}`. It differs from [`landau_amplitude`] by
/// `2^{-1/4}` at `g = 1` and does not annihilate the residual under
/// `p² = μ²g`; kept for discrimination tests.
pub fn quartic_root_amplitude(mu: f64, g: f64) -> f64 {
    mu / (2.0 * g * g).powf(0.25)
}

/// Landau gauge (`α = 1`) solution with `X = Y = Z = μ/√g`.
pub fn landau_solution(mu: f64, g: f64, spatial_p: [f64; 3], theta: f64) -> Result<DiagonalAnsatz> {
    let p = on_shell_momentum(mu, g, spatial_p)?;
    let amp = landau_amplitude(mu, g);
    DiagonalAnsatz::new([amp; 3], p, theta, mu, g, 1.0)
}

/// `φ = μ(2/λ)^{1/4} sn(p·x + θ, −1)` solving `∂²φ + λφ³ = 0` when
/// `p² = μ²√(λ/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarSolution {
    pub mu: f64,
    pub lambda: f64,
    pub p: FourVector,
    pub theta: f64,
}

impl ScalarSolution {
    pub fn new(mu: f64, lambda: f64, p: FourVector, theta: f64) -> Result<Self> {
        positive("mu", mu)?;
        positive("lambda", lambda)?;
        finite_all("theta", &[theta])?;
        check_on_shell(&p, Self::mass_squared(mu, lambda))?;
        Ok(ScalarSolution { mu, lambda, p, theta })
    }

    pub fn on_shell(mu: f64, lambda: f64, spatial_p: [f64; 3], theta: f64) -> Result<Self> {
        positive("mu", mu)?;
        positive("lambda", lambda)?;
        finite_all("spatial momentum", &spatial_p)?;
        let norm_sq: f64 = spatial_p.iter().map(|c| c * c).sum();
        let p0 = (norm_sq + Self::mass_squared(mu, lambda)).sqrt();
        ScalarSolution::new(mu, lambda, FourVector::from_time_and_space(p0, spatial_p), theta)
    }

    fn mass_squared(mu: f64, lambda: f64) -> f64 {
        mu * mu * (lambda / 2.0).sqrt()
    }

    pub fn amplitude(&self) -> f64 {
        self.mu * (2.0 / self.lambda).powf(0.25)
    }

    pub fn phase(&self, x: &FourVector) -> f64 {
        self.p.dot(x) + self.theta
    }

    pub fn value(&self, x: &FourVector) -> f64 {
        let sn = Jacobi::new(ANSATZ_PARAMETER)
            .expect("valid parameter")
            .eval(self.phase(x))
            .sn;
        self.amplitude() * sn
    }

    /// `∂²φ + λφ³` at `x` for the field `amplitude · sn(p·x + θ, −1)`.
    pub fn residual_with_amplitude(&self, amplitude: f64, x: &FourVector) -> f64 {
        let t = Jacobi::new(ANSATZ_PARAMETER)
            .expect("valid parameter")
            .eval(self.phase(x));
        let phi = amplitude * t.sn;
        amplitude * self.p.square() * t.sn_second() + self.lambda * phi * phi * phi
    }
}

/// `∂²φ + λφ³` for the scalar solution; zero up to rounding.
pub fn scalar_residual(s: &ScalarSolution, x: &FourVector) -> f64 {
    s.residual_with_amplitude(s.amplitude(), x)
}

/// Result of mapping the scalar solution onto the diagonal gauge field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarMapping {
    pub scalar: ScalarSolution,
    pub ansatz: DiagonalAnsatz,
    /// `A^k_k(x) = factors[k] · φ(x)`
    pub factors: [f64; 3],
}

/// Colour count entering `λ = N g²`.
pub const SU2_COLOURS: f64 = 2.0;

/// Builds the scalar solution with `λ = 2g²` (same dispersion as the gauge
/// field), solves the amplitudes for `α`, and returns the per-component
/// ratios to the scalar amplitude.
pub fn map_scalar_to_su2(mu: f64, g: f64, spatial_p: [f64; 3], alpha: f64, theta: f64) -> Result<ScalarMapping> {
    positive("g", g)?;
    let lambda = SU2_COLOURS * g * g;
    let ansatz = DiagonalAnsatz::solve(mu, g, alpha, spatial_p, theta)?;
    let scalar = ScalarSolution::new(mu, lambda, ansatz.p, theta)?;
    let base = scalar.amplitude();
    let factors = ansatz.amplitudes.map(|a| a / base);
    Ok(ScalarMapping {
        scalar,
        ansatz,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::complete_elliptic_k;
    use proptest::prelude::*;

    /// Independent route to the squares: Gaussian elimination on the 3×3
    /// linear system in (X², Y², Z²).
    fn linear_solve_oracle(c: [f64; 3]) -> [f64; 3] {
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

    #[test]
    fn symmetric_system() {
        let p = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(solve_amplitudes(1.0, 1.0, 1.0, &p).unwrap(), [1.0, 1.0, 1.0]);
        let oracle = linear_solve_oracle(amplitude_system_rhs(1.0, 1.0, 1.0, [0.0; 3]));
        for v in oracle {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rest_frame_any_gauge() {
        for alpha in [0.1, 0.5, 2.0, -3.0] {
            let (mu, g) = (1.5f64, 2.0f64);
            let p = FourVector::new(mu * g.sqrt(), 0.0, 0.0, 0.0);
            let amps = solve_amplitudes(mu, g, alpha, &p).unwrap();
            for a in amps {
                assert!((a - mu / g.sqrt()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn small_alpha_has_no_real_solution() {
        let p = on_shell_momentum(1.0, 1.0, [1.0, 0.0, 0.0]).unwrap();
        let err = solve_amplitudes(1.0, 1.0, 0.1, &p).unwrap_err();
        match err {
            Error::NoRealSolution { squares } => {
                assert!((squares[0] - 10.0).abs() < 1e-12);
                assert!((squares[1] + 8.0).abs() < 1e-12);
                assert!((squares[2] + 8.0).abs() < 1e-12);
                let message = err.to_string();
                assert!(message.contains("Y^2") && message.contains("Z^2") && !message.contains("X^2"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let oracle = linear_solve_oracle(amplitude_system_rhs(1.0, 1.0, 0.1, [1.0, 0.0, 0.0]));
        assert!((oracle[1] + 8.0).abs() < 1e-12);
    }

    #[test]
    fn off_shell_momentum_is_rejected() {
        let p = FourVector::new(1.2, 0.0, 0.0, 0.0);
        assert!(matches!(
            solve_amplitudes(1.0, 1.0, 1.0, &p),
            Err(Error::DispersionViolation { .. })
        ));
        assert!(DiagonalAnsatz::new([1.0; 3], p, 0.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn dispersion_energy() {
        assert_eq!(dispersion_p0(1.0, 1.0, [0.0; 3]), 1.0);
        assert_eq!(dispersion_p0(1.0, 4.0, [0.0; 3]), 2.0);
        assert!((dispersion_p0(1.0, 1.0, [3.0, 0.0, 0.0]) - 10f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn landau_amplitudes() {
        let s = landau_solution(1.0, 1.0, [0.2, 0.1, 0.0], 0.0).unwrap();
        assert_eq!(s.amplitudes, [1.0; 3]);
        assert_eq!(s.alpha, 1.0);
        let s = landau_solution(2.0, 4.0, [0.0; 3], 0.0).unwrap();
        assert_eq!(s.amplitudes, [1.0; 3]);
    }

    #[test]
    fn quartic_root_amplitude_residual_peak() {
        // Diagonal residual at sn = 1 with p² = μ²g = 1: −2Xp² + 2g²X³.
        let x = quartic_root_amplitude(1.0, 1.0);
        let peak = (-2.0 * x + 2.0 * x.powi(3)).abs();
        let hand = 2.0 * 2f64.powf(-0.25) * (1.0 - 2f64.powf(-0.5));
        assert!((peak - hand).abs() < 1e-15);
        assert!((peak - 0.4926).abs() < 1e-3);
    }

    #[test]
    fn scalar_residual_examples() {
        let s = ScalarSolution::on_shell(1.0, 2.0, [0.4, -0.3, 0.1], 0.2).unwrap();
        assert!((s.amplitude() - 1.0).abs() < 1e-15);
        for i in 0..40 {
            let x = FourVector::new(0.3 * i as f64, 0.1 * i as f64, -0.2, 0.05 * i as f64);
            assert!(scalar_residual(&s, &x).abs() < 1e-12);
        }
        let origin = ScalarSolution::on_shell(1.3, 0.7, [0.0; 3], 0.0).unwrap();
        assert_eq!(scalar_residual(&origin, &FourVector::ZERO), 0.0);
    }

    #[test]
    fn perturbed_scalar_amplitude_is_detected() {
        let (mu, lambda) = (1.0, 3.0);
        let s = ScalarSolution::on_shell(mu, lambda, [0.0; 3], 0.0).unwrap();
        let k = complete_elliptic_k(-1.0).unwrap();
        let x = FourVector::new(k / s.p.time(), 0.0, 0.0, 0.0);
        let r = s.residual_with_amplitude(1.1 * s.amplitude(), &x);
        let expected = lambda * mu.powi(3) * (2.0 / lambda).powf(0.75) * (1.1f64.powi(3) - 1.1);
        assert!((r - expected).abs() < 1e-9 * expected.abs(), "{r} vs {expected}");
    }

    #[test]
    fn scalar_map_factors() {
        let m = map_scalar_to_su2(1.3, 0.8, [0.4, 0.2, -0.1], 1.0, 0.0).unwrap();
        for f in m.factors {
            assert!((f - 1.0).abs() < 1e-14);
        }

        let m = map_scalar_to_su2(1.0, 2.0, [0.0; 3], 3.0, 0.0).unwrap();
        assert_eq!(m.factors[0], m.factors[1]);
        assert_eq!(m.factors[1], m.factors[2]);

        let direct = DiagonalAnsatz::solve(1.0, 1.5, 2.0, [0.3, 0.1, 0.0], 0.4).unwrap();
        let mapped = map_scalar_to_su2(1.0, 1.5, [0.3, 0.1, 0.0], 2.0, 0.4).unwrap();
        assert_eq!(mapped.ansatz, direct);
        assert!(map_scalar_to_su2(1.0, 1.0, [1.0, 0.0, 0.0], 0.1, 0.0).is_err());
    }

    #[test]
    fn large_coupling_splitting_vanishes() {
        let p = [0.5, 0.2, 0.1];
        let m = map_scalar_to_su2(1.0, 1e3, p, 2.0, 0.0).unwrap();
        let spread =
            m.factors.iter().cloned().fold(f64::MIN, f64::max) - m.factors.iter().cloned().fold(f64::MAX, f64::min);
        // f_k = √(1 + (1 − 1/α)(|p⃗|² − 2p_k²)/(gμ²)), so to leading order the
        // spread is (1 − 1/α)(max p_k² − min p_k²)/(gμ²).
        let leading = 0.5 * (0.25 - 0.01) / 1e3;
        assert!((spread - leading).abs() < 1e-2 * leading, "{spread} vs {leading}");
        let small = map_scalar_to_su2(1.0, 1.0, p, 2.0, 0.0).unwrap();
        let spread_small = small.factors.iter().cloned().fold(f64::MIN, f64::max)
            - small.factors.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < spread_small);
    }

    proptest! {
        #[test]
        fn splitting_identity(
            mu in 0.2f64..3.0, g in 0.2f64..5.0, alpha in 0.5f64..10.0,
            px in -1.0f64..1.0, py in -1.0f64..1.0, pz in -1.0f64..1.0,
        ) {
            let spatial = [px, py, pz];
            let p = on_shell_momentum(mu, g, spatial).unwrap();
            if let Ok([x, y, z]) = solve_amplitudes(mu, g, alpha, &p) {
                let f = 2.0 / (g * g) * (1.0 - 1.0 / alpha);
                let sq = [x * x, y * y, z * z];
                let scale = 1.0 + sq.iter().cloned().fold(0.0, f64::max);
                prop_assert!((sq[0] - sq[1] - f * (py * py - px * px)).abs() <= 1e-12 * scale);
                prop_assert!((sq[1] - sq[2] - f * (pz * pz - py * py)).abs() <= 1e-12 * scale);
                prop_assert!((sq[2] - sq[0] - f * (px * px - pz * pz)).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn landau_gauge_amplitudes_are_equal(
            mu in 0.2f64..3.0, g in 0.2f64..5.0,
            px in -2.0f64..2.0, py in -2.0f64..2.0, pz in -2.0f64..2.0,
        ) {
            let p = on_shell_momentum(mu, g, [px, py, pz]).unwrap();
            let [x, y, z] = solve_amplitudes(mu, g, 1.0, &p).unwrap();
            prop_assert_eq!(x, y);
            prop_assert_eq!(y, z);
            prop_assert!((x - landau_amplitude(mu, g)).abs() <= 1e-14 * x);
        }

        #[test]
        fn other_gauges_split_unequal_momenta(
            alpha in prop_oneof![0.5f64..0.9, 1.1f64..10.0],
            px in 0.1f64..1.0,
        ) {
            let p = on_shell_momentum(1.0, 1.0, [px, 0.0, 0.0]).unwrap();
            if let Ok([x, y, _]) = solve_amplitudes(1.0, 1.0, alpha, &p) {
                prop_assert!(x != y);
            }
        }

        #[test]
        fn negative_square_iff_no_solution(
            mu in 0.2f64..2.0, g in 0.2f64..3.0, alpha in 0.05f64..3.0,
            px in -2.0f64..2.0, py in -2.0f64..2.0,
        ) {
            let spatial = [px, py, 0.0];
            let p = on_shell_momentum(mu, g, spatial).unwrap();
            let any_negative = amplitude_squares(mu, g, alpha, spatial).iter().any(|s| *s < 0.0);
            let result = solve_amplitudes(mu, g, alpha, &p);
            prop_assert_eq!(any_negative, matches!(result, Err(Error::NoRealSolution { .. })));
        }
    }
}
