//! Jacobi elliptic functions and the complete elliptic integral of the first
//! kind, for real parameters `m < 1` (the parameter is `m = k²`).
//!
//! Parameters in `[0, 1)` go through range reduction by the real period and
//! the descending Landen (AGM) scheme. Negative parameters are mapped onto
//! `(0, 1)` with the imaginary-modulus transformation
//!
//! ```text
//! sn(u | m) = sd(v | μ) / √(1 − m),  cn(u | m) = cd(v | μ),  dn(u | m) = nd(v | μ)
//! v = u·√(1 − m),  μ = −m / (1 − m)
//! ```
//!
//! so that `sn(u | −1) = sd(u√2 | 1/2) / √2`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const MAX_AGM_STEPS: usize = 40;

/// Values of `sn`, `cn` and `dn` at argument `u` for parameter `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    pub u: f64,
    pub m: f64,
}

impl EllipticTriple {
    /// d sn / du = cn·dn
    pub fn sn_prime(&self) -> f64 {
        self.cn * self.dn
    }

    /// d² sn / du² = 2m·sn³ − (1 + m)·sn
    pub fn sn_second(&self) -> f64 {
        let s = self.sn;
        2.0 * self.m * s * s * s - (1.0 + self.m) * s
    }

    pub fn cn_prime(&self) -> f64 {
        -self.sn * self.dn
    }

    pub fn dn_prime(&self) -> f64 {
        -self.m * self.sn * self.cn
    }
}

fn check_parameter(m: f64) -> Result<()> {
    // NaN fails this comparison as well.
    if m < 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterDomain { m })
    }
}

/// Arithmetic-geometric mean of two positive numbers.
fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..MAX_AGM_STEPS {
        let next_a = 0.5 * (a + b);
        let next_b = (a * b).sqrt();
        if next_a == a || (next_a - next_b).abs() <= f64::EPSILON * next_a {
            return 0.5 * (next_a + next_b);
        }
        a = next_a;
        b = next_b;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind,
/// `K(m) = ∫₀^{π/2} (1 − m sin²θ)^{−1/2} dθ`, for `m < 1`.
pub fn complete_elliptic_k(m: f64) -> Result<f64> {
    check_parameter(m)?;
    if m == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - m).sqrt()))
}

/// Evaluator for a fixed parameter. Precomputes the quarter period and, for
/// negative parameters, the transformed parameter, so that repeated
/// evaluation at many arguments stays cheap.
#[derive(Debug, Clone, Copy)]
pub struct Jacobi {
    m: f64,
    quarter_period: f64,
    reduced: Reduced,
}

#[derive(Debug, Clone, Copy)]
enum Reduced {
    /// `0 ≤ m < 1`: evaluate directly.
    Direct(Descent),
    /// `m < 0`: evaluate at `v = u·scale` and parameter `μ`, then transform.
    ImaginaryModulus { scale: f64, inner: Descent },
}

/// Range reduction plus Landen descent for a parameter in `[0, 1)`.
#[derive(Debug, Clone, Copy)]
struct Descent {
    m: f64,
    period: f64,
    steps: usize,
    a: [f64; MAX_AGM_STEPS + 1],
    c: [f64; MAX_AGM_STEPS + 1],
}

impl Descent {
    fn new(m: f64) -> Self {
        debug_assert!((0.0..1.0).contains(&m));
        let mut a = [0.0; MAX_AGM_STEPS + 1];
        let mut c = [0.0; MAX_AGM_STEPS + 1];
        a[0] = 1.0;
        c[0] = m.sqrt();
        let mut b = (1.0 - m).sqrt();
        let mut steps = 0;
        while steps < MAX_AGM_STEPS && c[steps].abs() > f64::EPSILON * a[steps] {
            let n = steps;
            a[n + 1] = 0.5 * (a[n] + b);
            c[n + 1] = 0.5 * (a[n] - b);
            b = (a[n] * b).sqrt();
            steps += 1;
        }
        let quarter = if m == 0.0 { FRAC_PI_2 } else { FRAC_PI_2 / a[steps] };
        Descent {
            m,
            period: 4.0 * quarter,
            steps,
            a,
            c,
        }
    }

    /// Returns `(sn, cn, dn)`.
    fn eval(&self, u: f64) -> (f64, f64, f64) {
        let r = if u.abs() > 0.5 * self.period {
            u - self.period * (u / self.period).round()
        } else {
            u
        };
        let n = self.steps;
        let mut phi = (n as f64).exp2() * self.a[n] * r;
        for k in (1..=n).rev() {
            phi = 0.5 * (phi + (self.c[k] / self.a[k] * phi.sin()).asin());
        }
        let (sn, cn) = phi.sin_cos();
        let dn = (1.0 - self.m * sn * sn).sqrt();
        (sn, cn, dn)
    }
}

impl Jacobi {
    pub fn new(m: f64) -> Result<Self> {
        check_parameter(m)?;
        let (quarter_period, reduced) = if m >= 0.0 {
            let inner = Descent::new(m);
            (0.25 * inner.period, Reduced::Direct(inner))
        } else {
            let scale = (1.0 - m).sqrt();
            let inner = Descent::new(-m / (1.0 - m));
            (0.25 * inner.period / scale, Reduced::ImaginaryModulus { scale, inner })
        };
        Ok(Jacobi {
            m,
            quarter_period,
            reduced,
        })
    }

    pub fn parameter(&self) -> f64 {
        self.m
    }

    /// K(m).
    pub fn quarter_period(&self) -> f64 {
        self.quarter_period
    }

    /// Real period of `sn` and `cn`, `4K(m)`.
    pub fn period(&self) -> f64 {
        4.0 * self.quarter_period
    }

    pub fn eval(&self, u: f64) -> EllipticTriple {
        let (sn, cn, dn) = match &self.reduced {
            Reduced::Direct(d) => d.eval(u),
            Reduced::ImaginaryModulus { scale, inner } => {
                let (s, c, d) = inner.eval(u * scale);
                (s / (scale * d), c / d, 1.0 / d)
            }
        };
        EllipticTriple {
            sn,
            cn,
            dn,
            u,
            m: self.m,
        }
    }
}

/// `(sn, cn, dn)` at `u` for parameter `m < 1`.
pub fn jacobi_sn_cn_dn(u: f64, m: f64) -> Result<EllipticTriple> {
    Ok(Jacobi::new(m)?.eval(u))
}

/// First and second derivatives of `sn` with respect to its argument,
/// from the closed forms `cn·dn` and `2m·sn³ − (1 + m)·sn`.
pub fn sn_derivatives(u: f64, m: f64) -> Result<(f64, f64)> {
    let t = jacobi_sn_cn_dn(u, m)?;
    Ok((t.sn_prime(), t.sn_second()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const K_MINUS_ONE: f64 = 1.311_028_777_146_059_905_232_419_794_945_6;

    #[test]
    fn origin_values() {
        let t = jacobi_sn_cn_dn(0.0, -1.0).unwrap();
        assert_eq!((t.sn, t.cn, t.dn), (0.0, 1.0, 1.0));
    }

    #[test]
    fn quarter_period_maximum() {
        let k = complete_elliptic_k(-1.0).unwrap();
        assert!((k - K_MINUS_ONE).abs() < 1e-14);
        let t = jacobi_sn_cn_dn(k, -1.0).unwrap();
        assert!((t.sn - 1.0).abs() < 1e-14);
        assert!(t.cn.abs() < 1e-7, "cn(K) = {}", t.cn);
        let (d1, d2) = sn_derivatives(k, -1.0).unwrap();
        assert!(d1.abs() < 1e-7);
        assert!((d2 + 2.0).abs() < 1e-13);
    }

    #[test]
    fn derivatives_at_origin() {
        assert_eq!(sn_derivatives(0.0, -1.0).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn second_derivative_matches_central_difference() {
        // Fourth-order central second difference.
        let h = 2e-3;
        let s = |u: f64| jacobi_sn_cn_dn(u, -1.0).unwrap().sn;
        let fd = (-s(0.7 + 2.0 * h) + 16.0 * s(0.7 + h) - 30.0 * s(0.7) + 16.0 * s(0.7 - h) - s(0.7 - 2.0 * h))
            / (12.0 * h * h);
        let (_, d2) = sn_derivatives(0.7, -1.0).unwrap();
        assert!((fd - d2).abs() < 1e-8, "{fd} vs {d2}");
    }

    #[test]
    fn rejects_parameter_at_or_above_one() {
        assert!(matches!(complete_elliptic_k(1.0), Err(Error::ParameterDomain { .. })));
        assert!(jacobi_sn_cn_dn(0.3, 1.5).is_err());
        assert!(Jacobi::new(f64::NAN).is_err());
    }

    #[test]
    fn zero_parameter_is_trigonometric() {
        for i in -50..=50 {
            let u = 0.2 * i as f64;
            let t = jacobi_sn_cn_dn(u, 0.0).unwrap();
            assert!((t.sn - u.sin()).abs() < 1e-12);
            assert!((t.cn - u.cos()).abs() < 1e-12);
            assert_eq!(t.dn, 1.0);
        }
    }

    #[test]
    fn lemniscatic_period_matches_k() {
        let j = Jacobi::new(-1.0).unwrap();
        assert!((j.quarter_period() - K_MINUS_ONE).abs() < 1e-14);
    }

    #[test]
    fn large_arguments_reduce_accurately() {
        let j = Jacobi::new(-1.0).unwrap();
        let base = j.eval(0.4);
        let far = j.eval(0.4 + 19.0 * j.period());
        assert!((base.sn - far.sn).abs() < 1e-12);
        assert!((base.cn - far.cn).abs() < 1e-12);
    }
}
