//! Local jets of an SU(2) gauge field `A^a_μ` and the gauge-fixed
//! Yang-Mills equations of motion evaluated on them.
//!
//! Colour indices are `1..=3` and Lorentz indices `0..=3` at the public
//! surface. All derivative indices stored in a jet are lower (plain
//! coordinate derivatives); the metric is applied inside the evaluators.

use crate::elliptic::Jacobi;
use crate::error::{Error, Result};
use crate::minkowski::{FourVector, METRIC};
use crate::solutions::{DiagonalAnsatz, ANSATZ_PARAMETER};

/// Field values `A^a_μ` at one point, `[colour][lorentz]` with 0-based colour.
pub type FieldValues = [[f64; 4]; 3];

/// Value, first and second partial derivatives of all twelve components at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPointJet {
    /// `value[a][μ] = A^a_μ`
    pub value: FieldValues,
    /// `d1[ν][a][μ] = ∂_ν A^a_μ`
    pub d1: [FieldValues; 4],
    /// `d2[ρ][ν][a][μ] = ∂_ρ ∂_ν A^a_μ`
    pub d2: [[FieldValues; 4]; 4],
}

impl FieldPointJet {
    pub fn zero() -> Self {
        FieldPointJet {
            value: [[0.0; 4]; 3],
            d1: [[[0.0; 4]; 3]; 4],
            d2: [[[[0.0; 4]; 3]; 4]; 4],
        }
    }

    /// Largest absolute entry-wise difference over values and both
    /// derivative orders.
    pub fn max_abs_difference(&self, other: &FieldPointJet) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for mu in 0..4 {
                worst = worst.max((self.value[a][mu] - other.value[a][mu]).abs());
                for nu in 0..4 {
                    worst = worst.max((self.d1[nu][a][mu] - other.d1[nu][a][mu]).abs());
                    for rho in 0..4 {
                        worst = worst.max((self.d2[rho][nu][a][mu] - other.d2[rho][nu][a][mu]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest asymmetry `|∂_ρ∂_ν − ∂_ν∂_ρ|` over all entries.
    pub fn max_hessian_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for rho in 0..4 {
            for nu in 0..4 {
                for a in 0..3 {
                    for mu in 0..4 {
                        worst = worst.max((self.d2[rho][nu][a][mu] - self.d2[nu][rho][a][mu]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// Coupling constant and gauge-fixing parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeCoupling {
    g: f64,
    alpha: f64,
}

impl GaugeCoupling {
    pub fn new(g: f64, alpha: f64) -> Result<Self> {
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::InvalidInput(format!("coupling g must be positive, got {g}")));
        }
        if !alpha.is_finite() || alpha == 0.0 {
            return Err(Error::InvalidInput(format!(
                "gauge parameter alpha must be finite and nonzero, got {alpha}"
            )));
        }
        Ok(GaugeCoupling { g, alpha })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `1 − 1/α`, the coefficient of the gauge-fixing term.
    pub fn gauge_factor(&self) -> f64 {
        1.0 - 1.0 / self.alpha
    }
}

fn eps(a: usize, b: usize, c: usize) -> f64 {
    let (a, b, c) = (a as i32, b as i32, c as i32);
    ((a - b) * (b - c) * (c - a) / 2) as f64
}

/// Totally antisymmetric symbol on `{1, 2, 3}` with `ε₁₂₃ = +1`.
pub fn levi_civita(a: usize, b: usize, c: usize) -> Result<i8> {
    for i in [a, b, c] {
        check_colour(i)?;
    }
    Ok(eps(a, b, c) as i8)
}

fn check_colour(a: usize) -> Result<()> {
    if (1..=3).contains(&a) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            kind: "colour",
            index: a,
        })
    }
}

fn check_lorentz(nu: usize) -> Result<()> {
    if nu < 4 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            kind: "lorentz",
            index: nu,
        })
    }
}

/// `Σ_μ η^{μμ} u_μ v_μ`
#[inline]
fn contract(u: &[f64; 4], v: &[f64; 4]) -> f64 {
    METRIC[0] * u[0] * v[0] + METRIC[1] * u[1] * v[1] + METRIC[2] * u[2] * v[2] + METRIC[3] * u[3] * v[3]
}

/// `∂^μ∂_μ A^a_ν`
#[inline]
fn wave_operator(jet: &FieldPointJet, a: usize, nu: usize) -> f64 {
    (0..4).map(|mu| METRIC[mu] * jet.d2[mu][mu][a][nu]).sum()
}

/// `∂_ν(∂^μ A^a_μ)`
#[inline]
fn gradient_of_divergence(jet: &FieldPointJet, a: usize, nu: usize) -> f64 {
    (0..4).map(|mu| METRIC[mu] * jet.d2[nu][mu][a][mu]).sum()
}

/// `A^{bμ}(∂_μ A^c_ν − ∂_ν A^c_μ)`
#[inline]
fn curl_term(jet: &FieldPointJet, b: usize, c: usize, nu: usize) -> f64 {
    (0..4)
        .map(|mu| METRIC[mu] * jet.value[b][mu] * (jet.d1[mu][c][nu] - jet.d1[nu][c][mu]))
        .sum()
}

/// `∂^μ(A^b_μ A^c_ν)` by the product rule.
#[inline]
fn divergence_of_product(jet: &FieldPointJet, b: usize, c: usize, nu: usize) -> f64 {
    (0..4)
        .map(|mu| METRIC[mu] * (jet.d1[mu][b][mu] * jet.value[c][nu] + jet.value[b][mu] * jet.d1[mu][c][nu]))
        .sum()
}

fn compact_zero_based(jet: &FieldPointJet, coupling: &GaugeCoupling, a: usize, nu: usize) -> f64 {
    let g = coupling.g;
    let mut linear = wave_operator(jet, a, nu) - coupling.gauge_factor() * gradient_of_divergence(jet, a, nu);

    let mut quadratic = 0.0;
    for b in 0..3 {
        for c in 0..3 {
            let e = eps(a, b, c);
            if e == 0.0 {
                continue;
            }
            quadratic += e * (curl_term(jet, b, c, nu) + divergence_of_product(jet, b, c, nu));
        }
    }

    let mut cubic = 0.0;
    for b in 0..3 {
        for c in 0..3 {
            let e_abc = eps(a, b, c);
            if e_abc == 0.0 {
                continue;
            }
            for d in 0..3 {
                for e in 0..3 {
                    let e_cde = eps(c, d, e);
                    if e_cde == 0.0 {
                        continue;
                    }
                    cubic += e_abc * e_cde * contract(&jet.value[b], &jet.value[d]) * jet.value[e][nu];
                }
            }
        }
    }

    linear += g * quadratic;
    linear + g * g * cubic
}

/// Left-hand side of the SU(2) equations of motion with structure constants
/// written through `ε_abc`:
///
/// ```text
/// ∂^μ∂_μA^a_ν − (1 − 1/α)∂_ν(∂^μA^a_μ) + g ε_abc A^{bμ}(∂_μA^c_ν − ∂_νA^c_μ)
///   + g ε_abc ∂^μ(A^b_μ A^c_ν) + g² ε_abc ε_cde A^{bμ}A^d_μ A^e_ν
/// ```
pub fn ym_lhs_compact(jet: &FieldPointJet, coupling: &GaugeCoupling, a: usize, nu: usize) -> Result<f64> {
    check_colour(a)?;
    check_lorentz(nu)?;
    Ok(compact_zero_based(jet, coupling, a - 1, nu))
}

/// All twelve compact left-hand sides, `[colour][lorentz]` with 0-based colour.
pub fn ym_lhs_compact_all(jet: &FieldPointJet, coupling: &GaugeCoupling) -> FieldValues {
    std::array::from_fn(|a| std::array::from_fn(|nu| compact_zero_based(jet, coupling, a, nu)))
}

/// One colour line of the expanded equations, for the cyclic triple `(a, b, c)`.
fn expanded_line(jet: &FieldPointJet, coupling: &GaugeCoupling, [a, b, c]: [usize; 3], nu: usize) -> f64 {
    let g = coupling.g;
    let v = &jet.value;
    let kinetic = wave_operator(jet, a, nu) - coupling.gauge_factor() * gradient_of_divergence(jet, a, nu);
    let quadratic = curl_term(jet, b, c, nu) - curl_term(jet, c, b, nu) + divergence_of_product(jet, b, c, nu)
        - divergence_of_product(jet, c, b, nu);
    let cubic = contract(&v[b], &v[a]) * v[b][nu] + contract(&v[c], &v[a]) * v[c][nu]
        - contract(&v[b], &v[b]) * v[a][nu]
        - contract(&v[c], &v[c]) * v[a][nu];
    kinetic + g * quadratic + g * g * cubic
}

/// The same equations with the colour sums written out term by term, one
/// line per colour, after the `ε ε` contraction has been applied.
pub fn ym_lhs_expanded(jet: &FieldPointJet, coupling: &GaugeCoupling, a: usize, nu: usize) -> Result<f64> {
    check_colour(a)?;
    check_lorentz(nu)?;
    let triple = match a {
        1 => [0, 1, 2],
        2 => [1, 2, 0],
        _ => [2, 0, 1],
    };
    Ok(expanded_line(jet, coupling, triple, nu))
}

/// Exact chain-rule jet of the diagonal ansatz `A^k_k = C_k sn(p·x + θ, −1)`.
pub fn jet_from_ansatz(ansatz: &DiagonalAnsatz, x: &FourVector) -> FieldPointJet {
    let jacobi = Jacobi::new(ANSATZ_PARAMETER).expect("ansatz parameter is in range");
    jet_from_ansatz_with(&jacobi, ansatz, x)
}

pub(crate) fn jet_from_ansatz_with(jacobi: &Jacobi, ansatz: &DiagonalAnsatz, x: &FourVector) -> FieldPointJet {
    let triple = jacobi.eval(ansatz.phase(x));
    let (s, s1, s2) = (triple.sn, triple.sn_prime(), triple.sn_second());
    // ∂_ν(p·x) = p_ν
    let p_lower = ansatz.p.lower();
    let mut jet = FieldPointJet::zero();
    for (k, &amp) in ansatz.amplitudes.iter().enumerate() {
        let slot = k + 1;
        jet.value[k][slot] = amp * s;
        for nu in 0..4 {
            jet.d1[nu][k][slot] = amp * p_lower[nu] * s1;
            for rho in 0..4 {
                jet.d2[rho][nu][k][slot] = amp * p_lower[rho] * p_lower[nu] * s2;
            }
        }
    }
    jet
}

/// Finite-difference stencil accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum StencilOrder {
    Second,
    Fourth,
}

impl StencilOrder {
    pub fn order(self) -> u32 {
        match self {
            StencilOrder::Second => 2,
            StencilOrder::Fourth => 4,
        }
    }

    /// Positive offsets `s` (in units of `h`) and weights `w` of the first
    /// difference `Σ w·(f(s) − f(−s)) / h`.
    fn first_difference(self) -> &'static [(f64, f64)] {
        match self {
            StencilOrder::Second => &[(1.0, 0.5)],
            StencilOrder::Fourth => &[(1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)],
        }
    }

    /// Positive offsets and weights of the second difference
    /// `Σ w·(f(s) + f(−s) − 2f(0)) / h²`.
    fn second_difference(self) -> &'static [(f64, f64)] {
        match self {
            StencilOrder::Second => &[(1.0, 1.0)],
            StencilOrder::Fourth => &[(1.0, 16.0 / 12.0), (2.0, -1.0 / 12.0)],
        }
    }
}

impl TryFrom<u32> for StencilOrder {
    type Error = Error;
    fn try_from(order: u32) -> Result<Self> {
        match order {
            2 => Ok(StencilOrder::Second),
            4 => Ok(StencilOrder::Fourth),
            other => Err(Error::InvalidInput(format!(
                "stencil order must be 2 or 4, got {other}"
            ))),
        }
    }
}

/// `target += weight · Σ signs[i]·samples[i]`, with the signed sum formed
/// first so that it cancels exactly for constant fields.
fn accumulate<const K: usize>(target: &mut FieldValues, samples: [&FieldValues; K], signs: [f64; K], weight: f64) {
    for a in 0..3 {
        for mu in 0..4 {
            let mut combo = 0.0;
            for k in 0..K {
                combo += signs[k] * samples[k][a][mu];
            }
            target[a][mu] += weight * combo;
        }
    }
}

/// Central finite-difference jet of an arbitrary field. Pure second
/// derivatives use the standard second-difference stencil; mixed ones are
/// nested first differences.
pub fn jet_from_callable<F>(field: F, x: &FourVector, h: f64, order: StencilOrder) -> Result<FieldPointJet>
where
    F: Fn(&FourVector) -> FieldValues,
{
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidInput(format!("step h must be positive, got {h}")));
    }
    let sample = |offset: [f64; 4]| -> Result<FieldValues> {
        let point = FourVector(std::array::from_fn(|i| x[i] + offset[i] * h));
        let values = field(&point);
        if values.iter().flatten().all(|v| v.is_finite()) {
            Ok(values)
        } else {
            Err(Error::NonFiniteSample { point: point.0 })
        }
    };
    let along = |axis: usize, s: f64| {
        let mut o = [0.0; 4];
        o[axis] = s;
        o
    };

    let mut jet = FieldPointJet::zero();
    let centre = sample([0.0; 4])?;
    jet.value = centre;

    let inv_h = 1.0 / h;
    let inv_h2 = inv_h * inv_h;
    for nu in 0..4 {
        let mut first = [[0.0; 4]; 3];
        for &(s, w) in order.first_difference() {
            let (fwd, bwd) = (sample(along(nu, s))?, sample(along(nu, -s))?);
            accumulate(&mut first, [&fwd, &bwd], [1.0, -1.0], w * inv_h);
        }
        jet.d1[nu] = first;

        let mut second = [[0.0; 4]; 3];
        for &(s, w) in order.second_difference() {
            let (fwd, bwd) = (sample(along(nu, s))?, sample(along(nu, -s))?);
            accumulate(
                &mut second,
                [&fwd, &bwd, &centre, &centre],
                [1.0, 1.0, -1.0, -1.0],
                w * inv_h2,
            );
        }
        jet.d2[nu][nu] = second;
    }

    for rho in 0..4 {
        for nu in (rho + 1)..4 {
            let mut mixed = [[0.0; 4]; 3];
            for &(sr, wr) in order.first_difference() {
                for &(sn, wn) in order.first_difference() {
                    let corner = |a: f64, b: f64| {
                        let mut offset = [0.0; 4];
                        offset[rho] = a;
                        offset[nu] = b;
                        sample(offset)
                    };
                    let (pp, pm, mp, mm) = (corner(sr, sn)?, corner(sr, -sn)?, corner(-sr, sn)?, corner(-sr, -sn)?);
                    accumulate(
                        &mut mixed,
                        [&pp, &mm, &pm, &mp],
                        [1.0, 1.0, -1.0, -1.0],
                        wr * wn * inv_h2,
                    );
                }
            }
            jet.d2[rho][nu] = mixed;
            jet.d2[nu][rho] = mixed;
        }
    }
    Ok(jet)
}
