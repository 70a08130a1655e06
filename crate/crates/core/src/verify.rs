//! Residual scans of candidate solutions over spacetime grids, finite
//! difference convergence studies, the equal-component collapse check and
//! the dispersion-relation scan.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{measure_period, Trajectory};
use crate::elliptic::Jacobi;
use crate::error::{Error, Result};
use crate::minkowski::{FourVector, METRIC};
use crate::solutions::{landau_amplitude, landau_solution, on_shell_momentum, DiagonalAnsatz, ANSATZ_PARAMETER};
use crate::su2field::{jet_from_ansatz_with, jet_from_callable, ym_lhs_compact_all, FieldPointJet, StencilOrder};

/// Box of sample points: `counts[k]` points evenly spaced over
/// `[origin[k], origin[k] + extents[k]]` along each coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub origin: FourVector,
    pub extents: [f64; 4],
    pub counts: [usize; 4],
}

impl GridSpec {
    pub fn new(origin: FourVector, extents: [f64; 4], counts: [usize; 4]) -> Result<Self> {
        if counts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "grid counts must be at least 1, got {counts:?}"
            )));
        }
        if !origin.is_finite() || extents.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidInput("grid origin and extents must be finite".into()));
        }
        Ok(GridSpec {
            origin,
            extents,
            counts,
        })
    }

    /// `n` points per axis over a box of side `extent` centred on the origin.
    pub fn centred_cube(n: usize, extent: f64) -> Result<Self> {
        let half = -0.5 * extent;
        GridSpec::new(FourVector([half; 4]), [extent; 4], [n; 4])
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point with flat index `idx`; the time index varies slowest, so flat
    /// order is lexicographic order in `(i₀, i₁, i₂, i₃)`.
    pub fn point(&self, mut idx: usize) -> FourVector {
        let mut out = [0.0; 4];
        for axis in (0..4).rev() {
            let n = self.counts[axis];
            let i = idx % n;
            idx /= n;
            out[axis] = if n > 1 {
                self.origin[axis] + self.extents[axis] * i as f64 / (n - 1) as f64
            } else {
                self.origin[axis]
            };
        }
        FourVector(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Fd2,
    Fd4,
}

impl Method {
    fn stencil(self) -> Option<StencilOrder> {
        match self {
            Method::Analytic => None,
            Method::Fd2 => Some(StencilOrder::Second),
            Method::Fd4 => Some(StencilOrder::Fourth),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Method::Analytic),
            "fd2" => Ok(Method::Fd2),
            "fd4" => Ok(Method::Fd4),
            other => Err(Error::InvalidInput(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Step for the finite-difference methods.
    pub fd_step: f64,
    /// Worker threads; 0 uses the global rayon pool.
    pub workers: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            fd_step: 1e-3,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualEntry {
    /// Colour, `1..=3`.
    pub a: usize,
    /// Lorentz index, `0..=3`.
    pub nu: usize,
    pub max_abs: f64,
    pub rms: f64,
}

impl ResidualEntry {
    pub fn is_diagonal(&self) -> bool {
        self.a == self.nu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(flatten)]
    pub ansatz: DiagonalAnsatz,
    pub fd_step: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub params: ReportParams,
    pub method: Method,
    pub grid: GridSpec,
    /// Twelve entries ordered by `(a, nu)`.
    pub entries: Vec<ResidualEntry>,
    /// Lexicographically first grid point attaining the largest residual.
    pub worst_point: FourVector,
}

impl ResidualReport {
    pub fn entry(&self, a: usize, nu: usize) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| e.a == a && e.nu == nu)
    }

    pub fn diagonal(&self) -> impl Iterator<Item = &ResidualEntry> {
        self.entries.iter().filter(|e| e.is_diagonal())
    }

    /// Entries whose vanishing is asserted: the diagonal ones always, all
    /// twelve when the spatial momentum is zero.
    pub fn asserted(&self) -> impl Iterator<Item = &ResidualEntry> {
        let homogeneous = self.params.ansatz.p.spatial_norm_sq() == 0.0;
        self.entries.iter().filter(move |e| homogeneous || e.is_diagonal())
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.asserted().all(|e| e.max_abs <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.max_abs).fold(0.0, f64::max)
    }
}

/// Sum by recursive halving; the tree depends only on the slice length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let (left, right) = values.split_at(values.len() / 2);
    pairwise_sum(left) + pairwise_sum(right)
}

fn point_residuals(
    ansatz: &DiagonalAnsatz,
    jacobi: &Jacobi,
    stencil: Option<StencilOrder>,
    fd_step: f64,
    x: &FourVector,
) -> Result<[f64; 12]> {
    let jet = match stencil {
        None => jet_from_ansatz_with(jacobi, ansatz, x),
        Some(order) => jet_from_callable(|y| ansatz.field_with(jacobi, y), x, fd_step, order)?,
    };
    let coupling = crate::su2field::GaugeCoupling::new(ansatz.g, ansatz.alpha)?;
    let lhs = ym_lhs_compact_all(&jet, &coupling);
    let mut out = [0.0; 12];
    for a in 0..3 {
        for nu in 0..4 {
            let r = lhs[a][nu];
            if !r.is_finite() {
                return Err(Error::NonFiniteSample { point: x.0 });
            }
            out[4 * a + nu] = r.abs();
        }
    }
    Ok(out)
}

/// Evaluates all twelve equations of motion on every grid point and
/// aggregates max-abs and rms per equation. Per-point results are gathered
/// in grid order and reduced sequentially, so the report is independent
/// of the worker count.
pub fn residual_scan(
    ansatz: &DiagonalAnsatz,
    grid: &GridSpec,
    method: Method,
    options: &ScanOptions,
) -> Result<ResidualReport> {
    let stencil = method.stencil();
    if stencil.is_some() && !(options.fd_step.is_finite() && options.fd_step > 0.0) {
        return Err(Error::InvalidInput(format!(
            "fd step must be positive, got {}",
            options.fd_step
        )));
    }
    let jacobi = Jacobi::new(ANSATZ_PARAMETER)?;
    let n = grid.len();
    let eval = |i: usize| point_residuals(ansatz, &jacobi, stencil, options.fd_step, &grid.point(i));

    let per_point: Vec<[f64; 12]> = if options.workers == 1 {
        (0..n).map(eval).collect::<Result<_>>()?
    } else if options.workers == 0 {
        (0..n).into_par_iter().map(eval).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| (0..n).into_par_iter().map(eval).collect::<Result<_>>())?
    };

    let mut entries = Vec::with_capacity(12);
    let mut worst = (0.0f64, 0usize);
    let mut squares = vec![0.0; n];
    for slot in 0..12 {
        let mut max_abs = 0.0f64;
        let mut argmax = 0usize;
        for (i, r) in per_point.iter().enumerate() {
            if r[slot] > max_abs {
                max_abs = r[slot];
                argmax = i;
            }
            squares[i] = r[slot] * r[slot];
        }
        if max_abs > worst.0 || (max_abs == worst.0 && argmax < worst.1) {
            worst = (max_abs, argmax);
        }
        let rms = (pairwise_sum(&squares) / n as f64).sqrt().min(max_abs);
        entries.push(ResidualEntry {
            a: slot / 4 + 1,
            nu: slot % 4,
            max_abs,
            rms,
        });
    }

    Ok(ResidualReport {
        params: ReportParams {
            ansatz: *ansatz,
            fd_step: stencil.map(|_| options.fd_step),
        },
        method,
        grid: *grid,
        entries,
        worst_point: grid.point(worst.1),
    })
}

/// Errors below this are treated as exact.
pub const ROUNDING_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub order: StencilOrder,
    pub steps: Vec<f64>,
    /// Max over all jet entries of `|finite difference − analytic|`.
    pub errors: Vec<f64>,
    /// Least-squares slope of `ln error` against `ln h`; `None` when every
    /// error is at rounding level (the stencil is exact for this field).
    pub slope: Option<f64>,
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Observed order of a finite-difference jet for an arbitrary field against
/// its analytic jet.
pub fn convergence_study_field<F>(
    field: F,
    analytic: &FieldPointJet,
    x: &FourVector,
    steps: &[f64],
    order: StencilOrder,
) -> Result<ConvergenceStudy>
where
    F: Fn(&FourVector) -> [[f64; 4]; 3],
{
    if steps.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 step sizes, got {}",
            steps.len()
        )));
    }
    if steps.iter().any(|h| !(h.is_finite() && *h > 0.0)) || steps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::DegenerateFit(
            "step sizes must be positive and strictly decreasing".into(),
        ));
    }
    let errors = steps
        .iter()
        .map(|&h| Ok(jet_from_callable(&field, x, h, order)?.max_abs_difference(analytic)))
        .collect::<Result<Vec<_>>>()?;

    let slope = if errors.iter().all(|e| *e <= ROUNDING_FLOOR) {
        None
    } else if errors.iter().any(|e| *e <= 0.0) {
        return Err(Error::DegenerateFit(format!(
            "zero error in a non-exact study: {errors:?}"
        )));
    } else {
        let lx: Vec<f64> = steps.iter().map(|h| h.ln()).collect();
        let ly: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
        Some(fit_slope(&lx, &ly))
    };
    Ok(ConvergenceStudy {
        order,
        steps: steps.to_vec(),
        errors,
        slope,
    })
}

/// Convergence of finite-difference jets of the ansatz field at `x`.
pub fn convergence_study(
    ansatz: &DiagonalAnsatz,
    x: &FourVector,
    steps: &[f64],
    order: StencilOrder,
) -> Result<ConvergenceStudy> {
    let jacobi = Jacobi::new(ANSATZ_PARAMETER)?;
    let analytic = jet_from_ansatz_with(&jacobi, ansatz, x);
    convergence_study_field(|y| ansatz.field_with(&jacobi, y), &analytic, x, steps, order)
}

/// Outcome of forcing `A¹₁ = A²₂ = A³₃ = φ` with the Landau amplitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollapseReport {
    pub alpha: f64,
    pub spatial_p: [f64; 3],
    /// `max |E_i − E_j|` for the pairs (1,2), (1,3), (2,3).
    pub mismatch: [f64; 3],
    /// `max |E_k|` for each of the three equations.
    pub residual: [f64; 3],
    /// The three equations are the same equation.
    pub coincide: bool,
    /// All three vanish on the equal-amplitude field.
    pub vanish: bool,
}

impl CollapseReport {
    /// The equal-component reduction is consistent.
    pub fn passed(&self) -> bool {
        self.coincide
    }
}

/// Tolerance for the collapse comparisons, relative to `1 + scale`.
pub const COLLAPSE_TOLERANCE: f64 = 1e-10;

/// Evaluates `∂²φ − (1 − 1/α)∂_k∂^kφ + 2g²φ³` for `k = 1, 2, 3` on the
/// equal-amplitude diagonal field at a fixed set of sample points.
pub fn collapse_check(mu: f64, g: f64, alpha: f64, spatial_p: [f64; 3]) -> Result<CollapseReport> {
    let p = on_shell_momentum(mu, g, spatial_p)?;
    let amp = landau_amplitude(mu, g);
    let ansatz = DiagonalAnsatz::new([amp; 3], p, 0.0, mu, g, alpha)?;
    let coupling = crate::su2field::GaugeCoupling::new(g, alpha)?;
    let jacobi = Jacobi::new(ANSATZ_PARAMETER)?;
    let direction = FourVector::new(0.37, 0.11, -0.23, 0.19);

    let mut mismatch = [0.0f64; 3];
    let mut residual = [0.0f64; 3];
    let mut scale = 0.0f64;
    for j in 0..17 {
        let x = direction * j as f64;
        let jet = jet_from_ansatz_with(&jacobi, &ansatz, &x);
        let eq: [f64; 3] = std::array::from_fn(|k| {
            let slot = k + 1;
            let wave: f64 = (0..4).map(|m| METRIC[m] * jet.d2[m][m][k][slot]).sum();
            let phi = jet.value[k][slot];
            wave - coupling.gauge_factor() * METRIC[slot] * jet.d2[slot][slot][k][slot] + 2.0 * g * g * phi * phi * phi
        });
        scale = scale.max(jet.value[0][1].abs() * p.time() * p.time());
        for (k, e) in eq.iter().enumerate() {
            residual[k] = residual[k].max(e.abs());
        }
        mismatch[0] = mismatch[0].max((eq[0] - eq[1]).abs());
        mismatch[1] = mismatch[1].max((eq[0] - eq[2]).abs());
        mismatch[2] = mismatch[2].max((eq[1] - eq[2]).abs());
    }
    let tol = COLLAPSE_TOLERANCE * (1.0 + scale);
    Ok(CollapseReport {
        alpha,
        spatial_p,
        mismatch,
        residual,
        coincide: mismatch.iter().all(|m| *m <= tol),
        vanish: residual.iter().all(|r| *r <= tol),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionRow {
    pub pnorm: f64,
    pub p0_expected: f64,
    pub p0_measured: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionScan {
    pub mu: f64,
    pub g: f64,
    pub rows: Vec<DispersionRow>,
    /// Mean of `p₀² − |p⃗|²` (unit slope imposed).
    pub intercept: f64,
    /// Unconstrained least-squares fit of `p₀²` against `|p⃗|²`; `None` with
    /// fewer than two distinct momenta.
    pub fit_slope: Option<f64>,
    pub fit_intercept: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionOptions {
    pub theta: f64,
    /// Spatial point at which the field is sampled in time.
    pub position: [f64; 3],
    /// Sampling step, fixed independently of the expected energy.
    pub dt: f64,
    /// Length of the sampled time window.
    pub duration: f64,
}

impl Default for DispersionOptions {
    fn default() -> Self {
        DispersionOptions {
            theta: 0.0,
            position: [0.37, -0.21, 0.5],
            dt: 1e-4,
            duration: 25.0,
        }
    }
}

/// For each `|p⃗|` (momentum along the first axis), samples the Landau
/// solution in time at a fixed point, measures its period from zero
/// crossings and converts it to an energy `4K(−1)/T`.
pub fn dispersion_scan(mu: f64, g: f64, pnorms: &[f64], options: &DispersionOptions) -> Result<DispersionScan> {
    if pnorms.is_empty() {
        return Err(Error::InvalidInput("no momenta given".into()));
    }
    if !(options.dt > 0.0 && options.duration > options.dt) {
        return Err(Error::InvalidInput(format!(
            "need 0 < dt < duration, got dt = {}, duration = {}",
            options.dt, options.duration
        )));
    }
    let jacobi = Jacobi::new(ANSATZ_PARAMETER)?;
    let four_k = jacobi.period();
    let dt = options.dt;
    let n = (options.duration / dt).ceil() as usize + 1;
    let mut rows = Vec::with_capacity(pnorms.len());
    for &pnorm in pnorms {
        let ansatz = landau_solution(mu, g, [pnorm, 0.0, 0.0], options.theta)?;
        let p0_expected = ansatz.p.time();
        let samples: Vec<f64> = (0..n)
            .map(|i| {
                let x = FourVector::from_time_and_space(i as f64 * dt, options.position);
                ansatz.field_with(&jacobi, &x)[0][1]
            })
            .collect();
        let traj = Trajectory::from_samples(dt, 1, samples)?;
        let p0_measured = four_k / measure_period(&traj, 0)?;
        rows.push(DispersionRow {
            pnorm,
            p0_expected,
            p0_measured,
            abs_error: (p0_measured - p0_expected).abs(),
        });
    }

    let xs: Vec<f64> = rows.iter().map(|r| r.pnorm * r.pnorm).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.p0_measured * r.p0_measured).collect();
    let intercept = xs.iter().zip(&ys).map(|(x, y)| y - x).sum::<f64>() / xs.len() as f64;
    let distinct = xs.iter().any(|x| *x != xs[0]);
    let (fit_slope_value, fit_intercept) = if distinct {
        let slope = fit_slope(&xs, &ys);
        let mx = xs.iter().sum::<f64>() / xs.len() as f64;
        let my = ys.iter().sum::<f64>() / ys.len() as f64;
        (Some(slope), Some(my - slope * mx))
    } else {
        (None, None)
    };
    Ok(DispersionScan {
        mu,
        g,
        rows,
        intercept,
        fit_slope: fit_slope_value,
        fit_intercept,
    })
}
