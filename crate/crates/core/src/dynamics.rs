//! Time-domain integration of the space-independent reductions:
//!
//! * quartic oscillator `φ̈ = −2g²φ³` (all three diagonal components equal),
//! * coupled triple `φ̈₁ = −g²(φ₂² + φ₃²)φ₁` and cyclic.
//!
//! Both are integrated with the kick-drift-kick leapfrog, which is
//! second order, symplectic and time reversible.

use crate::error::{Error, Result};

/// Abort when any coordinate or velocity exceeds this magnitude.
pub const BLOW_UP_LIMIT: f64 = 1e12;

/// Fixed-step samples of a trajectory. Sample `n` sits at `t = n·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dt: f64,
    dim: usize,
    positions: Vec<f64>,
    velocities: Vec<f64>,
    energies: Vec<f64>,
    energy0: f64,
}

impl Trajectory {
    /// Wraps externally produced samples; `positions` is row-major,
    /// `dim` values per sample. Velocities and energies are left at zero.
    pub fn from_samples(dt: f64, dim: usize, positions: Vec<f64>) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidInput(format!("dt must be positive, got {dt}")));
        }
        if dim == 0 || !positions.len().is_multiple_of(dim) {
            return Err(Error::InvalidInput(format!(
                "{} samples do not fill rows of width {dim}",
                positions.len()
            )));
        }
        let n = positions.len() / dim;
        Ok(Trajectory {
            dt,
            dim,
            velocities: vec![0.0; positions.len()],
            positions,
            energies: vec![0.0; n],
            energy0: 0.0,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    pub fn position(&self, n: usize) -> &[f64] {
        &self.positions[n * self.dim..(n + 1) * self.dim]
    }

    pub fn velocity(&self, n: usize) -> &[f64] {
        &self.velocities[n * self.dim..(n + 1) * self.dim]
    }

    pub fn energy(&self, n: usize) -> f64 {
        self.energies[n]
    }

    pub fn energy0(&self) -> f64 {
        self.energy0
    }

    /// Largest `|E_n − E_0|` over the run.
    pub fn max_energy_drift(&self) -> f64 {
        self.energies
            .iter()
            .map(|e| (e - self.energy0).abs())
            .fold(0.0, f64::max)
    }

    /// Values of one component over time.
    pub fn component(&self, k: usize) -> impl Iterator<Item = f64> + '_ {
        self.positions.iter().skip(k).step_by(self.dim).copied()
    }
}

trait Hamiltonian<const N: usize> {
    fn acceleration(&self, q: &[f64; N]) -> [f64; N];
    fn energy(&self, q: &[f64; N], v: &[f64; N]) -> f64;
}

struct Quartic {
    g2: f64,
}

impl Hamiltonian<1> for Quartic {
    fn acceleration(&self, q: &[f64; 1]) -> [f64; 1] {
        [-2.0 * self.g2 * q[0] * q[0] * q[0]]
    }

    fn energy(&self, q: &[f64; 1], v: &[f64; 1]) -> f64 {
        0.5 * v[0] * v[0] + 0.5 * self.g2 * q[0].powi(4)
    }
}

struct Triple {
    g2: f64,
}

impl Hamiltonian<3> for Triple {
    fn acceleration(&self, q: &[f64; 3]) -> [f64; 3] {
        let sq = q.map(|x| x * x);
        [
            -self.g2 * (sq[1] + sq[2]) * q[0],
            -self.g2 * (sq[2] + sq[0]) * q[1],
            -self.g2 * (sq[0] + sq[1]) * q[2],
        ]
    }

    fn energy(&self, q: &[f64; 3], v: &[f64; 3]) -> f64 {
        let sq = q.map(|x| x * x);
        let kinetic = 0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        kinetic + 0.5 * self.g2 * (sq[0] * sq[1] + sq[1] * sq[2] + sq[2] * sq[0])
    }
}

fn check_run(g: f64, dt: f64, steps: usize) -> Result<()> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::InvalidInput(format!("g must be positive, got {g}")));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidInput(format!("dt must be positive, got {dt}")));
    }
    if steps == 0 {
        return Err(Error::InvalidInput("steps must be at least 1".into()));
    }
    Ok(())
}

fn leapfrog<const N: usize, H: Hamiltonian<N>>(
    system: &H,
    mut q: [f64; N],
    mut v: [f64; N],
    dt: f64,
    steps: usize,
) -> Result<Trajectory> {
    if q.iter().chain(&v).any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("initial state must be finite".into()));
    }
    let mut positions = Vec::with_capacity((steps + 1) * N);
    let mut velocities = Vec::with_capacity((steps + 1) * N);
    let mut energies = Vec::with_capacity(steps + 1);
    let energy0 = system.energy(&q, &v);
    positions.extend_from_slice(&q);
    velocities.extend_from_slice(&v);
    energies.push(energy0);

    let half = 0.5 * dt;
    let mut acc = system.acceleration(&q);
    for step in 1..=steps {
        for i in 0..N {
            v[i] += half * acc[i];
            q[i] += dt * v[i];
        }
        acc = system.acceleration(&q);
        for i in 0..N {
            v[i] += half * acc[i];
        }
        if q.iter().chain(&v).any(|x| !x.is_finite() || x.abs() > BLOW_UP_LIMIT) {
            return Err(Error::BlowUp {
                step,
                t: step as f64 * dt,
                limit: BLOW_UP_LIMIT,
            });
        }
        positions.extend_from_slice(&q);
        velocities.extend_from_slice(&v);
        energies.push(system.energy(&q, &v));
    }
    Ok(Trajectory {
        dt,
        dim: N,
        positions,
        velocities,
        energies,
        energy0,
    })
}

/// Integrates `φ̈ = −2g²φ³` with energy `½v² + (g²/2)φ⁴`.
pub fn evolve_quartic(phi0: f64, v0: f64, g: f64, dt: f64, steps: usize) -> Result<Trajectory> {
    check_run(g, dt, steps)?;
    leapfrog(&Quartic { g2: g * g }, [phi0], [v0], dt, steps)
}

/// Integrates the coupled triple with energy
/// `½Σv² + (g²/2)(φ₁²φ₂² + φ₂²φ₃² + φ₃²φ₁²)`.
pub fn evolve_triple(phi0: [f64; 3], v0: [f64; 3], g: f64, dt: f64, steps: usize) -> Result<Trajectory> {
    check_run(g, dt, steps)?;
    leapfrog(&Triple { g2: g * g }, phi0, v0, dt, steps)
}

/// Mean spacing of successive upward zero crossings of one component,
/// each crossing located by linear interpolation between samples.
pub fn measure_period(traj: &Trajectory, component: usize) -> Result<f64> {
    if component >= traj.dim() {
        return Err(Error::IndexOutOfRange {
            kind: "component",
            index: component,
        });
    }
    let values: Vec<f64> = traj.component(component).collect();
    let mut sign_changes = 0;
    let mut upward = Vec::new();
    for (i, w) in values.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        if a <= 0.0 && b > 0.0 {
            sign_changes += 1;
            upward.push(traj.time(i) + traj.dt() * (-a) / (b - a));
        } else if a > 0.0 && b <= 0.0 {
            sign_changes += 1;
        }
    }
    if sign_changes < 3 || upward.len() < 2 {
        return Err(Error::InsufficientCrossings { found: sign_changes });
    }
    Ok((upward[upward.len() - 1] - upward[0]) / (upward.len() - 1) as f64)
}

/// Closed-form amplitude and angular frequency of the quartic oscillator
/// started from `φ = 0` with velocity `v0 > 0`: `φ = A sn(ωt, −1)`,
/// `ω = √(v0·g)`, `A = v0/ω`.
pub fn quartic_closed_form(v0: f64, g: f64) -> (f64, f64) {
    let omega = (v0 * g).sqrt();
    (v0 / omega, omega)
}
