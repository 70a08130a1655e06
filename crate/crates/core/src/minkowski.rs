//! Four-vectors in the mostly-minus signature `diag(+1, −1, −1, −1)`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Diagonal of the Minkowski metric.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Four components indexed `0..4`; index 0 is the time component.
/// Whether the components are upper or lower is up to the caller; the
/// ansatz code keeps momenta and positions contravariant.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        FourVector([x0, x1, x2, x3])
    }

    pub fn from_time_and_space(t: f64, space: [f64; 3]) -> Self {
        FourVector([t, space[0], space[1], space[2]])
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn spatial_norm_sq(&self) -> f64 {
        self.0[1..].iter().map(|c| c * c).sum()
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    /// Minkowski square `p·p`.
    pub fn square(&self) -> f64 {
        minkowski_dot(self, self)
    }

    pub fn raise(&self) -> FourVector {
        raise_index(self)
    }

    /// Identical to [`raise`](Self::raise) for a diagonal metric with unit entries.
    pub fn lower(&self) -> FourVector {
        raise_index(self)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Unit coordinate vector along axis `mu`.
    pub fn basis(mu: usize) -> FourVector {
        let mut v = [0.0; 4];
        v[mu] = 1.0;
        FourVector(v)
    }
}

/// `p⁰q⁰ − p¹q¹ − p²q² − p³q³`.
pub fn minkowski_dot(p: &FourVector, q: &FourVector) -> f64 {
    p.0[0] * q.0[0] - p.0[1] * q.0[1] - p.0[2] * q.0[2] - p.0[3] * q.0[3]
}

/// Applies the metric once: keeps the time component and negates the spatial ones.
pub fn raise_index(p: &FourVector) -> FourVector {
    FourVector([p.0[0], -p.0[1], -p.0[2], -p.0[3]])
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, mu: usize) -> &f64 {
        &self.0[mu]
    }
}

impl IndexMut<usize> for FourVector {
    fn index_mut(&mut self, mu: usize) -> &mut f64 {
        &mut self.0[mu]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector(self.0.map(|c| c * s))
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(self.0.map(|c| -c))
    }
}

impl From<[f64; 4]> for FourVector {
    fn from(v: [f64; 4]) -> Self {
        FourVector(v)
    }
}
