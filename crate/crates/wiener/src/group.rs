//! The three supported group families, their dual groups and characters.
//!
//! Everything downstream works with one Fourier convention: forward kernel
//! `exp(-2πi·pairing)`, inverse kernel `exp(+2πi·pairing)`. On `T^d` and `R^d`
//! the normalization constant is 1; on a finite group the inverse carries the
//! `1/|G|` weight so that inversion is exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TAU: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupContext {
    Torus { d: usize },
    Euclidean { d: usize },
    FiniteAbelian { moduli: Vec<u64> },
}

impl GroupContext {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupContext::Torus { d } | GroupContext::Euclidean { d } => {
                if *d == 0 {
                    return Err(Error::InvalidArgument("dimension must be >= 1".into()));
                }
            }
            GroupContext::FiniteAbelian { moduli } => {
                if moduli.is_empty() {
                    return Err(Error::InvalidArgument("moduli list must be nonempty".into()));
                }
                if moduli.iter().any(|&m| m < 2) {
                    return Err(Error::InvalidArgument("every modulus must be >= 2".into()));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupContext::Torus { d } | GroupContext::Euclidean { d } => *d,
            GroupContext::FiniteAbelian { moduli } => moduli.len(),
        }
    }

    /// |G| for finite groups.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupContext::FiniteAbelian { moduli } => Some(moduli.iter().product()),
            _ => None,
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, GroupContext::Torus { .. })
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self, GroupContext::Euclidean { .. })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupContext::FiniteAbelian { .. })
    }

    /// The identity element (additive notation: the zero vector).
    pub fn identity(&self) -> GroupPoint {
        GroupPoint::new(self, vec![0.0; self.dim()]).expect("zero vector is always valid")
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got,
            });
        }
        Ok(())
    }
}

/// A point of the group, with canonical coordinates: torus entries in `[0,1)`,
/// finite-group entries integers in `[0, m_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    coords: Vec<f64>,
}

impl GroupPoint {
    pub fn new(ctx: &GroupContext, mut coords: Vec<f64>) -> Result<Self> {
        ctx.check_dim(coords.len())?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        match ctx {
            GroupContext::Torus { .. } => {
                for c in coords.iter_mut() {
                    *c = wrap_unit(*c);
                }
            }
            GroupContext::Euclidean { .. } => {}
            GroupContext::FiniteAbelian { moduli } => {
                for (c, &m) in coords.iter_mut().zip(moduli) {
                    let r = c.round();
                    if (r - *c).abs() > 1e-9 {
                        return Err(Error::InvalidArgument(format!(
                            "finite-group coordinate {c} is not an integer"
                        )));
                    }
                    *c = (r as i64).rem_euclid(m as i64) as f64;
                }
            }
        }
        Ok(GroupPoint { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    /// x + y in the group.
    pub fn add(&self, ctx: &GroupContext, other: &GroupPoint) -> Result<GroupPoint> {
        ctx.check_dim(other.dim())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        GroupPoint::new(ctx, coords)
    }

    /// -x in the group.
    pub fn neg(&self, ctx: &GroupContext) -> GroupPoint {
        let coords = self.coords.iter().map(|c| -c).collect();
        GroupPoint::new(ctx, coords).expect("negation preserves validity")
    }

    /// Distance between points in the natural metric of the group: min-image
    /// distance on the torus, Euclidean distance otherwise.
    pub fn distance(&self, ctx: &GroupContext, other: &GroupPoint) -> f64 {
        let mut s = 0.0;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            let mut t = a - b;
            if ctx.is_torus() {
                t -= t.round();
            }
            s += t * t;
        }
        s.sqrt()
    }
}

/// A point of the dual group: integer vector for `T^d` (dual `Z^d`) and finite
/// groups (self-dual), real vector for `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPoint {
    coords: Vec<f64>,
}

impl FrequencyPoint {
    pub fn new(ctx: &GroupContext, mut coords: Vec<f64>) -> Result<Self> {
        ctx.check_dim(coords.len())?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite frequency coordinate".into()));
        }
        match ctx {
            GroupContext::Torus { .. } => {
                for c in coords.iter() {
                    if c.fract() != 0.0 {
                        return Err(Error::InvalidArgument(format!(
                            "torus frequency {c} is not an integer"
                        )));
                    }
                }
            }
            GroupContext::Euclidean { .. } => {}
            GroupContext::FiniteAbelian { moduli } => {
                for (c, &m) in coords.iter_mut().zip(moduli) {
                    let r = c.round();
                    if (r - *c).abs() > 1e-9 {
                        return Err(Error::InvalidArgument(format!(
                            "finite-group frequency {c} is not an integer"
                        )));
                    }
                    *c = (r as i64).rem_euclid(m as i64) as f64;
                }
            }
        }
        Ok(FrequencyPoint { coords })
    }

    pub fn from_lattice(ctx: &GroupContext, k: &[i64]) -> Result<Self> {
        FrequencyPoint::new(ctx, k.iter().map(|&v| v as f64).collect())
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// The bilinear pairing entering the character: `⟨k,x⟩` on the torus,
/// `⟨ξ,x⟩` on `R^d`, `Σ k_j x_j / m_j` on a finite group.
pub fn pairing(ctx: &GroupContext, gamma: &FrequencyPoint, x: &GroupPoint) -> Result<f64> {
    ctx.check_dim(gamma.dim())?;
    ctx.check_dim(x.dim())?;
    let dot: f64 = match ctx {
        GroupContext::Torus { .. } | GroupContext::Euclidean { .. } => gamma
            .coords
            .iter()
            .zip(&x.coords)
            .map(|(g, c)| g * c)
            .sum(),
        GroupContext::FiniteAbelian { moduli } => gamma
            .coords
            .iter()
            .zip(&x.coords)
            .zip(moduli)
            .map(|((g, c), &m)| g * c / m as f64)
            .sum(),
    };
    Ok(dot)
}

/// γ(x) = exp(2πi·pairing).
pub fn char_eval(ctx: &GroupContext, gamma: &FrequencyPoint, x: &GroupPoint) -> Result<Complex64> {
    let p = pairing(ctx, gamma, x)?;
    Ok(unit_phase(p))
}

/// exp(2πi t), reduced so large arguments keep full precision.
pub fn unit_phase(t: f64) -> Complex64 {
    let r = t - t.round();
    Complex64::new((TAU * r).cos(), (TAU * r).sin())
}

/// Forward and inverse normalization constants of the Fourier transform.
pub fn haar_normalizers(ctx: &GroupContext) -> (f64, f64) {
    match ctx {
        GroupContext::Torus { .. } | GroupContext::Euclidean { .. } => (1.0, 1.0),
        GroupContext::FiniteAbelian { moduli } => {
            let order: u64 = moduli.iter().product();
            (1.0, 1.0 / order as f64)
        }
    }
}

pub fn wrap_unit(x: f64) -> f64 {
    let r = x - x.floor();
    // x.floor() can leave exactly 1.0 behind for tiny negative x
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}
