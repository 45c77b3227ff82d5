//! Bochner-Riesz kernels on the torus: `B_N^{d,δ}`, the normalizer `β_N^{d,δ}`,
//! spherical Dirichlet kernels, the Abel-summation rearrangement, kernel-growth
//! diagnostics, and the induced recovery of atoms.

use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fourier::mu_hat;
use crate::group::{unit_phase, FrequencyPoint, GroupPoint};
use crate::measure::Measure;

/// Lattice points of the ball |k| <= N grouped by squared radius:
/// shells[j] lists every k in Z^d with |k|² = j.
#[derive(Debug)]
pub struct SquaredRadiusShells {
    pub n: u32,
    pub d: usize,
    pub shells: Vec<Vec<Vec<i64>>>,
}

impl SquaredRadiusShells {
    fn build(n: u32, d: usize) -> Self {
        let mut shells: Vec<Vec<Vec<i64>>> = vec![Vec::new(); (n as usize) * (n as usize) + 1];
        let pts = crate::folner::lattice_points(&crate::folner::FolnerSet::Ball { n: n as f64 }, d)
            .expect("ball enumeration");
        for k in pts {
            let j: i64 = k.iter().map(|&c| c * c).sum();
            shells[j as usize].push(k);
        }
        SquaredRadiusShells { n, d, shells }
    }

    pub fn total_count(&self) -> usize {
        self.shells.iter().map(|s| s.len()).sum()
    }

    /// Character sum of shell j at x.
    pub fn shell_sum(&self, j: usize, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in &self.shells[j] {
            let phase: f64 = k.iter().zip(x).map(|(&a, b)| a as f64 * b).sum();
            acc += unit_phase(phase);
        }
        acc
    }
}

// Shells are immutable once built; build-once, read-many.
fn shell_cache() -> &'static Mutex<HashMap<(u32, usize), Arc<SquaredRadiusShells>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<SquaredRadiusShells>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn shells(n: u32, d: usize) -> Arc<SquaredRadiusShells> {
    let mut cache = shell_cache().lock().expect("shell cache poisoned");
    cache
        .entry((n, d))
        .or_insert_with(|| Arc::new(SquaredRadiusShells::build(n, d)))
        .clone()
}

/// D_N^d(x) = Σ_{|k| <= N} e^{2πi⟨k,x⟩}; the δ = 0 Bochner-Riesz kernel.
pub fn dirichlet_spherical(n: u32, d: usize, x: &[f64]) -> Complex64 {
    br_kernel_torus(n, 0.0, d, x)
}

/// B_N^{d,δ}(x) = Σ_{|k| <= N} (1 - |k|²/N²)_+^δ e^{2πi⟨k,x⟩}, by direct
/// lattice sum over the cached shells.
pub fn br_kernel_torus(n: u32, delta: f64, d: usize, x: &[f64]) -> Complex64 {
    let sh = shells(n, d);
    let n2 = (n as f64) * (n as f64);
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, shell) in sh.shells.iter().enumerate() {
        if shell.is_empty() {
            continue;
        }
        let w = if delta == 0.0 {
            1.0
        } else {
            (1.0 - j as f64 / n2).powf(delta)
        };
        acc += sh.shell_sum(j, x) * w;
    }
    acc
}

/// β_N^{d,δ} = B_N^{d,δ}(0) = Σ_{|k| <= N} (1 - |k|²/N²)^δ.
pub fn beta(n: u32, delta: f64, d: usize) -> f64 {
    let sh = shells(n, d);
    let n2 = (n as f64) * (n as f64);
    let mut acc = 0.0;
    for (j, shell) in sh.shells.iter().enumerate() {
        if shell.is_empty() {
            continue;
        }
        let w = if delta == 0.0 {
            1.0
        } else {
            (1.0 - j as f64 / n2).powf(delta)
        };
        acc += shell.len() as f64 * w;
    }
    acc
}

/// Both sides of the Abel-summation rearrangement
/// B_N = 1 - (1 - 1/N²)^δ + Σ_{j=1}^{N²-1} [(1-j/N²)^δ - (1-(j+1)/N²)^δ]·T_j,
/// with T_j the squared-radius partial sums Σ_{|k|²<=j} e^{2πi⟨k,x⟩}.
/// Returns (direct, rearranged, |difference|).
pub fn abel_identity_check(
    n: u32,
    delta: f64,
    d: usize,
    x: &[f64],
) -> Result<(Complex64, Complex64, f64)> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(
            "the Abel rearrangement requires δ > 0".into(),
        ));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let direct = br_kernel_torus(n, delta, d, x);

    let sh = shells(n, d);
    let n2 = (n as f64) * (n as f64);
    let mut partial = sh.shell_sum(0, x); // T_0 = 1
    let mut acc = Complex64::new(1.0 - (1.0 - 1.0 / n2).powf(delta), 0.0);
    let jmax = (n as usize) * (n as usize);
    for j in 1..jmax {
        partial += sh.shell_sum(j, x);
        let w = (1.0 - j as f64 / n2).powf(delta) - (1.0 - (j + 1) as f64 / n2).powf(delta);
        acc += partial * w;
    }
    Ok((direct, acc, (direct - acc).norm()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSelector {
    Dirichlet,
    BochnerRiesz { delta: f64 },
}

/// max over the index range of |K_N(x)| / N^{d-1}; rejects integer probe
/// points, where the kernel peaks and the statistic is undefined.
pub fn growth_diagnostic(
    selector: KernelSelector,
    d: usize,
    x: &[f64],
    n_range: std::ops::RangeInclusive<u32>,
) -> Result<f64> {
    if x.iter().all(|c| c.fract() == 0.0) {
        return Err(Error::InvalidArgument(
            "growth diagnostic undefined at integer points".into(),
        ));
    }
    let mut max = 0.0_f64;
    for n in n_range {
        if n == 0 {
            continue;
        }
        let v = match selector {
            KernelSelector::Dirichlet => br_kernel_torus(n, 0.0, d, x),
            KernelSelector::BochnerRiesz { delta } => br_kernel_torus(n, delta, d, x),
        };
        max = max.max(v.norm() / (n as f64).powi(d as i32 - 1));
    }
    Ok(max)
}

/// The Bochner-Riesz mean (1/β_N) Σ_{|j|<=N} (1-|j|²/N²)_+^δ μ̂(j) e^{2πi⟨j,x⟩}
/// on `T^d`. δ = 0 is the spherical Dirichlet average.
pub fn wiener_br_torus(
    mu: &Measure,
    n: u32,
    delta: f64,
    x: &GroupPoint,
) -> Result<Complex64> {
    let ctx = mu.ctx();
    if !ctx.is_torus() {
        return Err(Error::Unsupported(
            "Bochner-Riesz torus means require a torus context".into(),
        ));
    }
    if n < 1 || delta < 0.0 {
        return Err(Error::InvalidArgument("require N >= 1 and δ >= 0".into()));
    }
    let d = ctx.dim();
    if x.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: x.dim(),
        });
    }
    let sh = shells(n, d);
    let n2 = (n as f64) * (n as f64);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut norm = 0.0;
    for (j, shell) in sh.shells.iter().enumerate() {
        if shell.is_empty() {
            continue;
        }
        let w = if delta == 0.0 {
            1.0
        } else {
            (1.0 - j as f64 / n2).powf(delta)
        };
        norm += shell.len() as f64 * w;
        for k in shell {
            let gamma = FrequencyPoint::from_lattice(ctx, k)?;
            let phase: f64 = k.iter().zip(x.coords()).map(|(&a, b)| a as f64 * b).sum();
            acc += mu_hat(mu, &gamma)? * unit_phase(phase) * w;
        }
    }
    Ok(acc / norm)
}
