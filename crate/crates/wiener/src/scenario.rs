//! Config-driven experiment runner: builds measures from a JSON scenario,
//! sweeps a method over indices and probe points, scans grids for atoms, and
//! fits empirical convergence rates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::folner::{folner_average, lattice_points, FolnerSet};
use crate::fourier::mu_hat;
use crate::group::{unit_phase, FrequencyPoint, GroupContext, GroupPoint};
use crate::measure::{AcComponent, AcKind, Atom, CantorComponent, Measure};
use crate::record::RunRecord;
use crate::torus_br::{beta, shells, wiener_br_torus};
use crate::weighted::{scaled_weight_mean, KernelKind, WeightKernel};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub group: GroupContext,
    pub measure: MeasureSpec,
    pub method: MethodSpec,
    pub sweep: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Either an explicit synthetic measure or (torus only) a tabulated spectrum
/// file of μ̂(k) values.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    #[serde(default)]
    pub atoms: Vec<AtomSpec>,
    #[serde(default)]
    pub ac: Vec<AcSpec>,
    #[serde(default)]
    pub cantor: Option<CantorSpec>,
    #[serde(default)]
    pub spectrum_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomSpec {
    pub position: Vec<f64>,
    pub weight: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AcSpec {
    Gaussian {
        center: Vec<f64>,
        width: f64,
        coefficient: [f64; 2],
    },
    Box {
        center: Vec<f64>,
        half_widths: Vec<f64>,
        coefficient: [f64; 2],
    },
    Lebesgue { coefficient: [f64; 2] },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CantorSpec {
    pub coefficient: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MethodSpec {
    FolnerCube,
    FolnerBall,
    FolnerBox { half_widths: Vec<f64> },
    FolnerEllipsoid { semi_axes: Vec<f64> },
    Gaussian,
    BochnerRieszRd { alpha: f64 },
    BochnerRieszTd { delta: f64 },
}

impl MethodSpec {
    pub fn label(&self) -> &'static str {
        match self {
            MethodSpec::FolnerCube => "folner_cube",
            MethodSpec::FolnerBall => "folner_ball",
            MethodSpec::FolnerBox { .. } => "folner_box",
            MethodSpec::FolnerEllipsoid { .. } => "folner_ellipsoid",
            MethodSpec::Gaussian => "gaussian",
            MethodSpec::BochnerRieszRd { .. } => "bochner_riesz_rd",
            MethodSpec::BochnerRieszTd { .. } => "bochner_riesz_td",
        }
    }

    pub fn param(&self) -> Option<f64> {
        match self {
            MethodSpec::BochnerRieszRd { alpha } => Some(*alpha),
            MethodSpec::BochnerRieszTd { delta } => Some(*delta),
            _ => None,
        }
    }

    fn folner_set(&self, index: f64) -> Option<FolnerSet> {
        match self {
            MethodSpec::FolnerCube => Some(FolnerSet::Cube { n: index }),
            MethodSpec::FolnerBall => Some(FolnerSet::Ball { n: index }),
            MethodSpec::FolnerBox { half_widths } => Some(FolnerSet::Box {
                half_widths: half_widths.iter().map(|h| h * index).collect(),
            }),
            MethodSpec::FolnerEllipsoid { semi_axes } => Some(FolnerSet::Ellipsoid {
                semi_axes: semi_axes.iter().map(|a| a * index).collect(),
            }),
            _ => None,
        }
    }
}

/// Tabulated μ̂ on `Z^d`, loaded from CSV rows `k_1..k_d,re,im`.
#[derive(Debug, Clone)]
pub struct TorusSpectrum {
    d: usize,
    coeffs: HashMap<Vec<i64>, Complex64>,
}

impl TorusSpectrum {
    pub fn load(path: &Path, d: usize) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("measure.spectrum_file: cannot read {path:?}: {e}")))?;
        let mut coeffs = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if lineno == 0 && cols[0].parse::<f64>().is_err() {
                continue; // header row
            }
            if cols.len() != d + 2 {
                return Err(Error::Config(format!(
                    "measure.spectrum_file: line {} has {} columns, expected {}",
                    lineno + 1,
                    cols.len(),
                    d + 2
                )));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| {
                    Error::Config(format!(
                        "measure.spectrum_file: line {}: bad number {s:?}",
                        lineno + 1
                    ))
                })
            };
            let mut k = Vec::with_capacity(d);
            for c in &cols[..d] {
                let v = parse(c)?;
                if v.fract() != 0.0 {
                    return Err(Error::Config(format!(
                        "measure.spectrum_file: line {}: non-integer frequency {v}",
                        lineno + 1
                    )));
                }
                k.push(v as i64);
            }
            let re = parse(cols[d])?;
            let im = parse(cols[d + 1])?;
            coeffs.insert(k, Complex64::new(re, im));
        }
        Ok(TorusSpectrum { d, coeffs })
    }

    /// Missing coefficients are an error: the finite sums must not be
    /// silently truncated.
    pub fn get(&self, k: &[i64]) -> Result<Complex64> {
        if k.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: k.len(),
            });
        }
        self.coeffs.get(k).copied().ok_or_else(|| {
            Error::Config(format!(
                "measure.spectrum_file: missing coefficient for frequency {k:?}"
            ))
        })
    }
}

/// What a scenario averages: a synthetic model measure with known atoms, or a
/// tabulated spectrum with unknown ground truth (truth recorded as 0).
pub enum MeasureSource {
    Model(Measure),
    Table { ctx: GroupContext, spectrum: TorusSpectrum },
}

impl MeasureSource {
    pub fn ctx(&self) -> &GroupContext {
        match self {
            MeasureSource::Model(m) => m.ctx(),
            MeasureSource::Table { ctx, .. } => ctx,
        }
    }

    fn truth(&self, x: &GroupPoint) -> Complex64 {
        match self {
            MeasureSource::Model(m) => m.true_atom(x),
            MeasureSource::Table { .. } => Complex64::new(0.0, 0.0),
        }
    }

    fn mu_hat_lattice(&self, k: &[i64]) -> Result<Complex64> {
        match self {
            MeasureSource::Model(m) => {
                let gamma = FrequencyPoint::from_lattice(m.ctx(), k)?;
                mu_hat(m, &gamma)
            }
            MeasureSource::Table { spectrum, .. } => spectrum.get(k),
        }
    }
}

pub fn build_source(config: &ScenarioConfig, base_dir: &Path) -> Result<MeasureSource> {
    config.group.validate().map_err(|e| Error::Config(format!("group: {e}")))?;
    let spec = &config.measure;
    if let Some(file) = &spec.spectrum_file {
        if !spec.atoms.is_empty() || !spec.ac.is_empty() || spec.cantor.is_some() {
            return Err(Error::Config(
                "measure: spectrum_file excludes explicit components".into(),
            ));
        }
        if !config.group.is_torus() {
            return Err(Error::Config(
                "measure.spectrum_file: tabulated spectra are torus-only".into(),
            ));
        }
        let path = if file.is_absolute() {
            file.clone()
        } else {
            base_dir.join(file)
        };
        let spectrum = TorusSpectrum::load(&path, config.group.dim())?;
        return Ok(MeasureSource::Table {
            ctx: config.group.clone(),
            spectrum,
        });
    }
    let atoms = spec
        .atoms
        .iter()
        .enumerate()
        .map(|(i, a)| {
            Ok(Atom {
                position: GroupPoint::new(&config.group, a.position.clone())
                    .map_err(|e| Error::Config(format!("measure.atoms[{i}].position: {e}")))?,
                weight: Complex64::new(a.weight[0], a.weight[1]),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ac = spec
        .ac
        .iter()
        .map(|c| {
            let (kind, coeff) = match c {
                AcSpec::Gaussian {
                    center,
                    width,
                    coefficient,
                } => (
                    AcKind::Gaussian {
                        center: center.clone(),
                        width: *width,
                    },
                    coefficient,
                ),
                AcSpec::Box {
                    center,
                    half_widths,
                    coefficient,
                } => (
                    AcKind::Box {
                        center: center.clone(),
                        half_widths: half_widths.clone(),
                    },
                    coefficient,
                ),
                AcSpec::Lebesgue { coefficient } => (AcKind::Lebesgue, coefficient),
            };
            AcComponent {
                kind,
                coefficient: Complex64::new(coeff[0], coeff[1]),
            }
        })
        .collect();
    let cantor = spec.cantor.as_ref().map(|c| CantorComponent {
        coefficient: Complex64::new(c.coefficient[0], c.coefficient[1]),
    });
    let mu = Measure::new(config.group.clone(), atoms, ac, cantor)
        .map_err(|e| Error::Config(format!("measure: {e}")))?;
    Ok(MeasureSource::Model(mu))
}

fn check_compat(method: &MethodSpec, source: &MeasureSource) -> Result<()> {
    let ctx = source.ctx();
    let ok = match method {
        MethodSpec::FolnerCube
        | MethodSpec::FolnerBall
        | MethodSpec::FolnerBox { .. }
        | MethodSpec::FolnerEllipsoid { .. } => ctx.is_torus() || ctx.is_euclidean(),
        MethodSpec::Gaussian | MethodSpec::BochnerRieszRd { .. } => ctx.is_euclidean(),
        MethodSpec::BochnerRieszTd { .. } => ctx.is_torus(),
    };
    if !ok {
        return Err(Error::Config(format!(
            "method: {} incompatible with group kind",
            method.label()
        )));
    }
    if matches!(source, MeasureSource::Table { .. }) && ctx.is_euclidean() {
        return Err(Error::Config("method: tabulated spectra are torus-only".into()));
    }
    Ok(())
}

/// One method evaluation at (index, point).
pub fn eval_method(
    source: &MeasureSource,
    method: &MethodSpec,
    index: f64,
    x: &GroupPoint,
) -> Result<Complex64> {
    let ctx = source.ctx();
    match (method, source) {
        (MethodSpec::BochnerRieszTd { delta }, MeasureSource::Model(mu)) => {
            wiener_br_torus(mu, as_count(index)?, *delta, x)
        }
        (MethodSpec::BochnerRieszTd { delta }, MeasureSource::Table { .. }) => {
            let n = as_count(index)?;
            let sh = shells(n, ctx.dim());
            let n2 = (n as f64) * (n as f64);
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, shell) in sh.shells.iter().enumerate() {
                if shell.is_empty() {
                    continue;
                }
                let w = if *delta == 0.0 {
                    1.0
                } else {
                    (1.0 - j as f64 / n2).powf(*delta)
                };
                for k in shell {
                    let phase: f64 =
                        k.iter().zip(x.coords()).map(|(&a, b)| a as f64 * b).sum();
                    acc += source.mu_hat_lattice(k)? * unit_phase(phase) * w;
                }
            }
            Ok(acc / beta(n, *delta, ctx.dim()))
        }
        (MethodSpec::Gaussian, MeasureSource::Model(mu)) => {
            let kernel = WeightKernel::new(KernelKind::Gaussian, ctx.dim())?;
            scaled_weight_mean(mu, &kernel, index, x)
        }
        (MethodSpec::BochnerRieszRd { alpha }, MeasureSource::Model(mu)) => {
            let kernel = WeightKernel::new(KernelKind::BochnerRiesz { alpha: *alpha }, ctx.dim())?;
            scaled_weight_mean(mu, &kernel, index, x)
        }
        (m, MeasureSource::Model(mu)) => {
            let set = m.folner_set(index).expect("folner methods only");
            folner_average(mu, &set, x)
        }
        (m, MeasureSource::Table { .. }) => {
            let set = m
                .folner_set(index)
                .ok_or_else(|| Error::Config("method: incompatible with tabulated spectrum".into()))?;
            let pts = lattice_points(&set, ctx.dim())?;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in &pts {
                let phase: f64 = k.iter().zip(x.coords()).map(|(&a, b)| a as f64 * b).sum();
                acc += source.mu_hat_lattice(k)? * unit_phase(phase);
            }
            Ok(acc / pts.len() as f64)
        }
    }
}

fn as_count(index: f64) -> Result<u32> {
    if index.fract() != 0.0 || index < 1.0 || index > u32::MAX as f64 {
        return Err(Error::Config(format!(
            "sweep: torus Bochner-Riesz index {index} must be a positive integer"
        )));
    }
    Ok(index as u32)
}

/// Runs the full sweep: one record per (index, point), in sweep-major order.
pub fn run_scenario(config: &ScenarioConfig, base_dir: &Path) -> Result<Vec<RunRecord>> {
    let source = build_source(config, base_dir)?;
    check_compat(&config.method, &source)?;
    if config.sweep.is_empty() {
        return Err(Error::Config("sweep: must be nonempty".into()));
    }
    if config.sweep.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("sweep: must be strictly increasing".into()));
    }
    if config.points.is_empty() {
        return Err(Error::Config("points: must be nonempty".into()));
    }
    let points = config
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            GroupPoint::new(source.ctx(), p.clone())
                .map_err(|e| Error::Config(format!("points[{i}]: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::with_capacity(config.sweep.len() * points.len());
    for &index in &config.sweep {
        for x in &points {
            let value = eval_method(&source, &config.method, index, x)?;
            let truth = source.truth(x);
            records.push(RunRecord {
                method: config.method.label().to_string(),
                param: config.method.param(),
                index,
                point: x.coords().to_vec(),
                value,
                truth,
                abs_error: (value - truth).norm(),
            });
        }
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanHit {
    pub location: Vec<f64>,
    pub weight: Complex64,
}

/// Grid scan of |average| over the torus: local maxima above the threshold,
/// merged within one grid step (larger magnitude wins; ties break to the
/// lexicographically smaller coordinate).
pub fn atom_scan(
    source: &MeasureSource,
    method: &MethodSpec,
    index: f64,
    h: f64,
    tau: f64,
) -> Result<Vec<ScanHit>> {
    let ctx = source.ctx();
    if !ctx.is_torus() {
        return Err(Error::Config("scan: requires a torus group".into()));
    }
    check_compat(method, source)?;
    if !(h > 0.0 && h <= 0.1) {
        return Err(Error::Config(format!("scan: grid step {h} outside (0, 0.1]")));
    }
    if !(tau > 0.0) {
        return Err(Error::Config("scan: threshold must be > 0".into()));
    }
    if h > 1.0 / (2.0 * index) {
        return Err(Error::Config(format!(
            "scan: grid step {h} too coarse for index {index}; the kernel main lobe would be missed"
        )));
    }
    let d = ctx.dim();
    if d > 2 {
        return Err(Error::Unsupported("scan: grids supported for d <= 2".into()));
    }
    let n = (1.0 / h).ceil() as usize;
    let coords_of = |idx: &[usize]| -> Vec<f64> { idx.iter().map(|&i| i as f64 * h).collect() };

    // evaluate |value| on the full grid
    let grid_indices: Vec<Vec<usize>> = if d == 1 {
        (0..n).map(|i| vec![i]).collect()
    } else {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| vec![i, j]))
            .collect()
    };
    let mut values = Vec::with_capacity(grid_indices.len());
    for idx in &grid_indices {
        let x = GroupPoint::new(ctx, coords_of(idx))?;
        values.push(eval_method(source, method, index, &x)?);
    }
    let flat = |idx: &[usize]| -> usize {
        if d == 1 {
            idx[0]
        } else {
            idx[0] * n + idx[1]
        }
    };

    // local maxima above the threshold
    let mut hits: Vec<ScanHit> = Vec::new();
    for idx in &grid_indices {
        let v = values[flat(idx)];
        if v.norm() <= tau {
            continue;
        }
        let mut is_max = true;
        for axis in 0..d {
            for dir in [-1i64, 1] {
                let mut nb = idx.clone();
                nb[axis] = ((idx[axis] as i64 + dir).rem_euclid(n as i64)) as usize;
                if values[flat(&nb)].norm() > v.norm() {
                    is_max = false;
                }
            }
        }
        if is_max {
            hits.push(ScanHit {
                location: coords_of(idx),
                weight: v,
            });
        }
    }

    // merge hits within one grid step
    let mut merged: Vec<ScanHit> = Vec::new();
    for hit in hits {
        let close = merged.iter_mut().find(|m| {
            m.location
                .iter()
                .zip(&hit.location)
                .all(|(a, b)| torus_gap(*a, *b) <= h + 1e-12)
        });
        match close {
            Some(m) => {
                let keep_new = hit.weight.norm() > m.weight.norm()
                    || (hit.weight.norm() == m.weight.norm() && hit.location < m.location);
                if keep_new {
                    *m = hit;
                }
            }
            None => merged.push(hit),
        }
    }
    merged.sort_by(|a, b| a.location.partial_cmp(&b.location).expect("finite coords"));
    Ok(merged)
}

fn torus_gap(a: f64, b: f64) -> f64 {
    let t = (a - b).abs();
    t.min(1.0 - t)
}

/// Outcome of a log-log rate fit over one point's records.
#[derive(Debug, Clone, PartialEq)]
pub enum RateFit {
    /// every error is zero — recovery is exact, no slope to fit
    Exact,
    PowerLaw { slope: f64, residual: f64 },
}

/// Least-squares slope of log(abs_error) against log(index).
pub fn rate_fit(records: &[RunRecord]) -> Result<RateFit> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.abs_error > 0.0)
        .map(|r| (r.index.ln(), r.abs_error.ln()))
        .collect();
    if pts.is_empty() {
        return Ok(RateFit::Exact);
    }
    if pts.len() < 4 {
        return Err(Error::InvalidArgument(
            "rate fit needs at least 4 records with positive errors".into(),
        ));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(RateFit::PowerLaw { slope, residual })
}
