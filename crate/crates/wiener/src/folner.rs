//! Følner-set averages of μ̂: lattice enumeration on `Z^d`, symmetric-difference
//! defects, and the cube/ball/box/ellipsoid averages on `T^d` and `R^d`.
//!
//! On the torus the average is the exact finite sum
//! `(1/|F|) Σ_{k∈F} γ_k(x) μ̂(k)`. On `R^d` atoms are handled through the
//! closed-form inverse transform of the set indicator (products of sinc for
//! boxes, a Bessel expression for balls) and the continuous part through
//! frequency-side panel quadrature.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{mu_hat, mu_hat_continuous, sinc};
use crate::group::{unit_phase, FrequencyPoint, GroupContext, GroupPoint};
use crate::measure::Measure;
use crate::quad::{integrate_box_c, integrate_ellipse_c, PanelAxis};
use crate::record::RunRecord;
use crate::special::{bessel_j, gamma_fn};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// An averaging region in the dual group. `Cube` and `Ball` are indexed by a
/// single size parameter; `Box` and `Ellipsoid` carry per-axis extents.
#[derive(Debug, Clone, PartialEq)]
pub enum FolnerSet {
    Cube { n: f64 },
    Ball { n: f64 },
    Box { half_widths: Vec<f64> },
    Ellipsoid { semi_axes: Vec<f64> },
}

impl FolnerSet {
    pub fn validate(&self, d: usize) -> Result<()> {
        match self {
            FolnerSet::Cube { n } | FolnerSet::Ball { n } => {
                if !(*n >= 0.0) {
                    return Err(Error::InvalidArgument("set size must be >= 0".into()));
                }
            }
            FolnerSet::Box { half_widths } => {
                if half_widths.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: half_widths.len(),
                    });
                }
                if half_widths.iter().any(|&h| !(h > 0.0)) {
                    return Err(Error::InvalidArgument("half-widths must be > 0".into()));
                }
            }
            FolnerSet::Ellipsoid { semi_axes } => {
                if semi_axes.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: semi_axes.len(),
                    });
                }
                if semi_axes.iter().any(|&a| !(a > 0.0)) {
                    return Err(Error::InvalidArgument("semi-axes must be > 0".into()));
                }
            }
        }
        Ok(())
    }

    /// Inner radius ρ: the largest ball fitting inside the body.
    pub fn inner_radius(&self, _d: usize) -> f64 {
        match self {
            FolnerSet::Cube { n } | FolnerSet::Ball { n } => *n,
            FolnerSet::Box { half_widths } => half_widths.iter().cloned().fold(f64::MAX, f64::min),
            FolnerSet::Ellipsoid { semi_axes } => semi_axes.iter().cloned().fold(f64::MAX, f64::min),
        }
    }

    /// Lebesgue volume in `R^d`.
    pub fn volume(&self, d: usize) -> f64 {
        match self {
            FolnerSet::Cube { n } => (2.0 * n).powi(d as i32),
            FolnerSet::Ball { n } => unit_ball_volume(d) * n.powi(d as i32),
            FolnerSet::Box { half_widths } => half_widths.iter().map(|h| 2.0 * h).product(),
            FolnerSet::Ellipsoid { semi_axes } => {
                unit_ball_volume(d) * semi_axes.iter().product::<f64>()
            }
        }
    }

    fn contains_lattice(&self, k: &[i64]) -> bool {
        match self {
            FolnerSet::Cube { n } => k.iter().all(|&c| (c.abs() as f64) <= *n),
            FolnerSet::Ball { n } => {
                let q: i64 = k.iter().map(|&c| c * c).sum();
                (q as f64) <= n * n
            }
            FolnerSet::Box { half_widths } => k
                .iter()
                .zip(half_widths)
                .all(|(&c, &h)| (c.abs() as f64) <= h),
            FolnerSet::Ellipsoid { semi_axes } => {
                let q: f64 = k
                    .iter()
                    .zip(semi_axes)
                    .map(|(&c, &a)| (c as f64 / a).powi(2))
                    .sum();
                q <= 1.0
            }
        }
    }

    fn lattice_bounds(&self, d: usize) -> Vec<i64> {
        match self {
            FolnerSet::Cube { n } | FolnerSet::Ball { n } => vec![n.floor() as i64; d],
            FolnerSet::Box { half_widths } => {
                half_widths.iter().map(|h| h.floor() as i64).collect()
            }
            FolnerSet::Ellipsoid { semi_axes } => {
                semi_axes.iter().map(|a| a.floor() as i64).collect()
            }
        }
    }
}

pub fn unit_ball_volume(d: usize) -> f64 {
    std::f64::consts::PI.powf(d as f64 / 2.0) / gamma_fn(d as f64 / 2.0 + 1.0).unwrap()
}

/// Exact enumeration of `F ∩ Z^d` by bounding-box scan with integer
/// membership tests.
pub fn lattice_points(set: &FolnerSet, d: usize) -> Result<Vec<Vec<i64>>> {
    set.validate(d)?;
    let bounds = set.lattice_bounds(d);
    let mut out = Vec::new();
    let mut k = bounds.iter().map(|b| -b).collect::<Vec<i64>>();
    loop {
        if set.contains_lattice(&k) {
            out.push(k.clone());
        }
        // odometer increment
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            k[j] += 1;
            if k[j] <= bounds[j] {
                break;
            }
            k[j] = -bounds[j];
        }
    }
}

/// Symmetric-difference defect |F Δ (γ0 + F)| / |F| for a set in `Z^d`.
pub fn folner_defect(set: &FolnerSet, d: usize, gamma0: &[i64]) -> Result<f64> {
    if gamma0.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: gamma0.len(),
        });
    }
    let pts = lattice_points(set, d)?;
    if pts.is_empty() {
        return Err(Error::InvalidArgument("empty Følner set".into()));
    }
    // |F Δ (γ0+F)| = 2 · |F \ (γ0+F)|; k ∈ γ0+F iff k−γ0 ∈ F.
    let mut missing = 0usize;
    for k in &pts {
        let shifted: Vec<i64> = k.iter().zip(gamma0).map(|(a, b)| a - b).collect();
        if !set.contains_lattice(&shifted) {
            missing += 1;
        }
    }
    Ok(2.0 * missing as f64 / pts.len() as f64)
}

/// The normalized indicator transform φ_F(t) = (1/m(F)) ∫_F e^{2πi⟨t,ξ⟩} dξ
/// for the symmetric bodies supported on `R^d`.
pub fn indicator_transform(set: &FolnerSet, d: usize, t: &[f64]) -> Result<f64> {
    set.validate(d)?;
    match set {
        FolnerSet::Cube { n } => Ok(t.iter().map(|&tm| sinc(TAU * n * tm)).product()),
        FolnerSet::Box { half_widths } => Ok(t
            .iter()
            .zip(half_widths)
            .map(|(&tm, &h)| sinc(TAU * h * tm))
            .product()),
        FolnerSet::Ball { n } => ball_indicator_transform(d, &t.iter().map(|&v| n * v).collect::<Vec<_>>()),
        FolnerSet::Ellipsoid { semi_axes } => {
            let s: Vec<f64> = t.iter().zip(semi_axes).map(|(&tm, &a)| a * tm).collect();
            ball_indicator_transform(d, &s)
        }
    }
}

/// Normalized transform of the unit-ball indicator at s:
/// Γ(d/2+1)·J_{d/2}(2π|s|)/(π|s|)^{d/2}, with the series limit near 0.
fn ball_indicator_transform(d: usize, s: &[f64]) -> Result<f64> {
    let nu = d as f64 / 2.0;
    let r = s.iter().map(|v| v * v).sum::<f64>().sqrt();
    let z = TAU * r;
    if z < 1e-6 {
        // Γ(ν+1) J_ν(z)/(z/2)^ν = 1 − z²/(4(ν+1)) + O(z⁴)
        return Ok(1.0 - z * z / (4.0 * (nu + 1.0)));
    }
    Ok(gamma_fn(nu + 1.0)? * bessel_j(nu, z)? / (0.5 * z).powf(nu))
}

/// The Følner average of μ̂ over `set`, modulated to the probe point x.
pub fn folner_average(mu: &Measure, set: &FolnerSet, x: &GroupPoint) -> Result<Complex64> {
    let ctx = mu.ctx();
    let d = ctx.dim();
    set.validate(d)?;
    if x.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: x.dim(),
        });
    }
    match ctx {
        GroupContext::Torus { .. } => {
            let pts = lattice_points(set, d)?;
            if pts.is_empty() {
                return Err(Error::InvalidArgument("empty Følner set".into()));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for k in &pts {
                let gamma = FrequencyPoint::from_lattice(ctx, k)?;
                let phase: f64 = k.iter().zip(x.coords()).map(|(&a, b)| a as f64 * b).sum();
                acc += unit_phase(phase) * mu_hat(mu, &gamma)?;
            }
            Ok(acc / pts.len() as f64)
        }
        GroupContext::Euclidean { .. } => {
            // atoms through the spatial closed form
            let mut acc = Complex64::new(0.0, 0.0);
            for a in mu.atoms() {
                let t: Vec<f64> = x
                    .coords()
                    .iter()
                    .zip(a.position.coords())
                    .map(|(xc, pc)| xc - pc)
                    .collect();
                acc += a.weight * indicator_transform(set, d, &t)?;
            }
            // continuous part through frequency-side quadrature
            if !(mu.ac().is_empty() && mu.cantor().is_none()) {
                acc += continuous_average(mu, set, x)? / set.volume(d);
            }
            Ok(acc)
        }
        GroupContext::FiniteAbelian { .. } => Err(Error::Unsupported(
            "Følner averaging on finite groups goes through the finite oracle".into(),
        )),
    }
}

/// ∫_F e^{2πi⟨x,ξ⟩} μ̂_c(ξ) dξ for the non-atomic part of μ on `R^d`.
fn continuous_average(mu: &Measure, set: &FolnerSet, x: &GroupPoint) -> Result<Complex64> {
    let d = mu.ctx().dim();
    let osc = oscillation_scale(mu, x);
    let integrand = |xi: &[f64]| -> Complex64 {
        let phase: f64 = x.coords().iter().zip(xi).map(|(a, b)| a * b).sum();
        unit_phase(phase) * mu_hat_continuous(mu, xi).expect("dimension checked")
    };
    match set {
        FolnerSet::Cube { n } => {
            let axes: Vec<PanelAxis> = (0..d).map(|_| PanelAxis::new(-n, *n, osc)).collect();
            Ok(integrate_box_c(&axes, integrand))
        }
        FolnerSet::Box { half_widths } => {
            let axes: Vec<PanelAxis> = half_widths
                .iter()
                .map(|&h| PanelAxis::new(-h, h, osc))
                .collect();
            Ok(integrate_box_c(&axes, integrand))
        }
        FolnerSet::Ball { n } => match d {
            1 => {
                let axes = [PanelAxis::new(-n, *n, osc)];
                Ok(integrate_box_c(&axes, integrand))
            }
            2 => Ok(integrate_ellipse_c([*n, *n], osc, integrand)),
            _ => Err(Error::Unsupported(
                "continuous components in ball averages require d <= 2".into(),
            )),
        },
        FolnerSet::Ellipsoid { semi_axes } => match d {
            1 => {
                let a = semi_axes[0];
                let axes = [PanelAxis::new(-a, a, osc)];
                Ok(integrate_box_c(&axes, integrand))
            }
            2 => Ok(integrate_ellipse_c([semi_axes[0], semi_axes[1]], osc, integrand)),
            _ => Err(Error::Unsupported(
                "continuous components in ellipsoid averages require d <= 2".into(),
            )),
        },
    }
}

/// Largest spatial scale the frequency-side integrand oscillates against:
/// probe point and AC centers/extents.
pub fn oscillation_scale(mu: &Measure, x: &GroupPoint) -> f64 {
    let mut s: f64 = 1.0;
    for c in x.coords() {
        s = s.max(c.abs());
    }
    for comp in mu.ac() {
        match &comp.kind {
            crate::measure::AcKind::Gaussian { center, width } => {
                for c in center {
                    s = s.max(c.abs());
                }
                s = s.max(*width);
            }
            crate::measure::AcKind::Box {
                center,
                half_widths,
            } => {
                for (c, h) in center.iter().zip(half_widths) {
                    s = s.max(c.abs() + h);
                }
            }
            crate::measure::AcKind::Lebesgue => {}
        }
    }
    if mu.cantor().is_some() {
        s = s.max(1.0);
    }
    s
}

/// A family n ↦ F_n of averaging sets.
pub struct FolnerSequence {
    gen: Box<dyn Fn(f64) -> FolnerSet + Send + Sync>,
    label: String,
}

impl FolnerSequence {
    pub fn cubes() -> Self {
        FolnerSequence {
            gen: Box::new(|n| FolnerSet::Cube { n }),
            label: "folner_cube".into(),
        }
    }

    pub fn balls() -> Self {
        FolnerSequence {
            gen: Box::new(|n| FolnerSet::Ball { n }),
            label: "folner_ball".into(),
        }
    }

    /// Boxes with the base half-widths scaled by the index.
    pub fn boxes(base: Vec<f64>) -> Self {
        FolnerSequence {
            gen: Box::new(move |n| FolnerSet::Box {
                half_widths: base.iter().map(|h| h * n).collect(),
            }),
            label: "folner_box".into(),
        }
    }

    /// Ellipsoids with the base semi-axes scaled by the index.
    pub fn ellipsoids(base: Vec<f64>) -> Self {
        FolnerSequence {
            gen: Box::new(move |n| FolnerSet::Ellipsoid {
                semi_axes: base.iter().map(|a| a * n).collect(),
            }),
            label: "folner_ellipsoid".into(),
        }
    }

    pub fn set_at(&self, n: f64) -> FolnerSet {
        (self.gen)(n)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// One RunRecord per index: value = folner_average, truth = μ({x}).
pub fn wiener_recover(
    mu: &Measure,
    seq: &FolnerSequence,
    x: &GroupPoint,
    indices: &[f64],
) -> Result<Vec<RunRecord>> {
    if indices.is_empty() {
        return Err(Error::InvalidArgument("index list must be nonempty".into()));
    }
    if indices.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("indices must be increasing".into()));
    }
    let d = mu.ctx().dim();
    // the evaluated range must carry strictly growing measure
    if mu.ctx().is_euclidean() {
        let mut last = -1.0;
        for &n in indices {
            let v = seq.set_at(n).volume(d);
            if v <= last {
                return Err(Error::InvalidArgument(
                    "sequence measures must be strictly increasing".into(),
                ));
            }
            last = v;
        }
    }
    let truth = mu.true_atom(x);
    indices
        .iter()
        .map(|&n| {
            let value = folner_average(mu, &seq.set_at(n), x)?;
            Ok(RunRecord {
                method: seq.label().to_string(),
                param: None,
                index: n,
                point: x.coords().to_vec(),
                value,
                truth,
                abs_error: (value - truth).norm(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{AcComponent, AcKind, Atom, CantorComponent};

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn gp(ctx: &GroupContext, v: &[f64]) -> GroupPoint {
        GroupPoint::new(ctx, v.to_vec()).unwrap()
    }

    fn delta(ctx: &GroupContext, pos: &[f64], w: Complex64) -> Measure {
        Measure::atomic(
            ctx.clone(),
            vec![Atom {
                position: gp(ctx, pos),
                weight: w,
            }],
        )
        .unwrap()
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(lattice_points(&FolnerSet::Ball { n: 0.0 }, 2).unwrap().len(), 1);
        let cube = lattice_points(&FolnerSet::Cube { n: 2.0 }, 1).unwrap();
        assert_eq!(cube, vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
        // brute-force oracle over the bounding box
        let mut count = 0;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                if a * a + b * b <= 4 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 13);
        assert_eq!(lattice_points(&FolnerSet::Ball { n: 2.0 }, 2).unwrap().len(), 13);
    }

    #[test]
    fn defect_closed_forms() {
        let set = FolnerSet::Ball { n: 5.0 };
        assert_eq!(folner_defect(&set, 2, &[0, 0]).unwrap(), 0.0);
        for n in 1..=20 {
            let got = folner_defect(&FolnerSet::Cube { n: n as f64 }, 1, &[1]).unwrap();
            let want = 2.0 / (2.0 * n as f64 + 1.0);
            assert!((got - want).abs() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn ball_defect_decreases_in_z2() {
        let mut prev = f64::MAX;
        for n in (10..=100).step_by(10) {
            let d = folner_defect(&FolnerSet::Ball { n: n as f64 }, 2, &[1, 0]).unwrap();
            assert!(d < prev, "n={n}: {d} vs {prev}");
            prev = d;
        }
        assert!(prev < 0.05);
    }

    #[test]
    fn torus_average_of_delta_at_origin() {
        let ctx = GroupContext::Torus { d: 1 };
        let mu = delta(&ctx, &[0.0], one());
        for n in [1.0, 5.0, 40.0] {
            let v = folner_average(&mu, &FolnerSet::Cube { n }, &ctx.identity()).unwrap();
            assert!((v - one()).norm() < 1e-13);
        }
    }

    #[test]
    fn torus_average_of_delta_at_half() {
        // Σ_{-N}^{N} (-1)^k = (-1)^N, so the average is (-1)^N/(2N+1)
        let ctx = GroupContext::Torus { d: 1 };
        let mu = delta(&ctx, &[0.5], one());
        for n in [3.0, 10.0, 57.0] {
            let v = folner_average(&mu, &FolnerSet::Cube { n }, &ctx.identity()).unwrap();
            let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
            let want = sign / (2.0 * n + 1.0);
            assert!((v.re - want).abs() < 1e-13 && v.im.abs() < 1e-13);
        }
    }

    #[test]
    fn euclidean_box_recovers_atom_exactly_at_its_position() {
        let ctx = GroupContext::Euclidean { d: 2 };
        let x0 = gp(&ctx, &[0.7, -1.1]);
        let mu = delta(&ctx, &[0.7, -1.1], one());
        for r in [0.5, 3.0, 100.0] {
            let v = folner_average(
                &mu,
                &FolnerSet::Box {
                    half_widths: vec![r, r],
                },
                &x0,
            )
            .unwrap();
            assert!((v - one()).norm() < 1e-13, "r={r}");
        }
    }

    #[test]
    fn frequency_and_spatial_paths_agree_on_boxes() {
        // purely atomic measure: quadrature of μ̂ over the box against the
        // sinc closed form
        let ctx = GroupContext::Euclidean { d: 2 };
        let mu = Measure::atomic(
            ctx.clone(),
            vec![
                Atom {
                    position: gp(&ctx, &[0.3, -0.2]),
                    weight: Complex64::new(0.5, 0.1),
                },
                Atom {
                    position: gp(&ctx, &[-1.0, 0.8]),
                    weight: Complex64::new(-0.2, 0.4),
                },
            ],
        )
        .unwrap();
        let x = gp(&ctx, &[0.25, 0.4]);
        let set = FolnerSet::Box {
            half_widths: vec![4.0, 6.0],
        };
        let spatial = folner_average(&mu, &set, &x).unwrap();
        // frequency side by direct quadrature
        let osc = 2.0;
        let axes = [PanelAxis::new(-4.0, 4.0, osc), PanelAxis::new(-6.0, 6.0, osc)];
        let freq = integrate_box_c(&axes, |xi| {
            let mut muh = Complex64::new(0.0, 0.0);
            for a in mu.atoms() {
                let p: f64 = xi.iter().zip(a.position.coords()).map(|(u, v)| u * v).sum();
                muh += a.weight * unit_phase(-p);
            }
            let ph: f64 = xi.iter().zip(x.coords()).map(|(u, v)| u * v).sum();
            muh * unit_phase(ph)
        }) / set.volume(2);
        assert!((spatial - freq).norm() < 1e-6, "{spatial} vs {freq}");
    }

    #[test]
    fn gaussian_component_average_shrinks() {
        let ctx = GroupContext::Euclidean { d: 1 };
        let mu = Measure::new(
            ctx.clone(),
            vec![Atom {
                position: gp(&ctx, &[0.0]),
                weight: one(),
            }],
            vec![AcComponent {
                kind: AcKind::Gaussian {
                    center: vec![0.4],
                    width: 0.3,
                },
                coefficient: one(),
            }],
            None,
        )
        .unwrap();
        let x = ctx.identity();
        let e = |r: f64| {
            (folner_average(&mu, &FolnerSet::Cube { n: r }, &x).unwrap() - one()).norm()
        };
        let e10 = e(10.0);
        let e100 = e(100.0);
        assert!(e100 < e10);
        assert!(e100 < 0.01, "error at R=100: {e100}");
    }

    #[test]
    fn cantor_average_on_line() {
        // Cantor component on R: no atoms, cube averages head toward 0.
        let ctx = GroupContext::Euclidean { d: 1 };
        let mu = Measure::new(
            ctx.clone(),
            vec![],
            vec![],
            Some(CantorComponent { coefficient: one() }),
        )
        .unwrap();
        let x = gp(&ctx, &[0.25]);
        let v = folner_average(&mu, &FolnerSet::Cube { n: 200.0 }, &x).unwrap();
        assert!(v.norm() < 0.1, "{v}");
    }

    #[test]
    fn linearity_and_translation_covariance() {
        let ctx = GroupContext::Torus { d: 1 };
        let mu = delta(&ctx, &[1.0 / 3.0], Complex64::new(0.25, 0.0));
        let nu = delta(&ctx, &[0.5], Complex64::new(0.5, 0.0));
        let set = FolnerSet::Cube { n: 12.0 };
        let x = gp(&ctx, &[0.1]);
        let combined = Measure::atomic(
            ctx.clone(),
            mu.atoms().iter().chain(nu.atoms()).cloned().collect(),
        )
        .unwrap();
        let lhs = folner_average(&combined, &set, &x).unwrap();
        let rhs =
            folner_average(&mu, &set, &x).unwrap() + folner_average(&nu, &set, &x).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);

        let x0 = gp(&ctx, &[0.2]);
        let shifted = mu.translate(&x0).unwrap();
        let lhs = folner_average(&shifted, &set, &x.add(&ctx, &x0).unwrap()).unwrap();
        let rhs = folner_average(&mu, &set, &x).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn average_bounded_by_total_variation() {
        let ctx = GroupContext::Torus { d: 2 };
        let mu = Measure::atomic(
            ctx.clone(),
            vec![
                Atom {
                    position: gp(&ctx, &[0.3, 0.6]),
                    weight: Complex64::new(0.4, -0.3),
                },
                Atom {
                    position: gp(&ctx, &[0.9, 0.1]),
                    weight: Complex64::new(-0.1, 0.7),
                },
            ],
        )
        .unwrap();
        let bound = mu.total_variation_bound();
        for n in [1.0, 4.0, 9.0] {
            for set in [FolnerSet::Cube { n }, FolnerSet::Ball { n }] {
                let v = folner_average(&mu, &set, &gp(&ctx, &[0.17, 0.77])).unwrap();
                assert!(v.norm() <= bound + 1e-12);
            }
        }
    }

    #[test]
    fn recover_records_envelope() {
        // 0.25 δ_{1/3}: |A_N| <= 0.25/((2N+1) sin(π/3))
        let ctx = GroupContext::Torus { d: 1 };
        let mu = delta(&ctx, &[1.0 / 3.0], Complex64::new(0.25, 0.0));
        let seq = FolnerSequence::cubes();
        let indices: Vec<f64> = (1..=60).map(|n| n as f64).collect();
        let recs = wiener_recover(&mu, &seq, &ctx.identity(), &indices).unwrap();
        for r in &recs {
            let bound = 0.25 / ((2.0 * r.index + 1.0) * (std::f64::consts::PI / 3.0).sin());
            assert!(r.value.norm() <= bound + 1e-12, "N={}", r.index);
            assert_eq!(r.truth, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn recover_rejects_bad_indices() {
        let ctx = GroupContext::Torus { d: 1 };
        let mu = delta(&ctx, &[0.0], one());
        let seq = FolnerSequence::cubes();
        assert!(wiener_recover(&mu, &seq, &ctx.identity(), &[]).is_err());
        assert!(wiener_recover(&mu, &seq, &ctx.identity(), &[5.0, 2.0]).is_err());
    }
}
