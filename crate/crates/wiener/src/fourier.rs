//! Closed-form evaluation of μ̂ for model measures, the full DFT on finite
//! abelian groups, and the measure form of Parseval's identity.

use num_complex::Complex64;
use std::io::Write;

use crate::error::{Error, Result};
use crate::group::{char_eval, pairing, unit_phase, GroupContext, FrequencyPoint, GroupPoint};
use crate::measure::{AcKind, Measure};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// sin(z)/z with a Taylor fallback near zero.
pub fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// Fourier transform of the middle-thirds Cantor measure:
/// exp(-πiξ) Π_{k>=1} cos(2πξ/3^k). The product is truncated once the factor
/// argument drops below 1e-8 and the remainder folded in through
/// cos θ = exp(-θ²/2 + O(θ⁴)).
pub fn cantor_hat(xi: f64) -> Complex64 {
    let mut prod = 1.0;
    let mut arg = TAU * xi / 3.0;
    while arg.abs() >= 1e-8 {
        prod *= arg.cos();
        arg /= 3.0;
    }
    // Σ_{j>k} (2πξ 3^{-j})²/2 = (2πξ 3^{-k})²/16 at the first skipped index
    prod *= (-arg * arg * 9.0 / 16.0).exp();
    unit_phase(-0.5 * xi) * prod
}

/// μ̂(γ) = Σ_atoms w·exp(-2πi·pairing(γ, pos)) + continuous contributions.
pub fn mu_hat(mu: &Measure, gamma: &FrequencyPoint) -> Result<Complex64> {
    let ctx = mu.ctx();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in mu.atoms() {
        let p = pairing(ctx, gamma, &a.position)?;
        acc += a.weight * unit_phase(-p);
    }
    acc += mu_hat_continuous(mu, gamma.coords())?;
    Ok(acc)
}

/// μ̂ at raw dual coordinates (atoms plus continuous part); the form the
/// Euclidean quadrature paths consume.
pub fn mu_hat_at(mu: &Measure, xi: &[f64]) -> Result<Complex64> {
    let mut acc = mu_hat_continuous(mu, xi)?;
    for a in mu.atoms() {
        let p: f64 = xi.iter().zip(a.position.coords()).map(|(u, v)| u * v).sum();
        acc += a.weight * unit_phase(-p);
    }
    Ok(acc)
}

/// The non-atomic part of μ̂, evaluated at raw dual coordinates. On `R^d` this
/// accepts arbitrary real frequencies, which is what the quadrature paths need.
pub fn mu_hat_continuous(mu: &Measure, xi: &[f64]) -> Result<Complex64> {
    let ctx = mu.ctx();
    if xi.len() != ctx.dim() {
        return Err(Error::DimensionMismatch {
            expected: ctx.dim(),
            got: xi.len(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for c in mu.ac() {
        acc += c.coefficient * ac_hat(&c.kind, xi);
    }
    if let Some(c) = mu.cantor() {
        acc += c.coefficient * cantor_hat(xi[0]);
    }
    Ok(acc)
}

fn ac_hat(kind: &AcKind, xi: &[f64]) -> Complex64 {
    match kind {
        AcKind::Gaussian { center, width } => {
            let phase: f64 = xi.iter().zip(center).map(|(x, c)| x * c).sum();
            let q: f64 = xi.iter().map(|x| x * x).sum();
            unit_phase(-phase) * (-2.0 * std::f64::consts::PI.powi(2) * width * width * q).exp()
        }
        AcKind::Box {
            center,
            half_widths,
        } => {
            let phase: f64 = xi.iter().zip(center).map(|(x, c)| x * c).sum();
            let prod: f64 = xi
                .iter()
                .zip(half_widths)
                .map(|(x, h)| sinc(TAU * x * h))
                .product();
            unit_phase(-phase) * prod
        }
        AcKind::Lebesgue => {
            if xi.iter().all(|&x| x == 0.0) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
    }
}

/// μ̂ tabulated over the full dual of a finite abelian group, indexed in
/// mixed-radix lexicographic order.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    ctx: GroupContext,
    values: Vec<Complex64>,
}

impl SpectrumTable {
    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coordinates of the i-th dual element in lexicographic order.
    pub fn coords_at(&self, index: usize) -> Vec<i64> {
        let GroupContext::FiniteAbelian { moduli } = &self.ctx else {
            unreachable!("spectrum tables only exist on finite groups")
        };
        index_to_coords(index, moduli)
    }

    /// CSV export: one row per frequency, columns k_1..k_d, re, im.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        let d = self.ctx.dim();
        let header: Vec<String> = (1..=d)
            .map(|j| format!("k_{j}"))
            .chain(["re".into(), "im".into()])
            .collect();
        writeln!(w, "{}", header.join(","))?;
        for (i, v) in self.values.iter().enumerate() {
            let coords = self.coords_at(i);
            let mut row: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            row.push(v.re.to_string());
            row.push(v.im.to_string());
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

pub fn index_to_coords(mut index: usize, moduli: &[u64]) -> Vec<i64> {
    let mut out = vec![0i64; moduli.len()];
    for j in (0..moduli.len()).rev() {
        let m = moduli[j] as usize;
        out[j] = (index % m) as i64;
        index /= m;
    }
    out
}

pub fn coords_to_index(coords: &[i64], moduli: &[u64]) -> usize {
    let mut idx = 0usize;
    for (c, &m) in coords.iter().zip(moduli) {
        idx = idx * m as usize + c.rem_euclid(m as i64) as usize;
    }
    idx
}

/// All group elements of a finite context in lexicographic order.
pub fn finite_points(ctx: &GroupContext) -> Result<Vec<GroupPoint>> {
    let GroupContext::FiniteAbelian { moduli } = ctx else {
        return Err(Error::Unsupported("finite group enumeration requires a finite context".into()));
    };
    let order: u64 = moduli.iter().product();
    (0..order as usize)
        .map(|i| {
            let c = index_to_coords(i, moduli);
            GroupPoint::new(ctx, c.iter().map(|&v| v as f64).collect())
        })
        .collect()
}

/// All dual elements (same coordinate set — the group is self-dual).
pub fn finite_frequencies(ctx: &GroupContext) -> Result<Vec<FrequencyPoint>> {
    let GroupContext::FiniteAbelian { moduli } = ctx else {
        return Err(Error::Unsupported("finite dual enumeration requires a finite context".into()));
    };
    let order: u64 = moduli.iter().product();
    (0..order as usize)
        .map(|i| {
            let c = index_to_coords(i, moduli);
            FrequencyPoint::new(ctx, c.iter().map(|&v| v as f64).collect())
        })
        .collect()
}

/// Full DFT of a purely atomic measure on a finite group:
/// table[γ] = Σ_x μ({x})·conj(γ(x)).
pub fn finite_dft(mu: &Measure) -> Result<SpectrumTable> {
    let ctx = mu.ctx();
    if !ctx.is_finite() {
        return Err(Error::Unsupported("finite_dft requires a finite group".into()));
    }
    if !mu.is_purely_atomic() {
        return Err(Error::InvalidArgument(
            "finite groups admit only atomic measures".into(),
        ));
    }
    let freqs = finite_frequencies(ctx)?;
    let values = freqs
        .iter()
        .map(|g| mu_hat(mu, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumTable {
        ctx: ctx.clone(),
        values,
    })
}

/// Exact inversion: weights[x] = (1/|G|)·Σ_γ table[γ]·γ(x), returned in the
/// same lexicographic element order.
pub fn finite_inverse(table: &SpectrumTable) -> Result<Vec<Complex64>> {
    let ctx = table.ctx();
    let freqs = finite_frequencies(ctx)?;
    let points = finite_points(ctx)?;
    let inv = 1.0 / table.len() as f64;
    let mut out = Vec::with_capacity(points.len());
    for x in &points {
        let mut acc = Complex64::new(0.0, 0.0);
        for (g, v) in freqs.iter().zip(table.values()) {
            acc += v * char_eval(ctx, g, x)?;
        }
        out.push(acc * inv);
    }
    Ok(out)
}

/// Both sides of Parseval's identity for measures on a finite group, computed
/// by independent double sums:
/// lhs = Σ_x [(1/|G|)Σ_γ g(γ)·conj(γ(x))]·μ({x}), rhs = (1/|G|)Σ_γ g(γ)·μ̂(γ).
/// The conjugate on the left is the forward transform on the dual group; it
/// matches the conjugate inside μ̂ on the right.
pub fn parseval_measure_check(
    g: &[Complex64],
    mu: &Measure,
) -> Result<(Complex64, Complex64, f64)> {
    let ctx = mu.ctx();
    let order = ctx
        .order()
        .ok_or_else(|| Error::Unsupported("parseval check requires a finite group".into()))?
        as usize;
    if g.len() != order {
        return Err(Error::DimensionMismatch {
            expected: order,
            got: g.len(),
        });
    }
    let freqs = finite_frequencies(ctx)?;
    let inv = 1.0 / order as f64;

    let mut lhs = Complex64::new(0.0, 0.0);
    for a in mu.atoms() {
        let mut f_inv_g = Complex64::new(0.0, 0.0);
        for (gv, gamma) in g.iter().zip(&freqs) {
            f_inv_g += gv * char_eval(ctx, gamma, &a.position)?.conj();
        }
        lhs += f_inv_g * inv * a.weight;
    }

    let mut rhs = Complex64::new(0.0, 0.0);
    for (gv, gamma) in g.iter().zip(&freqs) {
        rhs += gv * mu_hat(mu, gamma)?;
    }
    rhs *= inv;

    Ok((lhs, rhs, (lhs - rhs).norm()))
}
