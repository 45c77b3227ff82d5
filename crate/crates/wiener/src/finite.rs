//! Exact end-to-end recovery on finite abelian groups, where the averaging
//! identity is a finite Fourier inversion rather than a limit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{finite_frequencies, mu_hat};
use crate::group::{char_eval, GroupPoint};
use crate::measure::Measure;

/// (1/|Ĝ|) Σ_γ γ(x) μ̂(γ): the full-dual average, equal to μ({x}) exactly.
pub fn exact_wiener(mu: &Measure, x: &GroupPoint) -> Result<Complex64> {
    let ctx = mu.ctx();
    if !ctx.is_finite() {
        return Err(Error::Unsupported("exact_wiener requires a finite group".into()));
    }
    let freqs = finite_frequencies(ctx)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for g in &freqs {
        acc += char_eval(ctx, g, x)? * mu_hat(mu, g)?;
    }
    Ok(acc / freqs.len() as f64)
}

/// Partial average over the first `count` dual elements in lexicographic
/// order — the exhausting-box sequence used by the cross check.
pub fn partial_dual_average(mu: &Measure, count: usize, x: &GroupPoint) -> Result<Complex64> {
    let ctx = mu.ctx();
    if !ctx.is_finite() {
        return Err(Error::Unsupported("partial averaging requires a finite group".into()));
    }
    let freqs = finite_frequencies(ctx)?;
    if count == 0 || count > freqs.len() {
        return Err(Error::InvalidArgument(format!(
            "subset size {count} outside 1..={}",
            freqs.len()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for g in &freqs[..count] {
        acc += char_eval(ctx, g, x)? * mu_hat(mu, g)?;
    }
    Ok(acc / count as f64)
}

/// Error curve of the exhausting partial averages against the exact value.
#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    pub steps: Vec<(usize, f64)>,
    pub final_error: f64,
}

/// Compares `exact_wiener` against the partial averages over growing
/// lexicographic prefixes of the dual; at the final index (the full dual)
/// they coincide exactly.
pub fn oracle_cross_check(mu: &Measure, x: &GroupPoint) -> Result<CrossCheckReport> {
    let order = mu
        .ctx()
        .order()
        .ok_or_else(|| Error::Unsupported("cross check requires a finite group".into()))?
        as usize;
    let truth = mu.true_atom(x);
    let mut steps = Vec::new();
    let mut count = 1;
    while count < order {
        let v = partial_dual_average(mu, count, x)?;
        steps.push((count, (v - truth).norm()));
        count = (count * 2).min(order);
    }
    let final_value = partial_dual_average(mu, order, x)?;
    let final_error = (final_value - truth).norm();
    steps.push((order, final_error));
    Ok(CrossCheckReport { steps, final_error })
}
