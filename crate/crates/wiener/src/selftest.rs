//! Quick internal consistency battery behind the `selftest` subcommand.
//! Each check is cheap, deterministic, and exercises one module boundary.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite::exact_wiener;
use crate::folner::{folner_average, FolnerSet};
use crate::fourier::{cantor_hat, parseval_measure_check};
use crate::group::{char_eval, FrequencyPoint, GroupContext, GroupPoint, unit_phase};
use crate::measure::{Atom, Measure};
use crate::quad::GaussLegendre;
use crate::special::{bessel_j, gamma_fn};
use crate::torus_br::{abel_identity_check, beta, dirichlet_spherical};
use crate::weighted::{m_alpha_hat, scaled_weight_mean, KernelKind, WeightKernel};

fn approx(name: &str, got: f64, want: f64, tol: f64) -> Result<()> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(Error::Numeric(format!(
            "{name}: got {got}, expected {want} (tol {tol})"
        )))
    }
}

fn check_characters() -> Result<()> {
    let ctx = GroupContext::FiniteAbelian { moduli: vec![12] };
    let g = FrequencyPoint::from_lattice(&ctx, &[5])?;
    let a = GroupPoint::new(&ctx, vec![3.0])?;
    let b = GroupPoint::new(&ctx, vec![7.0])?;
    let lhs = char_eval(&ctx, &g, &a.add(&ctx, &b)?)?;
    let rhs = char_eval(&ctx, &g, &a)? * char_eval(&ctx, &g, &b)?;
    approx("character homomorphism", (lhs - rhs).norm(), 0.0, 1e-13)?;
    approx("unit phase modulus", unit_phase(0.37).norm(), 1.0, 1e-14)
}

fn check_special() -> Result<()> {
    approx("gamma(5)", gamma_fn(5.0)?, 24.0, 1e-10)?;
    approx("gamma(0.5)", gamma_fn(0.5)?, std::f64::consts::PI.sqrt(), 1e-12)?;
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x
    let x = 7.3_f64;
    let want = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
    approx("bessel half-integer", bessel_j(0.5, x)?, want, 1e-10)?;
    if bessel_j(3.0, 800.0)?.abs() > 0.05 {
        return Err(Error::Numeric("bessel large-argument envelope violated".into()));
    }
    Ok(())
}

fn check_quadrature() -> Result<()> {
    let gl = GaussLegendre::new(12);
    let got = gl.integrate(-1.0, 1.0, |x| x * x * x * x);
    approx("gauss-legendre quartic", got, 0.4, 1e-13)
}

fn check_cantor() -> Result<()> {
    let xi = 2.7_f64;
    let lhs = cantor_hat(xi);
    let rhs = unit_phase(-xi / 3.0) * (2.0 * std::f64::consts::PI * xi / 3.0).cos() * cantor_hat(xi / 3.0);
    approx("cantor self-similarity", (lhs - rhs).norm(), 0.0, 1e-12)?;
    approx("cantor |mu_hat(1)|", cantor_hat(1.0).norm(), 0.371437, 5e-6)
}

fn check_torus_kernels() -> Result<()> {
    let x = 0.237;
    let want = ((2.0 * 8.0 + 1.0) * std::f64::consts::PI * x).sin()
        / (std::f64::consts::PI * x).sin();
    approx("dirichlet closed form", dirichlet_spherical(8, 1, &[x]).re, want, 1e-9)?;
    approx("beta(3, 1, 1)", beta(3, 1.0, 1), 35.0 / 9.0, 1e-12)?;
    let (direct, rearranged, _) = abel_identity_check(6, 0.5, 1, &[0.21])?;
    approx("abel rearrangement", (direct - rearranged).norm(), 0.0, 1e-10)
}

fn check_folner_torus() -> Result<()> {
    let ctx = GroupContext::Torus { d: 1 };
    let mu = Measure::atomic(
        ctx.clone(),
        vec![Atom {
            position: GroupPoint::new(&ctx, vec![0.25])?,
            weight: Complex64::new(0.6, 0.0),
        }],
    )?;
    let at = folner_average(&mu, &FolnerSet::Cube { n: 40.0 }, &GroupPoint::new(&ctx, vec![0.25])?)?;
    approx("folner atom recovery", (at - Complex64::new(0.6, 0.0)).norm(), 0.0, 1e-12)
}

fn check_weighted() -> Result<()> {
    // d = 2, alpha = 1: value at the origin is pi/2
    approx(
        "bochner-riesz transform at 0",
        m_alpha_hat(&[0.0, 0.0], 2, 1.0)?,
        std::f64::consts::FRAC_PI_2,
        1e-10,
    )?;
    let ctx = GroupContext::Euclidean { d: 1 };
    let mu = Measure::atomic(
        ctx.clone(),
        vec![Atom {
            position: GroupPoint::new(&ctx, vec![1.5])?,
            weight: Complex64::new(0.8, 0.0),
        }],
    )?;
    let kernel = WeightKernel::new(KernelKind::Gaussian, 1)?;
    let v = scaled_weight_mean(&mu, &kernel, 10.0, &GroupPoint::new(&ctx, vec![1.5])?)?;
    approx("gaussian mean point mass", (v - Complex64::new(0.8, 0.0)).norm(), 0.0, 1e-12)
}

fn check_finite() -> Result<()> {
    let ctx = GroupContext::FiniteAbelian { moduli: vec![6, 4] };
    let x = GroupPoint::new(&ctx, vec![2.0, 3.0])?;
    let mu = Measure::atomic(
        ctx.clone(),
        vec![Atom {
            position: x.clone(),
            weight: Complex64::new(0.0, 0.7),
        }],
    )?;
    let v = exact_wiener(&mu, &x)?;
    approx("finite exact recovery", (v - Complex64::new(0.0, 0.7)).norm(), 0.0, 1e-12)?;
    let g: Vec<Complex64> = (0..24)
        .map(|i| Complex64::new(1.0 + (i as f64) * 0.1, -0.3 * i as f64))
        .collect();
    let (lhs, rhs, diff) = parseval_measure_check(&g, &mu)?;
    approx("finite parseval", diff, 0.0, 1e-12 * (1.0 + lhs.norm() + rhs.norm()))
}

/// Runs every check, printing one status line each; Err if any failed.
pub fn run_selftest() -> Result<()> {
    let checks: &[(&str, fn() -> Result<()>)] = &[
        ("characters", check_characters),
        ("special functions", check_special),
        ("quadrature", check_quadrature),
        ("cantor spectrum", check_cantor),
        ("torus kernels", check_torus_kernels),
        ("folner averages", check_folner_torus),
        ("weighted means", check_weighted),
        ("finite groups", check_finite),
    ];
    let mut failures = 0;
    for (name, f) in checks {
        match f() {
            Ok(()) => println!("selftest {name}: ok"),
            Err(e) => {
                failures += 1;
                println!("selftest {name}: FAIL ({e})");
            }
        }
    }
    if failures > 0 {
        Err(Error::Numeric(format!("{failures} selftest check(s) failed")))
    } else {
        Ok(())
    }
}
