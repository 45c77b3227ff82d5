//! End-to-end acceptance gate. Each criterion prints one pass/fail line;
//! timed criteria also assert their runtime budget.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wiener::finite::exact_wiener;
use wiener::folner::{folner_average, folner_defect, FolnerSet};
use wiener::fourier::{cantor_hat, mu_hat, parseval_measure_check};
use wiener::group::{unit_phase, FrequencyPoint, GroupContext, GroupPoint};
use wiener::measure::{AcComponent, AcKind, Atom, CantorComponent, Measure};
use wiener::scenario::{atom_scan, build_source, MeasureSource, MethodSpec};
use wiener::special::{bessel_j, gamma_fn};
use wiener::torus_br::{abel_identity_check, beta, br_kernel_torus, wiener_br_torus};
use wiener::weighted::{freq_side_mean, m_alpha_hat, scaled_weight_mean, KernelKind, WeightKernel};

fn criterion<F: FnOnce() + std::panic::UnwindSafe>(n: u32, name: &str, f: F) {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(()) => println!("criterion {n} ({name}): pass"),
        Err(e) => {
            println!("criterion {n} ({name}): FAIL");
            resume_unwind(e);
        }
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn gp(ctx: &GroupContext, v: &[f64]) -> GroupPoint {
    GroupPoint::new(ctx, v.to_vec()).unwrap()
}

fn random_finite_measure(ctx: &GroupContext, n: usize, rng: &mut ChaCha8Rng) -> Measure {
    let GroupContext::FiniteAbelian { moduli } = ctx else { panic!() };
    let atoms = (0..n)
        .map(|_| Atom {
            position: gp(
                ctx,
                &moduli
                    .iter()
                    .map(|&m| rng.gen_range(0..m) as f64)
                    .collect::<Vec<_>>(),
            ),
            weight: Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        })
        .collect();
    Measure::atomic(ctx.clone(), atoms).unwrap()
}

/// 0.5δ_0 + 0.25δ_{1/3} + Lebesgue on the circle.
fn classical_measure() -> Measure {
    let ctx = GroupContext::Torus { d: 1 };
    Measure::new(
        ctx.clone(),
        vec![
            Atom {
                position: gp(&ctx, &[0.0]),
                weight: Complex64::new(0.5, 0.0),
            },
            Atom {
                position: gp(&ctx, &[1.0 / 3.0]),
                weight: Complex64::new(0.25, 0.0),
            },
        ],
        vec![AcComponent {
            kind: AcKind::Lebesgue,
            coefficient: one(),
        }],
        None,
    )
    .unwrap()
}

#[test]
fn acceptance_01_finite_group_exactness() {
    criterion(1, "finite-group exactness", || {
        let start = Instant::now();
        let ctx = GroupContext::FiniteAbelian { moduli: vec![12, 5] };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut max_err = 0.0_f64;
        for _ in 0..50 {
            let mu = random_finite_measure(&ctx, 8, &mut rng);
            for x in wiener::fourier::finite_points(&ctx).unwrap() {
                let v = exact_wiener(&mu, &x).unwrap();
                max_err = max_err.max((v - mu.true_atom(&x)).norm());
            }
        }
        assert!(max_err < 1e-12, "recovery error {max_err}");

        let mut max_diff = 0.0_f64;
        for _ in 0..100 {
            let mu = random_finite_measure(&ctx, 6, &mut rng);
            let g: Vec<Complex64> = (0..60)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let (_, _, diff) = parseval_measure_check(&g, &mu).unwrap();
            max_diff = max_diff.max(diff);
        }
        assert!(max_diff < 1e-12, "parseval residual {max_diff}");
        assert!(start.elapsed().as_secs_f64() < 5.0, "runtime budget exceeded");
    });
}

#[test]
fn acceptance_02_classical_wiener_envelope() {
    criterion(2, "classical Wiener envelope", || {
        let start = Instant::now();
        let mu = classical_measure();
        let ctx = mu.ctx().clone();
        let n_max = 10_000i64;
        // running sum of μ̂(k) over k = -N..N keeps the full sweep linear
        let hat = |k: i64| {
            let g = FrequencyPoint::from_lattice(&ctx, &[k]).unwrap();
            mu_hat(&mu, &g).unwrap()
        };
        let sin60 = (std::f64::consts::PI / 3.0).sin();
        let mut sum = hat(0);
        for n in 1..=n_max {
            sum += hat(n) + hat(-n);
            let m = 2.0 * n as f64 + 1.0;
            let a = sum / m;
            let envelope = 0.25 / (m * sin60) + 1.0 / m;
            let err = (a - Complex64::new(0.5, 0.0)).norm();
            assert!(err <= envelope + 1e-12, "N={n}: {err} > {envelope}");
            if n == n_max {
                assert!(err < 1e-3, "final error {err}");
            }
        }
        // spot-check the incremental sums against the library averages
        for n in [10.0, 100.0, 1000.0] {
            let via_lib =
                folner_average(&mu, &FolnerSet::Cube { n }, &ctx.identity()).unwrap();
            let mut s = hat(0);
            for k in 1..=(n as i64) {
                s += hat(k) + hat(-k);
            }
            assert!((via_lib - s / (2.0 * n + 1.0)).norm() < 1e-12);
        }
        assert!(start.elapsed().as_secs_f64() < 10.0, "runtime budget exceeded");
    });
}

#[test]
fn acceptance_03_cantor_stress() {
    criterion(3, "Cantor stress test", || {
        // non-decaying coefficients along powers of 3
        let base = cantor_hat(1.0).norm();
        for k in 0..=8 {
            let v = cantor_hat(3f64.powi(k)).norm();
            assert!((v - base).abs() < 1e-8, "k={k}: {v} vs {base}");
        }

        let ctx = GroupContext::Torus { d: 1 };
        let mu = Measure::new(
            ctx.clone(),
            vec![],
            vec![],
            Some(CantorComponent { coefficient: one() }),
        )
        .unwrap();
        let n_max = 10_000i64;
        let hat: Vec<Complex64> = (0..=n_max).map(|k| cantor_hat(k as f64)).collect();
        for x in [0.0, 1.0 / 3.0, 2.0 / 3.0, 0.123, 0.9] {
            let avg = |n: i64| {
                let mut s = hat[0];
                for k in 1..=n {
                    let ph = unit_phase(k as f64 * x);
                    s += hat[k as usize] * ph + hat[k as usize].conj() * ph.conj();
                }
                s / (2.0 * n as f64 + 1.0)
            };
            let a2 = avg(100).norm();
            let a3 = avg(1000).norm();
            let a4 = avg(10_000).norm();
            assert!(a4 < 0.1, "x={x}: |A| = {a4}");
            assert!(a2 > a3 && a3 > a4, "x={x}: {a2}, {a3}, {a4} not decreasing");
            // the incremental sum matches the library evaluation
            let lib = folner_average(&mu, &FolnerSet::Cube { n: 100.0 }, &gp(&ctx, &[x])).unwrap();
            assert!((lib - avg(100)).norm() < 1e-10);
        }
    });
}

#[test]
fn acceptance_04_folner_defects() {
    criterion(4, "Folner defect closed forms", || {
        for n in 1..=1000u32 {
            let d = folner_defect(&FolnerSet::Cube { n: n as f64 }, 1, &[1]).unwrap();
            let want = 2.0 / (2.0 * n as f64 + 1.0);
            assert!((d - want).abs() < 1e-14, "n={n}");
        }
        let mut prev = f64::INFINITY;
        for n in 1..=100u32 {
            let d = folner_defect(&FolnerSet::Ball { n: n as f64 }, 2, &[1, 0]).unwrap();
            assert!(d <= prev, "n={n}: defect increased");
            prev = d;
        }
        assert!(prev < 0.05, "final defect {prev}");
    });
}

#[test]
fn acceptance_05_scaling_lemma_conditions() {
    criterion(5, "scaling-lemma conditions", || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in [
            KernelKind::Gaussian,
            KernelKind::Box,
            KernelKind::BochnerRiesz { alpha: 1.0 },
        ] {
            let kernel = WeightKernel::new(kind, 2).unwrap();
            for _ in 0..10_000 {
                let xi = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
                let v = kernel.phi(1.0, &xi).unwrap().abs();
                assert!(v <= 1.0 + 1e-12, "|phi| = {v}");
            }
        }
        // Gaussian tail suppression accelerates with R
        let kernel = WeightKernel::new(KernelKind::Gaussian, 2).unwrap();
        let mut sups = Vec::new();
        for big_r in [1.0, 10.0, 100.0] {
            let mut sup = 0.0_f64;
            for _ in 0..2000 {
                let mut xi: [f64; 2] = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
                let norm = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
                if norm < 0.5 {
                    let s = 0.5 / norm.max(1e-9);
                    xi = [xi[0] * s, xi[1] * s];
                }
                sup = sup.max(kernel.phi(big_r, &xi).unwrap().abs());
            }
            sups.push(sup);
        }
        assert!(sups[0] >= 10.0 * sups[1] && sups[1] >= 10.0 * sups[2], "{sups:?}");
    });
}

#[test]
fn acceptance_06_bessel_gamma_closed_forms() {
    criterion(6, "Bessel/Gamma closed forms", || {
        let pi = std::f64::consts::PI;
        for d in [1usize, 2, 3] {
            for alpha in [0.5, 1.0, 2.0] {
                let want = pi.powf(d as f64 / 2.0) * gamma_fn(alpha + 1.0).unwrap()
                    / gamma_fn(d as f64 / 2.0 + alpha + 1.0).unwrap();
                let zero = vec![0.0; d];
                let got = m_alpha_hat(&zero, d, alpha).unwrap();
                assert!((got - want).abs() < 1e-10, "d={d} alpha={alpha}");
            }
        }
        // independent quadrature for m̂_1 at (0.3, 0), d = 2: reduces to
        // (4/3)∫_{-1}^{1}(1-s²)^{3/2} cos(0.6πs) ds via slicing the disk
        let f = |s: f64| (1.0 - s * s).powf(1.5) * (0.6 * pi * s).cos();
        let n = 200_000;
        let h = 2.0 / n as f64;
        let mut simpson = f(-1.0) + f(1.0);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            simpson += w * f(-1.0 + i as f64 * h);
        }
        simpson *= h / 3.0 * 4.0 / 3.0;
        let got = m_alpha_hat(&[0.3, 0.0], 2, 1.0).unwrap();
        assert!((got - simpson).abs() < 1e-6, "{got} vs {simpson}");

        let j = bessel_j(0.5, pi / 2.0).unwrap();
        assert!((j - 2.0 / pi).abs() < 1e-9, "J_1/2(pi/2) = {j}");
    });
}

#[test]
fn acceptance_07_corollary_equivalence() {
    criterion(7, "frequency/spatial equivalence", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let d = if trial % 2 == 0 { 1 } else { 2 };
            let ctx = GroupContext::Euclidean { d };
            let atoms: Vec<Atom> = (0..3)
                .map(|_| Atom {
                    position: gp(
                        &ctx,
                        &(0..d).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>(),
                    ),
                    weight: Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                })
                .collect();
            let probe = atoms[0].position.clone();
            let mu = Measure::atomic(ctx.clone(), atoms).unwrap();
            let big_r = rng.gen_range(2.0..20.0);
            for kind in [KernelKind::Gaussian, KernelKind::BochnerRiesz { alpha: 1.0 }] {
                let kernel = WeightKernel::new(kind, d).unwrap();
                let spatial = scaled_weight_mean(&mu, &kernel, big_r, &probe).unwrap();
                let freq = freq_side_mean(&mu, &kernel, big_r, &probe).unwrap();
                let rel = (spatial - freq).norm() / spatial.norm().max(1e-10);
                assert!(rel < 1e-5, "trial {trial} d={d} R={big_r}: rel {rel}");
            }
        }
        assert!(start.elapsed().as_secs_f64() < 60.0, "runtime budget exceeded");
    });
}

#[test]
fn acceptance_08_torus_bochner_riesz() {
    criterion(8, "torus Bochner-Riesz", || {
        assert_eq!(beta(3, 1.0, 1), 35.0 / 9.0);
        let b = beta(1000, 1.0, 1) / 1000.0;
        assert!((b - 4.0 / 3.0).abs() < 0.01, "beta_N/N = {b}");

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for d in 1..=3usize {
            for &delta in &[0.5, 1.0, 2.0] {
                for n in 1..=30u32 {
                    for _ in 0..10 {
                        let x: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
                        let (_, _, diff) = abel_identity_check(n, delta, d, &x).unwrap();
                        assert!(diff < 1e-9, "N={n} delta={delta} d={d}: {diff}");
                    }
                }
            }
        }

        // d = 1 spherical Dirichlet against the sin-ratio closed form
        for _ in 0..200 {
            let n = rng.gen_range(1..=60u32);
            let x = rng.gen_range(0.01..0.99);
            let got = br_kernel_torus(n, 0.0, 1, &[x]);
            let want = ((2.0 * n as f64 + 1.0) * std::f64::consts::PI * x).sin()
                / (std::f64::consts::PI * x).sin();
            assert!((got.re - want).abs() < 1e-10 && got.im.abs() < 1e-10);
        }

        // bounded growth at the third root of unity
        let mut max_d = 0.0_f64;
        for n in 1..=500u32 {
            max_d = max_d.max(br_kernel_torus(n, 0.0, 1, &[1.0 / 3.0]).norm());
        }
        assert!(max_d <= 1.1548, "max |D_N(1/3)| = {max_d}");

        let mu = classical_measure();
        let v = wiener_br_torus(&mu, 1000, 1.0, &mu.ctx().identity()).unwrap();
        assert!((v - Complex64::new(0.5, 0.0)).norm() < 0.01, "{v}");
    });
}

#[test]
fn acceptance_09_atom_scan_end_to_end() {
    criterion(9, "atom scan end-to-end", || {
        let ctx = GroupContext::Torus { d: 1 };
        let mu = Measure::atomic(
            ctx.clone(),
            vec![
                Atom {
                    position: gp(&ctx, &[0.2]),
                    weight: Complex64::new(0.4, 0.0),
                },
                Atom {
                    position: gp(&ctx, &[0.7]),
                    weight: Complex64::new(0.3, 0.0),
                },
            ],
        )
        .unwrap();
        let source = MeasureSource::Model(mu);
        let hits = atom_scan(&source, &MethodSpec::FolnerCube, 500.0, 0.001, 0.1).unwrap();
        assert_eq!(hits.len(), 2, "{hits:?}");
        assert!((hits[0].location[0] - 0.2).abs() <= 0.001 + 1e-12);
        assert!((hits[1].location[0] - 0.7).abs() <= 0.001 + 1e-12);
        assert!((hits[0].weight - Complex64::new(0.4, 0.0)).norm() < 0.02);
        assert!((hits[1].weight - Complex64::new(0.3, 0.0)).norm() < 0.02);

        // pure absolutely continuous: no detections
        let mu_ac = Measure::new(
            ctx.clone(),
            vec![],
            vec![
                AcComponent {
                    kind: AcKind::Lebesgue,
                    coefficient: one(),
                },
                AcComponent {
                    kind: AcKind::Gaussian {
                        center: vec![0.5],
                        width: 0.05,
                    },
                    coefficient: one(),
                },
            ],
            None,
        )
        .unwrap();
        let hits = atom_scan(
            &MeasureSource::Model(mu_ac),
            &MethodSpec::FolnerCube,
            500.0,
            0.001,
            0.1,
        )
        .unwrap();
        assert!(hits.is_empty(), "{hits:?}");

        // pure Cantor: continuous, so no detections either
        let mu_c = Measure::new(
            ctx.clone(),
            vec![],
            vec![],
            Some(CantorComponent { coefficient: one() }),
        )
        .unwrap();
        let hits = atom_scan(
            &MeasureSource::Model(mu_c),
            &MethodSpec::FolnerCube,
            500.0,
            0.001,
            0.1,
        )
        .unwrap();
        assert!(hits.is_empty(), "{hits:?}");
    });
}

#[test]
fn acceptance_10_determinism() {
    criterion(10, "determinism", || {
        let dir = tempfile::tempdir().unwrap();
        let config_path = dir.path().join("scenario.json");
        std::fs::write(
            &config_path,
            r#"{
                "group": {"kind": "torus", "d": 1},
                "measure": {
                    "atoms": [
                        {"position": [0.0], "weight": [0.5, 0.0]},
                        {"position": [0.3333333333333333], "weight": [0.25, 0.0]}
                    ],
                    "ac": [{"kind": "lebesgue", "coefficient": [1.0, 0.0]}]
                },
                "method": {"kind": "folner_cube"},
                "sweep": [1, 5, 10, 50, 100, 500],
                "points": [[0.0], [0.3333333333333333], [0.11]]
            }"#,
        )
        .unwrap();
        let run = |out: &std::path::Path| {
            let status = std::process::Command::new(env!("CARGO_BIN_EXE_wiener"))
                .args(["run", "--config"])
                .arg(&config_path)
                .arg("--out")
                .arg(out)
                .status()
                .unwrap();
            assert!(status.success());
            std::fs::read(out).unwrap()
        };
        let a = run(&dir.path().join("a.csv"));
        let b = run(&dir.path().join("b.csv"));
        assert!(!a.is_empty());
        assert_eq!(a, b, "repeated runs differ");
    });
}
