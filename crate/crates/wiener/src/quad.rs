//! Gauss-Legendre quadrature with panel subdivision for oscillatory
//! frequency-side integrals.

use num_complex::Complex64;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n with the usual asymptotic initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_deriv(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let c = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + c * x))
            .sum::<f64>()
            * c
    }

    pub fn integrate_c<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        let c = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(mid + c * x) * w)
            .sum::<Complex64>()
            * c
    }
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// 1-D axis sampled by panels of Gauss-Legendre nodes. `osc_scale` is the
/// largest spatial offset the integrand oscillates against (cycles per unit
/// frequency); panels are sized so each holds a fraction of a cycle.
#[derive(Debug, Clone)]
pub struct PanelAxis {
    pub points: Vec<(f64, f64)>, // (node, weight) over [a, b]
}

impl PanelAxis {
    pub fn new(a: f64, b: f64, osc_scale: f64) -> Self {
        let rule = GaussLegendre::new(12);
        // half an oscillation period per 12-node panel keeps panel-local
        // Gauss-Legendre error far below the quadrature targets
        let width = (1.0 / (2.0 * osc_scale.max(1.0))).min(1.0);
        let n_panels = (((b - a) / width).ceil() as usize).max(1);
        let h = (b - a) / n_panels as f64;
        let mut points = Vec::with_capacity(n_panels * rule.nodes.len());
        for p in 0..n_panels {
            let lo = a + p as f64 * h;
            let mid = lo + 0.5 * h;
            let c = 0.5 * h;
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                points.push((mid + c * x, w * c));
            }
        }
        PanelAxis { points }
    }
}

/// Tensor-product integral of a complex integrand over a box, axes given per
/// dimension. Dimensions 1..=3.
pub fn integrate_box_c<F: FnMut(&[f64]) -> Complex64>(axes: &[PanelAxis], mut f: F) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    match axes.len() {
        1 => {
            for &(x, w) in &axes[0].points {
                acc += f(&[x]) * w;
            }
        }
        2 => {
            for &(x, wx) in &axes[0].points {
                for &(y, wy) in &axes[1].points {
                    acc += f(&[x, y]) * (wx * wy);
                }
            }
        }
        3 => {
            for &(x, wx) in &axes[0].points {
                for &(y, wy) in &axes[1].points {
                    for &(z, wz) in &axes[2].points {
                        acc += f(&[x, y, z]) * (wx * wy * wz);
                    }
                }
            }
        }
        d => panic!("tensor quadrature unsupported in dimension {d}"),
    }
    acc
}

/// Integral of f over the ellipse { (a1 r cosθ, a2 r sinθ) : r <= 1 } scaled
/// to semi-axes, in polar form with oscillation-aware sampling. `osc_scale`
/// as in `PanelAxis`. Covers disks with a1 = a2 = R.
pub fn integrate_ellipse_c<F: FnMut(&[f64]) -> Complex64>(
    semi_axes: [f64; 2],
    osc_scale: f64,
    mut f: F,
) -> Complex64 {
    let [a1, a2] = semi_axes;
    let rmax = a1.max(a2);
    let radial = PanelAxis::new(0.0, 1.0, osc_scale * rmax);
    // angular oscillation: up to rmax * osc_scale cycles around the circle
    let n_theta = ((12.0 * rmax * osc_scale.max(1.0)).ceil() as usize).clamp(32, 20000);
    let dtheta = 2.0 * std::f64::consts::PI / n_theta as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for &(r, wr) in &radial.points {
        let mut ring = Complex64::new(0.0, 0.0);
        for i in 0..n_theta {
            let th = i as f64 * dtheta;
            ring += f(&[a1 * r * th.cos(), a2 * r * th.sin()]);
        }
        acc += ring * (wr * r * dtheta);
    }
    acc * (a1 * a2)
}
