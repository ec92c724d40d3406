//! Composite Gauss-Legendre quadrature and the radial-measure constants.
//!
//! All radial integrals in the crate (`∫₀^∞ f(ρ) ρ^{n-1} dρ` on the Fourier
//! side, `∫₀^L w(r)² r^{n-1} dr` on the grid side) go through the rules here
//! so that refinement studies compare like with like.

/// Nodes and weights of the `m`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Computed by Newton iteration on the Legendre recurrence; accurate to
/// machine precision for the orders used here (m ≤ 32).
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be >= 1");
        let m = order;
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_m.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (_, d2) = legendre_and_derivative(m, x);
                    dp = d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_and_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite rule: `panels` equal Gauss-Legendre panels of the given order
/// on `[a, b]`, returned as a flat `(node, weight)` list in increasing order.
pub fn composite_nodes(a: f64, b: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    assert!(panels >= 1 && b > a);
    let rule = GaussLegendre::new(order);
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for k in 0..panels {
        let lo = a + k as f64 * width;
        out.extend(rule.mapped(lo, lo + width));
    }
    out
}

pub fn composite_integrate<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
    mut f: F,
) -> f64 {
    composite_nodes(a, b, panels, order)
        .into_iter()
        .map(|(x, w)| w * f(x))
        .sum()
}

/// Surface area of the unit sphere in `ℝⁿ`: `ω_{n-1} = 2 π^{n/2} / Γ(n/2)`.
///
/// This is the constant that turns a radial profile integral into the full
/// `ℝⁿ` integral; for n = 1 it is 2 (even extension to the line).
pub fn sphere_surface(n: u32) -> f64 {
    assert!(n >= 1);
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Γ(k/2) for positive integer k.
fn gamma_half(k: u32) -> f64 {
    let mut g = if k.is_multiple_of(2) {
        1.0 // Γ(1)
    } else {
        std::f64::consts::PI.sqrt() // Γ(1/2)
    };
    let mut x = if k.is_multiple_of(2) { 1.0 } else { 0.5 };
    while x < k as f64 / 2.0 - 0.25 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Trapezoid rule over a uniform grid with the radial weight `r^{n-1}`,
/// including the `ω_{n-1}` sphere factor.
pub fn radial_trapezoid(values: &[f64], r: &[f64], spacing: f64, n: u32) -> f64 {
    debug_assert_eq!(values.len(), r.len());
    let nm1 = (n - 1) as i32;
    let mut sum = 0.0;
    for i in 0..values.len() {
        let w = if i == 0 || i == values.len() - 1 {
            0.5
        } else {
            1.0
        };
        sum += w * values[i] * r[i].powi(nm1);
    }
    sum * spacing * sphere_surface(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn gauss_nodes_integrate_polynomials_exactly() {
        // m-point rule is exact through degree 2m-1.
        let g = GaussLegendre::new(5);
        let val = g.integrate(-1.0, 3.0, |x| x.powi(9) + 2.0 * x.powi(3) - x + 4.0);
        // ∫ x^9 = (3^10 - 1)/10, ∫ 2x^3 = (3^4 - 1)/2, ∫ -x = -(9-1)/2, ∫ 4 = 16
        let exact = (59049.0 - 1.0) / 10.0 + 80.0 / 2.0 - 4.0 + 16.0;
        assert!(rel(val, exact) < 1e-14, "got {val}, want {exact}");
    }

    #[test]
    fn composite_handles_oscillatory_integrand() {
        // ∫₀^{2π} cos(25 x) dx = 0, ∫₀^{2π} cos²(25 x) dx = π
        let val = composite_integrate(0.0, 2.0 * std::f64::consts::PI, 60, 8, |x| {
            (25.0 * x).cos().powi(2)
        });
        assert!(rel(val, std::f64::consts::PI) < 1e-12);
    }

    #[test]
    fn sphere_surface_matches_known_dimensions() {
        assert!(rel(sphere_surface(1), 2.0) < 1e-15);
        assert!(rel(sphere_surface(2), 2.0 * std::f64::consts::PI) < 1e-15);
        assert!(rel(sphere_surface(3), 4.0 * std::f64::consts::PI) < 1e-15);
        assert!(rel(sphere_surface(4), 2.0 * std::f64::consts::PI.powi(2)) < 1e-14);
    }

    #[test]
    fn radial_gaussian_moment() {
        // ω_{n-1} ∫₀^∞ e^{-ρ²} ρ^{n-1} dρ = π^{n/2} (full Gaussian integral).
        for n in 1..=3u32 {
            let nodes = composite_nodes(0.0, 12.0, 24, 8);
            let val: f64 = nodes
                .iter()
                .map(|&(x, w)| w * (-x * x).exp() * x.powi(n as i32 - 1))
                .sum::<f64>()
                * sphere_surface(n);
            let exact = std::f64::consts::PI.powf(n as f64 / 2.0);
            assert!(rel(val, exact) < 1e-12, "n={n}: got {val}, want {exact}");
        }
    }

    #[test]
    fn radial_trapezoid_linear_exact() {
        // n=1: plain trapezoid times ω₀ = 2; linear integrand is exact.
        let r: Vec<f64> = (0..101).map(|i| i as f64 * 0.01).collect();
        let vals: Vec<f64> = r.iter().map(|&x| 3.0 * x + 1.0).collect();
        let got = radial_trapezoid(&vals, &r, 0.01, 1);
        assert!(rel(got, 2.0 * (1.5 + 1.0)) < 1e-13);
    }
}
