//! Fixed-order composite quadrature used by the integration oracles.
//!
//! Everything here is deliberately plain: composite Gauss–Legendre panels
//! for smooth/oscillatory integrands on finite intervals, and the classical
//! Gauss–Chebyshev rule for integrals against the weight (1 − ξ²)^{−1/2}.
//! Oracles are expected to be quadrature-grade, not fast, so there is no
//! FFT-style machinery.

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Nodes per panel of the composite Gauss–Legendre rule.
const PANEL_ORDER: usize = 16;

/// Minimum nodes per wavelength demanded of an oscillatory integrand before
/// an oracle agrees to integrate it.
pub const NODES_PER_WAVELENGTH: f64 = 8.0;

/// Identifier of the underlying rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadScheme {
    /// Composite Gauss–Legendre panels on a finite interval.
    GaussLegendre,
    /// Gauss–Chebyshev rule for the weight (1 − ξ²)^{−1/2} on [−1, 1].
    GaussChebyshev,
}

/// Node count, optional domain and scheme for an integration oracle.
///
/// When `domain` is `None` the operation picks its own contract-specified
/// truncation (e.g. the Fourier oracle's `x`-cutoff rule); a `Some` domain
/// overrides it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub scheme: QuadScheme,
    pub nodes: usize,
    pub domain: Option<(f64, f64)>,
}

impl QuadratureSpec {
    /// Composite Gauss–Legendre spec with the given total node budget.
    pub fn gauss_legendre(nodes: usize) -> Self {
        QuadratureSpec {
            scheme: QuadScheme::GaussLegendre,
            nodes,
            domain: None,
        }
    }

    /// Gauss–Chebyshev spec with the given node count.
    pub fn gauss_chebyshev(nodes: usize) -> Self {
        QuadratureSpec {
            scheme: QuadScheme::GaussChebyshev,
            nodes,
            domain: None,
        }
    }

    /// Same spec restricted to an explicit domain.
    pub fn over(mut self, lo: f64, hi: f64) -> Self {
        self.domain = Some((lo, hi));
        self
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1], computed once by Newton
/// iteration on the Legendre recurrence.
fn legendre_rule(order: usize) -> Vec<(f64, f64)> {
    let n = order;
    let mut rule = Vec::with_capacity(n);
    for i in 1..=n {
        // Tricomi-style initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

static PANEL_RULE: Lazy<Vec<(f64, f64)>> = Lazy::new(|| legendre_rule(PANEL_ORDER));

/// Integrates `f` over `[a, b]` with a composite Gauss–Legendre rule using
/// at least `nodes` total nodes (rounded up to whole panels).
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, nodes: usize) -> f64 {
    let panels = nodes.div_ceil(PANEL_ORDER).max(1);
    let h = (b - a) / panels as f64;
    let rule = &*PANEL_RULE;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for &(x, w) in rule {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Complex-valued variant of [`integrate`], same panel layout.
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    nodes: usize,
) -> Complex64 {
    let panels = nodes.div_ceil(PANEL_ORDER).max(1);
    let h = (b - a) / panels as f64;
    let rule = &*PANEL_RULE;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, w) in rule {
            acc += f(mid + half * x) * w;
        }
        total += acc * half;
    }
    total
}

/// Node budget needed to resolve a wavelength-`min_wavelength` oscillation
/// over an interval of length `domain_len` at [`NODES_PER_WAVELENGTH`].
pub fn required_nodes(domain_len: f64, min_wavelength: f64) -> usize {
    (NODES_PER_WAVELENGTH * domain_len / min_wavelength).ceil() as usize
}

/// Errors out with the refusal variant unless `spec` carries at least
/// `required` nodes.
pub fn check_resolution(spec: &QuadratureSpec, required: usize) -> Result<()> {
    if spec.nodes < required {
        return Err(Error::UnresolvedOscillation {
            required,
            given: spec.nodes,
        });
    }
    Ok(())
}
