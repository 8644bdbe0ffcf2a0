//! The local-average operator that turns rapidly oscillating exact
//! densities into smooth macroscopic profiles.
//!
//! The averaging interval is a hard window (a plain mean over
//! [x − ε, x + ε]); kernel generalizations like Gaussian smoothing are out
//! of scope. The window width shrinks with the quantum number through the
//! local de Broglie wavelength, which is the property the classical limit
//! needs.

use crate::error::{Error, Result};
use crate::oscillator::{self, ModePair, OscillatorParams};
use crate::quadrature::{self, QuadratureSpec};

/// How a window width was chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowRule {
    /// Caller-supplied fixed width; the node budget is trusted as given.
    Fixed,
    /// ε spans `periods` local de Broglie wavelengths; the integrand it is
    /// meant for oscillates on `integrand_wavelength`, which prices the
    /// quadrature resolution.
    WavelengthScaled {
        periods: f64,
        integrand_wavelength: f64,
    },
}

/// Averaging interval ε with the rule that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragingWindow {
    pub epsilon: f64,
    pub rule: WindowRule,
}

impl AveragingWindow {
    /// Fixed window of half-width `epsilon`.
    pub fn fixed(epsilon: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::domain(
                "AveragingWindow",
                format!("epsilon must be positive and finite, got {epsilon}"),
            ));
        }
        Ok(AveragingWindow {
            epsilon,
            rule: WindowRule::Fixed,
        })
    }
}

/// Window for averaging the level-n density near x: ε = k·λ_loc(x)/2 with
/// λ_loc = 2πħ/p^CL(x) and p^CL = mω√(xₙ² − x²), clamped so the window
/// stays inside |x| + ε ≤ 0.9 xₙ.
///
/// ε shrinks like 1/√n at fixed x/xₙ, which is what the local-average limit
/// requires. Density components oscillate at half the de Broglie
/// wavelength; the rule records that scale for the resolution check.
pub fn default_window(
    n: u32,
    x: f64,
    k: f64,
    params: &OscillatorParams,
) -> Result<AveragingWindow> {
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::domain(
            "default_window",
            format!("period count k must be positive, got {k}"),
        ));
    }
    let xn = params.classical_amplitude(n);
    if !x.is_finite() || x.abs() >= 0.9 * xn {
        return Err(Error::domain(
            "default_window",
            format!(
                "x = {x} is outside |x| < 0.9·xₙ = {:.6}; the window rule does not \
                 cover the turning-point region, where no local-average claim is made",
                0.9 * xn
            ),
        ));
    }
    let p_classical = params.mass * params.omega * (xn * xn - x * x).sqrt();
    let wavelength = 2.0 * std::f64::consts::PI * params.hbar / p_classical;
    let epsilon = (k * wavelength / 2.0).min(0.9 * xn - x.abs());
    Ok(AveragingWindow {
        epsilon,
        rule: WindowRule::WavelengthScaled {
            periods: k,
            integrand_wavelength: wavelength / 2.0,
        },
    })
}

/// Hard-window mean (1/2ε) ∫_{x−ε}^{x+ε} f(y) dy by composite quadrature.
///
/// Exact for constants and linear in `f`. For wavelength-scaled windows the
/// node budget must resolve the recorded integrand oscillation at 8 nodes
/// per wavelength, otherwise the call refuses; fixed windows carry no
/// oscillation information and trust the caller's budget.
pub fn local_average<F: FnMut(f64) -> f64>(
    f: F,
    x: f64,
    window: &AveragingWindow,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let eps = window.epsilon;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::domain(
            "local_average",
            format!("window epsilon must be positive, got {eps}"),
        ));
    }
    if let WindowRule::WavelengthScaled {
        integrand_wavelength,
        ..
    } = window.rule
    {
        let required = quadrature::required_nodes(2.0 * eps, integrand_wavelength);
        quadrature::check_resolution(quad, required)?;
    }
    Ok(quadrature::integrate(f, x - eps, x + eps, quad.nodes) / (2.0 * eps))
}

/// A spec with comfortable margin over the refusal threshold of `window`.
pub fn window_quadrature(window: &AveragingWindow) -> QuadratureSpec {
    let nodes = match window.rule {
        WindowRule::WavelengthScaled {
            integrand_wavelength,
            ..
        } => 2 * quadrature::required_nodes(2.0 * window.epsilon, integrand_wavelength),
        WindowRule::Fixed => 0,
    };
    QuadratureSpec::gauss_legendre(nodes.max(64))
}

/// Locally averaged exact diagonal density ⟨ρ̃ₙ,ₙ⟩(x) with the default
/// window rule; the quantity that converges to the classical density.
pub fn averaged_diagonal_density(
    n: u32,
    x: f64,
    k: f64,
    params: &OscillatorParams,
) -> Result<f64> {
    let window = default_window(n, x, k, params)?;
    let quad = window_quadrature(&window);
    let pair = ModePair::new(n, n);
    local_average(
        |y| oscillator::density_component(pair, y, params).expect("quadrature nodes are finite"),
        x,
        &window,
        &quad,
    )
}
