//! Exact Fourier coefficients of the density components: the Laguerre
//! closed form, an independent quadrature oracle, and the inverse transform
//! used to validate the convention.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oscillator::{self, FieldMeta, ModePair, OscillatorParams, SampledField};
use crate::quadrature::{self, QuadratureSpec};
use crate::specfun;

/// Momentum abscissa p and its dimensionless form ξ₀ = p/√(2mωħ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumAbscissa {
    pub p: f64,
}

impl MomentumAbscissa {
    pub fn new(p: f64) -> Self {
        MomentumAbscissa { p }
    }

    /// The abscissa whose dimensionless value is `xi0` under `params`.
    pub fn from_xi0(xi0: f64, params: &OscillatorParams) -> Self {
        MomentumAbscissa {
            p: xi0 * params.momentum_scale(),
        }
    }

    /// ξ₀ = p/√(2mωħ).
    pub fn xi0(&self, params: &OscillatorParams) -> f64 {
        self.p / params.momentum_scale()
    }
}

/// The transform constants, fixed once for the whole crate:
///
/// * forward: f(p) = ∫ ρ̃(x) e^{−ipx/ħ} dx, unit prefactor;
/// * inverse: ρ̃(x) = (1/2πħ) ∫ f(p) e^{+ipx/ħ} dp.
///
/// This placement is the unique one under which the closed-form
/// coefficients normalize to fₙ,ₙ(0) = 1 (the Gaussian ground-state pair
/// maps to exactly e^{−ξ₀²/2}); the round trip is the identity on
/// Schwartz-class inputs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TransformConvention;

impl TransformConvention {
    /// Sign of the exponent in the forward kernel e^{−ipx/ħ}.
    pub const FORWARD_KERNEL_SIGN: f64 = -1.0;
    /// Prefactor of the forward transform.
    pub const FORWARD_PREFACTOR: f64 = 1.0;

    /// Prefactor 1/(2πħ) of the inverse transform.
    pub fn inverse_prefactor(params: &OscillatorParams) -> f64 {
        1.0 / (2.0 * std::f64::consts::PI * params.hbar)
    }
}

/// (−i)^v without trigonometric rounding.
pub(crate) fn neg_i_pow(v: u32) -> Complex64 {
    match v % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Closed-form Fourier coefficient of ρ̃ₙ,ₘ: for n ≥ m
///
/// fₙ,ₘ(p) = (−i)^{n−m} √(m!/n!) e^{−ξ₀²/2} ξ₀^{n−m} L_m^{n−m}(ξ₀²),
///
/// with the factorial and power factors assembled in log space so the
/// expression stays finite far past the naive overflow point. For n < m the
/// pair is swapped; ρ̃ is symmetric in its indices, so the value is
/// unchanged (equivalently, it is the conjugate-at-−p of the swapped pair,
/// as required for a real density).
pub fn fourier_exact(
    pair: ModePair,
    p: MomentumAbscissa,
    params: &OscillatorParams,
) -> Result<Complex64> {
    if !p.p.is_finite() {
        return Err(Error::domain("fourier_exact", format!("p = {} not finite", p.p)));
    }
    let (cp, _) = pair.canonical();
    let v = cp.n - cp.m;
    let xi0 = p.xi0(params);

    if v > 0 && xi0 == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let laguerre = specfun::assoc_laguerre_scaled(cp.m, v, xi0 * xi0);
    if laguerre.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut log_magnitude = 0.5 * specfun::log_ratio_factorial(cp.n, cp.m)?
        - 0.5 * xi0 * xi0
        + laguerre.log_magnitude;
    let mut signum = laguerre.signum;
    if v > 0 {
        log_magnitude += v as f64 * xi0.abs().ln();
        if xi0 < 0.0 && v % 2 == 1 {
            signum = -signum;
        }
    }
    debug_assert!(
        log_magnitude < 700.0,
        "fourier_exact magnitude overflow is impossible by construction"
    );
    Ok(neg_i_pow(v) * (signum * log_magnitude.exp()))
}

/// Direct numerical forward transform ∫ ρ̃ₙ,ₘ(x) e^{−ipx/ħ} dx.
///
/// Exists solely to validate [`fourier_exact`] and the convention record.
/// The quadrature budget must resolve the fastest oscillation of the integrand (density
/// plus kernel) at ≥ 8 nodes per wavelength, otherwise the call refuses.
/// The integrand is monitored over the outer 10% of the truncated domain;
/// a tail above 1e-12 also refuses rather than dropping mass silently.
pub fn fourier_oracle(
    pair: ModePair,
    p: MomentumAbscissa,
    params: &OscillatorParams,
    quad: &QuadratureSpec,
) -> Result<Complex64> {
    if !p.p.is_finite() {
        return Err(Error::domain("fourier_oracle", format!("p = {} not finite", p.p)));
    }
    let (cp, _) = pair.canonical();
    let (lo, hi) = quad.domain.unwrap_or_else(|| {
        let r = oscillator::truncation_radius(cp.n, params);
        (-r, r)
    });
    let length = hi - lo;
    let wavenumber = p.p.abs() / params.hbar + density_wavenumber(cp, params);
    if wavenumber > 0.0 {
        let required =
            quadrature::required_nodes(length, 2.0 * std::f64::consts::PI / wavenumber);
        quadrature::check_resolution(quad, required)?;
    }

    let mut tail_max: f64 = 0.0;
    let tail_lo = lo + 0.05 * length;
    let tail_hi = hi - 0.05 * length;
    let k = p.p / params.hbar;
    let value = quadrature::integrate_complex(
        |x| {
            let rho = oscillator::density_component(cp, x, params)
                .expect("quadrature nodes are finite");
            if x < tail_lo || x > tail_hi {
                tail_max = tail_max.max(rho.abs());
            }
            Complex64::from_polar(1.0, -k * x) * rho
        },
        lo,
        hi,
        quad.nodes,
    );
    if tail_max > 1e-12 {
        return Err(Error::TailTooLarge { magnitude: tail_max });
    }
    Ok(value * TransformConvention::FORWARD_PREFACTOR)
}

/// Largest local wavenumber of ρ̃ₙ,ₘ, the sum of the two classical momenta
/// over ħ.
fn density_wavenumber(pair: ModePair, params: &OscillatorParams) -> f64 {
    let root_alpha = params.alpha().sqrt();
    root_alpha * ((2.0 * pair.n as f64 + 1.0).sqrt() + (2.0 * pair.m as f64 + 1.0).sqrt())
}

/// Numerical inverse transform ρ̃(x) = (1/2πħ) ∫ f(p) e^{+ipx/ħ} dp over the
/// momentum window carried by `quad` (which is mandatory here: only the
/// caller knows where its coefficient function has decayed or been
/// windowed).
///
/// The resolution check covers the e^{ipx/ħ} kernel across the grid; the
/// oscillation scale of `coeff_fn` itself is part of the caller's windowing
/// responsibility.
pub fn inverse_transform_field<F: Fn(f64) -> Complex64>(
    coeff_fn: F,
    grid: &[f64],
    params: &OscillatorParams,
    quad: &QuadratureSpec,
) -> Result<SampledField> {
    let (plo, phi) = quad.domain.ok_or_else(|| {
        Error::contract(
            "inverse_transform_field",
            "an explicit momentum domain is required",
        )
    })?;
    let max_abs_x = grid.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()));
    if max_abs_x > 0.0 {
        let min_wavelength = 2.0 * std::f64::consts::PI * params.hbar / max_abs_x;
        let required = quadrature::required_nodes(phi - plo, min_wavelength);
        quadrature::check_resolution(quad, required)?;
    }

    let prefactor = TransformConvention::inverse_prefactor(params);
    let values: Vec<Complex64> = grid
        .iter()
        .map(|&x| {
            let k = x / params.hbar;
            prefactor
                * quadrature::integrate_complex(
                    |p| coeff_fn(p) * Complex64::from_polar(1.0, k * p),
                    plo,
                    phi,
                    quad.nodes,
                )
        })
        .collect();

    let meta = FieldMeta::new("inverse_fourier_transform")
        .with("p_lo", plo)
        .with("p_hi", phi)
        .with("nodes", quad.nodes as f64);
    SampledField::new(grid.to_vec(), values, meta)
}

/// Momentum cutoff past which every coefficient with indices ≤ n is below
/// the 1e-12 tail budget.
pub fn momentum_cutoff(n: u32, params: &OscillatorParams) -> f64 {
    params.momentum_scale() * ((2.0 * n as f64 + 1.0).sqrt() + 8.0)
}

/// A spec sized for [`fourier_oracle`] on `pair` at momenta up to
/// `max_abs_p`, with a 25% node margin over the refusal threshold.
pub fn oracle_quadrature(
    pair: ModePair,
    max_abs_p: f64,
    params: &OscillatorParams,
) -> QuadratureSpec {
    let (cp, _) = pair.canonical();
    let radius = oscillator::truncation_radius(cp.n, params);
    let wavenumber = max_abs_p / params.hbar + density_wavenumber(cp, params);
    let required =
        quadrature::required_nodes(2.0 * radius, 2.0 * std::f64::consts::PI / wavenumber.max(1e-300));
    QuadratureSpec::gauss_legendre(required + required / 4 + 64)
}

/// A spec sized for [`inverse_transform_field`] of coefficients with
/// indices ≤ n onto a grid reaching `max_abs_x`.
pub fn inverse_quadrature(
    n: u32,
    max_abs_x: f64,
    params: &OscillatorParams,
) -> QuadratureSpec {
    let p_cut = momentum_cutoff(n, params);
    // f_{n,m} itself oscillates in p on the scale set by the spatial extent.
    let extent = max_abs_x + params.classical_amplitude(n);
    let min_wavelength = 2.0 * std::f64::consts::PI * params.hbar / extent;
    let required = quadrature::required_nodes(2.0 * p_cut, min_wavelength);
    QuadratureSpec::gauss_legendre(required + required / 4 + 64).over(-p_cut, p_cut)
}
