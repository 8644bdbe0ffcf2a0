//! Harmonic-oscillator eigensystem, spatial density-matrix components and
//! time-dependent density assembly — the exact side of every comparison.
//!
//! Summations over index pairs always run in the fixed order of the sorted
//! superposition support, so results are bit-identical no matter how callers
//! parallelize over grid points.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun;

/// Imaginary residue above this is a logic error, not rounding.
pub(crate) const IMAG_RESIDUE_TOL: f64 = 1e-9;

/// Mass, angular frequency and Planck constant of the oscillator.
///
/// The derived inverse-square length α = mω/ħ fixes every spatial scale;
/// natural units (1, 1, 1) are the default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    pub mass: f64,
    pub omega: f64,
    pub hbar: f64,
}

impl Default for OscillatorParams {
    fn default() -> Self {
        Self::natural()
    }
}

impl OscillatorParams {
    /// m = ω = ħ = 1.
    pub fn natural() -> Self {
        OscillatorParams {
            mass: 1.0,
            omega: 1.0,
            hbar: 1.0,
        }
    }

    pub fn new(mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0 && omega > 0.0 && hbar > 0.0)
            || !mass.is_finite()
            || !omega.is_finite()
            || !hbar.is_finite()
        {
            return Err(Error::domain(
                "OscillatorParams",
                format!("mass, omega, hbar must be positive and finite, got ({mass}, {omega}, {hbar})"),
            ));
        }
        Ok(OscillatorParams { mass, omega, hbar })
    }

    /// α = mω/ħ, the inverse square of the ground-state length.
    pub fn alpha(&self) -> f64 {
        self.mass * self.omega / self.hbar
    }

    /// Classical turning point xₙ = √((2n+1)ħ/(mω)) of level n.
    pub fn classical_amplitude(&self, n: u32) -> f64 {
        ((2.0 * n as f64 + 1.0) / self.alpha()).sqrt()
    }

    /// Momentum scale √(2mωħ) that makes ξ₀ = p/√(2mωħ) dimensionless.
    pub fn momentum_scale(&self) -> f64 {
        (2.0 * self.mass * self.omega * self.hbar).sqrt()
    }
}

/// Spatial truncation radius beyond which every density with quantum
/// numbers ≤ n is below the 1e-12 tail budget: the classically allowed
/// region plus a generous evanescent margin.
pub fn truncation_radius(n: u32, params: &OscillatorParams) -> f64 {
    let n_eff = n.max(1) as f64;
    params.classical_amplitude(n) * (1.0 + 10.0 / n_eff.sqrt()) + 10.0 / params.alpha().sqrt()
}

/// Ordered pair of quantum numbers (n, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModePair {
    pub n: u32,
    pub m: u32,
}

impl ModePair {
    pub fn new(n: u32, m: u32) -> Self {
        ModePair { n, m }
    }

    /// υ = n − m; may be negative.
    pub fn offset(&self) -> i64 {
        self.n as i64 - self.m as i64
    }

    /// The same pair with n ≥ m, plus whether a swap (conjugation of any
    /// phase convention) was applied.
    pub fn canonical(&self) -> (ModePair, bool) {
        if self.n >= self.m {
            (*self, false)
        } else {
            (ModePair::new(self.m, self.n), true)
        }
    }
}

/// Finite normalized superposition Σ cₙ |n⟩, stored as a sorted map from
/// quantum number to complex coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    entries: BTreeMap<u32, Complex64>,
}

impl Superposition {
    /// Builds from (n, cₙ) pairs and normalizes so that Σ|cₙ|² = 1.
    /// Duplicate quantum numbers accumulate.
    pub fn from_coefficients<I>(coefficients: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, Complex64)>,
    {
        let mut entries: BTreeMap<u32, Complex64> = BTreeMap::new();
        for (n, c) in coefficients {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::domain(
                    "Superposition",
                    format!("coefficient of |{n}> is not finite"),
                ));
            }
            *entries.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        entries.retain(|_, c| c.norm_sqr() > 0.0);
        let norm_sq: f64 = entries.values().map(|c| c.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::domain(
                "Superposition",
                "at least one nonzero coefficient is required",
            ));
        }
        let scale = norm_sq.sqrt().recip();
        for c in entries.values_mut() {
            *c *= scale;
        }
        Ok(Superposition { entries })
    }

    /// Single eigenstate |n⟩.
    pub fn eigenstate(n: u32) -> Self {
        Superposition {
            entries: BTreeMap::from([(n, Complex64::new(1.0, 0.0))]),
        }
    }

    /// Equal-weight real mix of the given levels.
    pub fn equal_mix(levels: &[u32]) -> Result<Self> {
        Superposition::from_coefficients(
            levels.iter().map(|&n| (n, Complex64::new(1.0, 0.0))),
        )
    }

    /// Discrete Gaussian profile cₙ ∝ exp(−(n − n̄)²/(4σ²)), truncated at
    /// 6σ and renormalized, so that |cₙ|² has mean n̄ and width σ.
    pub fn gaussian(nbar: f64, sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 || !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::domain(
                "Superposition::gaussian",
                format!("need nbar >= 0 and sigma > 0, got nbar = {nbar}, sigma = {sigma}"),
            ));
        }
        let lo = (nbar - 6.0 * sigma).floor().max(0.0) as u32;
        let hi = (nbar + 6.0 * sigma).ceil() as u32;
        Superposition::from_coefficients((lo..=hi).map(|n| {
            let z = (n as f64 - nbar) / sigma;
            (n, Complex64::new((-0.25 * z * z).exp(), 0.0))
        }))
    }

    pub fn coefficient(&self, n: u32) -> Option<Complex64> {
        self.entries.get(&n).copied()
    }

    /// Sorted iterator over (n, cₙ).
    pub fn iter(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.entries.iter().map(|(&n, &c)| (n, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_level(&self) -> u32 {
        *self.entries.keys().next_back().expect("non-empty by construction")
    }

    pub fn min_level(&self) -> u32 {
        *self.entries.keys().next().expect("non-empty by construction")
    }

    /// n_max − n_min of the support.
    pub fn support_width(&self) -> u32 {
        self.max_level() - self.min_level()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.values().map(|c| c.norm_sqr()).sum()
    }
}

/// Grid of abscissae with complex values and metadata identifying the
/// formula that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub abscissae: Vec<f64>,
    pub values: Vec<Complex64>,
    pub meta: FieldMeta,
}

impl SampledField {
    pub fn new(abscissae: Vec<f64>, values: Vec<Complex64>, meta: FieldMeta) -> Result<Self> {
        if abscissae.len() != values.len() {
            return Err(Error::contract(
                "SampledField",
                format!(
                    "{} abscissae but {} values",
                    abscissae.len(),
                    values.len()
                ),
            ));
        }
        if abscissae.iter().any(|v| v.is_nan()) || abscissae.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::contract(
                "SampledField",
                "abscissae must be strictly increasing",
            ));
        }
        Ok(SampledField {
            abscissae,
            values,
            meta,
        })
    }
}

/// Formula tag and parameters of a sampled field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FieldMeta {
    pub formula: String,
    pub parameters: Vec<(String, f64)>,
    pub notes: Vec<String>,
}

impl FieldMeta {
    pub fn new(formula: &str) -> Self {
        FieldMeta {
            formula: formula.to_string(),
            parameters: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.parameters.push((key.to_string(), value));
        self
    }
}

/// Quantized energy Eₙ = ħω(n + 1/2).
pub fn energy(n: u32, params: &OscillatorParams) -> f64 {
    params.hbar * params.omega * (n as f64 + 0.5)
}

/// Stationary state ψₙ(x) = α^{1/4} hₙ(√α x) through the orthonormal
/// Hermite functions, finite for any order the recurrence supports.
pub fn eigenstate(n: u32, x: f64, params: &OscillatorParams) -> Result<f64> {
    let root_alpha = params.alpha().sqrt();
    Ok(root_alpha.sqrt() * specfun::hermite_function(n, root_alpha * x)?)
}

/// Spatial density-matrix component ρ̃ₙ,ₘ(x) = ψₙ(x) ψₘ(x).
///
/// Computed as √α hₙ(ξ) hₘ(ξ) with ξ = √α x; the textbook
/// 1/√(2ⁿn! 2ᵐm!) normalization is mathematically identical but unusable
/// at large n.
pub fn density_component(pair: ModePair, x: f64, params: &OscillatorParams) -> Result<f64> {
    let root_alpha = params.alpha().sqrt();
    let (hn, hm) = specfun::hermite_pair(pair.n, pair.m, root_alpha * x)?;
    Ok(root_alpha * hn * hm)
}

/// Checks that a sum which must be real analytically is real numerically,
/// then discards the imaginary part.
pub(crate) fn take_real(context: &'static str, z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::InternalConsistency {
            context,
            message: format!("imaginary residue {:e} exceeds {IMAG_RESIDUE_TOL:e}", z.im),
        });
    }
    Ok(z.re)
}

/// Exact time-dependent position density of a normalized superposition,
/// ρ(x, t) = Σₙ,ₘ cₙ cₘ* ρ̃ₙ,ₘ(x) e^{−i(Eₙ−Eₘ)t/ħ}.
///
/// The double sum runs over the sorted support in a fixed order; the
/// imaginary part must cancel to rounding and is checked before being
/// dropped.
pub fn density_matrix_xt(
    state: &Superposition,
    x: f64,
    t: f64,
    params: &OscillatorParams,
) -> Result<f64> {
    let root_alpha = params.alpha().sqrt();
    let values = specfun::hermite_functions_upto(state.max_level(), root_alpha * x)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, cn) in state.iter() {
        for (m, cm) in state.iter() {
            let rho = root_alpha * values[n as usize] * values[m as usize];
            let phase = Complex64::from_polar(
                1.0,
                -(energy(n, params) - energy(m, params)) * t / params.hbar,
            );
            acc += cn * cm.conj() * rho * phase;
        }
    }
    take_real("density_matrix_xt", acc)
}

/// υ · ω^CL with ω^CL = 2π ∂Eₙ/∂J the action derivative of the spectrum.
///
/// For the linear oscillator spectrum ω^CL is identically ω, so this equals
/// (E_{n+υ} − Eₙ)/ħ exactly; the quantum transition frequency and the
/// classical harmonic coincide at every n.
pub fn classical_frequency(_n: u32, v: i64, params: &OscillatorParams) -> f64 {
    v as f64 * params.omega
}
