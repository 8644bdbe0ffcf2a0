//! Exact and asymptotic expectation values of position observables.
//!
//! The exact route integrates 𝒪(x) against the density components by
//! quadrature, caching each matrix element per (pair, observable); the
//! asymptotic route reduces every integral to a Gauss–Chebyshev moment of
//! the observable against T_υ, which is exact for polynomials within the
//! node bound. Momentum-dependent observables are out of scope: the whole
//! machinery lives in the position representation.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::asymptotics::{AsymptoticIndex, TurningAmplitude};
use crate::error::{Error, Result};
use crate::oscillator::{self, OscillatorParams, Superposition};
use crate::quadrature::{self, QuadratureSpec};

/// Gauss–Chebyshev refinement cap; an observable whose moments have not
/// settled by then is declared non-integrable against the weight.
const GC_DOUBLING_CAP: usize = 1 << 16;

/// A real observable given as a function of position, with its polynomial
/// degree when known (degree-aware moments are then exact by quadrature).
#[derive(Clone)]
pub struct PositionObservable {
    label: String,
    degree: Option<u32>,
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for PositionObservable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PositionObservable")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .finish()
    }
}

impl PositionObservable {
    /// 𝒪(x) = x.
    pub fn position() -> Self {
        PositionObservable {
            label: "x".into(),
            degree: Some(1),
            evaluator: Arc::new(|x| x),
        }
    }

    /// 𝒪(x) = x².
    pub fn position_squared() -> Self {
        PositionObservable {
            label: "x^2".into(),
            degree: Some(2),
            evaluator: Arc::new(|x| x * x),
        }
    }

    /// 𝒪(x) = xᵏ.
    pub fn monomial(k: u32) -> Self {
        PositionObservable {
            label: format!("x^{k}"),
            degree: Some(k),
            evaluator: Arc::new(move |x| x.powi(k as i32)),
        }
    }

    /// Polynomial c₀ + c₁x + ... in ascending coefficient order.
    pub fn polynomial(coefficients: &[f64]) -> Result<Self> {
        if coefficients.is_empty() || coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain(
                "PositionObservable::polynomial",
                "coefficients must be non-empty and finite",
            ));
        }
        let degree = coefficients
            .iter()
            .rposition(|&c| c != 0.0)
            .unwrap_or(0) as u32;
        let label = format!(
            "poly({})",
            coefficients
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let coeffs: Vec<f64> = coefficients.to_vec();
        Ok(PositionObservable {
            label,
            degree: Some(degree),
            evaluator: Arc::new(move |x| {
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
            }),
        })
    }

    /// Arbitrary evaluator with no degree information; moments fall back to
    /// doubling until convergence. The label is the cache identity, so it
    /// must be unique per distinct function.
    pub fn custom<F>(label: &str, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PositionObservable {
            label: label.to_string(),
            degree: None,
            evaluator: Arc::new(f),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }
}

fn gauss_chebyshev_sum(obs: &PositionObservable, chi: f64, v: u32, nodes: usize) -> f64 {
    let vf = v as f64;
    let mut sum = 0.0;
    for k in 1..=nodes {
        let theta = (2.0 * k as f64 - 1.0) * std::f64::consts::PI / (2.0 * nodes as f64);
        sum += obs.eval(chi * theta.cos()) * (vf * theta).cos();
    }
    sum / nodes as f64
}

/// The asymptotic expectation kernel
/// ∫₋₁⁺¹ 𝒪(χξ) T_υ(ξ) / (π√(1−ξ²)) dξ
/// by Gauss–Chebyshev quadrature (1/K) Σ 𝒪(χ cos θₖ) cos(υθₖ) over
/// θₖ = (2k−1)π/2K.
///
/// With a known polynomial degree d the rule uses K ≥ υ + d + 1 nodes and
/// is exact to rounding; otherwise K doubles from max(nodes, 64) until two
/// successive values agree to 1e-10, refusing at the cap.
pub fn chebyshev_moment(
    obs: &PositionObservable,
    chi: &TurningAmplitude,
    v: u32,
    nodes: usize,
) -> Result<f64> {
    match obs.degree() {
        Some(degree) => {
            let k = nodes.max((v + degree + 1) as usize);
            Ok(gauss_chebyshev_sum(obs, chi.chi, v, k))
        }
        None => {
            let mut k = nodes.max(64);
            let mut prev = gauss_chebyshev_sum(obs, chi.chi, v, k);
            let mut evaluations = k;
            while k <= GC_DOUBLING_CAP {
                k *= 2;
                let cur = gauss_chebyshev_sum(obs, chi.chi, v, k);
                evaluations += k;
                if (cur - prev).abs() <= 1e-10 * cur.abs().max(1.0) {
                    return Ok(cur);
                }
                prev = cur;
            }
            Err(Error::NonConvergence {
                evaluations,
                last_delta: prev,
            })
        }
    }
}

/// Exact and asymptotic expectation values over a fixed parameter set, with
/// the matrix-element cache the exact route needs for time series.
///
/// The cache is keyed by (min(n,m), max(n,m), observable label); reads are
/// concurrent, insertion is exclusive, and recomputed values are identical,
/// so results never depend on thread interleaving.
pub struct ExpectationEngine {
    params: OscillatorParams,
    quad: QuadratureSpec,
    cache: RwLock<HashMap<(u32, u32, String), f64>>,
}

impl ExpectationEngine {
    pub fn new(params: OscillatorParams, quad: QuadratureSpec) -> Self {
        ExpectationEngine {
            params,
            quad,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Engine with a quadrature budget sized for states up to level
    /// `n_max`.
    pub fn with_auto_quadrature(params: OscillatorParams, n_max: u32) -> Self {
        let quad = element_quadrature(n_max, &params);
        ExpectationEngine::new(params, quad)
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    /// ⟨m|𝒪|n⟩ = ∫ 𝒪(x) ρ̃ₘ,ₙ(x) dx by quadrature, cached per
    /// (pair, observable).
    pub fn matrix_element(&self, n: u32, m: u32, obs: &PositionObservable) -> Result<f64> {
        let key = (n.min(m), n.max(m), obs.label().to_string());
        if let Some(&v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(v);
        }

        let top = n.max(m);
        let (lo, hi) = self.quad.domain.unwrap_or_else(|| {
            let r = oscillator::truncation_radius(top, &self.params);
            (-r, r)
        });
        let root_alpha = self.params.alpha().sqrt();
        let wavenumber =
            root_alpha * ((2.0 * n as f64 + 1.0).sqrt() + (2.0 * m as f64 + 1.0).sqrt());
        let required =
            quadrature::required_nodes(hi - lo, 2.0 * std::f64::consts::PI / wavenumber);
        quadrature::check_resolution(&self.quad, required)?;

        let pair = oscillator::ModePair::new(n, m);
        let value = quadrature::integrate(
            |x| {
                obs.eval(x)
                    * oscillator::density_component(pair, x, &self.params)
                        .expect("quadrature nodes are finite")
            },
            lo,
            hi,
            self.quad.nodes,
        );
        self.cache.write().expect("cache lock").insert(key, value);
        Ok(value)
    }

    /// Exact expectation value
    /// ⟨𝒪⟩(t) = Σₙ,ₘ cₙ cₘ* e^{−i(Eₙ−Eₘ)t/ħ} ⟨m|𝒪|n⟩,
    /// real after the residue check, periodic in t with period 2π/ω.
    pub fn exact(
        &self,
        state: &Superposition,
        obs: &PositionObservable,
        t: f64,
    ) -> Result<f64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, cn) in state.iter() {
            for (m, cm) in state.iter() {
                let element = self.matrix_element(m, n, obs)?;
                let phase = Complex64::from_polar(
                    1.0,
                    -(oscillator::energy(n, &self.params) - oscillator::energy(m, &self.params))
                        * t
                        / self.params.hbar,
                );
                acc += cn * cm.conj() * element * phase;
            }
        }
        oscillator::take_real("expectation_exact", acc)
    }

    /// Asymptotic expectation value, see [`expectation_asymptotic`].
    pub fn asymptotic(
        &self,
        state: &Superposition,
        obs: &PositionObservable,
        t: f64,
        vmax: u32,
    ) -> Result<f64> {
        expectation_asymptotic(state, obs, t, vmax, &self.params)
    }
}

/// One-shot exact expectation value; time series should hold an
/// [`ExpectationEngine`] instead so matrix elements are reused.
pub fn expectation_exact(
    state: &Superposition,
    obs: &PositionObservable,
    t: f64,
    params: &OscillatorParams,
    quad: &QuadratureSpec,
) -> Result<f64> {
    ExpectationEngine::new(*params, *quad).exact(state, obs, t)
}

/// Asymptotic expectation value: the classical term
/// Σₙ |cₙ|² ∫𝒪 ρ̃ₙ,ₙ (a υ = 0 Chebyshev moment against the arcsine
/// density) plus the interference sum with the (1−(υ−1)/(2n))^{−υ/2}
/// prefactors, e^{−iυωt} phases, and Hermitian closure over ±υ.
///
/// Its time average over one period is the classical term alone.
pub fn expectation_asymptotic(
    state: &Superposition,
    obs: &PositionObservable,
    t: f64,
    vmax: u32,
    params: &OscillatorParams,
) -> Result<f64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, cn) in state.iter() {
        let amplitude = TurningAmplitude::new(params.classical_amplitude(n))?;
        acc += cn.norm_sqr() * chebyshev_moment(obs, &amplitude, 0, 64)?;
        for v in 1..=vmax.min(n) {
            let Some(cm) = state.coefficient(n - v) else {
                continue;
            };
            let idx = AsymptoticIndex::new(n, v)?;
            let moment = chebyshev_moment(obs, &idx.chi(params), v, 64)?;
            let phase = Complex64::from_polar(
                1.0,
                -oscillator::classical_frequency(n, v as i64, params) * t,
            );
            let term = cn * cm.conj() * idx.prefactor() * moment * phase;
            acc += term + term.conj();
        }
    }
    oscillator::take_real("expectation_asymptotic", acc)
}

/// A spec with margin for matrix elements of states up to level `n_max`.
pub fn element_quadrature(n_max: u32, params: &OscillatorParams) -> QuadratureSpec {
    let radius = oscillator::truncation_radius(n_max, params);
    let wavenumber = 2.0 * params.alpha().sqrt() * (2.0 * n_max as f64 + 1.0).sqrt();
    let required =
        quadrature::required_nodes(2.0 * radius, 2.0 * std::f64::consts::PI / wavenumber);
    QuadratureSpec::gauss_legendre(required + required / 2 + 64)
}
