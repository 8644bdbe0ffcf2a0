//! First-order large-n asymptotics: Bessel-form Fourier coefficients, the
//! Chebyshev-form macroscopic density components, the classical arcsine
//! density, and assembly of the macroscopic time-dependent density.
//!
//! Only the leading term of the Laguerre → Bessel iteration is implemented;
//! the iteration's integral correction is strongly suppressed in the regime
//! of interest and is deliberately out of scope ([`szego_first_order`] is
//! the extension point a higher-order term would build on).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{neg_i_pow, MomentumAbscissa};
use crate::oscillator::{self, FieldMeta, OscillatorParams, SampledField, Superposition};
use crate::specfun;

/// Relative distance from the turning point below which pointwise
/// evaluation clamps instead of diverging.
const ENDPOINT_CLAMP: f64 = 1e-12;

/// Index pair (n, n−υ) of an asymptotic expression, with the effective
/// order N = n − (υ−1)/2 and the prefactor (1 − (υ−1)/(2n))^{−υ/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AsymptoticIndex {
    n: u32,
    v: u32,
}

impl AsymptoticIndex {
    /// Requires n ≥ 1 and 0 ≤ υ ≤ n.
    pub fn new(n: u32, v: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::contract("AsymptoticIndex", "n must be at least 1"));
        }
        if v > n {
            return Err(Error::contract(
                "AsymptoticIndex",
                format!("offset v = {v} exceeds n = {n}"),
            ));
        }
        Ok(AsymptoticIndex { n, v })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    /// Effective order N = n − (υ − 1)/2; always positive for valid
    /// indices.
    pub fn big_n(&self) -> f64 {
        self.n as f64 - (self.v as f64 - 1.0) / 2.0
    }

    /// (1 − (υ−1)/(2n))^{−υ/2}; the empty power 1 for υ = 0, and ≥ 1 for
    /// υ ≥ 1.
    pub fn prefactor(&self) -> f64 {
        if self.v == 0 {
            return 1.0;
        }
        let base = 1.0 - (self.v as f64 - 1.0) / (2.0 * self.n as f64);
        (-0.5 * self.v as f64 * base.ln()).exp()
    }

    /// Turning amplitude χₙ,ₙ₋ᵤ = √(2Nħ/(mω)).
    pub fn chi(&self, params: &OscillatorParams) -> TurningAmplitude {
        TurningAmplitude {
            chi: (2.0 * self.big_n() * params.hbar / (params.mass * params.omega)).sqrt(),
        }
    }
}

/// Classical turning amplitude of an asymptotic density component; for
/// υ = 0 it coincides with the classical amplitude xₙ of level n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningAmplitude {
    pub chi: f64,
}

impl TurningAmplitude {
    pub fn new(chi: f64) -> Result<Self> {
        if !chi.is_finite() || chi <= 0.0 {
            return Err(Error::domain(
                "TurningAmplitude",
                format!("chi must be positive and finite, got {chi}"),
            ));
        }
        Ok(TurningAmplitude { chi })
    }
}

/// Asymptotic Fourier coefficient
/// fₙ,ₙ₋ᵤ(p) ∼ (−i)^υ (1 − (υ−1)/(2n))^{−υ/2} J_υ(2√N ξ₀).
///
/// Valid for any well-formed index; how far into the n ≫ υ regime the
/// approximation is trusted is the caller's judgment.
pub fn fourier_asymptotic(
    idx: AsymptoticIndex,
    p: MomentumAbscissa,
    params: &OscillatorParams,
) -> Result<Complex64> {
    let xi0 = p.xi0(params);
    let bessel = specfun::bessel_j(idx.v(), 2.0 * idx.big_n().sqrt() * xi0)?;
    Ok(neg_i_pow(idx.v()) * (idx.prefactor() * bessel))
}

/// Shared arcsine-family evaluation with the endpoint policy applied:
/// values within `ENDPOINT_CLAMP`·χ of a turning point evaluate at the
/// clamped abscissa, so a signed infinity is never produced.
fn chebyshev_arcsine(v: u32, prefactor: f64, chi: f64, x: f64) -> (f64, bool) {
    let u = x / chi;
    if u.abs() > 1.0 {
        return (0.0, false);
    }
    let window = specfun::rect(0.5 * u);
    let (uc, clamped) = if u.abs() >= 1.0 - ENDPOINT_CLAMP {
        (u.signum() * (1.0 - ENDPOINT_CLAMP), true)
    } else {
        (u, false)
    };
    let poly = (v as f64 * uc.acos()).cos();
    let value =
        prefactor * poly * window / (std::f64::consts::PI * chi * (1.0 - uc * uc).sqrt());
    (value, clamped)
}

/// Macroscopic density component
/// ρ̃ₙ,ₙ₋ᵤ(x) ∼ (1 − (υ−1)/(2n))^{−υ/2} T_υ(x/χ) / (π √(χ² − x²))
/// on |x| < χ, zero outside, clamped at the turning points.
pub fn density_asymptotic(
    idx: AsymptoticIndex,
    x: f64,
    params: &OscillatorParams,
) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("density_asymptotic", format!("x = {x} not finite")));
    }
    let chi = idx.chi(params).chi;
    Ok(chebyshev_arcsine(idx.v(), idx.prefactor(), chi, x).0)
}

/// [`density_asymptotic`] over a grid, recording which points were clamped
/// at a turning point in the field notes.
pub fn density_asymptotic_field(
    idx: AsymptoticIndex,
    grid: &[f64],
    params: &OscillatorParams,
) -> Result<SampledField> {
    let chi = idx.chi(params).chi;
    let prefactor = idx.prefactor();
    let mut values = Vec::with_capacity(grid.len());
    let mut clamped_points = Vec::new();
    for (i, &x) in grid.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::domain(
                "density_asymptotic_field",
                format!("grid point {i} is not finite"),
            ));
        }
        let (value, clamped) = chebyshev_arcsine(idx.v(), prefactor, chi, x);
        if clamped {
            clamped_points.push(i);
        }
        values.push(Complex64::new(value, 0.0));
    }
    let mut meta = FieldMeta::new("density_asymptotic")
        .with("n", idx.n() as f64)
        .with("v", idx.v() as f64)
        .with("chi", chi);
    if !clamped_points.is_empty() {
        meta.notes.push(format!(
            "clamped at turning point: indices {clamped_points:?}"
        ));
    }
    SampledField::new(grid.to_vec(), values, meta)
}

/// Classical position density of the oscillator at the energy of level n:
/// 1/(π √(xₙ² − x²)) inside the turning points, zero outside.
///
/// Identical, bit for bit, to [`density_asymptotic`] with υ = 0.
pub fn classical_density(n: u32, x: f64, params: &OscillatorParams) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("classical_density", format!("x = {x} not finite")));
    }
    Ok(chebyshev_arcsine(0, 1.0, params.classical_amplitude(n), x).0)
}

/// Default interference cutoff: three times the support width, beyond which
/// every term vanishes identically for any superposition.
pub fn default_vmax(state: &Superposition) -> u32 {
    3 * state.support_width()
}

/// Macroscopic time-dependent density
/// ρ(x, t) ∼ Σₙ Σ_υ cₙ c*ₙ₋ᵤ ρ̃ₙ,ₙ₋ᵤ(x) e^{−iυω^CL t},
/// with negative-υ terms supplied as complex conjugates of their positive-υ
/// partners (Hermitian closure), so the assembled density is real.
pub fn macroscopic_density_xt(
    state: &Superposition,
    x: f64,
    t: f64,
    vmax: u32,
    params: &OscillatorParams,
) -> Result<f64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, cn) in state.iter() {
        acc += cn.norm_sqr() * classical_density(n, x, params)?;
        for v in 1..=vmax.min(n) {
            let Some(cm) = state.coefficient(n - v) else {
                continue;
            };
            let idx = AsymptoticIndex::new(n, v)?;
            let rho = density_asymptotic(idx, x, params)?;
            let phase = Complex64::from_polar(
                1.0,
                -oscillator::classical_frequency(n, v as i64, params) * t,
            );
            let term = cn * cm.conj() * rho * phase;
            acc += term + term.conj();
        }
    }
    oscillator::take_real("macroscopic_density_xt", acc)
}

/// Leading Szegő term of e^{−x²/2} x^υ L_n^υ(x²) in its raw Laguerre
/// variables: (Γ(n+υ+1)/(N^{υ/2} n!)) J_υ(2√N x) with N = n + (υ+1)/2.
///
/// Exposed separately so the reduction to [`fourier_asymptotic`] —
/// including the n!/m! ≈ n^υ step — is independently testable.
pub fn szego_first_order(n: u32, v: u32, x: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::contract("szego_first_order", "n must be at least 1"));
    }
    if !x.is_finite() {
        return Err(Error::domain("szego_first_order", format!("x = {x} not finite")));
    }
    let big_n = n as f64 + (v as f64 + 1.0) / 2.0;
    // ln Γ(n+υ+1) − ln Γ(n+1), in log space
    let log_gamma_ratio = -specfun::log_ratio_factorial(n + v, n)?;
    let prefactor = (log_gamma_ratio - 0.5 * v as f64 * big_n.ln()).exp();
    Ok(prefactor * specfun::bessel_j(v, 2.0 * big_n.sqrt() * x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::fourier_exact;
    use crate::oscillator::ModePair;
    use crate::quadrature;
    use crate::specfun::{assoc_laguerre, bessel_j};

    fn natural() -> OscillatorParams {
        OscillatorParams::natural()
    }

    fn xi(xi0: f64) -> MomentumAbscissa {
        MomentumAbscissa::from_xi0(xi0, &natural())
    }

    #[test]
    fn index_invariants() {
        assert!(AsymptoticIndex::new(0, 0).is_err());
        assert!(AsymptoticIndex::new(3, 4).is_err());
        let idx = AsymptoticIndex::new(100, 0).unwrap();
        assert_eq!(idx.prefactor(), 1.0);
        assert_eq!(idx.big_n(), 100.5);
        let idx = AsymptoticIndex::new(100, 1).unwrap();
        assert_eq!(idx.prefactor(), 1.0); // base is exactly 1 for υ = 1
        assert_eq!(idx.big_n(), 100.0);
        for v in 2..=50 {
            let idx = AsymptoticIndex::new(100, v).unwrap();
            assert!(idx.prefactor() > 1.0);
            assert!(idx.prefactor().is_finite());
            assert!(idx.big_n() > 0.0);
        }
    }

    #[test]
    fn chi_of_diagonal_is_classical_amplitude() {
        let params = natural();
        for &n in &[1u32, 10, 100, 10000] {
            let idx = AsymptoticIndex::new(n, 0).unwrap();
            assert!(
                (idx.chi(&params).chi - params.classical_amplitude(n)).abs() < 1e-12,
                "χ_n,n vs x_n at n = {n}"
            );
        }
        // ½ m ω² xₙ² = ħω(n + ½) to machine precision
        let params = OscillatorParams::new(1.7, 0.9, 2.3).unwrap();
        for n in 0..200u32 {
            let xn = params.classical_amplitude(n);
            let lhs = 0.5 * params.mass * params.omega * params.omega * xn * xn;
            let rhs = oscillator::energy(n, &params);
            assert!((lhs - rhs).abs() <= 1e-13 * rhs);
        }
    }

    #[test]
    fn fourier_asymptotic_known_rows() {
        let params = natural();
        // diagonal: J₀(2√(n+½) ξ₀)
        let n = 300u32;
        for &x0 in &[0.0, 0.4, 1.7] {
            let idx = AsymptoticIndex::new(n, 0).unwrap();
            let got = fourier_asymptotic(idx, xi(x0), &params).unwrap();
            let expect = bessel_j(0, 2.0 * (n as f64 + 0.5).sqrt() * x0).unwrap();
            assert!((got.re - expect).abs() < 1e-14);
            assert_eq!(got.im, 0.0);
        }
        // first off-diagonal: −i J₁(2√n ξ₀)
        let idx = AsymptoticIndex::new(n, 1).unwrap();
        let got = fourier_asymptotic(idx, xi(0.9), &params).unwrap();
        let expect = -bessel_j(1, 2.0 * (n as f64).sqrt() * 0.9).unwrap();
        assert_eq!(got.re, 0.0);
        assert!((got.im - expect).abs() < 1e-14);
        // ξ₀ = 0 on the diagonal matches the exact normalization f = 1
        let idx = AsymptoticIndex::new(12, 0).unwrap();
        assert_eq!(
            fourier_asymptotic(idx, xi(0.0), &params).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn fourier_asymptotic_magnitude_bounded_by_prefactor() {
        // |J_υ| ≤ 1, so the modulus never exceeds the index prefactor.
        let params = natural();
        for &(n, v) in &[(100u32, 0u32), (100, 1), (100, 7), (500, 40)] {
            let idx = AsymptoticIndex::new(n, v).unwrap();
            for i in 0..=40 {
                let x0 = -6.0 + 12.0 * i as f64 / 40.0;
                let value = fourier_asymptotic(idx, xi(x0), &params).unwrap();
                assert!(
                    value.norm() <= idx.prefactor() * (1.0 + 1e-14),
                    "|f| = {} exceeds prefactor {} at (n,v)=({n},{v})",
                    value.norm(),
                    idx.prefactor()
                );
            }
        }
    }

    #[test]
    fn density_asymptotic_center_and_window() {
        let params = natural();
        let n = 50u32;
        let idx = AsymptoticIndex::new(n, 0).unwrap();
        let xn = params.classical_amplitude(n);
        let got = density_asymptotic(idx, 0.0, &params).unwrap();
        assert!((got - 1.0 / (std::f64::consts::PI * xn)).abs() < 1e-14);
        // outside the window
        assert_eq!(density_asymptotic(idx, 1.2 * xn, &params).unwrap(), 0.0);
        assert_eq!(density_asymptotic(idx, -40.0, &params).unwrap(), 0.0);
    }

    #[test]
    fn density_asymptotic_parity() {
        let params = natural();
        for &v in &[0u32, 1, 2, 5] {
            let idx = AsymptoticIndex::new(40, v).unwrap();
            let chi = idx.chi(&params).chi;
            for &frac in &[0.11, 0.5, 0.83] {
                let plus = density_asymptotic(idx, frac * chi, &params).unwrap();
                let minus = density_asymptotic(idx, -frac * chi, &params).unwrap();
                let sign = if v % 2 == 1 { -1.0 } else { 1.0 };
                assert!(
                    (minus - sign * plus).abs() <= 1e-15 * plus.abs().max(1.0),
                    "parity at v={v}, frac={frac}"
                );
            }
        }
    }

    #[test]
    fn endpoints_clamp_instead_of_diverging() {
        let params = natural();
        let idx = AsymptoticIndex::new(25, 3).unwrap();
        let chi = idx.chi(&params).chi;
        for &x in &[chi, -chi, chi * (1.0 - 1e-13), chi * (1.0 - 1e-16)] {
            let v = density_asymptotic(idx, x, &params).unwrap();
            assert!(v.is_finite(), "value at |x| = χ must be finite, got {v}");
        }
        let grid = [-chi, -0.5 * chi, 0.0, 0.5 * chi, chi];
        let field = density_asymptotic_field(idx, &grid, &params).unwrap();
        assert!(field.values.iter().all(|z| z.re.is_finite()));
        assert_eq!(field.meta.notes.len(), 1);
        assert!(field.meta.notes[0].contains("[0, 4]"));
    }

    #[test]
    fn classical_density_basics() {
        let params = natural();
        // n = 0 in natural units: x₀ = 1, ρ(0) = 1/π
        let got = classical_density(0, 0.0, &params).unwrap();
        assert!((got - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        // arcsine normalization via the θ-substitution that absorbs the
        // endpoint singularity analytically
        for &n in &[0u32, 7, 1000] {
            let xn = params.classical_amplitude(n);
            let total = quadrature::integrate(
                |theta| {
                    classical_density(n, xn * theta.sin(), &params).unwrap()
                        * xn
                        * theta.cos()
                },
                -std::f64::consts::FRAC_PI_2,
                std::f64::consts::FRAC_PI_2,
                256,
            );
            assert!((total - 1.0).abs() < 1e-10, "∫ρ_cl for n = {n}: {total}");
        }
    }

    #[test]
    fn classical_density_equals_diagonal_asymptotic_bitwise() {
        let params = OscillatorParams::new(1.3, 0.7, 1.1).unwrap();
        for &n in &[1u32, 10, 500] {
            let idx = AsymptoticIndex::new(n, 0).unwrap();
            let xn = params.classical_amplitude(n);
            for i in 0..50 {
                let x = -1.1 * xn + 2.2 * xn * i as f64 / 49.0;
                assert_eq!(
                    classical_density(n, x, &params).unwrap(),
                    density_asymptotic(idx, x, &params).unwrap()
                );
            }
        }
    }

    #[test]
    fn suppression_below_one_percent_inside_trusted_window() {
        // The quantitative interference bound at n = 10⁴ for ρ̄ = ρ̃/√α.
        let params = natural();
        let root_alpha = params.alpha().sqrt();
        for &v in &[1u32, 2, 50, 100] {
            let idx = AsymptoticIndex::new(10_000, v).unwrap();
            let chi = idx.chi(&params).chi;
            let mut max_abs: f64 = 0.0;
            for i in 0..=2000 {
                let x = -0.75 * chi + 1.5 * chi * i as f64 / 2000.0;
                let val = density_asymptotic(idx, x, &params).unwrap() / root_alpha;
                max_abs = max_abs.max(val.abs());
            }
            assert!(max_abs < 0.01, "max |ρ̄| = {max_abs} at v = {v}");
            assert!(max_abs > 0.0);
        }
    }

    #[test]
    fn single_eigenstate_macroscopic_density_is_classical() {
        let params = natural();
        let state = Superposition::eigenstate(80);
        for &x in &[0.0, 3.0, 11.0] {
            let expect = classical_density(80, x, &params).unwrap();
            for &t in &[0.0, 0.7, 5.0] {
                let got = macroscopic_density_xt(&state, x, t, 5, &params).unwrap();
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn neighboring_mix_time_average_is_diagonal_mean() {
        // The υ = 1 term carries e^{−iωt}, which averages to zero over one
        // period, leaving the mean of the two diagonal profiles.
        let params = natural();
        let n = 60u32;
        let state = Superposition::equal_mix(&[n, n - 1]).unwrap();
        let period = 2.0 * std::f64::consts::PI / params.omega;
        for &x in &[0.0, 2.5, 7.0] {
            let average = quadrature::integrate(
                |t| macroscopic_density_xt(&state, x, t, 3, &params).unwrap(),
                0.0,
                period,
                128,
            ) / period;
            let expect = 0.5
                * (classical_density(n, x, &params).unwrap()
                    + classical_density(n - 1, x, &params).unwrap());
            assert!(
                (average - expect).abs() < 1e-10,
                "time average at x = {x}: {average} vs {expect}"
            );
        }
    }

    #[test]
    fn default_vmax_scales_with_support() {
        assert_eq!(default_vmax(&Superposition::eigenstate(5)), 0);
        assert_eq!(
            default_vmax(&Superposition::equal_mix(&[10, 12]).unwrap()),
            6
        );
    }

    #[test]
    fn szego_diagonal_is_plain_bessel() {
        // υ = 0: the Γ-ratio is empty and N = n + ½.
        for &n in &[1u32, 40, 900] {
            for &x in &[0.0, 0.3, 1.2] {
                let got = szego_first_order(n, 0, x).unwrap();
                let expect = bessel_j(0, 2.0 * (n as f64 + 0.5).sqrt() * x).unwrap();
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn szego_error_shrinks_with_order() {
        // u(x) = e^{−x²/2} x^υ L_n^υ(x²) itself scales like n^{υ/2}, so the
        // deviation of the leading term is compared in the bounded
        // coefficient normalization √(n!/(n+υ)!) u, where it must fall
        // between n = 50 and n = 200 over x ≤ 2.
        let v = 2u32;
        let max_err = |n: u32| -> f64 {
            let scale = (0.5 * specfun::log_ratio_factorial(n + v, n).unwrap()).exp();
            let mut worst: f64 = 0.0;
            for i in 0..=200 {
                let x = 2.0 * i as f64 / 200.0;
                let exact = (-0.5 * x * x).exp()
                    * x.powi(v as i32)
                    * assoc_laguerre(n, v, x * x).unwrap();
                let leading = szego_first_order(n, v, x).unwrap();
                worst = worst.max(scale * (exact - leading).abs());
            }
            worst
        };
        let err_50 = max_err(50);
        let err_200 = max_err(200);
        assert!(
            err_200 < err_50,
            "Szegő deviation grew with order: {err_200} vs {err_50}"
        );
    }

    #[test]
    fn szego_to_asymptotic_ratio_approaches_one() {
        // The n!/m! ≈ n^υ reduction step: the coefficient built from the
        // leading Szegő term with its exact factorial scaling,
        // √(m!/n!) · szego(m, υ, ξ₀), and the closed asymptotic form share
        // the same Bessel factor J_υ(2√N ξ₀), so their ratio is
        // √(n!/(m! n^υ)) exactly — verified against a log-gamma oracle, and
        // within 2e-4 of unity by n = 10⁴ for υ = 2.
        let params = natural();
        let v = 2u32;
        let ratio_at = |n: u32| -> f64 {
            let m = n - v;
            let idx = AsymptoticIndex::new(n, v).unwrap();
            let xi0 = 0.5;
            let scale = (0.5 * specfun::log_ratio_factorial(n, m).unwrap()).exp();
            let szego = scale * szego_first_order(m, v, xi0).unwrap();
            let asym = fourier_asymptotic(idx, xi(xi0), &params).unwrap().norm();
            szego.abs() / asym
        };
        // log-gamma oracle for √(n!/(m! n^υ))
        let oracle_at = |n: u32| -> f64 {
            let log_fact_ratio: f64 = ((n - v + 1)..=n).map(|j| (j as f64).ln()).sum();
            (0.5 * (log_fact_ratio - v as f64 * (n as f64).ln())).exp()
        };
        for &n in &[100u32, 1000, 10000] {
            let got = ratio_at(n);
            let expect = oracle_at(n);
            assert!(
                (got - expect).abs() < 1e-10 * expect,
                "ratio at n = {n}: {got} vs oracle {expect}"
            );
        }
        assert!((ratio_at(100) - 1.0).abs() > (ratio_at(1000) - 1.0).abs());
        assert!((ratio_at(1000) - 1.0).abs() > (ratio_at(10_000) - 1.0).abs());
        assert!((ratio_at(10_000) - 1.0).abs() < 2e-4);
    }

    #[test]
    fn convergence_of_fourier_asymptotics_in_n() {
        // max over |ξ₀| ≤ 4 of |exact − asymptotic| shrinks along n for the
        // first three off-diagonals.
        let params = natural();
        let max_err = |n: u32, v: u32| -> f64 {
            let idx = AsymptoticIndex::new(n, v).unwrap();
            let pair = ModePair::new(n, n - v);
            let mut worst: f64 = 0.0;
            for i in 0..=160 {
                let x0 = -4.0 + 8.0 * i as f64 / 160.0;
                let exact = fourier_exact(pair, xi(x0), &params).unwrap();
                let asym = fourier_asymptotic(idx, xi(x0), &params).unwrap();
                worst = worst.max((exact - asym).norm());
            }
            worst
        };
        for v in 0..=2u32 {
            let e50 = max_err(50, v);
            let e500 = max_err(500, v);
            let e5000 = max_err(5000, v);
            assert!(
                e50 > e500 && e500 > e5000,
                "no convergence at v = {v}: {e50} > {e500} > {e5000} fails"
            );
        }
    }
}
