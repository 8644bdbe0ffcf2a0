//! Exact and large-n asymptotic densities of the quantum harmonic
//! oscillator.
//!
//! The crate computes, for arbitrarily large quantum numbers:
//!
//! * exact spatial density-matrix components ρ̃ₙ,ₘ(x) and the full
//!   time-dependent density ρ(x, t) of a finite superposition
//!   ([`oscillator`]);
//! * their Fourier coefficients, in closed form and by an independent
//!   quadrature oracle ([`fourier`]);
//! * the first-order large-n asymptotics of both: Bessel-form Fourier
//!   coefficients, Chebyshev-form density components, the classical
//!   arcsine density and the macroscopic time-dependent density
//!   ([`asymptotics`]);
//! * the local-average operator that maps the rapidly oscillating exact
//!   densities onto smooth macroscopic profiles ([`averaging`]);
//! * exact and asymptotic expectation values of position observables
//!   ([`observables`]).
//!
//! All numerics route through overflow-free special-function evaluation in
//! [`specfun`]; oscillatory integrals are handled by quadrature-grade rules
//! in [`quadrature`] that refuse, loudly, whenever the node budget cannot
//! resolve the integrand.

pub mod asymptotics;
pub mod averaging;
pub mod error;
pub mod fourier;
pub mod observables;
pub mod oscillator;
pub mod quadrature;
pub mod specfun;

pub use asymptotics::{AsymptoticIndex, TurningAmplitude};
pub use error::{Error, Result};
pub use fourier::MomentumAbscissa;
pub use num_complex::Complex64;
pub use observables::{ExpectationEngine, PositionObservable};
pub use oscillator::{ModePair, OscillatorParams, Superposition};
