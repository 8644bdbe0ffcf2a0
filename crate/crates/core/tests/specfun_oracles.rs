//! Independent oracles for the special-function layer.
//!
//! Each oracle takes a route disjoint from the implementation: exact integer
//! or rational arithmetic for the polynomial families, and the integral
//! representation for Bessel functions. The implementation must reproduce
//! the oracle values to the stated tolerances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use qho::quadrature;
use qho::specfun::{
    assoc_laguerre, bessel_j, chebyshev_t, hermite_function, hermite_functions_upto,
    log_ratio_factorial,
};

/// ln of the magnitude of a BigInt, exact to f64 precision at any size.
fn ln_abs_bigint(v: &BigInt) -> f64 {
    assert!(!v.is_zero());
    let mag = v.magnitude();
    let bits = mag.bits();
    let shift = bits.saturating_sub(53) as usize;
    let top = (mag >> shift).to_u64().unwrap() as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Orthonormal Hermite function at integer ξ via exact integer recurrence on
/// the raw polynomials H_k plus log-space normalization.
fn hermite_oracle(n: u32, xi: i64) -> f64 {
    let two_xi = BigInt::from(2 * xi);
    let mut h_prev = BigInt::from(1);
    let mut h_cur = BigInt::from(2 * xi);
    if n == 0 {
        h_cur = h_prev.clone();
    }
    for k in 1..n as i64 {
        let h_next = &two_xi * &h_cur - BigInt::from(2 * k) * &h_prev;
        h_prev = h_cur;
        h_cur = h_next;
    }
    if h_cur.is_zero() {
        return 0.0;
    }
    let ln_norm_sq: f64 = (n as f64) * std::f64::consts::LN_2
        + (1..=n as u64).map(|j| (j as f64).ln()).sum::<f64>()
        + 0.5 * std::f64::consts::PI.ln();
    let log_h = ln_abs_bigint(&h_cur) - 0.5 * (xi * xi) as f64 - 0.5 * ln_norm_sq;
    let sign = if h_cur.is_negative() { -1.0 } else { 1.0 };
    sign * log_h.exp()
}

#[test]
fn hermite_matches_exact_series_oracle() {
    // Extended-precision consistency of the floating recurrence at the
    // orders the stationary states actually use.
    for &n in &[10u32, 50, 100] {
        for &xi in &[1i64, 2] {
            let expect = hermite_oracle(n, xi);
            let got = hermite_function(n, xi as f64).unwrap();
            assert!(
                (got - expect).abs() <= 1e-10 * expect.abs(),
                "h_{n}({xi}) = {got:e}, oracle {expect:e}"
            );
        }
    }
}

#[test]
fn hermite_orthonormality_small_block() {
    // ∫ h_n h_m dξ = δ_{n,m}; the 0..=200 block runs in the acceptance
    // suite, this is the fast smoke version.
    let nmax = 60u32;
    let radius = (2.0 * nmax as f64 + 1.0).sqrt() + 8.0;
    let min_wavelength = std::f64::consts::PI / (2.0 * nmax as f64 + 1.0).sqrt();
    let nodes = quadrature::required_nodes(2.0 * radius, min_wavelength).max(2048);
    let panels = nodes.div_ceil(16);

    let dim = nmax as usize + 1;
    let mut gram = vec![0.0f64; dim * dim];
    // One Hermite pass per node, rank-one update of the Gram matrix.
    let h = 2.0 * radius / panels as f64;
    for p in 0..panels {
        let lo = -radius + p as f64 * h;
        for &(t, w) in gauss16() {
            let xi = lo + 0.5 * h * (1.0 + t);
            let vals = hermite_functions_upto(nmax, xi).unwrap();
            let weight = 0.5 * h * w;
            for i in 0..dim {
                let vi = vals[i] * weight;
                for j in i..dim {
                    gram[i * dim + j] += vi * vals[j];
                }
            }
        }
    }
    for i in 0..dim {
        for j in i..dim {
            let expect = if i == j { 1.0 } else { 0.0 };
            let got = gram[i * dim + j];
            assert!(
                (got - expect).abs() < 1e-8,
                "<h_{i}, h_{j}> = {got}, want {expect}"
            );
        }
    }
}

/// 16-point Gauss-Legendre rule on [-1, 1], coefficients independent of the
/// library's own node generator.
fn gauss16() -> &'static [(f64, f64)] {
    const RULE: [(f64, f64); 16] = [
        (-0.9894009349916499, 0.027152459411754095),
        (-0.9445750230732326, 0.062253523938647894),
        (-0.8656312023878318, 0.09515851168249278),
        (-0.755404408355003, 0.12462897125553387),
        (-0.6178762444026438, 0.14959598881657673),
        (-0.4580167776572274, 0.16915651939500254),
        (-0.2816035507792589, 0.18260341504492359),
        (-0.09501250983763744, 0.1894506104550685),
        (0.0950125098376374, 0.1894506104550685),
        (0.2816035507792589, 0.18260341504492359),
        (0.4580167776572274, 0.16915651939500254),
        (0.6178762444026438, 0.14959598881657673),
        (0.755404408355003, 0.12462897125553387),
        (0.8656312023878318, 0.09515851168249278),
        (0.9445750230732326, 0.062253523938647894),
        (0.9894009349916499, 0.027152459411754095),
    ];
    &RULE
}

/// Exact rational coefficient expansion
/// L_m^k(x) = Σ_j (−1)^j C(m+k, m−j) x^j / j!.
fn laguerre_oracle(m: u32, k: u32, x: &BigRational) -> f64 {
    let mut sum = BigRational::zero();
    let mut x_pow = BigRational::from_integer(1.into());
    let mut j_fact = BigInt::from(1);
    for j in 0..=m {
        if j > 0 {
            x_pow *= x;
            j_fact *= BigInt::from(j);
        }
        let binom = binomial_big(m + k, m - j);
        let term = BigRational::new(binom, j_fact.clone()) * &x_pow;
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum.to_f64().unwrap()
}

fn binomial_big(n: u32, r: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[test]
fn laguerre_matches_coefficient_expansion() {
    // A fixed sample plus a sweep through m ≤ 30.
    let x_5_2 = BigRational::new(5.into(), 2.into());
    let expect = laguerre_oracle(5, 3, &x_5_2);
    let got = assoc_laguerre(5, 3, 2.5).unwrap();
    assert!(
        (got - expect).abs() <= 1e-12 * expect.abs().max(1.0),
        "L_5^3(2.5) = {got}, oracle {expect}"
    );

    for m in 1..=30u32 {
        for &k in &[0u32, 1, 2, 5, 9] {
            for (num, den) in [(1i64, 4i64), (1, 1), (2, 1)] {
                let x = BigRational::new(num.into(), den.into());
                let expect = laguerre_oracle(m, k, &x);
                let got = assoc_laguerre(m, k, num as f64 / den as f64).unwrap();
                assert!(
                    (got - expect).abs() <= 1e-12 * expect.abs().max(1.0),
                    "L_{m}^{k}({num}/{den}) = {got}, oracle {expect}"
                );
            }
        }
    }
}

/// Integral representation J_v(x) = (1/2π) ∫_0^{2π} cos(vθ − x sin θ) dθ,
/// evaluated by the trapezoidal rule, which converges geometrically for
/// periodic analytic integrands once the node count passes v + x.
fn bessel_oracle(v: u32, x: f64) -> f64 {
    let n = 8 * (v as usize + x.abs().ceil() as usize) + 128;
    let vf = v as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        sum += (vf * theta - x * theta.sin()).cos();
    }
    sum / n as f64
}

#[test]
fn bessel_matches_integral_oracle_across_regimes() {
    for &v in &[0u32, 1, 2, 3, 10, 50, 120, 200] {
        for &x in &[0.5, 6.0, 12.5, 40.0, 180.0, 499.0, 501.0, 2500.0, 10000.0] {
            let expect = bessel_oracle(v, x);
            let got = bessel_j(v, x).unwrap();
            if expect.abs() > 1e-6 {
                assert!(
                    (got - expect).abs() <= 1e-10 * expect.abs(),
                    "J_{v}({x}) = {got:e}, oracle {expect:e}"
                );
            } else {
                // Below the oracle's own noise floor only agreement in
                // smallness is checkable.
                assert!(got.abs() < 1e-6, "J_{v}({x}) = {got:e} not small");
            }
        }
    }
}

#[test]
fn bessel_j0_first_zero() {
    // Bisection on the oracle brackets the first zero of J0; the frozen
    // value must agree and the implementation must vanish there.
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if bessel_oracle(0, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let zero = 0.5 * (lo + hi);
    assert!((zero - 2.404825557695773).abs() < 1e-12);
    assert!(bessel_j(0, 2.404825557695773).unwrap().abs() < 1e-9);
}

#[test]
fn bessel_j1_at_its_maximum() {
    let x = 1.8411837813406593;
    let expect = bessel_oracle(1, x);
    let got = bessel_j(1, x).unwrap();
    assert!((got - expect).abs() <= 1e-10 * expect.abs());
    // It really is a local maximum of J1.
    assert!(bessel_oracle(1, x - 1e-4) < expect);
    assert!(bessel_oracle(1, x + 1e-4) < expect);
}

#[test]
fn chebyshev_orthogonality_under_gauss_chebyshev() {
    // (1/K) Σ_k T_i(cos θ_k) T_j(cos θ_k) over θ_k = (2k−1)π/2K equals the
    // weighted orthogonality integral exactly for i + j < 2K.
    let big_k = 32usize;
    for i in 0..=10u32 {
        for j in 0..=10u32 {
            let mut sum = 0.0;
            for k in 1..=big_k {
                let theta = (2.0 * k as f64 - 1.0) * std::f64::consts::PI / (2.0 * big_k as f64);
                let x = theta.cos();
                sum += chebyshev_t(i, x).unwrap() * chebyshev_t(j, x).unwrap();
            }
            sum /= big_k as f64;
            let expect = if i == j {
                if i == 0 {
                    1.0
                } else {
                    0.5
                }
            } else {
                0.0
            };
            assert!(
                (sum - expect).abs() < 1e-12,
                "<T_{i}, T_{j}>_w = {sum}, want {expect}"
            );
        }
    }
}

#[test]
fn factorial_ratio_matches_product_oracle() {
    // ln(9990!/10000!) against the direct product of the ten factors.
    let mut product = 1.0f64;
    for j in 9991..=10000u32 {
        product *= j as f64;
    }
    let expect = -product.ln();
    let got = log_ratio_factorial(10000, 9990).unwrap();
    assert!(
        (got - expect).abs() <= 1e-12 * expect.abs(),
        "got {got}, oracle {expect}"
    );
}
