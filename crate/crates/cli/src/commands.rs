//! The five subcommands, each producing a [`Table`].

use qho::asymptotics::{self, AsymptoticIndex};
use qho::averaging;
use qho::fourier::{self, MomentumAbscissa};
use qho::observables::PositionObservable;
use qho::oscillator::{self, ModePair, OscillatorParams, Superposition};
use qho::quadrature::QuadratureSpec;
use qho::ExpectationEngine;

use crate::config::{GridSpec, TimesSpec};
use crate::table::Table;
use crate::CliError;

fn default_spatial_grid(x_scale: f64) -> GridSpec {
    GridSpec::new(-1.2 * x_scale, 1.2 * x_scale, 2001).expect("valid default grid")
}

/// Exact ρ̄ₙ,ₘ = ρ̃ₙ,ₘ/√α on a grid, one column per m.
pub fn density(
    n: u32,
    m_list: &[u32],
    grid: Option<GridSpec>,
    params: &OscillatorParams,
) -> Result<Table, CliError> {
    let top = m_list.iter().copied().max().unwrap_or(n).max(n);
    let grid = grid.unwrap_or_else(|| default_spatial_grid(params.classical_amplitude(top)));
    let root_alpha = params.alpha().sqrt();

    let mut table = Table::new("density");
    table.set("n", n);
    table.set(
        "m",
        m_list.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
    );
    table.set("grid", grid.describe());
    table.columns.push("x".into());
    for &m in m_list {
        table.columns.push(format!("rhobar_{n}_{m}"));
    }
    for x in grid.points() {
        let mut row = vec![x];
        for &m in m_list {
            let rho = oscillator::density_component(ModePair::new(n, m), x, params)?;
            row.push(rho / root_alpha);
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// Asymptotic ρ̄ₙ,ₙ₋ᵤ on a grid plus a max-|value| summary per offset,
/// taken over the trusted window |x| ≤ 0.75χ.
pub fn asymptotic(
    n: u32,
    v_list: &[u32],
    grid: Option<GridSpec>,
    params: &OscillatorParams,
) -> Result<Table, CliError> {
    let indices: Result<Vec<AsymptoticIndex>, _> =
        v_list.iter().map(|&v| AsymptoticIndex::new(n, v)).collect();
    let indices = indices?;
    let chi_max = indices
        .iter()
        .map(|idx| idx.chi(params).chi)
        .fold(0.0f64, f64::max);
    let grid = grid.unwrap_or_else(|| default_spatial_grid(chi_max));
    let root_alpha = params.alpha().sqrt();

    let mut table = Table::new("asymptotic");
    table.set("n", n);
    table.set(
        "v",
        v_list.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
    );
    table.set("grid", grid.describe());
    table.columns.push("x".into());

    let points = grid.points();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for idx in &indices {
        table
            .columns
            .push(format!("rhobar_{}_{}", idx.n(), idx.n() - idx.v()));
        let field = asymptotics::density_asymptotic_field(*idx, &points, params)?;
        for note in &field.meta.notes {
            table.note(format!("v={}: {note}", idx.v()));
        }
        // summary max over the trusted window, on its own dense grid
        let chi = idx.chi(params).chi;
        let mut max_abs: f64 = 0.0;
        for i in 0..=4000 {
            let x = -0.75 * chi + 1.5 * chi * i as f64 / 4000.0;
            let value = asymptotics::density_asymptotic(*idx, x, params)? / root_alpha;
            max_abs = max_abs.max(value.abs());
        }
        table.note(format!(
            "summary v={}: max |rhobar| over |x| <= 0.75*chi is {max_abs:e}",
            idx.v()
        ));
        columns.push(field.values.iter().map(|z| z.re / root_alpha).collect());
    }
    for (i, &x) in points.iter().enumerate() {
        let mut row = vec![x];
        for column in &columns {
            row.push(column[i]);
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// Convergence sweep over n: the classical-limit error of the locally
/// averaged diagonal, and the exact-vs-asymptotic Fourier error per offset.
pub fn compare(
    n_list: &[u32],
    v_list: &[u32],
    k: f64,
    nodes: Option<usize>,
    params: &OscillatorParams,
) -> Result<Table, CliError> {
    let mut table = Table::new("compare");
    table.set(
        "n",
        n_list.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","),
    );
    table.set(
        "v",
        v_list.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
    );
    table.set("k", k);
    if let Some(nodes) = nodes {
        table.set("nodes", nodes);
    }
    table.note("density_rel_err: max |<rho_nn> - rho_cl|/rho_cl over |x| <= 0.75*x_n, window k local wavelengths");
    table.note("fourier_abs_err_v*: max |f_exact - f_asymptotic| over |xi0| <= 4");
    table.columns.push("n".into());
    table.columns.push("density_rel_err".into());
    for &v in v_list {
        table.columns.push(format!("fourier_abs_err_v{v}"));
    }

    for &n in n_list {
        let xn = params.classical_amplitude(n);
        let mut density_err: f64 = 0.0;
        for i in 0..=60 {
            let x = -0.75 * xn + 1.5 * xn * i as f64 / 60.0;
            let averaged = match nodes {
                None => averaging::averaged_diagonal_density(n, x, k, params)?,
                Some(budget) => {
                    let window = averaging::default_window(n, x, k, params)?;
                    let quad = QuadratureSpec::gauss_legendre(budget);
                    averaging::local_average(
                        |y| {
                            oscillator::density_component(ModePair::new(n, n), y, params)
                                .expect("quadrature nodes are finite")
                        },
                        x,
                        &window,
                        &quad,
                    )?
                }
            };
            let classical = asymptotics::classical_density(n, x, params)?;
            density_err = density_err.max((averaged - classical).abs() / classical);
        }

        let mut row = vec![n as f64, density_err];
        for &v in v_list {
            let idx = AsymptoticIndex::new(n, v)?;
            let pair = ModePair::new(n, n - v);
            let mut worst: f64 = 0.0;
            for i in 0..=160 {
                let xi0 = -4.0 + 8.0 * i as f64 / 160.0;
                let p = MomentumAbscissa::from_xi0(xi0, params);
                let exact = fourier::fourier_exact(pair, p, params)?;
                let asym = asymptotics::fourier_asymptotic(idx, p, params)?;
                worst = worst.max((exact - asym).norm());
            }
            row.push(worst);
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// Time snapshots of the exact and macroscopic densities, one block of
/// grid rows per time sample (the `t` column identifies the block).
pub fn evolve(
    state: &Superposition,
    state_desc: &str,
    times: Option<TimesSpec>,
    grid: Option<GridSpec>,
    vmax: Option<u32>,
    params: &OscillatorParams,
) -> Result<Table, CliError> {
    let period = 2.0 * std::f64::consts::PI / params.omega;
    let times = times.unwrap_or(TimesSpec {
        lo: 0.0,
        hi: period,
        count: 9,
    });
    let grid = grid.unwrap_or_else(|| {
        default_spatial_grid(params.classical_amplitude(state.max_level()))
    });
    let vmax = vmax.unwrap_or_else(|| asymptotics::default_vmax(state));

    let mut table = Table::new("evolve");
    table.set("state", state_desc);
    table.set("times", times.describe());
    table.set("grid", grid.describe());
    table.set("vmax", vmax);
    table.columns = vec![
        "t".into(),
        "x".into(),
        "rho_exact".into(),
        "rho_macroscopic".into(),
    ];
    for &t in &times.points() {
        for &x in &grid.points() {
            let exact = oscillator::density_matrix_xt(state, x, t, params)?;
            let macroscopic = asymptotics::macroscopic_density_xt(state, x, t, vmax, params)?;
            table.rows.push(vec![t, x, exact, macroscopic]);
        }
    }
    Ok(table)
}

/// Time series of exact vs asymptotic expectation values of a position
/// observable.
pub fn expect(
    state: &Superposition,
    state_desc: &str,
    obs: &PositionObservable,
    times: Option<TimesSpec>,
    vmax: Option<u32>,
    nodes: Option<usize>,
    params: &OscillatorParams,
) -> Result<Table, CliError> {
    let period = 2.0 * std::f64::consts::PI / params.omega;
    let times = times.unwrap_or(TimesSpec {
        lo: 0.0,
        hi: 2.0 * period,
        count: 201,
    });
    let vmax = vmax.unwrap_or_else(|| asymptotics::default_vmax(state));
    let engine = match nodes {
        None => ExpectationEngine::with_auto_quadrature(*params, state.max_level()),
        Some(budget) => {
            ExpectationEngine::new(*params, QuadratureSpec::gauss_legendre(budget))
        }
    };

    let mut table = Table::new("expect");
    table.set("state", state_desc);
    table.set("obs", obs.label());
    table.set("times", times.describe());
    table.set("vmax", vmax);
    if let Some(nodes) = nodes {
        table.set("nodes", nodes);
    }
    table.columns = vec!["t".into(), "exact".into(), "asymptotic".into()];
    for &t in &times.points() {
        let exact = engine.exact(state, obs, t)?;
        let asym = engine.asymptotic(state, obs, t, vmax)?;
        table.rows.push(vec![t, exact, asym]);
    }
    Ok(table)
}
