//! Option parsing and validation shared by the subcommands.

use clap::Args;
use qho::{Complex64, OscillatorParams, PositionObservable, Superposition};

use crate::CliError;

/// Inclusive linear grid "lo:hi:count".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self, String> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err("grid bounds must be finite".into());
        }
        if lo >= hi {
            return Err(format!("grid bounds must be increasing, got {lo}:{hi}"));
        }
        if count < 2 {
            return Err(format!("grid needs at least 2 points, got {count}"));
        }
        Ok(GridSpec { lo, hi, count })
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:count, got '{s}'"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| format!("bad grid bound '{}'", parts[0]))?;
        let hi: f64 = parts[1].parse().map_err(|_| format!("bad grid bound '{}'", parts[1]))?;
        let count: usize = parts[2].parse().map_err(|_| format!("bad grid count '{}'", parts[2]))?;
        GridSpec::new(lo, hi, count)
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.lo + step * i as f64).collect()
    }

    pub fn describe(&self) -> String {
        format!("{}:{}:{}", self.lo, self.hi, self.count)
    }
}

/// Time samples "lo:hi:count" (count ≥ 1; a single sample sits at lo).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimesSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl TimesSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:count, got '{s}'"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| format!("bad time bound '{}'", parts[0]))?;
        let hi: f64 = parts[1].parse().map_err(|_| format!("bad time bound '{}'", parts[1]))?;
        let count: usize = parts[2].parse().map_err(|_| format!("bad time count '{}'", parts[2]))?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err("time bounds must be finite".into());
        }
        if count == 0 {
            return Err("at least one time sample is required".into());
        }
        if count > 1 && lo >= hi {
            return Err(format!("time bounds must be increasing, got {lo}:{hi}"));
        }
        Ok(TimesSpec { lo, hi, count })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.lo + step * i as f64).collect()
    }

    pub fn describe(&self) -> String {
        format!("{}:{}:{}", self.lo, self.hi, self.count)
    }
}

pub fn parse_units(s: &str) -> Result<OscillatorParams, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected mass,omega,hbar, got '{s}'"));
    }
    let mut vals = [0.0f64; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| format!("bad unit value '{part}'"))?;
    }
    OscillatorParams::new(vals[0], vals[1], vals[2]).map_err(|e| e.to_string())
}

/// Superposition selection: explicit coefficients or a Gaussian profile.
#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    /// Coefficients as "n:re[:im],n:re[:im],..."; normalized automatically
    #[arg(long, conflicts_with_all = ["nbar", "sigma"], value_name = "LIST")]
    pub coeffs: Option<String>,

    /// Mean level of a discrete Gaussian coefficient profile
    #[arg(long, requires = "sigma", value_name = "NBAR")]
    pub nbar: Option<f64>,

    /// Width of the Gaussian profile (levels)
    #[arg(long, requires = "nbar", value_name = "SIGMA")]
    pub sigma: Option<f64>,
}

impl StateArgs {
    pub fn build(&self) -> Result<Superposition, CliError> {
        match (&self.coeffs, self.nbar, self.sigma) {
            (Some(spec), None, None) => {
                let mut entries = Vec::new();
                for part in spec.split(',') {
                    let fields: Vec<&str> = part.trim().split(':').collect();
                    if fields.len() < 2 || fields.len() > 3 {
                        return Err(CliError::Config(format!(
                            "coefficient '{part}' is not n:re[:im]"
                        )));
                    }
                    let n: u32 = fields[0]
                        .parse()
                        .map_err(|_| CliError::Config(format!("bad level '{}'", fields[0])))?;
                    let re: f64 = fields[1]
                        .parse()
                        .map_err(|_| CliError::Config(format!("bad coefficient '{}'", fields[1])))?;
                    let im: f64 = if fields.len() == 3 {
                        fields[2]
                            .parse()
                            .map_err(|_| CliError::Config(format!("bad coefficient '{}'", fields[2])))?
                    } else {
                        0.0
                    };
                    entries.push((n, Complex64::new(re, im)));
                }
                Ok(Superposition::from_coefficients(entries)?)
            }
            (None, Some(nbar), Some(sigma)) => Ok(Superposition::gaussian(nbar, sigma)?),
            _ => Err(CliError::Config(
                "a superposition is required: either --coeffs or --nbar with --sigma".into(),
            )),
        }
    }

    pub fn describe(&self) -> String {
        match (&self.coeffs, self.nbar, self.sigma) {
            (Some(spec), _, _) => format!("coeffs={spec}"),
            (None, Some(nbar), Some(sigma)) => format!("nbar={nbar} sigma={sigma}"),
            _ => "unspecified".into(),
        }
    }
}

/// Observable selection: x, x2, or poly:c0,c1,...
pub fn parse_observable(s: &str) -> Result<PositionObservable, String> {
    match s {
        "x" => Ok(PositionObservable::position()),
        "x2" | "x^2" => Ok(PositionObservable::position_squared()),
        _ => {
            if let Some(rest) = s.strip_prefix("poly:") {
                let coeffs: Result<Vec<f64>, _> = rest
                    .split(',')
                    .map(|part| part.trim().parse::<f64>().map_err(|_| format!("bad coefficient '{part}'")))
                    .collect();
                PositionObservable::polynomial(&coeffs?).map_err(|e| e.to_string())
            } else {
                Err(format!("unknown observable '{s}'; use x, x2 or poly:c0,c1,..."))
            }
        }
    }
}
