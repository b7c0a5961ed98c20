//! Run configuration: JSON schema, validation, and precedence rules for
//! precision and mode (command line, then config file, then environment).

use std::path::Path;

use anyhow::{bail, Context, Result};
use galq_core::galois_phys::EvolutionMode;
use galq_core::rational::parse_rational;
use galq_core::{CyclotomicElement, Error, PotentialSpec, WaveFunction};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: u64,
    m: u64,
    #[serde(default)]
    potential: Option<Vec<i64>>,
    #[serde(default)]
    initial_wavefunction: Option<Vec<String>>,
    #[serde(default)]
    steps: Option<i64>,
    #[serde(default)]
    precision: Option<u32>,
    #[serde(default)]
    mode: Option<EvolutionMode>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: u64,
    pub m: u64,
    pub potential_coeffs: Vec<i64>,
    pub potential: PotentialSpec,
    pub initial: WaveFunction,
    pub steps: i64,
    pub precision: u32,
    pub mode: EvolutionMode,
    pub seed: u64,
}

/// Precision precedence: command-line flag, config file, GALQ_PRECISION, 30.
pub fn resolve_precision(flag: Option<u32>, from_config: Option<u32>) -> Result<u32> {
    let digits = match flag.or(from_config) {
        Some(d) => d,
        None => match std::env::var("GALQ_PRECISION") {
            Ok(s) => s
                .trim()
                .parse::<u32>()
                .with_context(|| format!("GALQ_PRECISION must be a positive integer, got {s:?}"))?,
            Err(_) => 30,
        },
    };
    if digits < 15 {
        bail!(Error::InvalidPrecision { digits });
    }
    Ok(digits)
}

pub fn load(
    path: &Path,
    flag_precision: Option<u32>,
    flag_mode: Option<EvolutionMode>,
) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    // serde_json reports the offending line and column for malformed or
    // unknown fields, which keeps config errors pointable.
    let raw: RawConfig = serde_json::from_str(&text)
        .with_context(|| format!("invalid config {}", path.display()))?;

    if raw.n < 1 {
        bail!("config {}: n must be at least 1", path.display());
    }
    if raw.m < 1 || raw.n % raw.m != 0 {
        bail!(Error::DivisibilityViolation { m: raw.m, n: raw.n });
    }
    let precision = resolve_precision(flag_precision, raw.precision)?;

    let potential_coeffs = raw.potential.unwrap_or_else(|| vec![0, 0, 1]);
    let potential = PotentialSpec::new(raw.n, &potential_coeffs);

    let initial = match &raw.initial_wavefunction {
        None => WaveFunction::delta(raw.n, 1),
        Some(list) => {
            if list.len() != raw.n as usize {
                bail!(
                    "config {}: initial_wavefunction has {} amplitudes, expected n = {}",
                    path.display(),
                    list.len(),
                    raw.n
                );
            }
            let amps = list
                .iter()
                .map(|s| Ok(CyclotomicElement::from_rational(1, parse_rational(s)?)))
                .collect::<Result<Vec<_>>>()?;
            WaveFunction::new(raw.n, amps)?
        }
    };

    Ok(RunConfig {
        n: raw.n,
        m: raw.m,
        potential_coeffs,
        potential,
        initial,
        steps: raw.steps.unwrap_or(10),
        precision,
        mode: flag_mode.or(raw.mode).unwrap_or(EvolutionMode::Full),
        seed: raw.seed.unwrap_or(0),
    })
}
