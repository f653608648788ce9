//! Density and energy observables and their averaged time series.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::config::Configuration;
use crate::dynamics::{successor_table, Stepper};
use crate::error::{Error, Result};
use crate::rule::Rule;
use crate::schedule::{sample_mode, Constraints, Family};
use crate::seed::{derive_seed, stream};

pub use crate::config::sample_configs;

/// Fraction of cells in state 1.
pub fn density(cfg: &Configuration) -> f64 {
    cfg.count_ones() as f64 / cfg.len() as f64
}

/// Number of neighboring pairs `(i, i+1)` holding different states.
pub fn discordant_pairs(cfg: &Configuration) -> usize {
    let n = cfg.len();
    if n <= 64 {
        let x = cfg.words()[0];
        return packed_discordant(x, n) as usize;
    }
    (0..n).filter(|&i| cfg.get(i) != cfg.get((i + 1) % n)).count()
}

#[inline]
fn packed_discordant(x: u64, n: usize) -> u32 {
    let rot = (x >> 1) | ((x & 1) << (n - 1));
    (x ^ rot).count_ones()
}

/// `e(x) = Σ_i (1−2x_i)/2 · ((2x_{i−1}−1) + (2x_{i+1}−1))`, which equals the
/// number of discordant neighbor pairs minus the number of concordant ones.
pub fn energy(cfg: &Configuration) -> Result<i64> {
    let n = cfg.len();
    if n < 2 {
        return Err(Error::RingTooSmall(n));
    }
    Ok(2 * discordant_pairs(cfg) as i64 - n as i64)
}

/// `e(x) / n`, in `[-1, 1]`.
pub fn normalized_energy(cfg: &Configuration) -> Result<f64> {
    Ok(energy(cfg)? as f64 / cfg.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConfigSource {
    /// `s` uniformly random configurations, shared by every mode.
    Random(usize),
    /// All `2^n` configurations.
    Exhaustive,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureSeries {
    pub rule: Rule,
    pub family: Family,
    pub constraint: String,
    pub n: usize,
    /// Configurations per mode.
    pub s: u64,
    /// Modes sampled.
    pub m: usize,
    pub steps: usize,
    pub modes: Vec<String>,
    pub mean_density: Vec<f64>,
    pub mean_norm_energy: Vec<f64>,
    /// Across-mode variance of the per-mode means; absent with a single mode.
    pub var_density: Option<Vec<f64>>,
    pub var_norm_energy: Option<Vec<f64>>,
    pub per_mode_density: Vec<Vec<f64>>,
    pub per_mode_norm_energy: Vec<Vec<f64>>,
}

/// Exact per-step sums of ones and discordant pairs over a configuration ensemble.
struct Sums {
    ones: Vec<u64>,
    discordant: Vec<u64>,
}

fn exhaustive_sums(succ: &[u32], n: usize, steps: usize) -> Sums {
    let size = succ.len();
    let pop: Vec<u8> = (0..size).map(|x| (x as u64).count_ones() as u8).collect();
    let disc: Vec<u8> = (0..size).map(|x| packed_discordant(x as u64, n) as u8).collect();
    let mut counts = vec![1u64; size];
    let mut next = vec![0u64; size];
    let mut sums = Sums { ones: Vec::with_capacity(steps + 1), discordant: Vec::with_capacity(steps + 1) };
    for t in 0..=steps {
        let (o, d) = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold((0u64, 0u64), |(o, d), (x, &c)| (o + c * pop[x] as u64, d + c * disc[x] as u64));
        sums.ones.push(o);
        sums.discordant.push(d);
        if t == steps {
            break;
        }
        next.iter_mut().for_each(|v| *v = 0);
        for (x, &c) in counts.iter().enumerate() {
            if c > 0 {
                next[succ[x] as usize] += c;
            }
        }
        std::mem::swap(&mut counts, &mut next);
    }
    sums
}

fn sampled_sums(stepper: &Stepper, configs: &[Configuration], steps: usize) -> Sums {
    let n = stepper.n();
    let mut sums = Sums { ones: vec![0; steps + 1], discordant: vec![0; steps + 1] };
    for x0 in configs {
        if n <= 64 {
            let mut x = x0.words()[0];
            for t in 0..=steps {
                sums.ones[t] += x.count_ones() as u64;
                sums.discordant[t] += packed_discordant(x, n) as u64;
                if t < steps {
                    x = stepper.step_packed(x);
                }
            }
        } else {
            let mut x = x0.clone();
            for t in 0..=steps {
                sums.ones[t] += x.count_ones() as u64;
                sums.discordant[t] += discordant_pairs(&x) as u64;
                if t < steps {
                    x = stepper.step(&x);
                }
            }
        }
    }
    sums
}

/// Evolves every configuration of the source under `m` sampled modes of `family`
/// and records per-step means of density and normalized energy.
///
/// Mode `j` uses seed `derive_seed(seed, MODES, j)`; the random configuration
/// sample uses `derive_seed(seed, CONFIGS, 0)` and is shared by all modes.
#[allow(clippy::too_many_arguments)]
pub fn run_series(
    rule: Rule,
    family: Family,
    constraints: &Constraints,
    n: usize,
    source: ConfigSource,
    m: usize,
    steps: usize,
    seed: u64,
    budget: &Budget,
) -> Result<MeasureSeries> {
    if n < 2 {
        return Err(Error::RingTooSmall(n));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("mode sample size must be at least 1".into()));
    }
    let modes = (0..m)
        .map(|j| sample_mode(family, n, derive_seed(seed, stream::MODES, j as u64), constraints))
        .collect::<Result<Vec<_>>>()?;
    let (s, configs) = match source {
        ConfigSource::Exhaustive => {
            budget.check_exhaustive(n)?;
            (1u64 << n, Vec::new())
        }
        ConfigSource::Random(s) => {
            if s == 0 {
                return Err(Error::InvalidArgument("configuration sample size must be at least 1".into()));
            }
            (s as u64, sample_configs(n, s, derive_seed(seed, stream::CONFIGS, 0)))
        }
    };
    let per_mode: Vec<Sums> = modes
        .par_iter()
        .map(|mode| {
            match source {
                ConfigSource::Exhaustive => {
                    let succ = successor_table(rule, mode, budget)?;
                    Ok(exhaustive_sums(&succ, n, steps))
                }
                ConfigSource::Random(_) => Ok(sampled_sums(&Stepper::new(rule, mode), &configs, steps)),
            }
        })
        .collect::<Result<_>>()?;

    let cells = s * n as u64;
    let density_of = |ones: u64, count: u64| ones as f64 / (count * n as u64) as f64;
    let energy_of = |disc: u64, count: u64| {
        let total = (count * n as u64) as i128;
        (2 * disc as i128 - total) as f64 / total as f64
    };
    let per_mode_density: Vec<Vec<f64>> =
        per_mode.iter().map(|p| p.ones.iter().map(|&o| density_of(o, s)).collect()).collect();
    let per_mode_norm_energy: Vec<Vec<f64>> =
        per_mode.iter().map(|p| p.discordant.iter().map(|&d| energy_of(d, s)).collect()).collect();
    let mut mean_density = Vec::with_capacity(steps + 1);
    let mut mean_norm_energy = Vec::with_capacity(steps + 1);
    for t in 0..=steps {
        let ones: u64 = per_mode.iter().map(|p| p.ones[t]).sum();
        let disc: u64 = per_mode.iter().map(|p| p.discordant[t]).sum();
        mean_density.push(ones as f64 / (cells * m as u64) as f64);
        mean_norm_energy.push(energy_of(disc, s * m as u64));
    }
    let (var_density, var_norm_energy) = if m >= 2 {
        (Some(variance_across_modes(&per_mode_density)?), Some(variance_across_modes(&per_mode_norm_energy)?))
    } else {
        (None, None)
    };
    Ok(MeasureSeries {
        rule,
        family,
        constraint: constraints.label(family),
        n,
        s,
        m,
        steps,
        modes: modes.iter().map(|m| m.to_text()).collect(),
        mean_density,
        mean_norm_energy,
        var_density,
        var_norm_energy,
        per_mode_density,
        per_mode_norm_energy,
    })
}

/// Unbiased per-step sample variance across series.
pub fn variance_across_modes(series: &[Vec<f64>]) -> Result<Vec<f64>> {
    if series.len() < 2 || series.iter().any(|s| s.len() != series[0].len()) {
        return Err(Error::InsufficientSeries);
    }
    let k = series.len() as f64;
    Ok((0..series[0].len())
        .map(|t| {
            let mean = series.iter().map(|s| s[t]).sum::<f64>() / k;
            series.iter().map(|s| (s[t] - mean).powi(2)).sum::<f64>() / (k - 1.0)
        })
        .collect())
}
