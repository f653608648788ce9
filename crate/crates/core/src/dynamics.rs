//! The global step map, trajectories, cycle detection and exhaustive sweeps.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::config::{last_word_mask, words_for, Configuration};
use crate::error::{Error, Result};
use crate::rule::Rule;
use crate::schedule::{Family, UpdateMode};

/// Precomputed bit masks for applying a mode's blocks to packed words.
#[derive(Debug, Clone)]
pub struct Stepper {
    rule: Rule,
    n: usize,
    masks: Vec<Vec<u64>>,
}

impl Stepper {
    pub fn new(rule: Rule, mode: &UpdateMode) -> Self {
        let n = mode.n();
        let masks = mode
            .blocks()
            .iter()
            .map(|b| {
                let mut m = vec![0u64; words_for(n)];
                for &c in b {
                    m[c / 64] |= 1 << (c % 64);
                }
                m
            })
            .collect();
        Stepper { rule, n, masks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn period(&self) -> usize {
        self.masks.len()
    }

    /// Applies block `k` to a ring of at most 64 cells.
    #[inline]
    pub fn substep_packed(&self, x: u64, k: usize) -> u64 {
        let m = self.masks[k][0];
        if m == 0 {
            return x;
        }
        let n = self.n;
        let full = last_word_mask(n);
        let l = ((x << 1) | (x >> (n - 1))) & full;
        let r = (x >> 1) | ((x & 1) << (n - 1));
        let y = self.rule.eval_word(l, x, r);
        (x & !m) | (y & m)
    }

    /// One full period on a ring of at most 64 cells.
    #[inline]
    pub fn step_packed(&self, mut x: u64) -> u64 {
        debug_assert!(self.n <= 64);
        for k in 0..self.masks.len() {
            x = self.substep_packed(x, k);
        }
        x
    }

    fn substep_words(&self, x: &mut [u64], k: usize, l: &mut [u64], r: &mut [u64]) {
        let m = &self.masks[k];
        if m.iter().all(|&w| w == 0) {
            return;
        }
        let n = self.n;
        let last = x.len() - 1;
        let top = (x[(n - 1) / 64] >> ((n - 1) % 64)) & 1;
        let bottom = x[0] & 1;
        for i in 0..x.len() {
            let carry_in = if i == 0 { top } else { x[i - 1] >> 63 };
            l[i] = (x[i] << 1) | carry_in;
            let carry_hi = if i == last { bottom << ((n - 1) % 64) } else { x[i + 1] << 63 };
            r[i] = (x[i] >> 1) | carry_hi;
        }
        l[last] &= last_word_mask(n);
        for i in 0..x.len() {
            let y = self.rule.eval_word(l[i], x[i], r[i]);
            x[i] = (x[i] & !m[i]) | (y & m[i]);
        }
    }

    pub fn substep(&self, cfg: &Configuration, k: usize) -> Configuration {
        let mut x = cfg.words().to_vec();
        let mut l = vec![0; x.len()];
        let mut r = vec![0; x.len()];
        self.substep_words(&mut x, k, &mut l, &mut r);
        Configuration::from_words(self.n, x)
    }

    pub fn step(&self, cfg: &Configuration) -> Configuration {
        if self.n <= 64 {
            return Configuration::from_words(self.n, vec![self.step_packed(cfg.words()[0])]);
        }
        let mut x = cfg.words().to_vec();
        let mut l = vec![0; x.len()];
        let mut r = vec![0; x.len()];
        for k in 0..self.masks.len() {
            self.substep_words(&mut x, k, &mut l, &mut r);
        }
        Configuration::from_words(self.n, x)
    }

    fn check(&self, cfg: &Configuration) -> Result<()> {
        if cfg.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, got: cfg.len() });
        }
        Ok(())
    }
}

/// Applies one block: cells of `block` read the pre-substep state simultaneously.
pub fn substep(cfg: &Configuration, rule: Rule, block: &[usize]) -> Result<Configuration> {
    let n = cfg.len();
    if let Some(&bad) = block.iter().find(|&&c| c >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    let mode = UpdateMode::explicit(n, vec![block.to_vec(), (0..n).collect()])?;
    Ok(Stepper::new(rule, &mode).substep(cfg, 0))
}

/// `F(x) = f_{B_{p-1}} ∘ … ∘ f_{B_0}(x)`.
pub fn step(cfg: &Configuration, rule: Rule, mode: &UpdateMode) -> Result<Configuration> {
    let stepper = Stepper::new(rule, mode);
    stepper.check(cfg)?;
    Ok(stepper.step(cfg))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// `x^0, …, x^T`.
    pub steps: Vec<Configuration>,
    /// For each step, the configurations after each of its substeps.
    pub substeps: Option<Vec<Vec<Configuration>>>,
}

pub fn trajectory(
    cfg: &Configuration,
    rule: Rule,
    mode: &UpdateMode,
    max_steps: usize,
    record_substeps: bool,
) -> Result<Trajectory> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    let stepper = Stepper::new(rule, mode);
    stepper.check(cfg)?;
    let mut steps = Vec::with_capacity(max_steps + 1);
    let mut subs = record_substeps.then(Vec::new);
    let mut x = cfg.clone();
    steps.push(x.clone());
    for _ in 0..max_steps {
        if let Some(subs) = subs.as_mut() {
            let mut within = Vec::with_capacity(stepper.period());
            for k in 0..stepper.period() {
                x = stepper.substep(&x, k);
                within.push(x.clone());
            }
            subs.push(within);
        } else {
            x = stepper.step(&x);
        }
        steps.push(x.clone());
    }
    Ok(Trajectory { steps, substeps: subs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractorOutcome {
    /// Steps before the trajectory enters its cycle.
    pub transient: u64,
    pub cycle_length: u64,
    /// Numerically smallest configuration on the cycle.
    pub cycle_min_rep: Configuration,
}

impl AttractorOutcome {
    pub fn is_fixed_point(&self) -> bool {
        self.cycle_length == 1
    }
}

/// Largest ring handled with an explicit visited map.
pub const VISITED_MAP_MAX_N: usize = 24;

fn brent<T: Clone + PartialEq>(x0: T, f: impl Fn(&T) -> T, max_evals: u64) -> Result<(u64, u64)> {
    let over = || Error::BudgetExceeded(format!("cycle not found within {max_evals} steps"));
    let mut evals = 1u64;
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = x0.clone();
    let mut hare = f(&x0);
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = f(&hare);
        lam += 1;
        evals += 1;
        if evals > max_evals {
            return Err(over());
        }
    }
    let mut tortoise = x0.clone();
    let mut hare = x0;
    for _ in 0..lam {
        hare = f(&hare);
    }
    let mut mu = 0u64;
    while tortoise != hare {
        tortoise = f(&tortoise);
        hare = f(&hare);
        mu += 1;
        if mu > max_evals {
            return Err(over());
        }
    }
    Ok((mu, lam))
}

impl Stepper {
    /// Transient and cycle of the trajectory from `cfg`.
    pub fn detect_cycle(&self, cfg: &Configuration, budget: &Budget) -> Result<AttractorOutcome> {
        self.check(cfg)?;
        let n = self.n;
        if n <= VISITED_MAP_MAX_N {
            let mut seen: HashMap<u64, u64> = HashMap::new();
            let mut x = cfg.words()[0];
            let mut t = 0u64;
            loop {
                if let Some(&first) = seen.get(&x) {
                    let c = t - first;
                    let mut min = x;
                    let mut y = x;
                    for _ in 1..c {
                        y = self.step_packed(y);
                        min = min.min(y);
                    }
                    return Ok(AttractorOutcome {
                        transient: first,
                        cycle_length: c,
                        cycle_min_rep: Configuration::from_words(n, vec![min]),
                    });
                }
                if t >= budget.steps {
                    return Err(Error::BudgetExceeded(format!("no cycle within {} steps", budget.steps)));
                }
                seen.insert(x, t);
                x = self.step_packed(x);
                t += 1;
            }
        }
        if n <= 64 {
            let x0 = cfg.words()[0];
            let (mu, lam) = brent(x0, |&x| self.step_packed(x), budget.steps)?;
            let mut y = x0;
            for _ in 0..mu {
                y = self.step_packed(y);
            }
            let mut min = y;
            for _ in 1..lam {
                y = self.step_packed(y);
                min = min.min(y);
            }
            return Ok(AttractorOutcome {
                transient: mu,
                cycle_length: lam,
                cycle_min_rep: Configuration::from_words(n, vec![min]),
            });
        }
        let (mu, lam) = brent(cfg.clone(), |x| self.step(x), budget.steps)?;
        let mut y = cfg.clone();
        for _ in 0..mu {
            y = self.step(&y);
        }
        let mut min = y.clone();
        for _ in 1..lam {
            y = self.step(&y);
            if y < min {
                min = y.clone();
            }
        }
        Ok(AttractorOutcome { transient: mu, cycle_length: lam, cycle_min_rep: min })
    }
}

pub fn detect_cycle(cfg: &Configuration, rule: Rule, mode: &UpdateMode, budget: &Budget) -> Result<AttractorOutcome> {
    Stepper::new(rule, mode).detect_cycle(cfg, budget)
}

/// `F` tabulated over all `2^n` packed states.
pub fn successor_table(rule: Rule, mode: &UpdateMode, budget: &Budget) -> Result<Vec<u32>> {
    let n = mode.n();
    budget.check_exhaustive(n)?;
    if n > 32 {
        return Err(Error::BudgetExceeded(format!("ring of {n} cells is too large to tabulate")));
    }
    let stepper = Stepper::new(rule, mode);
    let size = 1usize << n;
    let mut succ = vec![0u32; size];
    succ.par_chunks_mut(1 << 12).enumerate().for_each(|(chunk, out)| {
        let base = chunk << 12;
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = stepper.step_packed((base + j) as u64) as u32;
        }
    });
    Ok(succ)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleRecord {
    pub length: u64,
    pub min_rep: Configuration,
    /// Number of configurations whose trajectory ends in this cycle (exhaustive sweeps only).
    pub basin: Option<u64>,
}

/// Functional-graph decomposition of a successor table.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Cycle index of every state.
    pub cycle_of: Vec<u32>,
    /// Transient length of every state.
    pub depth: Vec<u32>,
    pub cycles: Vec<CycleRecord>,
}

pub fn decompose(succ: &[u32], n: usize) -> Decomposition {
    const UNSEEN: u32 = u32::MAX;
    const ON_PATH: u32 = u32::MAX - 1;
    let size = succ.len();
    let mut cycle_of = vec![UNSEEN; size];
    let mut depth = vec![0u32; size];
    let mut cycles: Vec<CycleRecord> = Vec::new();
    let mut basins: Vec<u64> = Vec::new();
    let mut path: Vec<u32> = Vec::new();
    for start in 0..size {
        if cycle_of[start] != UNSEEN {
            continue;
        }
        path.clear();
        let mut v = start as u32;
        while cycle_of[v as usize] == UNSEEN {
            cycle_of[v as usize] = ON_PATH;
            depth[v as usize] = path.len() as u32;
            path.push(v);
            v = succ[v as usize];
        }
        let tail_end = if cycle_of[v as usize] == ON_PATH {
            let pos = depth[v as usize] as usize;
            let id = cycles.len() as u32;
            let cyc = &path[pos..];
            for &u in cyc {
                cycle_of[u as usize] = id;
                depth[u as usize] = 0;
            }
            let min = *cyc.iter().min().unwrap();
            cycles.push(CycleRecord {
                length: cyc.len() as u64,
                min_rep: Configuration::from_words(n, vec![min as u64]),
                basin: None,
            });
            basins.push(cyc.len() as u64);
            pos
        } else {
            path.len()
        };
        for &u in path[..tail_end].iter().rev() {
            let next = succ[u as usize] as usize;
            let id = cycle_of[next];
            cycle_of[u as usize] = id;
            depth[u as usize] = depth[next] + 1;
            basins[id as usize] += 1;
        }
    }
    for (c, b) in cycles.iter_mut().zip(basins) {
        c.basin = Some(b);
    }
    Decomposition { cycle_of, depth, cycles }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub cycles: usize,
    /// Total basin size over cycles of this length, when known.
    pub basin_total: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rule: Rule,
    pub family: Family,
    pub mode: String,
    pub n: usize,
    /// Number of configurations analyzed.
    pub configurations: u64,
    pub cycles: Vec<CycleRecord>,
    pub max_cycle: u64,
    pub max_transient: u64,
    /// Per-configuration outcomes for sampled sweeps; empty for exhaustive ones.
    pub outcomes: Vec<(Configuration, AttractorOutcome)>,
}

impl SweepReport {
    /// Cycle length → number of distinct cycles and total basin size.
    pub fn census(&self) -> BTreeMap<u64, CensusEntry> {
        let mut out: BTreeMap<u64, CensusEntry> = BTreeMap::new();
        for c in &self.cycles {
            let e = out.entry(c.length).or_insert(CensusEntry { cycles: 0, basin_total: Some(0) });
            e.cycles += 1;
            e.basin_total = match (e.basin_total, c.basin) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
        }
        out
    }

    pub fn all_fixed_points(&self) -> bool {
        self.max_cycle == 1
    }
}

/// Attractors of every configuration of the mode's ring.
pub fn sweep_all(rule: Rule, mode: &UpdateMode, budget: &Budget) -> Result<SweepReport> {
    let n = mode.n();
    let succ = successor_table(rule, mode, budget)?;
    let d = decompose(&succ, n);
    Ok(SweepReport {
        rule,
        family: mode.family(),
        mode: mode.to_text(),
        n,
        configurations: succ.len() as u64,
        max_cycle: d.cycles.iter().map(|c| c.length).max().unwrap_or(0),
        max_transient: d.depth.par_iter().copied().max().unwrap_or(0) as u64,
        cycles: d.cycles,
        outcomes: Vec::new(),
    })
}

/// Attractors of `sample_size` uniformly random configurations.
pub fn sweep_sample(rule: Rule, mode: &UpdateMode, sample_size: usize, seed: u64, budget: &Budget) -> Result<SweepReport> {
    if sample_size == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let n = mode.n();
    let stepper = Stepper::new(rule, mode);
    let configs = crate::config::sample_configs(n, sample_size, seed);
    let outcomes: Vec<(Configuration, AttractorOutcome)> = configs
        .into_par_iter()
        .map(|x| stepper.detect_cycle(&x, budget).map(|o| (x, o)))
        .collect::<Result<_>>()?;
    let mut cycles: BTreeMap<Configuration, u64> = BTreeMap::new();
    for (_, o) in &outcomes {
        cycles.insert(o.cycle_min_rep.clone(), o.cycle_length);
    }
    Ok(SweepReport {
        rule,
        family: mode.family(),
        mode: mode.to_text(),
        n,
        configurations: sample_size as u64,
        max_cycle: outcomes.iter().map(|(_, o)| o.cycle_length).max().unwrap_or(0),
        max_transient: outcomes.iter().map(|(_, o)| o.transient).max().unwrap_or(0),
        cycles: cycles.into_iter().map(|(min_rep, length)| CycleRecord { length, min_rep, basin: None }).collect(),
        outcomes,
    })
}

/// Space-time diagram as text: `#`/`.` for step rows, `+`/` ` for substep rows.
pub fn render_text(traj: &Trajectory) -> String {
    let mut out = String::new();
    let row = |out: &mut String, c: &Configuration, on: char, off: char| {
        out.extend(c.bits().map(|b| if b { on } else { off }));
        out.push('\n');
    };
    row(&mut out, &traj.steps[0], '#', '.');
    for (t, x) in traj.steps.iter().enumerate().skip(1) {
        if let Some(subs) = &traj.substeps {
            for s in &subs[t - 1][..subs[t - 1].len() - 1] {
                row(&mut out, s, '+', ' ');
            }
        }
        row(&mut out, x, '#', '.');
    }
    out
}

/// Space-time diagram as a plain PGM image: one pixel per cell, time going
/// downward, step rows in black and substep rows in light gray.
pub fn render_pgm(traj: &Trajectory) -> String {
    let mut rows: Vec<(&Configuration, bool)> = vec![(&traj.steps[0], false)];
    for (t, x) in traj.steps.iter().enumerate().skip(1) {
        if let Some(subs) = &traj.substeps {
            rows.extend(subs[t - 1][..subs[t - 1].len() - 1].iter().map(|s| (s, true)));
        }
        rows.push((x, false));
    }
    let width = traj.steps[0].len();
    let mut out = format!("P2\n{} {}\n255\n", width, rows.len());
    for (c, gray) in rows {
        let on = if gray { "170" } else { "0" };
        let line: Vec<&str> = c.bits().map(|b| if b { on } else { "255" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
