//! Walls, cycle-length scaling, growth-regime classification, primorials and
//! wall-delimited constructions whose cycle is an lcm of segment cycles.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::budget::Budget;
use crate::config::{word_to_string, Configuration};
use crate::dynamics::{sweep_all, Stepper};
use crate::error::{Error, Result};
use crate::rule::Rule;
use crate::schedule::{sample_mode, Constraints, Family, UpdateMode, DEFAULT_PERIOD_CAP};
use crate::seed::{derive_seed, stream};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WallKind {
    Absolute,
    /// Preserved under the given mode (text form).
    Relative(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub word: Vec<bool>,
    pub kind: WallKind,
}

impl Wall {
    pub fn word_string(&self) -> String {
        word_to_string(&self.word)
    }
}

/// Words `u` of length `k` whose every cell keeps its state under the rule for
/// all values of the out-of-word neighbors. Such words are fixed under every
/// update mode.
pub fn find_absolute_walls(rule: Rule, k: usize) -> Result<Vec<Wall>> {
    if k == 0 || k > 20 {
        return Err(Error::InvalidArgument(format!("wall length {k} must be in 1..=20")));
    }
    let mut out = Vec::new();
    for code in 0..1u32 << k {
        let u: Vec<bool> = (0..k).map(|j| code >> (k - 1 - j) & 1 == 1).collect();
        let fixed = (0..k).all(|j| {
            let lefts: &[bool] = if j == 0 { &[false, true] } else { std::slice::from_ref(&u[j - 1]) };
            let rights: &[bool] = if j + 1 == k { &[false, true] } else { std::slice::from_ref(&u[j + 1]) };
            lefts.iter().all(|&l| rights.iter().all(|&r| rule.apply(l, u[j], r) == u[j]))
        });
        if fixed {
            out.push(Wall { word: u, kind: WallKind::Absolute });
        }
    }
    Ok(out)
}

/// Where the word is embedded when checking a relative wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    At(usize),
    Everywhere,
}

/// Whether `word`, embedded at the given position(s) with every possible
/// filling of the other cells, reads back unchanged at each of the first
/// `t_max` step boundaries. A semi-decision for one mode and one ring size.
pub fn verify_relative_wall(
    rule: Rule,
    mode: &UpdateMode,
    word: &[bool],
    placement: Placement,
    t_max: usize,
    budget: &Budget,
) -> Result<bool> {
    verify_wall_set(rule, mode, &[word.to_vec()], placement, t_max, budget)
}

/// Set version of [`verify_relative_wall`]: starting from any word of `words`
/// with any context, the window stays inside `words` at every step boundary.
/// Covers walls that alternate between two forms, such as `01`/`10`.
pub fn verify_wall_set(
    rule: Rule,
    mode: &UpdateMode,
    words: &[Vec<bool>],
    placement: Placement,
    t_max: usize,
    budget: &Budget,
) -> Result<bool> {
    let n = mode.n();
    let k = words.first().map_or(0, |w| w.len());
    if k == 0 || words.iter().any(|w| w.len() != k) {
        return Err(Error::InvalidArgument("wall words must be non-empty and of equal length".into()));
    }
    if k + 1 > n {
        return Err(Error::InvalidArgument(format!("word of length {k} needs a ring larger than {n}")));
    }
    budget.check_exhaustive(n)?;
    let positions: Vec<usize> = match placement {
        Placement::At(p) if p < n => vec![p],
        Placement::At(p) => return Err(Error::IndexOutOfRange { index: p, n }),
        Placement::Everywhere => (0..n).collect(),
    };
    let stepper = Stepper::new(rule, mode);
    for p in positions {
        let cells: Vec<usize> = (0..k).map(|j| (p + j) % n).collect();
        let wall_mask: u64 = cells.iter().map(|&c| 1u64 << c).sum();
        let embed = |w: &[bool]| -> u64 { cells.iter().zip(w).map(|(&c, &b)| (b as u64) << c).sum() };
        let allowed: Vec<u64> = words.iter().map(|w| embed(w)).collect();
        let free: Vec<usize> = (0..n).filter(|c| wall_mask >> c & 1 == 0).collect();
        for &start in &allowed {
            for ctx in 0..1u64 << free.len() {
                let mut x = start;
                for (j, &c) in free.iter().enumerate() {
                    x |= (ctx >> j & 1) << c;
                }
                for _ in 0..t_max {
                    x = stepper.step_packed(x);
                    if !allowed.contains(&(x & wall_mask)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Constant,
    Linear,
    Superpolynomial,
    Unknown,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Constant => "constant",
            Regime::Linear => "linear",
            Regime::Superpolynomial => "superpolynomial",
            Regime::Unknown => "unknown",
        }
    }
}

/// Tunable thresholds of [`classify_regime`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeThresholds {
    /// Constant when every point is at most `max(constant_floor, first point)`.
    pub constant_floor: u64,
    /// Linear requires `lo ≤ max_cycle / n ≤ hi` at every point.
    pub linear_band: (f64, f64),
    /// Linear requires the log-log slope in `[lo, hi)`.
    pub linear_slope: (f64, f64),
    /// Superpolynomial when the log-log slope reaches this value.
    pub superpolynomial_slope: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds {
            constant_floor: 8,
            linear_band: (0.2, 4.0),
            linear_slope: (0.5, 2.0),
            superpolynomial_slope: 2.0,
        }
    }
}

/// Least-squares slope of `ln(max_cycle)` against `ln(n)`.
pub fn log_log_slope(points: &[(usize, u64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, c)| (c.max(1) as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Labels finite-size `(n, max_cycle)` data as constant, linear or
/// superpolynomial growth.
///
/// Constant: all points bounded by `max(constant_floor, first point)`.
/// Otherwise the log-log slope decides: at least `superpolynomial_slope` is
/// superpolynomial; a slope in `linear_slope` with `max_cycle / n` inside
/// `linear_band` everywhere is linear; anything else is unknown.
pub fn classify_regime(points: &[(usize, u64)], thresholds: &RegimeThresholds) -> Result<Regime> {
    if points.len() < 4 {
        return Err(Error::InsufficientData { needed: 4, got: points.len() });
    }
    let mut pts = points.to_vec();
    pts.sort();
    let bound = thresholds.constant_floor.max(pts[0].1);
    if pts.iter().all(|&(_, c)| c <= bound) {
        return Ok(Regime::Constant);
    }
    let slope = log_log_slope(&pts);
    if slope >= thresholds.superpolynomial_slope {
        return Ok(Regime::Superpolynomial);
    }
    let (lo, hi) = thresholds.linear_band;
    let in_band = pts.iter().all(|&(n, c)| {
        let r = c as f64 / n as f64;
        (lo..=hi).contains(&r)
    });
    if in_band && slope >= thresholds.linear_slope.0 && slope < thresholds.linear_slope.1 {
        return Ok(Regime::Linear);
    }
    Ok(Regime::Unknown)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingPoint {
    pub n: usize,
    pub modes_sampled: usize,
    pub max_cycle: u64,
    pub max_transient: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRecord {
    pub rule: Rule,
    pub family: Family,
    pub constraint: String,
    pub points: Vec<ScalingPoint>,
    pub regime: Regime,
}

impl ScalingRecord {
    pub fn pairs(&self) -> Vec<(usize, u64)> {
        self.points.iter().map(|p| (p.n, p.max_cycle)).collect()
    }
}

/// The modes examined at ring size `n`: the single parallel mode, both
/// bipartite modes, or `modes_per_n` sampled modes of the other families.
pub fn modes_for(family: Family, n: usize, constraints: &Constraints, modes_per_n: usize, seed: u64) -> Result<Vec<UpdateMode>> {
    match family {
        Family::Par => Ok(vec![UpdateMode::parallel(n)?]),
        Family::Bip => Ok(vec![UpdateMode::bipartite(n, true)?, UpdateMode::bipartite(n, false)?]),
        _ => (0..modes_per_n)
            .map(|j| sample_mode(family, n, derive_seed(seed, stream::MODES, ((n as u64) << 32) | j as u64), constraints))
            .collect(),
    }
}

/// Largest cycle over exhaustive sweeps of the examined modes, for each `n`.
pub fn max_cycle_scaling(
    rule: Rule,
    family: Family,
    constraints: &Constraints,
    n_values: &[usize],
    modes_per_n: usize,
    seed: u64,
    budget: &Budget,
) -> Result<ScalingRecord> {
    let mut ns = n_values.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut points = Vec::with_capacity(ns.len());
    for n in ns {
        let modes = modes_for(family, n, constraints, modes_per_n, seed)?;
        let mut point = ScalingPoint { n, modes_sampled: modes.len(), max_cycle: 0, max_transient: 0 };
        for mode in &modes {
            let report = sweep_all(rule, mode, budget)?;
            point.max_cycle = point.max_cycle.max(report.max_cycle);
            point.max_transient = point.max_transient.max(report.max_transient);
        }
        points.push(point);
    }
    let pairs: Vec<(usize, u64)> = points.iter().map(|p| (p.n, p.max_cycle)).collect();
    let regime = classify_regime(&pairs, &RegimeThresholds::default()).unwrap_or(Regime::Unknown);
    Ok(ScalingRecord { rule, family, constraint: constraints.label(family), points, regime })
}

fn primes_up_to(n: usize) -> Vec<usize> {
    let mut sieve = vec![true; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            primes.push(i);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    primes
}

/// `h(s)` for every `s ≤ n`: the largest product of distinct primes whose sum is at most `s`.
///
/// 0/1 knapsack over the primes; candidates are compared through their
/// logarithms, falling back to exact comparison when the logs are close.
pub fn primorial_table(n: usize) -> Vec<BigUint> {
    let mut best: Vec<BigUint> = vec![BigUint::one(); n + 1];
    let mut logs: Vec<f64> = vec![0.0; n + 1];
    for p in primes_up_to(n) {
        let lp = (p as f64).ln();
        for s in (p..=n).rev() {
            let cand_log = logs[s - p] + lp;
            let better = if (cand_log - logs[s]).abs() > 1e-9 * cand_log.max(1.0) {
                cand_log > logs[s]
            } else {
                &best[s - p] * p > best[s]
            };
            if better {
                best[s] = &best[s - p] * p;
                logs[s] = cand_log;
            }
        }
    }
    best
}

pub fn primorial(n: usize) -> BigUint {
    primorial_table(n).pop().unwrap()
}

fn bits_of(s: &str) -> Vec<bool> {
    s.bytes().map(|b| b == b'1').collect()
}

/// How a rule's wall-delimited construction is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Recipe {
    /// Bipartite mode, even cells first.
    Bipartite,
    /// Sequential mode in identity order.
    SequentialIdentity,
    /// Block-parallel mode with period 2 found by search.
    PhaseSearch,
}

/// Substep phases of a cell in a period-2 schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    First,
    Second,
    Both,
}

/// A period-2 block-parallel mode from per-cell phases: `Both` cells form
/// singleton subsequences, and `First`/`Second` cells are paired in index order.
pub fn phase_mode(phases: &[Phase]) -> Result<UpdateMode> {
    let firsts: Vec<usize> = (0..phases.len()).filter(|&i| phases[i] == Phase::First).collect();
    let seconds: Vec<usize> = (0..phases.len()).filter(|&i| phases[i] == Phase::Second).collect();
    if firsts.len() != seconds.len() {
        return Err(Error::InfeasibleConstraint("unbalanced phases cannot form a block-parallel mode".into()));
    }
    let mut subs: Vec<Vec<usize>> = (0..phases.len()).filter(|&i| phases[i] == Phase::Both).map(|i| vec![i]).collect();
    subs.extend(firsts.into_iter().zip(seconds).map(|(a, b)| vec![a, b]));
    UpdateMode::block_parallel(subs, DEFAULT_PERIOD_CAP)
}

struct Unit {
    bits: Vec<bool>,
    phases: Vec<Phase>,
    padding: bool,
}

fn recipe(rule: Rule) -> Result<Recipe> {
    match rule.code() {
        156 | 73 | 1 | 9 | 110 => Ok(Recipe::Bipartite),
        108 => Ok(Recipe::SequentialIdentity),
        178 | 184 => Ok(Recipe::PhaseSearch),
        other => Err(Error::UnsupportedRule(other)),
    }
}

fn wall_of(rule: Rule) -> (&'static str, Vec<Phase>) {
    match rule.code() {
        178 => ("01", vec![Phase::Both, Phase::Both]),
        _ => ("0011", vec![Phase::Both, Phase::First, Phase::First, Phase::Both]),
    }
}

/// Cells of a unit holding one segment of `k` cells.
fn fixed_unit(rule: Rule, k: usize) -> Vec<bool> {
    let zeros = |m: usize| "0".repeat(m);
    let s = match rule.code() {
        156 => format!("01{}", zeros(k)),
        108 => {
            let seg = if k % 2 == 0 { "1".repeat(k) } else { format!("{}0", "1".repeat(k - 1)) };
            format!("001{seg}100")
        }
        73 => {
            let seg = if k >= 2 { format!("{}01", zeros(k - 2)) } else { zeros(k) };
            format!("0110{seg}")
        }
        _ => {
            let seg = if k >= 2 { format!("{}01", zeros(k - 2)) } else { zeros(k) };
            let tail = if k % 2 == 0 { "000" } else { "0000" };
            format!("010{seg}{tail}")
        }
    };
    bits_of(&s)
}

fn fixed_padding(rule: Rule, r: usize) -> Option<Vec<bool>> {
    match rule.code() {
        108 => Some(vec![false; r]),
        156 if r >= 2 => Some(bits_of(&format!("01{}", "0".repeat(r - 2)))),
        73 if r >= 4 => Some(bits_of(&format!("0110{}", "0".repeat(r - 4)))),
        1 | 9 | 110 if r >= 6 && r % 2 == 0 => Some(bits_of(&format!("010{}", "0".repeat(r - 3)))),
        _ => None,
    }
}

/// Period of cells `range` along the cycle `states`.
fn projected_period(states: &[Configuration], start: usize, len: usize) -> u64 {
    let c = states.len();
    let windows: Vec<Vec<bool>> = states.iter().map(|s| s.window(start, len)).collect();
    (1..=c)
        .filter(|d| c % d == 0)
        .find(|&d| (0..c).all(|t| windows[t] == windows[(t + d) % c]))
        .unwrap_or(c) as u64
}

/// Cycle states reached from `x`, after its transient.
fn cycle_states(stepper: &Stepper, x: &Configuration, budget: &Budget) -> Result<(u64, Vec<Configuration>)> {
    let outcome = stepper.detect_cycle(x, budget)?;
    let mut y = x.clone();
    for _ in 0..outcome.transient {
        y = stepper.step(&y);
    }
    let mut states = Vec::with_capacity(outcome.cycle_length as usize);
    for _ in 0..outcome.cycle_length {
        states.push(y.clone());
        y = stepper.step(&y);
    }
    Ok((outcome.transient, states))
}

fn wall_holds(states: &[Configuration], wall: &[bool]) -> bool {
    states.iter().all(|s| s.window(0, wall.len()) == wall)
}

fn phase_candidates(k: usize) -> Vec<Vec<Phase>> {
    const ALL: [Phase; 3] = [Phase::First, Phase::Second, Phase::Both];
    if k <= 6 {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|p: Vec<Phase>| {
                    ALL.iter().map(move |&ph| {
                        let mut q = p.clone();
                        q.push(ph);
                        q
                    })
                })
                .collect();
        }
        return out;
    }
    let alt = |first: Phase, second: Phase| (0..k).map(|j| if j % 2 == 0 { first } else { second }).collect();
    vec![alt(Phase::First, Phase::Second), alt(Phase::Second, Phase::First), vec![Phase::Both; k]]
}

fn content_candidates(k: usize) -> Vec<Vec<bool>> {
    if k <= 12 {
        return (0..1u32 << k).map(|c| (0..k).map(|j| c >> j & 1 == 1).collect()).collect();
    }
    let mut out = vec![vec![false; k]];
    for j in 0..k {
        let mut v = vec![false; k];
        v[j] = true;
        out.push(v);
    }
    out
}

/// Best segment of `k` cells behind the rule's wall on an isolated ring.
fn searched_unit(rule: Rule, k: usize, budget: &Budget) -> Result<Unit> {
    let (wall, wall_phases) = wall_of(rule);
    let wall = bits_of(wall);
    let mut best: Option<(u64, Unit)> = None;
    for phases in phase_candidates(k) {
        let mut all_phases = wall_phases.clone();
        all_phases.extend(&phases);
        let Ok(mode) = phase_mode(&all_phases) else { continue };
        let stepper = Stepper::new(rule, &mode);
        for content in content_candidates(k) {
            let mut bits = wall.clone();
            bits.extend(&content);
            let (_, states) = cycle_states(&stepper, &Configuration::from_bits(&bits), budget)?;
            if !wall_holds(&states, &wall) {
                continue;
            }
            let c = states.len() as u64;
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                best = Some((c, Unit { bits, phases: all_phases.clone(), padding: false }));
            }
        }
    }
    best.map(|(_, u)| u)
        .ok_or_else(|| Error::InfeasibleConstraint(format!("no wall-preserving schedule for a segment of {k} cells")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CraftedSegment {
    /// Cells of the segment between walls.
    pub length: usize,
    /// First cell of the unit (wall included).
    pub start: usize,
    /// Cells of the unit, wall included.
    pub unit_length: usize,
    /// Period of the unit's cells along the global cycle.
    pub cycle: u64,
    /// True for the filler unit added to reach the ring size.
    pub padding: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CraftedConfig {
    pub rule: Rule,
    pub config: Configuration,
    pub mode: String,
    pub segments: Vec<CraftedSegment>,
    pub transient: u64,
    /// Cycle length of the whole ring.
    pub global_cycle: u64,
    /// Least common multiple of the segment cycles.
    pub lcm: u64,
}

impl CraftedConfig {
    pub fn mode(&self) -> UpdateMode {
        UpdateMode::parse(&self.mode).expect("crafted modes roundtrip")
    }
}

/// Concatenates wall-delimited segments of the given lengths into a ring of
/// `n` cells, schedules it with the rule's construction, and measures the
/// global cycle and the cycle of each segment by simulation.
///
/// Supported rules: 156, 73, 1, 9, 110 (bipartite), 108 (sequential identity
/// order), 178 and 184 (period-2 block-parallel modes found by search).
pub fn craft_lcm_config(rule: Rule, n: usize, segment_lengths: &[usize], budget: &Budget) -> Result<CraftedConfig> {
    let recipe = recipe(rule)?;
    if segment_lengths.is_empty() {
        return Err(Error::InvalidArgument("at least one segment is required".into()));
    }
    let mut units: Vec<Unit> = Vec::new();
    for &k in segment_lengths {
        units.push(match recipe {
            Recipe::PhaseSearch => searched_unit(rule, k, budget)?,
            _ => {
                let bits = fixed_unit(rule, k);
                let phases = vec![Phase::Both; bits.len()];
                Unit { bits, phases, padding: false }
            }
        });
    }
    let used: usize = units.iter().map(|u| u.bits.len()).sum();
    if used > n {
        return Err(Error::DoesNotFit { needed: used, n });
    }
    if used < n {
        let r = n - used;
        let pad = match recipe {
            Recipe::PhaseSearch => {
                let (wall, phases) = wall_of(rule);
                (r >= wall.len()).then(|| {
                    let mut bits = bits_of(wall);
                    bits.resize(r, false);
                    let mut ph = phases.clone();
                    ph.extend((0..r - wall.len()).map(|j| if j % 2 == 0 { Phase::Second } else { Phase::First }));
                    (bits, ph)
                })
            }
            _ => fixed_padding(rule, r).map(|bits| {
                let len = bits.len();
                (bits, vec![Phase::Both; len])
            }),
        };
        let (bits, phases) = pad.ok_or(Error::DoesNotFit { needed: used, n })?;
        units.push(Unit { bits, phases, padding: true });
    }
    let bits: Vec<bool> = units.iter().flat_map(|u| u.bits.iter().copied()).collect();
    let config = Configuration::from_bits(&bits);
    let mode = match recipe {
        Recipe::Bipartite => UpdateMode::bipartite(n, true)?,
        Recipe::SequentialIdentity => UpdateMode::sequential((0..n).collect())?,
        Recipe::PhaseSearch => {
            let phases: Vec<Phase> = units.iter().flat_map(|u| u.phases.iter().copied()).collect();
            phase_mode(&phases)?
        }
    };
    let stepper = Stepper::new(rule, &mode);
    let (transient, states) = cycle_states(&stepper, &config, budget)?;
    let mut segments = Vec::with_capacity(units.len());
    let mut start = 0;
    for (i, u) in units.iter().enumerate() {
        let length = if u.padding { 0 } else { segment_lengths[i] };
        segments.push(CraftedSegment {
            length,
            start,
            unit_length: u.bits.len(),
            cycle: projected_period(&states, start, u.bits.len()),
            padding: u.padding,
        });
        start += u.bits.len();
    }
    let lcm = segments.iter().fold(1u64, |acc, s| acc.lcm(&s.cycle));
    Ok(CraftedConfig {
        rule,
        config,
        mode: mode.to_text(),
        segments,
        transient,
        global_cycle: states.len() as u64,
        lcm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(walls: &[Wall]) -> Vec<String> {
        walls.iter().map(Wall::word_string).collect()
    }

    #[test]
    fn absolute_walls() {
        assert_eq!(words(&find_absolute_walls(Rule::new(156), 2).unwrap()), ["01"]);
        let w108 = words(&find_absolute_walls(Rule::new(108), 3).unwrap());
        assert!(w108.contains(&"001".to_string()) && w108.contains(&"100".to_string()));
        assert!(words(&find_absolute_walls(Rule::new(73), 4).unwrap()).contains(&"0110".to_string()));
        assert!(find_absolute_walls(Rule::new(1), 3).unwrap().is_empty());
        assert_eq!(find_absolute_walls(Rule::new(204), 1).unwrap().len(), 2);
    }

    #[test]
    fn relative_wall_184() {
        let mode = UpdateMode::block_parallel(
            vec![vec![0], vec![3], vec![1, 4], vec![2, 9], vec![5], vec![6], vec![7], vec![8]],
            100,
        )
        .unwrap();
        let w = bits_of("0011");
        let b = Budget::default();
        assert!(verify_relative_wall(Rule::new(184), &mode, &w, Placement::At(0), 20, &b).unwrap());
        let seq = UpdateMode::sequential((0..10).collect()).unwrap();
        assert!(!verify_relative_wall(Rule::new(184), &seq, &w, Placement::At(0), 20, &b).unwrap());
    }

    #[test]
    fn regimes() {
        let t = RegimeThresholds::default();
        assert_eq!(classify_regime(&[(4, 1), (6, 1), (8, 1), (10, 1)], &t).unwrap(), Regime::Constant);
        assert_eq!(classify_regime(&[(6, 6), (8, 8), (10, 10), (12, 12)], &t).unwrap(), Regime::Linear);
        assert_eq!(classify_regime(&[(8, 8), (10, 32), (12, 128), (14, 512)], &t).unwrap(), Regime::Superpolynomial);
        assert!(matches!(classify_regime(&[(1, 1)], &t), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn small_primorials() {
        let expect = [1u32, 1, 2, 3, 3, 6, 6, 10, 15, 15, 30];
        let table = primorial_table(10);
        for (n, &h) in expect.iter().enumerate() {
            assert_eq!(table[n], BigUint::from(h), "h({n})");
        }
        assert_eq!(primorial(0), BigUint::one());
    }

    #[test]
    fn phase_modes() {
        let mode = phase_mode(&[Phase::Both, Phase::First, Phase::Second]).unwrap();
        assert_eq!(mode.blocks(), &[vec![0, 1], vec![0, 2]]);
        assert!(phase_mode(&[Phase::First]).is_err());
    }

    #[test]
    fn craft_156() {
        let c = craft_lcm_config(Rule::new(156), 12, &[3, 5], &Budget::default()).unwrap();
        assert_eq!(c.config.to_string(), "010000100000");
        assert_eq!(c.global_cycle, 12);
        assert_eq!(c.lcm, c.global_cycle);
        assert!(matches!(craft_lcm_config(Rule::new(90), 12, &[3], &Budget::default()), Err(Error::UnsupportedRule(90))));
        assert!(matches!(craft_lcm_config(Rule::new(156), 6, &[5], &Budget::default()), Err(Error::DoesNotFit { .. })));
    }
}
