//! Acceptance criteria 1–13. Runs as a plain binary so every criterion prints
//! exactly one PASS/FAIL line; exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use eca_core::analysis::{log_log_slope, modes_for, Regime, RegimeThresholds};
use eca_core::config::{parse_word, word_to_string};
use eca_core::schedule::DEFAULT_PERIOD_CAP;
use eca_core::seed::{derive_seed, rng_from_seed, stream};
use eca_core::*;
use num_bigint::BigUint;
use rand::Rng;

// ---------------------------------------------------------------------------
// Independent oracles: plain per-cell evaluation on Vec<bool>.

fn local(code: u8, l: bool, c: bool, r: bool) -> bool {
    let idx = (l as u8) << 2 | (c as u8) << 1 | r as u8;
    code >> idx & 1 == 1
}

/// Updates the given cells simultaneously, reading the pre-substep state.
fn naive_block(code: u8, x: &[bool], cells: &[usize]) -> Vec<bool> {
    let n = x.len();
    let mut y = x.to_vec();
    for &i in cells {
        y[i] = local(code, x[(i + n - 1) % n], x[i], x[(i + 1) % n]);
    }
    y
}

fn naive_parallel(code: u8, x: &[bool]) -> Vec<bool> {
    let all: Vec<usize> = (0..x.len()).collect();
    naive_block(code, x, &all)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// One step read straight from the family parameters, without the library's
/// block normalization.
fn naive_family_step(code: u8, mode: &UpdateMode, x: &[bool]) -> Vec<bool> {
    let n = x.len();
    match mode.params() {
        ModeParams::Parallel => naive_parallel(code, x),
        ModeParams::Bipartite { even_first } => {
            let even: Vec<usize> = (0..n).step_by(2).collect();
            let odd: Vec<usize> = (1..n).step_by(2).collect();
            let (a, b) = if *even_first { (even, odd) } else { (odd, even) };
            naive_block(code, &naive_block(code, x, &a), &b)
        }
        ModeParams::Sequential(order) => order.iter().fold(x.to_vec(), |y, &i| naive_block(code, &y, &[i])),
        ModeParams::BlockSequential(blocks) | ModeParams::Explicit(blocks) => {
            blocks.iter().fold(x.to_vec(), |y, b| naive_block(code, &y, b))
        }
        ModeParams::BlockParallel(subs) => {
            let period = subs.iter().fold(1, |acc, s| lcm(acc, s.len()));
            (0..period).fold(x.to_vec(), |y, l| {
                let block: Vec<usize> = subs.iter().map(|s| s[l % s.len()]).collect();
                naive_block(code, &y, &block)
            })
        }
        ModeParams::LocalClocks { periods, shifts } => {
            let period = periods.iter().fold(1, |acc, &p| lcm(acc, p));
            (0..period).fold(x.to_vec(), |y, t| {
                let block: Vec<usize> = (0..n).filter(|&i| t % periods[i] == shifts[i]).collect();
                naive_block(code, &y, &block)
            })
        }
    }
}

/// (transient, cycle length) by remembering every visited state.
fn naive_cycle(code: u8, mode: &UpdateMode, x0: &[bool]) -> (usize, usize) {
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut x = x0.to_vec();
    let mut t = 0;
    loop {
        if let Some(&first) = seen.get(&x) {
            return (first, t - first);
        }
        seen.insert(x.clone(), t);
        x = naive_family_step(code, mode, &x);
        t += 1;
    }
}

fn bits(s: &str) -> Vec<bool> {
    parse_word(s).unwrap()
}

fn cfg(s: &str) -> Configuration {
    s.parse().unwrap()
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Largest product of distinct primes with sum ≤ n, by enumerating subsets.
fn brute_primorial(n: usize) -> u128 {
    let primes: Vec<usize> = (2..=n).filter(|&p| is_prime(p)).collect();
    let mut best = 1u128;
    fn go(primes: &[usize], budget: usize, prod: u128, best: &mut u128) {
        *best = (*best).max(prod);
        for (i, &p) in primes.iter().enumerate() {
            if p <= budget {
                go(&primes[i + 1..], budget - p, prod * p as u128, best);
            }
        }
    }
    go(&primes, n, 1, &mut best);
    best
}

// ---------------------------------------------------------------------------
// Shared sweep used by criteria 1 and 2.

fn sweep_modes(n: usize, seed: u64) -> Vec<UpdateMode> {
    let c = Constraints::default();
    let mut modes = vec![UpdateMode::parallel(n).unwrap()];
    if n % 2 == 0 {
        modes.extend(modes_for(Family::Bip, n, &c, 0, seed).unwrap());
    }
    for fam in [Family::Seq, Family::Bs, Family::Bp, Family::Lc] {
        modes.extend(modes_for(fam, n, &c, 20, seed).unwrap());
    }
    modes
}

struct Worst {
    cycle: u64,
    witness: String,
}

/// Also returns every non-trivial cycle as (mode, effectively parallel, min rep, length).
fn worst_cycle(rule: u8, ns: std::ops::RangeInclusive<usize>, seed: u64) -> (Worst, Vec<(String, bool, String, u64)>) {
    let budget = Budget::default();
    let mut worst = Worst { cycle: 0, witness: String::new() };
    let mut long = Vec::new();
    for n in ns {
        for mode in sweep_modes(n, seed) {
            let rep = sweep_all(Rule::new(rule), &mode, &budget).unwrap();
            for c in &rep.cycles {
                if c.length > 1 {
                    long.push((mode.to_text(), mode.is_effectively_parallel(), c.min_rep.to_string(), c.length));
                }
            }
            if rep.max_cycle > worst.cycle {
                let rep_cfg = rep.cycles.iter().find(|c| c.length == rep.max_cycle).unwrap();
                worst = Worst { cycle: rep.max_cycle, witness: format!("{} from {}", mode.to_text(), rep_cfg.min_rep) };
            }
        }
    }
    (worst, long)
}

const SEED: u64 = 42;

// ---------------------------------------------------------------------------

fn criterion_01() -> (bool, String) {
    let rules = [0u8, 4, 8, 12, 44, 72, 76, 78, 128, 132, 136, 140, 164, 200, 204];
    let mut bad = Vec::new();
    for r in rules {
        let (w, _) = worst_cycle(r, 4..=12, SEED);
        if w.cycle != 1 {
            // Cross-check the counterexample with the naive evaluator.
            let (mode_text, x) = w.witness.split_once(" from ").unwrap();
            let mode = UpdateMode::parse(mode_text).unwrap();
            let (_, oracle) = naive_cycle(r, &mode, &bits(x));
            bad.push(format!("rule {r}: cycle {} (oracle {oracle}) under {}", w.cycle, w.witness));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "all attractors are fixed points".into() } else { bad.join("; ") })
}

fn criterion_02() -> (bool, String) {
    let rules = [5u8, 13, 28, 29, 32, 36, 51, 77, 160, 232];
    let mut ok = true;
    let mut notes = Vec::new();
    for r in rules {
        let (w, long) = worst_cycle(r, 4..=12, SEED);
        let cap = match r {
            232 | 51 => 2,
            _ => 6,
        };
        if w.cycle > cap {
            ok = false;
            notes.push(format!("rule {r}: max {} > {cap} ({})", w.cycle, w.witness));
        }
        if r == 232 {
            let mut offending = 0;
            for (mode, parallel, x, len) in &long {
                let alternating = x.len() % 2 == 0 && (0..x.len()).all(|i| x.as_bytes()[i] != x.as_bytes()[(i + 1) % x.len()]);
                if !(*parallel && alternating && *len == 2) {
                    offending += 1;
                    if offending == 1 {
                        notes.push(format!("rule 232: cycle {len} under {mode} from {x}"));
                    }
                }
            }
            ok &= offending == 0;
            notes.push(format!("rule 232: {} two-cycles, all parallel on alternating rings: {}", long.len(), offending == 0));
        }
        notes.push(format!("{r}:{}", w.cycle));
    }
    (ok, notes.join(" "))
}

fn criterion_03() -> (bool, String) {
    let budget = Budget::default();
    let mut lengths = BTreeSet::new();
    for n in 1..=16 {
        let rep = sweep_all(Rule::new(156), &UpdateMode::parallel(n).unwrap(), &budget).unwrap();
        lengths.extend(rep.cycles.iter().map(|c| c.length));
    }
    (lengths.iter().all(|l| *l == 1 || *l == 2), format!("cycle lengths seen for n ≤ 16: {lengths:?}"))
}

fn criterion_04() -> (bool, String) {
    let budget = Budget::default();
    let mut ok = true;
    let mut notes = Vec::new();
    let c = craft_lcm_config(Rule::new(156), 12, &[3, 5], &budget).unwrap();
    let seg: Vec<u64> = c.segments.iter().filter(|s| !s.padding).map(|s| s.cycle).collect();
    let (_, oracle) = naive_cycle(156, &c.mode(), &c.config.bits().collect::<Vec<_>>());
    if c.global_cycle != 12 || c.lcm != 12 || seg != vec![4, 6] || oracle != 12 {
        ok = false;
    }
    notes.push(format!("(3,5) in n=12: {} under {}, segments {seg:?}, global {} (oracle {oracle})", c.config, c.mode, c.global_cycle));
    let mut per_k = Vec::new();
    for k in 1..=8 {
        // Bipartite modes need an even ring: odd k gets a 3-cell filler unit.
        let c = craft_lcm_config(Rule::new(156), k + 2 + 3 * (k % 2), &[k], &budget).unwrap();
        let (_, oracle) = naive_cycle(156, &c.mode(), &c.config.bits().collect::<Vec<_>>());
        let own = c.segments[0].cycle;
        if own != k as u64 + 1 || c.global_cycle != k as u64 + 1 || oracle != k + 1 {
            ok = false;
        }
        per_k.push(format!("{k}→{own}"));
    }
    notes.push(format!("single segments {}", per_k.join(",")));
    (ok, notes.join("; "))
}

fn homogeneous_only(rule: u8) -> (bool, String) {
    let budget = Budget::default();
    let c = Constraints::default();
    let mut bad = Vec::new();
    for n in 4..=12 {
        for mode in modes_for(Family::Seq, n, &c, 50, SEED).unwrap() {
            let rep = sweep_all(Rule::new(rule), &mode, &budget).unwrap();
            for cy in &rep.cycles {
                let ones = cy.min_rep.count_ones();
                if cy.length != 1 || (ones != 0 && ones != n) {
                    bad.push((mode.to_text(), cy.min_rep.to_string(), cy.length));
                }
            }
        }
    }
    let detail = match bad.first() {
        None => format!("rule {rule} SEQ: homogeneous fixed points only"),
        Some((m, x, l)) => {
            let (_, oracle) = naive_cycle(rule, &UpdateMode::parse(m).unwrap(), &bits(x));
            format!("rule {rule} SEQ: {} non-homogeneous attractors, e.g. cycle {l} (oracle {oracle}) from {x} under {m}", bad.len())
        }
    };
    (bad.is_empty(), detail)
}

fn criterion_05() -> (bool, String) {
    let budget = Budget::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for r in [184u8, 152, 56] {
        let (pass, d) = homogeneous_only(r);
        ok &= pass;
        notes.push(d);
    }
    let mut orbit = Vec::new();
    for n in (4..=16).step_by(2) {
        let x = cfg(&format!("{}11", "10".repeat(n / 2 - 1)));
        let par = UpdateMode::parallel(n).unwrap();
        let got = detect_cycle(&x, Rule::new(184), &par, &budget).unwrap().cycle_length;
        let (_, oracle) = naive_cycle(184, &par, &x.bits().collect::<Vec<_>>());
        ok &= got == n as u64 && oracle == n;
        orbit.push(format!("{n}→{got}"));
    }
    notes.push(format!("rule 184 PAR orbit {}", orbit.join(",")));
    let bp = UpdateMode::block_parallel(
        vec![vec![0], vec![3], vec![1, 4], vec![2, 9], vec![5], vec![6], vec![7], vec![8]],
        DEFAULT_PERIOD_CAP,
    )
    .unwrap();
    let seq = UpdateMode::sequential((0..10).collect()).unwrap();
    for r in [184u8, 152] {
        let kept = verify_relative_wall(Rule::new(r), &bp, &bits("0011"), Placement::At(0), 40, &budget).unwrap();
        let seq_kept = verify_relative_wall(Rule::new(r), &seq, &bits("0011"), Placement::At(0), 40, &budget).unwrap();
        let absolute = find_absolute_walls(Rule::new(r), 4).unwrap().iter().any(|w| w.word_string() == "0011");
        ok &= kept && !seq_kept && !absolute;
        notes.push(format!("rule {r} 0011 kept under {}: {kept}, under SEQ: {seq_kept}", bp.to_text()));
    }
    (ok, notes.join("; "))
}

fn criterion_06() -> (bool, String) {
    let budget = Budget::default();
    let c = Constraints::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for r in [40u8, 168, 172] {
        let mut worst = (1u64, String::new());
        let mut tested = 0;
        for n in 4..=12 {
            for fam in [Family::Bip, Family::Seq, Family::Bs, Family::Bp, Family::Lc] {
                if fam == Family::Bip && n % 2 == 1 {
                    continue;
                }
                for mode in modes_for(fam, n, &c, 30, SEED).unwrap() {
                    if mode.is_effectively_parallel() {
                        continue;
                    }
                    tested += 1;
                    let rep = sweep_all(Rule::new(r), &mode, &budget).unwrap();
                    if rep.max_cycle > worst.0 {
                        worst = (rep.max_cycle, mode.to_text());
                    }
                }
            }
        }
        ok &= worst.0 == 1;
        let mut par_fail = Vec::new();
        for n in 4..=12 {
            let seed_cfg = if r == 172 {
                format!("{}0", "1".repeat(n - 1))
            } else if n % 2 == 0 {
                format!("{}11", "10".repeat(n / 2 - 1))
            } else {
                format!("{}1", "10".repeat((n - 1) / 2))
            };
            let par = UpdateMode::parallel(n).unwrap();
            let got = detect_cycle(&cfg(&seed_cfg), Rule::new(r), &par, &budget).unwrap().cycle_length;
            let (_, oracle) = naive_cycle(r, &par, &bits(&seed_cfg));
            if got != n as u64 || oracle != n {
                par_fail.push(format!("n={n} {seed_cfg}→{got} (oracle {oracle})"));
            }
        }
        ok &= par_fail.is_empty();
        notes.push(format!(
            "rule {r}: {tested} non-parallel modes, max cycle {}{}; PAR seeds {}",
            worst.0,
            if worst.0 > 1 { format!(" under {}", worst.1) } else { String::new() },
            if par_fail.is_empty() { "reach cycle n".to_string() } else { format!("fail at {}", par_fail.join(", ")) }
        ));
    }
    (ok, notes.join("; "))
}

fn criterion_07() -> (bool, String) {
    let budget = Budget::default();
    let mut ok = true;
    let mut got = Vec::new();
    for k in 2..=8 {
        let expected = if k % 2 == 0 { k } else { k + 2 };
        // Odd segments start from 1^(k-1)0, the configuration the construction uses.
        let body = if k % 2 == 0 { "1".repeat(k) } else { format!("{}0", "1".repeat(k - 1)) };
        let x = format!("001{body}100");
        let n = x.len();
        let seq = UpdateMode::sequential((0..n).collect()).unwrap();
        let len = detect_cycle(&cfg(&x), Rule::new(108), &seq, &budget).unwrap().cycle_length;
        let (_, oracle) = naive_cycle(108, &seq, &bits(&x));
        ok &= len == expected as u64 && oracle == expected;
        got.push(format!("k={k}: {len} (oracle {oracle}, expected {expected})"));
    }
    (ok, got.join(", "))
}

fn absolute_set(rule: u8, k: usize) -> BTreeSet<String> {
    find_absolute_walls(Rule::new(rule), k).unwrap().iter().map(|w| w.word_string()).collect()
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|s| s.to_string()).collect()
}

fn criterion_08() -> (bool, String) {
    let budget = Budget::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for (r, k, want) in [(156u8, 2, set(&["01"])), (108, 3, set(&["001", "100"])), (73, 4, set(&["0110"]))] {
        let got = absolute_set(r, k);
        ok &= got == want;
        notes.push(format!("{r}: {got:?}"));
    }

    // Rule 1: {010, 000} must not be absolute, yet preserved (as a set) under some mode.
    let abs1 = absolute_set(1, 3);
    let words1 = vec![bits("010"), bits("000")];
    let n = 8;
    let mut witness = None;
    for j in 0..300u64 {
        let m = sample_mode(Family::Lc, n, derive_seed(SEED, stream::MODES, j), &Constraints::default()).unwrap();
        if verify_wall_set(Rule::new(1), &m, &words1, Placement::At(0), 24, &budget).unwrap() {
            witness = Some(m);
            break;
        }
    }
    let par1 = verify_wall_set(Rule::new(1), &UpdateMode::parallel(n).unwrap(), &words1, Placement::At(0), 24, &budget)
        .unwrap();
    let rule1_ok = abs1.is_disjoint(&set(&["010", "000"])) && witness.is_some() && !par1;
    ok &= rule1_ok;
    notes.push(format!(
        "1: absolute {abs1:?}, {{010,000}} kept under {}, under PAR: {par1}",
        witness.map_or("no sampled mode".into(), |m| m.to_text())
    ));

    // Rule 178: {01, 10} not absolute, kept when both wall cells update together.
    let abs178 = absolute_set(178, 2);
    let crafted = craft_lcm_config(Rule::new(178), 16, &[4, 6], &budget).unwrap();
    let m = crafted.mode();
    let words178 = vec![bits("01"), bits("10")];
    let mut kept = true;
    for s in crafted.segments.iter() {
        kept &= verify_wall_set(Rule::new(178), &m, &words178, Placement::At(s.start), 24, &budget).unwrap();
    }
    let seq = UpdateMode::sequential((0..16).collect()).unwrap();
    let seq_kept = verify_wall_set(Rule::new(178), &seq, &words178, Placement::At(0), 24, &budget).unwrap();
    ok &= abs178.is_empty() && kept && !seq_kept;
    notes.push(format!("178: absolute {abs178:?}, {{01,10}} kept under {}: {kept}, under SEQ: {seq_kept}", m.to_text()));
    (ok, notes.join("; "))
}

fn criterion_09() -> (bool, String) {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    let table = primorial_table(10_000);
    let mismatches: Vec<usize> = (0..=60).filter(|&n| table[n] != BigUint::from(brute_primorial(n))).collect();
    ok &= mismatches.is_empty();
    notes.push(format!("oracle mismatches for n ≤ 60: {mismatches:?}"));
    let ratio = |n: usize| {
        let shift = table[n].bits().saturating_sub(53);
        let lead: BigUint = &table[n] >> shift;
        let log2h = (lead.to_u64_digits()[0] as f64).log2() + shift as f64;
        let nf = n as f64;
        log2h / (nf * nf.log2()).sqrt()
    };
    let ratios: Vec<(usize, f64)> = (100..=10_000).map(|n| (n, ratio(n))).collect();
    let lo = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    ok &= lo >= 0.6 && hi <= 1.3;
    let mut windows = Vec::new();
    let mut a = 100;
    while a <= 10_000 {
        let b = (2 * a).min(10_001);
        let w: Vec<f64> = ratios.iter().filter(|(n, _)| (a..b).contains(n)).map(|r| r.1).collect();
        windows.push((w.iter().cloned().fold(f64::INFINITY, f64::min), w.iter().cloned().fold(f64::NEG_INFINITY, f64::max)));
        a = b;
    }
    let nondecreasing = windows.windows(2).all(|p| p[1].0 >= p[0].0 && p[1].1 >= p[0].1);
    ok &= nondecreasing;
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 10.0;
    notes.push(format!(
        "ratio range [{lo:.3}, {hi:.3}], dyadic window minima {:?}, nondecreasing: {nondecreasing}, {elapsed:.1}s",
        windows.iter().map(|w| format!("{:.3}", w.0)).collect::<Vec<_>>()
    ));
    (ok, notes.join("; "))
}

fn measures_exactness(n: usize, limit_secs: Option<f64>) -> (bool, String) {
    let start = Instant::now();
    let budget = Budget::default();
    let mut worst: f64 = 0.0;
    for fam in Family::SAMPLED {
        let s = run_series(Rule::new(150), fam, &Constraints::default(), n, ConfigSource::Exhaustive, 10, 200, SEED, &budget)
            .unwrap();
        for t in 0..=200 {
            worst = worst
                .max((s.mean_density[t] - 0.5).abs())
                .max(s.mean_norm_energy[t].abs())
                .max(s.var_density.as_ref().unwrap()[t].abs())
                .max(s.var_norm_energy.as_ref().unwrap()[t].abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = worst <= 1e-12 && limit_secs.map_or(true, |l| elapsed < l);
    (ok, format!("n={n}: largest deviation {worst:.3e} over all families and steps, {elapsed:.1}s"))
}

fn criterion_10_reduced() -> (bool, String) {
    measures_exactness(12, Some(60.0))
}

fn criterion_10_full() -> (bool, String) {
    measures_exactness(16, None)
}

fn criterion_11() -> (bool, String) {
    let s = run_series(Rule::new(110), Family::Seq, &Constraints::default(), 38, ConfigSource::Random(128), 32, 1000, 2024, &Budget::default())
        .unwrap();
    let tail = &s.mean_density[500..=1000];
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    ((0.70..=0.78).contains(&mean), format!("mean density over steps 500–1000: {mean:.4}"))
}

fn criterion_12() -> (bool, String) {
    let budget = Budget::default();
    let c = Constraints::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for fam in Family::SAMPLED {
        let ns: Vec<usize> = if fam == Family::Bip { (4..=14).step_by(2).collect() } else { (4..=12).collect() };
        let rec = max_cycle_scaling(Rule::new(204), fam, &c, &ns, 10, SEED, &budget).unwrap();
        ok &= rec.regime == Regime::Constant;
        notes.push(format!("204/{}: {}", fam, rec.regime.as_str()));
    }
    let ns: Vec<usize> = (4..=14).collect();
    let rec = max_cycle_scaling(Rule::new(170), Family::Bs, &c, &ns, 20, SEED, &budget).unwrap();
    ok &= rec.regime == Regime::Linear;
    notes.push(format!("170/bs: {} {:?}", rec.regime.as_str(), rec.pairs()));
    let ns: Vec<usize> = (8..=16).step_by(2).collect();
    let rec = max_cycle_scaling(Rule::new(156), Family::Bip, &c, &ns, 0, SEED, &budget).unwrap();
    let pairs = rec.pairs();
    let direct = classify_regime(&pairs, &RegimeThresholds::default()).unwrap();
    ok &= rec.regime == Regime::Superpolynomial && direct == Regime::Superpolynomial;
    notes.push(format!("156/bip: {} {:?} slope {:.2}", rec.regime.as_str(), pairs, log_log_slope(&pairs)));
    (ok, notes.join("; "))
}

fn criterion_13() -> (bool, String) {
    let mut mismatches = Vec::new();
    let mut rng = rng_from_seed(derive_seed(SEED, stream::SAMPLE, 13));
    let mut checked = 0usize;
    for fam in Family::SAMPLED {
        for j in 0..100u64 {
            let n = if fam == Family::Bip { 2 * rng.gen_range(2..=6) } else { rng.gen_range(3..=12) };
            let mode = sample_mode(fam, n, derive_seed(SEED, stream::MODES, (fam as u64) << 32 | j), &Constraints::default())
                .unwrap();
            let code: u8 = rng.gen();
            let stepper = Stepper::new(Rule::new(code), &mode);
            for x in sample_configs(n, 100, rng.gen()) {
                let lib = stepper.step(&x).to_string();
                let oracle = word_to_string(&naive_family_step(code, &mode, &x.bits().collect::<Vec<_>>()));
                checked += 1;
                if lib != oracle {
                    mismatches.push(format!("rule {code} {} from {x}: {lib} vs {oracle}", mode.to_text()));
                }
            }
        }
    }
    let mut par_checked = 0usize;
    for code in 0..=255u8 {
        for n in 1..=10 {
            let par = UpdateMode::parallel(n).unwrap();
            let stepper = Stepper::new(Rule::new(code), &par);
            for v in 0..1u64 << n {
                let x = Configuration::unpack(n, v).unwrap();
                let oracle: Vec<bool> = naive_parallel(code, &x.bits().collect::<Vec<_>>());
                par_checked += 1;
                if stepper.step(&x).bits().collect::<Vec<_>>() != oracle {
                    mismatches.push(format!("rule {code} parallel from {x}"));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    (
        ok,
        format!(
            "{checked} family-semantics steps, {par_checked} parallel steps, {} mismatches{}",
            mismatches.len(),
            mismatches.first().map_or(String::new(), |m| format!(", first: {m}"))
        ),
    )
}

type Criterion = fn() -> (bool, String);

fn main() {
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(&str, &str, Criterion); 14] = [
        ("1", "fixed-point rules", criterion_01),
        ("2", "constant-regime rules", criterion_02),
        ("3", "rule 156 parallel cycles", criterion_03),
        ("4", "rule 156 bipartite lcm law", criterion_04),
        ("5", "rules 184/152/56", criterion_05),
        ("6", "rules 40/168/172", criterion_06),
        ("7", "rule 108 sequential cycles", criterion_07),
        ("8", "walls", criterion_08),
        ("9", "primorial", criterion_09),
        ("10", "measures exactness (n=12)", criterion_10_reduced),
        ("10", "measures exactness (n=16)", criterion_10_full),
        ("11", "rule 110 density plateau", criterion_11),
        ("12", "regime classifier", criterion_12),
        ("13", "oracle equivalences", criterion_13),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !only.is_empty() && !only.iter().any(|o| o == id) {
            continue;
        }
        let start = Instant::now();
        let (pass, detail) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(r) => r,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {} [{name}] ({:.1}s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {failed} failing line(s)");
    if failed > 0 {
        std::process::exit(1);
    }
}
