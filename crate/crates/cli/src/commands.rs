use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use eca_core::analysis::{classify_regime, modes_for, RegimeThresholds};
use eca_core::schedule::load_modes;
use eca_core::seed::{derive_seed, stream};
use eca_core::*;
use rayon::prelude::*;
use serde::Serialize;

use crate::plan::{parse_families, parse_list, parse_rules, ExperimentPlan, Failure};
use crate::{ConstraintArgs, DiagramArgs, Format, MeasureArgs, ModesArgs, PrimorialArgs, SweepArgs, WallsArgs};

fn constraints(a: &ConstraintArgs) -> Result<Constraints> {
    let mut c = Constraints { blocks: a.blocks, max_period: a.lc_max_period, ..Default::default() };
    if let Some(sizes) = &a.bp_sizes {
        c.bp_sizes = parse_list(sizes)?;
    }
    if let Some(cap) = a.lcm_cap {
        c.lcm_cap = cap;
    }
    Ok(c)
}

/// Bipartite modes exist only on even rings; odd sizes in a range are skipped.
fn sizes_for(family: Family, ns: &[usize]) -> Result<Vec<usize>> {
    if family != Family::Bip {
        return Ok(ns.to_vec());
    }
    let even: Vec<usize> = ns.iter().copied().filter(|n| n % 2 == 0).collect();
    if even.is_empty() {
        return Err(eca_core::Error::OddRingSize(ns[0]).into());
    }
    Ok(even)
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_text(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

struct ModeGroup {
    family: Family,
    constraint: String,
    n: usize,
    modes: Vec<UpdateMode>,
}

#[derive(Serialize)]
struct ScalingRow {
    rule: u8,
    family: String,
    constraint: String,
    n: usize,
    modes_sampled: usize,
    max_cycle: u64,
    max_transient: u64,
    regime: String,
}

#[derive(Serialize)]
struct CensusRow {
    cycle_length: u64,
    cycles: usize,
    basin_total: Option<u64>,
}

#[derive(Serialize)]
struct CensusIndexRow {
    rule: u8,
    family: String,
    n: usize,
    mode_index: usize,
    mode: String,
    configurations: u64,
    max_cycle: u64,
    max_transient: u64,
    file: String,
}

pub fn sweep(a: SweepArgs, budget: Budget) -> Result<()> {
    let rules = parse_rules(&a.rules)?;
    let c = constraints(&a.constraints)?;
    let mut groups: Vec<ModeGroup> = Vec::new();
    let (families, ns) = if let Some(path) = &a.mode_file {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let mut by_key: BTreeMap<(usize, Family), Vec<UpdateMode>> = BTreeMap::new();
        for mode in load_modes(&text, budget.period_cap)? {
            by_key.entry((mode.n(), mode.family())).or_default().push(mode);
        }
        if by_key.is_empty() {
            return Err(Failure::Plan(format!("{} contains no modes", path.display())).into());
        }
        for ((n, family), modes) in by_key {
            groups.push(ModeGroup { family, constraint: "file".into(), n, modes });
        }
        let mut fams: Vec<Family> = groups.iter().map(|g| g.family).collect();
        fams.dedup();
        (fams, groups.iter().map(|g| g.n).collect())
    } else {
        let families = parse_families(&a.family)?;
        let ns = parse_list(&a.n)?;
        if a.modes == 0 {
            return Err(Failure::Plan("--modes must be at least 1".into()).into());
        }
        for &family in &families {
            for n in sizes_for(family, &ns)? {
                let modes = modes_for(family, n, &c, a.modes, a.seed)?;
                groups.push(ModeGroup { family, constraint: c.label(family), n, modes });
            }
        }
        (families, ns)
    };
    if a.sample.is_none() {
        if let Some(g) = groups.iter().find(|g| g.n > budget.exhaustive_n) {
            return Err(eca_core::Error::BudgetExceeded(format!(
                "n={} exceeds the exhaustive limit {}; use --sample",
                g.n, budget.exhaustive_n
            ))
            .into());
        }
    }
    ExperimentPlan {
        command: "sweep".into(),
        rules: rules.clone(),
        families,
        constraints: c.clone(),
        n: ns,
        modes: Some(a.modes),
        mode_file: a.mode_file.as_ref().map(|p| p.display().to_string()),
        s: a.sample,
        m: None,
        steps: None,
        exhaustive: a.sample.is_none(),
        seed: a.seed,
        budget,
    }
    .write(&a.out)?;

    let tasks: Vec<(u8, usize, usize)> = rules
        .iter()
        .flat_map(|&r| {
            groups.iter().enumerate().flat_map(move |(g, grp)| (0..grp.modes.len()).map(move |j| (r, g, j)))
        })
        .collect();
    let reports: Vec<SweepReport> = tasks
        .par_iter()
        .enumerate()
        .map(|(idx, &(r, g, j))| {
            let mode = &groups[g].modes[j];
            match a.sample {
                None => sweep_all(Rule::new(r), mode, &budget),
                Some(s) => sweep_sample(Rule::new(r), mode, s, derive_seed(a.seed, stream::SAMPLE, idx as u64), &budget),
            }
        })
        .collect::<eca_core::Result<_>>()?;

    let census_dir = a.out.join("census");
    fs::create_dir_all(&census_dir)?;
    let mut index = Vec::with_capacity(tasks.len());
    // (rule, group) → (max cycle, max transient, modes)
    let mut agg: BTreeMap<(u8, usize), (u64, u64, usize)> = BTreeMap::new();
    for (&(r, g, j), rep) in tasks.iter().zip(&reports) {
        let grp = &groups[g];
        let file = format!("rule{r:03}_{}_n{}_mode{j:03}.csv", grp.family, grp.n);
        let rows: Vec<CensusRow> = rep
            .census()
            .into_iter()
            .map(|(len, e)| CensusRow { cycle_length: len, cycles: e.cycles, basin_total: e.basin_total })
            .collect();
        write_csv(&census_dir.join(&file), &rows)?;
        index.push(CensusIndexRow {
            rule: r,
            family: grp.family.to_string(),
            n: grp.n,
            mode_index: j,
            mode: rep.mode.clone(),
            configurations: rep.configurations,
            max_cycle: rep.max_cycle,
            max_transient: rep.max_transient,
            file: format!("census/{file}"),
        });
        let e = agg.entry((r, g)).or_insert((0, 0, 0));
        e.0 = e.0.max(rep.max_cycle);
        e.1 = e.1.max(rep.max_transient);
        e.2 += 1;
    }
    write_csv(&census_dir.join("index.csv"), &index)?;

    let mut scaling = Vec::new();
    for &r in &rules {
        let mut by_family: BTreeMap<(Family, String), Vec<usize>> = BTreeMap::new();
        for (g, grp) in groups.iter().enumerate() {
            by_family.entry((grp.family, grp.constraint.clone())).or_default().push(g);
        }
        for ((family, constraint), gs) in by_family {
            let pairs: Vec<(usize, u64)> = gs.iter().map(|&g| (groups[g].n, agg[&(r, g)].0)).collect();
            let regime = match classify_regime(&pairs, &RegimeThresholds::default()) {
                Ok(reg) => reg.as_str().to_string(),
                Err(_) => "insufficient_data".into(),
            };
            for &g in &gs {
                let (max_cycle, max_transient, modes_sampled) = agg[&(r, g)];
                scaling.push(ScalingRow {
                    rule: r,
                    family: family.to_string(),
                    constraint: constraint.clone(),
                    n: groups[g].n,
                    modes_sampled,
                    max_cycle,
                    max_transient,
                    regime: regime.clone(),
                });
            }
        }
    }
    write_csv(&a.out.join("scaling.csv"), &scaling)?;
    eprintln!("sweep: {} reports, scaling.csv and census written to {}", reports.len(), a.out.display());
    Ok(())
}

#[derive(Serialize)]
struct SeriesRow {
    rule: u8,
    family: String,
    constraint: String,
    n: usize,
    s: u64,
    m: usize,
    step: usize,
    mean_density: f64,
    mean_norm_energy: f64,
    var_density: Option<f64>,
    var_norm_energy: Option<f64>,
}

#[derive(Serialize)]
struct ModeSeriesRow {
    rule: u8,
    family: String,
    constraint: String,
    n: usize,
    mode_index: usize,
    mode: String,
    step: usize,
    density: f64,
    norm_energy: f64,
}

pub fn measure(a: MeasureArgs, budget: Budget) -> Result<()> {
    let rules = parse_rules(&a.rules)?;
    let families = parse_families(&a.family)?;
    let ns = parse_list(&a.n)?;
    let c = constraints(&a.constraints)?;
    if a.steps == 0 {
        return Err(Failure::Plan("--steps must be at least 1".into()).into());
    }
    let source = if a.exhaustive { ConfigSource::Exhaustive } else { ConfigSource::Random(a.s) };
    let mut runs = Vec::new();
    for &r in &rules {
        for &family in &families {
            for n in sizes_for(family, &ns)? {
                runs.push((r, family, n));
            }
        }
    }
    ExperimentPlan {
        command: "measure".into(),
        rules: rules.clone(),
        families: families.clone(),
        constraints: c.clone(),
        n: ns,
        modes: None,
        mode_file: None,
        s: (!a.exhaustive).then_some(a.s),
        m: Some(a.m),
        steps: Some(a.steps),
        exhaustive: a.exhaustive,
        seed: a.seed,
        budget,
    }
    .write(&a.out)?;

    let mut rows = Vec::new();
    let mut mode_rows = Vec::new();
    for (r, family, n) in runs {
        let series = run_series(Rule::new(r), family, &c, n, source, a.m, a.steps, a.seed, &budget)?;
        for t in 0..=a.steps {
            rows.push(SeriesRow {
                rule: r,
                family: family.to_string(),
                constraint: series.constraint.clone(),
                n,
                s: series.s,
                m: series.m,
                step: t,
                mean_density: series.mean_density[t],
                mean_norm_energy: series.mean_norm_energy[t],
                var_density: series.var_density.as_ref().map(|v| v[t]),
                var_norm_energy: series.var_norm_energy.as_ref().map(|v| v[t]),
            });
        }
        if a.per_mode {
            for (j, mode) in series.modes.iter().enumerate() {
                for t in 0..=a.steps {
                    mode_rows.push(ModeSeriesRow {
                        rule: r,
                        family: family.to_string(),
                        constraint: series.constraint.clone(),
                        n,
                        mode_index: j,
                        mode: mode.clone(),
                        step: t,
                        density: series.per_mode_density[j][t],
                        norm_energy: series.per_mode_norm_energy[j][t],
                    });
                }
            }
        }
    }
    write_csv(&a.out.join("series.csv"), &rows)?;
    if a.per_mode {
        write_csv(&a.out.join("series_modes.csv"), &mode_rows)?;
    }
    eprintln!("measure: {} rows written to {}", rows.len(), a.out.join("series.csv").display());
    Ok(())
}

pub fn diagram(a: DiagramArgs, budget: Budget) -> Result<()> {
    let mode = match (&a.mode, &a.mode_file) {
        (Some(text), _) => UpdateMode::parse_with_cap(text, budget.period_cap)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            load_modes(&text, budget.period_cap)?
                .into_iter()
                .next()
                .ok_or_else(|| Failure::Plan(format!("{} contains no modes", path.display())))?
        }
        (None, None) => return Err(Failure::Plan("one of --mode or --mode-file is required".into()).into()),
    };
    let x: Configuration = a.config.parse()?;
    if x.len() != mode.n() {
        return Err(eca_core::Error::SizeMismatch { expected: mode.n(), got: x.len() }.into());
    }
    let traj = trajectory(&x, Rule::new(a.rule), &mode, a.steps, a.substeps)?;
    let text = match a.format {
        Format::Text => dynamics::render_text(&traj),
        Format::Pgm => dynamics::render_pgm(&traj),
    };
    write_text(a.out.as_deref(), &text)
}

#[derive(Serialize)]
struct WallRow {
    rule: u8,
    k: usize,
    word: String,
    kind: &'static str,
}

pub fn walls(a: WallsArgs) -> Result<()> {
    let rules = parse_rules(&a.rules)?;
    let ks = parse_list(&a.k)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for &r in &rules {
        for &k in &ks {
            let words: Vec<String> = find_absolute_walls(Rule::new(r), k)?.iter().map(|w| w.word_string()).collect();
            text.push_str(&format!("{r} k={k}: {}\n", if words.is_empty() { "-".into() } else { words.join(",") }));
            rows.extend(words.into_iter().map(|word| WallRow { rule: r, k, word, kind: "absolute" }));
        }
    }
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
        write_csv(&dir.join("walls.csv"), &rows)?;
    }
    write_text(None, &text)
}

pub fn modes(a: ModesArgs, budget: Budget) -> Result<()> {
    let family: Family = a.family.parse()?;
    let mut c = constraints(&a.constraints)?;
    c.lcm_cap = c.lcm_cap.min(budget.period_cap);
    let mut text = String::new();
    for j in 0..a.count {
        let mode = sample_mode(family, a.n, derive_seed(a.seed, stream::MODES, j as u64), &c)?;
        text.push_str(&save_mode(&mode));
        text.push('\n');
    }
    write_text(a.out.as_deref(), &text)
}

pub fn primorial(a: PrimorialArgs) -> Result<()> {
    let ns = parse_list(&a.n)?;
    let table = primorial_table(*ns.iter().max().unwrap());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "h", "log2_h", "ratio"])?;
    for n in ns {
        let h = &table[n];
        let shift = h.bits().saturating_sub(53);
        let log2_h = ((h >> shift).to_u64_digits().first().copied().unwrap_or(1) as f64).log2() + shift as f64;
        let nf = n as f64;
        let ratio = if n >= 2 { log2_h / (nf * nf.log2()).sqrt() } else { 0.0 };
        w.write_record([n.to_string(), h.to_string(), log2_h.to_string(), ratio.to_string()])?;
    }
    let text = String::from_utf8(w.into_inner()?)?;
    write_text(a.out.as_deref(), &text)
}
