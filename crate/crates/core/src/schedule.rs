//! Periodic update modes and their normalized block sequences.
//!
//! Every family is expanded to a sequence of blocks `(B_0, …, B_{p-1})`; one
//! step applies the blocks in order and cells inside a block update together.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Par,
    Bip,
    Seq,
    Bs,
    Bp,
    Lc,
    Explicit,
}

impl Family {
    pub const SAMPLED: [Family; 6] =
        [Family::Par, Family::Bip, Family::Seq, Family::Bs, Family::Bp, Family::Lc];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Par => "par",
            Family::Bip => "bip",
            Family::Seq => "seq",
            Family::Bs => "bs",
            Family::Bp => "bp",
            Family::Lc => "lc",
            Family::Explicit => "explicit",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "par" | "parallel" => Family::Par,
            "bip" | "bipartite" => Family::Bip,
            "seq" | "sequential" => Family::Seq,
            "bs" | "block-sequential" => Family::Bs,
            "bp" | "block-parallel" => Family::Bp,
            "lc" | "local-clocks" => Family::Lc,
            "explicit" => Family::Explicit,
            other => return Err(Error::parse(0, format!("unknown family {other:?}"))),
        })
    }
}

/// Family-specific parameters as given by the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeParams {
    Parallel,
    Bipartite { even_first: bool },
    Sequential(Vec<usize>),
    BlockSequential(Vec<Vec<usize>>),
    BlockParallel(Vec<Vec<usize>>),
    LocalClocks { periods: Vec<usize>, shifts: Vec<usize> },
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateMode {
    n: usize,
    params: ModeParams,
    blocks: Vec<Vec<usize>>,
}

/// Default cap on the period of a normalized block sequence.
pub const DEFAULT_PERIOD_CAP: usize = 10_080;

fn check_partition(n: usize, parts: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    for part in parts {
        if part.is_empty() {
            return Err(Error::NotAPartition { n, reason: "empty part".into() });
        }
        for &c in part {
            if c >= n {
                return Err(Error::NotAPartition { n, reason: format!("cell {c} out of range") });
            }
            if seen[c] {
                return Err(Error::NotAPartition { n, reason: format!("cell {c} appears twice") });
            }
            seen[c] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::NotAPartition { n, reason: format!("cell {missing} is missing") });
    }
    Ok(())
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn lcm_capped(values: impl IntoIterator<Item = usize>, cap: usize) -> Result<usize> {
    let mut acc: u128 = 1;
    for v in values {
        acc = acc.lcm(&(v as u128));
        if acc > cap as u128 {
            return Err(Error::PeriodOverflow { period: acc, cap });
        }
    }
    Ok(acc as usize)
}

impl UpdateMode {
    /// Every cell updates at every step.
    pub fn parallel(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("ring size must be positive".into()));
        }
        Ok(UpdateMode { n, params: ModeParams::Parallel, blocks: vec![(0..n).collect()] })
    }

    /// Even cells then odd cells (or the reverse).
    pub fn bipartite(n: usize, even_first: bool) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::OddRingSize(n));
        }
        let even: Vec<usize> = (0..n).step_by(2).collect();
        let odd: Vec<usize> = (1..n).step_by(2).collect();
        let blocks = if even_first { vec![even, odd] } else { vec![odd, even] };
        Ok(UpdateMode { n, params: ModeParams::Bipartite { even_first }, blocks })
    }

    /// One cell per substep, in the order of `order`.
    pub fn sequential(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let singletons: Vec<Vec<usize>> = order.iter().map(|&c| vec![c]).collect();
        check_partition(n, &singletons)?;
        Ok(UpdateMode { n, params: ModeParams::Sequential(order), blocks: singletons })
    }

    /// An ordered partition of the cells.
    pub fn block_sequential(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = blocks.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::NotAPartition { n, reason: "no cells".into() });
        }
        check_partition(n, &blocks)?;
        let params: Vec<Vec<usize>> = blocks.into_iter().map(sorted).collect();
        Ok(UpdateMode { n, blocks: params.clone(), params: ModeParams::BlockSequential(params) })
    }

    /// A partitioned order, converted with `B_l = { S_j[l mod |S_j|] : j }`.
    pub fn block_parallel(subsequences: Vec<Vec<usize>>, period_cap: usize) -> Result<Self> {
        let n = subsequences.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::NotAPartition { n, reason: "no cells".into() });
        }
        check_partition(n, &subsequences)?;
        let p = lcm_capped(subsequences.iter().map(Vec::len), period_cap)?;
        let blocks = (0..p)
            .map(|l| sorted(subsequences.iter().map(|s| s[l % s.len()]).collect()))
            .collect();
        Ok(UpdateMode { n, params: ModeParams::BlockParallel(subsequences), blocks })
    }

    /// Cell `i` updates at substep `t` iff `t ≡ shifts[i] (mod periods[i])`.
    pub fn local_clocks(periods: Vec<usize>, shifts: Vec<usize>, period_cap: usize) -> Result<Self> {
        let n = periods.len();
        if n == 0 {
            return Err(Error::InvalidArgument("ring size must be positive".into()));
        }
        if shifts.len() != n {
            return Err(Error::SizeMismatch { expected: n, got: shifts.len() });
        }
        for (cell, (&p, &d)) in periods.iter().zip(&shifts).enumerate() {
            if p == 0 {
                return Err(Error::InvalidArgument(format!("period of cell {cell} must be positive")));
            }
            if d >= p {
                return Err(Error::ShiftOutOfRange { cell, shift: d, period: p });
            }
        }
        let p = lcm_capped(periods.iter().copied(), period_cap)?;
        let blocks = (0..p)
            .map(|t| (0..n).filter(|&i| t % periods[i] == shifts[i]).collect())
            .collect();
        Ok(UpdateMode { n, params: ModeParams::LocalClocks { periods, shifts }, blocks })
    }

    /// An arbitrary block sequence in which every cell appears at least once.
    pub fn explicit(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 || blocks.is_empty() {
            return Err(Error::InvalidArgument("explicit mode needs cells and blocks".into()));
        }
        let mut seen = vec![false; n];
        let mut normalized = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut b = sorted(block);
            b.dedup();
            for &c in &b {
                if c >= n {
                    return Err(Error::IndexOutOfRange { index: c, n });
                }
                seen[c] = true;
            }
            normalized.push(b);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition { n, reason: format!("cell {missing} is never updated") });
        }
        Ok(UpdateMode { n, params: ModeParams::Explicit(normalized.clone()), blocks: normalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        match self.params {
            ModeParams::Parallel => Family::Par,
            ModeParams::Bipartite { .. } => Family::Bip,
            ModeParams::Sequential(_) => Family::Seq,
            ModeParams::BlockSequential(_) => Family::Bs,
            ModeParams::BlockParallel(_) => Family::Bp,
            ModeParams::LocalClocks { .. } => Family::Lc,
            ModeParams::Explicit(_) => Family::Explicit,
        }
    }

    pub fn params(&self) -> &ModeParams {
        &self.params
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn period(&self) -> usize {
        self.blocks.len()
    }

    /// Whether `cell` belongs to `B_{t mod p}`.
    pub fn membership(&self, cell: usize, t: usize) -> bool {
        self.blocks[t % self.period()].binary_search(&cell).is_ok()
    }

    /// Membership evaluated from the family parameters, without the block table.
    pub fn raw_membership(&self, cell: usize, t: usize) -> bool {
        match &self.params {
            ModeParams::Parallel => cell < self.n,
            ModeParams::Bipartite { even_first } => ((cell % 2 == 0) == (t % 2 == 0)) == *even_first,
            ModeParams::Sequential(order) => order[t % order.len()] == cell,
            ModeParams::BlockSequential(blocks) | ModeParams::Explicit(blocks) => {
                blocks[t % blocks.len()].contains(&cell)
            }
            ModeParams::BlockParallel(subs) => subs.iter().any(|s| {
                s.iter().position(|&c| c == cell).is_some_and(|k| k == t % s.len())
            }),
            ModeParams::LocalClocks { periods, shifts } => t % periods[cell] == shifts[cell],
        }
    }

    /// Whether each cell is updated exactly once per period.
    pub fn is_once_per_period(&self) -> bool {
        let mut count = vec![0usize; self.n];
        for b in &self.blocks {
            for &c in b {
                count[c] += 1;
            }
        }
        count.iter().all(|&c| c == 1)
    }

    /// A mode with one nonempty block holding every cell behaves like the parallel mode.
    pub fn is_effectively_parallel(&self) -> bool {
        let mut nonempty = self.blocks.iter().filter(|b| !b.is_empty());
        matches!((nonempty.next(), nonempty.next()), (Some(b), None) if b.len() == self.n)
    }

    /// The same block sequence as a block-sequential mode, when it is an ordered partition.
    pub fn as_block_sequential(&self) -> Option<UpdateMode> {
        if !self.is_once_per_period() || self.blocks.iter().any(Vec::is_empty) {
            return None;
        }
        UpdateMode::block_sequential(self.blocks.clone()).ok()
    }

    /// The same block sequence as local clocks with `p_i = p` and `δ_i` the phase of cell `i`.
    pub fn as_local_clocks(&self) -> Option<UpdateMode> {
        if !self.is_once_per_period() {
            return None;
        }
        let p = self.period();
        let mut shifts = vec![0; self.n];
        for (t, b) in self.blocks.iter().enumerate() {
            for &c in b {
                shifts[c] = t;
            }
        }
        UpdateMode::local_clocks(vec![p; self.n], shifts, usize::MAX).ok()
    }

    /// Canonical text form, e.g. `bs:({0},{2,3},{1})`.
    pub fn to_text(&self) -> String {
        fn list(v: &[usize]) -> String {
            v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        }
        fn sets(blocks: &[Vec<usize>]) -> String {
            blocks.iter().map(|b| format!("{{{}}}", list(b))).collect::<Vec<_>>().join(",")
        }
        match &self.params {
            ModeParams::Parallel => format!("par:n={}", self.n),
            ModeParams::Bipartite { even_first } => {
                format!("bip:n={},first={}", self.n, if *even_first { "even" } else { "odd" })
            }
            ModeParams::Sequential(order) => format!("seq:({})", list(order)),
            ModeParams::BlockSequential(blocks) => format!("bs:({})", sets(blocks)),
            ModeParams::BlockParallel(subs) => {
                let parts: Vec<String> = subs.iter().map(|s| format!("({})", list(s))).collect();
                format!("bp:{{{}}}", parts.join(","))
            }
            ModeParams::LocalClocks { periods, shifts } => {
                format!("lc:P=({});D=({})", list(periods), list(shifts))
            }
            ModeParams::Explicit(blocks) => format!("explicit:n={};({})", self.n, sets(blocks)),
        }
    }

    /// Parses the text form with the default period cap.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_cap(text, DEFAULT_PERIOD_CAP)
    }

    pub fn parse_with_cap(text: &str, period_cap: usize) -> Result<Self> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let mode = p.mode(period_cap)?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        Ok(mode)
    }
}

impl fmt::Display for UpdateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for UpdateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UpdateMode::parse(s)
    }
}

pub fn load_mode(text: &str) -> Result<UpdateMode> {
    UpdateMode::parse(text)
}

pub fn save_mode(mode: &UpdateMode) -> String {
    mode.to_text()
}

/// Loads one mode per non-empty line; lines starting with `#` are comments.
/// Parse errors report the byte offset within the whole text.
pub fn load_modes(text: &str, period_cap: usize) -> Result<Vec<UpdateMode>> {
    let mut modes = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.trim();
        if !body.is_empty() && !body.starts_with('#') {
            let lead = line.len() - line.trim_start().len();
            let mode = UpdateMode::parse_with_cap(body, period_cap).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: offset + lead + pos, msg },
                other => other,
            })?;
            modes.push(mode);
        }
        offset += line.len();
    }
    Ok(modes)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected {tok:?}")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).to_ascii_lowercase())
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, "expected a number"))
    }

    /// `open n, n, … close`, possibly empty.
    fn list(&mut self, open: &str, close: &str) -> Result<Vec<usize>> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.peek() == Some(close.as_bytes()[0]) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                _ => break,
            }
        }
        self.expect(close)?;
        Ok(out)
    }

    fn list_of(&mut self, open: &str, close: &str, inner_open: &str, inner_close: &str) -> Result<Vec<Vec<usize>>> {
        self.expect(open)?;
        let mut out = Vec::new();
        loop {
            out.push(self.list(inner_open, inner_close)?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                _ => break,
            }
        }
        self.expect(close)?;
        Ok(out)
    }

    fn key_number(&mut self, key: &str) -> Result<usize> {
        let at = self.pos;
        let k = self.ident()?;
        if k != key {
            return Err(Error::parse(at, format!("expected key {key:?}")));
        }
        self.expect("=")?;
        self.number()
    }

    fn mode(&mut self, cap: usize) -> Result<UpdateMode> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let family: Family = self.ident()?.parse().map_err(|_| Error::parse(start, "unknown family"))?;
        self.expect(":")?;
        let body = self.pos;
        let wrap = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::parse(body, other.to_string()),
        };
        match family {
            Family::Par => {
                let n = self.key_number("n")?;
                UpdateMode::parallel(n).map_err(wrap)
            }
            Family::Bip => {
                let n = self.key_number("n")?;
                self.expect(",")?;
                let at = self.pos;
                if self.ident()? != "first" {
                    return Err(Error::parse(at, "expected key \"first\""));
                }
                self.expect("=")?;
                let at = self.pos;
                let even_first = match self.ident()?.as_str() {
                    "even" => true,
                    "odd" => false,
                    _ => return Err(Error::parse(at, "expected even or odd")),
                };
                UpdateMode::bipartite(n, even_first).map_err(wrap)
            }
            Family::Seq => {
                let order = self.list("(", ")")?;
                UpdateMode::sequential(order).map_err(wrap)
            }
            Family::Bs => {
                let blocks = self.list_of("(", ")", "{", "}")?;
                UpdateMode::block_sequential(blocks).map_err(wrap)
            }
            Family::Bp => {
                let subs = self.list_of("{", "}", "(", ")")?;
                UpdateMode::block_parallel(subs, cap).map_err(wrap)
            }
            Family::Lc => {
                let at = self.pos;
                if self.ident()? != "p" {
                    return Err(Error::parse(at, "expected P="));
                }
                self.expect("=")?;
                let periods = self.list("(", ")")?;
                self.expect(";")?;
                let at = self.pos;
                if self.ident()? != "d" {
                    return Err(Error::parse(at, "expected D="));
                }
                self.expect("=")?;
                let shifts = self.list("(", ")")?;
                UpdateMode::local_clocks(periods, shifts, cap).map_err(wrap)
            }
            Family::Explicit => {
                let n = self.key_number("n")?;
                self.expect(";")?;
                let blocks = self.list_of("(", ")", "{", "}")?;
                UpdateMode::explicit(n, blocks).map_err(wrap)
            }
        }
    }
}

/// Parameters restricting random mode generation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    /// Exact number of blocks for block-sequential modes (uniform in `1..=n` if unset).
    pub blocks: Option<usize>,
    /// Largest clock period for local-clocks modes; at least one cell uses it.
    pub max_period: Option<usize>,
    /// Allowed subsequence lengths for block-parallel modes.
    pub bp_sizes: Vec<usize>,
    /// Largest period accepted for sampled block-parallel and local-clocks modes.
    pub lcm_cap: usize,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints { blocks: None, max_period: None, bp_sizes: (1..=6).collect(), lcm_cap: 2520 }
    }
}

impl Constraints {
    pub fn with_blocks(blocks: usize) -> Self {
        Constraints { blocks: Some(blocks), ..Default::default() }
    }

    pub fn with_max_period(max_period: usize) -> Self {
        Constraints { max_period: Some(max_period), ..Default::default() }
    }

    /// Short label used in CSV output, e.g. `blocks=3` or `-`.
    pub fn label(&self, family: Family) -> String {
        match family {
            Family::Bs => self.blocks.map_or("-".into(), |b| format!("blocks={b}")),
            Family::Lc => format!("max_period={}", self.max_period.unwrap_or(DEFAULT_LC_MAX_PERIOD)),
            Family::Bp => {
                let sizes: Vec<String> = self.bp_sizes.iter().map(usize::to_string).collect();
                format!("sizes={}", sizes.join("|"))
            }
            _ => "-".into(),
        }
    }
}

pub const DEFAULT_LC_MAX_PERIOD: usize = 5;

const MAX_REJECTIONS: usize = 10_000;

/// Draws a random mode of `family`; a pure function of its arguments.
///
/// Distributions: SEQ is a uniform permutation; BIP picks the first parity by a
/// coin flip; BS assigns cells uniformly to `k` blocks, resampling when a block is
/// empty (falling back to random cuts of a shuffled order after repeated
/// rejection); BP shuffles the cells and cuts them into parts whose lengths are
/// drawn from the size menu; LC draws `p_i` uniformly in `1..=max_period`
/// (resampling until the maximum is used) and `δ_i` uniformly below `p_i`.
pub fn sample_mode(family: Family, n: usize, seed: u64, constraints: &Constraints) -> Result<UpdateMode> {
    if n == 0 {
        return Err(Error::InfeasibleConstraint("ring size must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    match family {
        Family::Par => UpdateMode::parallel(n),
        Family::Bip => {
            if n % 2 == 1 {
                return Err(Error::OddRingSize(n));
            }
            UpdateMode::bipartite(n, rng.gen())
        }
        Family::Seq => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            UpdateMode::sequential(order)
        }
        Family::Bs => {
            let k = constraints.blocks.unwrap_or_else(|| rng.gen_range(1..=n));
            if k == 0 || k > n {
                return Err(Error::InfeasibleConstraint(format!("{k} blocks on a ring of {n} cells")));
            }
            for _ in 0..MAX_REJECTIONS {
                let mut blocks = vec![Vec::new(); k];
                for c in 0..n {
                    blocks[rng.gen_range(0..k)].push(c);
                }
                if blocks.iter().all(|b| !b.is_empty()) {
                    return UpdateMode::block_sequential(blocks);
                }
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut cuts: Vec<usize> = rand::seq::index::sample(&mut rng, n - 1, k - 1)
                .into_iter()
                .map(|c| c + 1)
                .collect();
            cuts.sort_unstable();
            cuts.push(n);
            let mut blocks = Vec::with_capacity(k);
            let mut start = 0;
            for cut in cuts {
                blocks.push(order[start..cut].to_vec());
                start = cut;
            }
            UpdateMode::block_sequential(blocks)
        }
        Family::Bp => {
            let menu: Vec<usize> = constraints.bp_sizes.iter().copied().filter(|&s| s >= 1).collect();
            if menu.is_empty() {
                return Err(Error::InfeasibleConstraint("empty subsequence size menu".into()));
            }
            for _ in 0..MAX_REJECTIONS {
                let mut cells: Vec<usize> = (0..n).collect();
                cells.shuffle(&mut rng);
                let mut subs = Vec::new();
                let mut rest = &cells[..];
                let mut ok = true;
                while !rest.is_empty() {
                    let fitting: Vec<usize> = menu.iter().copied().filter(|&s| s <= rest.len()).collect();
                    if fitting.is_empty() {
                        ok = false;
                        break;
                    }
                    let size = fitting[rng.gen_range(0..fitting.len())];
                    subs.push(rest[..size].to_vec());
                    rest = &rest[size..];
                }
                if !ok {
                    continue;
                }
                match UpdateMode::block_parallel(subs, constraints.lcm_cap) {
                    Ok(mode) => return Ok(mode),
                    Err(Error::PeriodOverflow { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::InfeasibleConstraint("no block-parallel mode within the period cap".into()))
        }
        Family::Lc => {
            let max = constraints.max_period.unwrap_or(DEFAULT_LC_MAX_PERIOD);
            if max == 0 {
                return Err(Error::InfeasibleConstraint("max period must be at least 1".into()));
            }
            for _ in 0..MAX_REJECTIONS {
                let periods: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max)).collect();
                if !periods.contains(&max) {
                    continue;
                }
                let shifts: Vec<usize> = periods.iter().map(|&p| rng.gen_range(0..p)).collect();
                match UpdateMode::local_clocks(periods, shifts, constraints.lcm_cap) {
                    Ok(mode) => return Ok(mode),
                    Err(Error::PeriodOverflow { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::InfeasibleConstraint("no local-clocks mode within the period cap".into()))
        }
        Family::Explicit => Err(Error::InfeasibleConstraint("explicit modes cannot be sampled".into())),
    }
}
