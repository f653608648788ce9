//! Ring configurations stored as little-endian bitsets (cell 0 is bit 0).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    n: usize,
    words: Vec<u64>,
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

pub(crate) fn last_word_mask(n: usize) -> u64 {
    match n % 64 {
        0 if n > 0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl Configuration {
    pub fn zeros(n: usize) -> Self {
        Configuration { n, words: vec![0; words_for(n)] }
    }

    pub fn ones(n: usize) -> Self {
        let mut cfg = Self::zeros(n);
        for w in cfg.words.iter_mut() {
            *w = u64::MAX;
        }
        cfg.trim();
        cfg
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut cfg = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                cfg.words[i / 64] |= 1 << (i % 64);
            }
        }
        cfg
    }

    pub(crate) fn from_words(n: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(n), 0);
        let mut cfg = Configuration { n, words };
        cfg.trim();
        cfg
    }

    /// Inverse of [`Configuration::pack`].
    pub fn unpack(n: usize, value: u64) -> Result<Self> {
        if n > 64 {
            return Err(Error::TooWideForPacking { n, width: 64 });
        }
        Ok(Self::from_words(n, vec![value]))
    }

    /// Encodes the configuration as an integer with cell 0 as least significant bit.
    pub fn pack(&self) -> Result<u64> {
        if self.n > 64 {
            return Err(Error::TooWideForPacking { n: self.n, width: 64 });
        }
        Ok(self.words[0])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `(x_{i-1}, x_i, x_{i+1})` with cyclic indices.
    pub fn neighborhood(&self, i: usize) -> Result<(bool, bool, bool)> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let n = self.n;
        Ok((self.get((i + n - 1) % n), self.get(i), self.get((i + 1) % n)))
    }

    pub fn complement(&self) -> Self {
        let words = self.words.iter().map(|w| !w).collect();
        Self::from_words(self.n, words)
    }

    pub fn reflect(&self) -> Self {
        let bits: Vec<bool> = (0..self.n).rev().map(|i| self.get(i)).collect();
        Self::from_bits(&bits)
    }

    /// Rotation so that the new cell `i` holds the old cell `i + k`.
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.n;
        let bits: Vec<bool> = (0..n).map(|i| self.get((i + k) % n)).collect();
        Self::from_bits(&bits)
    }

    /// The word `x_{[i, i+len)}` with cyclic indices.
    pub fn window(&self, start: usize, len: usize) -> Vec<bool> {
        (0..len).map(|j| self.get((start + j) % self.n)).collect()
    }

    fn trim(&mut self) {
        let last = self.words.len() - 1;
        self.words[last] &= last_word_mask(self.n);
    }
}

impl Ord for Configuration {
    /// Numeric order of the packed value (cell 0 least significant), then size.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = Error;

    /// Parses a '0'/'1' literal with cell 0 leftmost.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.trim().chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::parse(pos, format!("unexpected character {ch:?}"))),
            }
        }
        if bits.is_empty() {
            return Err(Error::parse(0, "empty configuration"));
        }
        Ok(Self::from_bits(&bits))
    }
}

/// `s` independent configurations with every cell uniform in {0,1}; deterministic per seed.
pub fn sample_configs(n: usize, s: usize, seed: u64) -> Vec<Configuration> {
    let mut rng = crate::seed::rng_from_seed(seed);
    (0..s)
        .map(|_| {
            let words = (0..words_for(n)).map(|_| rng.gen::<u64>()).collect();
            Configuration::from_words(n, words)
        })
        .collect()
}

/// Parses a word such as "0011" into bits.
pub fn parse_word(s: &str) -> Result<Vec<bool>> {
    Ok(s.parse::<Configuration>()?.bits().collect())
}

pub fn word_to_string(word: &[bool]) -> String {
    word.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
