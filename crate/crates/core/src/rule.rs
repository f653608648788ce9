//! Elementary cellular automaton local rules and their symmetries.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An ECA local function identified by its Wolfram code.
///
/// The output for neighborhood `(a, b, c)` is bit `4a + 2b + c` of the code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rule(u8);

impl Rule {
    pub const fn new(code: u8) -> Self {
        Rule(code)
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn apply(self, left: bool, center: bool, right: bool) -> bool {
        let idx = (left as u8) << 2 | (center as u8) << 1 | right as u8;
        (self.0 >> idx) & 1 == 1
    }

    /// The 8-entry truth table indexed by `4a + 2b + c`.
    pub fn table(self) -> [bool; 8] {
        std::array::from_fn(|i| (self.0 >> i) & 1 == 1)
    }

    /// Left-right mirror: `f'(a,b,c) = f(c,b,a)`.
    pub fn reflect(self) -> Rule {
        let mut code = 0u8;
        for i in 0..8u8 {
            let (a, b, c) = (i >> 2 & 1, i >> 1 & 1, i & 1);
            let mirrored = c << 2 | b << 1 | a;
            code |= ((self.0 >> mirrored) & 1) << i;
        }
        Rule(code)
    }

    /// 0/1 conjugation: `f'(a,b,c) = ¬f(¬a,¬b,¬c)`.
    pub fn complement(self) -> Rule {
        let mut code = 0u8;
        for i in 0..8u8 {
            let bit = 1 - ((self.0 >> (7 - i)) & 1);
            code |= bit << i;
        }
        Rule(code)
    }

    pub fn orbit(self) -> [Rule; 4] {
        [self, self.reflect(), self.complement(), self.reflect().complement()]
    }

    /// Minimal code in the orbit under reflection and complementation.
    pub fn class_rep(self) -> Rule {
        self.orbit().into_iter().min().unwrap()
    }

    /// Evaluates the rule on 64 cells at once. `l`, `c`, `r` hold the left
    /// neighbor, the cell itself and the right neighbor of each bit position.
    #[inline]
    pub fn eval_word(self, l: u64, c: u64, r: u64) -> u64 {
        let t = self.0;
        let sel = |bit: u8| if (t >> bit) & 1 == 1 { u64::MAX } else { 0 };
        let g00 = (sel(0) & !r) | (sel(1) & r);
        let g01 = (sel(2) & !r) | (sel(3) & r);
        let g10 = (sel(4) & !r) | (sel(5) & r);
        let g11 = (sel(6) & !r) | (sel(7) & r);
        let h0 = (!c & g00) | (c & g01);
        let h1 = (!c & g10) | (c & g11);
        (!l & h0) | (l & h1)
    }
}

impl From<u8> for Rule {
    fn from(code: u8) -> Self {
        Rule(code)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn apply_local(rule: Rule, left: bool, center: bool, right: bool) -> bool {
    rule.apply(left, center, right)
}

/// The sorted list of the 88 class representatives.
pub fn class_representatives() -> Vec<Rule> {
    let mut reps: Vec<Rule> = (0..=255u8).map(|c| Rule(c).class_rep()).collect();
    reps.sort();
    reps.dedup();
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_bit_order() {
        let r = Rule::new(156);
        assert!(r.apply(true, true, true));
        assert!(!r.apply(true, true, false));
        assert!(r.apply(false, true, false));
        assert!(!r.apply(false, false, false));
    }

    #[test]
    fn identity_and_zero() {
        for i in 0..8u8 {
            let (a, b, c) = (i & 4 != 0, i & 2 != 0, i & 1 != 0);
            assert_eq!(apply_local(Rule::new(204), a, b, c), b);
            assert!(!apply_local(Rule::new(0), a, b, c));
        }
    }

    #[test]
    fn known_equivalences() {
        assert_eq!(Rule::new(174).class_rep().code(), 138);
        assert_eq!(Rule::new(166).class_rep().code(), 154);
        assert_eq!(Rule::new(110).reflect().code(), 124);
        assert_eq!(Rule::new(110).complement().code(), 137);
        assert_eq!(class_representatives().len(), 88);
    }

    #[test]
    fn eval_word_matches_table() {
        for code in 0..=255u8 {
            let r = Rule::new(code);
            let out = r.eval_word(0xF0, 0xCC, 0xAA);
            for i in 0..8 {
                let (l, c, rr) = (0xF0u64 >> i & 1 == 1, 0xCCu64 >> i & 1 == 1, 0xAAu64 >> i & 1 == 1);
                assert_eq!(out >> i & 1 == 1, r.apply(l, c, rr));
            }
        }
    }
}
