//! Fixed-universe bit vectors.
//!
//! Every subset manipulated by this crate — incidence rows, leaf regions,
//! subfamily masks — is a [`BitSet`] over an explicit universe `0..universe`.
//! Bits above the universe are kept zero so equality, hashing and ordering
//! are structural.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    universe: usize,
    words: Vec<u64>,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl BitSet {
    /// The empty subset of `0..universe`.
    pub fn new(universe: usize) -> Self {
        BitSet {
            universe,
            words: vec![0; word_count(universe)],
        }
    }

    /// The full subset `0..universe`.
    pub fn full(universe: usize) -> Self {
        let mut s = BitSet::new(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: &[usize]) -> Option<Self> {
        let mut s = BitSet::new(universe);
        for &i in indices {
            if i >= universe {
                return None;
            }
            s.insert(i);
        }
        Some(s)
    }

    /// Subset of `0..universe` whose membership is decided by `pred`.
    pub fn from_fn(universe: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = BitSet::new(universe);
        for i in 0..universe {
            if pred(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Membership test; indices outside the universe are simply absent.
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn zip_with(&self, other: &BitSet, op: impl Fn(u64, u64) -> u64) -> BitSet {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        BitSet {
            universe: self.universe,
            words,
        }
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a | b)
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> BitSet {
        let mut s = BitSet::new(self.universe);
        for i in 0..self.universe {
            if !self.contains(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn subset_of(&self, other: &BitSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words.iter().zip(&other.words).any(|(&a, &b)| a & b != 0)
    }

    /// Ascending iterator over the members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Render as a 0/1 characteristic string of length `universe`.
    pub fn to_row(&self) -> String {
        (0..self.universe)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    /// Parse a 0/1 characteristic string; the universe is the string length.
    pub fn parse_row(row: &str) -> Option<Self> {
        let mut s = BitSet::new(row.len());
        for (i, c) in row.chars().enumerate() {
            match c {
                '0' => {}
                '1' => s.insert(i),
                _ => return None,
            }
        }
        Some(s)
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.universe)
    }
}
