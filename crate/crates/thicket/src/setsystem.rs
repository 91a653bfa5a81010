//! Finite set systems: a ground set `0..domain_size` plus a family of subsets.
//!
//! The family is stored as deduplicated incidence bit vectors in first-seen
//! order; those rows are the single source of truth for every other module.
//! Restriction, dualization and union are the only primitive operations —
//! all complexity measures are built on top of them.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Which side of an element a restriction keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    domain_size: usize,
    family: Vec<BitSet>,
    labels: Vec<Option<String>>,
    duplicates_dropped: usize,
}

impl SetSystem {
    /// Build a system from raw subsets. Duplicates are dropped, keeping the
    /// first occurrence (and its label); the count of dropped sets is kept.
    pub fn build(domain_size: usize, sets: Vec<BitSet>) -> Result<Self> {
        Self::build_labeled(domain_size, sets.into_iter().map(|s| (s, None)).collect())
    }

    pub fn build_labeled(
        domain_size: usize,
        sets: Vec<(BitSet, Option<String>)>,
    ) -> Result<Self> {
        let mut family = Vec::new();
        let mut labels = Vec::new();
        let mut seen: HashMap<BitSet, ()> = HashMap::new();
        let mut dropped = 0;
        for (i, (set, label)) in sets.into_iter().enumerate() {
            if set.universe() != domain_size {
                return Err(Error::UniverseMismatch {
                    set_index: i,
                    expected: domain_size,
                    got: set.universe(),
                });
            }
            if seen.insert(set.clone(), ()).is_none() {
                family.push(set);
                labels.push(label);
            } else {
                dropped += 1;
            }
        }
        Ok(SetSystem {
            domain_size,
            family,
            labels,
            duplicates_dropped: dropped,
        })
    }

    /// Convenience constructor from explicit element lists.
    pub fn from_index_sets(domain_size: usize, sets: &[&[usize]]) -> Result<Self> {
        let mut rows = Vec::with_capacity(sets.len());
        for (set_index, indices) in sets.iter().enumerate() {
            for &element in *indices {
                if element >= domain_size {
                    return Err(Error::ElementOutOfRange {
                        set_index,
                        element,
                        domain_size,
                    });
                }
            }
            rows.push(BitSet::from_indices(domain_size, indices).unwrap());
        }
        Self::build(domain_size, rows)
    }

    /// The family of all `2^k` subsets of `0..k`, in binary-counter order.
    pub fn powerset(k: usize) -> Self {
        assert!(k < 20, "powerset of {k} elements is unreasonable");
        let sets = (0..1u32 << k)
            .map(|mask| BitSet::from_fn(k, |i| mask >> i & 1 == 1))
            .collect();
        Self::build(k, sets).unwrap()
    }

    /// The `k` singleton subsets of `0..k`.
    pub fn singletons(k: usize) -> Self {
        let sets = (0..k).map(|i| BitSet::from_indices(k, &[i]).unwrap()).collect();
        Self::build(k, sets).unwrap()
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn family(&self) -> &[BitSet] {
        &self.family
    }

    /// Number of (distinct) sets in the family.
    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn set(&self, i: usize) -> &BitSet {
        &self.family[i]
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels[i].as_deref()
    }

    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.family.iter().position(|s| s == set)
    }

    /// The subfamily of sets containing (`In`) or excluding (`Out`) element
    /// `x`. The domain is unchanged; order and labels are preserved.
    pub fn restrict(&self, x: usize, keep: Membership) -> Result<SetSystem> {
        if x >= self.domain_size {
            return Err(Error::ElementOutOfRange {
                set_index: 0,
                element: x,
                domain_size: self.domain_size,
            });
        }
        let keep_in = keep == Membership::In;
        let picked: Vec<(BitSet, Option<String>)> = self
            .family
            .iter()
            .zip(&self.labels)
            .filter(|(s, _)| s.contains(x) == keep_in)
            .map(|(s, l)| (s.clone(), l.clone()))
            .collect();
        // A subfamily of a deduplicated family is deduplicated.
        Self::build_labeled(self.domain_size, picked)
    }

    /// Membership profile of element `x`: the indices of the family sets
    /// containing it.
    pub fn profile(&self, x: usize) -> BitSet {
        BitSet::from_fn(self.family.len(), |i| self.family[i].contains(x))
    }

    /// Transpose the incidence matrix. The dual ground set is the family of
    /// `self` (set `i` becomes dual element `i`); the dual family holds one
    /// set per input element — its membership profile — deduplicated in
    /// element order.
    pub fn dualize(&self) -> SetSystem {
        let profiles = (0..self.domain_size).map(|x| self.profile(x)).collect();
        SetSystem::build(self.family.len(), profiles).unwrap()
    }

    /// Union of two families over the same domain, deduplicated with
    /// first-occurrence order (`self` first).
    pub fn union(&self, other: &SetSystem) -> Result<SetSystem> {
        if self.domain_size != other.domain_size {
            return Err(Error::DomainMismatch {
                left: self.domain_size,
                right: other.domain_size,
            });
        }
        let sets = self
            .family
            .iter()
            .zip(&self.labels)
            .chain(other.family.iter().zip(&other.labels))
            .map(|(s, l)| (s.clone(), l.clone()))
            .collect();
        Self::build_labeled(self.domain_size, sets)
    }

    /// Collapse ground elements with identical membership profiles.
    ///
    /// Returns the collapsed system (one element per profile class, classes
    /// numbered in first-occurrence order) and the element-to-class map.
    /// Dualizing twice reproduces exactly this collapsed system.
    pub fn collapse_profiles(&self) -> (SetSystem, Vec<usize>) {
        let mut class_of = Vec::with_capacity(self.domain_size);
        let mut classes: Vec<BitSet> = Vec::new();
        let mut index: HashMap<BitSet, usize> = HashMap::new();
        for x in 0..self.domain_size {
            let p = self.profile(x);
            let c = *index.entry(p.clone()).or_insert_with(|| {
                classes.push(p);
                classes.len() - 1
            });
            class_of.push(c);
        }
        let sets = self
            .family
            .iter()
            .zip(&self.labels)
            .map(|(s, l)| {
                (
                    BitSet::from_fn(classes.len(), |c| {
                        // A class is inside the set iff its representatives are.
                        (0..self.domain_size).any(|x| class_of[x] == c && s.contains(x))
                    }),
                    l.clone(),
                )
            })
            .collect();
        let collapsed = SetSystem::build_labeled(classes.len(), sets).unwrap();
        (collapsed, class_of)
    }

    /// Parse the incidence-matrix text format:
    ///
    /// ```text
    /// n m
    /// <row of n chars over {0,1}>   # optional name
    /// ...                            (m rows)
    /// ```
    pub fn parse_incidence(text: &str) -> Result<SetSystem> {
        let mut lines = text.lines().enumerate();
        let (n, m) = parse_header(&mut lines)?;
        let mut sets = Vec::with_capacity(m);
        let mut taken = 0;
        for (idx, raw) in lines.by_ref() {
            let line_no = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            if taken == m {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {m} rows, found extra content"),
                });
            }
            let (row, label) = split_trailing_comment(raw);
            let set = BitSet::parse_row(row).ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("row must consist of 0/1 characters, got `{row}`"),
            })?;
            if set.universe() != n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("row has {} columns, expected {n}", set.universe()),
                });
            }
            sets.push((set, label));
            taken += 1;
        }
        if taken != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("expected {m} rows, found {taken}"),
            });
        }
        SetSystem::build_labeled(n, sets)
    }

    /// Serialize in the incidence-matrix text format (duplicates are gone,
    /// so parsing the output reproduces `self` exactly).
    pub fn write_incidence(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.domain_size, self.family.len());
        for (set, label) in self.family.iter().zip(&self.labels) {
            match label {
                Some(l) => {
                    let _ = writeln!(out, "{} # {}", set.to_row(), l);
                }
                None => {
                    let _ = writeln!(out, "{}", set.to_row());
                }
            }
        }
        out
    }
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(usize, usize)> {
    for (idx, raw) in lines {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let mut parts = raw.split_whitespace();
        let n = parts
            .next()
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "header must be `n m`".into(),
            })?;
        let m = parts
            .next()
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "header must be `n m`".into(),
            })?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "header must be exactly two integers".into(),
            });
        }
        return Ok((n, m));
    }
    Err(Error::Parse {
        line: 1,
        msg: "missing header line `n m`".into(),
    })
}

fn split_trailing_comment(raw: &str) -> (&str, Option<String>) {
    match raw.split_once('#') {
        Some((row, name)) => (row.trim(), Some(name.trim().to_string())),
        None => (raw.trim(), None),
    }
}
