//! One-line permutations and vincular (dashed) permutation patterns.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of `[n]` in one-line notation (values are 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Self(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self(entries)
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n as u32).collect())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based position of value `v`.
    pub fn position_of(&self, v: u32) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    pub fn reverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.0.len() as u32;
        Self(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u32)
            .permutations(n)
            .map(Permutation)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Either a bare digit string (`73861542`, one value per digit) or values
    /// separated by spaces or commas (`10 3 1 ...`).
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let entries: Vec<u32> = if text.contains([' ', ',']) {
            text.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(entries)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.0.iter().join(" "))
        }
    }
}

/// A permutation pattern with adjacency constraints, written with dashes
/// between groups: in `214-3` the entries playing 2, 1 and 4 must sit in
/// consecutive positions of the host.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VincularPattern {
    values: Permutation,
    /// `bonds[i]` requires pattern positions `i` and `i + 1` to be adjacent.
    bonds: Vec<bool>,
}

impl VincularPattern {
    pub fn new(values: Permutation, bonds: Vec<bool>) -> Result<Self> {
        if bonds.len() + 1 != values.len().max(1) {
            return Err(Error::InvalidVincular(format!(
                "{} bonds for a pattern of length {}",
                bonds.len(),
                values.len()
            )));
        }
        Ok(Self { values, bonds })
    }

    /// A pattern with no adjacency requirements.
    pub fn classical(values: Permutation) -> Self {
        let bonds = vec![false; values.len().saturating_sub(1)];
        Self { values, bonds }
    }

    pub fn values(&self) -> &Permutation {
        &self.values
    }

    pub fn bonds(&self) -> &[bool] {
        &self.bonds
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut bonds = Vec::new();
        let mut after_dash = true;
        for (i, c) in text.trim().chars().enumerate() {
            match c {
                '-' => {
                    if after_dash {
                        return Err(Error::InvalidVincular(format!(
                            "misplaced '-' at offset {i}"
                        )));
                    }
                    after_dash = true;
                }
                d if d.is_ascii_digit() => {
                    if !values.is_empty() {
                        bonds.push(!after_dash);
                    }
                    values.push(d.to_digit(10).expect("digit"));
                    after_dash = false;
                }
                other => {
                    return Err(Error::InvalidVincular(format!(
                        "unexpected {other:?} at offset {i}"
                    )))
                }
            }
        }
        if values.is_empty() || after_dash {
            return Err(Error::InvalidVincular(format!("{text:?} is incomplete")));
        }
        let values =
            Permutation::new(values).map_err(|e| Error::InvalidVincular(e.to_string()))?;
        Self::new(values, bonds)
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.entries().iter().enumerate() {
            if i > 0 && !self.bonds[i - 1] {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![2, 3, 1]).is_ok());
        assert!(Permutation::new(vec![2, 2, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 4]).is_err());
        let p: Permutation = "73861542".parse().unwrap();
        assert_eq!(p.entries(), &[7, 3, 8, 6, 1, 5, 4, 2]);
        assert_eq!(p.to_string(), "73861542");
        let long: Permutation = "10 1 2 3 4 5 6 7 8 9".parse().unwrap();
        assert_eq!(long.to_string(), "10 1 2 3 4 5 6 7 8 9");
    }

    #[test]
    fn all_is_lexicographic() {
        let v: Vec<String> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(v, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(5).count(), 120);
    }

    #[test]
    fn vincular_grammar() {
        let p: VincularPattern = "214-3".parse().unwrap();
        assert_eq!(p.values().entries(), &[2, 1, 4, 3]);
        assert_eq!(p.bonds(), &[true, true, false]);
        assert_eq!(p.to_string(), "214-3");
        let q: VincularPattern = "1-23".parse().unwrap();
        assert_eq!(q.bonds(), &[false, true]);
        let r: VincularPattern = "1-2-3".parse().unwrap();
        assert_eq!(r, VincularPattern::classical(Permutation::identity(3)));
        for bad in ["", "-12", "12-", "1--2", "11", "1a"] {
            assert!(bad.parse::<VincularPattern>().is_err(), "{bad}");
        }
    }
}
