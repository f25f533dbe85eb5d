//! Colored partition patterns and sets of them.
//!
//! Patterns use word notation: `1^12^2` is the partition `1/2` with element 1
//! colored 1 and element 2 colored 2. Block (slash) notation is not accepted
//! here; a pattern written as `1^1/2^2` must be given as `1^12^2`.
//! A set of patterns is a comma-separated list, e.g. `1^11^2,1^21^1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::notation::{parse_elements, write_element};
use crate::partition::{reduce, rgs_violation};

/// A small colored partition used as a pattern.
///
/// The raw color word is kept for the EQ and LT senses; `reduced` is its
/// order-isomorphic reduction, which is what the pattern sense compares
/// against (so `1^22^2` and `1^12^1` are the same pattern there).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPattern {
    word: Vec<u32>,
    colors: Vec<u32>,
    reduced: Vec<u32>,
}

impl ColoredPattern {
    pub fn new(word: Vec<u32>, colors: Vec<u32>) -> Result<Self> {
        if word.len() != colors.len() {
            return Err(Error::LengthMismatch {
                word: word.len(),
                colors: colors.len(),
            });
        }
        if let Some(pos) = rgs_violation(&word) {
            return Err(Error::NonRgs { pos });
        }
        if let Some(pos) = colors.iter().position(|&c| c == 0) {
            return Err(Error::MalformedToken {
                pos,
                msg: "colors start at 1".into(),
            });
        }
        let reduced = reduce(&colors);
        Ok(Self {
            word,
            colors,
            reduced,
        })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Colors as written.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Colors after reduction.
    pub fn reduced_colors(&self) -> &[u32] {
        &self.reduced
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn distinct_colors(&self) -> u32 {
        self.reduced.iter().copied().max().unwrap_or(0)
    }

    /// The representative used in the pattern sense: colors replaced by
    /// their reduction.
    pub fn normalized(&self) -> Self {
        Self {
            word: self.word.clone(),
            colors: self.reduced.clone(),
            reduced: self.reduced.clone(),
        }
    }

    pub fn color_reverse(&self) -> Self {
        let mut colors = self.colors.clone();
        colors.reverse();
        Self::new(self.word.clone(), colors).expect("reversal keeps validity")
    }

    /// Replace each color `c` by `k + 1 - c`.
    pub fn color_complement(&self, k: u32) -> Result<Self> {
        if let Some(pos) = self.colors.iter().position(|&c| c > k) {
            return Err(Error::ColorOutOfRange {
                pos,
                color: self.colors[pos],
                k,
            });
        }
        let colors = self.colors.iter().map(|&c| k + 1 - c).collect();
        Self::new(self.word.clone(), colors)
    }
}

impl FromStr for ColoredPattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_pattern_at(text, 0)
    }
}

fn parse_pattern_at(text: &str, base: usize) -> Result<ColoredPattern> {
    let els = parse_elements(text, base)?;
    if els.is_empty() {
        return Err(Error::MalformedToken {
            pos: base,
            msg: "empty pattern".into(),
        });
    }
    let word: Vec<u32> = els.iter().map(|e| e.value).collect();
    if let Some(i) = rgs_violation(&word) {
        return Err(Error::NonRgs { pos: els[i].pos });
    }
    let colors = els.iter().map(|e| e.color).collect();
    ColoredPattern::new(word, colors)
}

impl fmt::Display for ColoredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (&b, &c) in self.word.iter().zip(&self.colors) {
            write_element(&mut out, b, c);
        }
        f.write_str(&out)
    }
}

pub fn parse_pattern(text: &str) -> Result<ColoredPattern> {
    text.parse()
}

pub fn print_pattern(p: &ColoredPattern) -> String {
    p.to_string()
}

/// The six 2-colored patterns of length 2 that are distinct in the pattern
/// sense, in canonical (word, colors) order:
/// `1^11^1, 1^11^2, 1^21^1, 1^12^1, 1^12^2, 1^22^1`.
pub fn canonical_pair_patterns() -> Vec<ColoredPattern> {
    [
        ([1, 1], [1, 1]),
        ([1, 1], [1, 2]),
        ([1, 1], [2, 1]),
        ([1, 2], [1, 1]),
        ([1, 2], [1, 2]),
        ([1, 2], [2, 1]),
    ]
    .into_iter()
    .map(|(w, c)| ColoredPattern::new(w.to_vec(), c.to_vec()).expect("valid"))
    .collect()
}

/// A sorted, duplicate-free set of patterns.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet(Vec<ColoredPattern>);

impl PatternSet {
    pub fn new(mut patterns: Vec<ColoredPattern>) -> Self {
        patterns.sort();
        patterns.dedup();
        Self(patterns)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn patterns(&self) -> &[ColoredPattern] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ColoredPattern> {
        self.0.iter()
    }

    /// Every pattern replaced by its pattern-sense representative.
    pub fn normalized(&self) -> Self {
        Self::new(self.0.iter().map(ColoredPattern::normalized).collect())
    }

    pub fn color_reverse(&self) -> Self {
        Self::new(self.0.iter().map(ColoredPattern::color_reverse).collect())
    }

    pub fn color_complement(&self, k: u32) -> Result<Self> {
        Ok(Self::new(
            self.0
                .iter()
                .map(|p| p.color_complement(k))
                .collect::<Result<_>>()?,
        ))
    }

    /// Check that the set makes sense for hosts colored from `[k]`: in the
    /// pattern sense no pattern may use more than `k` distinct colors, in the
    /// EQ and LT senses no raw color may exceed `k`.
    pub fn validate_for(&self, k: u32, sense: crate::avoidance::Sense) -> Result<()> {
        use crate::avoidance::Sense;
        for p in &self.0 {
            let (color, bad) = match sense {
                Sense::Pattern => (p.distinct_colors(), p.distinct_colors() > k),
                Sense::Eq | Sense::Lt => (p.max_color(), p.max_color() > k),
            };
            if bad {
                return Err(Error::ColorOutOfRange { pos: 0, color, k });
            }
        }
        Ok(())
    }
}

impl FromIterator<ColoredPattern> for PatternSet {
    fn from_iter<I: IntoIterator<Item = ColoredPattern>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a ColoredPattern;
    type IntoIter = std::slice::Iter<'a, ColoredPattern>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    /// Comma-separated patterns. Blank text is the empty set.
    fn from_str(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut patterns = Vec::new();
        let mut offset = 0;
        for part in text.split(',') {
            patterns.push(parse_pattern_at(part, offset)?);
            offset += part.len() + 1;
        }
        Ok(Self::new(patterns))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl Serialize for PatternSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PatternSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> ColoredPattern {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let p = pat("1^12^21^13^2");
        assert_eq!(p.word(), &[1, 2, 1, 3]);
        assert_eq!(p.colors(), &[1, 2, 1, 2]);
        let q = pat("1^1");
        assert_eq!((q.word(), q.colors()), (&[1u32][..], &[1u32][..]));
        assert_eq!(
            "2^11^1".parse::<ColoredPattern>(),
            Err(Error::NonRgs { pos: 0 })
        );
        assert_eq!(
            "1^13^1".parse::<ColoredPattern>(),
            Err(Error::NonRgs { pos: 3 })
        );
        assert!(matches!(
            "".parse::<ColoredPattern>(),
            Err(Error::MalformedToken { .. })
        ));
    }

    #[test]
    fn raw_colors_kept_reduction_cached() {
        let p = pat("1^22^2");
        assert_eq!(p.colors(), &[2, 2]);
        assert_eq!(p.reduced_colors(), &[1, 1]);
        assert_eq!(p.normalized(), pat("1^12^1"));
        assert_eq!(p.to_string(), "1^22^2");
    }

    #[test]
    fn symmetries_on_pairs() {
        assert_eq!(pat("1^11^2").color_reverse(), pat("1^21^1"));
        assert_eq!(pat("1^12^2").color_complement(2).unwrap(), pat("1^22^1"));
        let flat = pat("1^11^1");
        assert_eq!(flat.color_reverse(), flat);
        assert_eq!(flat.color_complement(2).unwrap().normalized(), flat);
        assert!(pat("1^3").color_complement(2).is_err());
    }

    #[test]
    fn six_canonical_patterns_in_order() {
        let text: Vec<String> = canonical_pair_patterns()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            text,
            ["1^11^1", "1^11^2", "1^21^1", "1^12^1", "1^12^2", "1^22^1"]
        );
        let mut sorted = canonical_pair_patterns();
        sorted.sort();
        assert_eq!(sorted, canonical_pair_patterns());
    }

    #[test]
    fn pattern_sets() {
        let s: PatternSet = "1^21^1, 1^11^2".parse().unwrap();
        assert_eq!(s.to_string(), "1^11^2,1^21^1");
        assert!("".parse::<PatternSet>().unwrap().is_empty());
        assert_eq!(
            "1^1,2^1".parse::<PatternSet>(),
            Err(Error::NonRgs { pos: 4 })
        );
        let dup: PatternSet = "1^11^2,1^11^2".parse().unwrap();
        assert_eq!(dup.len(), 1);
    }
}
