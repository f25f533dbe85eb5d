//! Colored set partitions of `[n]`.
//!
//! A partition is stored as its canonical word (a restricted growth string:
//! blocks numbered by increasing minimum) next to a color word over `[k]`.
//! Elements are 1-indexed in every public API.

use std::fmt;

use crate::error::{Error, Result};
use crate::notation::{parse_elements, write_element};

/// Replace the i-th smallest value(s) of `word` by `i`.
///
/// The result is order-isomorphic to the input and uses exactly the
/// alphabet `1..=d`, `d` being the number of distinct values.
pub fn reduce<T: Ord + Copy>(word: &[T]) -> Vec<u32> {
    let mut distinct: Vec<T> = word.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    word.iter()
        .map(|v| distinct.binary_search(v).expect("value present") as u32 + 1)
        .collect()
}

/// Position (0-based) of the first entry that breaks the restricted growth
/// condition, or `None` when `word` is a valid canonical word.
pub fn rgs_violation(word: &[u32]) -> Option<usize> {
    let mut max = 0;
    for (i, &b) in word.iter().enumerate() {
        if b == 0 || b > max + 1 {
            return Some(i);
        }
        max = max.max(b);
    }
    None
}

/// Renumber block labels by order of first appearance.
pub(crate) fn canonical_relabel<T: Eq + Copy>(labels: &[T]) -> Vec<u32> {
    let mut seen: Vec<T> = Vec::new();
    labels
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(p) => p as u32 + 1,
            None => {
                seen.push(*l);
                seen.len() as u32
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPartition {
    word: Vec<u32>,
    colors: Vec<u32>,
    k: u32,
}

impl ColoredPartition {
    pub fn new(word: Vec<u32>, colors: Vec<u32>, k: u32) -> Result<Self> {
        if word.len() != colors.len() {
            return Err(Error::LengthMismatch {
                word: word.len(),
                colors: colors.len(),
            });
        }
        if let Some(pos) = rgs_violation(&word) {
            return Err(Error::NonRgs { pos });
        }
        if let Some(pos) = colors.iter().position(|&c| c == 0 || c > k) {
            return Err(Error::ColorOutOfRange {
                pos,
                color: colors[pos],
                k,
            });
        }
        Ok(Self { word, colors, k })
    }

    /// A partition with every element colored 1 and a single available color.
    pub fn uncolored(word: Vec<u32>) -> Result<Self> {
        let colors = vec![1; word.len()];
        Self::new(word, colors, 1)
    }

    pub fn empty(k: u32) -> Self {
        Self {
            word: Vec::new(),
            colors: Vec::new(),
            k,
        }
    }

    pub(crate) fn from_parts_unchecked(word: Vec<u32>, colors: Vec<u32>, k: u32) -> Self {
        debug_assert!(rgs_violation(&word).is_none());
        debug_assert_eq!(word.len(), colors.len());
        Self { word, colors, k }
    }

    /// Build from blocks of `(element, color)` pairs. Blocks and the
    /// elements inside them may come in any order; together they must cover
    /// `1..=n` exactly once.
    pub fn from_blocks(blocks: &[Vec<(usize, u32)>], k: u32) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut owner = vec![usize::MAX; n];
        let mut colors = vec![0; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidBlocks("empty block".into()));
            }
            for &(e, c) in block {
                if e == 0 || e > n {
                    return Err(Error::InvalidBlocks(format!(
                        "element {e} outside 1..={n}"
                    )));
                }
                if owner[e - 1] != usize::MAX {
                    return Err(Error::InvalidBlocks(format!("element {e} repeated")));
                }
                if c == 0 || c > k {
                    return Err(Error::ColorOutOfRange {
                        pos: e - 1,
                        color: c,
                        k,
                    });
                }
                owner[e - 1] = b;
                colors[e - 1] = c;
            }
        }
        let word = canonical_relabel(&owner);
        Ok(Self { word, colors, k })
    }

    /// Parse word notation such as `1^12^21^13^2`.
    ///
    /// With `k = None` the color count is the largest color used (at least 1).
    pub fn parse_word(text: &str, k: Option<u32>) -> Result<Self> {
        let els = parse_elements(text, 0)?;
        let word: Vec<u32> = els.iter().map(|e| e.value).collect();
        if let Some(i) = rgs_violation(&word) {
            return Err(Error::NonRgs { pos: els[i].pos });
        }
        let colors: Vec<u32> = els.iter().map(|e| e.color).collect();
        let k = k.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(1));
        if let Some(e) = els.iter().find(|e| e.color > k) {
            return Err(Error::ColorOutOfRange {
                pos: e.pos,
                color: e.color,
                k,
            });
        }
        Ok(Self { word, colors, k })
    }

    /// Parse slash-separated block notation such as `1^24^1/2^1/3^26^1`.
    /// The text `∅` or an empty string denotes the empty partition.
    pub fn parse_blocks(text: &str, k: Option<u32>) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "∅" {
            return Ok(Self::empty(k.unwrap_or(1)));
        }
        let mut blocks = Vec::new();
        let mut offset = 0;
        for part in text.split('/') {
            let els = parse_elements(part, offset)?;
            if els.is_empty() {
                return Err(Error::MalformedToken {
                    pos: offset,
                    msg: "empty block".into(),
                });
            }
            blocks.push(
                els.iter()
                    .map(|e| (e.value as usize, e.color))
                    .collect::<Vec<_>>(),
            );
            offset += part.len() + 1;
        }
        let k = k.unwrap_or_else(|| {
            blocks
                .iter()
                .flatten()
                .map(|&(_, c)| c)
                .max()
                .unwrap_or(1)
        });
        Self::from_blocks(&blocks, k)
    }

    /// Parse uncolored block notation such as `13/2` or `1 10/2 3 4 5 6 7 8 9`.
    /// Inside a block, values are separated by spaces or commas; a block
    /// written without separators has one element per digit. Every element
    /// gets color 1.
    pub fn parse_plain_blocks(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "∅" {
            return Ok(Self::empty(1));
        }
        let mut blocks = Vec::new();
        let mut offset = text.len() - text.trim_start().len();
        for part in trimmed.split('/') {
            let block: Vec<(usize, u32)> = if part.trim().contains([' ', ',']) {
                part.split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map(|v| (v, 1))
                            .map_err(|_| Error::MalformedToken {
                                pos: offset,
                                msg: format!("bad element {t:?}"),
                            })
                    })
                    .collect::<Result<_>>()?
            } else {
                part.trim()
                    .char_indices()
                    .map(|(i, c)| {
                        c.to_digit(10)
                            .map(|d| (d as usize, 1))
                            .ok_or_else(|| Error::MalformedToken {
                                pos: offset + i,
                                msg: format!("unexpected {c:?}"),
                            })
                    })
                    .collect::<Result<_>>()?
            };
            if block.is_empty() {
                return Err(Error::MalformedToken {
                    pos: offset,
                    msg: "empty block".into(),
                });
            }
            blocks.push(block);
            offset += part.len() + 1;
        }
        Self::from_blocks(&blocks, 1)
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

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn block_count(&self) -> usize {
        self.word.iter().copied().max().unwrap_or(0) as usize
    }

    /// Blocks as sorted lists of 1-indexed elements, in canonical order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.word.iter().enumerate() {
            blocks[b as usize - 1].push(i + 1);
        }
        blocks
    }

    /// The block (1-based label) containing element `e` (1-based).
    pub fn block_of(&self, e: usize) -> u32 {
        self.word[e - 1]
    }

    pub fn color_of(&self, e: usize) -> u32 {
        self.colors[e - 1]
    }

    /// Restrict to the elements `idx` (1-indexed, strictly increasing) and
    /// renumber: the i-th chosen element becomes `i`, blocks are relabeled in
    /// canonical order, colors are carried over unchanged.
    pub fn canonize_sub(&self, idx: &[usize]) -> Result<Self> {
        for (t, &i) in idx.iter().enumerate() {
            if i == 0 || i > self.len() {
                return Err(Error::InvalidIndexSet(format!(
                    "index {i} outside 1..={}",
                    self.len()
                )));
            }
            if t > 0 && idx[t - 1] >= i {
                return Err(Error::InvalidIndexSet("indices must increase".into()));
            }
        }
        let labels: Vec<u32> = idx.iter().map(|&i| self.word[i - 1]).collect();
        let colors = idx.iter().map(|&i| self.colors[i - 1]).collect();
        Ok(Self {
            word: canonical_relabel(&labels),
            colors,
            k: self.k,
        })
    }

    /// Same partition, colors read right to left.
    pub fn color_reverse(&self) -> Self {
        let mut colors = self.colors.clone();
        colors.reverse();
        Self {
            word: self.word.clone(),
            colors,
            k: self.k,
        }
    }

    /// Same partition, each color `c` replaced by `k + 1 - c`.
    pub fn color_complement(&self) -> Self {
        Self {
            word: self.word.clone(),
            colors: self.colors.iter().map(|&c| self.k + 1 - c).collect(),
            k: self.k,
        }
    }

    pub fn to_block_notation(&self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let mut out = String::new();
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                out.push('/');
            }
            for &e in block {
                write_element(&mut out, e as u32, self.colors[e - 1]);
            }
        }
        out
    }
}

impl fmt::Display for ColoredPartition {
    /// Word notation, e.g. `1^12^21^13^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (&b, &c) in self.word.iter().zip(&self.colors) {
            write_element(&mut out, b, c);
        }
        f.write_str(&out)
    }
}
