//! Containment of colored partition patterns and of vincular permutation
//! patterns.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::ColoredPartition;
use crate::pattern::{ColoredPattern, PatternSet};
use crate::perm::{Permutation, VincularPattern};

/// How the colors of a copy are compared with the colors of the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    /// Copy colors order-isomorphic to the pattern colors.
    Pattern,
    /// Copy colors equal to the pattern colors.
    Eq,
    /// Copy colors elementwise at most the pattern colors.
    Lt,
}

impl Sense {
    pub const ALL: [Sense; 3] = [Sense::Pattern, Sense::Eq, Sense::Lt];
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Pattern => "pattern",
            Sense::Eq => "eq",
            Sense::Lt => "lt",
        })
    }
}

impl FromStr for Sense {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pattern" | "pat" => Ok(Sense::Pattern),
            "eq" => Ok(Sense::Eq),
            "lt" => Ok(Sense::Lt),
            other => Err(Error::UnknownName(format!("sense {other:?}"))),
        }
    }
}

/// Whether the host color pair `(a, b)` (earlier, later) copies the pattern
/// color pair `(p, q)` under `sense`.
#[inline]
fn pair_colors_match(a: u32, b: u32, p: u32, q: u32, sense: Sense) -> bool {
    match sense {
        Sense::Pattern => a.cmp(&b) == p.cmp(&q),
        Sense::Eq => a == p && b == q,
        Sense::Lt => a <= p && b <= q,
    }
}

/// Does `σ` contain a copy of `π` in the given sense?
///
/// A pattern longer than the host is never contained.
pub fn contains_colored(host: &ColoredPartition, pat: &ColoredPattern, sense: Sense) -> bool {
    embeds(host.word(), host.colors(), pat, sense)
}

/// `!contains_colored` for every pattern in `set`.
pub fn avoids_all(host: &ColoredPartition, set: &PatternSet, sense: Sense) -> bool {
    avoids_all_raw(host.word(), host.colors(), set, sense)
}

pub(crate) fn avoids_all_raw(word: &[u32], colors: &[u32], set: &PatternSet, sense: Sense) -> bool {
    set.iter().all(|p| !embeds(word, colors, p, sense))
}

/// Generic embedding search over increasing index sets. Each step extends a
/// partial copy by one host element and abandons it as soon as the block
/// structure or the colors stop matching.
pub(crate) fn embeds(word: &[u32], colors: &[u32], pat: &ColoredPattern, sense: Sense) -> bool {
    let m = pat.len();
    if m > word.len() {
        return false;
    }
    if m == 0 {
        return true;
    }
    let mut search = Embedding {
        word,
        colors,
        pat_word: pat.word(),
        pat_colors: match sense {
            Sense::Pattern => pat.reduced_colors(),
            Sense::Eq | Sense::Lt => pat.colors(),
        },
        sense,
        chosen: Vec::with_capacity(m),
        block_map: Vec::with_capacity(m),
    };
    search.extend(0)
}

struct Embedding<'a> {
    word: &'a [u32],
    colors: &'a [u32],
    pat_word: &'a [u32],
    pat_colors: &'a [u32],
    sense: Sense,
    chosen: Vec<usize>,
    /// `block_map[b - 1]` is the host block playing pattern block `b`.
    block_map: Vec<u32>,
}

impl Embedding<'_> {
    fn extend(&mut self, from: usize) -> bool {
        let t = self.chosen.len();
        let m = self.pat_word.len();
        if t == m {
            return true;
        }
        let last = self.word.len() - (m - t);
        for i in from..=last {
            if !self.fits(t, i) {
                continue;
            }
            let pb = self.pat_word[t] as usize;
            let fresh = pb > self.block_map.len();
            if fresh {
                self.block_map.push(self.word[i]);
            }
            self.chosen.push(i);
            if self.extend(i + 1) {
                return true;
            }
            self.chosen.pop();
            if fresh {
                self.block_map.pop();
            }
        }
        false
    }

    fn fits(&self, t: usize, i: usize) -> bool {
        let pb = self.pat_word[t] as usize;
        let hb = self.word[i];
        if pb <= self.block_map.len() {
            if self.block_map[pb - 1] != hb {
                return false;
            }
        } else if self.block_map.contains(&hb) {
            return false;
        }
        let c = self.colors[i];
        let pc = self.pat_colors[t];
        match self.sense {
            Sense::Pattern => self.chosen.iter().enumerate().all(|(s, &j)| {
                self.colors[j].cmp(&c) == self.pat_colors[s].cmp(&pc)
            }),
            Sense::Eq => c == pc,
            Sense::Lt => c <= pc,
        }
    }
}

/// Constant-space containment test for patterns of length 2: scan all pairs
/// `i < j` once. Panics if `pat` does not have length 2.
pub fn contains_pair(host: &ColoredPartition, pat: &ColoredPattern, sense: Sense) -> bool {
    assert_eq!(pat.len(), 2, "contains_pair needs a length-2 pattern");
    let want_same = pat.word()[1] == 1;
    let (p, q) = match sense {
        Sense::Pattern => (pat.reduced_colors()[0], pat.reduced_colors()[1]),
        Sense::Eq | Sense::Lt => (pat.colors()[0], pat.colors()[1]),
    };
    let (w, c) = (host.word(), host.colors());
    for j in 1..w.len() {
        for i in 0..j {
            if (w[i] == w[j]) == want_same && pair_colors_match(c[i], c[j], p, q, sense) {
                return true;
            }
        }
    }
    false
}

/// Forbidden (earlier color, later color) combinations for a set of
/// length-2 patterns, split by whether the two elements share a block.
/// This is what the pruned enumerator consults when it appends an element.
#[derive(Debug, Clone)]
pub struct PairRule {
    k: u32,
    /// Indexed `[same_block][a - 1][b - 1]`.
    forbidden: [Vec<Vec<bool>>; 2],
}

impl PairRule {
    /// `None` unless every pattern in `set` has length exactly 2.
    pub fn new(set: &PatternSet, k: u32, sense: Sense) -> Option<Self> {
        if set.iter().any(|p| p.len() != 2) {
            return None;
        }
        let ku = k as usize;
        let mut forbidden = [vec![vec![false; ku]; ku], vec![vec![false; ku]; ku]];
        for pat in set {
            let same = usize::from(pat.word()[1] == 1);
            let (p, q) = match sense {
                Sense::Pattern => (pat.reduced_colors()[0], pat.reduced_colors()[1]),
                Sense::Eq | Sense::Lt => (pat.colors()[0], pat.colors()[1]),
            };
            for a in 1..=k {
                for b in 1..=k {
                    if pair_colors_match(a, b, p, q, sense) {
                        forbidden[same][a as usize - 1][b as usize - 1] = true;
                    }
                }
            }
        }
        Some(Self { k, forbidden })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Is an earlier element colored `a` followed by a later element colored
    /// `b` a forbidden copy?
    #[inline]
    pub fn forbids(&self, same_block: bool, a: u32, b: u32) -> bool {
        self.forbidden[usize::from(same_block)][a as usize - 1][b as usize - 1]
    }

    pub fn forbids_nothing(&self) -> bool {
        self.forbidden.iter().flatten().flatten().all(|f| !f)
    }
}

/// Does `q` contain the vincular pattern `p`?
///
/// Positions chosen for bonded pattern entries must be consecutive in `q`;
/// the values at the chosen positions must reduce to `p`'s values.
pub fn contains_vincular(q: &Permutation, p: &VincularPattern) -> bool {
    let m = p.len();
    if m > q.len() {
        return false;
    }
    if m == 0 {
        return true;
    }
    let mut chosen = Vec::with_capacity(m);
    vincular_extend(q.entries(), p, &mut chosen, 0)
}

fn vincular_extend(q: &[u32], p: &VincularPattern, chosen: &mut Vec<usize>, from: usize) -> bool {
    let t = chosen.len();
    let m = p.len();
    if t == m {
        return true;
    }
    let pv = p.values().entries();
    let candidates = if t > 0 && p.bonds()[t - 1] {
        from..(from + 1).min(q.len())
    } else {
        from..(q.len() + 1).saturating_sub(m - t)
    };
    for i in candidates {
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(s, &j)| q[j].cmp(&q[i]) == pv[s].cmp(&pv[t]));
        if !ok {
            continue;
        }
        chosen.push(i);
        if vincular_extend(q, p, chosen, i + 1) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub fn avoids_vincular_all(q: &Permutation, patterns: &[VincularPattern]) -> bool {
    patterns.iter().all(|p| !contains_vincular(q, p))
}

/// Does `q` start with an ascent (`q_1 < q_2`)? Shorter permutations do not.
pub fn begins_with_pattern_12(q: &Permutation) -> bool {
    let e = q.entries();
    e.len() >= 2 && e[0].cmp(&e[1]) == Ordering::Less
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{iter_colored, iter_partitions};
    use crate::pattern::canonical_pair_patterns;
    use itertools::Itertools;

    fn host(s: &str) -> ColoredPartition {
        ColoredPartition::parse_word(s, Some(2)).unwrap()
    }

    fn pat(s: &str) -> ColoredPattern {
        s.parse().unwrap()
    }

    /// Pairwise scan written directly from the definition, for length-2
    /// patterns only.
    fn pair_oracle(h: &ColoredPartition, p: &ColoredPattern, sense: Sense) -> bool {
        let (w, c) = (h.word(), h.colors());
        (0..w.len()).tuple_combinations().any(|(i, j)| {
            let word_ok = (w[i] == w[j]) == (p.word()[1] == 1);
            let colors_ok = match sense {
                Sense::Pattern => {
                    crate::partition::reduce(&[c[i], c[j]]) == p.reduced_colors()
                }
                Sense::Eq => [c[i], c[j]] == p.colors(),
                Sense::Lt => c[i] <= p.colors()[0] && c[j] <= p.colors()[1],
            };
            word_ok && colors_ok
        })
    }

    fn classical_oracle(q: &Permutation, p: &Permutation) -> bool {
        (0..q.len()).combinations(p.len()).any(|idx| {
            let sub: Vec<u32> = idx.iter().map(|&i| q.entries()[i]).collect();
            crate::partition::reduce(&sub) == p.entries()
        })
    }

    #[test]
    fn containment_examples() {
        // 1^13^1/2^2/4^2
        let s = host("1^12^21^13^2");
        assert!(!contains_colored(&s, &pat("1^11^2"), Sense::Pattern));
        assert!(contains_colored(&s, &pat("1^12^2"), Sense::Pattern));
        assert!(contains_colored(&s, &pat("1^11^1"), Sense::Pattern));
        assert!(contains_colored(&s, &pat("1^22^1"), Sense::Pattern));
        let t = host("1^22^1");
        assert!(!contains_colored(&t, &pat("1^12^1"), Sense::Pattern));
        assert!(contains_colored(&t, &pat("1^22^1"), Sense::Pattern));
        let p = pat("1^12^21^13^2");
        assert!(contains_colored(&s, &p, Sense::Eq));
        assert!(!contains_colored(&host("1^1"), &pat("1^11^1"), Sense::Pattern));
    }

    #[test]
    fn two_element_truth_table() {
        // rows: hosts 12 with colors 11,12,21,22; columns: the six patterns
        let expected = [
            [false, false, false, true, false, false],
            [false, false, false, false, true, false],
            [false, false, false, false, false, true],
            [false, false, false, true, false, false],
        ];
        let pats = canonical_pair_patterns();
        for (row, colors) in ["11", "12", "21", "22"].iter().enumerate() {
            let cs: Vec<u32> = colors.bytes().map(|b| u32::from(b - b'0')).collect();
            let h = ColoredPartition::new(vec![1, 2], cs, 2).unwrap();
            for (col, p) in pats.iter().enumerate() {
                assert_eq!(
                    contains_colored(&h, p, Sense::Pattern),
                    expected[row][col],
                    "host {h} pattern {p}"
                );
            }
        }
    }

    #[test]
    fn generic_pairwise_and_oracle_agree() {
        for n in 0..=7 {
            for h in iter_colored(n, 2) {
                for p in canonical_pair_patterns()
                    .iter()
                    .chain(&[pat("1^22^2"), pat("1^21^2")])
                {
                    for sense in Sense::ALL {
                        let a = contains_colored(&h, p, sense);
                        assert_eq!(a, contains_pair(&h, p, sense), "{h} {p} {sense}");
                        assert_eq!(a, pair_oracle(&h, p, sense), "{h} {p} {sense}");
                    }
                }
            }
        }
    }

    #[test]
    fn eq_copy_is_a_pattern_copy() {
        for n in 0..=7 {
            for h in iter_colored(n, 2) {
                for p in canonical_pair_patterns() {
                    if contains_colored(&h, &p, Sense::Eq) {
                        assert!(contains_colored(&h, &p, Sense::Pattern));
                    }
                }
            }
        }
    }

    #[test]
    fn senses_coincide_with_one_color() {
        let pats = ["1^1", "1^11^1", "1^12^1", "1^12^11^1", "1^12^13^1"];
        for n in 0..=7 {
            for w in iter_partitions(n) {
                let h = ColoredPartition::uncolored(w).unwrap();
                for p in pats {
                    let p = pat(p);
                    let a = contains_colored(&h, &p, Sense::Pattern);
                    assert_eq!(a, contains_colored(&h, &p, Sense::Eq));
                    assert_eq!(a, contains_colored(&h, &p, Sense::Lt));
                }
            }
        }
    }

    #[test]
    fn longer_patterns_use_block_structure() {
        // 167/238/4/5 contains 15/2/34 but avoids 123/4/5
        let s = ColoredPartition::uncolored(vec![1, 2, 2, 3, 4, 1, 1, 2]).unwrap();
        let p1 = ColoredPattern::new(vec![1, 2, 3, 3, 1], vec![1; 5]).unwrap();
        let p2 = ColoredPattern::new(vec![1, 1, 1, 2, 3], vec![1; 5]).unwrap();
        assert!(contains_colored(&s, &p1, Sense::Pattern));
        assert!(!contains_colored(&s, &p2, Sense::Pattern));
        assert!(!contains_colored(&host("1^1"), &p1, Sense::Pattern));
    }

    #[test]
    fn lt_sense_is_elementwise() {
        let h = host("1^11^2");
        assert!(contains_colored(&h, &pat("1^21^2"), Sense::Lt));
        assert!(!contains_colored(&h, &pat("1^21^1"), Sense::Lt));
        assert!(!contains_colored(&h, &pat("1^21^2"), Sense::Eq));
    }

    #[test]
    fn avoids_all_examples() {
        let h = host("1^11^1");
        assert!(avoids_all(&h, &PatternSet::empty(), Sense::Pattern));
        assert!(!avoids_all(&h, &"1^11^1".parse().unwrap(), Sense::Pattern));
        let s: PatternSet = "1^12^1,1^22^1".parse().unwrap();
        let n = iter_colored(2, 2)
            .filter(|h| avoids_all(h, &s, Sense::Pattern))
            .count();
        assert_eq!(n, 5);
    }

    #[test]
    fn pair_rule_matches_pairwise_scan() {
        let pats = canonical_pair_patterns();
        let rule = PairRule::new(&PatternSet::new(vec![pats[1].clone()]), 2, Sense::Pattern)
            .unwrap();
        assert!(rule.forbids(true, 1, 2));
        assert!(!rule.forbids(true, 2, 1));
        assert!(!rule.forbids(false, 1, 2));
        assert!(PairRule::new(&"1^1".parse().unwrap(), 2, Sense::Pattern).is_none());
        assert!(PairRule::new(&PatternSet::empty(), 2, Sense::Eq)
            .unwrap()
            .forbids_nothing());
    }

    #[test]
    fn vincular_examples() {
        let p123: VincularPattern = "12-3".parse().unwrap();
        let p2143: VincularPattern = "214-3".parse().unwrap();
        let q: Permutation = "73861542".parse().unwrap();
        assert!(!contains_vincular(&q, &p123));
        assert!(!contains_vincular(&q, &p2143));
        assert!(contains_vincular(&"123".parse().unwrap(), &p123));
        assert!(!contains_vincular(&"132".parse().unwrap(), &p123));
        // 1 3 2 4: 13 adjacent then 4
        assert!(contains_vincular(&"1324".parse().unwrap(), &p123));
        assert!(!contains_vincular(&"2314".parse().unwrap(), &p2143));
        assert!(contains_vincular(&"2143".parse().unwrap(), &p2143));
        assert!(!contains_vincular(&"51432".parse().unwrap(), &p2143));
        assert!(!contains_vincular(&"21".parse().unwrap(), &p123));
    }

    #[test]
    fn unbonded_matches_classical() {
        let patterns: Vec<Permutation> = (1..=3).flat_map(Permutation::all).collect();
        for n in 0..=6 {
            for q in Permutation::all(n) {
                for p in &patterns {
                    let v = VincularPattern::classical(p.clone());
                    assert_eq!(
                        contains_vincular(&q, &v),
                        classical_oracle(&q, p),
                        "{q} {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn ascent_start_filter() {
        assert!(!begins_with_pattern_12(&"73861542".parse().unwrap()));
        assert!(begins_with_pattern_12(&"12".parse().unwrap()));
        assert!(!begins_with_pattern_12(&"1".parse().unwrap()));
        let p: VincularPattern = "12-3".parse().unwrap();
        let members: Vec<Permutation> = Permutation::all(4)
            .filter(|q| !contains_vincular(q, &p) && begins_with_pattern_12(q))
            .collect();
        assert_eq!(members.len(), 6);
        assert!(members.iter().all(|q| q.entries()[1] == 4));
    }
}
