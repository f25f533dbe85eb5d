//! Exhaustive generation of colored set partitions, avoidance counting and
//! empirical Wilf classification.
//!
//! Streams are deterministic: restricted growth strings in lexicographic
//! order, and for each of them every color word in lexicographic order.
//!
//! Counting splits the search space by colored prefixes of length
//! `min(n, 4)`. Every prefix is an independent subtree; subtree counts are
//! summed, so the result does not depend on the number of worker threads.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::avoidance::{avoids_all_raw, embeds, PairRule, Sense};
use crate::error::{Error, Result};
use crate::partition::ColoredPartition;
use crate::pattern::{canonical_pair_patterns, ColoredPattern, PatternSet};

const PREFIX_LEN: usize = 4;

/// Restricted growth strings of length `n` in lexicographic order.
pub struct PartitionIter {
    word: Vec<u32>,
    /// `maxes[i]` is the largest entry of `word[..=i]`.
    maxes: Vec<u32>,
    done: bool,
    fresh: bool,
}

pub fn iter_partitions(n: usize) -> PartitionIter {
    PartitionIter {
        word: vec![1; n],
        maxes: vec![1; n],
        done: false,
        fresh: true,
    }
}

impl PartitionIter {
    fn advance(&mut self) -> bool {
        let n = self.word.len();
        for i in (1..n).rev() {
            if self.word[i] <= self.maxes[i - 1] {
                self.word[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.word[i]);
                for j in i + 1..n {
                    self.word[j] = 1;
                    self.maxes[j] = self.maxes[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PartitionIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.word.clone())
    }
}

/// Every colored partition of `[n]` over `[k]`, partition-major with the
/// color word varying fastest.
pub struct ColoredIter {
    partitions: PartitionIter,
    word: Option<Vec<u32>>,
    colors: Vec<u32>,
    k: u32,
    fresh: bool,
}

pub fn iter_colored(n: usize, k: u32) -> ColoredIter {
    assert!(k >= 1, "at least one color");
    let mut partitions = iter_partitions(n);
    let word = partitions.next();
    ColoredIter {
        partitions,
        word,
        colors: vec![1; n],
        k,
        fresh: true,
    }
}

impl Iterator for ColoredIter {
    type Item = ColoredPartition;

    fn next(&mut self) -> Option<ColoredPartition> {
        if self.fresh {
            self.fresh = false;
        } else {
            let mut bumped = false;
            for c in self.colors.iter_mut().rev() {
                if *c < self.k {
                    *c += 1;
                    bumped = true;
                    break;
                }
                *c = 1;
            }
            if !bumped {
                self.word = self.partitions.next();
            }
        }
        let word = self.word.as_ref()?;
        Some(ColoredPartition::from_parts_unchecked(
            word.clone(),
            self.colors.clone(),
            self.k,
        ))
    }
}

/// Knobs for the counting routines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOptions {
    /// Enumerate every colored partition and test it with the generic
    /// matcher, instead of pruning prefixes that already contain a
    /// forbidden pair.
    pub naive: bool,
    /// Worker threads; `None` uses the global pool, `Some(1)` runs inline.
    pub jobs: Option<usize>,
}

impl CountOptions {
    pub fn naive() -> Self {
        Self {
            naive: true,
            jobs: None,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs);
        self
    }
}

/// `|{σ ∈ Π_n≀C_k : σ avoids every pattern of set}|` with default options.
pub fn count_avoiders(n: usize, k: u32, set: &PatternSet, sense: Sense) -> Result<u64> {
    count_avoiders_with(n, k, set, sense, &CountOptions::default())
}

pub fn count_avoiders_with(
    n: usize,
    k: u32,
    set: &PatternSet,
    sense: Sense,
    opts: &CountOptions,
) -> Result<u64> {
    set.validate_for(k, sense)?;
    let rule = if opts.naive {
        None
    } else {
        PairRule::new(set, k, sense)
    };
    let prefixes = prefixes(n, k);
    match &rule {
        Some(rule) => run_sum(&prefixes, opts.jobs, |(w, c)| {
            PrunedCounter::new(n, rule).count_from_prefix(w, c)
        }),
        None => run_sum(&prefixes, opts.jobs, |(w, c)| {
            let mut count = 0u64;
            visit_subtree(n, k, w, c, &mut |word, colors| {
                if avoids_all_raw(word, colors, set, sense) {
                    count += 1;
                }
            });
            count
        }),
    }
}

fn prefixes(n: usize, k: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    iter_colored(n.min(PREFIX_LEN), k)
        .map(|p| (p.word().to_vec(), p.colors().to_vec()))
        .collect()
}

fn with_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn run_sum<T, F>(items: &[T], jobs: Option<usize>, f: F) -> Result<u64>
where
    T: Sync,
    F: Fn(&T) -> u64 + Sync,
{
    let total = if jobs == Some(1) {
        items
            .iter()
            .try_fold(0u64, |acc, t| acc.checked_add(f(t)))
    } else {
        with_pool(jobs, || {
            items
                .par_iter()
                .map(|t| Some(f(t)))
                .reduce(|| Some(0), |a, b| a?.checked_add(b?))
        })?
    };
    total.ok_or(Error::Overflow("avoider count"))
}

/// Call `leaf` on every colored partition of `[n]` whose first entries are
/// the given prefix.
fn visit_subtree(
    n: usize,
    k: u32,
    prefix_word: &[u32],
    prefix_colors: &[u32],
    leaf: &mut impl FnMut(&[u32], &[u32]),
) {
    let mut word = Vec::with_capacity(n);
    let mut colors = Vec::with_capacity(n);
    word.extend_from_slice(prefix_word);
    colors.extend_from_slice(prefix_colors);
    let max = word.iter().copied().max().unwrap_or(0);
    visit_rec(n, k, max, &mut word, &mut colors, leaf);
}

fn visit_rec(
    n: usize,
    k: u32,
    max: u32,
    word: &mut Vec<u32>,
    colors: &mut Vec<u32>,
    leaf: &mut impl FnMut(&[u32], &[u32]),
) {
    if word.len() == n {
        leaf(word, colors);
        return;
    }
    for b in 1..=max + 1 {
        word.push(b);
        for c in 1..=k {
            colors.push(c);
            visit_rec(n, k, max.max(b), word, colors, leaf);
            colors.pop();
        }
        word.pop();
    }
}

/// Depth-first counter that refuses to append an element forming a
/// forbidden pair with an earlier one. Containment of length-2 patterns is
/// monotone under extension, so no avoider is lost.
struct PrunedCounter<'a> {
    n: usize,
    k: usize,
    rule: &'a PairRule,
    len: usize,
    max_block: usize,
    /// `in_block[b * k + c]`: how many elements of block `b` have color `c`
    /// (both 0-based).
    in_block: Vec<u32>,
    total: Vec<u32>,
    word: Vec<u32>,
    colors: Vec<u32>,
}

impl<'a> PrunedCounter<'a> {
    fn new(n: usize, rule: &'a PairRule) -> Self {
        let k = rule.k() as usize;
        Self {
            n,
            k,
            rule,
            len: 0,
            max_block: 0,
            in_block: vec![0; (n + 1) * k],
            total: vec![0; k],
            word: Vec::with_capacity(n),
            colors: Vec::with_capacity(n),
        }
    }

    fn admissible(&self, block: usize, color: usize) -> bool {
        let row = &self.in_block[block * self.k..(block + 1) * self.k];
        (0..self.k).all(|a| {
            let same = row[a];
            let other = self.total[a] - same;
            !(same > 0 && self.rule.forbids(true, a as u32 + 1, color as u32 + 1)
                || other > 0 && self.rule.forbids(false, a as u32 + 1, color as u32 + 1))
        })
    }

    fn push(&mut self, block: usize, color: usize) {
        self.in_block[block * self.k + color] += 1;
        self.total[color] += 1;
        self.word.push(block as u32);
        self.colors.push(color as u32);
        self.len += 1;
    }

    fn pop(&mut self) {
        let block = self.word.pop().expect("nonempty") as usize;
        let color = self.colors.pop().expect("nonempty") as usize;
        self.in_block[block * self.k + color] -= 1;
        self.total[color] -= 1;
        self.len -= 1;
    }

    fn count_from_prefix(&mut self, word: &[u32], colors: &[u32]) -> u64 {
        for (&b, &c) in word.iter().zip(colors) {
            let (b, c) = (b as usize - 1, c as usize - 1);
            if !self.admissible(b, c) {
                return 0;
            }
            self.push(b, c);
            self.max_block = self.max_block.max(b + 1);
        }
        self.count()
    }

    fn count(&mut self) -> u64 {
        if self.len == self.n {
            return 1;
        }
        let mut total = 0;
        let max = self.max_block;
        for b in 0..=max {
            for c in 0..self.k {
                if self.admissible(b, c) {
                    self.push(b, c);
                    self.max_block = max.max(b + 1);
                    total += self.count();
                    self.max_block = max;
                    self.pop();
                }
            }
        }
        total
    }
}

/// Avoider counts for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceSequence {
    pub pattern_set: PatternSet,
    pub sense: Sense,
    pub k: u32,
    pub counts: Vec<u64>,
}

impl AvoidanceSequence {
    /// Count at `n` (1-based); `None` past `n_max`.
    pub fn at(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.counts.get(i)).copied()
    }
}

pub fn avoidance_sequence(
    set: &PatternSet,
    sense: Sense,
    k: u32,
    n_max: usize,
    opts: &CountOptions,
) -> Result<AvoidanceSequence> {
    let counts = (1..=n_max)
        .map(|n| count_avoiders_with(n, k, set, sense, opts))
        .collect::<Result<_>>()?;
    Ok(AvoidanceSequence {
        pattern_set: set.clone(),
        sense,
        k,
        counts,
    })
}

/// Histogram over containment masks: entry `m` counts the colored
/// partitions of `[n]` that contain exactly the patterns `universe[i]` with
/// bit `i` set in `m`. Every partition is enumerated and tested with the
/// generic matcher.
pub fn containment_profile(
    n: usize,
    k: u32,
    universe: &[ColoredPattern],
    sense: Sense,
    jobs: Option<usize>,
) -> Result<Vec<u64>> {
    assert!(universe.len() <= 16, "profile universe too large");
    let size = 1usize << universe.len();
    let prefixes = prefixes(n, k);
    let one = |(w, c): &(Vec<u32>, Vec<u32>)| {
        let mut hist = vec![0u64; size];
        visit_subtree(n, k, w, c, &mut |word, colors| {
            let mask = universe
                .iter()
                .enumerate()
                .filter(|(_, p)| embeds(word, colors, p, sense))
                .fold(0usize, |m, (i, _)| m | 1 << i);
            hist[mask] += 1;
        });
        hist
    };
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    if jobs == Some(1) {
        Ok(prefixes.iter().map(one).fold(vec![0; size], merge))
    } else {
        with_pool(jobs, || {
            prefixes
                .par_iter()
                .map(one)
                .reduce(|| vec![0; size], merge)
        })
    }
}

/// Pattern sets grouped by identical avoider counts for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilfClassification {
    pub n_max: usize,
    pub sense: Sense,
    pub k: u32,
    pub classes: Vec<WilfClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WilfClass {
    pub members: Vec<PatternSet>,
    pub counts: Vec<u64>,
}

/// Group `family` by avoidance sequence. Classes are ordered by their
/// smallest member, members within a class are sorted.
pub fn wilf_classify(
    family: &[PatternSet],
    sense: Sense,
    k: u32,
    n_max: usize,
    opts: &CountOptions,
) -> Result<WilfClassification> {
    let universe: Vec<ColoredPattern> = family
        .iter()
        .flat_map(|s| s.iter().cloned())
        .sorted()
        .dedup()
        .collect();
    for s in family {
        s.validate_for(k, sense)?;
    }
    let sequences: Vec<Vec<u64>> = if universe.len() <= 12 && !family.is_empty() {
        let masks: Vec<usize> = family
            .iter()
            .map(|s| {
                s.iter()
                    .map(|p| universe.binary_search(p).expect("in universe"))
                    .fold(0, |m, i| m | 1 << i)
            })
            .collect();
        let mut seqs = vec![Vec::with_capacity(n_max); family.len()];
        for n in 1..=n_max {
            let hist = containment_profile(n, k, &universe, sense, opts.jobs)?;
            for (seq, &sm) in seqs.iter_mut().zip(&masks) {
                let count = hist
                    .iter()
                    .enumerate()
                    .filter(|(m, _)| m & sm == 0)
                    .try_fold(0u64, |acc, (_, &v)| acc.checked_add(v))
                    .ok_or(Error::Overflow("profile sum"))?;
                seq.push(count);
            }
        }
        seqs
    } else {
        family
            .iter()
            .map(|s| avoidance_sequence(s, sense, k, n_max, opts).map(|a| a.counts))
            .collect::<Result<_>>()?
    };
    let mut groups: BTreeMap<Vec<u64>, Vec<PatternSet>> = BTreeMap::new();
    for (s, seq) in family.iter().zip(sequences) {
        groups.entry(seq).or_default().push(s.clone());
    }
    let mut classes: Vec<WilfClass> = groups
        .into_iter()
        .map(|(counts, mut members)| {
            members.sort();
            members.dedup();
            WilfClass { members, counts }
        })
        .collect();
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok(WilfClassification {
        n_max,
        sense,
        k,
        classes,
    })
}

/// All `size`-element subsets of `patterns`, in lexicographic order.
pub fn subsets_of(patterns: &[ColoredPattern], size: usize) -> Vec<PatternSet> {
    patterns
        .iter()
        .cloned()
        .combinations(size)
        .map(PatternSet::new)
        .collect()
}

/// All `size`-element subsets of the six canonical 2-colored pair patterns.
pub fn pair_pattern_subsets(size: usize) -> Vec<PatternSet> {
    subsets_of(&canonical_pair_patterns(), size)
}

/// One confirmed instance of the color-symmetry equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryIdentity {
    pub pattern: String,
    pub reversed: String,
    pub complemented: String,
    pub counts: Vec<u64>,
}

/// For each canonical pair pattern, compare its pattern-sense avoidance
/// sequence with those of its color reversal and color complement.
pub fn verify_lemma1(k: u32, n_max: usize, opts: &CountOptions) -> Result<Vec<SymmetryIdentity>> {
    let mut out = Vec::new();
    for p in canonical_pair_patterns() {
        let rev = p.color_reverse();
        let comp = p.color_complement(k.max(p.max_color()))?;
        let seq = |q: &ColoredPattern| {
            avoidance_sequence(&PatternSet::new(vec![q.clone()]), Sense::Pattern, k, n_max, opts)
        };
        let base = seq(&p)?;
        for (label, other) in [("reversal", &rev), ("complement", &comp)] {
            let o = seq(other)?;
            if let Some(i) = (0..n_max).find(|&i| base.counts[i] != o.counts[i]) {
                return Err(Error::Verification(format!(
                    "{p} and its color {label} {other} differ at n = {}: {} vs {}",
                    i + 1,
                    base.counts[i],
                    o.counts[i]
                )));
            }
        }
        out.push(SymmetryIdentity {
            pattern: p.to_string(),
            reversed: rev.to_string(),
            complemented: comp.to_string(),
            counts: base.counts,
        });
    }
    Ok(out)
}

/// A pattern-sense avoider set shown equal to an EQ-sense avoider set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetIdentity {
    pub pattern_sense: PatternSet,
    pub eq_sense: PatternSet,
    pub counts: Vec<u64>,
}

/// The four single-pattern identities between pattern-sense and EQ-sense
/// avoiders in two colors.
pub fn eq_pattern_identities() -> Vec<(PatternSet, PatternSet)> {
    [
        ("1^11^1", "1^11^1,1^21^2"),
        ("1^11^2", "1^11^2"),
        ("1^12^1", "1^12^1,1^22^2"),
        ("1^12^2", "1^12^2"),
    ]
    .into_iter()
    .map(|(a, b)| (a.parse().expect("valid"), b.parse().expect("valid")))
    .collect()
}

/// Check element by element that each pattern-sense avoider set equals the
/// corresponding EQ-sense avoider set for `n = 1..=n_max`.
pub fn verify_eq_pattern_identities(n_max: usize) -> Result<Vec<SetIdentity>> {
    let mut out = Vec::new();
    for (pat, eq) in eq_pattern_identities() {
        let mut counts = Vec::new();
        for n in 1..=n_max {
            let mut count = 0;
            for h in iter_colored(n, 2) {
                let a = avoids_all_raw(h.word(), h.colors(), &pat, Sense::Pattern);
                let b = avoids_all_raw(h.word(), h.colors(), &eq, Sense::Eq);
                if a != b {
                    return Err(Error::Verification(format!(
                        "pattern-sense {{{pat}}} and eq-sense {{{eq}}} disagree on {h}"
                    )));
                }
                count += u64::from(a);
            }
            counts.push(count);
        }
        out.push(SetIdentity {
            pattern_sense: pat,
            eq_sense: eq,
            counts,
        });
    }
    Ok(out)
}
