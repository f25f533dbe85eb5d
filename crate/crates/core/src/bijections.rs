//! Explicit bijections between avoidance classes of 2-colored partitions and
//! vincular-pattern-avoiding permutations, with exhaustive verification.
//!
//! Every map checks its domain first and returns
//! [`Error::DomainViolation`] for inputs outside it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::avoidance::{avoids_all, avoids_vincular_all, contains_colored, Sense};
use crate::enumerate::{iter_colored, iter_partitions};
use crate::error::{Error, Result};
use crate::partition::{reduce, ColoredPartition};
use crate::pattern::PatternSet;
use crate::perm::{Permutation, VincularPattern};

type Blocks = Vec<Vec<(usize, u32)>>;

fn set(text: &str) -> PatternSet {
    text.parse().expect("built-in pattern set")
}

fn vincular(texts: &[&str]) -> Vec<VincularPattern> {
    texts
        .iter()
        .map(|t| t.parse().expect("built-in vincular pattern"))
        .collect()
}

/// Domain of `f`.
pub fn f_domain() -> PatternSet {
    set("1^11^1,1^11^2")
}

/// Patterns avoided by the images of `f`.
pub fn f_codomain() -> Vec<VincularPattern> {
    vincular(&["12-3", "214-3"])
}

pub fn g_domain() -> PatternSet {
    set("1^11^2,1^12^2")
}

pub fn class2_domain() -> PatternSet {
    set("1^12^1,1^22^1")
}

pub fn class2_codomain() -> PatternSet {
    set("1^21^1,1^12^1")
}

pub fn class3_sets() -> [PatternSet; 3] {
    [
        set("1^11^1,1^11^2,1^22^1"),
        set("1^11^2,1^12^1,1^12^2"),
        set("1^21^1,1^12^1,1^12^2"),
    ]
}

fn check_colored(map: &'static str, sigma: &ColoredPartition, domain: &PatternSet) -> Result<()> {
    if let Some(pos) = sigma.colors().iter().position(|&c| c > 2) {
        return Err(Error::DomainViolation {
            map,
            reason: format!("element {} has color {} > 2", pos + 1, sigma.colors()[pos]),
        });
    }
    if let Some(p) = domain
        .iter()
        .find(|p| contains_colored(sigma, p, Sense::Pattern))
    {
        return Err(Error::DomainViolation {
            map,
            reason: format!("{} contains {p}", sigma.to_block_notation()),
        });
    }
    Ok(())
}

fn check_perm(map: &'static str, q: &Permutation, patterns: &[VincularPattern]) -> Result<()> {
    if let Some(p) = patterns
        .iter()
        .find(|p| crate::avoidance::contains_vincular(q, p))
    {
        return Err(Error::DomainViolation {
            map,
            reason: format!("{q} contains {p}"),
        });
    }
    Ok(())
}

/// The `v`-th smallest element of `[n] \ {j}` (`v` is 1-based).
fn skip_value(v: u32, j: u32) -> u32 {
    if v < j {
        v
    } else {
        v + 1
    }
}

/// `f: Π_n≀C_2(1^11^1, 1^11^2) → S_{n+1}(12-3, 214-3)`.
pub fn bij_f(sigma: &ColoredPartition) -> Result<Permutation> {
    check_colored("f", sigma, &f_domain())?;
    Ok(Permutation::from_vec_unchecked(f_rec(sigma)?))
}

fn f_rec(sigma: &ColoredPartition) -> Result<Vec<u32>> {
    let n = sigma.len();
    if n == 0 {
        return Ok(vec![1]);
    }
    let top = n as u32 + 1;
    let block = sigma.blocks().swap_remove(sigma.block_of(n) as usize - 1);
    match block.as_slice() {
        [j, _] => {
            let j = *j;
            let rest: Vec<usize> = (1..n).filter(|&e| e != j).collect();
            let inner = f_rec(&sigma.canonize_sub(&rest)?)?;
            let mut out = vec![j as u32, top];
            out.extend(inner.into_iter().map(|v| skip_value(v, j as u32)));
            Ok(out)
        }
        [_] => {
            let prefix: Vec<usize> = (1..n).collect();
            let inner = f_rec(&sigma.canonize_sub(&prefix)?)?;
            if sigma.color_of(n) == 1 {
                let mut out = vec![top];
                out.extend(inner);
                Ok(out)
            } else {
                let p = inner
                    .iter()
                    .position(|&v| v == n as u32)
                    .expect("f image is a permutation of [n]");
                let mut out = vec![n as u32];
                out.extend_from_slice(&inner[..p]);
                out.push(top);
                out.extend_from_slice(&inner[p + 1..]);
                Ok(out)
            }
        }
        _ => Err(Error::DomainViolation {
            map: "f",
            reason: format!("block of {n} has {} elements", block.len()),
        }),
    }
}

/// Inverse of [`bij_f`].
pub fn bij_f_inv(q: &Permutation) -> Result<ColoredPartition> {
    check_perm("f-inv", q, &f_codomain())?;
    let blocks = f_inv_rec(q.entries())?;
    ColoredPartition::from_blocks(&blocks, 2)
}

fn f_inv_rec(q: &[u32]) -> Result<Blocks> {
    let m = q.len();
    if m <= 1 {
        return Ok(Vec::new());
    }
    let n = m - 1;
    let p = q.iter().position(|&v| v as usize == m).expect("permutation");
    if p == 0 {
        let mut blocks = f_inv_rec(&q[1..])?;
        blocks.push(vec![(n, 1)]);
        return Ok(blocks);
    }
    if p == 1 && q[0] as usize != n {
        let j = q[0];
        let inner = f_inv_rec(&reduce(&q[2..]))?;
        let mut blocks: Blocks = inner
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|(e, c)| (skip_value(e as u32, j) as usize, c))
                    .collect()
            })
            .collect();
        blocks.push(vec![(j as usize, 2), (n, 1)]);
        return Ok(blocks);
    }
    if q[0] as usize != n {
        return Err(Error::DomainViolation {
            map: "f-inv",
            reason: format!("expected {n} before the entries preceding {m}"),
        });
    }
    let mut next = Vec::with_capacity(n);
    next.extend_from_slice(&q[1..p]);
    next.push(n as u32);
    next.extend_from_slice(&q[p + 1..]);
    let mut blocks = f_inv_rec(&next)?;
    blocks.push(vec![(n, 2)]);
    Ok(blocks)
}

/// Concatenate blocks ordered by decreasing minimum, each written as its
/// minimum followed by the remaining elements in decreasing order. Works on
/// any totally ordered labels.
fn tau_labels(mut blocks: Vec<Vec<u32>>) -> Vec<u32> {
    for b in &mut blocks {
        b.sort_unstable_by(|x, y| y.cmp(x));
        b.rotate_right(1);
    }
    blocks.sort_by(|x, y| y[0].cmp(&x[0]));
    blocks.concat()
}

/// Split a word before each left-to-right minimum.
fn tau_inv_labels(q: &[u32]) -> Vec<Vec<u32>> {
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut low = u32::MAX;
    for &v in q {
        if v < low {
            low = v;
            blocks.push(Vec::new());
        }
        blocks.last_mut().expect("block opened").push(v);
    }
    blocks
}

/// Claesson's map from set partitions of `[n]` onto `S_n(1-23)`. Colors
/// are ignored.
pub fn claesson_tau(pi: &ColoredPartition) -> Permutation {
    let blocks = pi
        .blocks()
        .into_iter()
        .map(|b| b.into_iter().map(|e| e as u32).collect())
        .collect();
    Permutation::from_vec_unchecked(tau_labels(blocks))
}

/// Inverse of [`claesson_tau`]; the result is uncolored (`k = 1`).
pub fn tau_inv(q: &Permutation) -> Result<ColoredPartition> {
    check_perm("tau-inv", q, &vincular(&["1-23"]))?;
    let blocks: Blocks = tau_inv_labels(q.entries())
        .into_iter()
        .map(|b| b.into_iter().map(|v| (v as usize, 1)).collect())
        .collect();
    ColoredPartition::from_blocks(&blocks, 1)
}

/// The order-reversing involution of the finite set `ground`, applied to
/// `word`.
fn complement_within(word: &[u32], ground: &[u32]) -> Vec<u32> {
    let m = ground.len();
    word.iter()
        .map(|v| {
            let t = ground.binary_search(v).expect("letter in ground set");
            ground[m - 1 - t]
        })
        .collect()
}

/// `g: Π_n≀C_2(1^11^2, 1^12^2) → S_{n+2}(12-3)` onto the permutations
/// beginning with an ascent.
pub fn bij_g(sigma: &ColoredPartition) -> Result<Permutation> {
    check_colored("g", sigma, &g_domain())?;
    let n = sigma.len();
    let i = (1..=n).find(|&e| sigma.color_of(e) == 1).unwrap_or(n + 1) as u32;
    let hat: Vec<Vec<u32>> = sigma
        .blocks()
        .into_iter()
        .map(|b| {
            b.into_iter()
                .map(|e| if e as u32 == i { n as u32 + 1 } else { e as u32 })
                .collect()
        })
        .collect();
    let ground: Vec<u32> = (1..=n as u32 + 1).filter(|&v| v != i).collect();
    let mut tail = complement_within(&tau_labels(hat), &ground);
    tail.reverse();
    let mut q = vec![i, n as u32 + 2];
    q.extend(tail);
    Ok(Permutation::from_vec_unchecked(q))
}

/// Inverse of [`bij_g`].
pub fn g_inv(q: &Permutation) -> Result<ColoredPartition> {
    let e = q.entries();
    let m = e.len();
    if m < 2 || e[1] as usize != m {
        return Err(Error::DomainViolation {
            map: "g-inv",
            reason: format!("{q} does not have its largest entry second"),
        });
    }
    check_perm("g-inv", q, &vincular(&["12-3"]))?;
    let n = m - 2;
    let i = e[0];
    let mut ground = e[2..].to_vec();
    ground.sort_unstable();
    let mut seq = e[2..].to_vec();
    seq.reverse();
    let seq = complement_within(&seq, &ground);
    let blocks: Blocks = tau_inv_labels(&seq)
        .into_iter()
        .map(|b| {
            b.into_iter()
                .map(|v| {
                    let el = if v as usize == n + 1 { i } else { v };
                    (el as usize, if el < i { 2 } else { 1 })
                })
                .collect()
        })
        .collect();
    ColoredPartition::from_blocks(&blocks, 2)
}

fn merge_or_split(sigma: &ColoredPartition) -> ColoredPartition {
    let n = sigma.len();
    let mono = sigma.colors().windows(2).all(|w| w[0] == w[1]);
    let word = match sigma.block_count() {
        2 => vec![1; n],
        1 if !mono => {
            let first = sigma.colors()[0];
            sigma
                .colors()
                .iter()
                .map(|&c| if c == first { 1 } else { 2 })
                .collect()
        }
        _ => sigma.word().to_vec(),
    };
    ColoredPartition::from_parts_unchecked(word, sigma.colors().to_vec(), 2)
}

/// `Π_n≀C_2(1^12^1, 1^22^1) → Π_n≀C_2(1^21^1, 1^12^1)`: two blocks are
/// merged, a single two-colored block is split by color, monochromatic
/// partitions are fixed.
pub fn bij_class2_pairs(sigma: &ColoredPartition) -> Result<ColoredPartition> {
    check_colored("class2", sigma, &class2_domain())?;
    Ok(merge_or_split(sigma))
}

/// Inverse of [`bij_class2_pairs`]; the same rule read in the codomain.
pub fn bij_class2_pairs_inv(sigma: &ColoredPartition) -> Result<ColoredPartition> {
    check_colored("class2-inv", sigma, &class2_codomain())?;
    Ok(merge_or_split(sigma))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class3Variant {
    /// `{1^11^1,1^11^2,1^22^1}` to `{1^11^2,1^12^1,1^12^2}`.
    Structural,
    /// `{1^11^2,1^12^1,1^12^2}` to `{1^21^1,1^12^1,1^12^2}`.
    ColorSwap,
}

impl Class3Variant {
    pub fn domain(self) -> PatternSet {
        let [a, b, _] = class3_sets();
        match self {
            Class3Variant::Structural => a,
            Class3Variant::ColorSwap => b,
        }
    }

    pub fn codomain(self) -> PatternSet {
        let [_, b, c] = class3_sets();
        match self {
            Class3Variant::Structural => b,
            Class3Variant::ColorSwap => c,
        }
    }
}

fn one_block(colors: Vec<u32>) -> ColoredPartition {
    ColoredPartition::from_parts_unchecked(vec![1; colors.len()], colors, 2)
}

fn prefix_blocks(n: usize, m: usize, first: u32, second: u32) -> ColoredPartition {
    let word = (1..=n).map(|e| if e <= m { 1 } else { 1 + u32::from(m > 0) }).collect();
    let colors = (1..=n).map(|e| if e <= m { first } else { second }).collect();
    ColoredPartition::from_parts_unchecked(word, colors, 2)
}

fn class3_structural(sigma: &ColoredPartition) -> ColoredPartition {
    let n = sigma.len();
    match (1..=n).find(|&e| sigma.color_of(e) == 2) {
        None => one_block(vec![2; n]),
        Some(i) if i < n && sigma.color_of(i + 1) == 1 => {
            one_block((1..=n).map(|e| if e <= i { 2 } else { 1 }).collect())
        }
        Some(i) => prefix_blocks(n, i - 1, 2, 1),
    }
}

fn class3_structural_inv(sigma: &ColoredPartition) -> ColoredPartition {
    let n = sigma.len();
    let singletons = |colors: Vec<u32>| {
        ColoredPartition::from_parts_unchecked((1..=n as u32).collect(), colors, 2)
    };
    if sigma.block_count() == 2 {
        let m = sigma.colors().iter().take_while(|&&c| c == 2).count();
        return singletons((1..=n).map(|e| if e <= m { 1 } else { 2 }).collect());
    }
    let a = sigma.colors().iter().take_while(|&&c| c == 2).count();
    if a == n {
        return singletons(vec![1; n]);
    }
    if a == 0 {
        return singletons(vec![2; n]);
    }
    let mut word = Vec::with_capacity(n);
    let mut colors = Vec::with_capacity(n);
    let mut next = 1;
    for e in 1..=n {
        if e == a + 1 {
            word.push(word[a - 1]);
        } else {
            word.push(next);
            next += 1;
        }
        colors.push(match e.cmp(&a) {
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Equal => 2,
            std::cmp::Ordering::Greater if e == a + 1 => 1,
            std::cmp::Ordering::Greater => 2,
        });
    }
    ColoredPartition::from_parts_unchecked(word, colors, 2)
}

/// Swap the two colors inside every block that uses both.
fn swap_in_mixed_blocks(sigma: &ColoredPartition) -> ColoredPartition {
    let mut colors = sigma.colors().to_vec();
    for b in sigma.blocks() {
        let mixed = b.iter().any(|&e| colors[e - 1] == 1) && b.iter().any(|&e| colors[e - 1] == 2);
        if mixed {
            for e in b {
                colors[e - 1] = 3 - colors[e - 1];
            }
        }
    }
    ColoredPartition::from_parts_unchecked(sigma.word().to_vec(), colors, 2)
}

/// The two maps between the three sets of triple class 3.
///
/// The structural map sends the all-singleton partition colored 1 to one
/// block colored 2. Otherwise let `i` be the first element colored 2. If
/// `i + 1` is colored 1 (so `{i, i+1}` is a block) the image is one block
/// whose first `i` elements are colored 2 and the rest 1. If not, the image
/// has the block `{1..i-1}` colored 2 and the block `{i..n}` colored 1; for
/// `i = 1` this is one block colored 1.
///
/// The color-swap map swaps the colors inside each block using both colors.
pub fn bij_class3_triples(sigma: &ColoredPartition, variant: Class3Variant) -> Result<ColoredPartition> {
    check_colored(variant.map_name(), sigma, &variant.domain())?;
    Ok(match variant {
        Class3Variant::Structural => class3_structural(sigma),
        Class3Variant::ColorSwap => swap_in_mixed_blocks(sigma),
    })
}

pub fn bij_class3_triples_inv(
    sigma: &ColoredPartition,
    variant: Class3Variant,
) -> Result<ColoredPartition> {
    check_colored(variant.inv_name(), sigma, &variant.codomain())?;
    Ok(match variant {
        Class3Variant::Structural => class3_structural_inv(sigma),
        Class3Variant::ColorSwap => swap_in_mixed_blocks(sigma),
    })
}

impl Class3Variant {
    fn map_name(self) -> &'static str {
        match self {
            Class3Variant::Structural => "class3a",
            Class3Variant::ColorSwap => "class3b",
        }
    }

    fn inv_name(self) -> &'static str {
        match self {
            Class3Variant::Structural => "class3a-inv",
            Class3Variant::ColorSwap => "class3b-inv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BijectionName {
    F,
    Tau,
    G,
    Class2,
    Class3a,
    Class3b,
}

impl BijectionName {
    pub const ALL: [BijectionName; 6] = [
        BijectionName::F,
        BijectionName::Tau,
        BijectionName::G,
        BijectionName::Class2,
        BijectionName::Class3a,
        BijectionName::Class3b,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BijectionName::F => "f",
            BijectionName::Tau => "tau",
            BijectionName::G => "g",
            BijectionName::Class2 => "class2",
            BijectionName::Class3a => "class3a",
            BijectionName::Class3b => "class3b",
        }
    }
}

impl fmt::Display for BijectionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BijectionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

const MAX_WITNESSES: usize = 16;

/// Outcome of an exhaustive check of one bijection at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub name: BijectionName,
    pub n: usize,
    pub domain_size: usize,
    pub image_size: usize,
    pub codomain_size: usize,
    /// Inputs the map rejected or mapped outside the codomain.
    pub membership_failures: Vec<String>,
    /// Inputs the inverse did not send back to themselves.
    pub round_trip_failures: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.membership_failures.is_empty()
            && self.round_trip_failures.is_empty()
            && self.domain_size == self.image_size
            && self.image_size == self.codomain_size
    }
}

fn push_witness(list: &mut Vec<String>, w: String) {
    if list.len() < MAX_WITNESSES {
        list.push(w);
    }
}

fn colored_class(n: usize, avoid: &PatternSet) -> Vec<ColoredPartition> {
    iter_colored(n, 2)
        .filter(|s| avoids_all(s, avoid, Sense::Pattern))
        .collect()
}

/// Permutations of `[m]` avoiding `patterns`, optionally only those that
/// begin with an ascent.
pub fn vincular_class(m: usize, patterns: &[VincularPattern], ascent_first: bool) -> Vec<Permutation> {
    Permutation::all(m)
        .filter(|q| !ascent_first || crate::avoidance::begins_with_pattern_12(q))
        .filter(|q| avoids_vincular_all(q, patterns))
        .collect()
}

fn check_maps<A, B, F, G>(
    name: BijectionName,
    n: usize,
    domain: Vec<A>,
    codomain: Vec<B>,
    forward: F,
    backward: G,
) -> BijectionReport
where
    A: PartialEq + fmt::Display,
    B: Ord + Clone + fmt::Display,
    F: Fn(&A) -> Result<B>,
    G: Fn(&B) -> Result<A>,
{
    let target: BTreeSet<B> = codomain.into_iter().collect();
    let mut images = BTreeSet::new();
    let mut membership_failures = Vec::new();
    let mut round_trip_failures = Vec::new();
    for x in &domain {
        match forward(x) {
            Ok(y) => {
                if !target.contains(&y) {
                    push_witness(&mut membership_failures, format!("{x} -> {y} outside codomain"));
                }
                match backward(&y) {
                    Ok(back) if back == *x => {}
                    Ok(back) => push_witness(&mut round_trip_failures, format!("{x} -> {y} -> {back}")),
                    Err(e) => push_witness(&mut round_trip_failures, format!("{x} -> {y}: {e}")),
                }
                images.insert(y);
            }
            Err(e) => push_witness(&mut membership_failures, format!("{x}: {e}")),
        }
    }
    BijectionReport {
        name,
        n,
        domain_size: domain.len(),
        image_size: images.len(),
        codomain_size: target.len(),
        membership_failures,
        round_trip_failures,
    }
}

/// Enumerate the exact domain and codomain of `name` at size `n`, apply the
/// map to every element and check codomain membership, injectivity,
/// surjectivity and the round trip through the inverse.
pub fn verify_bijection(name: BijectionName, n: usize) -> BijectionReport {
    match name {
        BijectionName::F => check_maps(
            name,
            n,
            colored_class(n, &f_domain()),
            vincular_class(n + 1, &f_codomain(), false),
            bij_f,
            bij_f_inv,
        ),
        BijectionName::Tau => check_maps(
            name,
            n,
            iter_partitions(n)
                .map(|w| ColoredPartition::uncolored(w).expect("generated RGS"))
                .collect(),
            vincular_class(n, &vincular(&["1-23"]), false),
            |p| Ok(claesson_tau(p)),
            tau_inv,
        ),
        BijectionName::G => check_maps(
            name,
            n,
            colored_class(n, &g_domain()),
            vincular_class(n + 2, &vincular(&["12-3"]), true),
            bij_g,
            g_inv,
        ),
        BijectionName::Class2 => check_maps(
            name,
            n,
            colored_class(n, &class2_domain()),
            colored_class(n, &class2_codomain()),
            bij_class2_pairs,
            bij_class2_pairs_inv,
        ),
        BijectionName::Class3a | BijectionName::Class3b => {
            let v = if name == BijectionName::Class3a {
                Class3Variant::Structural
            } else {
                Class3Variant::ColorSwap
            };
            check_maps(
                name,
                n,
                colored_class(n, &v.domain()),
                colored_class(n, &v.codomain()),
                |s| bij_class3_triples(s, v),
                |s| bij_class3_triples_inv(s, v),
            )
        }
    }
}

/// In a `{12-3, 214-3}`-avoider whose largest entry sits at 1-based
/// position `j >= 3`, the first `j - 2` entries are `n, n-1, ..., n+3-j`
/// where `n + 1` is the length.
pub fn has_forced_initial_run(q: &Permutation) -> bool {
    let e = q.entries();
    let m = e.len() as u32;
    match q.position_of(m) {
        Some(p) if p >= 2 => e[..p - 1]
            .iter()
            .enumerate()
            .all(|(t, &v)| v == m - 1 - t as u32),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(s: &str) -> ColoredPartition {
        ColoredPartition::parse_blocks(s, Some(2)).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn f_worked_example() {
        let sigma = blocks("1^24^1/2^1/3^26^1/5^1/7^2");
        assert_eq!(bij_f(&sigma).unwrap(), perm("73861542"));
        assert_eq!(bij_f_inv(&perm("73861542")).unwrap(), sigma);
        assert_eq!(bij_f(&blocks("1^23^1/2^1")).unwrap(), perm("1432"));
        assert_eq!(bij_f_inv(&perm("1432")).unwrap(), blocks("2^1/1^23^1"));
        assert_eq!(bij_f(&blocks("1^23^1/2^1/4^1")).unwrap(), perm("51432"));
        assert_eq!(bij_f(&blocks("1^24^1/2^1/3^26^1/5^1")).unwrap(), perm("3761542"));
    }

    #[test]
    fn f_base_cases() {
        assert_eq!(bij_f(&ColoredPartition::empty(2)).unwrap(), perm("1"));
        assert_eq!(bij_f(&blocks("1^1")).unwrap(), perm("21"));
        assert_eq!(bij_f(&blocks("1^2")).unwrap(), perm("12"));
        assert_eq!(bij_f_inv(&perm("21")).unwrap(), blocks("1^1"));
        assert_eq!(bij_f_inv(&perm("12")).unwrap(), blocks("1^2"));
        assert!(bij_f_inv(&perm("1")).unwrap().is_empty());
    }

    #[test]
    fn f_rejects_outside_domain() {
        assert!(matches!(
            bij_f(&blocks("1^12^1")),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            bij_f_inv(&perm("123")),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn f_bijective_small() {
        for n in 0..=6 {
            let r = verify_bijection(BijectionName::F, n);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn initial_run_structure() {
        for m in 1..=7 {
            for q in vincular_class(m, &f_codomain(), false) {
                assert!(has_forced_initial_run(&q), "{q}");
            }
        }
        assert!(!has_forced_initial_run(&perm("2314")));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(claesson_tau(&blocks("1^1/2^1/3^1")), perm("321"));
        assert_eq!(claesson_tau(&blocks("1^12^13^1")), perm("132"));
        let r = verify_bijection(BijectionName::Tau, 4);
        assert!(r.passed());
        assert_eq!(r.image_size, 15);
    }

    #[test]
    fn g_examples() {
        assert_eq!(bij_g(&blocks("1^2")).unwrap(), perm("231"));
        let r = verify_bijection(BijectionName::G, 3);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.image_size, 20);
    }

    #[test]
    fn class2_examples() {
        let one = ColoredPartition::parse_word("1^11^1", Some(2)).unwrap();
        assert_eq!(bij_class2_pairs(&one).unwrap(), one);
        let two = ColoredPartition::parse_word("1^12^2", Some(2)).unwrap();
        let merged = ColoredPartition::parse_word("1^11^2", Some(2)).unwrap();
        assert_eq!(bij_class2_pairs(&two).unwrap(), merged);
        for n in 1..=6 {
            let r = verify_bijection(BijectionName::Class2, n);
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.domain_size, (1 << n) + n - 1);
        }
    }

    #[test]
    fn class3_maps() {
        let flat = blocks("1^1/2^1/3^1");
        let image = bij_class3_triples(&flat, Class3Variant::Structural).unwrap();
        assert_eq!(image.block_count(), 1);
        assert!(image.colors().windows(2).all(|w| w[0] == w[1]));
        for n in 1..=6 {
            for name in [BijectionName::Class3a, BijectionName::Class3b] {
                let r = verify_bijection(name, n);
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.domain_size, 2 * n);
            }
        }
    }

    #[test]
    fn swapping_in_every_multi_element_block_fails() {
        // Swapping colors in all blocks with more than one element, rather
        // than in blocks that use both colors, leaves the codomain.
        let swap_big = |s: &ColoredPartition| {
            let mut colors = s.colors().to_vec();
            for b in s.blocks().into_iter().filter(|b| b.len() > 1) {
                for e in b {
                    colors[e - 1] = 3 - colors[e - 1];
                }
            }
            ColoredPartition::new(s.word().to_vec(), colors, 2).unwrap()
        };
        let target = Class3Variant::ColorSwap.codomain();
        let bad = colored_class(4, &Class3Variant::ColorSwap.domain())
            .iter()
            .map(swap_big)
            .filter(|s| !avoids_all(s, &target, Sense::Pattern))
            .count();
        assert!(bad > 0);
    }

    #[test]
    fn names_parse() {
        for b in BijectionName::ALL {
            assert_eq!(b.as_str().parse::<BijectionName>().unwrap(), b);
        }
        assert!("h".parse::<BijectionName>().is_err());
    }
}
