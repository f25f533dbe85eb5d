//! Exact number engines and the closed forms for every Wilf class of
//! 2-colored pair patterns.
//!
//! All arithmetic is on `u64` with checked operations; overflow is an
//! [`Error::Overflow`], never a wrapped value.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::PatternSet;
use crate::tables::{self, Family, TableRow};

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow("sum"))
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow("product"))
}

fn pow2(e: usize) -> Result<u64> {
    u32::try_from(e)
        .ok()
        .and_then(|e| 1u64.checked_shl(e).filter(|_| e < 64))
        .ok_or(Error::Overflow("power of two"))
}

/// Bell numbers up to the largest one that fits in a `u64`, built from the
/// Bell triangle once.
fn bell_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut bells = vec![1u64];
        let mut row = vec![1u64];
        loop {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(*row.last().expect("nonempty row"));
            for &x in &row {
                match next.last().expect("nonempty").checked_add(x) {
                    Some(v) => next.push(v),
                    None => return bells,
                }
            }
            bells.push(next[0]);
            row = next;
        }
    })
}

/// The Bell number `B(n)`, with `B(0) = 1`.
pub fn bell(n: usize) -> Result<u64> {
    bell_table()
        .get(n)
        .copied()
        .ok_or(Error::Overflow("Bell number"))
}

/// Stirling number of the second kind `S(n, j)`.
pub fn stirling2(n: usize, j: usize) -> Result<u64> {
    if j > n {
        return Ok(0);
    }
    let mut row = vec![1u64];
    for m in 1..=n {
        let mut next = vec![0u64; (m + 1).min(j + 1)];
        for (i, slot) in next.iter_mut().enumerate().skip(1) {
            let stay = match row.get(i) {
                Some(&v) => mul(i as u64, v)?,
                None => 0,
            };
            *slot = add(stay, row[i - 1])?;
        }
        row = next;
    }
    Ok(row[j])
}

pub fn binomial(n: usize, k: usize) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // C(n, i+1) is exact here and grows with i, so the first overflow is final.
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial"));
        }
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}

pub fn factorial(n: usize) -> Result<u64> {
    (1..=n as u64).try_fold(1u64, mul)
}

/// Partial matchings between an `a`-set and a `b`-set:
/// `Σ_j C(a,j) C(b,j) j!`, where terms vanish for `j > min(a, b)`.
fn matchings(a: usize, b: usize) -> Result<u64> {
    let mut total = 0;
    for j in 0..=a.min(b) {
        total = add(total, mul(mul(binomial(a, j)?, binomial(b, j)?)?, factorial(j)?)?)?;
    }
    Ok(total)
}

fn piecewise(n: usize, small: &[u64], rest: u64) -> u64 {
    n.checked_sub(1)
        .and_then(|i| small.get(i))
        .copied()
        .unwrap_or(rest)
}

fn single_different_blocks(n: usize) -> Result<u64> {
    Ok(pow2(n + 1)? - 2)
}

fn pair_1(n: usize) -> Result<u64> {
    Ok(piecewise(n, &[2, 4], 0))
}

fn pair_2(n: usize) -> Result<u64> {
    add(pow2(n)?, n as u64 - 1)
}

fn pair_3(n: usize) -> Result<u64> {
    let mut total = 1;
    for i in 1..=n {
        total = add(total, matchings(i - 1, n - i)?)?;
        if i >= 2 {
            total = add(total, mul(i as u64 - 1, matchings(i - 2, n - i)?)?)?;
        }
        if i < n {
            total = add(total, matchings(i - 1, n - i - 1)?)?;
        }
    }
    Ok(total)
}

/// `a_n = 2a_{n-1} + (n-1)a_{n-2}`, `a_1 = 2`, `a_2 = 5`.
pub fn pair_4_recurrence(n: usize) -> Result<u64> {
    let (mut prev, mut cur) = (2u64, 5u64);
    match n {
        1 => return Ok(prev),
        2 => return Ok(cur),
        _ => {}
    }
    for m in 3..=n {
        let next = add(mul(2, cur)?, mul(m as u64 - 1, prev)?)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn pair_5(n: usize) -> Result<u64> {
    add(pow2(n)?, mul(2, bell(n)? - 1)?)
}

/// The double-sum formula, meaningful for `n >= 2`.
pub fn pair_6_formula(n: usize) -> Result<u64> {
    let mut total = add(mul(2, bell(n)?)?, bell(n - 1)?)?;
    for j in 2..=n {
        for k in 0..=n - j {
            total = add(total, bell(n - j - k)?)?;
        }
    }
    for j in 2..n {
        let m = n - j;
        let mut inner = bell(m)?;
        for k in 1..=m {
            inner = add(inner, mul(add(k as u64, binomial(m, k)?)?, bell(m - k)?)?)?;
        }
        total = add(total, mul(bell(j - 1)?, inner)?)?;
    }
    Ok(total)
}

fn pair_6(n: usize) -> Result<u64> {
    // The formula gives 3 at n = 1; the true count is 2.
    if n == 1 {
        Ok(2)
    } else {
        pair_6_formula(n)
    }
}

fn pair_7(n: usize) -> Result<u64> {
    mul(n as u64 + 1, bell(n)?)
}

fn pair_8(n: usize) -> Result<u64> {
    let mut total = 0;
    for k in 0..=n {
        total = add(total, mul(pow2(k)?, stirling2(n, k)?)?)?;
    }
    Ok(total)
}

fn triple_1(n: usize) -> Result<u64> {
    Ok(piecewise(n, &[2, 3], 0))
}

fn triple_2(n: usize) -> Result<u64> {
    Ok(piecewise(n, &[2, 4], 2))
}

fn triple_3(n: usize) -> Result<u64> {
    Ok(2 * n as u64)
}

fn triple_4(n: usize) -> Result<u64> {
    pow2(n)
}

fn triple_5(n: usize) -> Result<u64> {
    let mut total = 0;
    for k in 0..=n {
        total = add(total, mul(binomial(n, k)?, factorial(k / 2)?)?)?;
    }
    Ok(total)
}

fn triple_6(n: usize) -> Result<u64> {
    add(mul(2, bell(n)?)?, n as u64 - 1)
}

fn triple_7(n: usize) -> Result<u64> {
    kcolor_count(n, 2)
}

fn quad_1(n: usize) -> Result<u64> {
    Ok(piecewise(n, &[2, 2], 0))
}

fn quad_2(n: usize) -> Result<u64> {
    mul(2, bell(n)?)
}

fn quad_3(n: usize) -> Result<u64> {
    Ok(piecewise(n, &[2, 3], 2))
}

fn quad_4(n: usize) -> Result<u64> {
    Ok(n as u64 + 1)
}

fn two_monochromatic(_: usize) -> Result<u64> {
    Ok(2)
}

fn five_trivial(n: usize) -> Result<u64> {
    Ok(piecewise(n, &[2, 1], 0))
}

fn all_six(n: usize) -> Result<u64> {
    Ok(piecewise(n, &[2], 0))
}

/// `Σ_{i_1+...+i_k=n} B(i_1)...B(i_k)` over weak compositions: the number
/// of `k`-colored partitions avoiding `1^11^2, 1^12^2, 1^21^1`.
pub fn kcolor_count(n: usize, k: u32) -> Result<u64> {
    if k == 0 {
        return Ok(u64::from(n == 0));
    }
    let bells: Vec<u64> = (0..=n).map(bell).collect::<Result<_>>()?;
    let mut acc = bells.clone();
    for _ in 1..k {
        let mut next = vec![0u64; n + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            for i in 0..=m {
                *slot = add(*slot, mul(acc[i], bells[m - i])?)?;
            }
        }
        acc = next;
    }
    Ok(acc[n])
}

/// One closed form together with the pattern sets it counts.
#[derive(Debug, Clone, Serialize)]
pub struct FormulaEntry {
    pub id: String,
    pub family: Family,
    pub class: u8,
    pub members: Vec<PatternSet>,
    /// Smallest `n` the evaluator is valid for.
    pub min_n: usize,
    pub statement: &'static str,
    pub oeis: Option<&'static str>,
    #[serde(skip)]
    eval: fn(usize) -> Result<u64>,
}

impl FormulaEntry {
    pub fn validity(&self) -> String {
        format!("n >= {}", self.min_n)
    }

    pub fn label(&self) -> String {
        format!("{} class {}", self.family.name(), self.class)
    }
}

/// The entry's value at `n`.
pub fn closed_form(entry: &FormulaEntry, n: usize) -> Result<u64> {
    if n < entry.min_n {
        return Err(Error::BelowValidity {
            entry: entry.id.clone(),
            n,
            min: entry.min_n,
        });
    }
    (entry.eval)(n)
}

fn table_eval(family: Family, class: u8) -> (fn(usize) -> Result<u64>, &'static str) {
    match (family, class) {
        (Family::Pairs, 1) => (pair_1, "2, 4, then 0"),
        (Family::Pairs, 2) => (pair_2, "2^n + n - 1"),
        (Family::Pairs, 3) => (
            pair_3,
            "sum_j sum_i C(i-1,j)C(n-i,j)j! + sum_j sum_i (i-1)C(i-2,j)C(n-i,j)j! \
             + sum_j sum_i C(i-1,j)C(n-i-1,j)j! + 1",
        ),
        (Family::Pairs, 4) => (pair_4_recurrence, "a_n = 2a_{n-1} + (n-1)a_{n-2}, a_1 = 2, a_2 = 5"),
        (Family::Pairs, 5) => (pair_5, "2^n + 2(B(n) - 1)"),
        (Family::Pairs, 6) => (
            pair_6,
            "2 at n = 1; for n >= 2: 2B(n) + sum_{j=2}^n sum_{k=0}^{n-j} B(n-j-k) + B(n-1) \
             + sum_{j=2}^{n-1} B(j-1)(B(n-j) + sum_{k=1}^{n-j} (k + C(n-j,k))B(n-j-k))",
        ),
        (Family::Pairs, 7) => (pair_7, "(n+1)B(n)"),
        (Family::Pairs, 8) => (pair_8, "sum_k 2^k S(n,k)"),
        (Family::Triples, 1) => (triple_1, "2, 3, then 0"),
        (Family::Triples, 2) => (triple_2, "2, 4, then 2"),
        (Family::Triples, 3) => (triple_3, "2n"),
        (Family::Triples, 4) => (triple_4, "2^n"),
        (Family::Triples, 5) => (triple_5, "sum_k C(n,k) floor(k/2)!"),
        (Family::Triples, 6) => (triple_6, "2B(n) + n - 1"),
        (Family::Triples, 7) => (triple_7, "sum_i B(i)B(n-i)"),
        (Family::Quadruples, 1) => (quad_1, "2, 2, then 0"),
        (Family::Quadruples, 2) => (quad_2, "2B(n)"),
        (Family::Quadruples, 3) => (quad_3, "2, 3, then 2"),
        (Family::Quadruples, 4) => (quad_4, "n + 1"),
        _ => unreachable!("no table row {family:?} {class}"),
    }
}

fn sets(texts: &[&str]) -> Vec<PatternSet> {
    texts
        .iter()
        .map(|t| t.parse().expect("registry patterns parse"))
        .collect()
}

fn build_registry() -> Vec<FormulaEntry> {
    let mut out = vec![FormulaEntry {
        id: "singles-1".into(),
        family: Family::Singles,
        class: 1,
        members: sets(&["1^12^1"]),
        min_n: 1,
        statement: "2^(n+1) - 2",
        oeis: Some("A000918"),
        eval: single_different_blocks,
    }];
    out.extend(tables::TABLE_ROWS.iter().map(|row: &TableRow| {
        let (eval, statement) = table_eval(row.family, row.class);
        FormulaEntry {
            id: format!("{}-{}", row.family.name(), row.class),
            family: row.family,
            class: row.class,
            members: row.member_sets(),
            min_n: 1,
            statement,
            oeis: (row.oeis.starts_with('A')).then_some(row.oeis),
            eval,
        }
    }));
    out.push(FormulaEntry {
        id: "quintuples-1".into(),
        family: Family::Quintuples,
        class: 1,
        members: sets(&[
            "1^11^1,1^11^2,1^21^1,1^12^2,1^22^1",
            "1^12^1,1^11^2,1^21^1,1^12^2,1^22^1",
        ]),
        min_n: 1,
        statement: "2 (the two monochromatic partitions)",
        oeis: None,
        eval: two_monochromatic,
    });
    out.push(FormulaEntry {
        id: "quintuples-2".into(),
        family: Family::Quintuples,
        class: 2,
        members: sets(&[
            "1^11^1,1^12^1,1^11^2,1^21^1,1^12^2",
            "1^11^1,1^12^1,1^11^2,1^21^1,1^22^1",
            "1^11^1,1^12^1,1^11^2,1^12^2,1^22^1",
            "1^11^1,1^12^1,1^21^1,1^12^2,1^22^1",
        ]),
        min_n: 1,
        statement: "2, 1, then 0",
        oeis: None,
        eval: five_trivial,
    });
    out.push(FormulaEntry {
        id: "sextuple-1".into(),
        family: Family::Sextuple,
        class: 1,
        members: sets(&["1^11^1,1^11^2,1^21^1,1^12^1,1^12^2,1^22^1"]),
        min_n: 1,
        statement: "2, then 0",
        oeis: None,
        eval: all_six,
    });
    out
}

/// Every registered closed form.
pub fn registry() -> &'static [FormulaEntry] {
    static REGISTRY: OnceLock<Vec<FormulaEntry>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

pub fn entry_by_id(id: &str) -> Option<&'static FormulaEntry> {
    registry().iter().find(|e| e.id == id)
}

/// The entry counting 2-colored partitions avoiding `set`, if any. The set
/// is normalized first and also tried under color reversal and color
/// complement, which preserve avoider counts.
pub fn lookup_formula(set: &PatternSet) -> Option<&'static FormulaEntry> {
    let base = set.normalized();
    if base.iter().any(|p| p.len() != 2 || p.distinct_colors() > 2) {
        return None;
    }
    let mut candidates = vec![base.clone(), base.color_reverse()];
    if let Ok(c) = base.color_complement(2) {
        candidates.push(c.normalized());
        candidates.push(c.color_reverse().normalized());
    }
    candidates.iter().find_map(|s| {
        registry()
            .iter()
            .find(|e| e.members.iter().any(|m| m.normalized() == *s))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::iter_partitions;

    fn entry(id: &str) -> &'static FormulaEntry {
        entry_by_id(id).unwrap()
    }

    #[test]
    fn bell_against_enumeration() {
        assert_eq!(bell(0).unwrap(), 1);
        for n in 0..=9 {
            assert_eq!(bell(n).unwrap(), iter_partitions(n).count() as u64);
        }
        assert!(bell(200).is_err());
    }

    #[test]
    fn stirling_rows_sum_to_bell() {
        assert_eq!(stirling2(3, 2).unwrap(), 3);
        assert_eq!(stirling2(5, 0).unwrap(), 0);
        assert_eq!(stirling2(0, 0).unwrap(), 1);
        for n in 0..=15 {
            let s: u64 = (0..=n).map(|j| stirling2(n, j).unwrap()).sum();
            assert_eq!(s, bell(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn small_engines() {
        assert_eq!(binomial(10, 3).unwrap(), 120);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(62, 31).unwrap(), 465428353255261088);
        assert_eq!(factorial(5).unwrap(), 120);
        assert!(factorial(30).is_err());
        assert_eq!(matchings(2, 2).unwrap(), 7);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(entry("pairs-3"), 5).unwrap(), 46);
        assert_eq!(closed_form(entry("pairs-6"), 6).unwrap(), 695);
        assert_eq!(closed_form(entry("triples-5"), 4).unwrap(), 17);
        assert_eq!(closed_form(entry("pairs-4"), 6).unwrap(), 499);
        assert!(matches!(
            closed_form(entry("pairs-2"), 0),
            Err(Error::BelowValidity { n: 0, min: 1, .. })
        ));
    }

    #[test]
    fn pair_6_formula_misses_n_1() {
        assert_eq!(pair_6_formula(1).unwrap(), 3);
        assert_eq!(closed_form(entry("pairs-6"), 1).unwrap(), 2);
    }

    #[test]
    fn recurrence_values() {
        let a: Vec<u64> = (1..=8).map(|n| pair_4_recurrence(n).unwrap()).collect();
        assert_eq!(a, [2, 5, 14, 43, 142, 499, 1850, 7193]);
        for n in 3..=12 {
            let lhs = pair_4_recurrence(n).unwrap();
            let rhs = 2 * pair_4_recurrence(n - 1).unwrap()
                + (n as u64 - 1) * pair_4_recurrence(n - 2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kcolor_small() {
        assert_eq!(kcolor_count(3, 2).unwrap(), 14);
        assert_eq!(kcolor_count(4, 3).unwrap(), 93);
        for n in 0..8 {
            assert_eq!(kcolor_count(n, 1).unwrap(), bell(n).unwrap());
        }
    }

    #[test]
    fn formulas_reproduce_printed_rows() {
        for row in tables::TABLE_ROWS {
            let e = entry(&format!("{}-{}", row.family.name(), row.class));
            for n in 1..=6 {
                if let Some(v) = row.printed_at(n) {
                    assert_eq!(closed_form(e, n).unwrap(), v, "{} n = {n}", row.label());
                }
            }
        }
    }

    #[test]
    fn lookup() {
        let p = |s: &str| s.parse::<PatternSet>().unwrap();
        assert_eq!(lookup_formula(&p("1^12^1,1^22^1")).unwrap().id, "pairs-2");
        assert_eq!(lookup_formula(&p("1^21^1,1^12^1")).unwrap().id, "pairs-2");
        assert!(lookup_formula(&p("1^11^2")).is_none());
        assert_eq!(lookup_formula(&p("1^22^2")).unwrap().id, "singles-1");
        assert!(lookup_formula(&p("1^11^21^1")).is_none());
    }

    #[test]
    fn registry_ids_unique() {
        let mut ids: Vec<_> = registry().iter().map(|e| e.id.clone()).collect();
        let before = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }
}
