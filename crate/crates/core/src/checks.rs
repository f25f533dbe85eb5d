//! Composite consistency checks: brute-force counts against the published
//! tables and the closed forms, the color symmetries, the EQ/pattern set
//! identities and every bijection.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bijections::{verify_bijection, BijectionName};
use crate::enumerate::{
    count_avoiders_with, pair_pattern_subsets, verify_eq_pattern_identities, verify_lemma1,
    wilf_classify, CountOptions,
};
use crate::error::Result;
use crate::formulas::{closed_form, kcolor_count, pair_4_recurrence, registry};
use crate::pattern::PatternSet;
use crate::tables::{rows, Family};
use crate::Sense;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, failures: Vec<String>, ok_detail: String) -> Self {
        let passed = failures.is_empty();
        Self {
            name: name.into(),
            passed,
            detail: if passed { ok_detail } else { failures.join("; ") },
        }
    }
}

/// Classify all subsets of the six pair patterns of the family's size and
/// compare classes and sequences with the fixture rows. A row printed from
/// `n = 0` is compared through its closed form.
pub fn check_table(family: Family, n_max: usize, opts: &CountOptions) -> Result<CheckOutcome> {
    let family_sets = pair_pattern_subsets(family.set_size());
    let found = wilf_classify(&family_sets, Sense::Pattern, 2, n_max, opts)?;
    let table: Vec<_> = rows(family).collect();
    let mut failures = Vec::new();
    if found.classes.len() != table.len() {
        failures.push(format!(
            "{} classes found, {} listed",
            found.classes.len(),
            table.len()
        ));
    }
    let mut notes = Vec::new();
    for row in &table {
        let members: BTreeSet<PatternSet> = row.member_sets().into_iter().collect();
        let Some(class) = found
            .classes
            .iter()
            .find(|c| c.members.iter().cloned().collect::<BTreeSet<_>>() == members)
        else {
            failures.push(format!("{}: members do not form one class", row.label()));
            continue;
        };
        for n in 1..=n_max {
            let got = class.counts[n - 1];
            let expected = if row.first_n == 0 {
                let entry = registry()
                    .iter()
                    .find(|e| e.family == row.family && e.class == row.class)
                    .expect("every row has a formula");
                Some(closed_form(entry, n)?)
            } else {
                row.printed_at(n)
            };
            if let Some(e) = expected {
                if e != got {
                    failures.push(format!("{} n = {n}: counted {got}, expected {e}", row.label()));
                }
            }
        }
        if row.first_n == 0 {
            notes.push(format!("{} listed from n = 0", row.label()));
        }
    }
    let mut detail = format!("{} classes agree up to n = {n_max}", table.len());
    if !notes.is_empty() {
        detail.push_str(&format!(" ({})", notes.join(", ")));
    }
    Ok(CheckOutcome::new(
        format!("table {}", family.name()),
        failures,
        detail,
    ))
}

/// Every registered closed form against brute force, for every member set.
pub fn check_formulas(n_max: usize, opts: &CountOptions) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for entry in registry() {
        for set in &entry.members {
            for n in entry.min_n.max(1)..=n_max {
                let want = closed_form(entry, n)?;
                let got = count_avoiders_with(n, 2, set, Sense::Pattern, opts)?;
                checked += 1;
                if want != got {
                    failures.push(format!("{} {{{set}}} n = {n}: formula {want}, count {got}", entry.id));
                }
            }
        }
    }
    Ok(CheckOutcome::new(
        "formulas",
        failures,
        format!("{checked} values agree"),
    ))
}

/// The pair class 4 recurrence up to `n_rec`, and its agreement with brute
/// force up to `n_max`.
pub fn check_recurrence(n_rec: usize, n_max: usize, opts: &CountOptions) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for n in 3..=n_rec {
        let lhs = pair_4_recurrence(n)?;
        let rhs = 2 * pair_4_recurrence(n - 1)? + (n as u64 - 1) * pair_4_recurrence(n - 2)?;
        if lhs != rhs {
            failures.push(format!("n = {n}: {lhs} != {rhs}"));
        }
    }
    let set: PatternSet = "1^11^1,1^11^2".parse()?;
    for n in 1..=n_max {
        let got = count_avoiders_with(n, 2, &set, Sense::Pattern, opts)?;
        let want = pair_4_recurrence(n)?;
        if got != want {
            failures.push(format!("n = {n}: recurrence {want}, count {got}"));
        }
    }
    Ok(CheckOutcome::new(
        "recurrence",
        failures,
        format!("holds for n <= {n_rec}, matches counts for n <= {n_max}"),
    ))
}

pub fn check_color_symmetries(n_max: usize, opts: &CountOptions) -> Result<CheckOutcome> {
    let failures = match verify_lemma1(2, n_max, opts) {
        Ok(_) => Vec::new(),
        Err(e) => vec![e.to_string()],
    };
    Ok(CheckOutcome::new(
        "color symmetries",
        failures,
        format!("6 patterns, n <= {n_max}"),
    ))
}

pub fn check_eq_identities(n_max: usize) -> CheckOutcome {
    let failures = match verify_eq_pattern_identities(n_max) {
        Ok(_) => Vec::new(),
        Err(e) => vec![e.to_string()],
    };
    CheckOutcome::new(
        "eq/pattern identities",
        failures,
        format!("4 set identities, n <= {n_max}"),
    )
}

/// Largest size each bijection is checked at by default.
pub fn bijection_bound(name: BijectionName) -> usize {
    match name {
        BijectionName::G => 6,
        BijectionName::F => 7,
        _ => 8,
    }
}

pub fn check_bijection(name: BijectionName, n_max: usize) -> CheckOutcome {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for n in 0..=n_max {
        let r = verify_bijection(name, n);
        if !r.passed() {
            failures.push(format!(
                "n = {n}: domain {}, image {}, codomain {}, {:?} {:?}",
                r.domain_size, r.image_size, r.codomain_size, r.membership_failures, r.round_trip_failures
            ));
        }
        sizes.push(r.domain_size.to_string());
    }
    CheckOutcome::new(
        format!("bijection {name}"),
        failures,
        format!("domain sizes {}", sizes.join(", ")),
    )
}

pub fn check_kcolor(opts: &CountOptions) -> Result<CheckOutcome> {
    let set: PatternSet = "1^11^2,1^12^2,1^21^1".parse()?;
    let mut failures = Vec::new();
    for (k, n_max) in [(2, 7), (3, 6), (4, 5)] {
        for n in 1..=n_max {
            let want = kcolor_count(n, k)?;
            let got = count_avoiders_with(n, k, &set, Sense::Pattern, opts)?;
            if want != got {
                failures.push(format!("k = {k}, n = {n}: formula {want}, count {got}"));
            }
        }
    }
    Ok(CheckOutcome::new(
        "k colors",
        failures,
        "k = 2, 3, 4 agree".into(),
    ))
}

/// Run everything with brute-force sizes capped at `n_max`.
pub fn run_all(n_max: usize, opts: &CountOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = vec![
        check_table(Family::Pairs, n_max, opts)?,
        check_table(Family::Triples, n_max, opts)?,
        check_table(Family::Quadruples, n_max, opts)?,
        check_formulas(n_max, opts)?,
        check_recurrence(12, n_max, opts)?,
        check_color_symmetries(n_max, opts)?,
        check_eq_identities(n_max),
        check_kcolor(opts)?,
    ];
    for name in BijectionName::ALL {
        out.push(check_bijection(name, n_max.min(bijection_bound(name))));
    }
    Ok(out)
}
