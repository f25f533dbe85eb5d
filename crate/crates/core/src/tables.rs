//! Published enumeration data for 2-colored partitions avoiding pairs,
//! triples and quadruples of the six canonical pair patterns.
//!
//! Each row is one Wilf class: its member pattern sets, the sequence as
//! printed for `n = 1, 2, ...`, and an OEIS identifier kept as metadata.
//!
//! The quadruple class 2 row is printed starting from `n = 0`
//! (`2, 2, 4, 10, 30` = `2B(n)` for `n = 0..4`), unlike every other row;
//! `first_n` records that.

use serde::Serialize;

use crate::pattern::PatternSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Singles,
    Pairs,
    Triples,
    Quadruples,
    Quintuples,
    Sextuple,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Singles => "singles",
            Family::Pairs => "pairs",
            Family::Triples => "triples",
            Family::Quadruples => "quadruples",
            Family::Quintuples => "quintuples",
            Family::Sextuple => "sextuple",
        }
    }

    pub fn set_size(self) -> usize {
        match self {
            Family::Singles => 1,
            Family::Pairs => 2,
            Family::Triples => 3,
            Family::Quadruples => 4,
            Family::Quintuples => 5,
            Family::Sextuple => 6,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub family: Family,
    pub class: u8,
    pub members: &'static [&'static str],
    pub printed: &'static [u64],
    /// The `n` of `printed[0]`.
    pub first_n: usize,
    pub oeis: &'static str,
}

impl TableRow {
    pub fn member_sets(&self) -> Vec<PatternSet> {
        self.members
            .iter()
            .map(|m| m.parse().expect("fixture patterns parse"))
            .collect()
    }

    /// Printed value at `n`, if the row lists one.
    pub fn printed_at(&self, n: usize) -> Option<u64> {
        n.checked_sub(self.first_n)
            .and_then(|i| self.printed.get(i))
            .copied()
    }

    pub fn label(&self) -> String {
        format!("{} class {}", self.family.name(), self.class)
    }
}

macro_rules! row {
    ($fam:ident, $class:expr, [$($m:expr),+ $(,)?], [$($v:expr),+ $(,)?], $first:expr, $oeis:expr) => {
        TableRow {
            family: Family::$fam,
            class: $class,
            members: &[$($m),+],
            printed: &[$($v),+],
            first_n: $first,
            oeis: $oeis,
        }
    };
}

pub static TABLE_ROWS: &[TableRow] = &[
    row!(Pairs, 1, ["1^11^1,1^12^1"], [2, 4, 0, 0, 0, 0], 1, "trivial"),
    row!(
        Pairs,
        2,
        [
            "1^11^2,1^12^1",
            "1^21^1,1^12^1",
            "1^12^1,1^12^2",
            "1^12^1,1^22^1"
        ],
        [2, 5, 10, 19, 36, 69],
        1,
        "A052944"
    ),
    row!(Pairs, 3, ["1^11^1,1^12^2", "1^11^1,1^22^1"], [2, 5, 10, 21, 46, 107], 1, "A208275"),
    row!(Pairs, 4, ["1^11^1,1^11^2", "1^11^1,1^21^1"], [2, 5, 14, 43, 142, 499], 1, "A005425"),
    row!(Pairs, 5, ["1^12^2,1^22^1"], [2, 6, 16, 44, 134, 468], 1, "A209629"),
    row!(Pairs, 6, ["1^11^2,1^22^1", "1^21^1,1^12^2"], [2, 6, 18, 56, 188, 695], 1, "A209797"),
    row!(Pairs, 7, ["1^11^2,1^12^2", "1^21^1,1^22^1"], [2, 6, 20, 75, 312, 1421], 1, "A052889"),
    row!(Pairs, 8, ["1^11^2,1^21^1"], [2, 6, 22, 94, 454, 2430], 1, "A001861"),
    row!(
        Triples,
        1,
        [
            "1^11^1,1^11^2,1^12^1",
            "1^11^1,1^21^1,1^12^1",
            "1^11^1,1^12^1,1^12^2",
            "1^11^1,1^12^1,1^22^1"
        ],
        [2, 3, 0, 0, 0, 0],
        1,
        "trivial"
    ),
    row!(Triples, 2, ["1^11^1,1^12^2,1^22^1"], [2, 4, 2, 2, 2], 1, "trivial"),
    row!(
        Triples,
        3,
        [
            "1^11^1,1^11^2,1^22^1",
            "1^11^1,1^21^1,1^12^2",
            "1^11^2,1^12^1,1^12^2",
            "1^21^1,1^12^1,1^22^1",
            "1^11^2,1^12^1,1^22^1",
            "1^21^1,1^12^1,1^12^2"
        ],
        [2, 4, 6, 8, 10, 12],
        1,
        "A005843"
    ),
    row!(
        Triples,
        4,
        [
            "1^11^1,1^11^2,1^21^1",
            "1^11^2,1^21^1,1^12^1",
            "1^12^1,1^12^2,1^22^1"
        ],
        [2, 4, 8, 16, 32, 64],
        1,
        "A000079"
    ),
    row!(
        Triples,
        5,
        ["1^11^1,1^11^2,1^12^2", "1^11^1,1^21^1,1^22^1"],
        [2, 4, 8, 17, 38, 90],
        1,
        "A081124"
    ),
    row!(
        Triples,
        6,
        ["1^11^2,1^12^2,1^22^1", "1^21^1,1^12^2,1^22^1"],
        [2, 5, 12, 33, 108],
        1,
        "A209798"
    ),
    row!(
        Triples,
        7,
        ["1^11^2,1^21^1,1^12^2", "1^11^2,1^21^1,1^22^1"],
        [2, 5, 14, 44, 154],
        1,
        "A014322"
    ),
    row!(
        Quadruples,
        1,
        [
            "1^11^1,1^11^2,1^21^1,1^12^1",
            "1^11^1,1^11^2,1^12^1,1^12^2",
            "1^11^1,1^21^1,1^12^1,1^22^1",
            "1^11^1,1^11^2,1^12^1,1^22^1",
            "1^11^1,1^21^1,1^12^1,1^12^2",
            "1^11^1,1^12^1,1^12^2,1^22^1"
        ],
        [2, 2, 0, 0, 0],
        1,
        "trivial"
    ),
    row!(Quadruples, 2, ["1^11^2,1^21^1,1^12^2,1^22^1"], [2, 2, 4, 10, 30], 0, "2 x A000110"),
    row!(
        Quadruples,
        3,
        ["1^11^1,1^11^2,1^12^2,1^22^1", "1^11^1,1^21^1,1^22^1,1^12^2"],
        [2, 3, 2, 2, 2],
        1,
        "trivial"
    ),
    row!(
        Quadruples,
        4,
        [
            "1^11^1,1^11^2,1^21^1,1^12^2",
            "1^11^1,1^11^2,1^21^1,1^22^1",
            "1^11^2,1^12^1,1^12^2,1^22^1",
            "1^21^1,1^12^1,1^12^2,1^22^1",
            "1^11^2,1^21^1,1^12^1,1^12^2",
            "1^11^2,1^21^1,1^12^1,1^22^1"
        ],
        [2, 3, 4, 5, 6],
        1,
        "A000027"
    ),
];

pub fn rows(family: Family) -> impl Iterator<Item = &'static TableRow> {
    TABLE_ROWS.iter().filter(move |r| r.family == family)
}
