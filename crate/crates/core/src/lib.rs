//! Pattern avoidance in colored set partitions.
//!
//! Colored partitions are stored as restricted growth strings with a color
//! word; patterns may be compared in the pattern, EQ or LT sense. On top of
//! that the crate counts avoiders (in parallel, with pruning for pair
//! patterns), groups pattern sets into Wilf classes, evaluates the known
//! closed forms and implements the bijections between several avoidance
//! classes and vincular-pattern-avoiding permutations.

mod error;
mod notation;

pub mod avoidance;
pub mod bijections;
pub mod checks;
pub mod enumerate;
pub mod formulas;
pub mod partition;
pub mod pattern;
pub mod perm;
pub mod tables;

pub use avoidance::{avoids_all, contains_colored, contains_vincular, Sense};
pub use enumerate::{
    avoidance_sequence, count_avoiders, count_avoiders_with, iter_colored, iter_partitions,
    wilf_classify, AvoidanceSequence, CountOptions, WilfClassification,
};
pub use error::{Error, Result};
pub use formulas::{bell, closed_form, kcolor_count, lookup_formula, stirling2, FormulaEntry};
pub use partition::{reduce, ColoredPartition};
pub use pattern::{ColoredPattern, PatternSet};
pub use perm::{Permutation, VincularPattern};
