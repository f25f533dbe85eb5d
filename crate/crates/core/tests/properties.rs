use std::sync::OnceLock;

use proptest::prelude::*;

use ppl_core::bijections::{
    bij_f, bij_f_inv, bij_g, claesson_tau, f_domain, g_domain, g_inv, tau_inv,
};
use ppl_core::enumerate::iter_colored;
use ppl_core::partition::rgs_violation;
use ppl_core::pattern::canonical_pair_patterns;
use ppl_core::{
    avoids_all, contains_colored, count_avoiders_with, reduce, ColoredPartition, CountOptions,
    PatternSet, Permutation, Sense,
};

fn partition(max_len: usize, k: u32) -> impl Strategy<Value = ColoredPartition> {
    prop::collection::vec((0u32..16, 1..=k), 0..=max_len).prop_map(move |raw| {
        let mut word = Vec::with_capacity(raw.len());
        let mut top = 0;
        for &(choice, _) in &raw {
            let b = choice % (top + 1) + 1;
            top = top.max(b);
            word.push(b);
        }
        let colors = raw.iter().map(|&(_, c)| c).collect();
        ColoredPartition::new(word, colors, k).unwrap()
    })
}

fn permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn pattern_set() -> impl Strategy<Value = PatternSet> {
    (1usize..64).prop_map(|mask| {
        canonical_pair_patterns()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .collect()
    })
}

fn domain(set: fn() -> PatternSet, n_max: usize) -> &'static [ColoredPartition] {
    Box::leak(
        (0..=n_max)
            .flat_map(|n| iter_colored(n, 2))
            .filter(|s| avoids_all(s, &set(), Sense::Pattern))
            .collect::<Vec<_>>()
            .into_boxed_slice(),
    )
}

fn f_members() -> &'static [ColoredPartition] {
    static CELL: OnceLock<&'static [ColoredPartition]> = OnceLock::new();
    CELL.get_or_init(|| domain(f_domain, 7))
}

fn g_members() -> &'static [ColoredPartition] {
    static CELL: OnceLock<&'static [ColoredPartition]> = OnceLock::new();
    CELL.get_or_init(|| domain(g_domain, 6))
}

proptest! {
    #[test]
    fn reduce_is_idempotent_and_order_preserving(v in prop::collection::vec(0i64..50, 0..12)) {
        let r = reduce(&v);
        prop_assert_eq!(reduce(&r), r.clone());
        for i in 0..v.len() {
            for j in 0..v.len() {
                prop_assert_eq!(v[i].cmp(&v[j]), r[i].cmp(&r[j]));
            }
        }
    }

    #[test]
    fn word_notation_round_trips(s in partition(10, 3)) {
        let back = ColoredPartition::parse_word(&s.to_string(), Some(3)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn block_notation_round_trips(s in partition(10, 3)) {
        let back = ColoredPartition::parse_blocks(&s.to_block_notation(), Some(3)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn canonize_sub_is_canonical(s in partition(9, 2), mask in any::<u16>()) {
        let idx: Vec<usize> = (1..=s.len()).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let sub = s.canonize_sub(&idx).unwrap();
        prop_assert_eq!(sub.len(), idx.len());
        prop_assert_eq!(rgs_violation(sub.word()), None);
        for (j, &i) in idx.iter().enumerate() {
            prop_assert_eq!(sub.color_of(j + 1), s.color_of(i));
        }
    }

    #[test]
    fn avoidance_is_inherited_by_subpartitions(
        s in partition(8, 2),
        set in pattern_set(),
        mask in any::<u8>(),
    ) {
        if avoids_all(&s, &set, Sense::Pattern) {
            let idx: Vec<usize> = (1..=s.len()).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let sub = s.canonize_sub(&idx).unwrap();
            prop_assert!(avoids_all(&sub, &set, Sense::Pattern));
        }
    }

    #[test]
    fn eq_containment_implies_pattern_containment(s in partition(8, 2), set in pattern_set()) {
        for p in &set {
            if contains_colored(&s, p, Sense::Eq) {
                prop_assert!(contains_colored(&s, p, Sense::Pattern));
                prop_assert!(contains_colored(&s, p, Sense::Lt));
            }
        }
    }

    #[test]
    fn color_symmetries_are_involutions(s in partition(10, 3)) {
        prop_assert_eq!(s.color_reverse().color_reverse(), s.clone());
        prop_assert_eq!(s.color_complement().color_complement(), s);
    }

    #[test]
    fn permutation_text_and_symmetries(q in permutation(9)) {
        prop_assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q.clone());
        prop_assert_eq!(q.reverse().reverse(), q.clone());
        prop_assert_eq!(q.complement().complement(), q);
    }

    #[test]
    fn pruned_and_naive_counts_agree(set in pattern_set(), n in 1usize..=6, jobs in 1usize..=3) {
        let fast = count_avoiders_with(n, 2, &set, Sense::Pattern, &CountOptions::default().with_jobs(jobs)).unwrap();
        let slow = count_avoiders_with(n, 2, &set, Sense::Pattern, &CountOptions::naive()).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn tau_round_trips(s in partition(10, 1)) {
        let q = claesson_tau(&s);
        prop_assert_eq!(q.len(), s.len());
        prop_assert_eq!(tau_inv(&q).unwrap(), s);
    }

    #[test]
    fn f_round_trips(i in any::<prop::sample::Index>()) {
        let s = &f_members()[i.index(f_members().len())];
        let q = bij_f(s).unwrap();
        prop_assert_eq!(q.len(), s.len() + 1);
        prop_assert_eq!(&bij_f_inv(&q).unwrap(), s);
    }

    #[test]
    fn g_round_trips(i in any::<prop::sample::Index>()) {
        let s = &g_members()[i.index(g_members().len())];
        let q = bij_g(s).unwrap();
        prop_assert_eq!(q.len(), s.len() + 2);
        prop_assert_eq!(&g_inv(&q).unwrap(), s);
    }
}

#[test]
fn canonize_sub_exhaustive() {
    for n in 0..=8 {
        for word in ppl_core::enumerate::iter_partitions(n) {
            let s = ColoredPartition::uncolored(word).unwrap();
            for mask in 0u32..1 << n {
                let idx: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let sub = s.canonize_sub(&idx).unwrap();
                assert_eq!(sub.len(), idx.len());
                assert_eq!(rgs_violation(sub.word()), None, "{s} {idx:?}");
            }
        }
    }
}

#[test]
fn notation_round_trips_exhaustive() {
    for n in 0..=10 {
        for word in ppl_core::enumerate::iter_partitions(n) {
            let s = ColoredPartition::uncolored(word).unwrap();
            assert_eq!(ColoredPartition::parse_blocks(&s.to_block_notation(), Some(1)).unwrap(), s);
            assert_eq!(ColoredPartition::parse_word(&s.to_string(), Some(1)).unwrap(), s);
        }
    }
}
