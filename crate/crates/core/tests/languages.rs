use std::collections::BTreeSet;

use landin::language::{is_prefix_closed, words};
use landin::random::{letters, random_language, seeded};
use landin::{compose_parallel, Alphabet, PrefixLanguage, Symbol, Trace};
use proptest::prelude::*;

fn sub_alphabet(mask: u8) -> Alphabet {
    letters(4)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, s)| s)
        .collect()
}

fn trace_strategy() -> impl Strategy<Value = Trace> {
    prop::collection::vec(0..4usize, 0..8).prop_map(|ix| {
        let alpha: Vec<Symbol> = letters(4).into_iter().collect();
        ix.into_iter().map(|i| alpha[i].clone()).collect()
    })
}

fn parts_strategy(
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<PrefixLanguage>> {
    (prop::collection::vec(1u8..16, n), any::<u64>()).prop_map(|(masks, seed)| {
        let mut rng = seeded(seed);
        masks
            .iter()
            .map(|&m| random_language(&mut rng, &sub_alphabet(m), 5, 3, 5))
            .collect()
    })
}

/// Membership straight from the projection definition.
fn admitted(parts: &[PrefixLanguage], s: &Trace) -> bool {
    parts.iter().all(|p| p.contains(&s.project(p.alphabet())))
}

proptest! {
    #[test]
    fn projections_commute(s in trace_strategy(), m1 in 0u8..16, m2 in 0u8..16) {
        let (a1, a2) = (sub_alphabet(m1), sub_alphabet(m2));
        let both: Alphabet = a1.intersection(&a2).cloned().collect();
        let left = s.project(&a1).project(&a2);
        prop_assert_eq!(&left, &s.project(&a2).project(&a1));
        prop_assert_eq!(&left, &s.project(&both));
    }

    #[test]
    fn composition_is_a_prefix_language(parts in parts_strategy(1..=3), depth in 0usize..6) {
        let c = compose_parallel(&parts, depth).unwrap();
        prop_assert!(c.contains(&Trace::empty()));
        prop_assert!(is_prefix_closed(c.traces()));
        let union: Alphabet = parts.iter().flat_map(|p| p.alphabet().iter().cloned()).collect();
        prop_assert_eq!(c.alphabet(), &union);
        let expected: BTreeSet<Trace> = words(&union, depth).into_iter().filter(|w| admitted(&parts, w)).collect();
        prop_assert_eq!(c.traces(), &expected);
    }

    #[test]
    fn composition_truncates_coherently(parts in parts_strategy(2..=3), j in 0usize..5, m in 0usize..5) {
        let m = m.min(j);
        let at_j = compose_parallel(&parts, j).unwrap();
        prop_assert_eq!(at_j.truncate(m), compose_parallel(&parts, m).unwrap());
    }

    #[test]
    fn composition_ignores_order(parts in parts_strategy(2..=3), depth in 0usize..5, rot in 0usize..3) {
        let mut shuffled = parts.clone();
        shuffled.reverse();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        prop_assert_eq!(compose_parallel(&parts, depth).unwrap(), compose_parallel(&shuffled, depth).unwrap());
    }

    #[test]
    fn composition_is_associative(parts in parts_strategy(3..=3), depth in 0usize..5) {
        let inner = compose_parallel(&parts[..2], depth).unwrap();
        let folded = compose_parallel(&[inner, parts[2].clone()], depth).unwrap();
        prop_assert_eq!(folded, compose_parallel(&parts, depth).unwrap());
    }
}

#[test]
fn composition_on_the_running_instance() {
    let a = |n: &[&str]| landin::alphabet(n.iter().copied()).unwrap();
    let l1 = PrefixLanguage::from_traces(
        a(&["a", "b"]),
        [Trace::parse("ab", &a(&["a", "b"])).unwrap()],
        3,
    )
    .unwrap();
    let l2 = PrefixLanguage::from_traces(
        a(&["b", "c"]),
        [Trace::parse("bc", &a(&["b", "c"])).unwrap()],
        3,
    )
    .unwrap();
    let c = compose_parallel(&[l1, l2], 3).unwrap();
    let texts: Vec<String> = c.traces().iter().map(Trace::to_text).collect();
    assert_eq!(texts, ["", "a", "ab", "abc"]);
}
