//! Property tests for the word-action laws, the subset ordering, the
//! count-vector abstraction, and the layered construction invariants.

use proptest::prelude::*;

use creachable::families::{self, RandomKind};
use creachable::{
    abstract_word, build_gamma1, decide, extend_to_level, sccs, step, Dfa, EnumerationIndex,
    StateSet, Word,
};

fn arb_dfa() -> impl Strategy<Value = Dfa> {
    (1usize..=8, 1usize..=4, any::<bool>(), any::<u64>()).prop_map(|(n, m, perm, seed)| {
        let kind = if perm {
            RandomKind::Permutation
        } else {
            RandomKind::Arbitrary
        };
        families::random(n, m, kind, seed).unwrap()
    })
}

fn arb_dfa_and_word(max_len: usize) -> impl Strategy<Value = (Dfa, Word)> {
    arb_dfa().prop_flat_map(move |dfa| {
        let m = dfa.letter_count();
        (Just(dfa), proptest::collection::vec(0..m, 0..=max_len))
            .prop_map(|(dfa, letters)| (dfa, Word::from_letters(letters)))
    })
}

fn arb_subset(n: usize) -> impl Strategy<Value = StateSet> {
    (0u64..(1u64 << n)).prop_map(StateSet::from_bits)
}

proptest! {
    #[test]
    fn defect_is_monotone_along_prefixes((dfa, word) in arb_dfa_and_word(12)) {
        let mut prefix = Word::empty();
        let mut last = 0;
        for &letter in word.letters() {
            prefix.push(letter);
            let d = dfa.defect(&prefix);
            prop_assert!(d >= last);
            last = d;
        }
        prop_assert_eq!(dfa.defect(&word), last);
    }

    #[test]
    fn excl_and_dupl_laws((dfa, word) in arb_dfa_and_word(12)) {
        let image = dfa.image(dfa.all_states(), &word);
        let excl = dfa.excl(&word);
        let dupl = dfa.dupl(&word);
        prop_assert_eq!(excl.len(), dfa.defect(&word));
        prop_assert!(excl.is_disjoint(image));
        prop_assert!(dupl.is_subset_of(image));
        prop_assert_eq!(!dupl.is_empty(), dfa.defect(&word) >= 1);
    }

    #[test]
    fn preimage_laws((dfa, word) in arb_dfa_and_word(8), raw in any::<u64>()) {
        let n = dfa.state_count();
        let subset = StateSet::from_bits(raw & StateSet::full(n).bits());
        let pre = dfa.preimage(&word, subset);
        let image_of_pre = dfa.image(pre, &word);
        prop_assert_eq!(
            image_of_pre,
            subset.intersection(dfa.image(dfa.all_states(), &word))
        );
        // Preimages of distinct states are disjoint and cover Q.
        let mut seen = StateSet::EMPTY;
        for p in 0..n {
            let fiber = dfa.preimage(&word, StateSet::singleton(p));
            prop_assert!(fiber.is_disjoint(seen));
            seen = seen.union(fiber);
        }
        prop_assert_eq!(seen, dfa.all_states());
    }

    #[test]
    fn image_composes((dfa, word) in arb_dfa_and_word(10), raw in any::<u64>(), cut in 0usize..=10) {
        let n = dfa.state_count();
        let subset = StateSet::from_bits(raw & StateSet::full(n).bits());
        let cut = cut.min(word.len());
        let u = Word::from_letters(&word.letters()[..cut]);
        let v = Word::from_letters(&word.letters()[cut..]);
        prop_assert_eq!(dfa.image(dfa.image(subset, &u), &v), dfa.image(subset, &word));
    }

    #[test]
    fn state_set_order_matches_sequence_model(a in arb_subset(12), b in arb_subset(12)) {
        let seq = |s: StateSet| s.iter().collect::<Vec<_>>();
        prop_assert_eq!(a.cmp(&b), seq(a).cmp(&seq(b)));
    }

    #[test]
    fn abstraction_is_a_congruence((dfa, word) in arb_dfa_and_word(12)) {
        let mut stepped = abstract_word(&dfa, &Word::empty());
        let mut prefix = Word::empty();
        for &letter in word.letters() {
            stepped = step(&dfa, stepped, letter);
            prefix.push(letter);
            prop_assert_eq!(stepped, abstract_word(&dfa, &prefix));
        }
        prop_assert_eq!(stepped.excl(), dfa.excl(&word));
        prop_assert_eq!(stepped.dupl(), dfa.dupl(&word));
        prop_assert_eq!(stepped.defect(), dfa.defect(&word));
    }

    #[test]
    fn enumeration_is_complete_at_desk_scale(
        n in 1usize..=6,
        m in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let dfa = families::random(n, m, RandomKind::Arbitrary, seed).unwrap();
        let cap = n.saturating_sub(1);
        let mut index = EnumerationIndex::new(&dfa);
        index.enumerate_to(&dfa, cap).unwrap();
        // Exhaustively abstract every word of length ≤ 6: each observed
        // vector of defect ≤ cap must be indexed with a valid witness.
        let mut frontier = vec![Word::empty()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for word in &frontier {
                for letter in 0..m {
                    let extended = word.appended(letter);
                    let cv = abstract_word(&dfa, &extended);
                    if cv.defect() <= cap {
                        let witness = index.witness(&cv);
                        prop_assert!(witness.is_some(), "vector of {extended:?} missing");
                        prop_assert_eq!(abstract_word(&dfa, witness.unwrap()), cv);
                    }
                    next.push(extended);
                }
            }
            frontier = next;
        }
    }

    #[test]
    fn layered_construction_grows_monotonically(dfa in arb_dfa()) {
        let n = dfa.state_count();
        let mut index = EnumerationIndex::new(&dfa);
        index.enumerate_to(&dfa, 1).unwrap();
        let mut graph = build_gamma1(&dfa, &index).unwrap();
        let mut level = 1;
        // Component id per state, for the coarsening check across levels.
        let mut previous_partition: Option<Vec<usize>> = None;
        loop {
            let info = sccs(&graph);
            let partition: Vec<usize> = (0..n)
                .map(|q| info.component_of(StateSet::singleton(q)).unwrap())
                .collect();
            if let Some(before) = &previous_partition {
                for a in 0..n {
                    for b in a + 1..n {
                        if before[a] == before[b] {
                            prop_assert_eq!(
                                partition[a], partition[b],
                                "states {},{} split after extension", a, b
                            );
                        }
                    }
                }
            }
            previous_partition = Some(partition);
            for (k, members) in graph.levels() {
                for (i, a) in members.iter().enumerate() {
                    prop_assert!(a.len() >= *k);
                    for b in &members[i + 1..] {
                        prop_assert!(a.is_disjoint(*b));
                    }
                }
            }
            for edge in graph.enforced_edges() {
                prop_assert_eq!(dfa.excl(&edge.word).len(), edge.level);
                prop_assert!(dfa.excl(&edge.word).is_subset_of(edge.source));
                prop_assert!(dfa.dupl(&edge.word).contains(edge.target));
            }
            for edge in graph.inclusion_edges() {
                prop_assert!(edge.source.is_proper_subset_of(edge.target));
            }
            if info.is_strongly_connected() || info.max_rank() < level + 1 {
                break;
            }
            let before_vertices = graph.vertices().len();
            let before_enforced = graph.enforced_edges().len();
            let before_inclusions = graph.inclusion_edges().len();
            level += 1;
            index.enumerate_to(&dfa, level).unwrap();
            extend_to_level(&mut graph, &dfa, &index, level).unwrap();
            prop_assert!(graph.vertices().len() >= before_vertices);
            prop_assert!(graph.enforced_edges().len() >= before_enforced);
            prop_assert!(graph.inclusion_edges().len() >= before_inclusions);
            prop_assert!(level <= n.max(1));
        }
        prop_assert!(level < n.max(2), "terminated past the level bound");
    }

    #[test]
    fn witness_plans_are_sound_on_small_successes(
        n in 2usize..=5,
        m in 1usize..=4,
        seed in any::<u64>(),
        raw in any::<u64>(),
    ) {
        let dfa = families::random(n, m, RandomKind::Arbitrary, seed).unwrap();
        let verdict = decide(&dfa).unwrap();
        if verdict.is_success() {
            let target = StateSet::from_bits(raw & StateSet::full(n).bits());
            if !target.is_empty() {
                let plan = creachable::reach_word(&dfa, &verdict, target).unwrap();
                prop_assert_eq!(dfa.image(dfa.all_states(), &plan.total), target);
                prop_assert!(plan.factors.len() <= n - target.len());
                for factor in &plan.factors {
                    prop_assert!(factor.defect <= verdict.level);
                }
            }
        }
    }

    #[test]
    fn oracle_entries_revalidate(n in 1usize..=6, m in 1usize..=3, seed in any::<u64>()) {
        let dfa = families::random(n, m, RandomKind::Arbitrary, seed).unwrap();
        let table = creachable::reachable_family(&dfa).unwrap();
        for &subset in table.reachable_sets() {
            let word = table.shortest_word_to(subset).unwrap();
            prop_assert_eq!(dfa.image(dfa.all_states(), &word), subset);
        }
    }
}
