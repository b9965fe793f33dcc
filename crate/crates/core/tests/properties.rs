use num_bigint::BigUint;
use proptest::prelude::*;

use rnass::codec::{
    parse_variant, print_variant, structure_to_variant, variant_to_structure, Alphabet, MotzkinWord,
    VariantTree,
};
use rnass::counting::{count_explicit, CountTable, ExplicitCounts, StructureParams};
use rnass::oracle::{brute_force_enumerate, is_valid_structure};
use rnass::ranking::{
    enumerate, rank_structure, rank_variant, unrank_structure, unrank_variant, RandomSource, Rank,
};

/// Admissible `(n, m)` with at least one structure.
fn context(max_n: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..=max_n).prop_flat_map(|n| {
        let max_m = if n == 0 { 0 } else { (n - 1) / 2 };
        (Just(n), 0..=max_m)
    })
}

/// A uniform structure of a random context, drawn through its rank.
fn structure(max_n: usize) -> impl Strategy<Value = MotzkinWord> {
    (context(max_n), any::<u64>()).prop_map(|((n, m), seed)| {
        let total = count_explicit(StructureParams::new(n, m));
        let rank = rnass::ranking::seeded_source(seed).next_below(&total);
        unrank_structure(&rank, n, m, &ExplicitCounts).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn word_variant_word(word in structure(120)) {
        let variant = structure_to_variant(&word);
        prop_assert_eq!(variant.pair_count(), word.pairs());
        prop_assert_eq!(variant_to_structure(&variant, word.len(), word.pairs()).unwrap(), word);
    }

    #[test]
    fn variant_text_round_trip(word in structure(120)) {
        let variant = structure_to_variant(&word);
        let text = print_variant(&variant);
        prop_assert_eq!(&parse_variant(&text).unwrap(), &variant);
        prop_assert_eq!(print_variant(&parse_variant(&text).unwrap()), text);
    }

    #[test]
    fn structure_text_round_trip(word in structure(120)) {
        for alphabet in [Alphabet::Star, Alphabet::Dot] {
            let text = word.to_text(alphabet);
            prop_assert_eq!(&MotzkinWord::parse(&text, Alphabet::Dot).unwrap(), &word);
        }
    }

    #[test]
    fn rank_inverts_unrank((n, m) in context(300), seed in any::<u64>()) {
        let table = CountTable::build(n, m);
        let total = table.get(n, m).unwrap().clone();
        let rank = rnass::ranking::seeded_source(seed).next_below(&total);
        let word = unrank_structure(&rank, n, m, &table).unwrap();
        prop_assert!(is_valid_structure(word.as_bytes(), n, m));
        prop_assert_eq!(rank_structure(&word, &table).unwrap(), rank);
    }

    /// Words starting with '*' rank below S(n-1, m); pair-led words at or above.
    #[test]
    fn star_branch_ranks_first(word in structure(120)) {
        prop_assume!(word.pairs() > 0);
        let (n, m) = (word.len(), word.pairs());
        let table = CountTable::build(n, m);
        let rank = rank_structure(&word, &table).unwrap();
        let star_count = table.get(n - 1, m).unwrap();
        prop_assert_eq!(word.as_bytes()[0] == b'*', &rank < star_count);
    }
}

fn block_of(variant: &VariantTree) -> Option<(usize, usize)> {
    match variant {
        VariantTree::Pair {
            tail_pairs,
            tail_len,
            ..
        } => Some((*tail_pairs, *tail_len)),
        _ => None,
    }
}

#[test]
fn pair_blocks_are_ordered_lexicographically() {
    for n in 1..=13 {
        for m in 1..=(n - 1) / 2 {
            let table = CountTable::build(n, m);
            let words: Vec<_> = enumerate(n, m, &Rank::default(), table.get(n, m).unwrap(), &table)
                .unwrap()
                .collect();
            let blocks: Vec<_> = words
                .iter()
                .filter_map(|w| block_of(&structure_to_variant(w)))
                .collect();
            assert!(blocks.windows(2).all(|w| w[0] <= w[1]), "({n}, {m})");
            // Star-led words come first.
            let first_pair = words.iter().position(|w| w.as_bytes()[0] == b'(').unwrap();
            assert!(words[first_pair..].iter().all(|w| w.as_bytes()[0] == b'('));
        }
    }
}

#[test]
fn unranked_set_equals_oracle_up_to_sixteen() {
    for n in 15..=16 {
        for m in 0..=n / 2 {
            let oracle = brute_force_enumerate(n, m).unwrap();
            let table = CountTable::build(n, m);
            let mut unranked: Vec<_> =
                enumerate(n, m, &Rank::default(), table.get(n, m).unwrap(), &table)
                    .unwrap()
                    .collect();
            unranked.sort();
            assert_eq!(unranked, oracle.words, "({n}, {m})");
        }
    }
}

#[test]
fn twelve_five_has_twenty_one_structures() {
    let oracle = brute_force_enumerate(12, 5).unwrap();
    assert_eq!(oracle.len(), 21);
    assert_eq!(count_explicit(StructureParams::new(12, 5)), BigUint::from(21u32));
    let table = CountTable::build(12, 5);
    let mut words: Vec<_> = (0..21u32)
        .map(|r| unrank_structure(&r.into(), 12, 5, &table).unwrap())
        .collect();
    words.sort();
    words.dedup();
    assert_eq!(words, oracle.words);
}

#[test]
fn unique_five_two_structure() {
    let oracle = brute_force_enumerate(5, 2).unwrap();
    let table = CountTable::build(5, 2);
    let listed: Vec<_> = enumerate(5, 2, &0u32.into(), &1u32.into(), &table)
        .unwrap()
        .collect();
    assert_eq!(listed, oracle.words);
}

#[test]
fn ranks_beyond_u64() {
    let (n, m) = (400, 120);
    let table = CountTable::build(n, m);
    let last = table.get(n, m).unwrap() - 1u32;
    assert!(last.bits() > 64);
    let word = unrank_structure(&last, n, m, &table).unwrap();
    assert_eq!(rank_structure(&word, &table).unwrap(), last);
    let variant = unrank_variant(&last, n, m, &table).unwrap();
    assert_eq!(rank_variant(&variant, n, m, &ExplicitCounts).unwrap(), last);
}

#[test]
fn long_star_spine() {
    // Rank 0 is the word with the longest leading run of unpaired bases.
    let (n, m) = (20_000, 2);
    let table = CountTable::build(n, m);
    let word = unrank_structure(&Rank::default(), n, m, &table).unwrap();
    assert!(word.as_str().starts_with(&"*".repeat(n - 5)));
    assert_eq!(rank_structure(&word, &table).unwrap(), Rank::default());
}
