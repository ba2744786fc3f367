//! Property tests over random words, networks and compositions.

use gasket_core::asymptotics::{block_profile_count, two_letter};
use gasket_core::distance::bfs_distance;
use gasket_core::geometry::{boundaries_touch, triangle_of};
use gasket_core::network::{build, index_of, neighbors_of, word_of};
use gasket_core::word::{
    are_neighbors, boundary_moves, coarsen, coarsen_steps, is_prefix, normal_decomposition,
};
use gasket_core::Word;
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u8..=3, 0..=max).prop_map(|v| Word::from_letters(&v).unwrap())
}

fn nonempty(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u8..=3, 1..=max).prop_map(|v| Word::from_letters(&v).unwrap())
}

/// Two words sharing a random prefix, so that neighbors come up often.
fn close_pair(max: usize) -> impl Strategy<Value = (Word, Word)> {
    (word(max / 2), word(max / 2), word(max / 2))
        .prop_map(|(p, a, b)| (p.concat(&a).unwrap(), p.concat(&b).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parse_display_round_trip(w in word(32)) {
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn order_matches_letter_vectors(a in word(12), b in word(12)) {
        prop_assert_eq!(a.cmp(&b), a.to_letters().cmp(&b.to_letters()));
    }

    #[test]
    fn index_round_trip(w in word(18)) {
        prop_assert_eq!(word_of(index_of(&w), 18).unwrap(), w);
    }

    #[test]
    fn neighbor_relation_symmetric((a, b) in close_pair(20)) {
        prop_assert_eq!(are_neighbors(&a, &b), are_neighbors(&b, &a));
        prop_assert!(!are_neighbors(&a, &a));
    }

    #[test]
    fn neighbors_of_is_symmetric(w in word(10)) {
        for u in neighbors_of(&w, 10).unwrap() {
            prop_assert!(are_neighbors(&w, &u), "{} {}", w, u);
            prop_assert!(neighbors_of(&u, 10).unwrap().contains(&w), "{} {}", w, u);
        }
    }

    #[test]
    fn coarsening_is_an_adjacent_prefix(w in nonempty(32)) {
        let f = coarsen(&w).unwrap();
        prop_assert!(is_prefix(&f, &w));
        prop_assert!(are_neighbors(&w, &f));
        prop_assert_eq!(coarsen_steps(&w), coarsen_steps(&f) + 1);
        // no shorter prefix is adjacent
        for m in 0..f.len() {
            prop_assert!(!are_neighbors(&w, &w.prefix(m)));
        }
    }

    #[test]
    fn omega_lipschitz_on_neighbors(w in word(12)) {
        let om = coarsen_steps(&w);
        for u in neighbors_of(&w, 12).unwrap() {
            prop_assert!(coarsen_steps(&u).abs_diff(om) <= 1, "{} {}", w, u);
        }
    }

    #[test]
    fn decomposition_round_trip(w in nonempty(32)) {
        let d = normal_decomposition(&w).unwrap();
        prop_assert_eq!(d.join(), w);
        prop_assert_eq!(d.block_count() as u32, coarsen_steps(&w));
        prop_assert!(d.blocks[0].distinct_letters() <= 2);
        for b in &d.blocks[1..] {
            prop_assert!(b.len() >= 2);
            prop_assert_eq!(b.distinct_letters(), 2);
        }
    }

    #[test]
    fn concatenation_moves((tau, sigma) in (nonempty(16), nonempty(16))) {
        let whole = boundary_moves(&tau.concat(&sigma).unwrap());
        let sum = boundary_moves(&tau) + boundary_moves(&sigma);
        prop_assert!(sum <= whole && whole <= sum + 1);
    }

    #[test]
    fn geometry_agrees_with_criteria((a, b) in close_pair(14)) {
        // a triangle touches itself, but a word is not its own neighbor
        prop_assume!(a != b);
        let ta = triangle_of(a, 14).unwrap();
        let tb = triangle_of(b, 14).unwrap();
        prop_assert_eq!(boundaries_touch(&ta, &tb).unwrap(), are_neighbors(&a, &b));
    }

    #[test]
    fn profile_count_recursion(
        first in 1usize..8,
        rest in prop::collection::vec(2usize..8, 1..6),
    ) {
        let mut c = vec![first];
        c.extend(rest);
        let (head, last) = c.split_at(c.len() - 1);
        prop_assert_eq!(
            block_profile_count(&c).unwrap(),
            two_letter(last[0]) * block_profile_count(head).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bfs_metric(a in word(6), b in word(6), c in word(6)) {
        let net = build(6).unwrap();
        let ab = bfs_distance(&net, &a, &b).unwrap();
        let bc = bfs_distance(&net, &b, &c).unwrap();
        let ac = bfs_distance(&net, &a, &c).unwrap();
        prop_assert_eq!(ab, bfs_distance(&net, &b, &a).unwrap());
        prop_assert!(ac <= ab + bc);
        prop_assert_eq!(ab == 0, a == b);
        prop_assert_eq!(bfs_distance(&net, &a, &Word::EMPTY).unwrap(), coarsen_steps(&a));
    }
}
