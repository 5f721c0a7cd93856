use sufree::minimize::{is_minimal, quotient_complexity};
use sufree::ops::{concat, is_suffix_free, star};
use sufree::witnesses::{
    binary_product_left, binary_product_pair, binary_product_right, d5, d5_dialect, d6, d6_dialect, pred_word,
    reversal_witness, star_witness, verify_pred_word, Family, WitnessId,
};
use sufree::{Dfa, StateSet};

fn all_witnesses() -> Vec<(String, Dfa)> {
    let mut out = Vec::new();
    for n in 4..=8 {
        out.push((format!("d6({n})"), d6(n).unwrap()));
        out.push((format!("star({n})"), star_witness(n).unwrap()));
        out.push((format!("reversal({n})"), reversal_witness(n).unwrap()));
    }
    for n in 6..=8 {
        out.push((format!("d5({n})"), d5(n).unwrap()));
        out.push((format!("d5({n})(b,c,a)"), d5_dialect(n, "b,c,a").unwrap()));
        out.push((format!("left({n})"), binary_product_left(n).unwrap()));
        out.push((format!("right({n})"), binary_product_right(n).unwrap()));
    }
    out
}

#[test]
fn witnesses_are_minimal_suffix_free_and_non_returning() {
    for (name, d) in all_witnesses() {
        let n = d.states();
        assert!(is_minimal(&d), "{name} is not minimal");
        assert!(is_suffix_free(&d), "{name} is not suffix-free");
        assert_eq!(d.initial(), 0, "{name}");
        assert_eq!(d.empty_states(), StateSet::singleton(n - 1), "{name} empty states");
        for t in d.transformations() {
            assert_ne!(t.apply(0), 0, "{name} has a letter fixing 0");
        }
    }
}

#[test]
fn d5_letters_follow_their_cycle_notation() {
    let d = d5(6).unwrap();
    assert_eq!(d.transformation('a').unwrap().to_vec(), vec![5, 2, 3, 1, 4, 5]);
    assert_eq!(d.transformation('b').unwrap().to_vec(), vec![1, 2, 5, 4, 3, 5]);
    assert_eq!(d.transformation('c').unwrap().to_vec(), vec![5, 2, 3, 4, 1, 5]);
    assert_eq!(d.finals().to_vec(), vec![1]);
    assert_eq!(d.word_transformation("ba").unwrap().apply(0), 2);
}

#[test]
fn d6_at_four_states_has_no_a() {
    assert_eq!(d6(4).unwrap().alphabet(), &['b', 'c', 'd', 'e']);
    assert_eq!(d6(5).unwrap().alphabet(), &['a', 'b', 'c', 'd', 'e']);
    assert!(d6_dialect(4, "a,b,-,d,e").is_ok());
}

#[test]
fn right_binary_b_fixes_the_inner_states() {
    assert_eq!(binary_product_right(8).unwrap().transformation('b').unwrap().to_vec(), vec![1, 7, 2, 3, 4, 5, 6, 7]);
    let left = binary_product_left(7).unwrap();
    assert_eq!(left.transformation('b').unwrap().to_vec(), vec![1, 6, 2, 6, 6, 6, 6]);
}

#[test]
fn binary_product_meets_bound_when_coprime() {
    for (m, n) in [(7, 8), (8, 9), (6, 7)] {
        let (l, r) = binary_product_pair(m, n).unwrap();
        assert_eq!(quotient_complexity(&concat(&l, &r).unwrap()), (m - 1) * (1 << (n - 2)) + 1, "({m},{n})");
    }
}

#[test]
fn star_witness_meets_bound() {
    for n in 4..=9 {
        assert_eq!(quotient_complexity(&star(&star_witness(n).unwrap())), (1 << (n - 2)) + 1, "n={n}");
    }
}

#[test]
fn pred_word_table() {
    assert_eq!(pred_word(1, 8).unwrap(), "cabb");
    assert_eq!(pred_word(2, 8).unwrap(), "ca");
    assert_eq!(pred_word(3, 8).unwrap(), "cabbbb");
    assert_eq!(pred_word(4, 8).unwrap(), "cabbaaa");
    assert_eq!(pred_word(6, 8).unwrap(), "cabbaaabb");
    assert_eq!(pred_word(5, 8).unwrap(), "caaaa");
    assert!(pred_word(0, 8).is_err());
    assert!(pred_word(7, 8).is_err());
    assert!(pred_word(2, 5).is_err());
}

#[test]
fn pred_word_properties_hold() {
    for n in 6..=8 {
        for q in 1..=n - 2 {
            let check = verify_pred_word(q, n).unwrap();
            assert_eq!(check.left_image_of_1, 3, "q={q} n={n}");
            assert_eq!(check.right_image_of_0, q, "q={q} n={n}");
            assert!(check.unique_predecessors, "q={q} n={n}");
            assert!(check.holds());
        }
    }
}

#[test]
fn witness_ids_parse_and_round_trip() {
    for family in [Family::D5, Family::D6, Family::BinaryProductLeft, Family::BinaryProductRight] {
        let parsed: Family = family.name().parse().unwrap();
        assert_eq!(parsed, family);
        let d = WitnessId::new(family, 7, None).build().unwrap();
        assert_eq!(Dfa::from_json(&d.to_json()).unwrap(), d);
    }
    assert!(WitnessId::new(Family::D5, 5, None).build().is_err());
    let x = WitnessId::new(Family::D6, 6, Some("b,a,-,d,e")).build().unwrap();
    assert_eq!(x, d6_dialect(6, "b,a,-,d,e").unwrap());
}
