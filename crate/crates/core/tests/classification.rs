use metacyclic::group::{CanonicalPParams, ConditionParse};
use metacyclic::invariants::{classify_order, classify_small_metacyclic};

#[test]
fn small_orders_and_counts() {
    let rows = classify_small_metacyclic(9, 64).unwrap();
    let summary: Vec<(u64, usize)> = rows.iter().map(|r| (r.order, r.classes.len())).collect();
    assert_eq!(
        summary,
        vec![(2, 1), (3, 1), (4, 2), (5, 1), (7, 1), (8, 4), (9, 2)]
    );
    assert!(rows.iter().all(|r| r.bijection));
    assert!(classify_small_metacyclic(256, 128).is_err());
}

#[test]
fn selected_parse_is_the_only_bijective_one() {
    let bijective = |parse: ConditionParse| {
        [(2u64, 1u32..=6), (3, 1..=4)].into_iter().all(|(p, ks)| {
            ks.into_iter()
                .all(|k| classify_order(p, k, parse, 128).unwrap().bijection)
        })
    };
    let good: Vec<ConditionParse> = ConditionParse::all()
        .into_iter()
        .filter(|&p| bijective(p))
        .collect();
    assert_eq!(good, vec![ConditionParse::SELECTED]);
}

#[test]
fn two_group_counts_through_order_128() {
    let counts: Vec<usize> = (1..=7)
        .map(|k| CanonicalPParams::enumerate(2, k, ConditionParse::SELECTED).len())
        .collect();
    assert_eq!(counts, vec![1, 2, 4, 8, 12, 19, 26]);
    let rows: Vec<usize> = (1..=7)
        .map(|k| {
            classify_order(2, k, ConditionParse::SELECTED, 128)
                .unwrap()
                .classes
                .len()
        })
        .collect();
    assert_eq!(rows, counts);
}
