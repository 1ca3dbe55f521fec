use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use jackbessel::partitions::{dominance_cmp, dominance_leq, enumerate_partitions, z_lambda};
use jackbessel::{Error, Partition};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..7, 0..7).prop_map(Partition::from_unsorted)
}

fn same_weight_pair() -> impl Strategy<Value = (Partition, Partition)> {
    (1u32..11).prop_flat_map(|m| {
        let all = enumerate_partitions(m, m as usize);
        let len = all.len();
        (0..len, 0..len).prop_map(move |(i, j)| (all[i].clone(), all[j].clone()))
    })
}

fn factorial(m: u32) -> BigUint {
    (1..=m).map(BigUint::from).product()
}

proptest! {
    #[test]
    fn enumeration_is_sorted_and_valid(m in 0u32..14, len in 0usize..8) {
        let all = enumerate_partitions(m, len);
        for p in &all {
            prop_assert_eq!(p.weight(), m);
            prop_assert!(p.len() <= len);
            prop_assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(p.parts().iter().all(|&x| x > 0));
        }
        prop_assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
    }

    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        let c = p.conjugate();
        prop_assert_eq!(c.weight(), p.weight());
        prop_assert_eq!(c.len() as u32, p.part(0));
        prop_assert_eq!(c.conjugate(), p);
    }

    #[test]
    fn conjugation_reverses_dominance((a, b) in same_weight_pair()) {
        let forward = dominance_cmp(&a, &b).unwrap();
        let back = dominance_cmp(&b.conjugate(), &a.conjugate()).unwrap();
        prop_assert_eq!(forward, back);
        if a == b {
            prop_assert_eq!(forward, Some(Ordering::Equal));
        }
        prop_assert_eq!(dominance_leq(&a, &b).unwrap(), forward.map(|o| o != Ordering::Greater));
    }

    #[test]
    fn dominance_refines_lexicographic_order((a, b) in same_weight_pair()) {
        if dominance_leq(&a, &b).unwrap() == Some(true) {
            prop_assert!(a.parts() <= b.parts());
        }
    }

    #[test]
    fn text_round_trip(p in partition()) {
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn counts_match_the_partition_function() {
    let p = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627];
    for (m, &want) in p.iter().enumerate() {
        assert_eq!(enumerate_partitions(m as u32, m).len(), want, "m = {m}");
    }
    assert_eq!(enumerate_partitions(10, 3).len(), 14);
    assert_eq!(enumerate_partitions(5, 0).len(), 0);
    assert_eq!(enumerate_partitions(0, 0), vec![Partition::empty()]);
}

#[test]
fn class_sizes_sum_to_the_group_order() {
    for m in 1..=10 {
        let total: BigUint = enumerate_partitions(m, m as usize).iter().map(|p| factorial(m) / z_lambda(p)).sum();
        assert_eq!(total, factorial(m), "m = {m}");
    }
    assert_eq!(z_lambda(&Partition::new(vec![2, 2, 1]).unwrap()).to_u64(), Some(8));
}

#[test]
fn dominance_is_partial() {
    let a = Partition::new(vec![3, 1, 1, 1]).unwrap();
    let b = Partition::new(vec![2, 2, 2]).unwrap();
    assert_eq!(dominance_cmp(&a, &b).unwrap(), None);
    let c = Partition::new(vec![2, 1]).unwrap();
    assert!(matches!(dominance_cmp(&a, &c), Err(Error::UnequalWeights { .. })));
}

#[test]
fn malformed_partitions_are_rejected() {
    assert!(matches!(Partition::new(vec![1, 2]), Err(Error::InvalidPartition { .. })));
    assert!("3,x".parse::<Partition>().is_err());
}
