//! Braid group action on exceptional collections.

use std::sync::Arc;

use proptest::prelude::*;
use sigmatilt::derived::{BraidGenerator, DerivedCategory, ExceptionalCollection, MutationSide};
use sigmatilt::quiver::{catalog, Quiver};

fn standard(cat: &DerivedCategory) -> ExceptionalCollection {
    let items = (1..=cat.mu()).map(|i| cat.simple(i).unwrap()).collect();
    cat.exceptional_collection(items).unwrap()
}

fn generators(mu: usize) -> impl Strategy<Value = Vec<BraidGenerator>> {
    let g = (1..mu, any::<bool>()).prop_map(|(i, right)| {
        BraidGenerator::Mutate(i, if right { MutationSide::Right } else { MutationSide::Left })
    });
    prop::collection::vec(g, 0..6)
}

fn b(i: usize) -> BraidGenerator {
    BraidGenerator::Mutate(i, MutationSide::Right)
}

fn quiver(d4: bool) -> Quiver {
    if d4 {
        catalog::d4()
    } else {
        catalog::linear_a(3)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn braid_relation_holds_everywhere(d4 in any::<bool>(), word in generators(3), i in 1usize..3) {
        let cat = DerivedCategory::new(Arc::new(quiver(d4)));
        let c = cat.braid_act(&word, &standard(&cat)).unwrap();
        let j = if i == 1 { 2 } else { 1 };
        let lhs = cat.braid_act(&[b(i), b(j), b(i)], &c).unwrap();
        let rhs = cat.braid_act(&[b(j), b(i), b(j)], &c).unwrap();
        prop_assert_eq!(lhs.items(), rhs.items());
    }

    #[test]
    fn right_then_left_is_identity(d4 in any::<bool>(), word in generators(3), i in 1usize..3) {
        let cat = DerivedCategory::new(Arc::new(quiver(d4)));
        let c = cat.braid_act(&word, &standard(&cat)).unwrap();
        let back = cat
            .braid_act(&[b(i), BraidGenerator::Mutate(i, MutationSide::Left)], &c)
            .unwrap();
        prop_assert_eq!(back.items(), c.items());
    }

    #[test]
    fn mutation_keeps_classes_unimodular(d4 in any::<bool>(), word in generators(3)) {
        let cat = DerivedCategory::new(Arc::new(quiver(d4)));
        let c = cat.braid_act(&word, &standard(&cat)).unwrap();
        prop_assert!(cat.is_full(c.items()));
    }

    #[test]
    fn ext_normalize_is_ext_and_idempotent(d4 in any::<bool>(), word in generators(3)) {
        let cat = DerivedCategory::new(Arc::new(quiver(d4)));
        let c = cat.braid_act(&word, &standard(&cat)).unwrap();
        let n = cat.ext_normalize(&c).unwrap();
        prop_assert!(cat.collection_flags(n.items()).unwrap().ext);
        let again = cat.ext_normalize(&n).unwrap();
        prop_assert_eq!(again.items(), n.items());
    }
}

#[test]
fn far_generators_commute_on_a4() {
    let cat = DerivedCategory::new(Arc::new(catalog::linear_a(4)));
    let c = standard(&cat);
    let lhs = cat.braid_act(&[b(1), b(3)], &c).unwrap();
    let rhs = cat.braid_act(&[b(3), b(1)], &c).unwrap();
    assert_eq!(lhs.items(), rhs.items());
}
