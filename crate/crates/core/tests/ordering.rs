mod support;

use contacttrees_core::layout::order_ties;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{oracle_order, precedes, random_ties};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_brute_force(seed in any::<u64>(), n in 0usize..120, bands in 1usize..11) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ties = random_ties(&mut rng, n, bands);
        let got = order_ties(ties.clone());
        prop_assert_eq!(&got.ties, &oracle_order(&ties));
        prop_assert_eq!(got.left_count(), ties.iter().filter(|t| t.side == contacttrees_core::mapping::Side::Left).count());
    }

    #[test]
    fn input_order_is_irrelevant(seed in any::<u64>(), n in 0usize..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ties = random_ties(&mut rng, n, 10);
        let mut reversed = ties.clone();
        reversed.reverse();
        prop_assert_eq!(order_ties(ties).ties, order_ties(reversed).ties);
    }

    #[test]
    fn adjacent_pairs_respect_precedence(seed in any::<u64>(), n in 2usize..80) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let got = order_ties(random_ties(&mut rng, n, 6));
        for w in got.ties.windows(2) {
            prop_assert!(precedes(&w[0], &w[1]));
        }
    }
}

#[test]
fn base_indices_follow_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let got = order_ties(random_ties(&mut rng, 40, 10));
    for (i, t) in got.ties.iter().enumerate() {
        assert_eq!(got.base_index(t.tie.as_str()), Some(i));
    }
}
