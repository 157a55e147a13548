//! Seeded property suites, 256 cases each.

mod common;

use common::props::{self, config, pool};
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(0x5eed_0001))]
    #[test]
    fn differentials_square_to_zero(p in pool()) {
        props::differentials_square_to_zero(&p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0002))]
    #[test]
    fn normal_forms_are_idempotent_and_sound(p in pool()) {
        props::normal_forms_are_idempotent_and_sound(&p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0003))]
    #[test]
    fn syzygies_multiply_to_zero(p in pool()) {
        props::syzygies_multiply_to_zero(&p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0004))]
    #[test]
    fn base_change_is_entrywise(p in pool()) {
        props::base_change_is_entrywise(&p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0005))]
    #[test]
    fn telescope_and_truncation_routes_agree(p in pool()) {
        props::telescope_and_truncation_routes_agree(&p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0006))]
    #[test]
    fn completion_is_additive_on_short_exact_sequences(p in pool()) {
        props::completion_is_additive_on_short_exact_sequences(&p)?;
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0007))]
    #[test]
    fn homology_matches_dense_linear_algebra(p in pool()) {
        props::homology_matches_dense_linear_algebra(&p)?;
    }
}
