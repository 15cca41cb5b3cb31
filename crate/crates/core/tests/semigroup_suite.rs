//! Exhaustive small-scale sweeps over the semigroup operations.

use arf_core::oracles::oracle_enumerate_arf_semigroups;
use arf_core::semigroup::{CharacterSet, NumericalSemigroup};

fn subsets_of(values: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    (1u32..(1 << values.len())).map(move |mask| {
        values
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect()
    })
}

#[test]
fn closure_is_idempotent_and_extensive_for_all_small_generator_sets() {
    let universe: Vec<u64> = (1..=15).collect();
    for gens in subsets_of(&universe) {
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        let seq = s.arf_closure();
        let closed = seq.to_semigroup();
        for &e in s.elements() {
            assert!(closed.contains(e), "closure of {gens:?} lost element {e}");
        }
        assert_eq!(
            closed.arf_closure(),
            seq,
            "closure of {gens:?} is not a fixed point"
        );
    }
}

#[test]
fn arf_test_agrees_with_closure_identity() {
    let universe: Vec<u64> = (1..=12).collect();
    for gens in subsets_of(&universe) {
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        let closed = s.arf_closure().to_semigroup();
        assert_eq!(
            s.is_arf(),
            closed == s,
            "Arf test disagrees with the closure on {gens:?}"
        );
    }
}

#[test]
fn characters_regenerate_their_semigroup_and_are_minimal() {
    for s in oracle_enumerate_arf_semigroups(16).unwrap() {
        let chars = s.arf_characters().unwrap();
        let regenerated = chars.semigroup().arf_closure().to_semigroup();
        assert_eq!(regenerated, s, "characters {chars} do not regenerate {s}");

        // dropping any single character must break the regeneration
        if chars.values().len() > 1 {
            for drop in 0..chars.values().len() {
                let rest: Vec<u64> = chars
                    .values()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &v)| v)
                    .collect();
                let still_works = NumericalSemigroup::from_generators(&rest)
                    .map(|t| t.nu() == 1 && t.arf_closure().to_semigroup() == s)
                    .unwrap_or(false);
                assert!(
                    !still_works,
                    "dropping {} from {chars} still regenerates {s}",
                    chars.values()[drop]
                );
            }
        }
    }
}

#[test]
fn stability_holds_for_every_closure_member_in_range() {
    for gens in [&[2u64, 5][..], &[3, 7], &[4, 6, 9], &[5, 7], &[6, 8, 9]] {
        let chars = CharacterSet::reduce(gens).unwrap();
        let closure = chars.to_multiplicity_sequence().to_semigroup();
        let top = closure.conductor() + 4;
        for extra in 1..=top {
            if closure.contains(extra) {
                assert!(
                    chars.stability(extra).unwrap(),
                    "adjoining {extra} to {chars} changed the sequence"
                );
            }
        }
    }
}

#[test]
fn proximity_counts_settle_to_one() {
    for s in oracle_enumerate_arf_semigroups(12).unwrap() {
        let seq = s.arf_closure();
        let window = seq.head().len() + 16;
        let prox = seq.proximity_counts(window);
        assert_eq!(prox[0], 0);
        assert!(prox.last() == Some(&1) || window == 1);
    }
}
