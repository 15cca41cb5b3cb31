//! Brute-force reference implementations used by the test suites to
//! validate the fast algorithms. These favor transparency over speed:
//! direct definitions with hard resource guards, no pruning that could
//! change a result.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::semigroup::{gcd, CharacterSet, MultiplicitySequence, NumericalSemigroup};
use crate::series::{OrderValue, PowerSeries};

/// Smallest superset of S closed under the defining rule: for members
/// h <= a, b the combination (a - h) + (b - h) + h is again a member.
/// Monotone saturation, so the fixed point is the Arf closure.
pub fn oracle_arf_closure_fixedpoint(s: &NumericalSemigroup) -> NumericalSemigroup {
    let bound = (2 * s.conductor() + 2) as usize;
    let mut member = vec![false; bound + 1];
    for (x, slot) in member.iter_mut().enumerate() {
        *slot = s.contains(x as u64);
    }
    loop {
        let mut changed = false;
        let cond = member.iter().rposition(|&m| !m).map_or(0, |i| i + 1);
        // combinations below the current conductor are the only ones that
        // can produce anything new
        let mems: Vec<usize> = (0..cond).filter(|&x| member[x]).collect();
        for (hi, &h) in mems.iter().enumerate() {
            for (ai, &a) in mems.iter().enumerate().skip(hi) {
                for &b in mems.iter().skip(ai) {
                    let x = a + b - h;
                    if x < cond && !member[x] {
                        member[x] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let gens: Vec<u64> = (1..=bound).filter(|&x| member[x]).map(|x| x as u64).collect();
    let closed = NumericalSemigroup::from_generators(&gens).expect("closure is nonempty");
    debug_assert_eq!(closed.nu(), 1);
    closed
}

/// Exhaustive search for the smallest semigroup whose Arf closure is S:
/// every subset of S's members up to `bound` is tried as a generating set,
/// the ones whose closure reproduces S are kept, and their intersection
/// (itself one of them) is returned as a minimal generating set.
pub fn oracle_minimal_character_search(
    s: &NumericalSemigroup,
    bound: u64,
) -> Result<CharacterSet> {
    if !s.is_arf() {
        return Err(Error::NotArf);
    }
    let window = bound.max(s.conductor() + s.multiplicity());
    if window > 62 {
        return Err(Error::ResourceGuard(format!(
            "character search window {window} exceeds 62"
        )));
    }
    let candidates: Vec<u64> = (1..=bound).filter(|&x| s.contains(x)).collect();
    let n = candidates.len();
    if n > 24 {
        return Err(Error::ResourceGuard(format!(
            "character search over {n} candidate generators exceeds 24"
        )));
    }
    let target_mask = set_mask(|x| s.contains(x), window);
    let multiplicity = s.multiplicity();

    // many subsets generate the same semigroup; generated semigroups are
    // determined by their members up to the window, so a mask dedupes them
    let mut verdicts: HashMap<u64, bool> = HashMap::new();
    let mut kept: Vec<u64> = Vec::new();
    for subset in 1u32..(1 << n) {
        let gens: Vec<u64> = (0..n)
            .filter(|i| subset & (1 << i) != 0)
            .map(|i| candidates[i])
            .collect();
        if gens.iter().fold(0u64, |acc, &g| gcd(acc, g)) != 1 {
            continue;
        }
        // the closure keeps the multiplicity, so it must match from the start
        if gens[0] != multiplicity {
            continue;
        }
        let t_mask = generated_mask(&gens, window);
        if verdicts.contains_key(&t_mask) {
            continue;
        }
        let closed_mask = bounded_fixedpoint_mask(t_mask, window);
        let valid = closed_mask == target_mask;
        verdicts.insert(t_mask, valid);
        if valid {
            kept.push(t_mask);
        }
    }
    if kept.is_empty() {
        return Err(Error::ResourceGuard(
            "no generating set below the bound closes to the target".into(),
        ));
    }
    // the unique smallest one is contained in every other
    let smallest = kept
        .iter()
        .copied()
        .find(|&m| kept.iter().all(|&other| m & other == m))
        .ok_or_else(|| {
            Error::ResourceGuard("no inclusion-smallest generating semigroup found".into())
        })?;
    let gens: Vec<u64> = (1..=window).filter(|&x| smallest & (1 << x) != 0).collect();
    let t0 = NumericalSemigroup::from_generators(&gens)?;
    CharacterSet::new(t0.generators())
}

fn set_mask(contains: impl Fn(u64) -> bool, window: u64) -> u64 {
    let mut mask = 0u64;
    for x in 0..=window {
        if contains(x) {
            mask |= 1 << x;
        }
    }
    mask
}

fn generated_mask(gens: &[u64], window: u64) -> u64 {
    let mut mask = 1u64; // 0 is a member
    for x in 1..=window {
        for &g in gens {
            if g <= x && mask & (1 << (x - g)) != 0 {
                mask |= 1 << x;
                break;
            }
        }
    }
    mask
}

/// The fixed-point rule applied inside a bit window. New members below the
/// window only ever come from members below the window, so this is exact
/// there.
fn bounded_fixedpoint_mask(mut mask: u64, window: u64) -> u64 {
    loop {
        let mut changed = false;
        let members: Vec<u64> = (0..=window).filter(|&x| mask & (1 << x) != 0).collect();
        for (hi, &h) in members.iter().enumerate() {
            for (ai, &a) in members.iter().enumerate().skip(hi) {
                for &b in members.iter().skip(ai) {
                    let x = a + b - h;
                    if x <= window && mask & (1 << x) == 0 {
                        mask |= 1 << x;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return mask;
        }
    }
}

/// All Arf semigroups with conductor at most `conductor_bound`, generated
/// by enumerating non-increasing multiplicity-sequence heads with closed
/// partial sums.
pub fn oracle_enumerate_arf_semigroups(conductor_bound: u64) -> Result<Vec<NumericalSemigroup>> {
    if conductor_bound > 24 {
        return Err(Error::ResourceGuard(format!(
            "conductor bound {conductor_bound} exceeds 24"
        )));
    }
    let mut heads: Vec<Vec<u64>> = vec![vec![]];
    let mut stack: Vec<Vec<u64>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        let used: u64 = prefix.iter().sum();
        let cap = prefix.last().copied().unwrap_or(conductor_bound);
        for entry in 2..=cap.min(conductor_bound - used) {
            let mut next = prefix.clone();
            next.push(entry);
            heads.push(next.clone());
            stack.push(next);
        }
    }
    let mut out: Vec<NumericalSemigroup> = heads
        .into_iter()
        .filter_map(|head| MultiplicitySequence::new(&head).ok())
        .map(|seq| seq.to_semigroup())
        .collect();
    out.sort_by(|a, b| {
        a.conductor()
            .cmp(&b.conductor())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    out.dedup();
    Ok(out)
}

/// Orders achieved by the span of all monomials in the generators up to a
/// total degree bound: direct Gaussian elimination by leading order.
pub fn oracle_ring_orders_linear(
    gens: &[PowerSeries],
    degree_bound: u64,
    precision: u64,
) -> Result<Vec<u64>> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if gens.len() > 3 || degree_bound > 8 {
        return Err(Error::ResourceGuard(
            "linear order oracle is limited to 3 generators and degree 8".into(),
        ));
    }
    let precision = gens
        .iter()
        .map(|g| g.precision())
        .min()
        .unwrap()
        .min(precision);
    let field = gens[0].field();
    let one = PowerSeries::one(field, precision);
    let mut monomials = vec![one];
    let mut last_layer = vec![PowerSeries::one(field, precision)];
    for _ in 0..degree_bound {
        let mut next_layer = Vec::new();
        for m in &last_layer {
            for g in gens {
                next_layer.push(m.mul(&g.truncated(precision))?);
            }
        }
        monomials.extend(next_layer.iter().cloned());
        last_layer = next_layer;
    }

    let mut echelon: BTreeMap<u64, PowerSeries> = BTreeMap::new();
    for mut x in monomials {
        loop {
            match x.order() {
                OrderValue::AbovePrecision => break,
                OrderValue::Finite(w) => match echelon.get(&w) {
                    Some(rep) => {
                        let lc = x.leading_coefficient().expect("nonzero");
                        x = x.sub(&rep.scalar_mul(&lc)?)?;
                    }
                    None => {
                        echelon.insert(w, x.monic()?);
                        break;
                    }
                },
            }
        }
    }
    Ok(echelon.keys().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn fixedpoint_closure_examples() {
        assert_eq!(oracle_arf_closure_fixedpoint(&sg(&[1])), sg(&[1]));
        // 8 is forced from h=3, a=b=7
        let closed = oracle_arf_closure_fixedpoint(&sg(&[3, 7]));
        assert_eq!(closed.elements(), &[0, 3, 6]);
        assert_eq!(closed.conductor(), 6);
        assert!(closed.contains(8));
        // already a fixed point
        assert_eq!(oracle_arf_closure_fixedpoint(&sg(&[2, 5])), sg(&[2, 5]));
    }

    #[test]
    fn fixedpoint_matches_blowup_closure_on_samples() {
        for gens in [&[2u64, 5][..], &[3, 7], &[4, 6, 9], &[5, 6], &[7, 8, 9]] {
            let s = sg(gens);
            assert_eq!(
                oracle_arf_closure_fixedpoint(&s),
                s.arf_closure().to_semigroup(),
                "generators {gens:?}"
            );
        }
    }

    #[test]
    fn character_search_examples() {
        let n = sg(&[1]);
        assert_eq!(
            oracle_minimal_character_search(&n, 1).unwrap().values(),
            &[1]
        );
        let cusp = MultiplicitySequence::new(&[2, 2]).unwrap().to_semigroup();
        let bound = cusp.conductor() + cusp.multiplicity();
        assert_eq!(
            oracle_minimal_character_search(&cusp, bound)
                .unwrap()
                .values(),
            &[2, 5]
        );
        let s = MultiplicitySequence::new(&[3, 3]).unwrap().to_semigroup();
        let bound = s.conductor() + s.multiplicity();
        assert_eq!(
            oracle_minimal_character_search(&s, bound).unwrap().values(),
            &[3, 7]
        );
    }

    #[test]
    fn character_search_rejects_non_arf_input() {
        assert!(matches!(
            oracle_minimal_character_search(&sg(&[3, 7]), 16),
            Err(Error::NotArf)
        ));
    }

    #[test]
    fn enumeration_of_small_arf_semigroups() {
        let list = oracle_enumerate_arf_semigroups(2).unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[0], sg(&[1]));
        assert_eq!(list[1].elements(), &[0, 2]);

        let list = oracle_enumerate_arf_semigroups(4).unwrap();
        let elements: Vec<&[u64]> = list.iter().map(|s| s.elements()).collect();
        assert!(elements.contains(&&[0, 2, 4][..]));
        assert!(elements.contains(&&[0, 3][..]));
        assert!(elements.contains(&&[0, 4][..]));
        for s in &list {
            assert!(s.is_arf());
            assert!(s.conductor() <= 4);
        }
    }

    #[test]
    fn enumeration_respects_the_resource_guard() {
        assert!(matches!(
            oracle_enumerate_arf_semigroups(25),
            Err(Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn linear_order_oracle_examples() {
        let q = FieldSpec::Rationals;
        let parse = |t: &str, p: u64| PowerSeries::parse(t, q, p).unwrap();

        let orders =
            oracle_ring_orders_linear(&[parse("t^2", 10), parse("t^5", 10)], 4, 10).unwrap();
        assert_eq!(orders, vec![0, 2, 4, 5, 6, 7, 8, 9, 10]);

        let orders =
            oracle_ring_orders_linear(&[parse("t^4", 32), parse("t^6 + t^7", 32)], 4, 32)
                .unwrap();
        assert!(orders.contains(&13));
        assert!(!orders.contains(&9));

        let orders = oracle_ring_orders_linear(&[parse("t", 16)], 2, 16).unwrap();
        assert_eq!(orders, vec![0, 1, 2]);

        assert!(matches!(
            oracle_ring_orders_linear(&[parse("t", 16)], 9, 16),
            Err(Error::ResourceGuard(_))
        ));
    }
}
