//! Subrings `H = k[[phi_1, ..., phi_n]]` of `k[[t]]` presented by generator
//! series: the order semigroup W(H), the Arf closure as a chain of
//! blow-up levels, membership in the closure, bases with their base
//! characters, and the minimal embedding dimension.
//!
//! Generated rings are complete: arbitrary formal sums of monomials in the
//! generators are allowed. Truncation makes this harmless, since
//! coefficients below the working precision only ever depend on finitely
//! many monomials.

use std::collections::{BTreeMap, VecDeque};
use std::sync::OnceLock;

use crate::branch::Branch;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::semigroup::{gcd, CharacterSet, MultiplicitySequence, NumericalSemigroup};
use crate::series::{OrderValue, PowerSeries};

/// Triangular order data for a generated subring: monic representatives by
/// leading order, the achieved order set W(H) up to the working precision,
/// and a certified conductor estimate.
#[derive(Debug, Clone)]
pub struct OrderBasis {
    field: FieldSpec,
    precision: u64,
    reps: BTreeMap<u64, PowerSeries>,
    achieved: Vec<bool>,
    pivot_gcd: u64,
    min_positive: u64,
    conductor_estimate: u64,
}

impl OrderBasis {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    /// gcd of all achieved positive orders (1 for a normalized ring).
    pub fn order_gcd(&self) -> u64 {
        self.pivot_gcd
    }

    /// Smallest achieved positive order.
    pub fn min_positive_order(&self) -> u64 {
        self.min_positive
    }

    /// Smallest c with every achieved-pattern order in [c, precision]
    /// actually achieved; past it the order set is a translate of the
    /// multiples of the gcd.
    pub fn conductor_estimate(&self) -> u64 {
        self.conductor_estimate
    }

    pub fn contains_order(&self, w: u64) -> bool {
        w <= self.precision && self.achieved[w as usize]
    }

    /// W(H) up to the working precision, in increasing order.
    pub fn achieved_orders(&self) -> Vec<u64> {
        (0..=self.precision)
            .filter(|&w| self.achieved[w as usize])
            .collect()
    }

    pub fn representative(&self, order: u64) -> Option<&PowerSeries> {
        self.reps.get(&order)
    }

    pub fn representatives(&self) -> impl Iterator<Item = (u64, &PowerSeries)> {
        self.reps.iter().map(|(w, r)| (*w, r))
    }
}

/// One level of the recursive closure construction.
#[derive(Debug, Clone)]
pub struct ClosureLevel {
    pub multiplicity: u64,
    pub pivot: PowerSeries,
    pub basis: OrderBasis,
}

/// The Arf closure of a generated ring, level by level. Each level divides
/// the positive-order part of the previous ring by its minimal-order pivot
/// and regenerates; the closure is k + pivot * (closure one level down).
#[derive(Debug)]
pub struct ArfClosureChain {
    levels: Vec<ClosureLevel>,
    tail_unit: u64,
    reps_cache: OnceLock<BTreeMap<u64, PowerSeries>>,
}

impl Clone for ArfClosureChain {
    fn clone(&self) -> Self {
        ArfClosureChain {
            levels: self.levels.clone(),
            tail_unit: self.tail_unit,
            reps_cache: OnceLock::new(),
        }
    }
}

/// Outcome of a closure membership test. Indeterminate answers are kept
/// distinct from rejection: they mean the reduction ran out of
/// representatives while every remaining order was achievable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    NotIn,
    IndeterminateAtPrecision,
}

/// A base of the closure: elements picked greedily by order, each one
/// outside the Arf closure of the ring generated by its predecessors.
#[derive(Debug, Clone)]
pub struct Base {
    pub elements: Vec<PowerSeries>,
    pub characters: Vec<u64>,
    pub dimension: usize,
}

/// Computes W(H) for the ring generated by `gens`, to the smaller of
/// `precision` and the generators' own precision. Errors if the achieved
/// orders have gcd above 1 (compress exponents first) or if cofiniteness
/// cannot be certified within the precision.
pub fn ring_order_basis(gens: &[PowerSeries], precision: u64) -> Result<OrderBasis> {
    let basis = saturate(gens, precision)?;
    if basis.pivot_gcd != 1 {
        return Err(Error::NotNormalized {
            gcd: basis.pivot_gcd,
        });
    }
    Ok(basis)
}

/// Arf closure of the ring generated by `gens`, as the full level chain.
pub fn ring_arf_closure(gens: &[PowerSeries], precision: u64) -> Result<ArfClosureChain> {
    let chain = closure_chain(gens, precision)?;
    if chain.tail_unit != 1 {
        return Err(Error::NotNormalized {
            gcd: chain.tail_unit,
        });
    }
    Ok(chain)
}

/// Closure chain without the normalization requirement. Rings whose order
/// gcd is g live inside a power series ring in a variable of order g; the
/// chain then terminates at a level of multiplicity g. Used for the
/// sub-closures that base computations need.
pub(crate) fn closure_chain(gens: &[PowerSeries], precision: u64) -> Result<ArfClosureChain> {
    let mut levels: Vec<ClosureLevel> = Vec::new();
    let mut current: Vec<PowerSeries> = gens.to_vec();
    let mut budget = precision;
    let mut tail_unit = 0;
    loop {
        let basis = saturate(&current, budget)?;
        if levels.is_empty() {
            tail_unit = basis.pivot_gcd;
        } else {
            debug_assert_eq!(
                basis.pivot_gcd, tail_unit,
                "levels of a closure chain share the order gcd"
            );
        }
        let m = basis.min_positive;
        let pivot = basis
            .representative(m)
            .expect("the minimal positive order has a representative")
            .clone();
        let stop = m == basis.pivot_gcd;
        let horizon = basis.conductor_estimate.saturating_add(m).min(basis.precision);
        let next: Result<Vec<PowerSeries>> = if stop {
            Ok(Vec::new())
        } else {
            basis
                .reps
                .range(m..=horizon)
                .map(|(_, r)| r.div(&pivot))
                .collect()
        };
        budget = basis.precision.saturating_sub(m);
        levels.push(ClosureLevel {
            multiplicity: m,
            pivot,
            basis,
        });
        if stop {
            break;
        }
        current = next?;
    }
    Ok(ArfClosureChain {
        levels,
        tail_unit,
        reps_cache: OnceLock::new(),
    })
}

impl ArfClosureChain {
    pub fn levels(&self) -> &[ClosureLevel] {
        &self.levels
    }

    pub fn field(&self) -> FieldSpec {
        self.levels[0].basis.field()
    }

    /// Step size of the order tail past the last partial sum; 1 for
    /// normalized rings.
    pub fn tail_unit(&self) -> u64 {
        self.tail_unit
    }

    /// Level multiplicities m_1, m_2, ...
    pub fn multiplicities(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.multiplicity).collect()
    }

    /// Partial sums of the level multiplicities: W of the closure, up to
    /// the tail.
    pub fn partial_sums(&self) -> Vec<u64> {
        let mut sums = vec![0];
        let mut acc = 0;
        for l in &self.levels {
            acc += l.multiplicity;
            sums.push(acc);
        }
        sums
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }

    /// Does the closure achieve order w?
    pub fn contains_order(&self, w: u64) -> bool {
        let total = self.total_multiplicity();
        if w >= total {
            return (w - total).is_multiple_of(self.tail_unit);
        }
        self.partial_sums().binary_search(&w).is_ok()
    }

    /// The multiplicity sequence of the closure. Chains of normalized
    /// rings end at a multiplicity-1 level, so this is always defined for
    /// the public constructors.
    pub fn multiplicity_sequence(&self) -> MultiplicitySequence {
        assert_eq!(self.tail_unit, 1, "chain must come from a normalized ring");
        MultiplicitySequence::new(&self.multiplicities())
            .expect("closure multiplicities form a valid sequence")
    }

    /// W of the closure as a numerical semigroup.
    pub fn closure_semigroup(&self) -> NumericalSemigroup {
        self.multiplicity_sequence().to_semigroup()
    }

    /// Deepest precision in the chain; representatives are materialized up
    /// to this order.
    pub fn rep_cap(&self) -> u64 {
        self.levels
            .last()
            .expect("chains have at least one level")
            .basis
            .precision()
    }

    /// The chain starting at level h, the ring obtained by dividing away
    /// the first h pivots.
    pub fn sub_chain(&self, h: usize) -> Result<ArfClosureChain> {
        if h >= self.levels.len() {
            return Err(Error::LevelOutOfRange {
                level: h,
                levels: self.levels.len(),
            });
        }
        Ok(ArfClosureChain {
            levels: self.levels[h..].to_vec(),
            tail_unit: self.tail_unit,
            reps_cache: OnceLock::new(),
        })
    }

    /// Monic closure elements, one per achieved order up to `rep_cap`,
    /// built as k + pivot * (reps one level down); the final level
    /// contributes powers of its pivot.
    pub fn closure_reps(&self) -> &BTreeMap<u64, PowerSeries> {
        self.reps_cache.get_or_init(|| {
            let cap = self.rep_cap();
            let field = self.field();
            let last = self.levels.last().expect("nonempty chain");
            let mut reps: BTreeMap<u64, PowerSeries> = BTreeMap::new();
            reps.insert(0, PowerSeries::one(field, last.basis.precision()));
            let mut power = PowerSeries::one(field, last.basis.precision());
            loop {
                power = match power.mul(&last.pivot) {
                    Ok(p) => p,
                    Err(_) => break,
                };
                match power.order() {
                    OrderValue::Finite(w) if w <= cap => {
                        reps.insert(w, power.clone());
                    }
                    _ => break,
                }
            }
            for level in self.levels.iter().rev().skip(1) {
                let mut outer: BTreeMap<u64, PowerSeries> = BTreeMap::new();
                outer.insert(0, PowerSeries::one(field, level.basis.precision()));
                for (w, r) in &reps {
                    let order = level.multiplicity + w;
                    if order > cap {
                        break;
                    }
                    if let Ok(prod) = level.pivot.mul(r) {
                        if !prod.is_zero_up_to_precision() {
                            debug_assert_eq!(prod.order(), OrderValue::Finite(order));
                            outer.insert(order, prod);
                        }
                    }
                }
                reps = outer;
            }
            reps
        })
    }
}

/// Triangular reduction of `x` against the closure's representatives.
/// Sound rejections come from hitting an order outside the closure's order
/// set; acceptance means the reduction vanished up to the working
/// precision.
pub fn closure_membership(x: &PowerSeries, chain: &ArfClosureChain) -> Result<Membership> {
    if x.field() != chain.field() {
        return Err(Error::FieldMismatch(x.field(), chain.field()));
    }
    if x.is_zero_up_to_precision() {
        return Ok(Membership::In);
    }
    let reps = chain.closure_reps();
    let mut r = x.clone();
    let mut clamped_nonzero_data = false;
    loop {
        if r.is_zero_up_to_precision() {
            // a vanished remainder certifies membership only if no known
            // nonzero coefficient fell off a precision clamp on the way
            return Ok(if clamped_nonzero_data {
                Membership::IndeterminateAtPrecision
            } else {
                Membership::In
            });
        }
        let w = r.order().finite().expect("nonzero remainder");
        if !chain.contains_order(w) {
            return Ok(Membership::NotIn);
        }
        match reps.get(&w) {
            Some(rep) => {
                if rep.precision() < r.precision()
                    && r.terms().any(|(e, _)| e > rep.precision())
                {
                    clamped_nonzero_data = true;
                }
                let lc = r.leading_coefficient().expect("nonzero remainder");
                r = r.sub(&rep.scalar_mul(&lc)?)?;
            }
            // achievable order past the materialized representatives
            None => return Ok(Membership::IndeterminateAtPrecision),
        }
    }
}

/// Greedy base of the closure: X_1 is the minimal-positive-order pivot;
/// each next element is the least-order closure representative outside the
/// Arf closure of the ring generated so far. The base characters are the
/// orders and the dimension is the count.
pub fn ring_base(chain: &ArfClosureChain) -> Result<Base> {
    let reps = chain.closure_reps();
    let main_multiplicities = chain.multiplicities();
    let x1 = chain.levels[0].pivot.clone();
    let mut elements = vec![x1];
    let mut known_members: Vec<u64> = Vec::new();
    loop {
        let precision = elements
            .iter()
            .map(|x| x.precision())
            .min()
            .expect("base is nonempty");
        let sub = closure_chain(&elements, precision)?;
        // once the sub-closure's order data matches the whole chain, every
        // remaining representative reduces into it without meeting a gap
        if sub.tail_unit() == chain.tail_unit() && sub.multiplicities() == main_multiplicities {
            break;
        }
        let scan_cap = sub.rep_cap();
        let mut found = None;
        for (w, r) in reps.iter() {
            if *w == 0 || known_members.binary_search(w).is_ok() {
                continue;
            }
            if *w > scan_cap {
                return Err(Error::IndeterminateMembership(scan_cap));
            }
            // decisions are made at the sub-closure's working precision
            match closure_membership(&r.truncated(scan_cap), &sub)? {
                Membership::In => {
                    // sub-closures only grow, so membership is monotone
                    let pos = known_members.binary_search(w).unwrap_err();
                    known_members.insert(pos, *w);
                }
                Membership::NotIn => {
                    found = Some(r.clone());
                    break;
                }
                Membership::IndeterminateAtPrecision => {
                    return Err(Error::IndeterminateMembership(scan_cap));
                }
            }
        }
        match found {
            Some(x) => elements.push(x),
            None => break,
        }
    }
    let characters = elements
        .iter()
        .map(|x| x.order().finite().expect("base elements are nonzero"))
        .collect::<Vec<_>>();
    Ok(Base {
        dimension: elements.len(),
        characters,
        elements,
    })
}

/// Characters of the ring: characters of the order semigroup of its Arf
/// closure.
pub fn ring_characters(chain: &ArfClosureChain) -> Result<CharacterSet> {
    chain.closure_semigroup().arf_characters()
}

/// Smallest dimension of a space the branch projects into without changing
/// its multiplicity sequence: the dimension of the closure's base.
pub fn embedding_dimension(gens: &[PowerSeries], precision: u64) -> Result<u64> {
    let chain = ring_arf_closure(gens, precision)?;
    Ok(ring_base(&chain)?.dimension as u64)
}

/// Base characters of the ring at level h of the chain.
pub fn level_base_characters(chain: &ArfClosureChain, h: usize) -> Result<Base> {
    let sub = chain.sub_chain(h)?;
    ring_base(&sub)
}

/// The monomial branch (t^c1, ..., t^cn) on the given characters.
pub fn synthesize_monomial_branch(
    chars: &CharacterSet,
    field: FieldSpec,
    precision: u64,
) -> Result<Branch> {
    let coords = chars
        .values()
        .iter()
        .map(|&c| PowerSeries::monomial(field, precision, field.one(), c))
        .collect::<Result<Vec<_>>>()?;
    Branch::new(coords)
}

/// Breadth-first product saturation with leading-order elimination.
///
/// Invariants on exit: representatives exist for every achieved order
/// below the conductor estimate plus the multiplicity, the achieved set is
/// the additive closure of the representative orders, and equals W(H) up
/// to the precision. Products whose order lands in the certified cofinite
/// run are skipped; anything there is spanned by the representatives
/// already.
fn saturate(gens: &[PowerSeries], precision: u64) -> Result<OrderBasis> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let field = first.field();
    for g in gens {
        if g.field() != field {
            return Err(Error::FieldMismatch(field, g.field()));
        }
    }
    let precision = gens
        .iter()
        .map(|g| g.precision())
        .min()
        .unwrap()
        .min(precision);
    if precision == 0 {
        return Err(Error::InsufficientPrecision(
            "no precision left for order saturation".into(),
        ));
    }

    // constants generate k and can be stripped without changing the ring
    let mut prepared = Vec::new();
    for g in gens {
        let t = g.truncated(precision);
        let c = t.constant_term();
        let t = if c.is_zero() {
            t
        } else {
            let shift = PowerSeries::monomial(field, precision, c, 0)?;
            t.sub(&shift)?
        };
        if !t.is_zero_up_to_precision() {
            prepared.push(t);
        }
    }
    if prepared.is_empty() {
        return Err(Error::EmptyGenerators);
    }

    let mut state = Saturator {
        precision,
        reps: BTreeMap::new(),
        achieved: vec![false; precision as usize + 1],
        pivots: Vec::new(),
        run_start: precision + 1,
        queue: VecDeque::new(),
    };
    state.achieved[0] = true;
    state.reps.insert(0, PowerSeries::one(field, precision));

    for g in &prepared {
        state.insert_candidate(g.clone(), true, &prepared)?;
    }
    while let Some((rep_order, gen_idx)) = state.queue.pop_front() {
        let sum = rep_order
            + prepared[gen_idx]
                .order()
                .finite()
                .expect("prepared generators are nonzero");
        if sum > state.precision || sum >= state.run_start {
            continue;
        }
        let candidate = state.reps[&rep_order].mul(&prepared[gen_idx])?;
        state.insert_candidate(candidate, false, &prepared)?;
    }

    let pivot_gcd = state.pivots.iter().fold(0u64, |acc, &p| gcd(acc, p));
    debug_assert!(pivot_gcd > 0, "positive orders exist");
    let min_positive = *state.pivots.iter().min().expect("positive orders exist");

    // cofiniteness certificate: a run of at least m/g achieved multiples of
    // g at the top of the window forces everything beyond, because the
    // achieved set is closed under addition
    let mut conductor_estimate = precision + 1;
    let mut k = precision / pivot_gcd;
    loop {
        if !state.achieved[(k * pivot_gcd) as usize] {
            break;
        }
        conductor_estimate = k * pivot_gcd;
        if k == 0 {
            break;
        }
        k -= 1;
    }
    let run = (precision / pivot_gcd).saturating_sub(conductor_estimate / pivot_gcd) + 1;
    if conductor_estimate > precision || run * pivot_gcd < min_positive {
        return Err(Error::InsufficientPrecision(format!(
            "cannot certify cofiniteness of the order set within precision {precision}"
        )));
    }

    let mut basis = OrderBasis {
        field,
        precision,
        reps: state.reps,
        achieved: state.achieved,
        pivot_gcd,
        min_positive,
        conductor_estimate,
    };
    fill_missing_reps(&mut basis)?;
    Ok(basis)
}

struct Saturator {
    precision: u64,
    reps: BTreeMap<u64, PowerSeries>,
    achieved: Vec<bool>,
    pivots: Vec<u64>,
    run_start: u64,
    queue: VecDeque<(u64, usize)>,
}

impl Saturator {
    fn insert_candidate(
        &mut self,
        mut x: PowerSeries,
        is_seed: bool,
        gens: &[PowerSeries],
    ) -> Result<()> {
        loop {
            if x.is_zero_up_to_precision() {
                return Ok(());
            }
            let w = x.order().finite().expect("nonzero candidate");
            if !is_seed && w >= self.run_start {
                // spanned by the representatives at and past the run
                return Ok(());
            }
            if let Some(rep) = self.reps.get(&w) {
                let lc = x.leading_coefficient().expect("nonzero candidate");
                x = x.sub(&rep.scalar_mul(&lc)?)?;
                continue;
            }
            let monic = x.monic()?;
            self.reps.insert(w, monic);
            if w > 0 {
                self.pivots.push(w);
                self.grow_achieved(w);
            }
            for (i, g) in gens.iter().enumerate() {
                let sum = w + g.order().finite().expect("nonzero generator");
                if sum <= self.precision && sum < self.run_start {
                    self.queue.push_back((w, i));
                }
            }
            return Ok(());
        }
    }

    fn grow_achieved(&mut self, pivot: u64) {
        let p = pivot as usize;
        for i in 0..=self.precision as usize - p {
            if self.achieved[i] {
                self.achieved[i + p] = true;
            }
        }
        // the run start only moves down as orders accumulate
        let mut start = self.precision + 1;
        while start > 0 && self.achieved[start as usize - 1] {
            start -= 1;
        }
        self.run_start = start;
    }
}

/// Representatives for the achieved orders just past the conductor come
/// from products of earlier ones; the blow-up division list needs them.
fn fill_missing_reps(basis: &mut OrderBasis) -> Result<()> {
    let top = basis
        .conductor_estimate
        .saturating_add(basis.min_positive)
        .min(basis.precision);
    for w in 1..=top {
        if !basis.achieved[w as usize] || basis.reps.contains_key(&w) {
            continue;
        }
        let mut product = None;
        for &p in basis.reps.keys().filter(|&&p| p > 0 && p < w) {
            let q = w - p;
            if basis.achieved[q as usize] && basis.reps.contains_key(&q) {
                product = Some(basis.reps[&p].mul(&basis.reps[&q])?);
                break;
            }
        }
        let rep = product.expect("achieved orders decompose over earlier representatives");
        debug_assert_eq!(rep.order(), OrderValue::Finite(w));
        basis.reps.insert(w, rep);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::DEFAULT_PRECISION;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gens(text: &str, precision: u64) -> Vec<PowerSeries> {
        text.split(',')
            .map(|p| PowerSeries::parse(p, q(), precision).unwrap())
            .collect()
    }

    #[test]
    fn order_basis_of_a_polynomial_ring() {
        let basis = ring_order_basis(&gens("t", 32), 32).unwrap();
        assert_eq!(basis.conductor_estimate(), 0);
        assert_eq!(basis.min_positive_order(), 1);
        assert_eq!(basis.achieved_orders(), (0..=32).collect::<Vec<_>>());
    }

    #[test]
    fn order_basis_of_the_cusp_ring() {
        let basis = ring_order_basis(&gens("t^2, t^5", 32), 32).unwrap();
        assert_eq!(basis.conductor_estimate(), 4);
        let expected: Vec<u64> = (0..=32).filter(|&w| w == 0 || w == 2 || w >= 4).collect();
        assert_eq!(basis.achieved_orders(), expected);
    }

    #[test]
    fn order_basis_finds_the_eliminated_order() {
        // (t^6 + t^7)^2 - (t^4)^3 has order 13
        let basis = ring_order_basis(&gens("t^4, t^6 + t^7", 32), 32).unwrap();
        assert!(basis.contains_order(13));
        assert!(!basis.contains_order(9));
        let s = NumericalSemigroup::from_generators(&[4, 6, 13]).unwrap();
        let expected: Vec<u64> = (0..=32).filter(|&w| s.contains(w)).collect();
        assert_eq!(basis.achieved_orders(), expected);
        assert_eq!(basis.conductor_estimate(), 16);
        let rep13 = basis.representative(13).unwrap();
        assert_eq!(rep13.order(), OrderValue::Finite(13));
        assert!(rep13.leading_coefficient().unwrap().is_one());
    }

    #[test]
    fn order_basis_rejects_unnormalized_rings() {
        assert!(matches!(
            ring_order_basis(&gens("t^2, t^6", 32), 32),
            Err(Error::NotNormalized { gcd: 2 })
        ));
    }

    #[test]
    fn order_basis_rejects_constant_rings() {
        let c = vec![PowerSeries::parse("1", q(), 16).unwrap()];
        assert!(matches!(
            ring_order_basis(&c, 16),
            Err(Error::EmptyGenerators)
        ));
    }

    #[test]
    fn closure_of_the_polynomial_ring_is_trivial() {
        let chain = ring_arf_closure(&gens("t", 32), 32).unwrap();
        assert_eq!(chain.multiplicities(), vec![1]);
        assert_eq!(chain.closure_semigroup().conductor(), 0);
    }

    #[test]
    fn closure_of_the_cusp_ring() {
        let chain = ring_arf_closure(&gens("t^2, t^5", DEFAULT_PRECISION), DEFAULT_PRECISION)
            .unwrap();
        assert_eq!(chain.multiplicities(), vec![2, 2, 1]);
        assert_eq!(chain.closure_semigroup().elements(), &[0, 2, 4]);
    }

    #[test]
    fn closure_grows_the_order_semigroup() {
        let g = gens("t^4, t^6 + t^7", DEFAULT_PRECISION);
        let basis = ring_order_basis(&g, DEFAULT_PRECISION).unwrap();
        let chain = ring_arf_closure(&g, DEFAULT_PRECISION).unwrap();
        assert_eq!(chain.multiplicities(), vec![4, 2, 2, 1]);
        let closed = chain.closure_semigroup();
        assert_eq!(closed.elements(), &[0, 4, 6, 8]);
        // 9 is achieved only after closing
        assert!(!basis.contains_order(9));
        assert!(closed.contains(9));
        // monotone: every achieved order is achieved by the closure
        for w in basis.achieved_orders() {
            assert!(closed.contains(w));
        }
    }

    #[test]
    fn membership_in_the_closed_cusp_ring() {
        let chain = ring_arf_closure(&gens("t^4, t^6 + t^7", 32), 32).unwrap();
        let member = |text: &str| {
            closure_membership(&PowerSeries::parse(text, q(), 32).unwrap(), &chain).unwrap()
        };
        assert_eq!(member("t^4"), Membership::In);
        assert_eq!(member("t^5"), Membership::NotIn);
        // order-6 closure elements are exactly the multiples of t^6 + t^7,
        // so the reduction of t^6 ends at the gap order 7
        assert_eq!(member("t^6"), Membership::NotIn);
        assert_eq!(member("t^6 + t^7"), Membership::In);
        assert_eq!(member("2*t^6 + 2*t^7"), Membership::In);
        assert_eq!(member("t^6 + 2*t^7"), Membership::NotIn);
        assert_eq!(member("t^8"), Membership::In);
        assert_eq!(member("t^8 + t^11"), Membership::In);
        assert_eq!(member("0"), Membership::In);
        assert_eq!(member("t^7"), Membership::NotIn);
        // products of the generators stay inside
        assert_eq!(member("t^12 + 2*t^13 + t^14"), Membership::In);
    }

    #[test]
    fn base_of_the_perturbed_monomial_ring() {
        let chain = ring_arf_closure(
            &gens("t^4, t^6 + t^7", DEFAULT_PRECISION),
            DEFAULT_PRECISION,
        )
        .unwrap();
        let base = ring_base(&chain).unwrap();
        assert_eq!(base.characters, vec![4, 6]);
        assert_eq!(base.dimension, 2);
    }

    #[test]
    fn base_of_the_monomial_ring() {
        let chain = ring_arf_closure(
            &gens("t^4, t^6, t^9", DEFAULT_PRECISION),
            DEFAULT_PRECISION,
        )
        .unwrap();
        let base = ring_base(&chain).unwrap();
        assert_eq!(base.characters, vec![4, 6, 9]);
        assert_eq!(base.dimension, 3);
    }

    #[test]
    fn both_rings_share_their_characters() {
        for text in ["t^4, t^6 + t^7", "t^4, t^6, t^9"] {
            let chain =
                ring_arf_closure(&gens(text, DEFAULT_PRECISION), DEFAULT_PRECISION).unwrap();
            assert_eq!(
                ring_characters(&chain).unwrap().values(),
                &[4, 6, 9],
                "ring {text}"
            );
        }
    }

    #[test]
    fn embedding_dimensions_of_the_examples() {
        assert_eq!(
            embedding_dimension(&gens("t", 32), 32).unwrap(),
            1
        );
        assert_eq!(
            embedding_dimension(&gens("t^4, t^6 + t^7", DEFAULT_PRECISION), DEFAULT_PRECISION)
                .unwrap(),
            2
        );
        assert_eq!(
            embedding_dimension(&gens("t^4, t^6, t^9", DEFAULT_PRECISION), DEFAULT_PRECISION)
                .unwrap(),
            3
        );
    }

    #[test]
    fn level_bases_of_the_examples() {
        let chain = ring_arf_closure(&gens("t", 32), 32).unwrap();
        assert_eq!(level_base_characters(&chain, 0).unwrap().characters, vec![1]);

        let chain = ring_arf_closure(&gens("t^2, t^5", DEFAULT_PRECISION), DEFAULT_PRECISION)
            .unwrap();
        // level 2 is already smooth
        assert_eq!(level_base_characters(&chain, 2).unwrap().characters, vec![1]);

        let chain = ring_arf_closure(
            &gens("t^4, t^6 + t^7", DEFAULT_PRECISION),
            DEFAULT_PRECISION,
        )
        .unwrap();
        let base = level_base_characters(&chain, 1).unwrap();
        // the level ring k[[t^2 + t^3, t^4, ...]] needs t^4 on top of its
        // pivot; everything else reduces into k + (t^2+t^3)k + t^4 k[[t]]
        assert_eq!(base.characters, vec![2, 4]);
        assert!(matches!(
            level_base_characters(&chain, 9),
            Err(Error::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn synthesis_round_trips_characters() {
        for chars in [vec![1], vec![2, 5], vec![4, 6, 9]] {
            let cs = CharacterSet::new(&chars).unwrap();
            let b = synthesize_monomial_branch(&cs, q(), DEFAULT_PRECISION).unwrap();
            assert_eq!(b.characters(64).unwrap(), cs);
        }
    }

    #[test]
    fn redundant_generators_change_nothing() {
        let plain = ring_arf_closure(&gens("t^4, t^6 + t^7", 64), 64).unwrap();
        // t^8 is already in the closure
        let padded = ring_arf_closure(&gens("t^4, t^6 + t^7, t^8", 64), 64).unwrap();
        assert_eq!(plain.multiplicities(), padded.multiplicities());
        assert_eq!(
            ring_base(&plain).unwrap().characters,
            ring_base(&padded).unwrap().characters
        );
    }

    #[test]
    fn closure_is_idempotent_on_its_own_reps() {
        let chain = ring_arf_closure(&gens("t^4, t^6 + t^7", 64), 64).unwrap();
        let reps: Vec<PowerSeries> = chain.closure_reps().values().cloned().collect();
        let again = closure_chain(&reps, chain.rep_cap()).unwrap();
        assert_eq!(again.multiplicities(), chain.multiplicities());
    }

    #[test]
    fn route_agreement_with_branch_blowup() {
        for text in ["t^2, t^5", "t^3, t^7", "t^4, t^6 + t^7", "t^4, t^6, t^9"] {
            let b = Branch::parse(text, q(), DEFAULT_PRECISION).unwrap();
            let (seq, _) = b.multiplicity_sequence(64).unwrap();
            let chain = ring_arf_closure(b.coords(), DEFAULT_PRECISION).unwrap();
            assert_eq!(
                chain.multiplicity_sequence(),
                seq,
                "routes disagree on {text}"
            );
        }
    }

    #[test]
    fn prime_field_closure_matches() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let g: Vec<PowerSeries> = ["t^2", "t^5"]
            .iter()
            .map(|t| PowerSeries::parse(t, f5, 64).unwrap())
            .collect();
        let chain = ring_arf_closure(&g, 64).unwrap();
        assert_eq!(chain.multiplicities(), vec![2, 2, 1]);
    }
}
