//! Numerical semigroups of nonnegative integers: membership, the Arf
//! property, Arf closure via repeated blow-up, multiplicity sequences,
//! proximity counts, characters and the character-to-sequence map.

use std::fmt;

use crate::error::{Error, Result};

/// A cofinite additive subsemigroup of the nonnegative integers in
/// normalized (gcd 1) form. The `nu` field records the gcd divided out of
/// the raw input generators.
#[derive(Debug, Clone)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    elements: Vec<u64>,
    conductor: u64,
    nu: u64,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        // same set of integers; nu is input provenance, not identity
        self.conductor == other.conductor && self.elements == other.elements
    }
}

impl Eq for NumericalSemigroup {}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`, dividing out the gcd first.
    /// The factor is recorded and available through [`Self::nu`].
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        let (normalized, nu) = Self::normalize_generators(gens)?;
        let mut s = Self::from_normalized_generators(normalized);
        s.nu = nu;
        Ok(s)
    }

    /// Sorts, dedupes and divides out the gcd; returns the normalized
    /// generators together with the factor nu.
    pub fn normalize_generators(gens: &[u64]) -> Result<(Vec<u64>, u64)> {
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let nu = gens.iter().fold(0u64, |acc, &g| gcd(acc, g));
        for g in &mut gens {
            *g /= nu;
        }
        Ok((gens, nu))
    }

    fn from_normalized_generators(gens: Vec<u64>) -> Self {
        debug_assert!(!gens.is_empty());
        debug_assert_eq!(gens.iter().fold(0u64, |acc, &g| gcd(acc, g)), 1);
        let min = gens[0];
        let max = *gens.last().unwrap();
        let mut bound = (min * max + max + 2) as usize;
        loop {
            let dp = additive_sieve(&gens, bound);
            let conductor = dp.iter().rposition(|&b| !b).map_or(0, |g| g as u64 + 1);
            // a run of min consecutive members past the last gap certifies
            // cofiniteness from there on
            if conductor as usize + min as usize <= bound {
                let elements: Vec<u64> = (0..=conductor).filter(|&x| dp[x as usize]).collect();
                let generators = minimal_generators(&elements, conductor);
                return NumericalSemigroup {
                    generators,
                    elements,
                    conductor,
                    nu: 1,
                };
            }
            bound *= 2;
        }
    }

    /// Minimal generating set.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Members in [0, conductor].
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Least c with [c, infinity) fully contained.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// The gcd divided out of the raw input generators.
    pub fn nu(&self) -> u64 {
        self.nu
    }

    /// Smallest positive member.
    pub fn multiplicity(&self) -> u64 {
        if self.conductor == 0 {
            1
        } else {
            self.elements[1]
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.conductor || self.elements.binary_search(&x).is_ok()
    }

    /// Tests the Arf property: for every member h, the shifted member set
    /// past h must itself be closed under addition. Sums landing at or
    /// beyond the conductor are members automatically, so the check is
    /// finite.
    pub fn is_arf(&self) -> bool {
        let c = self.conductor;
        for &h in &self.elements {
            let shifted: Vec<u64> = (0..c.saturating_sub(h))
                .filter(|&x| self.contains(x + h))
                .collect();
            for (i, &a) in shifted.iter().enumerate() {
                for &b in &shifted[i..] {
                    if a + b + h >= c {
                        break;
                    }
                    if !self.contains(a + b + h) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Arf closure by iterated semigroup blow-up: subtract the multiplicity
    /// from every member at least as large, regenerate, and repeat until
    /// all of N is reached. The recorded multiplicities are the sequence
    /// whose partial sums form the closure.
    pub fn arf_closure(&self) -> MultiplicitySequence {
        let mut current = self.clone();
        let mut entries = Vec::new();
        loop {
            let m = current.multiplicity();
            entries.push(m);
            if m == 1 {
                break;
            }
            current = current.blowup(m);
        }
        MultiplicitySequence::new(&entries).expect("blow-up multiplicities form a valid sequence")
    }

    fn blowup(&self, m: u64) -> NumericalSemigroup {
        let c = self.conductor;
        // members of [m, 2c + m] shifted down generate the blown-up semigroup
        let gens: Vec<u64> = (m..=2 * c + m)
            .filter(|&x| self.contains(x))
            .map(|x| x - m)
            .collect();
        let s = Self::from_generators(&gens).expect("blow-up generators are nonempty");
        debug_assert_eq!(s.nu(), 1, "blow-up of a normalized semigroup stays normalized");
        s
    }

    /// Characters of an Arf semigroup: multiplicity sums at the leading
    /// points of its multiplicity sequence. This fast path is checked
    /// against the exhaustive minimal-semigroup search in the test suites.
    pub fn arf_characters(&self) -> Result<CharacterSet> {
        if !self.is_arf() {
            return Err(Error::NotArf);
        }
        CharacterSet::new(&self.arf_closure().character_sums())
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ", ...}}")
    }
}

/// The multiplicity sequence of a branch or Arf semigroup. Trailing 1s are
/// implicit: the canonical head is empty for the sequence of all 1s and
/// otherwise ends at the last entry exceeding 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicitySequence {
    head: Vec<u64>,
}

impl MultiplicitySequence {
    /// Validates and canonicalizes a sequence: entries at least 1,
    /// non-increasing, and every entry the sum of a consecutive run of the
    /// entries after it (the tail of implicit 1s included). The last
    /// condition is what blow-up multiplicities satisfy; it forces the
    /// partial-sum set to be closed under addition.
    pub fn new(entries: &[u64]) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::InvalidMultiplicitySequence(
                "entries must be at least 1".into(),
            ));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidMultiplicitySequence(
                "entries must be non-increasing".into(),
            ));
        }
        let head_len = entries.iter().rposition(|&m| m > 1).map_or(0, |i| i + 1);
        let head = entries[..head_len].to_vec();
        for (j, &m) in head.iter().enumerate() {
            // forward sums pass through every value once the implicit 1s
            // start, so only a jump inside the head can invalidate m
            let mut acc = 0;
            for &later in &head[j + 1..] {
                acc += later;
                if acc >= m {
                    break;
                }
            }
            if acc > m {
                return Err(Error::InvalidMultiplicitySequence(format!(
                    "entry {m} is not a sum of consecutive following entries"
                )));
            }
        }
        let seq = MultiplicitySequence { head };
        seq.check_partial_sums_closed()?;
        Ok(seq)
    }

    fn check_partial_sums_closed(&self) -> Result<()> {
        let sums = self.partial_sums();
        let total = *sums.last().unwrap_or(&0);
        // sums reaching the cofinite tail are members automatically
        for (i, &a) in sums.iter().enumerate().skip(1) {
            for &b in &sums[i..] {
                let s = a + b;
                if s < total && sums.binary_search(&s).is_err() {
                    return Err(Error::InvalidMultiplicitySequence(format!(
                        "partial sums are not closed under addition: {a} + {b} is missing"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical head (no trailing 1s; empty for the all-1 sequence).
    pub fn head(&self) -> &[u64] {
        &self.head
    }

    /// The head followed by a single explicit 1, which is how sequences are
    /// written: `[2,2,1]` means 2,2,1,1,1,...
    pub fn display_entries(&self) -> Vec<u64> {
        let mut v = self.head.clone();
        v.push(1);
        v
    }

    /// Sum of the head entries; the conductor of the associated semigroup.
    pub fn total(&self) -> u64 {
        self.head.iter().sum()
    }

    /// {0, m1, m1+m2, ...} up to the end of the head.
    pub fn partial_sums(&self) -> Vec<u64> {
        let mut sums = Vec::with_capacity(self.head.len() + 1);
        let mut acc = 0;
        sums.push(0);
        for &m in &self.head {
            acc += m;
            sums.push(acc);
        }
        sums
    }

    /// First `count` entries with the implicit tail of 1s made explicit.
    pub fn entries_up_to(&self, count: usize) -> Vec<u64> {
        (0..count)
            .map(|i| self.head.get(i).copied().unwrap_or(1))
            .collect()
    }

    /// The partial-sum semigroup. Always Arf: blowing up the sum set just
    /// shifts the sequence by one place.
    pub fn to_semigroup(&self) -> NumericalSemigroup {
        let elements = self.partial_sums();
        let conductor = *elements.last().unwrap();
        let generators = minimal_generators(&elements, conductor);
        NumericalSemigroup {
            generators,
            elements,
            conductor,
            nu: 1,
        }
    }

    /// prox(i) for i = 1..=count: how many earlier points the i-th
    /// infinitely near point is proximate to. The budget rule: p_i stays on
    /// the transform of the j-th exceptional divisor exactly while
    /// m_{j+1} + ... + m_i does not exceed m_j.
    pub fn proximity_counts(&self, count: usize) -> Vec<u64> {
        let entries = self.entries_up_to(count);
        let mut out = vec![0u64; count];
        for i in 2..=count {
            let mut window = 0u64;
            let mut hits = 0u64;
            for j in (1..i).rev() {
                window += entries[j]; // now m_{j+1} + ... + m_i
                if window <= entries[j - 1] {
                    hits += 1;
                }
            }
            out[i - 1] = hits;
        }
        out
    }

    /// Multiplicity sums at the leading points (prox(i) < prox(i+1)). For
    /// an Arf semigroup these are its characters. Leading points cannot
    /// occur past head length + largest entry, so the scan window is finite.
    pub fn character_sums(&self) -> Vec<u64> {
        let max_entry = self.head.first().copied().unwrap_or(1);
        let window = self.head.len() + max_entry as usize + 2;
        let prox = self.proximity_counts(window);
        let entries = self.entries_up_to(window);
        let mut sums = Vec::new();
        let mut acc = 0u64;
        for i in 1..window {
            acc += entries[i - 1];
            if prox[i - 1] < prox[i] {
                sums.push(acc);
            }
        }
        sums
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.display_entries().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// A strictly increasing, gcd-1 set of positive integers that minimally
/// generates its own semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSet {
    values: Vec<u64>,
}

impl CharacterSet {
    pub fn new(values: &[u64]) -> Result<Self> {
        let mut values = values.to_vec();
        values.sort_unstable();
        values.dedup();
        if values.is_empty() || values[0] == 0 {
            return Err(Error::InvalidCharacterSet(
                "characters must be positive integers".into(),
            ));
        }
        if values.iter().fold(0u64, |acc, &v| gcd(acc, v)) != 1 {
            return Err(Error::InvalidCharacterSet("gcd must be 1".into()));
        }
        for (i, &v) in values.iter().enumerate() {
            let others: Vec<u64> = values
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| w)
                .collect();
            if !others.is_empty() {
                let dp = additive_sieve(&others, v as usize);
                if dp[v as usize] {
                    return Err(Error::InvalidCharacterSet(format!(
                        "{v} is generated by the other characters"
                    )));
                }
            }
        }
        Ok(CharacterSet { values })
    }

    /// Minimal generating set of the semigroup generated by `ints`.
    pub fn reduce(ints: &[u64]) -> Result<Self> {
        let s = NumericalSemigroup::from_generators(ints)?;
        if s.nu() != 1 {
            return Err(Error::InvalidCharacterSet("gcd must be 1".into()));
        }
        CharacterSet::new(s.generators())
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// The semigroup generated by the characters.
    pub fn semigroup(&self) -> NumericalSemigroup {
        let s = NumericalSemigroup::from_generators(&self.values)
            .expect("characters are a nonempty generator set");
        debug_assert_eq!(s.nu(), 1);
        s
    }

    /// The multiplicity sequence of the Arf closure of the generated
    /// semigroup. Extensionally this is the modified Jacobian algorithm:
    /// close, then take successive differences of the closure.
    pub fn to_multiplicity_sequence(&self) -> MultiplicitySequence {
        self.semigroup().arf_closure()
    }

    /// Adjoining any member of the closure and re-reducing to minimal
    /// generators must leave the multiplicity sequence unchanged; reports
    /// whether it does. The `extra` element must lie in the closure.
    pub fn stability(&self, extra: u64) -> Result<bool> {
        let base = self.to_multiplicity_sequence();
        if !base.to_semigroup().contains(extra) {
            return Err(Error::NotAClosureMember { element: extra });
        }
        let mut augmented = self.values.clone();
        augmented.push(extra);
        let reduced = CharacterSet::reduce(&augmented)?;
        Ok(reduced.to_multiplicity_sequence() == base)
    }
}

impl fmt::Display for CharacterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// dp[x] = x is a nonnegative combination of the generators, for x <= bound.
pub(crate) fn additive_sieve(gens: &[u64], bound: usize) -> Vec<bool> {
    let mut dp = vec![false; bound + 1];
    dp[0] = true;
    for n in 1..=bound {
        for &g in gens {
            let g = g as usize;
            if g <= n && dp[n - g] {
                dp[n] = true;
                break;
            }
        }
    }
    dp
}

/// Members that are not sums of two positive members. All of them lie below
/// conductor + multiplicity.
fn minimal_generators(elements: &[u64], conductor: u64) -> Vec<u64> {
    let contains = |x: u64| x >= conductor || elements.binary_search(&x).is_ok();
    let multiplicity = if conductor == 0 { 1 } else { elements[1] };
    let mut gens = Vec::new();
    for s in 1..=conductor + multiplicity {
        if !contains(s) {
            continue;
        }
        let decomposable = (1..s).any(|a| contains(a) && contains(s - a) && s - a > 0);
        if !decomposable {
            gens.push(s);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn generation_by_two_and_five() {
        let s = sg(&[2, 5]);
        assert_eq!(s.conductor(), 4);
        assert_eq!(s.elements(), &[0, 2, 4]);
        assert_eq!(s.generators(), &[2, 5]);
        assert!(s.contains(5) && s.contains(6) && !s.contains(3));
        assert_eq!(s.nu(), 1);
    }

    #[test]
    fn generation_by_one_gives_all_of_n() {
        let s = sg(&[1]);
        assert_eq!(s.conductor(), 0);
        assert_eq!(s.elements(), &[0]);
        assert_eq!(s.multiplicity(), 1);
        assert_eq!(s.generators(), &[1]);
    }

    #[test]
    fn generation_by_three_and_seven() {
        let s = sg(&[3, 7]);
        assert_eq!(s.conductor(), 12);
        assert_eq!(s.elements(), &[0, 3, 6, 7, 9, 10, 12]);
    }

    #[test]
    fn empty_generators_rejected() {
        assert!(matches!(
            NumericalSemigroup::from_generators(&[]),
            Err(Error::EmptyGenerators)
        ));
        assert!(matches!(
            NumericalSemigroup::from_generators(&[0]),
            Err(Error::EmptyGenerators)
        ));
    }

    #[test]
    fn normalization_reports_nu() {
        let s = sg(&[4, 8]);
        assert_eq!(s.nu(), 4);
        assert_eq!(s.conductor(), 0); // became all of N

        let s = sg(&[2, 5]);
        assert_eq!(s.nu(), 1);

        let s = sg(&[6, 10]);
        assert_eq!(s.nu(), 2);
        assert_eq!(s.generators(), &[3, 5]);
    }

    #[test]
    fn arf_test_examples() {
        assert!(sg(&[1]).is_arf());
        assert!(sg(&[2, 5]).is_arf());
        // shifted set at h=3 misses 4+4
        assert!(!sg(&[3, 7]).is_arf());
    }

    #[test]
    fn arf_closure_examples() {
        assert_eq!(sg(&[1]).arf_closure().display_entries(), vec![1]);
        assert_eq!(sg(&[2, 5]).arf_closure().display_entries(), vec![2, 2, 1]);
        let closed = sg(&[3, 7]).arf_closure();
        assert_eq!(closed.display_entries(), vec![3, 3, 1]);
        let s = closed.to_semigroup();
        assert_eq!(s.elements(), &[0, 3, 6]);
        assert_eq!(s.conductor(), 6);
        assert!(s.contains(8) && !s.contains(5));
    }

    #[test]
    fn sequence_validation() {
        assert!(MultiplicitySequence::new(&[4, 2, 2, 1]).is_ok());
        assert!(matches!(
            MultiplicitySequence::new(&[2, 3]),
            Err(Error::InvalidMultiplicitySequence(_))
        ));
        assert!(matches!(
            MultiplicitySequence::new(&[3, 2, 2]),
            Err(Error::InvalidMultiplicitySequence(_))
        ));
        assert!(matches!(
            MultiplicitySequence::new(&[2, 0]),
            Err(Error::InvalidMultiplicitySequence(_))
        ));
        // closed partial sums alone are not enough: 3 is not a sum of
        // consecutive entries after it, and the shifted set at 5 would
        // miss 3 + 3
        assert!(matches!(
            MultiplicitySequence::new(&[5, 3, 2, 2]),
            Err(Error::InvalidMultiplicitySequence(_))
        ));
        assert!(MultiplicitySequence::new(&[5, 3, 2]).is_ok());
    }

    #[test]
    fn sequence_to_semigroup() {
        assert_eq!(
            MultiplicitySequence::new(&[1]).unwrap().to_semigroup(),
            sg(&[1])
        );
        let s = MultiplicitySequence::new(&[2, 2, 1]).unwrap().to_semigroup();
        assert_eq!(s.elements(), &[0, 2, 4]);
        let s = MultiplicitySequence::new(&[4, 2, 2, 1]).unwrap().to_semigroup();
        assert_eq!(s.elements(), &[0, 4, 6, 8]);
        assert_eq!(s.conductor(), 8);
    }

    #[test]
    fn display_conventions() {
        assert_eq!(sg(&[1]).arf_closure().to_string(), "[1]");
        assert_eq!(sg(&[2, 5]).arf_closure().to_string(), "[2,2,1]");
        assert_eq!(sg(&[2, 5]).to_string(), "{0, 2, 4, ...}");
    }

    #[test]
    fn proximity_examples() {
        let all_ones = MultiplicitySequence::new(&[1]).unwrap();
        assert_eq!(all_ones.proximity_counts(6), vec![0, 1, 1, 1, 1, 1]);

        let cusp = MultiplicitySequence::new(&[2, 2, 1]).unwrap();
        assert_eq!(cusp.proximity_counts(6), vec![0, 1, 1, 2, 1, 1]);

        let deep = MultiplicitySequence::new(&[4, 2, 2, 1]).unwrap();
        assert_eq!(deep.proximity_counts(6), vec![0, 1, 2, 1, 2, 1]);
    }

    #[test]
    fn characters_from_leading_points() {
        assert_eq!(sg(&[1]).arf_characters().unwrap().values(), &[1]);
        let s = MultiplicitySequence::new(&[2, 2]).unwrap().to_semigroup();
        assert_eq!(s.arf_characters().unwrap().values(), &[2, 5]);
        let s = MultiplicitySequence::new(&[4, 2, 2]).unwrap().to_semigroup();
        assert_eq!(s.arf_characters().unwrap().values(), &[4, 6, 9]);
    }

    #[test]
    fn characters_require_arf_input() {
        assert!(matches!(sg(&[3, 7]).arf_characters(), Err(Error::NotArf)));
    }

    #[test]
    fn chars_to_multseq_examples() {
        let c = CharacterSet::new(&[1]).unwrap();
        assert_eq!(c.to_multiplicity_sequence().display_entries(), vec![1]);
        let c = CharacterSet::new(&[2, 5]).unwrap();
        assert_eq!(c.to_multiplicity_sequence().display_entries(), vec![2, 2, 1]);
        let c = CharacterSet::new(&[4, 6, 9]).unwrap();
        assert_eq!(
            c.to_multiplicity_sequence().display_entries(),
            vec![4, 2, 2, 1]
        );
    }

    #[test]
    fn character_set_validation() {
        assert!(CharacterSet::new(&[2, 4]).is_err()); // gcd 2
        assert!(CharacterSet::new(&[2, 5, 7]).is_err()); // 7 = 2 + 5
        assert!(CharacterSet::new(&[]).is_err());
        assert!(CharacterSet::new(&[4, 6, 9]).is_ok());
    }

    #[test]
    fn stability_under_closure_members() {
        let c = CharacterSet::new(&[2, 5]).unwrap();
        assert!(c.stability(4).unwrap());
        assert!(matches!(
            c.stability(3),
            Err(Error::NotAClosureMember { element: 3 })
        ));

        let c = CharacterSet::new(&[1]).unwrap();
        assert!(c.stability(7).unwrap());

        let c = CharacterSet::new(&[4, 6, 9]).unwrap();
        assert!(c.stability(8).unwrap());
    }

    #[test]
    fn closure_is_idempotent_and_extensive_small() {
        for gens in [&[2u64, 5][..], &[3, 7], &[4, 6, 9], &[5, 7, 11]] {
            let s = sg(gens);
            let seq = s.arf_closure();
            let closed = seq.to_semigroup();
            // extensive
            for &e in s.elements() {
                assert!(closed.contains(e));
            }
            // idempotent
            assert_eq!(closed.arf_closure(), seq);
            assert!(closed.is_arf());
        }
    }

    #[test]
    fn is_arf_iff_closure_is_identity() {
        for gens in [&[2u64, 5][..], &[3, 7], &[4, 5], &[3, 5], &[6, 10, 15]] {
            let s = sg(gens);
            let closed = s.arf_closure().to_semigroup();
            assert_eq!(s.is_arf(), closed == s, "generators {gens:?}");
        }
    }
}
