//! Parameterized curve branches in n-space and their resolution by
//! blow-up: multiplicity, the chart transform, multiplicity sequences and
//! characters.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::semigroup::{self, CharacterSet, MultiplicitySequence};
use crate::series::{OrderValue, PowerSeries};

/// A branch through the origin: coordinates are power series with zero
/// constant term over a common field at a common precision, at least one of
/// them nonzero up to precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    coords: Vec<PowerSeries>,
}

/// One blow-up step: the multiplicity consumed, which coordinate served as
/// the chart denominator, and the constants subtracted to recenter the
/// transform at its intersection with the exceptional divisor.
#[derive(Debug, Clone)]
pub struct BlowupStep {
    pub multiplicity: u64,
    pub pivot: usize,
    pub recentering: Vec<Scalar>,
}

/// The full blow-up history of a branch down to its smooth model.
#[derive(Debug, Clone)]
pub struct BlowupTrace {
    pub steps: Vec<BlowupStep>,
    pub final_branch: Branch,
}

impl Branch {
    pub fn new(coords: Vec<PowerSeries>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidBranch("no coordinates".into()));
        }
        let field = coords[0].field();
        let precision = coords[0].precision();
        for c in &coords {
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            if c.precision() != precision {
                return Err(Error::InvalidBranch(
                    "coordinates must share one precision".into(),
                ));
            }
            if !c.constant_term().is_zero() {
                return Err(Error::InvalidBranch(
                    "coordinates must have zero constant term".into(),
                ));
            }
        }
        if coords.iter().all(|c| c.is_zero_up_to_precision()) {
            return Err(Error::InvalidBranch(
                "all coordinates are zero up to precision".into(),
            ));
        }
        Ok(Branch { coords })
    }

    /// Parses one series expression per coordinate, separated by commas or
    /// newlines.
    pub fn parse(text: &str, field: FieldSpec, precision: u64) -> Result<Self> {
        let coords = text
            .split([',', '\n'])
            .map(|piece| PowerSeries::parse(piece, field, precision))
            .collect::<Result<Vec<_>>>()?;
        Branch::new(coords)
    }

    pub fn coords(&self) -> &[PowerSeries] {
        &self.coords
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].field()
    }

    pub fn precision(&self) -> u64 {
        self.coords[0].precision()
    }

    /// Minimal order among the coordinates.
    pub fn multiplicity(&self) -> u64 {
        self.coords
            .iter()
            .filter_map(|c| c.order().finite())
            .min()
            .expect("a branch has a coordinate with finite order")
    }

    fn pivot_index(&self) -> usize {
        let m = self.multiplicity();
        self.coords
            .iter()
            .position(|c| c.order() == OrderValue::Finite(m))
            .expect("some coordinate attains the multiplicity")
    }

    fn nonzero_coordinate_count(&self) -> usize {
        self.coords
            .iter()
            .filter(|c| !c.is_zero_up_to_precision())
            .count()
    }

    /// gcd of every exponent appearing in any coordinate.
    pub fn exponent_gcd(&self) -> u64 {
        let mut g = 0;
        for c in &self.coords {
            for (e, _) in c.terms() {
                g = semigroup::gcd(g, e);
            }
        }
        g
    }

    /// Rewrites the branch in the variable of minimal order: exponents are
    /// divided by their common gcd so the order semigroup has gcd 1.
    pub fn normalize(&self) -> (Branch, u64) {
        let nu = self.exponent_gcd();
        debug_assert!(nu >= 1, "a branch carries at least one exponent");
        if nu == 1 {
            return (self.clone(), 1);
        }
        let coords = self
            .coords
            .iter()
            .map(|c| {
                c.compress_exponents(nu)
                    .expect("nu divides every exponent by construction")
            })
            .collect();
        (
            Branch { coords }.validated_after_transform(),
            nu,
        )
    }

    fn validated_after_transform(self) -> Branch {
        debug_assert!(self.coords.iter().any(|c| !c.is_zero_up_to_precision()));
        self
    }

    /// One blow-up in the chart of the minimal-order coordinate (ties break
    /// to the lowest index): the pivot stays, every other coordinate is
    /// divided by it, and the quotient constants are subtracted so the
    /// transform passes through the origin again.
    pub fn blowup(&self) -> Result<(Branch, BlowupStep)> {
        let pivot_idx = self.pivot_index();
        let pivot = &self.coords[pivot_idx];
        let m = self.multiplicity();
        let mut new_coords = Vec::with_capacity(self.coords.len());
        let mut recentering = Vec::with_capacity(self.coords.len());
        let mut any_nonzero = false;
        for (i, c) in self.coords.iter().enumerate() {
            if i == pivot_idx {
                let kept = pivot.truncated(self.precision() - m);
                any_nonzero |= !kept.is_zero_up_to_precision();
                new_coords.push(kept);
                recentering.push(self.field().zero());
            } else {
                let q = c.div(pivot)?;
                let constant = q.constant_term();
                let recentered = if constant.is_zero() {
                    q
                } else {
                    let shift =
                        PowerSeries::monomial(self.field(), q.precision(), constant.clone(), 0)?;
                    q.sub(&shift)?
                };
                any_nonzero |= !recentered.is_zero_up_to_precision();
                new_coords.push(recentered);
                recentering.push(constant);
            }
        }
        if !any_nonzero {
            return Err(Error::InsufficientPrecision(
                "all coordinates vanish after the blow-up".into(),
            ));
        }
        Ok((
            Branch { coords: new_coords },
            BlowupStep {
                multiplicity: m,
                pivot: pivot_idx,
                recentering,
            },
        ))
    }

    /// Iterated blow-up until the branch is smooth (some coordinate of
    /// order exactly 1, after which every further multiplicity is 1).
    /// Requires a normalized branch.
    pub fn multiplicity_sequence(
        &self,
        max_steps: u64,
    ) -> Result<(MultiplicitySequence, BlowupTrace)> {
        let g = self.exponent_gcd();
        if g != 1 {
            return Err(Error::NotNormalized { gcd: g });
        }
        let mut current = self.clone();
        let mut entries = Vec::new();
        let mut steps = Vec::new();
        loop {
            let m = current.multiplicity();
            if m > 1 && current.nonzero_coordinate_count() == 1 {
                // only one coordinate left carrying data: either the input
                // is an m-fold cover of its image or the blow-ups have
                // truncated everything else away; the data cannot tell
                return Err(Error::InsufficientPrecision(format!(
                    "a single coordinate of order {m} remains; the branch \
                     looks like an {m}-fold cover at this precision"
                )));
            }
            entries.push(m);
            if m == 1 {
                break;
            }
            if steps.len() as u64 >= max_steps {
                return Err(Error::MaxStepsExceeded(max_steps));
            }
            let (next, step) = current.blowup()?;
            steps.push(step);
            current = next;
        }
        let sequence = MultiplicitySequence::new(&entries)?;
        Ok((
            sequence,
            BlowupTrace {
                steps,
                final_branch: current,
            },
        ))
    }

    /// Characters of the branch, read off the semigroup of multiplicity
    /// sums of its blow-up resolution.
    pub fn characters(&self, max_steps: u64) -> Result<CharacterSet> {
        let (sequence, _) = self.multiplicity_sequence(max_steps)?;
        sequence.to_semigroup().arf_characters()
    }
}
