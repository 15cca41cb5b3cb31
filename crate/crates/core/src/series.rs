//! Truncated formal power series in one variable t with exact coefficients.
//!
//! A series carries a precision P: coefficients of t^0..t^P are meaningful
//! and everything beyond is unknown. Every operation reports the precision
//! of its output and never extrapolates past it. "Zero" always means "zero
//! up to precision"; callers that need a mathematical zero must treat an
//! above-precision order as a fallible signal.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Default working precision. Desk-scale conductors stay well under 64, so
/// this leaves headroom for the precision lost in blow-up divisions.
pub const DEFAULT_PRECISION: u64 = 128;

/// Order of a series: the least exponent carrying a nonzero coefficient, or
/// the marker for series that vanish up to their precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderValue {
    Finite(u64),
    AbovePrecision,
}

impl OrderValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            OrderValue::Finite(v) => Some(v),
            OrderValue::AbovePrecision => None,
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Finite(v) => write!(f, "{v}"),
            OrderValue::AbovePrecision => write!(f, "above-precision"),
        }
    }
}

/// A truncated power series. Only nonzero coefficients are stored and all
/// stored exponents are at most the precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    field: FieldSpec,
    precision: u64,
    coeffs: BTreeMap<u64, Scalar>,
}

impl PowerSeries {
    pub fn zero(field: FieldSpec, precision: u64) -> Self {
        PowerSeries {
            field,
            precision,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec, precision: u64) -> Self {
        Self::monomial(field, precision, field.one(), 0).expect("exponent 0 fits any precision")
    }

    /// c * t^e; the exponent must not exceed the precision.
    pub fn monomial(field: FieldSpec, precision: u64, coeff: Scalar, exponent: u64) -> Result<Self> {
        if exponent > precision {
            return Err(Error::ExponentExceedsPrecision {
                exponent,
                precision,
            });
        }
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exponent, coeff);
        }
        Ok(PowerSeries {
            field,
            precision,
            coeffs,
        })
    }

    /// Parses the textual form: a signed sum of terms `c`, `c*t^e`, `c*t`,
    /// `t^e`, `t` where `c` is an integer or a parenthesized ratio `(p/q)`.
    pub fn parse(text: &str, field: FieldSpec, precision: u64) -> Result<Self> {
        parse::series(text, field, precision)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    /// Least exponent with a nonzero coefficient.
    pub fn order(&self) -> OrderValue {
        match self.coeffs.keys().next() {
            Some(&e) => OrderValue::Finite(e),
            None => OrderValue::AbovePrecision,
        }
    }

    pub fn is_zero_up_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exponent: u64) -> Scalar {
        self.coeffs
            .get(&exponent)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(0)
    }

    pub fn leading_coefficient(&self) -> Option<Scalar> {
        self.coeffs.values().next().cloned()
    }

    /// Iterates (exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field, other.field))
        }
    }

    /// Restricts to a lower precision, dropping coefficients beyond it.
    pub fn truncated(&self, precision: u64) -> Self {
        let precision = precision.min(self.precision);
        let coeffs = self
            .coeffs
            .range(..=precision)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        PowerSeries {
            field: self.field,
            precision,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        self.check_same_field(other)?;
        let precision = self.precision.min(other.precision);
        let mut coeffs: BTreeMap<u64, Scalar> = self
            .coeffs
            .range(..=precision)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        for (e, c) in other.coeffs.range(..=precision) {
            let rhs = if negate { c.neg() } else { c.clone() };
            let sum = match coeffs.get(e) {
                Some(existing) => existing.add(&rhs)?,
                None => rhs,
            };
            if sum.is_zero() {
                coeffs.remove(e);
            } else {
                coeffs.insert(*e, sum);
            }
        }
        Ok(PowerSeries {
            field: self.field,
            precision,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect();
        PowerSeries {
            field: self.field,
            precision: self.precision,
            coeffs,
        }
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Result<Self> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(self.field, s.field()));
        }
        if s.is_zero() {
            return Ok(Self::zero(self.field, self.precision));
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let v = c.mul(s)?;
            if !v.is_zero() {
                coeffs.insert(*e, v);
            }
        }
        Ok(PowerSeries {
            field: self.field,
            precision: self.precision,
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let precision = self.precision.min(other.precision);
        let mut coeffs: BTreeMap<u64, Scalar> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            if *e1 > precision {
                break;
            }
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                if e > precision {
                    break;
                }
                let term = c1.mul(c2)?;
                let sum = match coeffs.get(&e) {
                    Some(existing) => existing.add(&term)?,
                    None => term,
                };
                if sum.is_zero() {
                    coeffs.remove(&e);
                } else {
                    coeffs.insert(e, sum);
                }
            }
        }
        Ok(PowerSeries {
            field: self.field,
            precision,
            coeffs,
        })
    }

    /// Exact division. Requires ord(b) finite and at most ord(a) (a zero
    /// dividend is allowed). The quotient's precision drops by ord(b).
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_same_field(divisor)?;
        let vb = match divisor.order() {
            OrderValue::Finite(v) => v,
            OrderValue::AbovePrecision => return Err(Error::DivisionByZeroSeries),
        };
        let shared = self.precision.min(divisor.precision);
        if shared < vb + 1 {
            return Err(Error::InsufficientPrecision(format!(
                "quotient precision would be {} after dividing by a series of order {vb}",
                shared as i128 - vb as i128
            )));
        }
        let precision = shared - vb;
        if self.is_zero_up_to_precision() {
            return Ok(Self::zero(self.field, precision));
        }
        let va = self.order().finite().expect("nonzero dividend");
        if va < vb {
            return Err(Error::DivisionOrderMismatch {
                divisor_order: vb,
                dividend_order: va,
            });
        }
        // strip t^vb from both; the divisor becomes a unit
        let unit: Vec<(u64, Scalar)> = divisor
            .coeffs
            .iter()
            .map(|(e, c)| (e - vb, c.clone()))
            .collect();
        let lead_inv = unit[0].1.inv()?;
        let mut quotient: Vec<Scalar> = Vec::with_capacity(precision as usize + 1);
        for n in 0..=precision {
            let mut acc = match self.coeffs.get(&(n + vb)) {
                Some(c) => c.clone(),
                None => self.field.zero(),
            };
            for (e, c) in unit.iter().skip(1) {
                if *e > n {
                    break;
                }
                let q = &quotient[(n - e) as usize];
                if !q.is_zero() {
                    acc = acc.sub(&q.mul(c)?)?;
                }
            }
            quotient.push(acc.mul(&lead_inv)?);
        }
        let coeffs = quotient
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c))
            .collect();
        Ok(PowerSeries {
            field: self.field,
            precision,
            coeffs,
        })
    }

    /// Square root of a unit series, normalized by the deterministic scalar
    /// root of the constant term. Not available in characteristic 2.
    pub fn sqrt_unit(&self) -> Result<Self> {
        if self.field.characteristic() == 2 {
            return Err(Error::SqrtCharacteristicTwo);
        }
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotASquare("0".into()));
        }
        let r0 = c0.sqrt()?;
        let two_r0_inv = r0.add(&r0)?.inv()?;
        let mut root: Vec<Scalar> = vec![r0];
        for n in 1..=self.precision {
            // u_n = sum_{i+j=n} s_i s_j, so isolate the 2*s_0*s_n term
            let mut acc = self.coefficient(n);
            for i in 1..n {
                let j = n - i;
                if j < i {
                    break;
                }
                let prod = root[i as usize].mul(&root[j as usize])?;
                let prod = if i == j { prod } else { prod.add(&prod)? };
                acc = acc.sub(&prod)?;
            }
            root.push(acc.mul(&two_r0_inv)?);
        }
        let coeffs = root
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c))
            .collect();
        Ok(PowerSeries {
            field: self.field,
            precision: self.precision,
            coeffs,
        })
    }

    /// Rewrites the series in the variable T = t^nu: every exponent must be
    /// divisible by nu, exponents divide by nu, precision becomes floor(P/nu).
    pub fn compress_exponents(&self, nu: u64) -> Result<Self> {
        assert!(nu > 0, "nu must be positive");
        if nu == 1 {
            return Ok(self.clone());
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            if e % nu != 0 {
                return Err(Error::ExponentNotDivisible {
                    exponent: *e,
                    nu,
                });
            }
            coeffs.insert(e / nu, c.clone());
        }
        Ok(PowerSeries {
            field: self.field,
            precision: self.precision / nu,
            coeffs,
        })
    }

    /// Inverse of `compress_exponents`: substitutes t = T^nu. All the
    /// in-between coefficients are genuinely known to be zero, so the
    /// precision scales up to P*nu.
    pub fn expand_exponents(&self, nu: u64) -> Self {
        assert!(nu > 0, "nu must be positive");
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e * nu, c.clone()))
            .collect();
        PowerSeries {
            field: self.field,
            precision: self.precision * nu,
            coeffs,
        }
    }

    /// Composition self(g) for a substituted series of positive order.
    pub fn substitute(&self, g: &Self) -> Result<Self> {
        self.check_same_field(g)?;
        let g_ord = match g.order() {
            OrderValue::Finite(v) if v >= 1 => v,
            OrderValue::Finite(_) => {
                return Err(Error::InvalidBranch(
                    "substituted series must have positive order".into(),
                ))
            }
            OrderValue::AbovePrecision => {
                // only the constant term survives below g's precision
                return Self::monomial(self.field, g.precision, self.constant_term(), 0);
            }
        };
        let precision = self.precision.min(g.precision);
        let mut acc = PowerSeries::zero(self.field, precision);
        let mut power = PowerSeries::one(self.field, precision);
        let mut current_exp = 0u64;
        for (e, c) in &self.coeffs {
            if e * g_ord > precision {
                break;
            }
            while current_exp < *e {
                power = power.mul(g)?;
                current_exp += 1;
            }
            acc = acc.add(&power.scalar_mul(c)?)?;
        }
        Ok(acc)
    }

    /// Rescales so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Self> {
        match self.leading_coefficient() {
            Some(lc) => self.scalar_mul(&lc.inv()?),
            None => Ok(self.clone()),
        }
    }

    /// Coefficientwise equality on the shared precision range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.field != other.field {
            return false;
        }
        let p = self.precision.min(other.precision);
        let mut lhs = self.coeffs.range(..=p);
        let mut rhs = other.coeffs.range(..=p);
        loop {
            match (lhs.next(), rhs.next()) {
                (None, None) => return true,
                (Some(a), Some(b)) => {
                    if a != b {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let (neg, body) = term_text(*e, c);
            if first {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

fn term_text(exp: u64, c: &Scalar) -> (bool, String) {
    let (neg, mag) = match c {
        Scalar::Rational(r) => {
            use num_traits::Signed;
            let neg = r.is_negative();
            let abs = if neg { -r.clone() } else { r.clone() };
            let mag = if num_traits::One::is_one(abs.denom()) {
                abs.numer().to_string()
            } else {
                format!("({}/{})", abs.numer(), abs.denom())
            };
            (neg, mag)
        }
        Scalar::Prime { value, .. } => (false, value.to_string()),
    };
    let body = match exp {
        0 => mag,
        _ => {
            let t = if exp == 1 {
                "t".to_string()
            } else {
                format!("t^{exp}")
            };
            if mag == "1" {
                t
            } else {
                format!("{mag}*{t}")
            }
        }
    };
    (neg, body)
}

mod parse {
    //! Recursive-descent parser for the series grammar. Errors carry the
    //! byte offset of the offending token.

    use super::*;

    struct Cursor<'a> {
        bytes: &'a [u8],
        pos: usize,
    }

    impl<'a> Cursor<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.bytes.get(self.pos).copied()
        }

        fn bump(&mut self) -> Option<u8> {
            let b = self.peek()?;
            self.pos += 1;
            Some(b)
        }

        fn expect(&mut self, b: u8) -> Result<()> {
            match self.peek() {
                Some(got) if got == b => {
                    self.pos += 1;
                    Ok(())
                }
                _ => Err(self.error(format!("expected '{}'", b as char))),
            }
        }

        fn error(&self, message: String) -> Error {
            Error::Syntax {
                position: self.pos,
                message,
            }
        }

        fn integer(&mut self) -> Result<u64> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(self.error("expected an integer".into()));
            }
            std::str::from_utf8(&self.bytes[start..self.pos])
                .expect("digits are ascii")
                .parse::<u64>()
                .map_err(|_| Error::Syntax {
                    position: start,
                    message: "integer literal too large".into(),
                })
        }
    }

    pub(super) fn series(text: &str, field: FieldSpec, precision: u64) -> Result<PowerSeries> {
        let mut cur = Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let mut acc = PowerSeries::zero(field, precision);
        let mut first = true;
        loop {
            let sign = match cur.peek() {
                None if first => return Err(cur.error("empty series expression".into())),
                None => break,
                Some(b'+') if !first => {
                    cur.bump();
                    1
                }
                Some(b'-') => {
                    cur.bump();
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(cur.error("expected '+' or '-' between terms".into())),
            };
            let term = parse_term(&mut cur, field, precision)?;
            let term = if sign < 0 { term.neg() } else { term };
            acc = acc.add(&term)?;
            first = false;
            if cur.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_term(cur: &mut Cursor, field: FieldSpec, precision: u64) -> Result<PowerSeries> {
        let coeff = match cur.peek() {
            Some(b'(') => {
                cur.bump();
                let neg = match cur.peek() {
                    Some(b'-') => {
                        cur.bump();
                        true
                    }
                    _ => false,
                };
                let num = cur.integer()?;
                cur.expect(b'/')?;
                let den_pos = cur.pos;
                let den = cur.integer()?;
                cur.expect(b')')?;
                if den == 0 {
                    return Err(Error::Syntax {
                        position: den_pos,
                        message: "zero denominator".into(),
                    });
                }
                let num = i64::try_from(num).map_err(|_| Error::Syntax {
                    position: den_pos,
                    message: "numerator too large".into(),
                })?;
                Some(field.from_ratio(if neg { -num } else { num }, den)?)
            }
            Some(b) if b.is_ascii_digit() => {
                let n = cur.integer()?;
                let n = i64::try_from(n).map_err(|_| cur.error("coefficient too large".into()))?;
                Some(field.from_integer(n))
            }
            _ => None,
        };
        match (coeff, cur.peek()) {
            (Some(c), Some(b'*')) => {
                cur.bump();
                let exp = parse_t_power(cur)?;
                check_exponent(exp, precision)?;
                PowerSeries::monomial(field, precision, c, exp)
            }
            (Some(c), _) => PowerSeries::monomial(field, precision, c, 0),
            (None, Some(b't')) => {
                let exp = parse_t_power(cur)?;
                check_exponent(exp, precision)?;
                PowerSeries::monomial(field, precision, field.one(), exp)
            }
            (None, _) => Err(cur.error("expected a coefficient or 't'".into())),
        }
    }

    fn parse_t_power(cur: &mut Cursor) -> Result<u64> {
        cur.expect(b't')?;
        match cur.peek() {
            Some(b'^') => {
                cur.bump();
                cur.integer()
            }
            _ => Ok(1),
        }
    }

    fn check_exponent(exp: u64, precision: u64) -> Result<()> {
        if exp > precision {
            Err(Error::ExponentExceedsPrecision {
                exponent: exp,
                precision,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn parse(text: &str, precision: u64) -> PowerSeries {
        PowerSeries::parse(text, q(), precision).unwrap()
    }

    #[test]
    fn parse_literal_terms() {
        let s = parse("t^2 + t^5", 32);
        assert_eq!(s.coefficient(2), q().one());
        assert_eq!(s.coefficient(5), q().one());
        assert_eq!(s.terms().count(), 2);
    }

    #[test]
    fn parse_zero() {
        let s = parse("0", 8);
        assert!(s.is_zero_up_to_precision());
        assert_eq!(s.order(), OrderValue::AbovePrecision);
    }

    #[test]
    fn parse_rational_coefficients() {
        let s = parse("t^4 - (1/2)*t^6", 16);
        assert_eq!(s.coefficient(4), q().one());
        assert_eq!(s.coefficient(6), q().from_ratio(-1, 2).unwrap());
    }

    #[test]
    fn parse_reports_error_positions() {
        let err = PowerSeries::parse("t^2 + @", q(), 16).unwrap_err();
        match err {
            Error::Syntax { position, .. } => assert_eq!(position, 6),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_exponent_beyond_precision() {
        let err = PowerSeries::parse("t^9", q(), 8).unwrap_err();
        assert!(matches!(err, Error::ExponentExceedsPrecision { exponent: 9, precision: 8 }));
    }

    #[test]
    fn parse_rejects_bad_denominator_mod_p() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        let err = PowerSeries::parse("(1/3)*t", f3, 8).unwrap_err();
        assert!(matches!(
            err,
            Error::DenominatorDivisibleByCharacteristic { .. }
        ));
    }

    #[test]
    fn parse_reduces_prime_field_coefficients() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let s = PowerSeries::parse("7*t^2 - t^3", f5, 8).unwrap();
        assert_eq!(s.coefficient(2), f5.from_integer(2));
        assert_eq!(s.coefficient(3), f5.from_integer(4));
        // 5*t vanishes mod 5
        let z = PowerSeries::parse("5*t", f5, 8).unwrap();
        assert!(z.is_zero_up_to_precision());
    }

    #[test]
    fn order_of_simple_series() {
        assert_eq!(parse("t^2 + t^5", 32).order(), OrderValue::Finite(2));
        assert_eq!(parse("1 + t", 32).order(), OrderValue::Finite(0));
        assert_eq!(parse("0", 8).order(), OrderValue::AbovePrecision);
    }

    #[test]
    fn ops_reject_mixed_fields() {
        let a = parse("t", 16);
        let b = PowerSeries::parse("t", FieldSpec::prime_field(5).unwrap(), 16).unwrap();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.div(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn ring_ops_match_hand_results() {
        let p = 32;
        let a = parse("t^2", p);
        let b = parse("t^3", p);
        assert!(a.mul(&b).unwrap().agrees_with(&parse("t^5", p)));

        let u = parse("1 + t", p);
        let v = parse("1 - t", p);
        assert!(u.mul(&v).unwrap().agrees_with(&parse("1 - t^2", p)));

        let w = parse("t^6 + t^7", p);
        assert!(w.sub(&w).unwrap().is_zero_up_to_precision());
    }

    #[test]
    fn division_examples() {
        let p = 32;
        let q5 = parse("t^5", p).div(&parse("t^2", p)).unwrap();
        assert!(q5.agrees_with(&parse("t^3", p)));
        assert_eq!(q5.precision(), p - 2);

        let q = parse("t^2 + t^3", p).div(&parse("t^2", p)).unwrap();
        assert!(q.agrees_with(&parse("1 + t", p)));

        // alternating quotient, checked by multiplying back
        let a = parse("t^4", p);
        let b = parse("t^2 + t^3", p);
        let quo = a.div(&b).unwrap();
        assert_eq!(quo.order(), OrderValue::Finite(2));
        assert_eq!(quo.coefficient(3), q_field().from_integer(-1));
        assert!(quo.mul(&b).unwrap().agrees_with(&a));
    }

    fn q_field() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn division_error_paths() {
        let p = 16;
        assert!(matches!(
            parse("t", p).div(&parse("0", p)),
            Err(Error::DivisionByZeroSeries)
        ));
        assert!(matches!(
            parse("t", p).div(&parse("t^2", p)),
            Err(Error::DivisionOrderMismatch { .. })
        ));
        // dividing away the whole precision budget
        let err = parse("t^8", 8).div(&parse("t^8", 8)).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision(_)));
    }

    #[test]
    fn sqrt_of_one_plus_t() {
        let s = parse("1 + t", 16).sqrt_unit().unwrap();
        assert_eq!(s.coefficient(0), q().from_integer(1));
        assert_eq!(s.coefficient(1), q().from_ratio(1, 2).unwrap());
        assert_eq!(s.coefficient(2), q().from_ratio(-1, 8).unwrap());
        assert_eq!(s.coefficient(3), q().from_ratio(1, 16).unwrap());
        assert!(s.mul(&s).unwrap().agrees_with(&parse("1 + t", 16)));
    }

    #[test]
    fn sqrt_of_one_is_one() {
        let s = parse("1", 8).sqrt_unit().unwrap();
        assert!(s.agrees_with(&parse("1", 8)));
    }

    #[test]
    fn sqrt_squares_back_with_integer_leading_square() {
        let u = parse("4 + 4*t", 16);
        let s = u.sqrt_unit().unwrap();
        assert_eq!(s.coefficient(0), q().from_integer(2));
        assert_eq!(s.coefficient(1), q().from_integer(1));
        assert!(s.mul(&s).unwrap().agrees_with(&u));
        // equals 2*sqrt(1+t)
        let doubled = parse("1 + t", 16)
            .sqrt_unit()
            .unwrap()
            .scalar_mul(&q().from_integer(2))
            .unwrap();
        assert!(s.agrees_with(&doubled));
    }

    #[test]
    fn sqrt_error_paths() {
        let f2 = FieldSpec::prime_field(2).unwrap();
        let u = PowerSeries::parse("1 + t", f2, 8).unwrap();
        assert!(matches!(u.sqrt_unit(), Err(Error::SqrtCharacteristicTwo)));
        assert!(matches!(
            parse("t + t^2", 8).sqrt_unit(),
            Err(Error::NotASquare(_))
        ));
        assert!(matches!(
            parse("2 + t", 8).sqrt_unit(),
            Err(Error::NotASquare(_))
        ));
    }

    #[test]
    fn sqrt_over_prime_field() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let u = PowerSeries::parse("2 + t", f7, 12).unwrap();
        // 2 = 3^2 = 4^2 mod 7; the smaller root 3 is chosen
        let s = u.sqrt_unit().unwrap();
        assert_eq!(s.coefficient(0), f7.from_integer(3));
        assert!(s.mul(&s).unwrap().agrees_with(&u));
    }

    #[test]
    fn compress_and_expand_exponents() {
        let s = parse("t^4 + t^6", 32);
        let c = s.compress_exponents(2).unwrap();
        assert!(c.agrees_with(&parse("t^2 + t^3", 16)));
        assert_eq!(c.precision(), 16);
        assert!(s.compress_exponents(1).unwrap().agrees_with(&s));
        assert!(parse("t^6", 32)
            .compress_exponents(3)
            .unwrap()
            .agrees_with(&parse("t^2", 10)));
        assert!(matches!(
            parse("t^3 + t^4", 32).compress_exponents(2),
            Err(Error::ExponentNotDivisible { exponent: 3, nu: 2 })
        ));
        let back = c.expand_exponents(2);
        assert!(back.agrees_with(&s.truncated(32)));
    }

    #[test]
    fn substitution_reparameterizes() {
        let s = parse("t^2 + t^5", 24);
        let g = parse("t + t^2", 24); // t*(1+t)
        let sub = s.substitute(&g).unwrap();
        // (t+t^2)^2 = t^2 + 2t^3 + t^4
        assert_eq!(sub.coefficient(2), q().one());
        assert_eq!(sub.coefficient(3), q().from_integer(2));
        assert_eq!(sub.order(), OrderValue::Finite(2));
    }

    #[test]
    fn display_round_trips_through_parser() {
        let samples = ["0", "1 + t", "t^2 + t^5", "t^4 - (1/2)*t^6", "2*t^3 - t"];
        for text in samples {
            let s = parse(text, 32);
            let back = parse(&s.to_string(), 32);
            assert!(s.agrees_with(&back), "{text} failed to round trip");
        }
    }
}
