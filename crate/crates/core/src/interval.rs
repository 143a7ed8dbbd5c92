//! Directed-rounding real intervals on top of MPFR floats.
//!
//! Every arithmetic operation rounds the lower endpoint down and the upper
//! endpoint up, so an `Interval` always encloses the exact real value it
//! stands for. All certified constants in the bound cascade are derived
//! through this type; bare floating point never leaks into a proof step.

use rug::float::Round;
use rug::ops::PowAssignRound;
use rug::{Assign, Float, Integer, Rational};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_string_radix(10, Some(17)), self.hi.to_string_radix(10, Some(17)))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_string_radix(10, Some(25)), self.hi.to_string_radix(10, Some(25)))
    }
}

fn f_round(prec: u32, src: &Float, round: Round) -> Float {
    let mut f = Float::new(prec);
    f.assign(src);
    // Assign rounds to nearest; fix up directionally if precision shrank.
    if f != *src {
        let cmp = f.partial_cmp(src);
        match (round, cmp) {
            (Round::Down, Some(Ordering::Greater)) => f.next_down(),
            (Round::Up, Some(Ordering::Less)) => f.next_up(),
            _ => {}
        }
    }
    f
}

impl Interval {
    pub fn new_unchecked(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi, "inverted interval: {:?} > {:?}", lo, hi);
        Interval { lo, hi }
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Exact point interval; the float itself is the represented value.
    pub fn point(f: Float) -> Self {
        Interval { lo: f.clone(), hi: f }
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        Interval { lo, hi }
    }

    /// Exact rational n/d as an enclosure.
    pub fn from_ratio(n: i64, d: i64, prec: u32) -> Self {
        Self::from_rational(&Rational::from((n, d)), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Interval { lo: Float::new(prec), hi: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_u64(1, prec)
    }

    /// Euler's number e.
    pub fn e(prec: u32) -> Self {
        Self::one(prec).exp()
    }

    pub fn width(&self) -> Float {
        Float::with_val_round(self.prec(), &self.hi - &self.lo, Round::Up).0
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        let lo = Float::with_val_round(prec, &self.lo + &other.lo, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi + &other.hi, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        let lo = Float::with_val_round(prec, &self.lo - &other.hi, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi - &other.lo, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = Float::with_val_round(prec, a * b, Round::Down).0;
            let u = Float::with_val_round(prec, a * b, Round::Up).0;
            lo = Some(match lo {
                None => d,
                Some(cur) => if d < cur { d } else { cur },
            });
            hi = Some(match hi {
                None => u,
                Some(cur) => if u > cur { u } else { cur },
            });
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    /// Panics if the divisor encloses zero; operational code must check first.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.encloses_zero(), "interval division by an enclosure of zero");
        let prec = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = Float::with_val_round(prec, a / b, Round::Down).0;
            let u = Float::with_val_round(prec, a / b, Round::Up).0;
            lo = Some(match lo {
                None => d,
                Some(cur) => if d < cur { d } else { cur },
            });
            hi = Some(match hi {
                None => u,
                Some(cur) => if u > cur { u } else { cur },
            });
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn recip(&self) -> Self {
        Interval::one(self.prec()).div(self)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_sign_negative() {
            self.clone()
        } else if self.hi.is_sign_negative() {
            self.neg()
        } else {
            let prec = self.prec();
            let a = self.lo.clone().abs();
            let b = self.hi.clone().abs();
            let hi = if a > b { a } else { b };
            Interval { lo: Float::new(prec), hi }
        }
    }

    /// Tight enclosure of x^2 (handles zero-straddling intervals).
    pub fn square(&self) -> Self {
        let prec = self.prec();
        let a = Float::with_val_round(prec, &self.lo * &self.lo, Round::Down).0;
        let b = Float::with_val_round(prec, &self.hi * &self.hi, Round::Down).0;
        let a_up = Float::with_val_round(prec, &self.lo * &self.lo, Round::Up).0;
        let b_up = Float::with_val_round(prec, &self.hi * &self.hi, Round::Up).0;
        if self.encloses_zero() {
            Interval { lo: Float::new(prec), hi: if a_up > b_up { a_up } else { b_up } }
        } else {
            Interval {
                lo: if a < b { a } else { b },
                hi: if a_up > b_up { a_up } else { b_up },
            }
        }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.is_sign_negative() && !self.lo.is_zero() {
            return Err(Error::PrecisionExhausted("sqrt of possibly negative value".into()));
        }
        let mut lo = self.lo.clone();
        lo.sqrt_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.sqrt_round(Round::Up);
        Ok(Interval { lo, hi })
    }

    pub fn ln(&self) -> Result<Self> {
        if !(self.lo > 0u32) {
            return Err(Error::PrecisionExhausted(format!(
                "log of value not certainly positive: {:?}",
                self
            )));
        }
        let mut lo = self.lo.clone();
        lo.ln_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.ln_round(Round::Up);
        Ok(Interval { lo, hi })
    }

    pub fn exp(&self) -> Self {
        let mut lo = self.lo.clone();
        lo.exp_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.exp_round(Round::Up);
        Interval { lo, hi }
    }

    /// x^n for a certainly positive base (monotone endpoint powering).
    pub fn pow_int_pos(&self, n: i64) -> Result<Self> {
        if !(self.lo > 0u32) {
            return Err(Error::PrecisionExhausted("power of non-positive base".into()));
        }
        if n == 0 {
            return Ok(Interval::one(self.prec()));
        }
        let e = Integer::from(n.unsigned_abs());
        let mut lo = self.lo.clone();
        lo.pow_assign_round(&e, Round::Down);
        let mut hi = self.hi.clone();
        hi.pow_assign_round(&e, Round::Up);
        let v = Interval { lo, hi };
        if n < 0 {
            Ok(v.recip())
        } else {
            Ok(v)
        }
    }

    /// x^n by square-and-multiply on intervals; valid for any sign.
    pub fn pow_u32(&self, n: u32) -> Self {
        let mut result = Interval::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        result
    }

    pub fn max_with(&self, other: &Self) -> Self {
        let lo = if self.lo > other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    pub fn min_with(&self, other: &Self) -> Self {
        let lo = if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi < other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    /// max(0, x) pointwise; used for log^+ terms.
    pub fn clamp_nonneg(&self) -> Self {
        self.max_with(&Interval::zero(self.prec()))
    }

    pub fn encloses_zero(&self) -> bool {
        !(self.lo > 0u32) && !(self.hi < 0u32)
    }

    pub fn is_certainly_positive(&self) -> bool {
        self.lo > 0u32
    }

    pub fn is_certainly_negative(&self) -> bool {
        self.hi < 0u32
    }

    /// True when the entire enclosure lies strictly below `other`'s.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Self) -> bool {
        self.lo > other.hi
    }

    pub fn certainly_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    pub fn contains(&self, v: &Float) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_rational(&self, v: &Rational) -> bool {
        let prec = self.prec() + 16;
        let f_lo = Float::with_val_round(prec, v, Round::Down).0;
        let f_hi = Float::with_val_round(prec, v, Round::Up).0;
        self.lo <= f_lo && f_hi <= self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        !(self.certainly_lt(other) || self.certainly_gt(other))
    }

    /// Unambiguous floor: both endpoints floor to the same integer.
    pub fn floor_exact(&self) -> Option<Integer> {
        let fl = self.lo.clone().floor();
        let fh = self.hi.clone().floor();
        let il = fl.to_integer()?;
        let ih = fh.to_integer()?;
        if il == ih {
            Some(il)
        } else {
            None
        }
    }

    /// Smallest integer certainly >= the enclosed value.
    pub fn ceil_upper(&self) -> Option<Integer> {
        self.hi.clone().ceil().to_integer()
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn to_dec_pair(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_string_radix_round(10, Some(digits), Round::Down),
            self.hi.to_string_radix_round(10, Some(digits), Round::Up),
        )
    }

    /// Re-round both endpoints outward to a new precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Interval {
            lo: f_round(prec, &self.lo, Round::Down),
            hi: f_round(prec, &self.hi, Round::Up),
        }
    }

    /// Parse decimal endpoint strings back into an interval, outward-rounded.
    pub fn from_dec_pair(lo: &str, hi: &str, prec: u32) -> Result<Self> {
        let lo = Float::parse(lo)
            .map_err(|e| Error::MalformedDocument(format!("bad float literal: {e}")))?;
        let hi = Float::parse(hi)
            .map_err(|e| Error::MalformedDocument(format!("bad float literal: {e}")))?;
        let lo = Float::with_val_round(prec, lo, Round::Down).0;
        let hi = Float::with_val_round(prec, hi, Round::Up).0;
        if lo > hi {
            return Err(Error::MalformedDocument("inverted interval".into()));
        }
        Ok(Interval { lo, hi })
    }
}

/// ln of an exact integer (must be positive).
pub fn ln_integer(v: &Integer, prec: u32) -> Result<Interval> {
    if *v <= 0 {
        return Err(Error::PrecisionExhausted("log of non-positive integer".into()));
    }
    Interval::from_integer(v, prec).ln()
}

pub fn ln_u64(v: u64, prec: u32) -> Result<Interval> {
    ln_integer(&Integer::from(v), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_of_third() {
        let third = Interval::from_ratio(1, 3, 64);
        assert!(third.lo() < third.hi());
        assert!(third.contains_rational(&Rational::from((1, 3))));
    }

    #[test]
    fn arithmetic_contains_exact() {
        let a = Interval::from_ratio(1, 3, 96);
        let b = Interval::from_ratio(1, 7, 96);
        let s = a.add(&b);
        assert!(s.contains_rational(&Rational::from((10, 21))));
        let p = a.mul(&b);
        assert!(p.contains_rational(&Rational::from((1, 21))));
        let q = a.div(&b);
        assert!(q.contains_rational(&Rational::from((7, 3))));
    }

    #[test]
    fn square_straddling_zero() {
        let x = Interval::new_unchecked(
            Float::with_val(64, -2),
            Float::with_val(64, 3),
        );
        let s = x.square();
        assert!(s.lo().is_zero());
        assert!(*s.hi() >= 9);
    }

    #[test]
    fn ln_exp_roundtrip_encloses() {
        let two = Interval::from_u64(2, 128);
        let l = two.ln().unwrap();
        let back = l.exp();
        assert!(back.lo() <= &2u32 && &2u32 <= back.hi());
        // ln 2 = 0.693147180559945...
        assert!(l.mid_f64() > 0.6931 && l.mid_f64() < 0.6932);
    }

    #[test]
    fn floor_detection() {
        let sqrt2 = Interval::from_u64(2, 160).sqrt().unwrap();
        let scaled = sqrt2.mul(&Interval::from_u64(100, 160));
        assert_eq!(scaled.floor_exact().unwrap(), Integer::from(141));
        let whole = Interval::from_u64(5, 64);
        assert_eq!(whole.floor_exact().unwrap(), Integer::from(5));
    }

    #[test]
    fn pow_matches_mul() {
        let x = Interval::from_ratio(-3, 2, 96);
        let cubed = x.pow_u32(3);
        assert!(cubed.contains_rational(&Rational::from((-27, 8))));
        let pos = Interval::from_ratio(3, 2, 96);
        let p5 = pos.pow_int_pos(5).unwrap();
        assert!(p5.contains_rational(&Rational::from((243, 32))));
        let pneg = pos.pow_int_pos(-2).unwrap();
        assert!(pneg.contains_rational(&Rational::from((4, 9))));
    }
}
