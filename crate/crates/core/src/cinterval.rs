//! Rectangular complex enclosures built from two real intervals.

use rug::Float;

use crate::error::Result;
use crate::interval::Interval;

#[derive(Clone, Debug)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBox { re, im }
    }

    pub fn real(re: Interval) -> Self {
        let prec = re.prec();
        ComplexBox { re, im: Interval::zero(prec) }
    }

    pub fn point(re: Float, im: Float) -> Self {
        ComplexBox { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBox { re: Interval::zero(prec), im: Interval::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        ComplexBox { re: Interval::one(prec), im: Interval::zero(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexBox { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexBox { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn neg(&self) -> Self {
        ComplexBox { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        ComplexBox { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        ComplexBox { re, im }
    }

    pub fn scale(&self, s: &Interval) -> Self {
        ComplexBox { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn norm_sq(&self) -> Interval {
        self.re.square().add(&self.im.square())
    }

    pub fn abs(&self) -> Result<Interval> {
        self.norm_sq().sqrt()
    }

    /// Division; the divisor's norm must be certainly positive.
    pub fn div(&self, other: &Self) -> Self {
        let d = other.norm_sq();
        let num = self.mul(&other.conj());
        ComplexBox { re: num.re.div(&d), im: num.im.div(&d) }
    }

    pub fn pow_u32(&self, n: u32) -> Self {
        let mut result = ComplexBox::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn encloses_zero(&self) -> bool {
        self.re.encloses_zero() && self.im.encloses_zero()
    }

    /// Certified Euclidean distance between box centers, as an interval
    /// of the full box-to-box distance range is not needed: this returns
    /// an enclosure of |self - other|.
    pub fn dist(&self, other: &Self) -> Result<Interval> {
        self.sub(other).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_matches_hand_value() {
        let prec = 96;
        let a = ComplexBox::new(Interval::from_i64(1, prec), Interval::from_i64(2, prec));
        let b = ComplexBox::new(Interval::from_i64(3, prec), Interval::from_i64(-1, prec));
        // (1+2i)(3-i) = 5 + 5i
        let p = a.mul(&b);
        assert!(p.re.contains(&Float::with_val(prec, 5)));
        assert!(p.im.contains(&Float::with_val(prec, 5)));
    }

    #[test]
    fn abs_of_3_4_is_5() {
        let prec = 96;
        let z = ComplexBox::new(Interval::from_i64(3, prec), Interval::from_i64(4, prec));
        let a = z.abs().unwrap();
        assert!(a.contains(&Float::with_val(prec, 5)));
        assert!(a.width().to_f64() < 1e-20);
    }

    #[test]
    fn division_roundtrip() {
        let prec = 128;
        let a = ComplexBox::new(Interval::from_i64(7, prec), Interval::from_i64(-3, prec));
        let b = ComplexBox::new(Interval::from_i64(2, prec), Interval::from_i64(5, prec));
        let q = a.div(&b);
        let back = q.mul(&b);
        assert!(back.re.contains(&Float::with_val(prec, 7)));
        assert!(back.im.contains(&Float::with_val(prec, -3)));
    }
}
