//! Exact integer and rational polynomial arithmetic: gcd, squarefree
//! decomposition, exact division, and certified evaluation.

use rug::{Integer, Rational};

use crate::cinterval::ComplexBox;
use crate::interval::Interval;

/// Dense integer polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.cmp0() == std::cmp::Ordering::Equal) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Integer::new());
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![Integer::new()] }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].cmp0() == std::cmp::Ordering::Equal
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &Integer {
        self.coeffs.last().unwrap()
    }

    pub fn derivative(&self) -> IntPoly {
        if self.degree() == 0 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Integer::from(c * Integer::from(i)))
            .collect();
        IntPoly::new(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Integer::from(a * b);
            }
        }
        IntPoly::new(out)
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = divisor.degree();
        let lead = divisor.leading();
        let mut quot = vec![Integer::new(); self.degree() - dn + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dn].clone();
            if top.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let (q, r) = top.div_rem(lead.clone());
            if r.cmp0() != std::cmp::Ordering::Equal {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= Integer::from(&q * d);
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| c.cmp0() != std::cmp::Ordering::Equal) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Content (gcd of coefficients), always nonnegative.
    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g == 1 {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if g.cmp0() == std::cmp::Ordering::Equal {
            g = Integer::from(1);
        }
        if self.leading() < &0 {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(c / &g)).collect())
    }

    /// Primitive gcd via rational Euclid; fine at the degrees we handle.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a = RatPoly::from_int(self);
        let mut b = RatPoly::from_int(other);
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.to_primitive_int()
    }

    /// Yun's squarefree decomposition: returns (factor, multiplicity) pairs
    /// with multiplicities ascending; the product of factor^mult recovers
    /// the primitive part.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let p = self.primitive();
        if p.degree() == 0 {
            return vec![];
        }
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.degree() == 0 {
            return vec![(p, 1)];
        }
        let mut out = Vec::new();
        let mut c = p.exact_div(&g).expect("gcd divides");
        let mut d = dp.exact_div(&g).expect("gcd divides derivative");
        let mut mult = 1u32;
        loop {
            let cd = c.derivative();
            let w = d.sub(&cd);
            let f = c.gcd(&w);
            if f.degree() > 0 {
                out.push((f.clone(), mult));
            }
            c = c.exact_div(&f).expect("factor divides");
            d = w.exact_div(&f).expect("factor divides");
            if c.degree() == 0 {
                break;
            }
            mult += 1;
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Integer::new(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::new(out)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Exact sign of p(num / 2^log2_den) via scaled integer Horner:
    /// p(num/2^t) * 2^(t*deg) = sum a_i num^i 2^(t(deg-i)).
    pub fn sign_at_dyadic(&self, num: &Integer, log2_den: u32) -> i32 {
        let deg = self.degree();
        let mut acc = self.coeffs[deg].clone();
        for i in (0..deg).rev() {
            acc *= num;
            let mut term = self.coeffs[i].clone();
            term <<= log2_den * (deg - i) as u32;
            acc += term;
        }
        acc.cmp0() as i32
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let prec = x.prec();
        let mut acc = Interval::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Interval::from_integer(c, prec));
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexBox) -> ComplexBox {
        let prec = z.prec();
        let mut acc = ComplexBox::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z);
            acc.re = acc.re.add(&Interval::from_integer(c, prec));
        }
        acc
    }

    /// Cauchy root bound: all roots have modulus < 1 + max |a_i / a_n|.
    pub fn cauchy_bound_f64(&self) -> f64 {
        let lead = self.leading().to_f64().abs();
        let mut m: f64 = 0.0;
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            m = m.max(c.to_f64().abs() / lead);
        }
        1.0 + m
    }
}

/// Dense rational polynomial used internally for gcds and characteristic
/// polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    pub coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.cmp0() == std::cmp::Ordering::Equal) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::new());
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![Rational::new()] }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(p.coeffs.iter().map(|c| Rational::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].cmp0() == std::cmp::Ordering::Equal
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative(&self) -> RatPoly {
        if self.degree() == 0 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * Rational::from(i as u64)))
                .collect(),
        )
    }

    /// Remainder of self / other (other nonzero).
    pub fn rem(&self, other: &RatPoly) -> RatPoly {
        self.div_rem(other).1
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, other: &RatPoly) -> (RatPoly, RatPoly) {
        if self.degree() < other.degree() {
            return (RatPoly::zero(), self.clone());
        }
        let dn = other.degree();
        let lead = other.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::new(); self.degree() - dn + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dn].clone();
            if top.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let q = Rational::from(&top / lead);
            for (i, d) in other.coeffs.iter().enumerate() {
                let t = Rational::from(&q * d);
                rem[k + i] -= t;
            }
            quot[k] = q;
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Clear denominators and strip content.
    pub fn to_primitive_int(&self) -> IntPoly {
        let mut den = Integer::from(1);
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| Integer::from(c.numer() * Integer::from(&den / c.denom())))
            .collect();
        IntPoly::new(ints).primitive()
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        // normalize monic
        if !a.is_zero() {
            let lead = a.coeffs.last().unwrap().clone();
            for c in &mut a.coeffs {
                *c /= &lead;
            }
        }
        a
    }
}
