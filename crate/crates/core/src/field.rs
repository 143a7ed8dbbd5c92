//! Exact arithmetic in the monogenic field Q(alpha_1) and minimal
//! polynomials of its elements.
//!
//! The defining polynomial is the minimal polynomial of the dominant root,
//! found among the monic integer divisors of the squarefree part of the
//! characteristic polynomial (divisors are assembled from certified root
//! subsets and confirmed by exact division, so no general factorization
//! machinery is needed). Elements are rational coordinate vectors in the
//! power basis; minimal polynomials of elements come from the
//! characteristic polynomial of the multiplication matrix, made squarefree
//! by an exact gcd.

use rug::{Integer, Rational};

use crate::cinterval::ComplexBox;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::poly::{IntPoly, RatPoly};
use crate::roots::{isolate_roots, RootBox};

/// Element of the field, as rational coordinates in the power basis
/// 1, alpha, ..., alpha^(D-1).
#[derive(Clone, Debug, PartialEq)]
pub struct FieldElement {
    pub coords: Vec<Rational>,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.cmp0() == std::cmp::Ordering::Equal)
    }

    pub fn from_rational(q: Rational, degree: usize) -> Self {
        let mut coords = vec![Rational::new(); degree];
        coords[0] = q;
        FieldElement { coords }
    }

    pub fn from_integer(n: &Integer, degree: usize) -> Self {
        Self::from_rational(Rational::from(n), degree)
    }
}

/// The number field Q(alpha_1) with a distinguished real embedding.
#[derive(Clone, Debug)]
pub struct NumberField {
    /// Monic integer minimal polynomial of the generator.
    pub min_poly: IntPoly,
    pub degree: usize,
    /// Certified enclosures of all conjugates of the generator.
    pub embeddings: Vec<RootBox>,
    /// Index into `embeddings` of the distinguished (real) generator.
    pub generator_index: usize,
}

impl NumberField {
    /// Build the field generated by the root of `min_poly` enclosed by
    /// `generator`. `min_poly` must be monic and squarefree.
    pub fn new(min_poly: IntPoly, generator: &Interval, prec: u32) -> Result<Self> {
        if *min_poly.leading() != 1u32 {
            return Err(Error::InvalidSpec("defining polynomial must be monic".into()));
        }
        let embeddings = isolate_roots(&min_poly, prec)?;
        let mut generator_index = None;
        for (i, r) in embeddings.iter().enumerate() {
            if r.is_real && r.re.overlaps(generator) {
                generator_index = Some(i);
            }
        }
        let generator_index = generator_index.ok_or_else(|| {
            Error::PrecisionExhausted("generator enclosure does not match any real root".into())
        })?;
        let degree = min_poly.degree();
        Ok(NumberField { min_poly, degree, embeddings, generator_index })
    }

    pub fn generator(&self) -> FieldElement {
        let mut coords = vec![Rational::new(); self.degree];
        if self.degree > 1 {
            coords[1] = Rational::from(1);
        } else {
            // degree-1 field: alpha is rational, -c0/c1 with c1 = 1
            coords[0] = Rational::from(-self.min_poly.coeffs[0].clone());
        }
        FieldElement { coords }
    }

    /// Tight certified enclosure of the distinguished real generator.
    pub fn generator_enclosure(&self) -> &Interval {
        &self.embeddings[self.generator_index].re
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| Rational::from(x + y))
            .collect();
        FieldElement { coords }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| Rational::from(x - y))
            .collect();
        FieldElement { coords }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let ra = RatPoly::new(a.coords.clone());
        let rb = RatPoly::new(b.coords.clone());
        let prod = ratpoly_mul(&ra, &rb);
        let modp = RatPoly::from_int(&self.min_poly);
        let rem = prod.rem(&modp);
        self.pad(rem)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        // extended Euclid in Q[X]: u*a + v*m = gcd = const
        let m = RatPoly::from_int(&self.min_poly);
        let mut r0 = m;
        let mut r1 = RatPoly::new(a.coords.clone());
        let mut s0 = RatPoly::zero();
        let mut s1 = RatPoly::new(vec![Rational::from(1)]);
        while !r1.is_zero() && r1.degree() > 0 {
            let (q, r) = r0.div_rem(&r1);
            let s = ratpoly_sub(&s0, &ratpoly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r1.is_zero() {
            // a shares a factor with the defining polynomial; with an
            // irreducible minimal polynomial this cannot happen
            return Err(Error::InvalidSpec("element not invertible".into()));
        }
        let c = r1.coeffs[0].clone();
        let coords = s1.coeffs.iter().map(|x| Rational::from(x / &c)).collect();
        Ok(self.pad(RatPoly::new(coords)))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow_i64(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut result = FieldElement::from_rational(Rational::from(1), self.degree);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            k >>= 1;
        }
        Ok(result)
    }

    fn pad(&self, p: RatPoly) -> FieldElement {
        let mut coords = p.coeffs;
        coords.resize(self.degree.max(1), Rational::new());
        FieldElement { coords }
    }

    /// Certified enclosure of the element under embedding `idx`.
    pub fn embed(&self, a: &FieldElement, idx: usize, prec: u32) -> ComplexBox {
        let root = &self.embeddings[idx];
        let z = ComplexBox::new(root.re.with_prec(prec), root.im.with_prec(prec));
        eval_ratpoly_complex(&a.coords, &z, prec)
    }

    /// Enclosure under the distinguished real embedding.
    pub fn embed_real(&self, a: &FieldElement, prec: u32) -> Interval {
        let x = self.generator_enclosure().with_prec(prec);
        let mut acc = Interval::zero(prec);
        for c in a.coords.iter().rev() {
            acc = acc.mul(&x).add(&Interval::from_rational(c, prec));
        }
        acc
    }

    /// Exact minimal polynomial (primitive, positive leading coefficient)
    /// via the characteristic polynomial of the multiplication matrix.
    pub fn minimal_polynomial(&self, a: &FieldElement) -> Result<IntPoly> {
        if a.is_zero() {
            return Ok(IntPoly::from_i64(&[0, 1]));
        }
        let d = self.degree;
        // multiplication matrix: column j = coords of a * alpha^j
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
        let mut basis = FieldElement::from_rational(Rational::from(1), d);
        for _ in 0..d {
            let prod = self.mul(a, &basis);
            cols.push(prod.coords.clone());
            basis = self.mul(&basis, &self.generator());
        }
        // char poly by Faddeev-LeVerrier: exact over Q
        let char_poly = faddeev_leverrier(&cols, d);
        // char poly = minpoly^(d/deg); squarefree part is the minimal polynomial
        let cp = RatPoly::new(char_poly);
        let dcp = cp.derivative();
        let g = cp.gcd(&dcp);
        let (min_poly, rem) = cp.div_rem(&g);
        debug_assert!(rem.is_zero());
        Ok(min_poly.to_primitive_int())
    }
}

fn ratpoly_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_zero() || b.is_zero() {
        return RatPoly::zero();
    }
    let mut out = vec![Rational::new(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    RatPoly::new(out)
}

fn ratpoly_sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = vec![Rational::new(); n];
    for (i, x) in a.coeffs.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.coeffs.iter().enumerate() {
        out[i] -= y;
    }
    RatPoly::new(out)
}

fn eval_ratpoly_complex(coords: &[Rational], z: &ComplexBox, prec: u32) -> ComplexBox {
    let mut acc = ComplexBox::zero(prec);
    for c in coords.iter().rev() {
        acc = acc.mul(z);
        acc.re = acc.re.add(&Interval::from_rational(c, prec));
    }
    acc
}

/// Characteristic polynomial of a d x d rational matrix given by columns,
/// coefficients low to high (monic).
fn faddeev_leverrier(cols: &[Vec<Rational>], d: usize) -> Vec<Rational> {
    let at = |m: &Vec<Vec<Rational>>, i: usize, j: usize| m[j][i].clone();
    let mat_mul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::new(); d]; d];
        for j in 0..d {
            for i in 0..d {
                let mut s = Rational::new();
                for k in 0..d {
                    s += Rational::from(&at(a, i, k) * &at(b, k, j));
                }
                out[j][i] = s;
            }
        }
        out
    };
    let trace = |a: &Vec<Vec<Rational>>| -> Rational {
        let mut t = Rational::new();
        for i in 0..d {
            t += &a[i][i];
        }
        t
    };

    let m0: Vec<Vec<Rational>> = cols.to_vec();
    let mut coeffs = vec![Rational::new(); d + 1];
    coeffs[d] = Rational::from(1);
    let mut mk = m0.clone();
    let mut c = Rational::new();
    for k in 1..=d {
        if k > 1 {
            // M_k = A (M_{k-1} + c_{k-1} I)
            let mut shifted = mk.clone();
            for i in 0..d {
                shifted[i][i] += &c;
            }
            mk = mat_mul(&m0, &shifted);
        }
        c = -Rational::from(trace(&mk) / Rational::from(k as u64));
        coeffs[d - k] = c.clone();
    }
    coeffs
}

/// Find the minimal polynomial of the distinguished real root of `squarefree`
/// among monic integer divisors built from certified root subsets, and
/// return the field it generates.
pub fn field_of_dominant_root(
    squarefree: &IntPoly,
    dominant: &RootBox,
    prec: u32,
) -> Result<NumberField> {
    // make monic check: characteristic polynomials are monic by construction
    if *squarefree.leading() != 1u32 {
        return Err(Error::InvalidSpec("squarefree part must be monic".into()));
    }
    let deg = squarefree.degree();
    let roots = isolate_roots(squarefree, prec)?;
    // locate the dominant root among the isolated ones
    let mut dom_idx = None;
    for (i, r) in roots.iter().enumerate() {
        if r.is_real && r.re.overlaps(&dominant.re) {
            dom_idx = Some(i);
        }
    }
    let dom_idx = dom_idx.ok_or_else(|| {
        Error::PrecisionExhausted("dominant root not found among squarefree-part roots".into())
    })?;

    // enumerate subsets containing the dominant root by ascending size
    let others: Vec<usize> = (0..roots.len()).filter(|&i| i != dom_idx).collect();
    for size in 1..=deg {
        let mut found: Option<IntPoly> = None;
        let mut subset = Vec::new();
        enumerate_subsets(&others, size - 1, 0, &mut subset, &mut |chosen| {
            if found.is_some() {
                return;
            }
            let mut idxs = vec![dom_idx];
            idxs.extend_from_slice(chosen);
            if let Some(candidate) = integer_poly_from_roots(&roots, &idxs, prec) {
                if let Some(quot) = squarefree.exact_div(&candidate) {
                    // confirm the dominant root belongs to `candidate`:
                    // the cofactor must be certainly nonzero at it
                    let q_at = quot.eval_interval(&roots[dom_idx].re);
                    if !q_at.encloses_zero() {
                        found = Some(candidate);
                    }
                }
            }
        });
        if let Some(min_poly) = found {
            return NumberField::new(min_poly, &roots[dom_idx].re, prec);
        }
    }
    Err(Error::PrecisionExhausted(
        "could not identify the minimal polynomial of the dominant root".into(),
    ))
}

fn enumerate_subsets(
    pool: &[usize],
    size: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if current.len() == size {
        visit(current);
        return;
    }
    for i in start..pool.len() {
        current.push(pool[i]);
        enumerate_subsets(pool, size, i + 1, current, visit);
        current.pop();
    }
}

/// Expand prod (X - root_i) over the chosen certified roots; succeed only
/// when every coefficient enclosure pins a unique integer.
fn integer_poly_from_roots(roots: &[RootBox], idxs: &[usize], prec: u32) -> Option<IntPoly> {
    let one = ComplexBox::one(prec);
    let mut coeffs: Vec<ComplexBox> = vec![one];
    for &i in idxs {
        let r = roots[i].as_complex();
        let mut next = vec![ComplexBox::zero(prec); coeffs.len() + 1];
        // multiply running polynomial by (X - r): coefficients high to low
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(&r));
        }
        coeffs = next;
    }
    // coeffs are low-to-high complex enclosures; require unique integers
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if !c.im.encloses_zero() {
            return None;
        }
        let lo = c.re.lo().clone().ceil().to_integer()?;
        let hi = c.re.hi().clone().floor().to_integer()?;
        // unique integer in [lo_ceil, hi_floor] requires them equal; when the
        // enclosure sits exactly on an integer both are that integer
        let v = if lo == hi {
            lo
        } else {
            let fl = c.re.lo().clone().floor().to_integer()?;
            let fh = c.re.hi().clone().floor().to_integer()?;
            if fl == fh {
                fl
            } else {
                return None;
            }
        };
        out.push(v);
    }
    Some(IntPoly::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::SequenceSpec;

    fn plastic_field() -> NumberField {
        let p = SequenceSpec::padovan().char_poly();
        let roots = isolate_roots(&p, 160).unwrap();
        let dom = roots.iter().find(|r| r.is_real).unwrap().clone();
        field_of_dominant_root(&p, &dom, 160).unwrap()
    }

    #[test]
    fn plastic_min_poly_is_whole_cubic() {
        let f = plastic_field();
        assert_eq!(f.degree, 3);
        assert_eq!(f.min_poly, IntPoly::from_i64(&[-1, -1, 0, 1]));
    }

    #[test]
    fn inverse_of_2alpha_plus_3() {
        let f = plastic_field();
        let alpha = f.generator();
        let two = FieldElement::from_rational(Rational::from(2), 3);
        let three = FieldElement::from_rational(Rational::from(3), 3);
        let x = f.add(&f.mul(&two, &alpha), &three);
        let inv = f.inv(&x).unwrap();
        // 1/(2a+3) = (4a^2 - 6a + 5)/23
        assert_eq!(inv.coords[0], Rational::from((5, 23)));
        assert_eq!(inv.coords[1], Rational::from((-6, 23)));
        assert_eq!(inv.coords[2], Rational::from((4, 23)));
        let prod = f.mul(&x, &inv);
        assert_eq!(prod, FieldElement::from_rational(Rational::from(1), 3));
    }

    #[test]
    fn min_poly_of_kappa() {
        let f = plastic_field();
        let alpha = f.generator();
        let two = FieldElement::from_rational(Rational::from(2), 3);
        let three = FieldElement::from_rational(Rational::from(3), 3);
        let kappa = f.inv(&f.add(&f.mul(&two, &alpha), &three)).unwrap();
        let mp = f.minimal_polynomial(&kappa).unwrap();
        // 23 x^3 - 23 x^2 + 9x - 1
        assert_eq!(mp, IntPoly::from_i64(&[-1, 9, -23, 23]));
    }

    #[test]
    fn reducible_char_poly_gives_small_field() {
        // u_{n+3} = 2u_{n+2} + u_{n+1} - 2u_n: char poly (X-2)(X-1)(X+1)
        let p = IntPoly::from_i64(&[2, -1, -2, 1]);
        let roots = isolate_roots(&p, 128).unwrap();
        let dom = roots
            .iter()
            .filter(|r| r.is_real)
            .max_by(|a, b| a.re.mid_f64().abs().partial_cmp(&b.re.mid_f64().abs()).unwrap())
            .unwrap()
            .clone();
        let f = field_of_dominant_root(&p, &dom, 128).unwrap();
        assert_eq!(f.degree, 1);
        assert_eq!(f.min_poly, IntPoly::from_i64(&[-2, 1]));
    }

    #[test]
    fn embedding_matches_generator() {
        let f = plastic_field();
        let alpha = f.generator();
        let e = f.embed_real(&alpha, 128);
        assert!((e.mid_f64() - 1.324717957244746).abs() < 1e-12);
    }
}
