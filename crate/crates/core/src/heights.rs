//! Absolute logarithmic heights and the A-values entering the lower bound
//! for linear forms in logarithms.
//!
//! Heights are computed from exact minimal polynomials via the Mahler
//! measure: h = (log |lead| + sum log^+ |conjugate|) / deg, with the
//! conjugates enclosed by certified root isolation.

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::interval::Interval;
use crate::roots::isolate_roots;

/// Certified height data for one field element.
#[derive(Clone, Debug)]
pub struct HeightValue {
    /// Enclosure of the absolute logarithmic height.
    pub h: Interval,
    /// Enclosure of A = max(D h, |log x|), when the element is real positive.
    pub a: Option<Interval>,
}

/// Absolute logarithmic height of a nonzero element.
pub fn log_height(field: &NumberField, x: &FieldElement, prec: u32) -> Result<Interval> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let min_poly = field.minimal_polynomial(x)?;
    let deg = min_poly.degree();
    if deg == 0 {
        // nonzero rational constant polynomial cannot be a minimal polynomial
        return Err(Error::InvalidSpec("degenerate minimal polynomial".into()));
    }
    let lead = Interval::from_integer(min_poly.leading(), prec).abs();
    let mut acc = lead.ln()?;
    for root in isolate_roots(&min_poly, prec)? {
        let m = root.modulus()?;
        if m.encloses_zero() {
            // |root| may be zero only when x = 0, excluded above; the
            // enclosure just needs more bits
            return Err(Error::PrecisionExhausted("conjugate modulus touches zero".into()));
        }
        acc = acc.add(&m.ln()?.clamp_nonneg());
    }
    let h = acc.div(&Interval::from_u64(deg as u64, prec));
    Ok(h)
}

/// A(x) = max(D h(x), |log x|) for an element that is real and positive
/// under the distinguished embedding.
pub fn a_value(field: &NumberField, x: &FieldElement, degree: u32, prec: u32) -> Result<HeightValue> {
    let h = log_height(field, x, prec)?;
    let emb = field.embed_real(x, prec);
    if !emb.is_certainly_positive() {
        return Err(Error::NotRealPositive);
    }
    let log_abs = emb.ln()?.abs();
    let dh = h.mul(&Interval::from_u64(degree as u64, prec));
    let a = dh.max_with(&log_abs);
    Ok(HeightValue { h, a: Some(a) })
}
