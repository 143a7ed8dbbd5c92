//! Spectral expansion of a recurrence: certified characteristic roots,
//! expansion coefficients, and the geometric tail bound.
//!
//! For u_n = sum_i q_i(n) alpha_i^n the coefficient vector is solved from
//! the order-r confluent Vandermonde system against u_0..u_{r-1} in complex
//! interval arithmetic. The dominant coefficient kappa_1 is additionally
//! recovered exactly in Q(alpha_1) through the partial-fraction form
//! kappa_1 = -alpha N(1/alpha) / D'(1/alpha) of the rational generating
//! function N/D, which the numeric enclosure must confirm.

use rug::{Integer, Rational};

use crate::cinterval::ComplexBox;
use crate::error::{Error, Result};
use crate::field::{field_of_dominant_root, FieldElement, NumberField};
use crate::interval::Interval;
use crate::roots::RootBox;
use crate::sequence::SequenceSpec;
use crate::MAX_PRECISION;

/// Certified spectral data of a dominant-root sequence.
#[derive(Clone, Debug)]
pub struct SpectralData {
    /// Distinct roots, dominant first, then by descending modulus midpoint.
    pub roots: Vec<RootBox>,
    /// Expansion coefficients grouped per root: kappa[i][j] multiplies
    /// n^j alpha_i^n.
    pub kappa: Vec<Vec<ComplexBox>>,
    /// Field generated by the dominant root.
    pub field: NumberField,
    /// kappa_1 as an exact element of the field.
    pub kappa1: FieldElement,
    /// Degree of Q(alpha_1).
    pub degree: usize,
    /// Working precision used.
    pub precision: u32,
}

/// Parameters K, delta with |u_n/(kappa_1 alpha_1^n) - 1| < K delta^{-n}
/// for all n >= n_threshold.
#[derive(Clone, Debug)]
pub struct TailBound {
    /// Display enclosure of K.
    pub k: Interval,
    /// Operative K: certified upper endpoint, slightly inflated so that the
    /// strict inequality is certifiable even when the bound is attained.
    pub k_op: Interval,
    pub delta: Interval,
    pub n_threshold: u64,
}

impl TailBound {
    /// Enclosure of K_op * delta^-n, the operative tail envelope.
    pub fn envelope(&self, n: u64) -> Result<Interval> {
        Ok(self.k_op.mul(&self.delta.pow_int_pos(-(n as i64))?))
    }
}

impl SpectralData {
    pub fn dominant(&self) -> &RootBox {
        &self.roots[0]
    }

    /// Tight real enclosure of alpha_1.
    pub fn alpha1(&self) -> &Interval {
        self.field.generator_enclosure()
    }

    /// Enclosure of kappa_1 from its exact field representation.
    pub fn kappa1_enclosure(&self, prec: u32) -> Interval {
        self.field.embed_real(&self.kappa1, prec)
    }

    /// ln(alpha_1) at a given precision (alpha_1 refined by exact bisection
    /// inside the stored enclosure's field data).
    pub fn ln_alpha1(&self, prec: u32) -> Result<Interval> {
        refine_enclosure(&self.field, prec)?.ln()
    }

    pub fn ln_kappa1(&self, prec: u32) -> Result<Interval> {
        let alpha = refine_enclosure(&self.field, prec)?;
        let mut acc = Interval::zero(prec);
        for c in self.kappa1.coords.iter().rev() {
            acc = acc.mul(&alpha).add(&Interval::from_rational(c, prec));
        }
        if !acc.is_certainly_positive() {
            return Err(Error::HypothesisViolation(
                "kappa_1 must be positive for the logarithmic forms".into(),
            ));
        }
        acc.ln()
    }

    /// Check |u_n - sum q_i(n) alpha_i^n| < 1/2 for all n <= depth.
    pub fn expansion_check(&self, spec: &SequenceSpec, depth: u64) -> Result<()> {
        let prec = self.precision;
        let terms = spec.terms_upto(depth);
        let half = Interval::from_ratio(1, 2, prec);
        for (n, u) in terms.iter().enumerate() {
            let mut acc = ComplexBox::zero(prec);
            for (i, root) in self.roots.iter().enumerate() {
                let z = root.as_complex();
                let zn = z.pow_u32(n as u32);
                let mut q = ComplexBox::zero(prec);
                let nn = Interval::from_u64(n as u64, prec);
                let mut npow = Interval::one(prec);
                for j in 0..root.multiplicity as usize {
                    q = q.add(&self.kappa[i][j].scale(&npow));
                    npow = npow.mul(&nn);
                }
                acc = acc.add(&q.mul(&zn));
            }
            let diff_re = acc.re.sub(&Interval::from_integer(u, prec));
            let err = diff_re.abs().max_with(&acc.im.abs());
            if !err.certainly_lt(&half) {
                return Err(Error::PrecisionExhausted(format!(
                    "expansion check failed at n = {n}: residual {:?}",
                    err
                )));
            }
        }
        Ok(())
    }
}

/// Refine the generator enclosure to roughly `prec` bits by exact bisection.
pub fn refine_enclosure(field: &NumberField, prec: u32) -> Result<Interval> {
    let base = field.generator_enclosure();
    if base.width().to_f64() == 0.0 {
        return Ok(base.with_prec(prec));
    }
    let width_bits = -base.width().to_f64().log2();
    if width_bits >= prec as f64 + 2.0 {
        return Ok(base.with_prec(prec + 64));
    }
    let a = crate::roots::float_to_dyadic(base.lo())
        .ok_or_else(|| Error::PrecisionExhausted("non-finite enclosure".into()))?;
    let b = crate::roots::float_to_dyadic(base.hi())
        .ok_or_else(|| Error::PrecisionExhausted("non-finite enclosure".into()))?;
    let p = &field.min_poly;
    let sa = p.sign_at_dyadic(&a.0, a.1);
    let sb = p.sign_at_dyadic(&b.0, b.1);
    if sa == 0 || sb == 0 {
        // endpoint is the exact root (rational generator)
        return Ok(base.with_prec(prec + 64));
    }
    if sa == sb {
        return Err(Error::PrecisionExhausted("enclosure lost the sign change".into()));
    }
    Ok(bisect_to(p, a, b, sa, prec + 8))
}

fn bisect_to(
    p: &crate::poly::IntPoly,
    mut a: (Integer, u32),
    mut b: (Integer, u32),
    sa: i32,
    target_bits: u32,
) -> Interval {
    use rug::float::Round;
    use rug::Float;
    fn align(x: &mut (Integer, u32), t: u32) {
        if x.1 < t {
            x.0 <<= t - x.1;
            x.1 = t;
        }
    }
    // current width ~ 2^(log2(b-a)); bisect until widths reach target
    loop {
        let t = a.1.max(b.1);
        align(&mut a, t);
        align(&mut b, t);
        let gap = Integer::from(&b.0 - &a.0);
        if gap <= 1 && t >= target_bits {
            break;
        }
        if t > target_bits + 8 {
            break;
        }
        let mid_num = Integer::from(&a.0 + &b.0);
        let mid_t = t + 1;
        let sm = p.sign_at_dyadic(&mid_num, mid_t);
        if sm == 0 {
            a = (Integer::from(&mid_num - 1u32), mid_t);
            b = (mid_num + 1u32, mid_t);
            break;
        }
        if sm == sa {
            a = (mid_num, mid_t);
        } else {
            b = (mid_num, mid_t);
        }
    }
    let prec = target_bits + 64;
    let fa = Float::with_val_round(prec, &a.0, Round::Down).0 >> a.1;
    let fb = Float::with_val_round(prec, &b.0, Round::Up).0 >> b.1;
    Interval::new_unchecked(fa, fb)
}

/// Solve the full spectrum at the given precision.
pub fn solve_spectrum(spec: &SequenceSpec, precision: u32) -> Result<SpectralData> {
    spec.validate()?;
    let char_poly = spec.char_poly();
    let mut roots = crate::roots::isolate_roots(&char_poly, precision)?;
    if roots.is_empty() {
        return Err(Error::InvalidSpec("characteristic polynomial has no roots".into()));
    }

    // order: dominant modulus first
    let mut moduli: Vec<(usize, Interval)> = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        moduli.push((i, r.modulus()?));
    }
    moduli.sort_by(|a, b| b.1.mid_f64().partial_cmp(&a.1.mid_f64()).unwrap());
    let order: Vec<usize> = moduli.iter().map(|(i, _)| *i).collect();
    let reordered: Vec<RootBox> = order.iter().map(|&i| roots[i].clone()).collect();
    roots = reordered;

    // dominance certification
    let dom_mod = roots[0].modulus()?;
    for r in roots.iter().skip(1) {
        let m = r.modulus()?;
        if !dom_mod.certainly_gt(&m) {
            return Err(Error::DominanceViolation(
                "|alpha_1| is not certainly above the next root modulus".into(),
            ));
        }
    }
    if roots[0].multiplicity != 1 {
        return Err(Error::DominanceViolation("dominant root must be simple (d_1 = 1)".into()));
    }
    if !roots[0].is_real {
        return Err(Error::DominanceViolation("dominant root is not certifiably real".into()));
    }

    let field = field_of_dominant_root(&char_poly.primitive(), &roots[0], precision)?;
    let degree = field.degree;

    // exact kappa_1 by partial fractions of the generating function
    let kappa1 = exact_kappa1(spec, &field)?;
    if kappa1.is_zero() {
        return Err(Error::HypothesisViolation("kappa_1 = 0".into()));
    }

    // numeric kappa vector from the confluent Vandermonde system
    let kappa = solve_kappa_system(spec, &roots, precision)?;

    // the exact kappa_1 must land inside the numeric enclosure
    let k1_box = &kappa[0][0];
    let k1_exact = {
        let mut acc = Interval::zero(precision);
        let alpha = field.generator_enclosure().with_prec(precision);
        for c in kappa1.coords.iter().rev() {
            acc = acc.mul(&alpha).add(&Interval::from_rational(c, precision));
        }
        acc
    };
    if !k1_box.re.overlaps(&k1_exact) {
        return Err(Error::PrecisionExhausted(
            "exact and numeric kappa_1 enclosures disagree".into(),
        ));
    }

    let sd = SpectralData { roots, kappa, field, kappa1, degree, precision };
    // cheap internal consistency check on a short prefix
    sd.expansion_check(spec, 24.min(200))?;
    Ok(sd)
}

/// Retry ladder: double the precision on PrecisionExhausted up to the cap.
pub fn solve_spectrum_auto(spec: &SequenceSpec, base_precision: u32) -> Result<SpectralData> {
    let mut prec = base_precision;
    loop {
        match solve_spectrum(spec, prec) {
            Err(Error::PrecisionExhausted(why)) => {
                if prec >= MAX_PRECISION {
                    return Err(Error::PrecisionExhausted(format!(
                        "cap {MAX_PRECISION} bits reached: {why}"
                    )));
                }
                prec = (prec * 2).min(MAX_PRECISION);
            }
            other => return other,
        }
    }
}

/// kappa_1 = -alpha N(1/alpha) / D'(1/alpha) where
/// D(x) = 1 - sum_j s_{r-j} x^j and N(x) = sum c_n x^n collects the initial
/// conditions. Requires the dominant root to be simple.
fn exact_kappa1(spec: &SequenceSpec, field: &NumberField) -> Result<FieldElement> {
    let r = spec.order;
    let d = field.degree;
    // N coefficients: c_n = u_n - sum_{j=1..n} s_{r-j} u_{n-j}
    let mut n_coeffs: Vec<Rational> = Vec::with_capacity(r);
    for n in 0..r {
        let mut c = Rational::from(&spec.initial_terms[n]);
        for j in 1..=n {
            let s = &spec.coefficients[r - j];
            c -= Rational::from(s * &spec.initial_terms[n - j]);
        }
        n_coeffs.push(c);
    }
    // D'(x) = -sum_j j s_{r-j} x^(j-1)
    let mut dprime: Vec<Rational> = Vec::with_capacity(r);
    for j in 1..=r {
        let s = &spec.coefficients[r - j];
        dprime.push(Rational::from(s * Rational::from(-(j as i64))));
    }

    let alpha = field.generator();
    let beta = field.inv(&alpha)?; // 1/alpha
    let eval = |coeffs: &[Rational]| -> FieldElement {
        let mut acc = FieldElement::from_rational(Rational::new(), d);
        for c in coeffs.iter().rev() {
            acc = field.mul(&acc, &beta);
            acc = field.add(&acc, &FieldElement::from_rational(c.clone(), d));
        }
        acc
    };
    let n_at = eval(&n_coeffs);
    let dp_at = eval(&dprime);
    if dp_at.is_zero() {
        return Err(Error::DominanceViolation("dominant root is a multiple root of D".into()));
    }
    let mut k = field.div(&n_at, &dp_at)?;
    k = field.mul(&k, &alpha);
    // negate
    for c in &mut k.coords {
        *c = Rational::from(-c.clone());
    }
    Ok(k)
}

/// Solve the confluent Vandermonde system rows n = 0..r-1,
/// columns (i, j) with entry n^j alpha_i^n, in complex interval arithmetic.
fn solve_kappa_system(
    spec: &SequenceSpec,
    roots: &[RootBox],
    prec: u32,
) -> Result<Vec<Vec<ComplexBox>>> {
    let r = spec.order;
    let mut cols: Vec<(usize, usize)> = Vec::new(); // (root index, power j)
    for (i, root) in roots.iter().enumerate() {
        for j in 0..root.multiplicity as usize {
            cols.push((i, j));
        }
    }
    if cols.len() != r {
        return Err(Error::InvalidSpec("multiplicities do not sum to the order".into()));
    }
    // build augmented matrix
    let mut m: Vec<Vec<ComplexBox>> = Vec::with_capacity(r);
    for n in 0..r {
        let mut row = Vec::with_capacity(r + 1);
        for &(i, j) in &cols {
            let z = roots[i].as_complex();
            let zn = z.pow_u32(n as u32);
            let njf = Interval::from_u64((n as u64).pow(j as u32), prec);
            row.push(zn.scale(&njf));
        }
        row.push(ComplexBox::new(
            Interval::from_integer(&spec.initial_terms[n], prec),
            Interval::zero(prec),
        ));
        m.push(row);
    }
    // Gaussian elimination with pivoting on certainly-nonzero norm
    for col in 0..r {
        let mut pivot = None;
        let mut best = f64::NEG_INFINITY;
        for row in col..r {
            let ns = m[row][col].norm_sq();
            if ns.is_certainly_positive() {
                let mag = ns.lo().to_f64();
                if mag > best {
                    best = mag;
                    pivot = Some(row);
                }
            }
        }
        let pivot = pivot.ok_or_else(|| {
            Error::PrecisionExhausted("no certainly-nonzero pivot in kappa system".into())
        })?;
        m.swap(col, pivot);
        let pv = m[col][col].clone();
        for row in (col + 1)..r {
            let factor = m[row][col].div(&pv);
            for k in col..=r {
                let sub = factor.mul(&m[col][k]);
                m[row][k] = m[row][k].sub(&sub);
            }
        }
    }
    // back substitution
    let mut sol = vec![ComplexBox::zero(prec); r];
    for col in (0..r).rev() {
        let mut acc = m[col][r].clone();
        for k in (col + 1)..r {
            acc = acc.sub(&m[col][k].mul(&sol[k]));
        }
        sol[col] = acc.div(&m[col][col]);
    }
    // regroup per root
    let mut out: Vec<Vec<ComplexBox>> = roots.iter().map(|_| Vec::new()).collect();
    for (slot, &(i, _)) in cols.iter().enumerate() {
        out[i].push(sol[slot].clone());
    }
    Ok(out)
}

/// K and delta from the simple-roots closed form, directionally rounded.
pub fn tail_bound_params(sd: &SpectralData, n_threshold: u64) -> Result<TailBound> {
    if sd.roots.iter().any(|r| r.multiplicity != 1) {
        return Err(Error::MultipleRootsUnsupported);
    }
    let prec = sd.precision;
    let k1_abs = sd.kappa[0][0].abs()?;
    if !k1_abs.is_certainly_positive() {
        return Err(Error::HypothesisViolation("kappa_1 enclosure touches zero".into()));
    }
    let mut num = Interval::zero(prec);
    for i in 1..sd.roots.len() {
        for k in &sd.kappa[i] {
            num = num.add(&k.abs()?);
        }
    }
    let k = num.div(&k1_abs);
    if !k.is_certainly_positive() {
        return Err(Error::HypothesisViolation(
            "K = 0: all secondary coefficients vanish (kappa_i = 0 for i >= 2)".into(),
        ));
    }
    // operative K: upper endpoint inflated by 1 + 2^-48 so the strict tail
    // inequality stays certifiable even where the closed form is attained
    let bump = Interval::one(prec).add(&Interval::from_ratio(1, 1i64 << 48, prec));
    let k_op = Interval::point(k.hi().clone()).mul(&bump);

    let delta = if sd.roots.len() > 1 {
        let dom = sd.roots[0].modulus()?;
        let second = sd.roots[1].modulus()?;
        dom.div(&second)
    } else {
        return Err(Error::HypothesisViolation(
            "tail bound needs at least two distinct roots".into(),
        ));
    };
    if !delta.lo().clone().gt(&1u32) {
        return Err(Error::DominanceViolation("delta = |alpha_1/alpha_2| must exceed 1".into()));
    }

    let tb = TailBound { k, k_op, delta, n_threshold };
    Ok(tb)
}

/// Certified check of the tail inequality on a sample prefix
/// n in [max(n_threshold, 1), upto].
///
/// The left side shrinks like delta^-n, so the evaluation precision has to
/// grow with the range or the enclosure width swamps the signal.
pub fn tail_check(spec: &SequenceSpec, sd: &SpectralData, tb: &TailBound, upto: u64) -> Result<()> {
    let bits_per_n = tb.delta.mid_f64().log2().max(0.1);
    let prec = sd.precision.max((upto as f64 * bits_per_n) as u32 + 160);
    let terms = spec.terms_upto(upto);
    let alpha = refine_enclosure(&sd.field, prec)?;
    let k1 = {
        let mut acc = Interval::zero(prec);
        for c in sd.kappa1.coords.iter().rev() {
            acc = acc.mul(&alpha).add(&Interval::from_rational(c, prec));
        }
        acc
    };
    for n in tb.n_threshold.max(1)..=upto {
        let u = Interval::from_integer(&terms[n as usize], prec);
        let denom = k1.mul(&alpha.pow_int_pos(n as i64)?);
        let lhs = u.div(&denom).sub(&Interval::one(prec)).abs();
        let rhs = tb.envelope(n)?;
        if !lhs.certainly_lt(&rhs) {
            return Err(Error::HypothesisViolation(format!(
                "tail inequality not certifiable at n = {n}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padovan_spectrum_matches_known_values() {
        let spec = SequenceSpec::padovan();
        let sd = solve_spectrum_auto(&spec, 128).unwrap();
        assert_eq!(sd.degree, 3);
        let a1 = sd.alpha1();
        assert!((a1.mid_f64() - 1.324717957244746).abs() < 1e-12);
        // kappa_1 = 1/(2 alpha_1 + 3) = (4a^2 - 6a + 5)/23
        assert_eq!(sd.kappa1.coords[0], Rational::from((5, 23)));
        assert_eq!(sd.kappa1.coords[1], Rational::from((-6, 23)));
        assert_eq!(sd.kappa1.coords[2], Rational::from((4, 23)));
        let k1 = sd.kappa1_enclosure(128);
        assert!((k1.mid_f64() - 0.1770088226747085).abs() < 1e-12);
        // complex pair at -0.662359 +- 0.562280 i
        let c = sd.roots.iter().find(|r| !r.is_real).unwrap();
        assert!((c.re.mid_f64() + 0.662358978622373).abs() < 1e-9);
    }

    #[test]
    fn padovan_tail_parameters() {
        let spec = SequenceSpec::padovan();
        let sd = solve_spectrum_auto(&spec, 128).unwrap();
        let tb = tail_bound_params(&sd, 0).unwrap();
        assert!((tb.k.mid_f64() - 5.599815359286104).abs() < 1e-9);
        assert!((tb.delta.mid_f64() - 1.5247025799298518).abs() < 1e-9);
        tail_check(&spec, &sd, &tb, 200).unwrap();
    }

    #[test]
    fn fibonacci_tail_is_tight_but_certifiable() {
        let spec = SequenceSpec::fibonacci();
        let sd = solve_spectrum_auto(&spec, 128).unwrap();
        let tb = tail_bound_params(&sd, 1).unwrap();
        // K = 1 and delta = phi^2 exactly
        assert!(tb.k.contains_rational(&Rational::from(1)));
        assert!((tb.delta.mid_f64() - 2.618033988749895).abs() < 1e-12);
        // the closed form attains equality here; the operative K absorbs it
        tail_check(&spec, &sd, &tb, 150).unwrap();
    }

    #[test]
    fn fibonacci_kappa1_is_inverse_sqrt5() {
        let spec = SequenceSpec::fibonacci();
        let sd = solve_spectrum_auto(&spec, 160).unwrap();
        // 1/sqrt5 = sqrt5/5: in the power basis of x^2-x-1, alpha = (1+sqrt5)/2
        // so sqrt5 = 2 alpha - 1 and kappa_1 = (2 alpha - 1)/5
        assert_eq!(sd.kappa1.coords[0], Rational::from((-1, 5)));
        assert_eq!(sd.kappa1.coords[1], Rational::from((2, 5)));
        let k1 = sd.kappa1_enclosure(160);
        assert!((k1.mid_f64() - 0.4472135954999579).abs() < 1e-12);
    }

    #[test]
    fn pure_power_sequence_is_rejected_by_tail() {
        // u_{n+2} = 3u_{n+1} - 2u_n with u = (1, 2): u_n = 2^n, kappa_2 = 0
        let spec = SequenceSpec::new(vec![-2, 3], vec![1, 2]).unwrap();
        let sd = solve_spectrum_auto(&spec, 128).unwrap();
        match tail_bound_params(&sd, 0) {
            Err(Error::HypothesisViolation(_)) => {}
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn multiple_root_spectrum_with_simple_dominant() {
        // u_{n+3} = 5u_{n+2} - 7u_{n+1} + 3u_n, roots 3, 1 (double)
        let spec = SequenceSpec::new(vec![3, -7, 5], vec![0, 1, 5]).unwrap();
        let sd = solve_spectrum_auto(&spec, 128).unwrap();
        assert_eq!(sd.roots[0].multiplicity, 1);
        assert!((sd.alpha1().mid_f64() - 3.0).abs() < 1e-20);
        // q_1 = 3/4, q_2(n) = -3/4 - n/2
        assert_eq!(sd.kappa1.coords[0], Rational::from((3, 4)));
        sd.expansion_check(&spec, 30).unwrap();
        assert!(matches!(tail_bound_params(&sd, 0), Err(Error::MultipleRootsUnsupported)));
    }

    #[test]
    fn equal_modulus_dominant_pair_is_rejected() {
        // u_{n+2} = -u_n: roots +-i, equal moduli
        let spec = SequenceSpec::new(vec![-1, 0], vec![1, 1]).unwrap();
        match solve_spectrum_auto(&spec, 128) {
            Err(Error::DominanceViolation(_)) => {}
            other => panic!("expected dominance violation, got {other:?}"),
        }
    }

    #[test]
    fn expansion_check_padovan_200() {
        let spec = SequenceSpec::padovan();
        let sd = solve_spectrum_auto(&spec, 192).unwrap();
        sd.expansion_check(&spec, 200).unwrap();
    }

    #[test]
    fn determinism_of_endpoints() {
        let spec = SequenceSpec::padovan();
        let a = solve_spectrum(&spec, 160).unwrap();
        let b = solve_spectrum(&spec, 160).unwrap();
        assert_eq!(a.alpha1().lo(), b.alpha1().lo());
        assert_eq!(a.alpha1().hi(), b.alpha1().hi());
        let ka = a.kappa[1][0].re.clone();
        let kb = b.kappa[1][0].re.clone();
        assert_eq!(ka.lo(), kb.lo());
        assert_eq!(ka.hi(), kb.hi());
    }
}
