//! The explicit lower bound for linear forms in logarithms of algebraic
//! numbers: log |Lambda| > -C(n) Omega log(c_1 B) with
//!
//!   C(n) = (16/n!) e^n (2n+3)(n+2) (4(n+1))^(n+1)
//!          * (en/2) (4.4 n + 5.5 log n + 7 + 2 log D + log(1 + log D)),
//!   c_1  = 1.5 e D (1 + log D),
//!
//! A_j = max(D h(alpha_j), |log alpha_j|), Omega = A_1 ... A_n, and
//! B = max(1, |b_1| A_1/A_n, ..., |b_n|).

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Everything needed to evaluate the lower bound for one linear form.
#[derive(Clone, Debug)]
pub struct MatveevInput {
    /// Number of logarithms in the form.
    pub terms: u32,
    /// Field degree D.
    pub degree: u32,
    /// Certified A-values, one per term.
    pub a_values: Vec<Interval>,
    /// Certified coefficient bound B >= 1.
    pub b: Interval,
}

impl MatveevInput {
    pub fn omega(&self) -> Interval {
        let prec = self.a_values.iter().map(|a| a.prec()).max().unwrap_or(64);
        let mut om = Interval::one(prec);
        for a in &self.a_values {
            om = om.mul(a);
        }
        om
    }
}

/// The combinatorial factor C(n) at field degree D.
pub fn matveev_c(terms: u32, degree: u32, prec: u32) -> Result<Interval> {
    assert!(terms >= 2 && degree >= 1);
    let n = terms as u64;
    let d = degree as u64;
    let e = Interval::e(prec);

    let mut fact = Integer::from(1);
    for i in 2..=n {
        fact *= i;
    }
    let lead = Interval::from_rational(&Rational::from((Integer::from(16), fact)), prec);
    let e_n = e.pow_int_pos(n as i64)?;
    let lin = Interval::from_u64(2 * n + 3, prec);
    let lin2 = Interval::from_u64(n + 2, prec);
    let base = Integer::from(4 * (n + 1));
    let tower = Interval::from_integer(&base, prec).pow_int_pos(n as i64 + 1)?;
    let half_en = e.mul(&Interval::from_u64(n, prec)).div(&Interval::from_u64(2, prec));

    let ln_n = Interval::from_u64(n, prec).ln()?;
    let ln_d = Interval::from_u64(d, prec).ln()?;
    let bracket = Interval::from_ratio(22, 5, prec)
        .mul(&Interval::from_u64(n, prec))
        .add(&Interval::from_ratio(11, 2, prec).mul(&ln_n))
        .add(&Interval::from_u64(7, prec))
        .add(&Interval::from_u64(2, prec).mul(&ln_d))
        .add(&Interval::one(prec).add(&ln_d).ln()?);

    Ok(lead.mul(&e_n).mul(&lin).mul(&lin2).mul(&tower).mul(&half_en).mul(&bracket))
}

/// c_1 = 1.5 e D (1 + log D).
pub fn matveev_c1(degree: u32, prec: u32) -> Result<Interval> {
    let e = Interval::e(prec);
    let d = Interval::from_u64(degree as u64, prec);
    Ok(Interval::from_ratio(3, 2, prec).mul(&e).mul(&d).mul(&Interval::one(prec).add(&d.ln()?)))
}

/// Enclosure of the lower bound on log |Lambda| (a negative quantity),
/// valid whenever Lambda != 0.
pub fn matveev_lower_bound(input: &MatveevInput, prec: u32) -> Result<Interval> {
    if input.a_values.len() != input.terms as usize {
        return Err(Error::InvalidSpec("A-value count must match term count".into()));
    }
    if !(input.b.hi() >= &1u32) {
        return Err(Error::HypothesisViolation("coefficient bound B must be at least 1".into()));
    }
    let c = matveev_c(input.terms, input.degree, prec)?;
    let c1 = matveev_c1(input.degree, prec)?;
    let log_term = c1.mul(&input.b.max_with(&Interval::one(prec))).ln()?;
    Ok(c.mul(&input.omega()).mul(&log_term).neg())
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen with an independent high-precision evaluation of the closed form.
    const C_2_1: f64 = 152476860.13594145264228;
    const C_6_3: f64 = 5468087069405514.102315657;
    const C_7_3: f64 = 286624996459574887.9009149;
    const MIN_BOUND_2_1: f64 = -214300906.714954413762111;

    #[test]
    fn closed_form_values() {
        let c = matveev_c(2, 1, 192).unwrap();
        assert!((c.mid_f64() / C_2_1 - 1.0).abs() < 1e-12);
        let c = matveev_c(6, 3, 192).unwrap();
        assert!((c.mid_f64() / C_6_3 - 1.0).abs() < 1e-12);
        let c = matveev_c(7, 3, 192).unwrap();
        assert!((c.mid_f64() / C_7_3 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_precisions_agree() {
        let lo = matveev_c(6, 3, 96).unwrap();
        let hi = matveev_c(6, 3, 512).unwrap();
        assert!((lo.mid_f64() / hi.mid_f64() - 1.0).abs() < 1e-12);
        assert!(lo.overlaps(&hi));
    }

    #[test]
    fn monotone_in_terms() {
        let c6 = matveev_c(6, 3, 128).unwrap();
        let c7 = matveev_c(7, 3, 128).unwrap();
        assert!(c7.certainly_gt(&c6));
    }

    #[test]
    fn minimal_input_bound() {
        let prec = 192;
        let input = MatveevInput {
            terms: 2,
            degree: 1,
            a_values: vec![Interval::one(prec), Interval::one(prec)],
            b: Interval::one(prec),
        };
        let bound = matveev_lower_bound(&input, prec).unwrap();
        assert!((bound.mid_f64() / MIN_BOUND_2_1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn doubling_b_shifts_by_log2() {
        let prec = 192;
        let mk = |b: u64| MatveevInput {
            terms: 3,
            degree: 2,
            a_values: vec![
                Interval::from_u64(2, prec),
                Interval::from_u64(3, prec),
                Interval::from_u64(5, prec),
            ],
            b: Interval::from_u64(b, prec),
        };
        let b1 = matveev_lower_bound(&mk(7), prec).unwrap();
        let b2 = matveev_lower_bound(&mk(14), prec).unwrap();
        let diff = b1.sub(&b2);
        let expected = matveev_c(3, 2, prec)
            .unwrap()
            .mul(&Interval::from_u64(30, prec))
            .mul(&Interval::from_u64(2, prec).ln().unwrap());
        assert!(diff.overlaps(&expected));
    }
}
