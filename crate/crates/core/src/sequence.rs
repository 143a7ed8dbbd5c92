//! Integer linear recurrences: exact term evaluation and presets.

use rug::{Assign, Integer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// An order-r integer recurrence u_{n+r} = s_{r-1} u_{n+r-1} + ... + s_0 u_n
/// with integer initial terms u_0 ... u_{r-1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub order: usize,
    /// s_0 .. s_{r-1}, low index first.
    pub coefficients: Vec<Integer>,
    pub initial_terms: Vec<Integer>,
}

impl SequenceSpec {
    pub fn new(coefficients: Vec<i64>, initial_terms: Vec<i64>) -> Result<Self> {
        let spec = SequenceSpec {
            order: coefficients.len(),
            coefficients: coefficients.into_iter().map(Integer::from).collect(),
            initial_terms: initial_terms.into_iter().map(Integer::from).collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The van der Laan-Padovan sequence: u_{n+3} = u_{n+1} + u_n,
    /// starting 1, 0, 0.
    pub fn padovan() -> Self {
        SequenceSpec {
            order: 3,
            coefficients: vec![Integer::from(1), Integer::from(1), Integer::from(0)],
            initial_terms: vec![Integer::from(1), Integer::from(0), Integer::from(0)],
        }
    }

    pub fn fibonacci() -> Self {
        SequenceSpec {
            order: 2,
            coefficients: vec![Integer::from(1), Integer::from(1)],
            initial_terms: vec![Integer::from(0), Integer::from(1)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 2 {
            return Err(Error::InvalidSpec("order must be at least 2".into()));
        }
        if self.coefficients.len() != self.order || self.initial_terms.len() != self.order {
            return Err(Error::InvalidSpec(
                "coefficients and initial terms must both have length `order`".into(),
            ));
        }
        if self.coefficients[0].cmp0() == std::cmp::Ordering::Equal {
            return Err(Error::InvalidSpec("s_0 must be nonzero".into()));
        }
        if self.initial_terms.iter().all(|u| u.cmp0() == std::cmp::Ordering::Equal) {
            return Err(Error::InvalidSpec("at least one initial term must be nonzero".into()));
        }
        Ok(())
    }

    /// Characteristic polynomial X^r - s_{r-1} X^{r-1} - ... - s_0.
    pub fn char_poly(&self) -> IntPoly {
        let mut coeffs: Vec<Integer> = self.coefficients.iter().map(|s| Integer::from(-s)).collect();
        coeffs.push(Integer::from(1));
        IntPoly::new(coeffs)
    }

    /// Exact u_n by iterating the recurrence.
    pub fn eval_term(&self, n: u64) -> Integer {
        let r = self.order;
        if (n as usize) < r {
            return self.initial_terms[n as usize].clone();
        }
        let mut window = self.initial_terms.clone();
        let mut next = Integer::new();
        for _ in r as u64..=n {
            next.assign(0u32);
            for i in 0..r {
                next += Integer::from(&self.coefficients[i] * &window[i]);
            }
            window.rotate_left(1);
            let last = window.last_mut().unwrap();
            std::mem::swap(last, &mut next);
        }
        window.last().unwrap().clone()
    }

    /// All terms u_0 ..= u_n.
    pub fn terms_upto(&self, n: u64) -> Vec<Integer> {
        let r = self.order;
        let mut terms = self.initial_terms.clone();
        terms.reserve(n as usize + 1);
        while terms.len() <= n as usize {
            let mut next = Integer::new();
            let base = terms.len() - r;
            for i in 0..r {
                next += Integer::from(&self.coefficients[i] * &terms[base + i]);
            }
            terms.push(next);
        }
        terms.truncate(n as usize + 1);
        terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padovan_terms_match_listed_values() {
        let p = SequenceSpec::padovan();
        assert_eq!(p.eval_term(0), 1);
        assert_eq!(p.eval_term(8), 2);
        assert_eq!(p.eval_term(25), 200);
        // extend the listed prefix two steps by u_{n+3} = u_{n+1} + u_n
        assert_eq!(p.eval_term(27), 351);
        let expected: Vec<i64> = vec![
            1, 0, 0, 1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, 16, 21, 28, 37, 49, 65, 86, 114,
            151, 200,
        ];
        let terms = p.terms_upto(25);
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(terms[n], *e, "mismatch at n={n}");
        }
    }

    #[test]
    fn char_poly_of_padovan() {
        let p = SequenceSpec::padovan();
        assert_eq!(p.char_poly(), IntPoly::from_i64(&[-1, -1, 0, 1]));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(SequenceSpec::new(vec![0, 1], vec![1, 1]).is_err()); // s_0 = 0
        assert!(SequenceSpec::new(vec![1], vec![1]).is_err()); // order 1
        assert!(SequenceSpec::new(vec![1, 1], vec![0, 0]).is_err()); // all-zero init
    }

    #[test]
    fn fibonacci_values() {
        let f = SequenceSpec::fibonacci();
        assert_eq!(f.eval_term(10), 55);
        assert_eq!(f.eval_term(12), 144);
    }
}
