//! Exact integer lattice reduction and the conversion of short-vector
//! bounds into lower bounds for linear forms.
//!
//! The lattice for a form x_1 theta_1 + ... + x_n theta_n carries gamma on
//! the first n-1 diagonal entries and floor(C gamma theta_i) in the last
//! row. A non-integer gamma = p/q scales the whole matrix by q so that
//! reduction runs entirely over the integers; the test threshold is scaled
//! identically. Reduction is the all-integer variant of
//! Lenstra-Lenstra-Lovasz with parameter 3/4, maintaining the Gram
//! determinants d_i and scaled coefficients lambda_{ij} exactly.
//!
//! When the reduced first vector satisfies
//!   |b_1|^2 > 2^(n-1) X_1^2 (q^2 (n+1)^2 + (n-1) p^2)
//! the form obeys |Lambda| > X_1 / (C gamma) for all coefficient vectors
//! with max |x_i| <= X_1.

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::spectrum::TailBound;

#[derive(Clone, Debug)]
pub struct LatticeProblem {
    /// Certified enclosures of the form coefficients theta_i; the last one
    /// carries the index coefficient and gets no diagonal row.
    pub thetas: Vec<Interval>,
    /// Scale C (a positive integer, powers of ten by convention).
    pub c: Integer,
    /// Diagonal weight gamma > 0 (may be non-integer).
    pub gamma: Rational,
    /// Bound on the absolute value of every integer coefficient.
    pub x1: Integer,
}

/// Full record of one reduction, sufficient for independent re-verification.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub n: usize,
    pub c: Integer,
    pub gamma: Rational,
    /// Denominator of gamma; the matrix below is `scale` times the rational
    /// lattice matrix.
    pub scale: Integer,
    pub x1: Integer,
    /// Column-major scaled integer matrix.
    pub matrix: Vec<Vec<Integer>>,
    /// LLL-reduced basis of the same lattice, column-major.
    pub reduced: Vec<Vec<Integer>>,
    /// Unimodular transform with matrix * transform = reduced.
    pub transform: Vec<Vec<Integer>>,
    pub b1_norm_sq: Integer,
    /// Exact squared Gram-Schmidt floor of the reduced basis:
    /// min_i |b_i*|^2, a certified lower bound on l(M)^2.
    pub min_gs_sq: Rational,
    /// X_1^2 (q^2 (n+1)^2 + (n-1) p^2); the test is min_gs_sq > threshold_sq.
    pub threshold_sq: Integer,
    pub passed: bool,
}

impl ReductionCertificate {
    /// X_1 / (C gamma) when the short-vector test passed.
    pub fn lambda_lower(&self) -> Option<Rational> {
        if !self.passed {
            return None;
        }
        let num = Rational::from((self.x1.clone(), Integer::from(1)));
        let cg = Rational::from(&self.c) * &self.gamma;
        Some(num / cg)
    }
}

/// Build the scaled integer matrix; errors if any floor is ambiguous.
pub fn build_lattice(problem: &LatticeProblem) -> Result<Vec<Vec<Integer>>> {
    let n = problem.thetas.len();
    if n < 2 {
        return Err(Error::InvalidSpec("need at least two form terms".into()));
    }
    let prec = problem.thetas.iter().map(|t| t.prec()).max().unwrap();
    let cg = Rational::from(&problem.c) * &problem.gamma;
    let cg_i = Interval::from_rational(&cg, prec);
    let quarter = Interval::from_ratio(1, 4, prec);
    let q = Integer::from(problem.gamma.denom());
    let p = Integer::from(problem.gamma.numer());
    let mut cols = vec![vec![Integer::new(); n]; n];
    for (i, theta) in problem.thetas.iter().enumerate() {
        let scaled = cg_i.mul(theta);
        if !scaled.width().lt(quarter.lo()) {
            return Err(Error::AmbiguousFloor(i));
        }
        let fl = scaled.floor_exact().ok_or(Error::AmbiguousFloor(i))?;
        cols[i][n - 1] = fl * &q;
        if i < n - 1 {
            cols[i][i] = p.clone();
        }
    }
    Ok(cols)
}

fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    let mut s = Integer::new();
    for (x, y) in a.iter().zip(b) {
        s += Integer::from(x * y);
    }
    s
}

fn round_div(num: &Integer, den: &Integer) -> Integer {
    // nearest integer to num/den, ties away from zero
    let (q, _r) = num.clone().div_rem_round(den.clone());
    q
}

/// All-integer LLL with parameter 3/4 on column vectors.
/// Returns (reduced basis, unimodular transform, Gram determinants d_0..d_n
/// of the reduced basis; |b_i*|^2 = d_{i+1}/d_i).
pub fn lll_reduce(
    basis: &[Vec<Integer>],
) -> Result<(Vec<Vec<Integer>>, Vec<Vec<Integer>>, Vec<Integer>)> {
    let n = basis.len();
    let mut b: Vec<Vec<Integer>> = basis.to_vec();
    let mut h: Vec<Vec<Integer>> = (0..n)
        .map(|j| {
            let mut col = vec![Integer::new(); n];
            col[j] = Integer::from(1);
            col
        })
        .collect();

    // Gram data: d[0] = 1, d[i+1] = Gram det of first i+1 vectors;
    // lambda[i][j] for j < i.
    let mut d: Vec<Integer> = vec![Integer::new(); n + 1];
    let mut lambda: Vec<Vec<Integer>> = vec![vec![Integer::new(); n]; n];
    d[0] = Integer::from(1);

    let gram_init = |b: &Vec<Vec<Integer>>,
                     d: &mut Vec<Integer>,
                     lambda: &mut Vec<Vec<Integer>>|
     -> Result<()> {
        for i in 0..n {
            for j in 0..=i {
                let mut u = dot(&b[i], &b[j]);
                for k in 0..j {
                    u = (Integer::from(&d[k + 1] * &u)
                        - Integer::from(&lambda[i][k] * &lambda[j][k]))
                        / &d[k];
                }
                if j < i {
                    lambda[i][j] = u;
                } else {
                    if u <= 0 {
                        return Err(Error::SingularMatrix);
                    }
                    d[i + 1] = u;
                }
            }
        }
        Ok(())
    };
    gram_init(&b, &mut d, &mut lambda)?;

    let redi = |k: usize,
                l: usize,
                b: &mut Vec<Vec<Integer>>,
                h: &mut Vec<Vec<Integer>>,
                d: &Vec<Integer>,
                lambda: &mut Vec<Vec<Integer>>| {
        let two_lam = Integer::from(2 * &lambda[k][l]);
        if two_lam.clone().abs() > d[l + 1] {
            let q = round_div(&lambda[k][l], &d[l + 1]);
            let (bl, bk) = if l < k {
                let (lo, hi) = b.split_at_mut(k);
                (&lo[l], &mut hi[0])
            } else {
                unreachable!()
            };
            for i in 0..n {
                bk[i] -= Integer::from(&q * &bl[i]);
            }
            let (hl, hk) = {
                let (lo, hi) = h.split_at_mut(k);
                (&lo[l], &mut hi[0])
            };
            for i in 0..n {
                hk[i] -= Integer::from(&q * &hl[i]);
            }
            lambda[k][l] -= Integer::from(&q * &d[l + 1]);
            for i in 0..l {
                let t = Integer::from(&q * &lambda[l][i]);
                lambda[k][i] -= t;
            }
        }
    };

    let mut k = 1usize;
    let mut guard = 0u64;
    while k < n {
        guard += 1;
        if guard > 10_000_000 {
            return Err(Error::PrecisionExhausted("reduction iteration cap hit".into()));
        }
        redi(k, k - 1, &mut b, &mut h, &d, &mut lambda);
        // Lovasz test with delta = 3/4:
        // swap when 4 d_{k+1} d_{k-1} < 3 d_k^2 - 4 lambda_{k,k-1}^2
        let lhs = Integer::from(4) * Integer::from(&d[k + 1] * &d[k - 1]);
        let rhs = Integer::from(3) * Integer::from(&d[k] * &d[k])
            - Integer::from(4) * Integer::from(&lambda[k][k - 1] * &lambda[k][k - 1]);
        if lhs < rhs {
            // SWAPI(k)
            b.swap(k, k - 1);
            h.swap(k, k - 1);
            for j in 0..k.saturating_sub(1) {
                let t = lambda[k][j].clone();
                lambda[k][j] = lambda[k - 1][j].clone();
                lambda[k - 1][j] = t;
            }
            let lam = lambda[k][k - 1].clone();
            let bb = (Integer::from(&d[k - 1] * &d[k + 1]) + Integer::from(&lam * &lam)) / &d[k];
            for i in (k + 1)..n {
                let t = lambda[i][k].clone();
                lambda[i][k] = (Integer::from(&d[k + 1] * &lambda[i][k - 1])
                    - Integer::from(&lam * &t))
                    / &d[k];
                lambda[i][k - 1] = (Integer::from(&bb * &t)
                    + Integer::from(&lam * &lambda[i][k]))
                    / &d[k + 1];
            }
            d[k] = bb;
            k = k.saturating_sub(1).max(1);
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                redi(k, l, &mut b, &mut h, &d, &mut lambda);
            }
            k += 1;
        }
    }
    Ok((b, h, d))
}

/// Build, reduce, and run the short-vector test.
pub fn reduce_basis(problem: &LatticeProblem) -> Result<ReductionCertificate> {
    let matrix = build_lattice(problem)?;
    let n = matrix.len();
    let (reduced, transform, grams) = lll_reduce(&matrix)?;
    let b1 = &reduced[0];
    let b1_norm_sq = dot(b1, b1);
    let mut min_gs_sq: Option<Rational> = None;
    for i in 0..n {
        let r = Rational::from((grams[i + 1].clone(), grams[i].clone()));
        min_gs_sq = Some(match min_gs_sq {
            None => r,
            Some(cur) => cur.min(r),
        });
    }
    let min_gs_sq = min_gs_sq.unwrap();
    let q = Integer::from(problem.gamma.denom());
    let p = Integer::from(problem.gamma.numer());
    let np1 = Integer::from((n + 1) as u64);
    let nm1 = Integer::from((n - 1) as u64);
    let x1_sq = Integer::from(&problem.x1 * &problem.x1);
    let inner = Integer::from(&q * &q) * Integer::from(&np1 * &np1)
        + Integer::from(&nm1 * Integer::from(&p * &p));
    let threshold_sq = x1_sq * inner;
    let passed = min_gs_sq > threshold_sq;
    Ok(ReductionCertificate {
        n,
        c: problem.c.clone(),
        gamma: problem.gamma.clone(),
        scale: q,
        x1: problem.x1.clone(),
        matrix,
        reduced,
        transform,
        b1_norm_sq,
        min_gs_sq,
        threshold_sq,
        passed,
    })
}

/// Rational lower bound on the shortest vector of the *scaled* lattice:
/// |b_1| / 2^((n-1)/2), computed as a certified rational under-approximation.
pub fn shortest_vector_floor(cert: &ReductionCertificate) -> Rational {
    // lower bound sqrt(b1_norm_sq / 2^(n-1)) by scaled integer sqrt
    let shift = 128u32;
    let scaled = Integer::from(&cert.b1_norm_sq) << (2 * shift);
    let num = (scaled / (Integer::from(1) << (cert.n as u32 - 1))).sqrt();
    Rational::from((num, Integer::from(1) << shift))
}

/// Lemma-style conversion: when the certificate passed the test,
/// |Lambda| > X_1 / (C gamma).
pub fn lemma22_apply(cert: &ReductionCertificate) -> Result<Rational> {
    cert.lambda_lower().ok_or(Error::TestFailed)
}

/// Largest index compatible with (1+eps_1) * mult * K * delta^-idx > L:
/// idx <= floor( log((1+eps_1) mult K / L) / log delta ).
pub fn index_bound_from_form(
    lambda_lower: &Rational,
    tail: &TailBound,
    eps1: &Interval,
    mult: &Interval,
) -> Result<Integer> {
    let prec = tail.k_op.prec().max(eps1.prec()).max(mult.prec());
    let l = Interval::from_rational(lambda_lower, prec);
    if !l.is_certainly_positive() {
        return Err(Error::HypothesisViolation("lambda lower bound must be positive".into()));
    }
    let num = Interval::one(prec).add(eps1).mul(mult).mul(&tail.k_op).div(&l);
    let bound = num.ln()?.div(&tail.delta.ln()?);
    let fl = bound.hi().clone().floor().to_integer().ok_or_else(|| {
        Error::PrecisionExhausted("index bound overflow".into())
    })?;
    Ok(fl)
}

/// Grid + decade search for a (C, gamma) pair whose reduction passes.
///
/// `theta_provider` must recompute the enclosures at any requested
/// precision. Candidates are ordered by increasing C * gamma, preferring
/// the tightest resulting bound; the first passing certificate wins.
pub fn auto_tune(
    theta_provider: &dyn Fn(u32) -> Result<Vec<Interval>>,
    x1: &Integer,
    gamma_grid: &[Rational],
    extra_decades: u32,
) -> Result<ReductionCertificate> {
    // cheap midpoint estimates for sizing
    let rough = theta_provider(64)?;
    let n = rough.len();
    let theta_last = rough
        .last()
        .ok_or_else(|| Error::InvalidSpec("empty theta vector".into()))?
        .mid_f64()
        .abs()
        .max(1e-9);
    let lx1 = x1.to_f64().abs().log10().max(0.0);

    #[derive(Clone)]
    struct Candidate {
        decades: u32,
        gamma: Rational,
        cg_log10: f64,
    }
    let mut candidates = Vec::new();
    for gamma in gamma_grid {
        let g = gamma.to_f64();
        if g <= 0.0 {
            continue;
        }
        let t = ((n as f64 + 1.0).powi(2) + (n as f64 - 1.0) * g * g).sqrt();
        // want C >= (2^((n-1)/2) X_1 T)^n / (g^n theta_last)
        let need = (n as f64)
            * (0.1505 * (n as f64 - 1.0) + lx1 + t.log10() - g.log10())
            - theta_last.log10();
        let d0 = need.ceil().max(1.0) as u32 + 1;
        for extra in 0..=extra_decades {
            candidates.push(Candidate {
                decades: d0 + extra,
                gamma: gamma.clone(),
                cg_log10: (d0 + extra) as f64 + g.log10(),
            });
        }
    }
    candidates.sort_by(|a, b| a.cg_log10.partial_cmp(&b.cg_log10).unwrap());

    let mut largest_tried = 0u32;
    for cand in candidates {
        largest_tried = largest_tried.max(cand.decades);
        let prec = ((cand.decades as f64 + 40.0) * 3.4) as u32;
        let thetas = theta_provider(prec)?;
        let c = Integer::from(Integer::from(10).pow(cand.decades));
        let problem = LatticeProblem {
            thetas,
            c,
            gamma: cand.gamma.clone(),
            x1: x1.clone(),
        };
        match reduce_basis(&problem) {
            Ok(cert) if cert.passed => return Ok(cert),
            Ok(_) => continue,
            Err(Error::AmbiguousFloor(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted(largest_tried))
}

/// Exact verification helpers used by the certificate checker.
pub mod verify {
    use super::*;

    /// matrix * transform == reduced, entrywise.
    pub fn lattice_equality(cert: &ReductionCertificate) -> bool {
        let n = cert.n;
        if cert.matrix.len() != n || cert.reduced.len() != n || cert.transform.len() != n {
            return false;
        }
        for j in 0..n {
            for i in 0..n {
                let mut s = Integer::new();
                for k in 0..n {
                    s += Integer::from(&cert.matrix[k][i] * &cert.transform[j][k]);
                }
                if s != cert.reduced[j][i] {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant of the transform is +-1 (fraction-free elimination).
    pub fn unimodular(cert: &ReductionCertificate) -> bool {
        match det(&cert.transform) {
            Some(d) => d == 1 || d == -1,
            None => false,
        }
    }

    /// Bareiss determinant of a column-major integer matrix.
    pub fn det(cols: &[Vec<Integer>]) -> Option<Integer> {
        let n = cols.len();
        let mut m: Vec<Vec<Integer>> = (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect();
        let mut sign = 1i32;
        let mut prev = Integer::from(1);
        for k in 0..n {
            if m[k][k].cmp0() == std::cmp::Ordering::Equal {
                let swap = ((k + 1)..n).find(|&r| m[r][k].cmp0() != std::cmp::Ordering::Equal)?;
                m.swap(k, swap);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = Integer::from(&m[i][j] * &m[k][k]) - Integer::from(&m[i][k] * &m[k][j]);
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let mut d = m[n - 1][n - 1].clone();
        if sign < 0 {
            d = -d;
        }
        Some(d)
    }

    /// Exact rational Gram-Schmidt check that the basis is size-reduced and
    /// satisfies the Lovasz condition with delta = 3/4.
    pub fn is_lll_reduced(cols: &[Vec<Integer>]) -> bool {
        let n = cols.len();
        let mut mu: Vec<Vec<Rational>> = vec![vec![Rational::new(); n]; n];
        let mut bstar_sq: Vec<Rational> = vec![Rational::new(); n];
        let mut bstar: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<Rational> = cols[i].iter().map(Rational::from).collect();
            for j in 0..i {
                let mut num = Rational::new();
                for t in 0..n {
                    num += Rational::from(&cols[i][t]) * &bstar[j][t];
                }
                if bstar_sq[j].cmp0() == std::cmp::Ordering::Equal {
                    return false;
                }
                let mij = num / &bstar_sq[j];
                for t in 0..n {
                    let sub = Rational::from(&mij * &bstar[j][t]);
                    v[t] -= sub;
                }
                mu[i][j] = mij;
            }
            let mut nsq = Rational::new();
            for t in 0..n {
                nsq += Rational::from(&v[t] * &v[t]);
            }
            bstar_sq[i] = nsq;
            bstar.push(v);
        }
        let half = Rational::from((1, 2));
        for i in 0..n {
            for j in 0..i {
                if mu[i][j].clone().abs() > half {
                    return false;
                }
            }
        }
        let three_quarter = Rational::from((3, 4));
        for k in 1..n {
            let musq = Rational::from(&mu[k][k - 1] * &mu[k][k - 1]);
            let lhs = bstar_sq[k].clone() + musq * &bstar_sq[k - 1];
            let rhs = three_quarter.clone() * &bstar_sq[k - 1];
            if lhs < rhs {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_cols(cols: &[&[i64]]) -> Vec<Vec<Integer>> {
        cols.iter().map(|c| c.iter().map(|&v| Integer::from(v)).collect()).collect()
    }

    #[test]
    fn identity_is_fixed_point() {
        let id = int_cols(&[&[1, 0], &[0, 1]]);
        let (red, tr, _) = lll_reduce(&id).unwrap();
        assert_eq!(red, id);
        assert_eq!(tr, id);
    }

    #[test]
    fn skewed_z2_reduces_to_unit_vector() {
        let basis = int_cols(&[&[1, 0], &[1_000_000, 1]]);
        let (red, tr, _) = lll_reduce(&basis).unwrap();
        let n0 = dot(&red[0], &red[0]);
        assert_eq!(n0, 1);
        let cert = ReductionCertificate {
            n: 2,
            c: Integer::from(1),
            gamma: Rational::from(1),
            scale: Integer::from(1),
            x1: Integer::from(1),
            matrix: basis,
            reduced: red,
            transform: tr,
            b1_norm_sq: n0,
            min_gs_sq: Rational::from(1),
            threshold_sq: Integer::from(0),
            passed: true,
        };
        assert!(verify::lattice_equality(&cert));
        assert!(verify::unimodular(&cert));
        assert!(verify::is_lll_reduced(&cert.reduced));
    }

    #[test]
    fn build_matches_hand_example() {
        let prec = 96;
        let problem = LatticeProblem {
            thetas: vec![Interval::one(prec), Interval::from_ratio(3, 2, prec)],
            c: Integer::from(10),
            gamma: Rational::from(1),
            x1: Integer::from(1),
        };
        let m = build_lattice(&problem).unwrap();
        // columns: (1, 10), (0, 15)
        assert_eq!(m[0], vec![Integer::from(1), Integer::from(10)]);
        assert_eq!(m[1], vec![Integer::from(0), Integer::from(15)]);
    }

    #[test]
    fn build_floor_of_100_sqrt2() {
        let prec = 160;
        let sqrt2 = Interval::from_u64(2, prec).sqrt().unwrap();
        let problem = LatticeProblem {
            thetas: vec![Interval::one(prec), sqrt2],
            c: Integer::from(100),
            gamma: Rational::from(1),
            x1: Integer::from(1),
        };
        let m = build_lattice(&problem).unwrap();
        assert_eq!(m[1][1], Integer::from(141));
    }

    #[test]
    fn ambiguous_floor_detected() {
        // theta enclosing an integer boundary at the working scale
        let prec = 32;
        let wide = Interval::new_unchecked(
            rug::Float::with_val(prec, 1.49),
            rug::Float::with_val(prec, 1.51),
        );
        let problem = LatticeProblem {
            thetas: vec![Interval::one(prec), wide],
            c: Integer::from(10),
            gamma: Rational::from(1),
            x1: Integer::from(1),
        };
        match build_lattice(&problem) {
            Err(Error::AmbiguousFloor(1)) => {}
            other => panic!("expected AmbiguousFloor(1), got {other:?}"),
        }
    }

    #[test]
    fn shortest_vector_floor_identity() {
        let id = int_cols(&[&[1, 0], &[0, 1]]);
        let cert = ReductionCertificate {
            n: 2,
            c: Integer::from(1),
            gamma: Rational::from(1),
            scale: Integer::from(1),
            x1: Integer::from(1),
            matrix: id.clone(),
            reduced: id.clone(),
            transform: id,
            b1_norm_sq: Integer::from(1),
            min_gs_sq: Rational::from(1),
            threshold_sq: Integer::from(0),
            passed: true,
        };
        let f = shortest_vector_floor(&cert);
        // 1/sqrt2 = 0.7071...
        let v = f.to_f64();
        assert!(v <= 0.70710678118655 && v > 0.7071067811);
    }

    #[test]
    fn reduction_keeps_lattice_and_unimodularity() {
        // pseudo-random 4x4 integer matrices via a fixed LCG
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 2000) - 1000
        };
        for _ in 0..12 {
            let cols: Vec<Vec<Integer>> =
                (0..4).map(|_| (0..4).map(|_| Integer::from(next())).collect()).collect();
            if verify::det(&cols).map_or(true, |d| d.cmp0() == std::cmp::Ordering::Equal) {
                continue;
            }
            let (red, tr, _) = lll_reduce(&cols).unwrap();
            let cert = ReductionCertificate {
                n: 4,
                c: Integer::from(1),
                gamma: Rational::from(1),
                scale: Integer::from(1),
                x1: Integer::from(1),
                matrix: cols,
                reduced: red,
                transform: tr,
                b1_norm_sq: Integer::from(1),
                min_gs_sq: Rational::from(1),
                threshold_sq: Integer::from(0),
                passed: false,
            };
            assert!(verify::lattice_equality(&cert));
            assert!(verify::unimodular(&cert));
            assert!(verify::is_lll_reduced(&cert.reduced));
        }
    }

    #[test]
    fn planted_form_soundness() {
        // rational thetas with exactly known Lambda: whenever the test
        // passes, the true |Lambda| must exceed X_1/(C gamma)
        let prec = 256;
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move |m: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % m
        };
        let mut tested = 0;
        for _ in 0..40 {
            let den = 1_000_003u64;
            let t1 = Rational::from((next(den * 2) + den, den));
            let t2 = Rational::from((next(den * 2) + den, den));
            let t3 = Rational::from((next(den * 2) + den, den));
            let x = [
                next(19) as i64 - 9,
                next(19) as i64 - 9,
                next(19) as i64 + 1,
            ];
            let lambda = Rational::from(&t1) * Rational::from(x[0])
                + Rational::from(&t2) * Rational::from(x[1])
                + Rational::from(&t3) * Rational::from(x[2]);
            if lambda.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let problem = LatticeProblem {
                thetas: vec![
                    Interval::from_rational(&t1, prec),
                    Interval::from_rational(&t2, prec),
                    Interval::from_rational(&t3, prec),
                ],
                c: Integer::from(Integer::from(10).pow(12)),
                gamma: Rational::from(1),
                x1: Integer::from(10),
            };
            let cert = reduce_basis(&problem).unwrap();
            if cert.passed {
                tested += 1;
                let bound = lemma22_apply(&cert).unwrap();
                assert!(
                    lambda.clone().abs() > bound,
                    "lambda {lambda} vs bound {bound}"
                );
            }
        }
        assert!(tested > 0, "no planted case passed the test; scale too small");
    }

    #[test]
    fn gamma_scaling_by_denominator() {
        let prec = 128;
        let problem = LatticeProblem {
            thetas: vec![Interval::one(prec), Interval::from_ratio(3, 2, prec)],
            c: Integer::from(100),
            gamma: Rational::from((13, 5)), // 2.6
            x1: Integer::from(1),
        };
        let m = build_lattice(&problem).unwrap();
        // scaled by q = 5: diagonal = p = 13, last row = 5 * floor(260 theta)
        assert_eq!(m[0][0], Integer::from(13));
        assert_eq!(m[0][1], Integer::from(5 * 260));
        assert_eq!(m[1][1], Integer::from(5 * 390));
    }
}
