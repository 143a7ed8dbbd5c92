//! The bound cascade: preliminary index bounds for S-unit values of a
//! dominant-root sequence, and the full constant chain bounding power
//! ratios u_n^a = p_1^{g_1} ... p_k^{g_k} u_m^b.
//!
//! All constants are certified enclosures; every inequality that feeds a
//! scan bound is evaluated with outward rounding.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::matveev::{matveev_c, matveev_c1};
use crate::spectrum::TailBound;

/// Reading of the log term in the preliminary-bound numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailLogReading {
    /// log((1 + eps_1) K) — the reading consistent with the surrounding
    /// derivation; the default.
    EpsilonScaledK,
    /// log(2 K) — the literal alternative, kept measurable behind this switch.
    TwoK,
}

impl Default for TailLogReading {
    fn default() -> Self {
        TailLogReading::EpsilonScaledK
    }
}

/// Certified per-sequence analytic inputs shared by all bound computations.
#[derive(Clone, Debug)]
pub struct AnalyticInputs {
    pub h_alpha: Interval,
    pub h_kappa: Interval,
    pub ln_alpha: Interval,
    pub ln_kappa: Interval,
    /// Enclosure of kappa_1 itself (real positive).
    pub kappa1: Interval,
    pub degree: u32,
    pub tail: TailBound,
}

impl AnalyticInputs {
    fn prec(&self) -> u32 {
        self.h_alpha.prec()
    }
}

/// eta > 0 with (eta Y log Y) / log(eta Y log Y) = Y, solved by safeguarded
/// bisection on the monotone branch z / log z = Y, z > e.
pub fn fixpoint_eta(y: &Interval, _prec: u32) -> Result<Interval> {
    let prec = y.prec().max(96);
    let e = Interval::e(prec);
    if !y.certainly_gt(&e) {
        return Err(Error::HypothesisViolation("fixpoint requires Y > e".into()));
    }
    let g = |z: &Interval| -> Result<Interval> { Ok(z.div(&z.ln()?)) };
    // bracket: g(Y) = Y/log Y < Y, and z_hi = 2 Y log Y has g > Y eventually
    let mut zl = y.clone();
    let mut zh = y.mul(&y.ln()?).mul(&Interval::from_u64(4, prec));
    let mut guard = 0;
    while !g(&zh)?.certainly_gt(y) {
        zh = zh.mul(&Interval::from_u64(2, prec));
        guard += 1;
        if guard > 300 {
            return Err(Error::NoConvergence(format!("{zl:?}"), format!("{zh:?}")));
        }
    }
    if !g(&zl)?.certainly_lt(y) {
        return Err(Error::NoConvergence(format!("{zl:?}"), format!("{zh:?}")));
    }
    // bisect to ~2^-60 relative width
    for _ in 0..(prec.min(240) as usize) {
        let mid = zl.add(&zh).mul(&Interval::from_ratio(1, 2, prec));
        let mid_point = Interval::point(mid.hi().clone());
        let gm = g(&mid_point)?;
        if gm.certainly_lt(y) {
            zl = mid_point;
        } else if gm.certainly_gt(y) {
            zh = mid_point;
        } else {
            break; // enclosure of g straddles Y: cannot split further
        }
        let rel = zh.sub(&zl).div(&zl);
        if rel.hi().to_f64() < 1e-16 {
            break;
        }
    }
    // z(Y_true) lies in [zl.lo, zh.hi]
    let z = Interval::new_unchecked(zl.lo().clone(), zh.hi().clone());
    Ok(z.div(&y.mul(&y.ln()?)))
}

/// Largest z satisfying z < q * log(c z): certified upper bound on any
/// solution of the growth inequality (monotone branch, c z > e).
pub fn growth_bound(q: &Interval, c: &Interval, prec: u32) -> Result<Interval> {
    let g = |z: &Interval| -> Result<Interval> { Ok(z.div(&c.mul(z).ln()?)) };
    // any true solution z* has g(z*) < q; find zh with g(zh) certainly > q
    let mut zh = q.max_with(&Interval::from_u64(4, prec).div(c));
    zh = zh.add(&Interval::from_u64(3, prec));
    let mut guard = 0;
    while !g(&zh)?.certainly_gt(q) {
        zh = zh.mul(&Interval::from_u64(2, prec));
        guard += 1;
        if guard > 500 {
            return Err(Error::NoConvergence("growth".into(), format!("{zh:?}")));
        }
    }
    let mut zl = zh.mul(&Interval::from_ratio(1, 2, prec));
    for _ in 0..200 {
        let mid = zl.add(&zh).mul(&Interval::from_ratio(1, 2, prec));
        let mid_point = Interval::point(mid.hi().clone());
        match g(&mid_point) {
            Ok(gm) if gm.certainly_gt(q) => zh = mid_point,
            Ok(_) => zl = mid_point,
            Err(_) => zl = mid_point,
        }
        let rel = zh.sub(&zl).div(&zh);
        if rel.hi().to_f64() < 1e-12 {
            break;
        }
    }
    Ok(Interval::point(zh.hi().clone()))
}

/// One stage of the preliminary bound.
#[derive(Clone, Debug)]
pub struct StageBound {
    pub stage: usize,
    pub c3: Interval,
    pub c_prime: Interval,
    pub c_second: Interval,
    pub eta1: Interval,
    pub bound: Interval,
}

/// Outcome of the preliminary S-unit index bound.
#[derive(Clone, Debug)]
pub struct PreliminaryBound {
    pub stages: Vec<StageBound>,
    pub eps: Interval,
    pub eps1: Interval,
    pub c1: Interval,
    pub c2: Interval,
    /// c_2 * C'(k) — the scaled log argument constant of the final stage.
    pub c1_prime: Interval,
    /// C''(k), the final-stage multiplier.
    pub c1_second: Interval,
    pub psi: Interval,
    /// max over stages of the stage-s index bound.
    pub bound: Interval,
    pub bound_int: Integer,
}

fn tail_log_numerator(
    reading: TailLogReading,
    eps1: &Interval,
    k_op: &Interval,
    prec: u32,
) -> Result<Interval> {
    match reading {
        TailLogReading::EpsilonScaledK => {
            Interval::one(prec).add(eps1).mul(k_op).ln()
        }
        TailLogReading::TwoK => Interval::from_u64(2, prec).mul(k_op).ln(),
    }
}

fn c2_constant(inputs: &AnalyticInputs, n0: u64, eps: &Interval, prec: u32) -> Result<Interval> {
    let c1 = matveev_c1(inputs.degree, prec)?;
    let n0i = Interval::from_u64(n0, prec);
    let kk = inputs
        .tail
        .k_op
        .mul(&inputs.kappa1)
        .mul(&Interval::one(prec).add(eps));
    let third = inputs.ln_alpha.add(&kk.ln()?.clamp_nonneg().div(&n0i));
    let m = inputs
        .h_alpha
        .max_with(&inputs.h_kappa.div(&n0i))
        .max_with(&third);
    Ok(c1.mul(&m))
}

/// Preliminary bound: if n >= n0 and u_n = m_1^{e_1} ... m_k^{e_k}, then
/// n is below the returned bound. Stages s = 0..k are all evaluated and
/// the maximum taken.
pub fn preliminary_bound(
    m_list: &[Integer],
    n0: u64,
    inputs: &AnalyticInputs,
    reading: TailLogReading,
) -> Result<PreliminaryBound> {
    let prec = inputs.prec();
    let k = m_list.len();
    let mut ln_m = Vec::with_capacity(k);
    for m in m_list {
        if *m < 2u32 {
            return Err(Error::InvalidSpec("multiplicand must be at least 2".into()));
        }
        ln_m.push(Interval::from_integer(m, prec).ln()?);
    }

    let eps = inputs.tail.envelope(n0)?;
    if !eps.certainly_lt(&Interval::one(prec)) {
        return Err(Error::HypothesisViolation(format!(
            "eps = K delta^-n0 must be below 1 at n0 = {n0}"
        )));
    }
    let eps1 = eps.div(&Interval::one(prec).sub(&eps));
    let c1 = matveev_c1(inputs.degree, prec)?;
    let c2 = c2_constant(inputs, n0, &eps, prec)?;
    let a_full = ln_m
        .iter()
        .fold(inputs.h_alpha.max_with(&inputs.h_kappa), |acc, l| acc.max_with(l));
    // hypothesis n0 > A / c_2
    if !Interval::from_u64(n0, prec).certainly_gt(&a_full.div(&c2)) {
        return Err(Error::HypothesisViolation(format!("n0 = {n0} must exceed A/c_2")));
    }

    let w = tail_log_numerator(reading, &eps1, &inputs.tail.k_op, prec)?;
    let ln_delta = inputs.tail.delta.ln()?;
    let hh = inputs.h_alpha.mul(&inputs.h_kappa);
    let n0i = Interval::from_u64(n0, prec);

    let mut stages = Vec::with_capacity(k + 1);
    let mut best: Option<Interval> = None;
    for s in 0..=k {
        let psi_s = ln_m[..s].iter().fold(hh.clone(), |acc, l| acc.mul(l));
        let a_s = ln_m[..s]
            .iter()
            .fold(inputs.h_alpha.max_with(&inputs.h_kappa), |acc, l| acc.max_with(l));
        let log_arg = c2.mul(&n0i).div(&a_s);
        let log_term = log_arg.ln()?;
        if !log_term.is_certainly_positive() {
            return Err(Error::HypothesisViolation(
                "log(c_2 n_0 / A) must be positive".into(),
            ));
        }
        let c3 = w.div(&psi_s.mul(&log_term));
        let cmat = matveev_c((s + 2) as u32, inputs.degree, prec)?;
        let dpow = Interval::from_u64(inputs.degree as u64, prec).pow_int_pos((s + 2) as i64)?;
        let c_prime = cmat.mul(&dpow).add(&c3).div(&ln_delta);
        let psi_prime = psi_s.div(&a_s);
        let y = c2.mul(&c_prime).mul(&psi_prime);
        let eta1 = fixpoint_eta(&y, prec)?;
        let c_second = eta1.mul(&c_prime);
        let bound = c_second.mul(&psi_s).mul(&y.ln()?);
        best = Some(match best {
            None => bound.clone(),
            Some(b) => b.max_with(&bound),
        });
        stages.push(StageBound { stage: s, c3, c_prime, c_second, eta1, bound });
    }

    let last = stages.last().unwrap();
    let c1_prime = c2.mul(&last.c_prime);
    let c1_second = last.c_second.clone();
    let bound = best.unwrap();
    let bound_int = bound
        .ceil_upper()
        .ok_or_else(|| Error::PrecisionExhausted("non-finite preliminary bound".into()))?;
    let psi = ln_m.iter().fold(hh, |acc, l| acc.mul(l));
    Ok(PreliminaryBound {
        stages,
        eps,
        eps1,
        c1,
        c2,
        c1_prime,
        c1_second,
        psi,
        bound,
        bound_int,
    })
}

/// Every constant of the power-ratio bound cascade.
#[derive(Clone, Debug)]
pub struct BoundCascade {
    pub primes: Vec<u64>,
    pub n1: u64,
    pub mu: Rational,
    pub x0: u64,
    pub degree: u32,
    pub psi: Interval,
    pub a_const: Interval,
    pub c1: Interval,
    pub c2: Interval,
    pub c0: Interval,
    pub eps: Interval,
    pub eps1: Interval,
    pub eps2: Interval,
    pub cc1: Interval,
    pub cc1_prime: Interval,
    pub cc2: Interval,
    pub cc2_prime: Interval,
    pub cc3: Interval,
    pub cc4: Interval,
    pub cc5: Interval,
    pub cc5_prime: Interval,
    pub cc6: Interval,
    pub cc7: Interval,
    pub eta1: Interval,
    pub eta2: Interval,
    pub ln_alpha: Interval,
    pub ln_x0: Interval,
    /// max(a, b) bound: C_3 Psi log(alpha_1) log(C_2' Psi).
    pub max_ab: Interval,
    /// Displayed closed-form bound shapes.
    pub shape_mn: Interval,
    pub shape_m: Interval,
    pub shape_n: Interval,
}

fn smallest_prime_not_in(primes: &[u64]) -> u64 {
    let mut candidate = 2u64;
    'outer: loop {
        if !primes.contains(&candidate) && is_prime_u64(candidate) {
            return candidate;
        }
        candidate += 1;
        if candidate > 1_000_000 {
            break 'outer;
        }
    }
    unreachable!("primes are unbounded")
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Compute the full cascade for the prime set and threshold n_1.
pub fn theorem_cascade(
    primes: &[u64],
    n1: u64,
    mu: &Rational,
    inputs: &AnalyticInputs,
    reading: TailLogReading,
) -> Result<BoundCascade> {
    let prec = inputs.prec();
    let k = primes.len();
    if k == 0 {
        return Err(Error::InvalidSpec("cascade needs at least one prime".into()));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    for p in &sorted {
        if !is_prime_u64(*p) {
            return Err(Error::InvalidSpec(format!("{p} is not prime")));
        }
    }
    let x0 = smallest_prime_not_in(&sorted);
    let ln_x0 = Interval::from_u64(x0, prec).ln()?;
    let mut ln_p = Vec::with_capacity(k);
    for p in &sorted {
        ln_p.push(Interval::from_u64(*p, prec).ln()?);
    }
    let hh = inputs.h_alpha.mul(&inputs.h_kappa);
    let psi = ln_p.iter().fold(hh, |acc, l| acc.mul(l));
    let a_const = ln_p
        .last()
        .unwrap()
        .max_with(&inputs.h_alpha)
        .max_with(&inputs.h_kappa);

    let mu_i = Interval::from_rational(mu, prec);
    if !mu_i.certainly_gt(&Interval::one(prec)) {
        return Err(Error::HypothesisViolation("mu must exceed 1".into()));
    }
    let c1 = matveev_c1(inputs.degree, prec)?;
    let c0 = mu_i.div(&c1.mul(&inputs.h_alpha));
    // n_1 > C_0 A
    if !Interval::from_u64(n1, prec).certainly_gt(&c0.mul(&a_const)) {
        return Err(Error::HypothesisViolation(format!("n1 = {n1} must exceed C_0 A")));
    }
    let eps = inputs.tail.envelope(n1)?;
    if !eps.certainly_lt(&Interval::one(prec)) {
        return Err(Error::HypothesisViolation("eps = K delta^-n1 must be below 1".into()));
    }
    let eps1 = eps.div(&Interval::one(prec).sub(&eps));
    let eps2 = inputs
        .ln_kappa
        .div(&Interval::from_u64(n1, prec).mul(&inputs.ln_alpha))
        .clamp_nonneg();
    let c2 = c2_constant(inputs, n1, &eps, prec)?;

    let w = tail_log_numerator(reading, &eps1, &inputs.tail.k_op, prec)?;
    let ln_delta = inputs.tail.delta.ln()?;
    let ln_mu = mu_i.ln()?;

    // C_1 / C_1' : the S-unit branch (k multiplicands)
    let cmat_k2 = matveev_c((k + 2) as u32, inputs.degree, prec)?;
    let dpow_k2 = Interval::from_u64(inputs.degree as u64, prec).pow_int_pos((k + 2) as i64)?;
    let cc4 = cmat_k2.mul(&dpow_k2);
    let cp1 = cc4.add(&w.div(&psi.mul(&ln_mu))).div(&ln_delta);
    let cc1_prime = c2.mul(&cp1);
    let y1 = c2.mul(&cp1).mul(&psi.div(&a_const));
    let eta1 = fixpoint_eta(&y1, prec)?;
    let cc1 = eta1.mul(&cp1);

    // C_2 / C_2' : k+1 multiplicands including the unknown cofactor x >= x_0
    let cmat_k3 = matveev_c((k + 3) as u32, inputs.degree, prec)?;
    let dpow_k3 = Interval::from_u64(inputs.degree as u64, prec).pow_int_pos((k + 3) as i64)?;
    let cp2 = cmat_k3
        .mul(&dpow_k3)
        .add(&w.div(&psi.mul(&ln_x0).mul(&ln_mu)))
        .div(&ln_delta);
    let cc2_prime = c2.mul(&cp2);
    // Psi'_ext = Psi log x / max(A, log x) ranges over
    // [Psi * min(1, log x_0 / A), Psi]; eta over that Y-range
    let low_factor = ln_x0.div(&a_const).min_with(&Interval::one(prec));
    let y_hi = c2.mul(&cp2).mul(&psi);
    let y_lo = y_hi.mul(&low_factor);
    let eta_hi = fixpoint_eta(&y_hi, prec)?;
    let eta2x = if low_factor.certainly_lt(&Interval::one(prec)) {
        // conservative cap across the whole range: z(Y_hi) / (Y_lo log Y_lo)
        let z_hi = eta_hi.mul(&y_hi).mul(&y_hi.ln()?);
        let cap = z_hi.div(&y_lo.mul(&y_lo.ln()?));
        eta_hi.max_with(&cap)
    } else {
        eta_hi
    };
    let cc2 = eta2x.mul(&cp2);

    let one = Interval::one(prec);
    let cc3 = cc2.mul(&one.add(&eps));

    let ln_c2p_psi = cc2_prime.mul(&psi).ln()?;
    let max_ab = cc3.mul(&psi).mul(&inputs.ln_alpha).mul(&ln_c2p_psi);

    let cc5_prime = c1
        .mul(&cc3)
        .mul(&psi.square())
        .mul(&inputs.ln_alpha)
        .mul(&ln_c2p_psi.square())
        .mul(&cc2.mul(&inputs.h_alpha).max_with(&cc3.mul(&inputs.ln_alpha)))
        .div(&a_const);

    // W_5 = log(2 (1+eps_1) K * (a+b)-bound)
    let w5 = Interval::from_u64(2, prec)
        .mul(&one.add(&eps1))
        .mul(&inputs.tail.k_op)
        .mul(&max_ab)
        .ln()?;
    let c5p_lnx0 = cc5_prime.mul(&ln_x0);
    if !c5p_lnx0.certainly_gt(&one) {
        return Err(Error::HypothesisViolation("C_5' log x_0 must exceed 1".into()));
    }
    let cc5 = cc4.add(&w5.div(&psi.mul(&c5p_lnx0.ln()?))).div(&ln_delta);

    let cc6 = Interval::from_u64(2, prec)
        .mul(&cc5)
        .mul(&one.add(&eps))
        .mul(&one.add(&eps2))
        .mul(&inputs.ln_alpha);
    let y6 = cc6.mul(&psi);
    let eta2 = fixpoint_eta(&y6, prec)?;
    let cc7 = eta2.mul(&cc6);

    // displayed bound shapes
    let hub = c0.max_with(&cc2.mul(&psi).mul(&ln_c2p_psi));
    let shape_mn = Interval::from_u64(2, prec).mul(&hub).mul(&cc5_prime);
    let ln_c6psi = y6.ln()?;
    let shape_m = Interval::from_u64(2, prec)
        .mul(&cc5)
        .mul(&psi)
        .mul(&cc7.mul(&psi).mul(&ln_c6psi).ln()?);
    let shape_n = hub.mul(&cc7).mul(&psi).mul(&ln_c6psi);

    Ok(BoundCascade {
        primes: sorted,
        n1,
        mu: mu.clone(),
        x0,
        degree: inputs.degree,
        psi,
        a_const,
        c1,
        c2,
        c0,
        eps,
        eps1,
        eps2,
        cc1,
        cc1_prime,
        cc2,
        cc2_prime,
        cc3,
        cc4,
        cc5,
        cc5_prime,
        cc6,
        cc7,
        eta1,
        eta2,
        ln_alpha: inputs.ln_alpha.clone(),
        ln_x0,
        max_ab,
        shape_mn,
        shape_m,
        shape_n,
    })
}

impl BoundCascade {
    fn prec(&self) -> u32 {
        self.psi.prec()
    }

    /// Certified upper bound on a log x along the growth inequality
    /// z < C_6/2 * Psi * log(C_5' z).
    pub fn a_log_x_bound(&self) -> Result<Interval> {
        let prec = self.prec();
        let q = self.cc6.mul(&self.psi).div(&Interval::from_u64(2, prec));
        growth_bound(&q, &self.cc5_prime, prec)
    }

    /// an <= max(maxab * n1, C_0 z, C_2 Psi log(C_2' Psi) z) given
    /// z >= a log x.
    pub fn an_bound(&self, z: &Interval) -> Result<Interval> {
        let prec = self.prec();
        let n1 = Interval::from_u64(self.n1, prec);
        let t1 = self.max_ab.mul(&n1);
        let t2 = self.c0.mul(z);
        let t3 = self.cc2.mul(&self.psi).mul(&self.cc2_prime.mul(&self.psi).ln()?).mul(z);
        Ok(t1.max_with(&t2).max_with(&t3))
    }

    /// m < C_5 Psi log(C_5' z) given z >= log x.
    pub fn m_bound(&self, z: &Interval) -> Result<Interval> {
        Ok(self.cc5.mul(&self.psi).mul(&self.cc5_prime.mul(z).ln()?))
    }

    /// a log x <= (1+eps)(1+eps_2) m log alpha_1 for m >= n_1.
    pub fn a_log_x_from_m(&self, m: u64) -> Result<Interval> {
        let prec = self.prec();
        let one = Interval::one(prec);
        Ok(Interval::from_u64(m, prec)
            .mul(&self.ln_alpha)
            .mul(&one.add(&self.eps))
            .mul(&one.add(&self.eps2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::SequenceSpec;
    use crate::spectrum::{solve_spectrum_auto, tail_bound_params};

    pub(crate) fn padovan_inputs(prec: u32) -> AnalyticInputs {
        let spec = SequenceSpec::padovan();
        let sd = solve_spectrum_auto(&spec, prec).unwrap();
        let tail = tail_bound_params(&sd, 0).unwrap();
        let field = &sd.field;
        let h_alpha = crate::heights::log_height(field, &field.generator(), prec).unwrap();
        let h_kappa = crate::heights::log_height(field, &sd.kappa1, prec).unwrap();
        let ln_alpha = sd.ln_alpha1(prec).unwrap();
        let ln_kappa = sd.ln_kappa1(prec).unwrap();
        let kappa1 = sd.kappa1_enclosure(prec);
        AnalyticInputs {
            h_alpha,
            h_kappa,
            ln_alpha,
            ln_kappa,
            kappa1,
            degree: sd.degree as u32,
            tail,
        }
    }

    // Frozen with an independent bisection at high precision.
    const ETA_10: f64 = 1.553537402305482341187287;
    const ETA_1E20: f64 = 1.084932418538932863969889;

    #[test]
    fn eta_fixpoint_values() {
        let y = Interval::from_u64(10, 192);
        let eta = fixpoint_eta(&y, 192).unwrap();
        assert!((eta.mid_f64() / ETA_10 - 1.0).abs() < 1e-12);
        let y = Interval::from_u64(10, 224).pow_int_pos(20).unwrap();
        let eta = fixpoint_eta(&y, 224).unwrap();
        assert!((eta.mid_f64() / ETA_1E20 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eta_backsubstitution_residual() {
        for k in [1u32, 3, 7, 20, 45] {
            let y = Interval::from_u64(10, 224).pow_int_pos(k as i64).unwrap();
            let eta = fixpoint_eta(&y, 224).unwrap();
            let z = eta.mul(&y).mul(&y.ln().unwrap());
            let back = z.div(&z.ln().unwrap());
            let residual = back.sub(&y).div(&y).abs();
            assert!(residual.hi().to_f64() < 1e-12, "residual too large at Y=1e{k}");
            // the fixpoint exceeds its seed
            assert!(z.certainly_gt(&y));
        }
    }

    #[test]
    fn padovan_preliminary_bound_under_ceiling() {
        let inputs = padovan_inputs(192);
        let primes = [2u64, 3, 5, 7].map(Integer::from);
        let pb = preliminary_bound(&primes, 27, &inputs, TailLogReading::default()).unwrap();
        // epsilon values are exact spectral quantities
        assert!((pb.eps.mid_f64() / 6.34125266734e-5 - 1.0).abs() < 1e-8);
        assert!((pb.eps1.mid_f64() / 6.34165480769e-5 - 1.0).abs() < 1e-8);
        // certified constants stay below the reference ceilings
        let ceiling = 2.456e24 * (1.0 + 1e-4);
        assert!(pb.bound.hi().to_f64() <= ceiling, "bound {:?}", pb.bound);
        assert!(pb.c1_prime.hi().to_f64() <= 5.381845e22 * (1.0 + 1e-4));
        assert!(pb.c1_second.hi().to_f64() <= 2.066058e23 * (1.0 + 1e-4));
        // stage bounds grow with s
        for w in pb.stages.windows(2) {
            assert!(w[1].bound.hi() > w[0].bound.hi());
        }
    }

    #[test]
    fn preliminary_bound_shrinks_with_fewer_primes() {
        let inputs = padovan_inputs(192);
        let all = [2u64, 3, 5, 7].map(Integer::from);
        let two = [Integer::from(2)];
        let pb_all = preliminary_bound(&all, 27, &inputs, TailLogReading::default()).unwrap();
        let pb_two = preliminary_bound(&two, 27, &inputs, TailLogReading::default()).unwrap();
        assert!(pb_two.bound.certainly_lt(&pb_all.bound));
        assert!(pb_two.psi.certainly_lt(&pb_all.psi));
    }

    #[test]
    fn two_k_reading_is_available() {
        let inputs = padovan_inputs(192);
        let primes = [2u64, 3, 5, 7].map(Integer::from);
        let a = preliminary_bound(&primes, 27, &inputs, TailLogReading::EpsilonScaledK).unwrap();
        let b = preliminary_bound(&primes, 27, &inputs, TailLogReading::TwoK).unwrap();
        // log(2K) > log((1+eps_1)K) at these parameters, so the bound grows
        assert!(b.bound.hi() > a.bound.hi());
    }

    #[test]
    fn padovan_cascade_constants() {
        let inputs = padovan_inputs(192);
        let mu = Rational::from(10);
        let c =
            theorem_cascade(&[2, 3, 5, 7], 27, &mu, &inputs, TailLogReading::default()).unwrap();
        assert_eq!(c.x0, 11);
        let tol = 1.0 + 1e-4;
        assert!(c.eps.hi().to_f64() <= 6.3413e-5 * tol);
        assert!(c.eps1.hi().to_f64() <= 6.3417e-5 * tol);
        assert!(c.eps2.hi().to_f64() == 0.0);
        assert!(c.cc2.hi().to_f64() <= 1.062372e26 * tol, "C2 = {:?}", c.cc2);
        assert!(c.cc2_prime.hi().to_f64() <= 7.587587e24 * tol);
        assert!(c.cc3.hi().to_f64() <= 1.062439e26 * tol);
        assert!(c.cc5.hi().to_f64() <= 8.072767e22 * tol, "C5 = {:?}", c.cc5);
        assert!(c.cc5_prime.hi().to_f64() <= 2.003782e54 * tol, "C5' = {:?}", c.cc5_prime);
        // C_3 = C_2 (1 + eps) by construction
        let prec = 192;
        let expect = c.cc2.mul(&Interval::one(prec).add(&c.eps));
        assert!(c.cc3.overlaps(&expect));
        // displayed bound shapes all evaluate to finite positives
        for shape in [&c.shape_mn, &c.shape_m, &c.shape_n] {
            assert!(shape.is_certainly_positive());
            assert!(shape.hi().is_finite());
        }
        // max(a,b) ceiling from the reference computation
        assert!(c.max_ab.hi().to_f64() <= 3.897329e26 * tol);
    }

    #[test]
    fn cascade_bounds_monotone_under_upward_perturbation() {
        // The operative bound quantities may only grow when K or Psi grow.
        // (Individual factored constants such as C_2 = eta C' can dip by
        // ~1e-5 through the eta fixpoint, so the property is stated over
        // the bounds that gate the scans.)
        let inputs = padovan_inputs(160);
        let mu = Rational::from(10);
        let base =
            theorem_cascade(&[2, 3, 5, 7], 27, &mu, &inputs, TailLogReading::default()).unwrap();
        let mut bumped = inputs.clone();
        bumped.tail.k_op = bumped.tail.k_op.mul(&Interval::from_ratio(11, 10, 160));
        bumped.tail.k = bumped.tail.k.mul(&Interval::from_ratio(11, 10, 160));
        let up = theorem_cascade(&[2, 3, 5, 7], 27, &mu, &bumped, TailLogReading::default())
            .unwrap();
        assert!(up.eps.hi() >= base.eps.hi());
        assert!(up.eps1.hi() >= base.eps1.hi());
        assert!(up.shape_m.hi() >= base.shape_m.hi());
        assert!(up.shape_n.hi() >= base.shape_n.hi());
        assert!(up.a_log_x_bound().unwrap().hi() >= base.a_log_x_bound().unwrap().hi());
        // inflate Psi via h_kappa
        let mut wider = inputs.clone();
        wider.h_kappa = wider.h_kappa.mul(&Interval::from_ratio(6, 5, 160));
        let up2 =
            theorem_cascade(&[2, 3, 5, 7], 27, &mu, &wider, TailLogReading::default()).unwrap();
        assert!(up2.psi.hi() > base.psi.hi());
        assert!(up2.shape_mn.hi() >= base.shape_mn.hi());
        assert!(up2.shape_m.hi() >= base.shape_m.hi());
        assert!(up2.shape_n.hi() >= base.shape_n.hi());
        let primes = [2u64, 3, 5, 7].map(Integer::from);
        let pb_base = preliminary_bound(&primes, 27, &inputs, TailLogReading::default()).unwrap();
        let pb_up = preliminary_bound(&primes, 27, &wider, TailLogReading::default()).unwrap();
        assert!(pb_up.bound.hi() >= pb_base.bound.hi());
    }

    #[test]
    fn doubling_precision_never_grows_certified_uppers() {
        let mu = Rational::from(10);
        let lo = theorem_cascade(&[2, 3, 5, 7], 27, &mu, &padovan_inputs(160), TailLogReading::default())
            .unwrap();
        let hi = theorem_cascade(&[2, 3, 5, 7], 27, &mu, &padovan_inputs(320), TailLogReading::default())
            .unwrap();
        assert!(hi.eps.hi() <= lo.eps.hi());
        assert!(hi.cc2.hi() <= lo.cc2.hi());
        assert!(hi.cc5.hi() <= lo.cc5.hi());
        assert!(hi.cc5_prime.hi() <= lo.cc5_prime.hi());
        assert!(hi.shape_n.hi() <= lo.shape_n.hi());
    }

    #[test]
    fn growth_bound_is_sound() {
        // z < q log(c z): check the returned bound satisfies g(bound) >= q
        let prec = 160;
        let q = Interval::from_u64(1_000_000, prec);
        let c = Interval::from_u64(50, prec);
        let z = growth_bound(&q, &c, prec).unwrap();
        let g = z.div(&c.mul(&z).ln().unwrap());
        assert!(g.hi().to_f64() >= q.lo().to_f64());
        // and is not wildly loose: z <= 1.01 * q * log(c z)
        let rhs = q.mul(&c.mul(&z).ln().unwrap()).mul(&Interval::from_ratio(101, 100, prec));
        assert!(z.certainly_lt(&rhs));
    }
}
