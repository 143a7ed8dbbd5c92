//! Campaign orchestration: the S-unit determination, the two-stage global
//! bound shrinking for power ratios, the per-index reductions, and the
//! final classification scans.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::baker::{
    preliminary_bound, theorem_cascade, AnalyticInputs, BoundCascade, PreliminaryBound,
    TailLogReading,
};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::heights::log_height;
use crate::interval::Interval;
use crate::lattice::{
    auto_tune, index_bound_from_form, lemma22_apply, reduce_basis, LatticeProblem,
    ReductionCertificate,
};
use crate::sequence::SequenceSpec;
use crate::smooth::{is_perfect_power, smooth_split};
use crate::spectrum::{
    refine_enclosure, solve_spectrum_auto, tail_bound_params, SpectralData, TailBound,
};

/// Everything a run needs beyond the sequence itself.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub primes: Vec<u64>,
    pub n1: u64,
    pub mu: Rational,
    pub precision: u32,
    pub gamma_grid: Vec<Rational>,
    pub c_extra_decades: u32,
    pub tail_log_reading: TailLogReading,
    pub jobs: Option<usize>,
    /// Run the per-index stage at least up to this m even when the global
    /// bound lands lower.
    pub min_per_m_cover: Option<u64>,
    pub factor_budget: u64,
    /// Maximum global shrinking passes.
    pub max_passes: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            primes: vec![2, 3, 5, 7],
            n1: 27,
            mu: Rational::from(10),
            precision: 192,
            gamma_grid: vec![
                Rational::from(1),
                Rational::from(2),
                Rational::from((13, 5)),
                Rational::from(4),
                Rational::from(8),
                Rational::from(11),
                Rational::from(16),
            ],
            c_extra_decades: 12,
            tail_log_reading: TailLogReading::default(),
            jobs: None,
            min_per_m_cover: None,
            factor_budget: 1 << 20,
            max_passes: 6,
        }
    }
}

/// Certified per-sequence data shared by all campaign stages.
pub struct Analysis {
    pub spec: SequenceSpec,
    pub spectral: SpectralData,
    pub tail: TailBound,
    pub inputs: AnalyticInputs,
    /// Smallest index beyond which u_n > 0 is certified by the tail bound.
    pub positivity_threshold: u64,
    pub warnings: Vec<String>,
}

impl Analysis {
    /// theta vector (log m_1 ... log m_k, log kappa_1, log alpha_1) at the
    /// requested precision; the alpha term is last by convention.
    pub fn thetas(&self, multiplicands: &[Integer], prec: u32) -> Result<Vec<Interval>> {
        let alpha = refine_enclosure(&self.spectral.field, prec)?;
        let mut kappa = Interval::zero(prec);
        for c in self.spectral.kappa1.coords.iter().rev() {
            kappa = kappa.mul(&alpha).add(&Interval::from_rational(c, prec));
        }
        let mut out = Vec::with_capacity(multiplicands.len() + 2);
        for m in multiplicands {
            out.push(Interval::from_integer(m, prec).ln()?);
        }
        out.push(kappa.ln()?);
        out.push(alpha.ln()?);
        Ok(out)
    }
}

pub fn analyze(spec: &SequenceSpec, config: &PipelineConfig) -> Result<Analysis> {
    spec.validate()?;
    let spectral = solve_spectrum_auto(spec, config.precision)?;
    let tail = tail_bound_params(&spectral, 0)?;
    let prec = config.precision;
    let field = &spectral.field;
    let h_alpha = log_height(field, &field.generator(), prec)?;
    let h_kappa = log_height(field, &spectral.kappa1, prec)?;
    let ln_alpha = spectral.ln_alpha1(prec)?;
    let ln_kappa = spectral.ln_kappa1(prec)?;
    let kappa1 = spectral.kappa1_enclosure(prec);
    if !kappa1.is_certainly_positive() {
        return Err(Error::HypothesisViolation(
            "kappa_1 must be positive under the distinguished embedding".into(),
        ));
    }
    let inputs = AnalyticInputs {
        h_alpha,
        h_kappa,
        ln_alpha,
        ln_kappa,
        kappa1,
        degree: spectral.degree as u32,
        tail: tail.clone(),
    };
    // positivity: K_op delta^-n < 1 certified from this index on
    let mut n_pos = tail.n_threshold;
    loop {
        let env = tail.envelope(n_pos)?;
        if env.certainly_lt(&Interval::one(prec)) {
            break;
        }
        n_pos += 1;
        if n_pos > 10_000 {
            return Err(Error::HypothesisViolation(
                "tail envelope never certifies positivity".into(),
            ));
        }
    }
    let mut analysis = Analysis {
        spec: spec.clone(),
        spectral,
        tail,
        inputs,
        positivity_threshold: n_pos,
        warnings: Vec::new(),
    };
    let m_list: Vec<Integer> = config.primes.iter().map(|&p| Integer::from(p)).collect();
    if let Some(w) = independence_probe(&analysis, &m_list, prec * 2)? {
        analysis.warnings.push(w);
    }
    Ok(analysis)
}

/// Heuristic multiplicative-independence probe: search for an integer
/// relation among the logarithms with a moderate-scale reduction; verify
/// any candidate exactly in the field. A verified relation is fatal; an
/// unverifiable candidate only produces a warning.
fn independence_probe(
    analysis: &Analysis,
    multiplicands: &[Integer],
    prec: u32,
) -> Result<Option<String>> {
    let thetas = analysis.thetas(multiplicands, prec)?;
    let n = thetas.len();
    let problem = LatticeProblem {
        thetas: thetas.clone(),
        c: Integer::from(Integer::from(10).pow(30)),
        gamma: Rational::from(1),
        x1: Integer::from(1),
    };
    let cert = match reduce_basis(&problem) {
        Ok(c) => c,
        Err(Error::AmbiguousFloor(_)) => return Ok(Some("independence probe inconclusive".into())),
        Err(e) => return Err(e),
    };
    // coefficient vector of the shortest reduced vector
    let coeffs: Vec<Integer> = (0..n).map(|i| cert.transform[0][i].clone()).collect();
    let mut value = Interval::zero(prec);
    for (c, t) in coeffs.iter().zip(&thetas) {
        value = value.add(&Interval::from_integer(c, prec).mul(t));
    }
    if !value.encloses_zero() {
        return Ok(None);
    }
    // candidate relation: verify exactly over the field
    let field = &analysis.spectral.field;
    let d = field.degree;
    let mut elem = FieldElement::from_rational(Rational::from(1), d);
    for (c, m) in coeffs.iter().zip(multiplicands) {
        let e = c.to_i64().ok_or_else(|| Error::PrecisionExhausted("huge probe exponent".into()))?;
        let base = FieldElement::from_integer(m, d);
        elem = field.mul(&elem, &field.pow_i64(&base, e)?);
    }
    let e_kappa = coeffs[n - 2]
        .to_i64()
        .ok_or_else(|| Error::PrecisionExhausted("huge probe exponent".into()))?;
    let e_alpha = coeffs[n - 1]
        .to_i64()
        .ok_or_else(|| Error::PrecisionExhausted("huge probe exponent".into()))?;
    elem = field.mul(&elem, &field.pow_i64(&analysis.spectral.kappa1, e_kappa)?);
    elem = field.mul(&elem, &field.pow_i64(&field.generator(), e_alpha)?);
    let one = FieldElement::from_rational(Rational::from(1), d);
    if elem == one && coeffs.iter().any(|c| c.cmp0() != std::cmp::Ordering::Equal) {
        return Err(Error::HypothesisViolation(format!(
            "multiplicative dependence detected: coefficients {:?}",
            coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(Some("independence probe found a near-relation that exact arithmetic refuted".into()))
}

/// Coefficient cap for an S-unit form with index bound N: every exponent
/// f_i is at most N * w / log p_min with w the certified per-index growth
/// of log u_n; the index coefficient is N itself.
fn sunit_x1(
    analysis: &Analysis,
    cascade_like_eps: &Interval,
    multiplicands: &[Integer],
    n_bound: &Integer,
    prec: u32,
) -> Result<Integer> {
    let ln_alpha = &analysis.inputs.ln_alpha;
    let one = Interval::one(prec);
    // log u_n <= n log alpha (1 + eps_2)(1 + eps) for n >= n_threshold
    let eps2 = analysis
        .inputs
        .ln_kappa
        .div(&Interval::from_u64(analysis.positivity_threshold.max(1), prec).mul(ln_alpha))
        .clamp_nonneg();
    let w = ln_alpha.mul(&one.add(cascade_like_eps)).mul(&one.add(&eps2));
    let mut smallest_log: Option<Interval> = None;
    for m in multiplicands {
        let l = Interval::from_integer(m, prec).ln()?;
        smallest_log = Some(match smallest_log {
            None => l,
            Some(cur) => cur.min_with(&l),
        });
    }
    let ratio = match smallest_log {
        Some(l) => w.div(&l).max_with(&one),
        None => one.clone(),
    };
    let cap = Interval::from_integer(n_bound, prec).mul(&ratio);
    cap.ceil_upper()
        .ok_or_else(|| Error::PrecisionExhausted("coefficient cap overflow".into()))
}

/// Outcome of one S-unit campaign (over any multiplicand list).
#[derive(Clone, Debug)]
pub struct SUnitCampaign {
    pub multiplicands: Vec<Integer>,
    pub preliminary: PreliminaryBound,
    pub certificate: ReductionCertificate,
    pub lambda_lower: Rational,
    /// Complete scan ceiling: no S-unit values exist above it.
    pub scan_bound: u64,
    /// Indices with |u_n| a product of the multiplicands (cofactor 1).
    pub smooth_indices: Vec<u64>,
    /// Indices with u_n = 0; complete by the positivity threshold.
    pub zero_indices: Vec<u64>,
}

pub fn solve_s_unit(
    analysis: &Analysis,
    multiplicands: &[Integer],
    config: &PipelineConfig,
) -> Result<SUnitCampaign> {
    let prec = config.precision;
    let pb = preliminary_bound(multiplicands, config.n1, &analysis.inputs, config.tail_log_reading)?;
    let x1 = sunit_x1(analysis, &pb.eps, multiplicands, &pb.bound_int, prec)?;
    let provider = |p: u32| analysis.thetas(multiplicands, p);
    let cert = auto_tune(&provider, &x1, &config.gamma_grid, config.c_extra_decades)?;
    let lambda_lower = lemma22_apply(&cert)?;
    let reduced_bound =
        index_bound_from_form(&lambda_lower, &analysis.tail, &pb.eps1, &Interval::one(prec))?;
    let reduced_bound = reduced_bound
        .to_u64()
        .ok_or_else(|| Error::PrecisionExhausted("scan bound overflow".into()))?;
    let scan_bound = reduced_bound.max(config.n1);

    let primes_u64: Vec<u64> = multiplicands.iter().filter_map(|m| m.to_u64()).collect();
    let terms = analysis.spec.terms_upto(scan_bound);
    let mut smooth_indices = Vec::new();
    let mut zero_indices = Vec::new();
    for (n, t) in terms.iter().enumerate() {
        let split = smooth_split(t, &primes_u64);
        if split.cofactor.cmp0() == std::cmp::Ordering::Equal {
            zero_indices.push(n as u64);
            if (n as u64) >= analysis.positivity_threshold {
                return Err(Error::HypothesisViolation(format!(
                    "zero term at index {n} beyond the certified positivity threshold"
                )));
            }
        } else if split.cofactor == 1u32 {
            smooth_indices.push(n as u64);
        }
    }
    Ok(SUnitCampaign {
        multiplicands: multiplicands.to_vec(),
        preliminary: pb,
        certificate: cert,
        lambda_lower,
        scan_bound,
        smooth_indices,
        zero_indices,
    })
}

/// One global shrinking pass of the power-ratio campaign.
#[derive(Clone, Debug)]
pub struct GlobalPass {
    pub pass: usize,
    pub x1: Integer,
    pub certificate: ReductionCertificate,
    pub lambda_lower: Rational,
    pub m_bound: u64,
    pub an_bound: Integer,
    pub bm_bound: Integer,
}

/// Per-index reduction outcome.
#[derive(Clone, Debug)]
pub struct PerIndexReduction {
    pub m: u64,
    pub certificate: ReductionCertificate,
    pub lambda_lower: Rational,
    pub n_bound: u64,
}

/// Auxiliary campaign for a small nontrivial index: its cofactor's primes
/// are adjoined and an S-unit bound over the extended set caps the partner
/// index.
#[derive(Clone, Debug)]
pub struct SmallIndexCampaign {
    pub m: u64,
    pub extended: Vec<Integer>,
    pub campaign: SUnitCampaign,
}

/// The complete solution report of a power-ratio run.
pub struct SolutionReport {
    pub spec: SequenceSpec,
    pub config: PipelineConfig,
    pub analysis: Analysis,
    pub sunit: SUnitCampaign,
    pub cascade: BoundCascade,
    pub passes: Vec<GlobalPass>,
    pub m_star: u64,
    pub per_m_cover: u64,
    pub per_m: Vec<PerIndexReduction>,
    pub small_m: Vec<SmallIndexCampaign>,
    pub eps3: Interval,
    pub final_bound: u64,
    pub zero_class: Vec<u64>,
    pub smooth_class: Vec<u64>,
    /// Nontrivial classes: shared cofactor H with at least two indices.
    pub classes: Vec<(Integer, Vec<u64>)>,
}

fn coefficient_cap(
    cascade: &BoundCascade,
    an: &Interval,
    bm: &Interval,
    prec: u32,
) -> Result<Integer> {
    // per-prime g_i <= (an + bm) w / log p_i; also |a-b| <= maxab and
    // |an - bm| <= max(an, bm)
    let one = Interval::one(prec);
    let w = cascade
        .ln_alpha
        .mul(&one.add(&cascade.eps))
        .mul(&one.add(&cascade.eps2));
    let p0 = Interval::from_u64(cascade.primes[0], prec).ln()?;
    let g_cap = an.add(bm).mul(&w).div(&p0);
    let cap = g_cap.max_with(&cascade.max_ab).max_with(&an.max_with(bm));
    cap.ceil_upper()
        .ok_or_else(|| Error::PrecisionExhausted("coefficient cap overflow".into()))
}

/// Full power-ratio campaign.
pub fn solve_power_ratio(spec: &SequenceSpec, config: &PipelineConfig) -> Result<SolutionReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::HypothesisViolation(format!("thread pool: {e}")))?;
    pool.install(|| solve_power_ratio_inner(spec, config))
}

fn solve_power_ratio_inner(
    spec: &SequenceSpec,
    config: &PipelineConfig,
) -> Result<SolutionReport> {
    let prec = config.precision;
    let analysis = analyze(spec, config)?;
    let m_list: Vec<Integer> = config.primes.iter().map(|&p| Integer::from(p)).collect();

    // (ii) the x = 1 / b = 0 branch: S-unit determination
    let sunit = solve_s_unit(&analysis, &m_list, config)?;

    // (i) cascade constants
    let cascade = theorem_cascade(
        &config.primes,
        config.n1,
        &config.mu,
        &analysis.inputs,
        config.tail_log_reading,
    )?;

    // (iii) global passes: start from the unconditional a log x bound
    let one = Interval::one(prec);
    let z0 = cascade.a_log_x_bound()?;
    let mut an = cascade.an_bound(&z0)?;
    let mut bm = cascade.max_ab.mul(&cascade.m_bound(&z0)?);
    let mut passes: Vec<GlobalPass> = Vec::new();
    let mut m_star: Option<u64> = None;
    for pass_no in 1..=config.max_passes {
        let x1 = coefficient_cap(&cascade, &an, &bm, prec)?;
        let provider = |p: u32| analysis.thetas(&m_list, p);
        let cert = auto_tune(&provider, &x1, &config.gamma_grid, config.c_extra_decades)?;
        let lambda_lower = lemma22_apply(&cert)?;
        let mult = Interval::from_u64(2, prec).mul(&cascade.max_ab);
        let m_bound_int =
            index_bound_from_form(&lambda_lower, &analysis.tail, &cascade.eps1, &mult)?;
        let m_bound = m_bound_int
            .to_u64()
            .ok_or_else(|| Error::PrecisionExhausted("m bound overflow".into()))?
            .max(config.n1);
        let z = cascade.a_log_x_from_m(m_bound)?;
        an = cascade.an_bound(&z)?;
        bm = cascade.max_ab.mul(&Interval::from_u64(m_bound, prec));
        passes.push(GlobalPass {
            pass: pass_no,
            x1,
            certificate: cert,
            lambda_lower,
            m_bound,
            an_bound: an.ceil_upper().unwrap_or_default(),
            bm_bound: bm.ceil_upper().unwrap_or_default(),
        });
        match m_star {
            Some(prev) if m_bound + prev / 100 >= prev => {
                m_star = Some(m_bound.min(prev));
                break;
            }
            _ => m_star = Some(m_bound),
        }
    }
    let m_star = m_star.expect("at least one pass runs");

    // trivial set: indices with cofactor 0 or 1 (zero class is certified
    // complete; smooth class is complete up to the S-unit scan bound)
    let per_m_cover = m_star.max(config.min_per_m_cover.unwrap_or(0));
    let terms = spec.terms_upto(per_m_cover.max(sunit.scan_bound));
    let h_of = |idx: u64| smooth_split(&terms[idx as usize], &config.primes).cofactor;

    // (iv) the exponent-collapse hypothesis: no nontrivial cofactor below
    // the cover may be a perfect power
    for m in 0..=per_m_cover {
        let h = h_of(m);
        if h > 1u32 {
            if let Some(w) = is_perfect_power(&h) {
                return Err(Error::HypothesisViolation(format!(
                    "cofactor of index {m} is a perfect power: {}^{}",
                    w.base, w.exponent
                )));
            }
        }
    }

    // eps_3: tail correction used by the per-index partner bound (valid
    // for n > max(n_1, 100))
    let eps3_threshold = config.n1.max(100);
    let eps3 = {
        let env = analysis.tail.envelope(eps3_threshold)?;
        env.div(&one.sub(&env))
    };

    // (v) per-index reductions for every nontrivial n_1 <= m <= cover
    let an_final = Interval::from_integer(&passes.last().unwrap().an_bound, prec);
    let bm_final = Interval::from_integer(&passes.last().unwrap().bm_bound, prec);
    let x1_per_m = coefficient_cap(&cascade, &an_final, &bm_final, prec)?;
    let targets: Vec<u64> =
        (config.n1..=per_m_cover).filter(|&m| h_of(m) > 1u32).collect();
    let shared_tune: std::sync::Mutex<Option<(Integer, Rational)>> = std::sync::Mutex::new(None);
    let mut per_m: Vec<PerIndexReduction> = targets
        .par_iter()
        .map(|&m| -> Result<PerIndexReduction> {
            let term = spec.eval_term(m);
            let mut ml = m_list.clone();
            ml.push(term);
            let provider = |p: u32| {
                // theta order: primes, log u_m, log kappa, log alpha
                let mut t = analysis.thetas(&m_list, p)?;
                let lnum = Interval::from_integer(&ml[ml.len() - 1], p).ln()?;
                t.insert(t.len() - 2, lnum);
                Ok(t)
            };
            // reuse the last successful (C, gamma) before searching afresh
            let hint = shared_tune.lock().unwrap().clone();
            let cert = match hint {
                Some((c, gamma)) => {
                    let digits = c.to_string().len() as u32;
                    let p = ((digits as f64 + 40.0) * 3.4) as u32;
                    let problem = LatticeProblem {
                        thetas: provider(p)?,
                        c,
                        gamma,
                        x1: x1_per_m.clone(),
                    };
                    match reduce_basis(&problem) {
                        Ok(c) if c.passed => c,
                        _ => auto_tune(&provider, &x1_per_m, &config.gamma_grid, config.c_extra_decades)
                            .map_err(|_| Error::PerIndexReductionFailed(m))?,
                    }
                }
                None => auto_tune(&provider, &x1_per_m, &config.gamma_grid, config.c_extra_decades)
                    .map_err(|_| Error::PerIndexReductionFailed(m))?,
            };
            *shared_tune.lock().unwrap() = Some((cert.c.clone(), cert.gamma.clone()));
            let lambda_lower = lemma22_apply(&cert)?;
            // with a = 1, |Lambda_1| <= (1 + eps_3) K delta^-n for
            // n > max(n_1, 100)
            let n_bound = index_bound_from_form(
                &lambda_lower,
                &analysis.tail,
                &eps3,
                &Interval::one(prec),
            )?
            .to_u64()
            .ok_or_else(|| Error::PrecisionExhausted("n bound overflow".into()))?;
            Ok(PerIndexReduction { m, certificate: cert, lambda_lower, n_bound })
        })
        .collect::<Result<Vec<_>>>()?;
    per_m.sort_by_key(|r| r.m);

    // (v') small nontrivial indices below n_1: adjoin the cofactor's primes
    // and bound the partner index by an S-unit campaign over the extension
    let mut small_m = Vec::new();
    for m in 0..config.n1.min(per_m_cover + 1) {
        let h = h_of(m);
        if h <= 1u32 {
            continue;
        }
        let factors = crate::smooth::factorize(&h, config.factor_budget)?;
        let mut extended = m_list.clone();
        for (p, _) in factors {
            if !extended.contains(&p) {
                extended.push(p);
            }
        }
        extended.sort();
        let campaign = solve_s_unit(&analysis, &extended, config)?;
        small_m.push(SmallIndexCampaign { m, extended, campaign });
    }

    // (vi) final matching scan
    let mut final_bound = sunit
        .scan_bound
        .max(m_star)
        .max(eps3_threshold)
        .max(config.n1);
    for r in &per_m {
        final_bound = final_bound.max(r.n_bound);
    }
    for s in &small_m {
        final_bound = final_bound.max(s.campaign.scan_bound);
    }
    let terms = spec.terms_upto(final_bound);
    let mut zero_class = Vec::new();
    let mut smooth_class = Vec::new();
    let mut groups: Vec<(Integer, Vec<u64>)> = Vec::new();
    for (idx, t) in terms.iter().enumerate() {
        let split = smooth_split(t, &config.primes);
        if split.cofactor.cmp0() == std::cmp::Ordering::Equal {
            zero_class.push(idx as u64);
        } else if split.cofactor == 1u32 {
            smooth_class.push(idx as u64);
        } else {
            match groups.iter_mut().find(|(h, _)| *h == split.cofactor) {
                Some((_, v)) => v.push(idx as u64),
                None => groups.push((split.cofactor, vec![idx as u64])),
            }
        }
    }
    let classes: Vec<(Integer, Vec<u64>)> =
        groups.into_iter().filter(|(_, v)| v.len() >= 2).collect();

    // class consistency: each related pair must verify exactly
    for (_, members) in &classes {
        for w in members.windows(2) {
            if !crate::smooth::verify_pair(spec, &config.primes, w[0], w[1], config.factor_budget)? {
                return Err(Error::HypothesisViolation(format!(
                    "class pair ({}, {}) failed exact verification",
                    w[0], w[1]
                )));
            }
        }
    }

    Ok(SolutionReport {
        spec: spec.clone(),
        config: config.clone(),
        analysis,
        sunit,
        cascade,
        passes,
        m_star,
        per_m_cover,
        per_m,
        small_m,
        eps3,
        final_bound,
        zero_class,
        smooth_class,
        classes,
    })
}
