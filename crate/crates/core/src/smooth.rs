//! S-smooth factor extraction, perfect-power detection, multiplicative
//! dependence of integers, and the brute-force desk-scale oracle.

use rug::integer::IsPrime;
use rug::{Complete, Integer};

use crate::error::{Error, Result};
use crate::sequence::SequenceSpec;

/// N = prod p_i^{e_i} * H with gcd(H, prod p_i) = 1; H = 0 exactly for N = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothSplit {
    pub exponents: Vec<u32>,
    pub cofactor: Integer,
}

pub fn smooth_split(n: &Integer, primes: &[u64]) -> SmoothSplit {
    let mut exponents = vec![0u32; primes.len()];
    if n.cmp0() == std::cmp::Ordering::Equal {
        return SmoothSplit { exponents, cofactor: Integer::new() };
    }
    let mut rest = n.clone().abs();
    for (i, &p) in primes.iter().enumerate() {
        let pi = Integer::from(p);
        loop {
            let (q, r) = rest.clone().div_rem(pi.clone());
            if r.cmp0() != std::cmp::Ordering::Equal {
                break;
            }
            rest = q;
            exponents[i] += 1;
        }
    }
    SmoothSplit { exponents, cofactor: rest }
}

/// The"largest exponent" witness: N = base^exponent with exponent maximal,
/// reported only when exponent >= 2 and base >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerWitness {
    pub base: Integer,
    pub exponent: u32,
}

pub fn is_perfect_power(n: &Integer) -> Option<PowerWitness> {
    if *n < 2u32 {
        return None;
    }
    let mut base = n.clone();
    let mut exponent = 1u32;
    'outer: loop {
        let bits = base.significant_bits();
        let mut q = 2u32;
        while q <= bits {
            if is_prime_u32(q) {
                let (root, rem) = base.clone().root_rem(Integer::new(), q);
                if rem.cmp0() == std::cmp::Ordering::Equal && root > 1u32 {
                    base = root;
                    exponent *= q;
                    continue 'outer;
                }
            }
            q += 1;
        }
        break;
    }
    if exponent >= 2 {
        Some(PowerWitness { base, exponent })
    } else {
        None
    }
}

fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Full factorization with a hard budget: trial division then Pollard rho.
/// This is a test instrument for the oracle, not a production path.
pub fn factorize(n: &Integer, budget_iters: u64) -> Result<Vec<(Integer, u32)>> {
    if *n < 1u32 {
        return Err(Error::FactorizationTooHard("nonpositive input".into()));
    }
    let mut out: Vec<(Integer, u32)> = Vec::new();
    let mut stack = vec![n.clone()];
    let push = |out: &mut Vec<(Integer, u32)>, p: Integer| {
        for (q, e) in out.iter_mut() {
            if *q == p {
                *e += 1;
                return;
            }
        }
        out.push((p, 1));
    };
    while let Some(mut m) = stack.pop() {
        if m == 1u32 {
            continue;
        }
        // strip small primes
        let mut d = 2u32;
        while d < 100_000 && Integer::from(u64::from(d) * u64::from(d)) <= m {
            while m.is_divisible_u(d) {
                m /= d;
                push(&mut out, Integer::from(d));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m == 1u32 {
            continue;
        }
        if m.is_probably_prime(40) != IsPrime::No {
            push(&mut out, m);
            continue;
        }
        if let Some(w) = is_perfect_power(&m) {
            for _ in 0..w.exponent {
                stack.push(w.base.clone());
            }
            continue;
        }
        match pollard_rho(&m, budget_iters) {
            Some(f) => {
                stack.push((&m / &f).complete());
                stack.push(f);
            }
            None => return Err(Error::FactorizationTooHard(m.to_string())),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn pollard_rho(n: &Integer, budget: u64) -> Option<Integer> {
    // Brent's variant with deterministic parameter sweep
    for c in 1u32..20 {
        let mut x = Integer::from(2);
        let mut y = Integer::from(2);
        let mut d = Integer::from(1);
        let mut count = 0u64;
        while d == 1u32 {
            if count > budget {
                break;
            }
            count += 1;
            x = (Integer::from(&x * &x) + c) % n;
            y = (Integer::from(&y * &y) + c) % n;
            y = (Integer::from(&y * &y) + c) % n;
            let diff = (Integer::from(&x - &y)).abs();
            if diff.cmp0() == std::cmp::Ordering::Equal {
                break;
            }
            d = diff.gcd(n);
        }
        if d != 1u32 && d != *n {
            return Some(d);
        }
    }
    None
}

/// Coprime positive (e_m, e_n) with hm^{e_m} = hn^{e_n}, if any. Both
/// inputs must be >= 1; uses full factorization, so intended for oracle
/// scale.
pub fn multiplicative_dependence(
    hm: &Integer,
    hn: &Integer,
    budget: u64,
) -> Result<Option<(u32, u32)>> {
    if *hm < 1u32 || *hn < 1u32 {
        return Err(Error::InvalidSpec("dependence inputs must be positive".into()));
    }
    if *hm == 1u32 && *hn == 1u32 {
        return Ok(Some((1, 1)));
    }
    if *hm == 1u32 || *hn == 1u32 {
        return Ok(None);
    }
    let fm = factorize(hm, budget)?;
    let fn_ = factorize(hn, budget)?;
    if fm.len() != fn_.len() {
        return Ok(None);
    }
    // supports must coincide and exponent vectors be proportional:
    // e_m * v_m = e_n * v_n
    let mut em: Option<u32> = None;
    let mut en: Option<u32> = None;
    for ((pm, am), (pn, an)) in fm.iter().zip(fn_.iter()) {
        if pm != pn {
            return Ok(None);
        }
        let g = gcd_u32(*am, *an);
        let (rm, rn) = (an / g, am / g);
        match (em, en) {
            (None, None) => {
                em = Some(rm);
                en = Some(rn);
            }
            (Some(e1), Some(e2)) => {
                if e1 != rm || e2 != rn {
                    return Ok(None);
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(em.zip(en))
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// The multiplicative radical: x such that n = x^e with e maximal.
pub fn power_radical(n: &Integer) -> Integer {
    match is_perfect_power(n) {
        Some(w) => w.base,
        None => n.clone(),
    }
}

/// Desk-scale enumeration of all solution classes among indices 0..=range:
/// zero terms, fully smooth terms, and groups of equal cofactor radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleClasses {
    pub zero_class: Vec<u64>,
    pub smooth_class: Vec<u64>,
    /// (shared radical, indices) with at least two members.
    pub radical_classes: Vec<(Integer, Vec<u64>)>,
}

/// Enumerate all pairs (m, n) with 0 <= m < n <= range admitting
/// u_n^a = p_1^{g_1} ... p_k^{g_k} u_m^b, grouped into classes.
///
/// Two nonzero non-smooth terms pair exactly when their cofactors are
/// multiplicatively dependent, which is an equivalence with the power
/// radical as class key; zero terms pair only with zero terms.
pub fn brute_force_oracle(
    spec: &SequenceSpec,
    primes: &[u64],
    range: u64,
    budget: u64,
) -> Result<OracleClasses> {
    let terms = spec.terms_upto(range);
    let mut zero_class = Vec::new();
    let mut smooth_class = Vec::new();
    let mut radicals: Vec<(Integer, Vec<u64>)> = Vec::new();
    for (idx, t) in terms.iter().enumerate() {
        let split = smooth_split(t, primes);
        if split.cofactor.cmp0() == std::cmp::Ordering::Equal {
            zero_class.push(idx as u64);
        } else if split.cofactor == 1u32 {
            smooth_class.push(idx as u64);
        } else {
            // confirm radical equivalence matches pairwise dependence
            let _ = factorize(&split.cofactor, budget)?;
            let rad = power_radical(&split.cofactor);
            match radicals.iter_mut().find(|(r, _)| *r == rad) {
                Some((_, v)) => v.push(idx as u64),
                None => radicals.push((rad, vec![idx as u64])),
            }
        }
    }
    let radical_classes = radicals.into_iter().filter(|(_, v)| v.len() >= 2).collect();
    Ok(OracleClasses { zero_class, smooth_class, radical_classes })
}

/// Exact check that a pair is related: reconstructs (a, b, g_i) and
/// verifies u_n^a = prod p^g u_m^b by exact arithmetic (negative g allowed
/// by cross-multiplying).
pub fn verify_pair(
    spec: &SequenceSpec,
    primes: &[u64],
    m: u64,
    n: u64,
    budget: u64,
) -> Result<bool> {
    let um = spec.eval_term(m);
    let un = spec.eval_term(n);
    let sm = smooth_split(&um, primes);
    let sn = smooth_split(&un, primes);
    if sm.cofactor.cmp0() == std::cmp::Ordering::Equal
        || sn.cofactor.cmp0() == std::cmp::Ordering::Equal
    {
        return Ok(sm.cofactor.cmp0() == std::cmp::Ordering::Equal
            && sn.cofactor.cmp0() == std::cmp::Ordering::Equal);
    }
    let dep = multiplicative_dependence(&sm.cofactor, &sn.cofactor, budget)?;
    let Some((em, en)) = dep else {
        return Ok(false);
    };
    // u_n^a H-part: H_m^{e_m} = H_n^{e_n}; with a = e_m, b = e_n the smooth
    // parts absorb into the g_i: check u_n^{e_m} * prod p^{neg} = u_m^{e_n} * prod p^{pos}
    let a = em;
    let b = en;
    let mut lhs = int_pow(&un, a);
    let mut rhs = int_pow(&um, b);
    for (i, &p) in primes.iter().enumerate() {
        // g_i = a f_i - b e_i
        let g = i64::from(a) * i64::from(sn.exponents[i]) - i64::from(b) * i64::from(sm.exponents[i]);
        let pi = Integer::from(p);
        if g >= 0 {
            rhs *= int_pow(&pi, g as u32);
        } else {
            lhs *= int_pow(&pi, (-g) as u32);
        }
    }
    Ok(lhs == rhs)
}

fn int_pow(base: &Integer, e: u32) -> Integer {
    use rug::ops::Pow;
    Integer::from(base.pow(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRIMES: [u64; 4] = [2, 3, 5, 7];

    #[test]
    fn split_examples() {
        let s = smooth_split(&Integer::from(200), &PRIMES);
        assert_eq!(s.exponents, vec![3, 0, 2, 0]);
        assert_eq!(s.cofactor, 1);
        let s = smooth_split(&Integer::from(65), &PRIMES);
        assert_eq!(s.exponents, vec![0, 0, 1, 0]);
        assert_eq!(s.cofactor, 13);
        let s = smooth_split(&Integer::new(), &PRIMES);
        assert_eq!(s.exponents, vec![0, 0, 0, 0]);
        assert_eq!(s.cofactor, 0);
    }

    #[test]
    fn split_round_trip_random() {
        let mut state = 0xDEADBEEFCAFEu64;
        for _ in 0..10_000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = Integer::from(state >> 16);
            let s = smooth_split(&n, &PRIMES);
            let mut back = s.cofactor.clone();
            for (i, &p) in PRIMES.iter().enumerate() {
                back *= int_pow(&Integer::from(p), s.exponents[i]);
            }
            assert_eq!(back, n);
            if s.cofactor != 0u32 {
                for &p in &PRIMES {
                    assert!(!s.cofactor.is_divisible(&Integer::from(p)));
                }
            }
        }
    }

    #[test]
    fn perfect_power_witnesses() {
        let w = is_perfect_power(&Integer::from(8)).unwrap();
        assert_eq!((w.base, w.exponent), (Integer::from(2), 3));
        assert!(is_perfect_power(&Integer::from(13)).is_none());
        assert!(is_perfect_power(&Integer::from(1)).is_none());
        let w = is_perfect_power(&Integer::from(64)).unwrap();
        assert_eq!((w.base, w.exponent), (Integer::from(2), 6));
        let w = is_perfect_power(&Integer::from(729)).unwrap();
        assert_eq!((w.base, w.exponent), (Integer::from(3), 6));
        let w = is_perfect_power(&Integer::from(36)).unwrap();
        assert_eq!((w.base, w.exponent), (Integer::from(6), 2));
    }

    #[test]
    fn perfect_power_agrees_with_naive() {
        for n in 2u64..20_000 {
            let big = Integer::from(n);
            let fast = is_perfect_power(&big).is_some();
            let mut naive = false;
            let mut x = 2u64;
            while x * x <= n {
                let mut acc = x * x;
                while acc <= n {
                    if acc == n {
                        naive = true;
                    }
                    match acc.checked_mul(x) {
                        Some(v) => acc = v,
                        None => break,
                    }
                }
                x += 1;
            }
            assert_eq!(fast, naive, "mismatch at {n}");
        }
    }

    #[test]
    fn dependence_examples() {
        assert_eq!(
            multiplicative_dependence(&Integer::from(13), &Integer::from(13), 1 << 16).unwrap(),
            Some((1, 1))
        );
        // 4^3 = 8^2
        assert_eq!(
            multiplicative_dependence(&Integer::from(4), &Integer::from(8), 1 << 16).unwrap(),
            Some((3, 2))
        );
        assert_eq!(
            multiplicative_dependence(&Integer::from(6), &Integer::from(12), 1 << 16).unwrap(),
            None
        );
        // symmetry up to swap
        let ab = multiplicative_dependence(&Integer::from(8), &Integer::from(4), 1 << 16)
            .unwrap()
            .unwrap();
        assert_eq!(ab, (2, 3));
    }

    #[test]
    fn padovan_pair_21_27() {
        let spec = SequenceSpec::padovan();
        // P_21 = 65 = 5 * 13, P_27 = 351 = 27 * 13
        let s21 = smooth_split(&spec.eval_term(21), &PRIMES);
        let s27 = smooth_split(&spec.eval_term(27), &PRIMES);
        assert_eq!(s21.cofactor, 13);
        assert_eq!(s27.cofactor, 13);
        assert_eq!(
            multiplicative_dependence(&s21.cofactor, &s27.cofactor, 1 << 16).unwrap(),
            Some((1, 1))
        );
        assert!(verify_pair(&spec, &PRIMES, 21, 27, 1 << 16).unwrap());
        assert!(verify_pair(&spec, &PRIMES, 21, 49, 1 << 16).unwrap());
        assert!(!verify_pair(&spec, &PRIMES, 19, 21, 1 << 16).unwrap());
    }

    #[test]
    fn oracle_matches_reference_classes_to_60() {
        let spec = SequenceSpec::padovan();
        let classes = brute_force_oracle(&spec, &PRIMES, 60, 1 << 18).unwrap();
        assert_eq!(classes.zero_class, vec![1, 2, 4]);
        let expected_smooth: Vec<u64> =
            vec![0, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 20, 25, 36];
        assert_eq!(classes.smooth_class, expected_smooth);
        assert_eq!(classes.radical_classes.len(), 1);
        assert_eq!(classes.radical_classes[0].0, Integer::from(13));
        assert_eq!(classes.radical_classes[0].1, vec![21, 27, 49]);
    }

    #[test]
    fn oracle_small_ranges() {
        let spec = SequenceSpec::padovan();
        let classes = brute_force_oracle(&spec, &PRIMES, 10, 1 << 16).unwrap();
        assert_eq!(classes.zero_class, vec![1, 2, 4]);
        assert_eq!(classes.smooth_class, vec![0, 3, 5, 6, 7, 8, 9, 10]);
        assert!(classes.radical_classes.is_empty());
        let tiny = brute_force_oracle(&spec, &PRIMES, 1, 1 << 16).unwrap();
        assert_eq!(tiny.zero_class, vec![1]);
        assert_eq!(tiny.smooth_class, vec![0]);
        assert!(tiny.radical_classes.is_empty());
    }

    #[test]
    fn factorization_budget_and_correctness() {
        let n = Integer::from(600851475143u64); // 71 * 839 * 1471 * 6857
        let f = factorize(&n, 1 << 18).unwrap();
        let expect: Vec<(Integer, u32)> =
            [(71u32, 1u32), (839, 1), (1471, 1), (6857, 1)]
                .iter()
                .map(|&(p, e)| (Integer::from(p), e))
                .collect();
        assert_eq!(f, expect);
    }
}
