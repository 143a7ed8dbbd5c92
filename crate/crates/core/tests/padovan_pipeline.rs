//! End-to-end power-ratio campaign on the van der Laan-Padovan sequence.

use rug::Integer;

use recpow::pipeline::{solve_power_ratio, PipelineConfig};
use recpow::sequence::SequenceSpec;
use recpow::smooth::brute_force_oracle;

#[test]
fn padovan_full_campaign_reproduces_reference_classes() {
    let spec = SequenceSpec::padovan();
    let config = PipelineConfig {
        min_per_m_cover: Some(988),
        ..PipelineConfig::default()
    };
    let t0 = std::time::Instant::now();
    let report = solve_power_ratio(&spec, &config).unwrap();
    eprintln!("pipeline wall time: {:?}", t0.elapsed());
    eprintln!(
        "m* = {}, cover = {}, final bound = {}, passes = {:?}",
        report.m_star,
        report.per_m_cover,
        report.final_bound,
        report.passes.iter().map(|p| p.m_bound).collect::<Vec<_>>()
    );
    eprintln!(
        "sunit scan bound = {}, per-m jobs = {}, small-m = {}",
        report.sunit.scan_bound,
        report.per_m.len(),
        report.small_m.len()
    );

    // the three reference classes
    assert_eq!(report.zero_class, vec![1, 2, 4]);
    let expected_smooth: Vec<u64> =
        vec![0, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 20, 25, 36];
    assert_eq!(report.smooth_class, expected_smooth);
    assert_eq!(report.classes.len(), 1);
    assert_eq!(report.classes[0].0, Integer::from(13));
    assert_eq!(report.classes[0].1, vec![21, 27, 49]);

    // milestone ceilings
    assert!(report.passes.len() >= 2);
    assert!(report.passes[1].m_bound <= 1100, "pass-2 m bound {}", report.passes[1].m_bound);
    assert!(report.m_star <= 1100);
    assert!(report.final_bound <= 1100, "final bound {}", report.final_bound);
    assert!(report.per_m_cover >= 988);
    // every nontrivial index up to the cover is handled
    let per_m_handled: Vec<u64> = report.per_m.iter().map(|r| r.m).collect();
    for m in config.n1..=988 {
        let h = recpow::smooth::smooth_split(&spec.eval_term(m), &config.primes).cofactor;
        if h > 1u32 {
            assert!(per_m_handled.contains(&m), "m = {m} not covered");
        }
    }
    // per-m reductions all succeeded with C gamma <= 3e214
    for r in &report.per_m {
        let cg = rug::Rational::from(&r.certificate.c) * &r.certificate.gamma;
        let digits = cg.to_f64().log10();
        assert!(digits <= 214.5, "per-m C gamma too large: 1e{digits:.1}");
    }

    // oracle equivalence on [0, 300]
    let oracle = brute_force_oracle(&spec, &config.primes, 300, 1 << 20).unwrap();
    assert_eq!(oracle.zero_class, report.zero_class);
    let rs: Vec<u64> = report.smooth_class.iter().copied().filter(|&n| n <= 300).collect();
    assert_eq!(oracle.smooth_class, rs);
    assert_eq!(oracle.radical_classes.len(), report.classes.len());
    for ((orad, omembers), (h, members)) in
        oracle.radical_classes.iter().zip(report.classes.iter())
    {
        let trunc: Vec<u64> = members.iter().copied().filter(|&n| n <= 300).collect();
        assert_eq!(omembers, &trunc);
        // radical of H matches the oracle key (no perfect powers occur)
        assert_eq!(orad, h);
    }
}
