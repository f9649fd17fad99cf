use finstoch::document::parse_document;
use finstoch::harness::{
    check_continuity, continuity_residuals, gen_coalescable_pair, gen_morphism, gen_space, replay, replay_check,
    run_check, run_suite, run_suite_with, Execution, GenConfig, Generator, HarnessError, PairStrategy, PropReport,
    Trial, Witness, SUITES,
};
use finstoch::label::labels;
use finstoch::measures::{conditional_information_loss, LogBase};
use finstoch::rational::{ratio, zero};
use finstoch::structure::{find_mediator, is_coalescable};
use finstoch::{Morphism, ProbSpace};

const RUNNING: &str = "space p { x0: 1/2, x1: 1/2 }
space q { y0: 3/4, y1: 1/4 }
map f : p -> q { y0 | x0 = 1, y0 | x1 = 1/2, y1 | x1 = 1/2 }";

fn running() -> Morphism {
    parse_document(RUNNING).unwrap().morphism("f").unwrap().clone()
}

fn quick(seed: u64) -> GenConfig {
    GenConfig { trials: 40, ..GenConfig::with_seed(seed) }
}

fn timeless(mut r: PropReport) -> PropReport {
    r.elapsed_ms = 0;
    r
}

#[test]
fn every_suite_passes_on_a_short_run() {
    for name in SUITES {
        let report = run_suite(name, &quick(11)).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.failures.first());
        assert_eq!(report.trials, 40);
    }
}

#[test]
fn reports_are_reproducible_and_schedule_independent() {
    for name in ["positivity", "coalescable-duality", "markov-axioms"] {
        let a = timeless(run_suite_with(name, &quick(5), Execution::Sequential).unwrap());
        let b = timeless(run_suite_with(name, &quick(5), Execution::Parallel).unwrap());
        let c = timeless(run_suite_with(name, &quick(5), Execution::Parallel).unwrap());
        assert_eq!(a, b);
        assert_eq!(b, c);
    }
}

#[test]
fn unknown_suite_is_rejected_and_alias_resolves() {
    assert!(matches!(run_suite("bogus", &quick(0)), Err(HarnessError::UnknownSuite(n)) if n == "bogus"));
    let r = run_suite("restriction", &quick(0)).unwrap();
    assert_eq!(r.suite, "restriction-to-deterministic");
}

#[test]
fn invalid_configs_are_rejected() {
    let cfg = GenConfig { max_size: 0, ..quick(0) };
    assert!(matches!(run_suite("positivity", &cfg), Err(HarnessError::InvalidConfig(_))));
    let cfg = GenConfig { null_prob: ratio(3, 2), ..quick(0) };
    assert!(matches!(run_suite("positivity", &cfg), Err(HarnessError::InvalidConfig(_))));
}

#[test]
fn generated_spaces_are_exact_and_reproducible() {
    let cfg = GenConfig::with_seed(99);
    assert_eq!(gen_space(&cfg, 3), gen_space(&cfg, 3));
    let single = gen_space(&cfg, 1);
    assert_eq!(single.probs(), &[ratio(1, 1)]);
    for trial in 0..200 {
        let mut g = Generator::new(&cfg, trial);
        let n = g.size();
        assert!((1..=cfg.max_size).contains(&n));
        let probs = g.distribution(n, true);
        assert!(probs.iter().any(|p| *p != zero()));
        for p in &probs {
            assert!(*p.denom() <= num_bigint::BigInt::from(cfg.denom_bound));
        }
        // sums to one, or ProbSpace::new would refuse it
        ProbSpace::new(Generator::labels("x", n), probs).unwrap();
    }
}

#[test]
fn generated_maps() {
    let cfg = GenConfig::with_seed(3);
    let p = gen_space(&cfg, 3);
    let m = gen_morphism(&cfg, &p, 1);
    assert!(m.map().columns().iter().all(|c| c == &[ratio(1, 1)]));
    let mut g = Generator::new(&cfg, 1);
    let d = g.deterministic_map(p.labels(), &labels(["a", "b", "c"]).unwrap());
    assert!(d.is_deterministic());
}

#[test]
fn coalescable_pairs_by_every_strategy() {
    let cfg = GenConfig::with_seed(17);
    for trial in 0..100 {
        let mut g = Generator::new(&cfg, trial);
        for s in [PairStrategy::DeterministicFirst, PairStrategy::IsoSecond, PairStrategy::BloomShriek] {
            let (f, h) = g.coalescable_pair_with(s);
            assert!(is_coalescable(&f, &h).unwrap(), "{s:?} at trial {trial}");
        }
    }
    let (f, g) = gen_coalescable_pair(&cfg);
    assert!(find_mediator(&f, &g).unwrap().is_some());
}

fn low_loss(t: &mut Trial) -> finstoch::Result<()> {
    let m = t.gen.any_morphism();
    t.record("f", &m);
    t.below("K(f) < 1/10", conditional_information_loss(&m, LogBase::BITS), 0.1);
    Ok(())
}

#[test]
fn failing_witness_replays() {
    let report = run_check("low-loss", &quick(8), Execution::Parallel, low_loss).unwrap();
    assert!(!report.passed());
    let failure = &report.failures[0];
    let text = failure.witness.to_json();
    let witness = Witness::from_json(&text).unwrap();
    let again = replay_check(&witness, low_loss).unwrap();
    assert_eq!(again.len(), 1);
    assert_eq!(&again[0], failure);
    let doc = witness.document().unwrap();
    let k = conditional_information_loss(doc.morphism("f").unwrap(), LogBase::BITS);
    assert!(k >= 0.1);

    let mut tampered = witness.clone();
    tampered.trial += 1;
    assert!(matches!(replay_check(&tampered, low_loss), Err(HarnessError::WitnessMismatch)));
    // positivity draws the same instance and has nothing to report on it
    let mut passing = witness;
    passing.suite = "positivity".into();
    assert!(replay(&passing).unwrap().is_empty());
}

#[test]
fn constant_sequence_has_zero_residual() {
    let m = running();
    let r = continuity_residuals(&m, &m, 16).unwrap();
    assert!(r.iter().all(|&v| v == 0.0));
}

#[test]
fn running_example_converges() {
    let m = running();
    let report = check_continuity(&m, 64, &GenConfig::with_seed(1)).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.max_residual < 1e-6);
    let uniform = Morphism::new(
        finstoch::StochMap::from_columns(
            m.map().src().to_vec(),
            m.map().tgt().to_vec(),
            vec![vec![ratio(1, 2), ratio(1, 2)]; 2],
        )
        .unwrap(),
        m.src().clone(),
    )
    .unwrap();
    let r = continuity_residuals(&m, &uniform, 64).unwrap();
    assert!(r[63] < r[7]);
}

#[test]
fn perturbing_toward_a_point_mass() {
    // the limit is a point-mass prior, where K vanishes
    let p = ProbSpace::dirac(labels(["x0", "x1"]).unwrap(), 0).unwrap();
    let m = Morphism::new(running().map().clone(), p).unwrap();
    assert_eq!(conditional_information_loss(&m, LogBase::BITS), 0.0);
    let r = continuity_residuals(&m, &running(), 64).unwrap();
    assert!(r[63] < 1e-6);
    assert!(r.windows(2).skip(32).all(|w| w[1] <= w[0] + 1e-12));
}
