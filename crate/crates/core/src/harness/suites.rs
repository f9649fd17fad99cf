use std::time::Instant;

use super::continuity::continuity_trial;
use super::report::{Failure, PropReport, Trial, Violation, Witness};
use super::{map_indexed, Execution, GenConfig, HarnessError};
use crate::bayes::{bayesian_inverse, double_inverse_check, verify_bayes_rule};
use crate::document::{to_json, Document};
use crate::error::Result;
use crate::label::Label;
use crate::map::{self, StochMap};
use crate::measures::{
    closs_closed_form, conditional_entropy, conditional_entropy_of, conditional_information_loss,
    deviation_by_entropies, functoriality_deviation, remembering_composite, shannon_entropy, LogBase, EQ_TOL,
};
use crate::morphism::{self, convex_sum_morphisms, joint_distribution, marginal_first, marginal_second, Morphism};
use crate::rational;
use crate::space::ProbSpace;
use crate::structure::{
    bloom, bloom_morphism, bloom_shriek_factorize, code_from_morphism, exhaustive_recovery, find_disintegration,
    find_mediator, has_vanishing_loss, inverse_shriek_morphism, is_coalescable, is_correctable, is_disintegration,
    shriek_morphism, verify_mediator,
};

/// A property checked once per trial.
pub type Check = fn(&mut Trial) -> Result<()>;

pub const SUITES: &[&str] = &[
    "positivity",
    "restriction-to-deterministic",
    "convex-linearity",
    "continuity",
    "reduction",
    "blooming",
    "shrieking",
    "semi-functoriality-K",
    "semi-functoriality-H",
    "entropic-bayes",
    "bayes-duality",
    "bayes-rule-exact",
    "double-inverse",
    "joint-symmetry",
    "coalescable-duality",
    "mediator-deviation-equivalence",
    "vanishing-K-correctable",
    "ae-invariance",
    "iso-invariance",
    "bloom-decomposition",
    "markov-axioms",
];

const CHECKS: &[Check] = &[
    positivity,
    restriction,
    convex_linearity,
    continuity_trial,
    reduction,
    blooming,
    shrieking,
    semi_functoriality_k,
    semi_functoriality_h,
    entropic_bayes,
    bayes_duality,
    bayes_rule_exact,
    double_inverse,
    joint_symmetry,
    coalescable_duality,
    mediator_deviation,
    vanishing_k_correctable,
    ae_invariance,
    iso_invariance,
    bloom_decomposition,
    markov_axioms,
];

/// The registered name for `name`, accepting `restriction` as a short form.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    let name = if name == "restriction" {
        "restriction-to-deterministic"
    } else {
        name
    };
    SUITES.iter().copied().find(|s| *s == name)
}

fn lookup(name: &str) -> std::result::Result<(&'static str, Check), HarnessError> {
    let canonical = canonical_name(name).ok_or_else(|| HarnessError::UnknownSuite(name.to_string()))?;
    let i = SUITES.iter().position(|s| *s == canonical).expect("registered");
    Ok((canonical, CHECKS[i]))
}

pub fn run_suite(name: &str, cfg: &GenConfig) -> std::result::Result<PropReport, HarnessError> {
    run_suite_with(name, cfg, Execution::default())
}

pub fn run_suite_with(name: &str, cfg: &GenConfig, exec: Execution) -> std::result::Result<PropReport, HarnessError> {
    let (canonical, check) = lookup(name)?;
    run_check(canonical, cfg, exec, check)
}

/// Runs `check` for `cfg.trials` trials, labelling the report `suite`.
pub fn run_check(
    suite: &str,
    cfg: &GenConfig,
    exec: Execution,
    check: Check,
) -> std::result::Result<PropReport, HarnessError> {
    cfg.validate()?;
    let start = Instant::now();
    let outcomes = map_indexed(cfg.trials, exec, |i| run_trial(suite, cfg, i, check));
    let mut report = PropReport::empty(suite, cfg.seed);
    report.trials = cfg.trials;
    for (failures, residual) in outcomes {
        report.failures.extend(failures);
        report.max_residual = report.max_residual.max(residual);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn execute(cfg: &GenConfig, index: u64, check: Check) -> (Document, Vec<Violation>, f64) {
    let mut t = Trial::new(cfg, index);
    if let Err(e) = check(&mut t) {
        t.fail("no core error", e.to_string(), "Ok".into());
    }
    t.finish()
}

pub(super) fn failures(suite: &str, cfg: &GenConfig, index: u64, instance: serde_json::Value, violations: Vec<Violation>) -> Vec<Failure> {
    let witness = Witness {
        suite: suite.to_string(),
        trial: index,
        config: cfg.clone(),
        instance,
    };
    violations
        .into_iter()
        .map(|v| Failure {
            trial: index,
            check: v.check,
            observed: v.observed,
            expected: v.expected,
            witness: witness.clone(),
        })
        .collect()
}

fn run_trial(suite: &str, cfg: &GenConfig, index: u64, check: Check) -> (Vec<Failure>, f64) {
    let (instance, violations, residual) = execute(cfg, index, check);
    if violations.is_empty() {
        return (Vec::new(), residual);
    }
    (failures(suite, cfg, index, to_json(&instance), violations), residual)
}

/// Re-runs the single trial a witness came from and returns its failures.
pub fn replay(witness: &Witness) -> std::result::Result<Vec<Failure>, HarnessError> {
    let (_, check) = lookup(&witness.suite)?;
    replay_check(witness, check)
}

/// [`replay`] for a check outside the registry.
pub fn replay_check(witness: &Witness, check: Check) -> std::result::Result<Vec<Failure>, HarnessError> {
    let (instance, violations, _) = execute(&witness.config, witness.trial, check);
    let instance = to_json(&instance);
    if instance != witness.instance {
        return Err(HarnessError::WitnessMismatch);
    }
    Ok(failures(&witness.suite, &witness.config, witness.trial, instance, violations))
}

const BITS: LogBase = LogBase::BITS;

fn k(m: &Morphism) -> f64 {
    conditional_information_loss(m, BITS)
}

fn h(m: &Morphism) -> f64 {
    conditional_entropy(m, BITS)
}

fn inv(m: &Morphism) -> Morphism {
    bayesian_inverse(m).into_inverse()
}

fn entropy(p: &ProbSpace) -> f64 {
    shannon_entropy(p, BITS)
}

fn positivity(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    t.record("f", &m);
    let (loss, closed) = (k(&m), closs_closed_form(&m, BITS));
    t.nonneg("K(f) ≥ 0", loss);
    t.nonneg("closed form ≥ 0", closed);
    t.nonneg("H(f|p) ≥ 0", h(&m));
    t.close("K(f) agrees with its closed form", loss, closed, EQ_TOL);
    Ok(())
}

fn restriction(t: &mut Trial) -> Result<()> {
    let (nx, ny, nz) = (t.gen.size(), t.gen.size(), t.gen.size());
    let p = t.gen.space("x", nx);
    let f = t.gen.deterministic_morphism(&p, "y", ny);
    let g = t.gen.deterministic_morphism(f.tgt(), "z", nz);
    t.record("f", &f);
    t.record("g", &g);
    t.close("K(f) = H(p) − H(q)", k(&f), entropy(f.src()) - entropy(f.tgt()), EQ_TOL);
    t.holds("H(f|p) = 0", h(&f) == 0.0, || format!("{:e}", h(&f)));
    let gf = morphism::compose(&g, &f)?;
    t.close("K(g∘f) = K(f) + K(g)", k(&gf), k(&f) + k(&g), EQ_TOL);
    Ok(())
}

fn convex_linearity(t: &mut Trial) -> Result<()> {
    let (idx, parts) = t.gen.family();
    for (i, q) in parts.iter().enumerate() {
        t.record(&format!("q{i}"), q);
    }
    let sum = convex_sum_morphisms(&idx, &parts)?;
    let weights: Vec<f64> = idx.probs().iter().map(rational::to_f64).collect();
    let avg = |f: fn(&Morphism) -> f64| parts.iter().zip(&weights).map(|(q, w)| w * f(q)).sum::<f64>();
    t.close("K(⊕ p_i Q_i) = Σ p_i K(Q_i)", k(&sum), avg(k), EQ_TOL);
    t.close("H(⊕ p_i Q_i) = Σ p_i H(Q_i)", h(&sum), avg(h), EQ_TOL);
    let inverted: Vec<Morphism> = parts.iter().map(inv).collect();
    let sum_of_inverses = convex_sum_morphisms(&idx, &inverted)?;
    let ok = map::ae_equal(inv(&sum).map(), sum_of_inverses.map(), sum.tgt())?;
    t.holds("B(⊕ p_i Q_i) = ⊕ p_i B(Q_i) a.e.", ok, || "inverses differ on the support".into());
    Ok(())
}

fn reduction(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    t.record("f", &m);
    let (_, proj) = bloom_shriek_factorize(&m)?;
    t.close("K(f) = K(π_Y)", k(&m), k(&proj), EQ_TOL);
    let joint = joint_distribution(&m);
    t.close("H(ϑ) = H(f|p) + H(p)", entropy(&joint), h(&m) + entropy(m.src()), EQ_TOL);
    Ok(())
}

fn blooming(t: &mut Trial) -> Result<()> {
    let n = t.gen.size();
    let p = t.gen.space("x", n);
    let b = Morphism::bloom_of(&p);
    t.record("bloom", &b);
    t.close("K(⸘_p) = 0", k(&b), 0.0, EQ_TOL);
    t.close("closed form of K(⸘_p) = 0", closs_closed_form(&b, BITS), 0.0, EQ_TOL);
    let m = t.gen.morphism(&p, "y", n);
    t.record("f", &m);
    t.close("K(⸘_f) = 0", k(&bloom_morphism(&m)), 0.0, EQ_TOL);
    Ok(())
}

fn shrieking(t: &mut Trial) -> Result<()> {
    let n = t.gen.size();
    let p = t.gen.space("x", n);
    let s = Morphism::shriek_of(&p);
    t.record("shriek", &s);
    t.holds("H(!_p) = 0", h(&s) == 0.0, || format!("{:e}", h(&s)));
    t.close("K(!_p) = H(p)", k(&s), entropy(&p), EQ_TOL);
    let m = t.gen.morphism(&p, "y", t.gen.config().max_size);
    t.record("f", &m);
    let sf = shriek_morphism(&m);
    t.holds("H(!_f) = 0", h(&sf) == 0.0, || format!("{:e}", h(&sf)));
    Ok(())
}

fn semi_functoriality(t: &mut Trial, name: &str, functor: fn(&Morphism) -> f64) -> Result<()> {
    let (f, g, strategy) = t.gen.coalescable_pair();
    t.record("f", &f);
    t.record("g", &g);
    match find_mediator(&f, &g)? {
        Some(med) => {
            let ok = verify_mediator(&med, &f, &g)?;
            t.holds("mediator verifies", ok, || format!("{strategy:?}"));
        }
        None => t.fail("generated pair is coalescable", format!("{strategy:?}: no mediator"), "a mediator".into()),
    }
    let gf = morphism::compose(&g, &f)?;
    t.close(name, functor(&gf), functor(&f) + functor(&g), EQ_TOL);
    Ok(())
}

fn semi_functoriality_k(t: &mut Trial) -> Result<()> {
    semi_functoriality(t, "K(g∘f) = K(f) + K(g)", k)
}

fn semi_functoriality_h(t: &mut Trial) -> Result<()> {
    semi_functoriality(t, "H(g∘f) = H(f) + H(g)", h)
}

fn entropic_bayes(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    t.record("f", &m);
    let fbar = inv(&m);
    let bloom_p = h(&Morphism::bloom_of(m.src()));
    let bloom_q = h(&Morphism::bloom_of(m.tgt()));
    t.close("H(f) + H(⸘_p) = H(f̄) + H(⸘_q)", h(&m) + bloom_p, h(&fbar) + bloom_q, EQ_TOL);
    Ok(())
}

fn bayes_duality(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    t.record("f", &m);
    let fbar = inv(&m);
    t.close("H(f) = K(f̄)", h(&m), k(&fbar), EQ_TOL);
    t.close("K(f) = H(f̄)", k(&m), h(&fbar), EQ_TOL);
    Ok(())
}

fn bayes_rule_exact(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    t.record("f", &m);
    let pair = bayesian_inverse(&m);
    t.holds("f̄_xy q_y = f_yx p_x", verify_bayes_rule(&pair)?, || "Bayes rule fails".into());
    t.holds("f is a Bayesian inverse of f̄", verify_bayes_rule(&pair.flipped())?, || "flipped rule fails".into());
    let n = rational::ratio(1, m.src().len() as i64);
    let uniform = pair
        .uniform_filled()
        .into_iter()
        .all(|y| pair.inverse().map().column(y).iter().all(|v| *v == n));
    t.holds("null outputs invert uniformly", uniform, || "non-uniform fill".into());
    Ok(())
}

fn double_inverse(t: &mut Trial) -> Result<()> {
    let (f, g) = t.gen.pair();
    t.record("f", &f);
    t.record("g", &g);
    t.holds("B(B(f)) = f a.e.", double_inverse_check(&f), || "double inverse differs".into());
    let gf = morphism::compose(&g, &f)?;
    let composite = map::compose(inv(&f).map(), inv(&g).map())?;
    let ok = map::ae_equal(inv(&gf).map(), &composite, gf.tgt())?;
    t.holds("B(g∘f) = B(f)∘B(g) a.e.", ok, || "inverse of composite differs".into());
    let id = Morphism::identity(f.src());
    let ok = map::ae_equal(inv(&id).map(), id.map(), f.src())?;
    t.holds("B(id) = id a.e.", ok, || "inverse of identity differs".into());
    Ok(())
}

fn joint_symmetry(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    t.record("f", &m);
    let swap = map::swap(m.tgt().labels(), m.src().labels());
    let swapped = map::pushforward(&swap, &joint_distribution(&inv(&m)))?;
    let joint = joint_distribution(&m);
    t.holds("swap_*ϑ(f̄) = ϑ(f)", swapped == joint, || format!("{swapped:?} vs {joint:?}"));
    Ok(())
}

fn mixed_pair(t: &mut Trial) -> (Morphism, Morphism) {
    let pair = if t.gen.chance(1, 2) {
        let (f, g, _) = t.gen.coalescable_pair();
        (f, g)
    } else {
        t.gen.pair()
    };
    t.record("f", &pair.0);
    t.record("g", &pair.1);
    pair
}

fn coalescable_duality(t: &mut Trial) -> Result<()> {
    let (f, g) = mixed_pair(t);
    let (fbar, gbar) = (inv(&f), inv(&g));
    let forward = find_mediator(&f, &g)?;
    let backward = is_coalescable(&gbar, &fbar)?;
    t.holds("(f, g) coalescable ⇔ (ḡ, f̄) coalescable", forward.is_some() == backward, || {
        format!("forward {}, backward {backward}", forward.is_some())
    });
    if let Some(med) = forward {
        let ok = verify_mediator(&med.transposed(), &gbar, &fbar)?;
        t.holds("transposed mediator serves (ḡ, f̄)", ok, || "verification fails".into());
    }
    Ok(())
}

fn mediator_deviation(t: &mut Trial) -> Result<()> {
    let (f, g) = mixed_pair(t);
    let dev = functoriality_deviation(&f, &g, BITS)?;
    t.nonneg("deviation ≥ 0", dev);
    t.close("deviation agrees with its entropy form", dev, deviation_by_entropies(&f, &g, BITS)?, EQ_TOL);
    let remembered = remembering_composite(f.map(), g.map())?;
    t.close(
        "H((g×id)∘Δ∘f) = H(g) + H(f)",
        conditional_entropy_of(&remembered, f.src(), BITS),
        h(&g) + h(&f),
        EQ_TOL,
    );
    let med = find_mediator(&f, &g)?;
    t.holds("mediator exists ⇔ deviation vanishes", med.is_some() == (dev <= EQ_TOL), || {
        format!("mediator {}, deviation {dev:e}", med.is_some())
    });
    if let Some(med) = med {
        t.holds("mediator verifies", verify_mediator(&med, &f, &g)?, || "verification fails".into());
    }
    Ok(())
}

// Brute-force recovery is exponential; it runs only while the candidate
// count stays small.
const RECOVERY_BUDGET: u64 = 4096;

fn vanishing_k_correctable(t: &mut Trial) -> Result<()> {
    let m = if t.gen.chance(1, 2) {
        t.gen.lossless_morphism()
    } else {
        t.gen.any_morphism()
    };
    t.record("f", &m);
    let exact = has_vanishing_loss(&m);
    let fbar = inv(&m);
    let dis = find_disintegration(&fbar);
    let dis_ok = dis.as_ref().is_some_and(|d| is_disintegration(d, &fbar));
    t.holds("K(f) = 0 ⇔ f̄ has a disintegration", exact == dis_ok, || {
        format!("vanishing {exact}, disintegration {dis_ok}")
    });
    let code = code_from_morphism(&m);
    let greedy = is_correctable(&code).is_some();
    t.holds("K(f) = 0 ⇔ code correctable", exact == greedy, || format!("vanishing {exact}, correctable {greedy}"));
    let candidates = ((1u64 << code.messages().len()) - 1).checked_pow(code.outputs().len() as u32);
    if candidates.is_some_and(|c| c <= RECOVERY_BUDGET) {
        let brute = exhaustive_recovery(&code).is_some();
        t.holds("greedy decoder agrees with brute force", brute == greedy, || {
            format!("brute {brute}, greedy {greedy}")
        });
    }
    let loss = k(&m);
    t.holds("float K(f) ≤ tol ⇔ exact K(f) = 0", (loss <= EQ_TOL) == exact, || {
        format!("K = {loss:e}, exact {exact}")
    });
    if exact {
        t.close("K(f) = 0", loss, 0.0, EQ_TOL);
    }
    Ok(())
}

fn ae_invariance(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    let p = m.src().clone();
    let ny = m.tgt().len();
    let cols = (0..p.len())
        .map(|x| {
            if p.is_null(x) {
                t.gen.distribution(ny, true)
            } else {
                m.map().column(x).to_vec()
            }
        })
        .collect();
    let other = StochMap::from_columns(p.labels().to_vec(), m.map().tgt().to_vec(), cols)?;
    let n = Morphism::new(other, p.clone())?;
    t.record("f", &m);
    t.record("g", &n);
    t.holds("f = g a.e.", map::ae_equal(m.map(), n.map(), &p)?, || "maps differ on the support".into());
    t.holds("same target", m.tgt() == n.tgt(), || "targets differ".into());
    t.close("K(f) = K(g)", k(&m), k(&n), EQ_TOL);
    t.close("H(f) = H(g)", h(&m), h(&n), EQ_TOL);
    let ok = map::ae_equal(inv(&m).map(), inv(&n).map(), m.tgt())?;
    t.holds("B(f) = B(g) a.e.", ok, || "inverses differ".into());
    Ok(())
}

fn iso_invariance(t: &mut Trial) -> Result<()> {
    let f = t.gen.any_morphism();
    let e = t.gen.iso_onto(f.src(), "w");
    let g = t.gen.iso_from(f.tgt(), "z");
    t.record("e", &e);
    t.record("f", &f);
    t.record("g", &g);
    let fe = morphism::compose(&f, &e)?;
    let gf = morphism::compose(&g, &f)?;
    let gfe = morphism::compose(&g, &fe)?;
    t.close("K(g∘f∘e) = K(f)", k(&gfe), k(&f), EQ_TOL);
    t.close("H(g∘f∘e) = H(f)", h(&gfe), h(&f), EQ_TOL);
    for (name, a, b) in [("(e, f)", &e, &f), ("(f, g)", &f, &g), ("(e, g∘f)", &e, &gf), ("(f∘e, g)", &fe, &g)] {
        let ok = is_coalescable(a, b)?;
        t.holds(&format!("{name} coalescable"), ok, || "no mediator".into());
    }
    Ok(())
}

fn bloom_decomposition(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    t.record("f", &m);
    let bl = bloom_morphism(&m);
    let sh = shriek_morphism(&m);
    let inv_sh = inverse_shriek_morphism(&m);
    let p: Vec<f64> = m.src().probs().iter().map(rational::to_f64).collect();
    let columns: Vec<ProbSpace> = (0..m.src().len()).map(|x| m.map().column_space(x)).collect();
    for (fname, functor) in [("K", k as fn(&Morphism) -> f64), ("H", h)] {
        let avg = |build: fn(&ProbSpace) -> Morphism| {
            columns.iter().zip(&p).map(|(c, w)| w * functor(&build(c))).sum::<f64>()
        };
        t.close(
            &format!("{fname}(f) = {fname}(!_f̄) + {fname}(⸘_f)"),
            functor(&m),
            functor(&inv_sh) + functor(&bl),
            EQ_TOL,
        );
        t.close(&format!("{fname}(⸘_f) = Σ p_x {fname}(⸘_f_x)"), functor(&bl), avg(Morphism::bloom_of), EQ_TOL);
        t.close(&format!("{fname}(!_f) = Σ p_x {fname}(!_f_x)"), functor(&sh), avg(Morphism::shriek_of), EQ_TOL);
    }
    Ok(())
}

fn markov_axioms(t: &mut Trial) -> Result<()> {
    let (f, g) = t.gen.pair();
    let nw = t.gen.size();
    let hm = t.gen.morphism(g.tgt(), "w", nw);
    let f2 = t.gen.any_morphism();
    let g2 = t.gen.morphism(f2.tgt(), "v", nw);
    for (name, m) in [("f", &f), ("g", &g), ("h", &hm), ("f2", &f2), ("g2", &g2)] {
        t.record(name, m);
    }
    let (fm, gm, hmm) = (f.map(), g.map(), hm.map());
    let xs = fm.src().to_vec();
    let p = f.src();

    let left = map::compose(hmm, &map::compose(gm, fm)?)?;
    let right = map::compose(&map::compose(hmm, gm)?, fm)?;
    t.holds("associativity", left == right, || "composites differ".into());
    let unit = map::compose(fm, &map::identity(&xs))? == *fm && map::compose(&map::identity(fm.tgt()), fm)? == *fm;
    t.holds("identity laws", unit, || "identity is not neutral".into());
    let pushed = map::pushforward(&map::compose(gm, fm)?, p)? == map::pushforward(gm, &map::pushforward(fm, p)?)?;
    t.holds("pushforward respects composition", pushed, || "pushforwards differ".into());
    let state = map::compose(fm, &StochMap::state(p))? == StochMap::state(f.tgt());
    t.holds("f ∘ p = q as states", state, || "state composite differs".into());

    let joint = joint_distribution(&f);
    let marg = marginal_first(&joint, &xs, fm.tgt())? == *p && marginal_second(&joint, &xs, fm.tgt())? == *f.tgt();
    t.holds("marginals of ϑ(f) are p and q", marg, || "marginals differ".into());

    let interchange = map::compose(&map::product(gm, g2.map()), &map::product(fm, f2.map()))?
        == map::product(&map::compose(gm, fm)?, &map::compose(g2.map(), f2.map())?);
    t.holds("(g×g')∘(f×f') = (g∘f)×(g'∘f')", interchange, || "interchange fails".into());

    let copy = map::copy(&xs);
    let id = map::identity(&xs);
    let discard = map::discard(&xs);
    let counit_l = map::compose(&map::product(&discard, &id), &copy)?.relabel(xs.clone(), xs.clone())?;
    let counit_r = map::compose(&map::product(&id, &discard), &copy)?.relabel(xs.clone(), xs.clone())?;
    t.holds("copy is counital", counit_l == id && counit_r == id, || "counit fails".into());
    let coassoc_l = map::compose(&map::product(&copy, &id), &copy)?;
    let coassoc_r = map::compose(&map::product(&id, &copy), &copy)?;
    t.holds("copy is coassociative", coassoc_l.columns() == coassoc_r.columns(), || "coassociativity fails".into());
    let comm = map::compose(&map::swap(&xs, &xs), &copy)? == copy;
    t.holds("copy is commutative", comm, || "swap ∘ copy differs".into());
    let swap_twice = map::compose(&map::swap(fm.tgt(), &xs), &map::swap(&xs, fm.tgt()))?;
    let pairs = crate::label::product_labels(&xs, fm.tgt());
    t.holds("swap is an involution", swap_twice == map::identity(&pairs), || "swap twice differs".into());
    let natural = map::compose(&map::discard(fm.tgt()), fm)? == discard;
    t.holds("discarding is natural", natural, || "discard ∘ f differs".into());
    let point: Vec<Label> = vec![Label::point()];
    t.holds("discard lands on the point", discard.tgt() == point.as_slice(), || "bad discard".into());
    let factored = map::compose(&StochMap::project_second(&xs, fm.tgt())?, &bloom(fm))? == *fm;
    t.holds("π_Y ∘ ⸘_f = f", factored, || "bloom does not factor f".into());
    Ok(())
}
