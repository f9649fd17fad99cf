use std::time::Instant;

use num_bigint::BigInt;

use super::report::{PropReport, Trial};
use super::suites::failures;
use super::{GenConfig, Generator, HarnessError};
use crate::document::to_json;
use crate::error::{CoreError, Result};
use crate::map::StochMap;
use crate::measures::{conditional_information_loss, LogBase, SIGN_SLACK};
use crate::morphism::Morphism;
use crate::rational::{self, Rational};
use crate::space::ProbSpace;

/// Step `n` of a sequence mixes in the perturbation with weight `n^−6`.
pub const CONTINUITY_DECAY: u32 = 6;

/// Largest residual accepted at the final step.
pub const FINAL_TOL: f64 = 1e-6;

fn weight(n: u64) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(n).pow(CONTINUITY_DECAY))
}

fn mix(a: &[Rational], b: &[Rational], w: &Rational) -> Vec<Rational> {
    let keep = rational::one() - w;
    a.iter().zip(b).map(|(x, y)| &keep * x + w * y).collect()
}

/// `(1 − w)·f + w·r` over `(1 − w)·p + w·s`, exactly. `toward` must have the
/// same source and target labels as `m`.
pub fn perturb(m: &Morphism, toward: &Morphism, w: &Rational) -> Result<Morphism> {
    let (f, r) = (m.map(), toward.map());
    if f.src() != r.src() || f.tgt() != r.tgt() {
        return Err(CoreError::ShapeMismatch("perturbation has a different shape".into()));
    }
    let cols = f.columns().iter().zip(r.columns()).map(|(a, b)| mix(a, b, w)).collect();
    let p = ProbSpace::new(f.src().to_vec(), mix(m.src().probs(), toward.src().probs(), w))?;
    Morphism::new(StochMap::from_columns(f.src().to_vec(), f.tgt().to_vec(), cols)?, p)
}

/// `|K(f_n) − K(f)|` for `n = 1, …, steps`.
pub fn continuity_residuals(m: &Morphism, toward: &Morphism, steps: u64) -> Result<Vec<f64>> {
    let base = LogBase::BITS;
    let limit = conditional_information_loss(m, base);
    (1..=steps)
        .map(|n| {
            let fn_ = perturb(m, toward, &weight(n))?;
            Ok((conditional_information_loss(&fn_, base) - limit).abs())
        })
        .collect()
}

fn assess(t: &mut Trial, m: &Morphism, toward: &Morphism, steps: u64) -> Result<()> {
    let r = continuity_residuals(m, toward, steps)?;
    let last = *r.last().expect("at least one step");
    t.below("final residual", last, FINAL_TOL);
    let half = (steps / 2) as usize;
    let bad = (r.len() - half..r.len()).find(|&n| r[n] > r[n - 1] + SIGN_SLACK);
    t.holds("residual decreases over the last half", bad.is_none(), || {
        let n = bad.unwrap_or(0);
        format!("r_{} = {:e} > r_{} = {:e}", n + 1, r[n], n, r[n - 1])
    });
    Ok(())
}

fn perturbation_for(gen: &mut Generator, m: &Morphism) -> Morphism {
    let s = gen.full_space("x", m.src().len()).relabel(m.src().labels().to_vec()).expect("same size");
    let r = gen.map(m.map().src(), m.map().tgt());
    Morphism::new(r, s).expect("generated map fits its source")
}

pub(super) fn continuity_trial(t: &mut Trial) -> Result<()> {
    let m = t.gen.any_morphism();
    let toward = perturbation_for(&mut t.gen, &m);
    t.record("f", &m);
    t.record("toward", &toward);
    assess(t, &m, &toward, 64)
}

/// Checks that `K(f_n) → K(f)` along a sequence approaching `m` from a fixed
/// random direction drawn from `cfg`. The report counts one trial per step.
pub fn check_continuity(m: &Morphism, steps: u64, cfg: &GenConfig) -> std::result::Result<PropReport, HarnessError> {
    if steps < 2 {
        return Err(HarnessError::InvalidConfig("continuity needs at least two steps".into()));
    }
    cfg.validate()?;
    let start = Instant::now();
    let mut t = Trial::new(cfg, 0);
    let toward = perturbation_for(&mut t.gen, m);
    t.record("f", m);
    t.record("toward", &toward);
    if let Err(e) = assess(&mut t, m, &toward, steps) {
        t.fail("no core error", e.to_string(), "Ok".into());
    }
    let (instance, violations, residual) = t.finish();
    let mut report = PropReport::empty("continuity", cfg.seed);
    report.trials = steps;
    report.max_residual = residual;
    if !violations.is_empty() {
        report.failures = failures("continuity", cfg, 0, to_json(&instance), violations);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
