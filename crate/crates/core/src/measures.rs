//! Entropy functionals on finite probability spaces and their morphisms.
//!
//! Probabilities stay exact up to the final `p log p` evaluation; zero
//! entries are filtered out before any logarithm is taken, which realises the
//! convention `0 log 0 = 0`.

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::map::{self, StochMap};
use crate::morphism::{self, Morphism};
use crate::rational::{self, Rational};
use crate::space::ProbSpace;

/// Tolerance for equalities between entropies, in the configured unit.
pub const EQ_TOL: f64 = 1e-9;
/// Slack for sign checks on quantities that are nonnegative in exact arithmetic.
pub const SIGN_SLACK: f64 = 1e-12;

/// Logarithm base. Bits unless stated otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase(f64);

impl LogBase {
    pub const BITS: LogBase = LogBase(2.0);
    pub const NATS: LogBase = LogBase(std::f64::consts::E);

    /// `None` unless `base > 1`.
    pub fn new(base: f64) -> Option<LogBase> {
        (base.is_finite() && base > 1.0).then_some(LogBase(base))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn log(self, x: f64) -> f64 {
        if self.0 == 2.0 {
            x.log2()
        } else {
            x.ln() / self.0.ln()
        }
    }

    /// Unit name used when printing.
    pub fn unit(self) -> String {
        if self.0 == 2.0 {
            "bits".into()
        } else if self.0 == std::f64::consts::E {
            "nats".into()
        } else {
            format!("log-base-{} units", self.0)
        }
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::BITS
    }
}

/// `−Σ p log p` over the nonzero entries.
pub fn entropy_of(probs: &[Rational], base: LogBase) -> f64 {
    -probs
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let v = rational::to_f64(p);
            v * base.log(v)
        })
        .sum::<f64>()
}

/// Shannon entropy `H(p)`.
pub fn shannon_entropy(p: &ProbSpace, base: LogBase) -> f64 {
    entropy_of(p.probs(), base)
}

/// `H(f|p) = Σ_x p_x H(f_x)`.
pub fn conditional_entropy(m: &Morphism, base: LogBase) -> f64 {
    conditional_entropy_of(m.map(), m.src(), base)
}

pub(crate) fn conditional_entropy_of(f: &StochMap, p: &ProbSpace, base: LogBase) -> f64 {
    p.support()
        .map(|x| rational::to_f64(p.prob(x)) * entropy_of(f.column(x), base))
        .sum()
}

/// `K(f) = H(p) − H(q) + H(f|p)`.
pub fn conditional_information_loss(m: &Morphism, base: LogBase) -> f64 {
    shannon_entropy(m.src(), base) - shannon_entropy(m.tgt(), base) + conditional_entropy(m, base)
}

/// `K(f)` as the single sum `−Σ_x Σ_y f_{yx} p_x log(f_{yx} p_x / q_y)` over
/// supported terms, each ratio formed exactly.
pub fn closs_closed_form(m: &Morphism, base: LogBase) -> f64 {
    let f = m.map();
    let q = m.tgt();
    let mut total = 0.0;
    for x in m.src().support() {
        let px = m.src().prob(x);
        for (y, fyx) in f.column(x).iter().enumerate() {
            if fyx.is_zero() {
                continue;
            }
            let joint = fyx * px;
            let ratio = &joint / q.prob(y);
            total -= rational::to_f64(&joint) * base.log(rational::to_f64(&ratio));
        }
    }
    total
}

fn check_composable(f: &Morphism, g: &Morphism) -> Result<()> {
    if f.tgt() != g.src() {
        return Err(CoreError::ShapeMismatch(
            "morphisms are not composable".into(),
        ));
    }
    Ok(())
}

/// Deviation from functoriality of conditional entropy for the pair
/// `(X,p) ⇝f (Y,q) ⇝g (Z,r)`:
///
/// `−Σ_x Σ_y Σ_z p_x g_{zy} f_{yx} log(g_{zy} f_{yx} / Σ_{y'} g_{zy'} f_{y'x})`
///
/// restricted to `p_x ≠ 0`, `f_{yx} ≠ 0`, `g_{zy} ≠ 0`. It is nonnegative and
/// vanishes exactly when the pair admits a mediator.
pub fn functoriality_deviation(f: &Morphism, g: &Morphism, base: LogBase) -> Result<f64> {
    check_composable(f, g)?;
    let fm = f.map();
    let gm = g.map();
    let gf = map::compose(gm, fm)?;
    let mut total = 0.0;
    for x in f.src().support() {
        let px = rational::to_f64(f.src().prob(x));
        for (y, fyx) in fm.column(x).iter().enumerate() {
            if fyx.is_zero() {
                continue;
            }
            for (z, gzy) in gm.column(y).iter().enumerate() {
                if gzy.is_zero() {
                    continue;
                }
                let term = gzy * fyx;
                let ratio = &term / gf.entry(z, x);
                total -= px * rational::to_f64(&term) * base.log(rational::to_f64(&ratio));
            }
        }
    }
    Ok(total)
}

/// The same deviation through entropies: `H(g|q) + H(f|p) − H(g∘f|p)`.
pub fn deviation_by_entropies(f: &Morphism, g: &Morphism, base: LogBase) -> Result<f64> {
    let gf = morphism::compose(g, f)?;
    Ok(conditional_entropy(g, base) + conditional_entropy(f, base) - conditional_entropy(&gf, base))
}

/// `(g × id_Y) ∘ Δ_Y ∘ f : X ⇝ Z×Y`, the composite that remembers the middle stage.
pub fn remembering_composite(f: &StochMap, g: &StochMap) -> Result<StochMap> {
    let y = f.tgt();
    let copy = map::copy(y);
    let side = map::product(g, &map::identity(y));
    map::compose(&side, &map::compose(&copy, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running;
    use crate::label::labels;
    use crate::map::StochMap;
    use crate::rational::ratio;

    // Frozen from a 30-digit evaluation of the defining sums.
    const H_Q: f64 = 0.811_278_124_459_132_9;
    const K_RUNNING: f64 = 0.688_721_875_540_867_1;

    #[test]
    fn shannon_examples() {
        let b = LogBase::BITS;
        let ab = labels(["a", "b"]).unwrap();
        assert_eq!(shannon_entropy(&ProbSpace::dirac(ab.clone(), 1).unwrap(), b), 0.0);
        assert!((shannon_entropy(&ProbSpace::uniform(ab.clone()).unwrap(), b) - 1.0).abs() < 1e-15);
        let q = ProbSpace::new(ab, vec![ratio(3, 4), ratio(1, 4)]).unwrap();
        assert!((shannon_entropy(&q, b) - H_Q).abs() < 1e-12);
        let nats = shannon_entropy(&q, LogBase::NATS);
        assert!((nats - H_Q * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn conditional_entropy_examples() {
        let b = LogBase::BITS;
        let m = running();
        assert!((conditional_entropy(&m, b) - 0.5).abs() < 1e-15);

        let x = labels(["a", "b", "c"]).unwrap();
        let y = labels(["0", "1", "2", "3"]).unwrap();
        let det = StochMap::from_function(x.clone(), y.clone(), &[3, 0, 3]).unwrap();
        let p = ProbSpace::new(x.clone(), vec![ratio(1, 6), ratio(1, 3), ratio(1, 2)]).unwrap();
        assert_eq!(conditional_entropy(&Morphism::new(det, p.clone()).unwrap(), b), 0.0);

        let unif = StochMap::constant(x, &ProbSpace::uniform(y).unwrap()).unwrap();
        assert!((conditional_entropy(&Morphism::new(unif, p).unwrap(), b) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn information_loss_examples() {
        let b = LogBase::BITS;
        let m = running();
        assert!((conditional_information_loss(&m, b) - K_RUNNING).abs() < 1e-12);
        assert!((closs_closed_form(&m, b) - K_RUNNING).abs() < 1e-12);

        let p = m.tgt().clone();
        assert_eq!(conditional_information_loss(&Morphism::identity(&p), b), 0.0);
        let shriek = conditional_information_loss(&Morphism::shriek_of(&p), b);
        assert!((shriek - H_Q).abs() < 1e-12);
        assert!(conditional_information_loss(&Morphism::bloom_of(&p), b).abs() < 1e-15);
        assert!(closs_closed_form(&Morphism::bloom_of(&p), b).abs() < 1e-15);
    }

    #[test]
    fn closed_form_zero_on_bijection() {
        let x = labels(["a", "b", "c"]).unwrap();
        let y = labels(["u", "v", "w"]).unwrap();
        let g = StochMap::from_function(x.clone(), y, &[1, 2, 0]).unwrap();
        let p = ProbSpace::new(x, vec![ratio(1, 6), ratio(1, 3), ratio(1, 2)]).unwrap();
        assert_eq!(closs_closed_form(&Morphism::new(g, p).unwrap(), LogBase::BITS), 0.0);
    }

    #[test]
    fn deviation_examples() {
        let b = LogBase::BITS;
        let m = running();
        let bloom = Morphism::bloom_of(m.src());
        let d = functoriality_deviation(&bloom, &m, b).unwrap();
        // H(ϑ(f)) − H(q) with ϑ = (1/2, 1/4, 1/4)
        assert!((d - (1.5 - H_Q)).abs() < 1e-12);
        assert!((deviation_by_entropies(&bloom, &m, b).unwrap() - d).abs() < 1e-12);

        let x = m.src().labels().to_vec();
        let det = StochMap::from_function(x.clone(), x.clone(), &[1, 0]).unwrap();
        let first = Morphism::new(det, m.src().clone()).unwrap();
        let second = Morphism::new(m.map().relabel(x, m.map().tgt().to_vec()).unwrap(), first.tgt().clone()).unwrap();
        assert_eq!(functoriality_deviation(&first, &second, b).unwrap(), 0.0);
        assert!(functoriality_deviation(&m, &m, b).is_err());
    }

    #[test]
    fn remembering_composite_entries() {
        let m = running();
        let g = running().map().relabel(m.map().tgt().to_vec(), labels(["z0", "z1"]).unwrap()).unwrap();
        let r = remembering_composite(m.map(), &g).unwrap();
        // entry ((z,y), x) = g_{zy} f_{yx}
        for x in 0..2 {
            for z in 0..2 {
                for y in 0..2 {
                    let expect = g.entry(z, y) * m.map().entry(y, x);
                    assert_eq!(r.entry(z * 2 + y, x), &expect);
                }
            }
        }
    }
}
