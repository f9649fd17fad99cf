//! Bayesian inversion.
//!
//! The returned inverse is the canonical representative: on outputs of
//! probability zero the column is filled with the uniform distribution on
//! the source. Every other Bayesian inverse agrees with it `q`-almost
//! everywhere, so properties that only hold up to null sets are checked with
//! [`ae_equal`](crate::map::ae_equal).

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::map::{self, StochMap};
use crate::morphism::Morphism;
use crate::rational::{self, Rational};

/// A morphism together with a candidate Bayesian inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BayesPair {
    forward: Morphism,
    inverse: Morphism,
}

impl BayesPair {
    /// Pairs `forward: (X,p) ⇝ (Y,q)` with `inverse: (Y,q) ⇝ (X,p)`. Only the
    /// shapes are checked; use [`verify_bayes_rule`] for the defining identity.
    pub fn new(forward: Morphism, inverse: Morphism) -> Result<Self> {
        if inverse.src() != forward.tgt() || inverse.tgt() != forward.src() {
            return Err(CoreError::ShapeMismatch(
                "inverse must run from the target space back to the source space".into(),
            ));
        }
        Ok(BayesPair { forward, inverse })
    }

    pub fn forward(&self) -> &Morphism {
        &self.forward
    }

    pub fn inverse(&self) -> &Morphism {
        &self.inverse
    }

    pub fn into_inverse(self) -> Morphism {
        self.inverse
    }

    /// Target labels whose inverse column was filled uniformly.
    pub fn uniform_filled(&self) -> Vec<usize> {
        self.forward.tgt().null_indices()
    }

    /// The pair read the other way round.
    pub fn flipped(&self) -> BayesPair {
        BayesPair {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// Canonical Bayesian inverse `f̄_{xy} = p_x f_{yx} / q_y`, uniform on null `y`.
pub fn bayesian_inverse(m: &Morphism) -> BayesPair {
    let p = m.src();
    let q = m.tgt();
    let f = m.map();
    let n = p.len() as i64;
    let cols: Vec<Vec<Rational>> = (0..q.len())
        .map(|y| {
            let qy = q.prob(y);
            if qy.is_zero() {
                vec![rational::ratio(1, n); p.len()]
            } else {
                (0..p.len()).map(|x| p.prob(x) * f.entry(y, x) / qy).collect()
            }
        })
        .collect();
    let inv = StochMap::from_parts(q.labels().to_vec(), p.labels().to_vec(), cols);
    BayesPair {
        forward: m.clone(),
        inverse: Morphism::from_parts(inv, q.clone(), p.clone()),
    }
}

/// Exact check of `f̄_{xy} q_y = f_{yx} p_x` for every `x`, `y`.
pub fn verify_bayes_rule(pair: &BayesPair) -> Result<bool> {
    let f = pair.forward.map();
    let g = pair.inverse.map();
    let p = pair.forward.src();
    let q = pair.forward.tgt();
    if g.src() != f.tgt() || g.tgt() != f.src() {
        return Err(CoreError::ShapeMismatch("pair shapes do not match".into()));
    }
    Ok((0..p.len()).all(|x| {
        (0..q.len()).all(|y| g.entry(x, y) * q.prob(y) == f.entry(y, x) * p.prob(x))
    }))
}

/// Whether `g: (Y,q) ⇝ (X,p)` is a Bayesian inverse of `f: (X,p) ⇝ (Y,q)`.
pub fn is_bayesian_inverse(f: &Morphism, g: &Morphism) -> bool {
    match BayesPair::new(f.clone(), g.clone()) {
        Ok(pair) => verify_bayes_rule(&pair).unwrap_or(false),
        Err(_) => false,
    }
}

/// `B(B(f)) =_p f`.
pub fn double_inverse_check(m: &Morphism) -> bool {
    let once = bayesian_inverse(m).into_inverse();
    let twice = bayesian_inverse(&once).into_inverse();
    map::ae_equal(twice.map(), m.map(), m.src()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{running, running_with};
    use crate::label::labels;
    use crate::rational::{one, ratio, zero};
    use crate::space::ProbSpace;

    #[test]
    fn identity_inverts_to_identity_on_full_support() {
        let p = ProbSpace::new(labels(["a", "b"]).unwrap(), vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let id = Morphism::identity(&p);
        assert_eq!(bayesian_inverse(&id).inverse(), &id);
    }

    #[test]
    fn bloom_inverts_to_shriek() {
        let p = ProbSpace::new(labels(["a", "b", "c"]).unwrap(), vec![ratio(1, 3), ratio(2, 3), zero()]).unwrap();
        let inv = bayesian_inverse(&Morphism::bloom_of(&p));
        assert_eq!(inv.inverse(), &Morphism::shriek_of(&p));
    }

    #[test]
    fn running_example_inverse() {
        let pair = bayesian_inverse(&running());
        let g = pair.inverse().map();
        assert_eq!(g.column(0), &[ratio(2, 3), ratio(1, 3)]);
        assert_eq!(g.column(1), &[zero(), one()]);
        assert!(pair.uniform_filled().is_empty());
        assert!(verify_bayes_rule(&pair).unwrap());
    }

    #[test]
    fn null_output_gets_uniform_fill() {
        let p = ProbSpace::dirac(labels(["a", "b"]).unwrap(), 0).unwrap();
        let id = Morphism::identity(&p);
        let pair = bayesian_inverse(&id);
        assert_eq!(pair.inverse().map().column(1), &[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(pair.uniform_filled(), vec![1]);
        assert_ne!(pair.inverse(), &id);
        assert!(map::ae_equal(pair.inverse().map(), id.map(), &p).unwrap());
    }

    #[test]
    fn bayes_rule_detects_supported_alterations_only() {
        // p = (1, 0): output y1 is null
        let m = running_with(ProbSpace::dirac(labels(["x0", "x1"]).unwrap(), 0).unwrap());
        let pair = bayesian_inverse(&m);
        assert!(verify_bayes_rule(&pair).unwrap());

        let inv = pair.inverse();
        let mut cols = inv.map().columns().to_vec();
        cols[1] = vec![one(), zero()];
        let altered = StochMap::from_columns(inv.map().src().to_vec(), inv.map().tgt().to_vec(), cols).unwrap();
        let altered = Morphism::with_target(altered, inv.src().clone(), inv.tgt().clone()).unwrap();
        assert!(verify_bayes_rule(&BayesPair::new(m.clone(), altered).unwrap()).unwrap());

        let full = bayesian_inverse(&running());
        let inv = full.inverse();
        let mut cols = inv.map().columns().to_vec();
        cols[0] = vec![ratio(1, 3), ratio(2, 3)];
        let altered = StochMap::from_columns(inv.map().src().to_vec(), inv.map().tgt().to_vec(), cols).unwrap();
        // not measure preserving any more, so build the pair directly
        let altered = Morphism::new(altered, inv.src().clone()).unwrap();
        assert!(BayesPair::new(running(), altered).is_err());
    }

    #[test]
    fn supported_alteration_fails_rule() {
        // keep measure preservation by swapping mass between two inverse columns
        let p = ProbSpace::uniform(labels(["a", "b"]).unwrap()).unwrap();
        let id = Morphism::identity(&p);
        let swapped = StochMap::from_function(p.labels().to_vec(), p.labels().to_vec(), &[1, 0]).unwrap();
        let swapped = Morphism::with_target(swapped, p.clone(), p.clone()).unwrap();
        let pair = BayesPair::new(id, swapped).unwrap();
        assert!(!verify_bayes_rule(&pair).unwrap());
    }

    #[test]
    fn double_inverse_examples() {
        let m = running();
        assert!(double_inverse_check(&m));
        let twice = bayesian_inverse(bayesian_inverse(&m).inverse()).into_inverse();
        assert_eq!(&twice, &m);

        let null = running_with(ProbSpace::dirac(labels(["x0", "x1"]).unwrap(), 1).unwrap());
        assert!(double_inverse_check(&null));

        let p = ProbSpace::new(labels(["a", "b"]).unwrap(), vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        let bij = StochMap::from_function(p.labels().to_vec(), labels(["u", "v"]).unwrap(), &[1, 0]).unwrap();
        assert!(double_inverse_check(&Morphism::new(bij, p).unwrap()));
    }
}
