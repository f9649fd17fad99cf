use crate::error::{CoreError, Result};
use crate::label::{product_labels, Label};
use crate::map::{self, StochMap};
use crate::rational::{self, Rational};
use crate::space::{convex_sum_objects, ProbSpace};

/// A measure-preserving stochastic map `(X,p) ⇝ (Y,q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    map: StochMap,
    src: ProbSpace,
    tgt: ProbSpace,
}

impl Morphism {
    /// The morphism out of `(X,p)` whose target carries the pushforward of `p`.
    pub fn new(map: StochMap, src: ProbSpace) -> Result<Self> {
        let tgt = map::pushforward(&map, &src)?;
        Ok(Morphism { map, src, tgt })
    }

    /// Validates that `tgt` is exactly the pushforward of `src`.
    pub fn with_target(map: StochMap, src: ProbSpace, tgt: ProbSpace) -> Result<Self> {
        if map.tgt() != tgt.labels() {
            return Err(CoreError::ShapeMismatch(
                "target distribution is not over the target of the map".into(),
            ));
        }
        let pushed = map::pushforward(&map, &src)?;
        if let Some(y) = (0..tgt.len()).find(|&y| pushed.prob(y) != tgt.prob(y)) {
            return Err(CoreError::NotMeasurePreserving {
                label: tgt.labels()[y].to_string(),
            });
        }
        Ok(Morphism { map, src, tgt })
    }

    pub(crate) fn from_parts(map: StochMap, src: ProbSpace, tgt: ProbSpace) -> Self {
        debug_assert!(Morphism::with_target(map.clone(), src.clone(), tgt.clone()).is_ok());
        Morphism { map, src, tgt }
    }

    pub fn identity(p: &ProbSpace) -> Self {
        Morphism {
            map: map::identity(p.labels()),
            src: p.clone(),
            tgt: p.clone(),
        }
    }

    /// `!_p : (X,p) → (•,1)`.
    pub fn shriek_of(p: &ProbSpace) -> Self {
        Morphism {
            map: map::discard(p.labels()),
            src: p.clone(),
            tgt: ProbSpace::point(),
        }
    }

    /// `⸘_p : (•,1) ⇝ (X,p)`.
    pub fn bloom_of(p: &ProbSpace) -> Self {
        Morphism {
            map: StochMap::state(p),
            src: ProbSpace::point(),
            tgt: p.clone(),
        }
    }

    pub fn map(&self) -> &StochMap {
        &self.map
    }

    pub fn src(&self) -> &ProbSpace {
        &self.src
    }

    pub fn tgt(&self) -> &ProbSpace {
        &self.tgt
    }

    pub fn into_map(self) -> StochMap {
        self.map
    }

    /// Composite `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        compose(g, self)
    }

    pub fn is_deterministic(&self) -> bool {
        self.map.is_deterministic()
    }

    pub fn is_ae_deterministic(&self) -> bool {
        self.src.support().all(|x| self.map.point_mass(x).is_some())
    }

    /// The same morphism with source and target relabelled.
    pub fn relabel(&self, src: Vec<Label>, tgt: Vec<Label>) -> Result<Morphism> {
        Ok(Morphism {
            map: self.map.relabel(src.clone(), tgt.clone())?,
            src: self.src.relabel(src)?,
            tgt: self.tgt.relabel(tgt)?,
        })
    }
}

/// Composite in FinPS; the middle distributions must agree exactly.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.tgt != g.src {
        return Err(CoreError::ShapeMismatch(
            "target space of the first morphism differs from the source of the second".into(),
        ));
    }
    let map = map::compose(&g.map, &f.map)?;
    Ok(Morphism {
        map,
        src: f.src.clone(),
        tgt: g.tgt.clone(),
    })
}

/// Joint distribution `ϑ(f)_{(x,y)} = f_{yx} p_x` on `X×Y`.
pub fn joint_distribution(m: &Morphism) -> ProbSpace {
    let labels = product_labels(m.src.labels(), m.map.tgt());
    let probs = m
        .src
        .probs()
        .iter()
        .enumerate()
        .flat_map(|(x, px)| m.map.column(x).iter().map(move |f| f * px))
        .collect();
    ProbSpace::from_parts(labels, probs)
}

/// Block-diagonal convex sum `⊕ p_x Q^x`.
pub fn convex_sum_morphisms(p: &ProbSpace, morphs: &[Morphism]) -> Result<Morphism> {
    if morphs.len() != p.len() {
        return Err(CoreError::ShapeMismatch(format!(
            "{} summands for an index set of size {}",
            morphs.len(),
            p.len()
        )));
    }
    let srcs: Vec<ProbSpace> = morphs.iter().map(|m| m.src.clone()).collect();
    let tgts: Vec<ProbSpace> = morphs.iter().map(|m| m.tgt.clone()).collect();
    let src = convex_sum_objects(p, &srcs)?;
    let tgt = convex_sum_objects(p, &tgts)?;
    let total_tgt = tgt.len();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(src.len());
    let mut offset = 0;
    for m in morphs {
        let n = m.map.tgt().len();
        for col in m.map.columns() {
            let mut full = vec![rational::zero(); total_tgt];
            full[offset..offset + n].clone_from_slice(col);
            cols.push(full);
        }
        offset += n;
    }
    let map = StochMap::from_columns(src.labels().to_vec(), tgt.labels().to_vec(), cols)?;
    Morphism::with_target(map, src, tgt)
}

/// Marginal of a distribution on `A×B` onto `A`.
pub fn marginal_first(joint: &ProbSpace, a: &[Label], b: &[Label]) -> Result<ProbSpace> {
    map::pushforward(&map::StochMap::project_first(a, b)?, joint)
}

/// Marginal of a distribution on `A×B` onto `B`.
pub fn marginal_second(joint: &ProbSpace, a: &[Label], b: &[Label]) -> Result<ProbSpace> {
    map::pushforward(&map::StochMap::project_second(a, b)?, joint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::rational::{one, ratio, zero};

    use crate::fixtures::running;

    #[test]
    fn measure_preservation_enforced() {
        let m = running();
        assert_eq!(m.tgt().probs(), &[ratio(3, 4), ratio(1, 4)]);
        let wrong = ProbSpace::uniform(m.tgt().labels().to_vec()).unwrap();
        assert!(matches!(
            Morphism::with_target(m.map().clone(), m.src().clone(), wrong),
            Err(CoreError::NotMeasurePreserving { .. })
        ));
    }

    #[test]
    fn joint_examples() {
        let p = ProbSpace::uniform(labels(["a", "b"]).unwrap()).unwrap();
        let j = joint_distribution(&Morphism::identity(&p));
        assert_eq!(j.probs(), &[ratio(1, 2), zero(), zero(), ratio(1, 2)]);
        assert_eq!(j.labels()[3].as_str(), "(b,b)");

        let j = joint_distribution(&running());
        assert_eq!(j.probs(), &[ratio(1, 2), zero(), ratio(1, 4), ratio(1, 4)]);
        assert_eq!(j.labels()[2].as_str(), "(x1,y0)");

        let j = joint_distribution(&Morphism::bloom_of(&p));
        assert_eq!(j.probs(), p.probs());
    }

    #[test]
    fn joint_marginals() {
        let m = running();
        let j = joint_distribution(&m);
        let a = m.src().labels();
        let b = m.tgt().labels();
        assert_eq!(&marginal_first(&j, a, b).unwrap(), m.src());
        assert_eq!(&marginal_second(&j, a, b).unwrap(), m.tgt());
    }

    #[test]
    fn convex_sum_block_map() {
        let p = ProbSpace::uniform(labels(["i", "j"]).unwrap()).unwrap();
        let ab = ProbSpace::uniform(labels(["a", "b"]).unwrap()).unwrap();
        let id_pt = Morphism::identity(&ProbSpace::point());
        let disc = Morphism::shriek_of(&ab);
        let s = convex_sum_morphisms(&p, &[id_pt, disc]).unwrap();
        let src: Vec<&str> = s.src().labels().iter().map(|l| l.as_str()).collect();
        let tgt: Vec<&str> = s.tgt().labels().iter().map(|l| l.as_str()).collect();
        assert_eq!(src, ["i:•", "j:a", "j:b"]);
        assert_eq!(tgt, ["i:•", "j:•"]);
        assert_eq!(s.src().probs(), &[ratio(1, 2), ratio(1, 4), ratio(1, 4)]);
        assert_eq!(s.tgt().probs(), &[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(s.map().column(0), &[one(), zero()]);
        assert_eq!(s.map().column(1), &[zero(), one()]);
        assert_eq!(s.map().column(2), &[zero(), one()]);
    }

    #[test]
    fn composing_requires_matching_middle() {
        let m = running();
        let id = Morphism::identity(m.src());
        assert_eq!(compose(&m, &id).unwrap(), m);
        assert!(compose(&m, &m).is_err());
    }
}
