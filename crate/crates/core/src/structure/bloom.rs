use crate::error::Result;
use crate::label::product_labels;
use crate::map::{self, StochMap};
use crate::morphism::{joint_distribution, Morphism};
use crate::rational;
use crate::bayes::bayesian_inverse;

/// `⸘_f = (id_X × f) ∘ Δ_X : X ⇝ X×Y`, entry `((x',y), x) = δ_{x'x} f_{yx}`.
pub fn bloom(f: &StochMap) -> StochMap {
    let nx = f.src().len();
    let ny = f.tgt().len();
    let cols = (0..nx)
        .map(|x| {
            let mut col = vec![rational::zero(); nx * ny];
            col[x * ny..(x + 1) * ny].clone_from_slice(f.column(x));
            col
        })
        .collect();
    StochMap::from_parts(f.src().to_vec(), product_labels(f.src(), f.tgt()), cols)
}

/// `!_f`: the projection `X×Y → X`.
pub fn shriek(f: &StochMap) -> StochMap {
    StochMap::project_first(f.src(), f.tgt()).expect("labels of a valid map")
}

/// `⸘_f : (X,p) ⇝ (X×Y, ϑ(f))`.
pub fn bloom_morphism(m: &Morphism) -> Morphism {
    Morphism::from_parts(bloom(m.map()), m.src().clone(), joint_distribution(m))
}

/// `!_f : (X×Y, ϑ(f)) → (X,p)`.
pub fn shriek_morphism(m: &Morphism) -> Morphism {
    Morphism::from_parts(shriek(m.map()), joint_distribution(m), m.src().clone())
}

/// `!_{f̄} : (Y×X, ϑ(f̄)) → (Y,q)`, the shriek of the canonical inverse.
pub fn inverse_shriek_morphism(m: &Morphism) -> Morphism {
    shriek_morphism(bayesian_inverse(m).inverse())
}

/// Factors `f` as `π_Y ∘ ⸘_f` through `(X×Y, ϑ(f))`.
pub fn bloom_shriek_factorize(m: &Morphism) -> Result<(Morphism, Morphism)> {
    let first = bloom_morphism(m);
    let proj = StochMap::project_second(m.src().labels(), m.tgt().labels())?;
    let second = Morphism::with_target(proj, first.tgt().clone(), m.tgt().clone())?;
    debug_assert_eq!(map::compose(second.map(), first.map()).ok().as_ref(), Some(m.map()));
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running;
    use crate::label::labels;
    use crate::map::{compose, copy, identity, pushforward};
    use crate::rational::{ratio, zero};
    use crate::space::ProbSpace;
    use crate::structure::find_mediator;

    #[test]
    fn bloom_examples() {
        let x = labels(["a", "b", "c"]).unwrap();
        assert_eq!(bloom(&identity(&x)), copy(&x));

        let f = running().into_map();
        let b = bloom(&f);
        // column x1: mass on (x1,y0) and (x1,y1)
        assert_eq!(b.column(1), &[zero(), zero(), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(compose(&shriek(&f), &b).unwrap(), identity(f.src()));
    }

    #[test]
    fn shriek_examples() {
        let pt = vec![crate::label::Label::point()];
        let one_by_one = identity(&pt);
        let s = shriek(&one_by_one);
        assert_eq!(s.relabel(pt.clone(), pt.clone()).unwrap(), one_by_one);
        let m = running();
        assert!(shriek(m.map()).is_deterministic());
        assert_eq!(&pushforward(&shriek(m.map()), &joint_distribution(&m)).unwrap(), m.src());
    }

    #[test]
    fn factorization_examples() {
        let p = ProbSpace::uniform(labels(["a", "b"]).unwrap()).unwrap();
        let (b, s) = bloom_shriek_factorize(&Morphism::identity(&p)).unwrap();
        assert_eq!(b.map(), &copy(p.labels()));
        assert_eq!(compose(s.map(), b.map()).unwrap(), identity(p.labels()));

        let m = running();
        let (b, s) = bloom_shriek_factorize(&m).unwrap();
        assert_eq!(&compose(s.map(), b.map()).unwrap(), m.map());
        assert!(find_mediator(&b, &s).unwrap().is_some());
    }
}
