use crate::bayes::bayesian_inverse;
use crate::map::{self, StochMap};
use crate::morphism::Morphism;

/// Whether `f: (X,p) ⇝ (Y,q)` is a disintegration of `g: (Y,q) ⇝ (X,p)`,
/// i.e. `g ∘ f =_p id_X`.
pub fn is_disintegration(f: &Morphism, g: &Morphism) -> bool {
    if f.tgt() != g.src() || g.tgt() != f.src() {
        return false;
    }
    let Ok(gf) = map::compose(g.map(), f.map()) else {
        return false;
    };
    let id = StochMap::identity(f.src().labels().to_vec()).expect("labels of a valid space");
    map::ae_equal(&gf, &id, f.src()).unwrap_or(false)
}

/// A disintegration of `g: (Y,q) ⇝ (X,p)`, which exists exactly when `g` is
/// `q`-a.e. deterministic. The canonical Bayesian inverse is returned.
pub fn find_disintegration(g: &Morphism) -> Option<Morphism> {
    if !g.is_ae_deterministic() {
        return None;
    }
    let f = bayesian_inverse(g).into_inverse();
    is_disintegration(&f, g).then_some(f)
}

/// Exact form of `K(f) = 0`: the canonical inverse is `q`-a.e. deterministic.
pub fn has_vanishing_loss(m: &Morphism) -> bool {
    bayesian_inverse(m).inverse().is_ae_deterministic()
}
