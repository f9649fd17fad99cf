//! Shared test instances.

use crate::label::labels;
use crate::map::StochMap;
use crate::morphism::Morphism;
use crate::rational::{one, ratio, zero};
use crate::space::ProbSpace;

/// `p = (1/2, 1/2)`, columns `x0 ↦ (1, 0)` and `x1 ↦ (1/2, 1/2)`.
pub fn running() -> Morphism {
    running_with(ProbSpace::uniform(labels(["x0", "x1"]).unwrap()).unwrap())
}

pub fn running_map() -> StochMap {
    StochMap::new(
        labels(["x0", "x1"]).unwrap(),
        labels(["y0", "y1"]).unwrap(),
        vec![vec![one(), ratio(1, 2)], vec![zero(), ratio(1, 2)]],
    )
    .unwrap()
}

pub fn running_with(p: ProbSpace) -> Morphism {
    Morphism::new(running_map(), p).unwrap()
}
