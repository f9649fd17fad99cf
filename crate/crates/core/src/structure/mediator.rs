//! Mediators witness that the middle stage of a composite `g ∘ f` can be
//! recovered from its input and output. A pair admitting one is coalescable.

use std::fmt;

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::label::{product_labels, Label};
use crate::map::{self, StochMap};
use crate::morphism::Morphism;
use crate::space::ProbSpace;

/// A deterministic assignment `Z×X → Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mediator {
    z: Vec<Label>,
    x: Vec<Label>,
    y: Vec<Label>,
    // table[z * |X| + x]
    table: Vec<usize>,
}

impl Mediator {
    pub fn new(z: Vec<Label>, x: Vec<Label>, y: Vec<Label>, table: Vec<usize>) -> Result<Self> {
        if table.len() != z.len() * x.len() || table.iter().any(|&v| v >= y.len()) {
            return Err(CoreError::ShapeMismatch(
                "mediator table does not fit Z×X → Y".into(),
            ));
        }
        Ok(Mediator { z, x, y, table })
    }

    pub fn get(&self, z: usize, x: usize) -> usize {
        self.table[z * self.x.len() + x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn z_labels(&self) -> &[Label] {
        &self.z
    }

    pub fn x_labels(&self) -> &[Label] {
        &self.x
    }

    pub fn y_labels(&self) -> &[Label] {
        &self.y
    }

    /// The mediator as a deterministic map `Z×X → Y`.
    pub fn as_map(&self) -> StochMap {
        StochMap::from_function(product_labels(&self.z, &self.x), self.y.clone(), &self.table)
            .expect("validated table")
    }

    /// `h ∘ γ : X×Z → Y`, which mediates the reversed pair of Bayesian inverses.
    pub fn transposed(&self) -> Mediator {
        let (nz, nx) = (self.z.len(), self.x.len());
        let mut table = vec![0; nz * nx];
        for z in 0..nz {
            for x in 0..nx {
                table[x * nz + z] = self.get(z, x);
            }
        }
        Mediator {
            z: self.x.clone(),
            x: self.z.clone(),
            y: self.y.clone(),
            table,
        }
    }
}

/// A violation of the at-most-one criterion: two middle elements `y`, `y'`
/// both carry mass from `x` to `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub z: Label,
    pub x: Label,
    pub ys: (Label, Label),
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {{{}, {}}})", self.z, self.x, self.ys.0, self.ys.1)
    }
}

/// Outcome of a mediator search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coalescence {
    Mediated(Mediator),
    Obstructed(Obstruction),
}

impl Coalescence {
    pub fn mediator(self) -> Option<Mediator> {
        match self {
            Coalescence::Mediated(h) => Some(h),
            Coalescence::Obstructed(_) => None,
        }
    }
}

fn check_composable(f: &Morphism, g: &Morphism) -> Result<()> {
    if f.tgt() != g.src() {
        return Err(CoreError::ShapeMismatch("morphisms are not composable".into()));
    }
    Ok(())
}

// Runs the at-most-one criterion over the source elements selected by `include`.
// Undetermined slots default to the first middle label.
fn search(f: &StochMap, g: &StochMap, include: impl Fn(usize) -> bool) -> Result<Coalescence> {
    if f.tgt() != g.src() {
        return Err(CoreError::ShapeMismatch("maps are not composable".into()));
    }
    let (nx, ny, nz) = (f.src().len(), f.tgt().len(), g.tgt().len());
    let mut table = vec![0; nz * nx];
    for z in 0..nz {
        for x in (0..nx).filter(|&x| include(x)) {
            let mut found: Option<usize> = None;
            for y in 0..ny {
                if f.entry(y, x).is_zero() || g.entry(z, y).is_zero() {
                    continue;
                }
                if let Some(prev) = found {
                    return Ok(Coalescence::Obstructed(Obstruction {
                        z: g.tgt()[z].clone(),
                        x: f.src()[x].clone(),
                        ys: (f.tgt()[prev].clone(), f.tgt()[y].clone()),
                    }));
                }
                found = Some(y);
            }
            table[z * nx + x] = found.unwrap_or(0);
        }
    }
    Ok(Coalescence::Mediated(Mediator {
        z: g.tgt().to_vec(),
        x: f.src().to_vec(),
        y: f.tgt().to_vec(),
        table,
    }))
}

/// Mediator search for `(X,p) ⇝f (Y,q) ⇝g (Z,r)` that ignores null inputs.
pub fn search_mediator(f: &Morphism, g: &Morphism) -> Result<Coalescence> {
    check_composable(f, g)?;
    let p = f.src();
    search(f.map(), g.map(), |x| !p.is_null(x))
}

pub fn find_mediator(f: &Morphism, g: &Morphism) -> Result<Option<Mediator>> {
    Ok(search_mediator(f, g)?.mediator())
}

/// Mediator valid on all of `Z×X`, ignoring any distribution.
pub fn find_strong_mediator(f: &StochMap, g: &StochMap) -> Result<Option<Mediator>> {
    Ok(search(f, g, |_| true)?.mediator())
}

/// Exact check of `[h(z,x) = y] (g∘f)_{zx} p_x = g_{zy} f_{yx} p_x` for all
/// `(z, y, x)`.
///
/// The middle factor is read as `g_{zy}`, the entry from `y` to `z`; this is
/// the reading under which the identity agrees with the defining equation
/// `(g∘f)_{zx} = g_{z h(z,x)} f_{h(z,x) x}` on the support of `p`.
pub fn verify_mediator(h: &Mediator, f: &Morphism, g: &Morphism) -> Result<bool> {
    check_composable(f, g)?;
    verify_with(h, f.map(), g.map(), f.src())
}

fn verify_with(h: &Mediator, f: &StochMap, g: &StochMap, p: &ProbSpace) -> Result<bool> {
    if h.z != g.tgt() || h.x != f.src() || h.y != f.tgt() {
        return Err(CoreError::ShapeMismatch("mediator does not match the pair".into()));
    }
    let gf = map::compose(g, f)?;
    for x in p.support() {
        let px = p.prob(x);
        for z in 0..g.tgt().len() {
            let hz = h.get(z, x);
            for y in 0..f.tgt().len() {
                let rhs = g.entry(z, y) * f.entry(y, x) * px;
                let lhs = if y == hz { gf.entry(z, x) * px } else { Zero::zero() };
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// a.e. coalescability.
pub fn is_coalescable(f: &Morphism, g: &Morphism) -> Result<bool> {
    Ok(find_mediator(f, g)?.is_some())
}

/// Coalescability in the strong sense, over every input.
pub fn is_strongly_coalescable(f: &StochMap, g: &StochMap) -> Result<bool> {
    Ok(find_strong_mediator(f, g)?.is_some())
}
