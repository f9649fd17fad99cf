//! Possibilistic maps and classical codes.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::label::{check_distinct, Label};
use crate::map::StochMap;
use crate::morphism::Morphism;

/// A full relation: every source element relates to a nonempty set of targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossMap {
    src: Vec<Label>,
    tgt: Vec<Label>,
    images: Vec<BTreeSet<usize>>,
}

impl PossMap {
    pub fn new(src: Vec<Label>, tgt: Vec<Label>, images: Vec<BTreeSet<usize>>) -> Result<Self> {
        check_distinct(&src)?;
        check_distinct(&tgt)?;
        if images.len() != src.len() {
            return Err(CoreError::ShapeMismatch("one image set per source element".into()));
        }
        for (x, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(CoreError::ShapeMismatch(format!("empty image at `{}`", src[x])));
            }
            if img.iter().any(|&y| y >= tgt.len()) {
                return Err(CoreError::ShapeMismatch("image index out of range".into()));
            }
        }
        Ok(PossMap { src, tgt, images })
    }

    pub fn identity(labels: Vec<Label>) -> Result<Self> {
        let images = (0..labels.len()).map(|i| BTreeSet::from([i])).collect();
        PossMap::new(labels.clone(), labels, images)
    }

    pub fn src(&self) -> &[Label] {
        &self.src
    }

    pub fn tgt(&self) -> &[Label] {
        &self.tgt
    }

    pub fn image(&self, x: usize) -> &BTreeSet<usize> {
        &self.images[x]
    }

    /// Relational composite `(self ∘ n)_x = ⋃_{y ∈ n_x} self_y`.
    pub fn after(&self, n: &PossMap) -> Result<PossMap> {
        if n.tgt != self.src {
            return Err(CoreError::ShapeMismatch("relations are not composable".into()));
        }
        let images = n
            .images
            .iter()
            .map(|img| img.iter().flat_map(|&y| self.images[y].iter().copied()).collect())
            .collect();
        Ok(PossMap {
            src: n.src.clone(),
            tgt: self.tgt.clone(),
            images,
        })
    }

    /// Every image of `self` is contained in the matching image of `other`.
    pub fn is_contained_in(&self, other: &PossMap) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self.images.iter().zip(&other.images).all(|(a, b)| a.is_subset(b))
    }
}

/// Support relation `⌈f⌉_x = {y : f_{yx} > 0}`.
pub fn ceiling(f: &StochMap) -> PossMap {
    let images = f
        .columns()
        .iter()
        .map(|col| (0..col.len()).filter(|&y| !col[y].is_zero()).collect())
        .collect();
    PossMap {
        src: f.src().to_vec(),
        tgt: f.tgt().to_vec(),
        images,
    }
}

/// A classical code `(A, X, Y, E, N)`: messages `A` included into inputs `X`
/// by `E`, which the noise `N` sends possibilistically into outputs `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    messages: Vec<Label>,
    encoding: Vec<usize>,
    noise: PossMap,
}

impl Code {
    pub fn new(messages: Vec<Label>, encoding: Vec<usize>, noise: PossMap) -> Result<Self> {
        check_distinct(&messages)?;
        if encoding.len() != messages.len() || encoding.iter().any(|&x| x >= noise.src.len()) {
            return Err(CoreError::ShapeMismatch("encoding does not land in the inputs".into()));
        }
        let distinct: BTreeSet<_> = encoding.iter().collect();
        if distinct.len() != encoding.len() {
            return Err(CoreError::ShapeMismatch("encoding is not injective".into()));
        }
        Ok(Code { messages, encoding, noise })
    }

    pub fn messages(&self) -> &[Label] {
        &self.messages
    }

    pub fn inputs(&self) -> &[Label] {
        &self.noise.src
    }

    pub fn outputs(&self) -> &[Label] {
        &self.noise.tgt
    }

    pub fn encoding(&self) -> &[usize] {
        &self.encoding
    }

    pub fn noise(&self) -> &PossMap {
        &self.noise
    }

    fn encoding_map(&self) -> PossMap {
        PossMap {
            src: self.messages.clone(),
            tgt: self.noise.src.clone(),
            images: self.encoding.iter().map(|&x| BTreeSet::from([x])).collect(),
        }
    }

    /// Whether `d ∘ N ∘ E = id_A`.
    pub fn recovers(&self, d: &PossMap) -> bool {
        d.src == self.noise.tgt && d.tgt == self.messages && self.recovers_with(&d.images)
    }

    // `(D ∘ N ∘ E)_a = ⋃_{y ∈ N_{E(a)}} D_y` must be exactly `{a}`.
    fn recovers_with(&self, images: &[BTreeSet<usize>]) -> bool {
        self.encoding.iter().enumerate().all(|(a, &x)| {
            self.noise.images[x]
                .iter()
                .all(|&y| images[y].len() == 1 && images[y].contains(&a))
        })
    }
}

/// The code `(X∖N_p, X, Y, incl, ⌈f⌉)` of a morphism.
pub fn code_from_morphism(m: &Morphism) -> Code {
    let p = m.src();
    let encoding: Vec<usize> = p.support().collect();
    let messages = encoding.iter().map(|&x| p.labels()[x].clone()).collect();
    Code {
        messages,
        encoding,
        noise: ceiling(m.map()),
    }
}

/// Outcome of the recovery construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Correction {
    Recoverable(PossMap),
    /// `output` is reachable from two distinct messages.
    Overlap { output: Label, messages: (Label, Label) },
}

/// Builds the decoder that sends each output to the unique message able to
/// produce it, then checks that it recovers every message.
pub fn correct(code: &Code) -> Correction {
    let ny = code.outputs().len();
    let mut senders: Vec<Vec<usize>> = vec![Vec::new(); ny];
    for (a, &x) in code.encoding.iter().enumerate() {
        for &y in code.noise.image(x) {
            senders[y].push(a);
        }
    }
    if let Some(y) = (0..ny).find(|&y| senders[y].len() > 1) {
        return Correction::Overlap {
            output: code.outputs()[y].clone(),
            messages: (
                code.messages[senders[y][0]].clone(),
                code.messages[senders[y][1]].clone(),
            ),
        };
    }
    let images = senders
        .iter()
        .map(|s| BTreeSet::from([s.first().copied().unwrap_or(0)]))
        .collect();
    let d = PossMap {
        src: code.outputs().to_vec(),
        tgt: code.messages.clone(),
        images,
    };
    debug_assert!(code.recovers(&d));
    Correction::Recoverable(d)
}

/// A recovery map if the code is correctable.
pub fn is_correctable(code: &Code) -> Option<PossMap> {
    match correct(code) {
        Correction::Recoverable(d) => Some(d),
        Correction::Overlap { .. } => None,
    }
}

/// Searches every possibilistic `Y ⇝ A` for a recovery map. Outputs that no
/// message reaches cannot affect `D ∘ N ∘ E`, so they are pinned to the first
/// message and the search runs over the rest. Exponential in the number of
/// reachable outputs; intended for codes with a handful of them.
pub fn exhaustive_recovery(code: &Code) -> Option<PossMap> {
    let na = code.messages.len();
    assert!(na < 32, "exhaustive recovery search is limited to small message sets");
    if na == 0 {
        return None;
    }
    let reachable: Vec<usize> = code
        .encoding
        .iter()
        .flat_map(|&x| code.noise.image(x).iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let choices = (1u32 << na) - 1;
    let mut images = vec![BTreeSet::from([0]); code.outputs().len()];
    let mut digits = vec![0u32; reachable.len()];
    loop {
        for (&y, &d) in reachable.iter().zip(&digits) {
            images[y] = (0..na).filter(|a| ((d + 1) >> a) & 1 == 1).collect();
        }
        if code.recovers_with(&images) {
            return Some(PossMap {
                src: code.outputs().to_vec(),
                tgt: code.messages.clone(),
                images,
            });
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return None;
            }
            digits[i] += 1;
            if digits[i] < choices {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
