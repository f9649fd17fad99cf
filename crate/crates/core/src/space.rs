use num_traits::{One, Zero};

use crate::error::{CoreError, Result};
use crate::label::{check_distinct, Label};
use crate::rational::{self, Rational};

/// A finite set with an exact probability distribution on it.
///
/// Two spaces are equal iff they list the same labels with the same
/// probabilities in the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbSpace {
    labels: Vec<Label>,
    probs: Vec<Rational>,
}

impl ProbSpace {
    pub fn new(labels: Vec<Label>, probs: Vec<Rational>) -> Result<Self> {
        check_distinct(&labels)?;
        if labels.len() != probs.len() {
            return Err(CoreError::LengthMismatch {
                labels: labels.len(),
                values: probs.len(),
            });
        }
        for (l, p) in labels.iter().zip(&probs) {
            if !rational::is_unit_interval(p) {
                return Err(CoreError::OutOfRange {
                    at: l.to_string(),
                    value: rational::format(p),
                });
            }
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(CoreError::NotNormalized {
                sum: rational::format(&sum),
            });
        }
        Ok(ProbSpace { labels, probs })
    }

    /// The terminal space `(•, 1)`.
    pub fn point() -> Self {
        ProbSpace {
            labels: vec![Label::point()],
            probs: vec![rational::one()],
        }
    }

    pub fn uniform(labels: Vec<Label>) -> Result<Self> {
        check_distinct(&labels)?;
        let n = labels.len() as i64;
        let probs = vec![rational::ratio(1, n); labels.len()];
        Ok(ProbSpace { labels, probs })
    }

    /// Point mass at `at`.
    pub fn dirac(labels: Vec<Label>, at: usize) -> Result<Self> {
        check_distinct(&labels)?;
        if at >= labels.len() {
            return Err(CoreError::ShapeMismatch(format!(
                "point index {at} outside a set of size {}",
                labels.len()
            )));
        }
        let probs = (0..labels.len())
            .map(|i| if i == at { rational::one() } else { rational::zero() })
            .collect();
        Ok(ProbSpace { labels, probs })
    }

    /// Constructor for data already known to be valid.
    pub(crate) fn from_parts(labels: Vec<Label>, probs: Vec<Rational>) -> Self {
        debug_assert!(ProbSpace::new(labels.clone(), probs.clone()).is_ok());
        ProbSpace { labels, probs }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn prob(&self, i: usize) -> &Rational {
        &self.probs[i]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Indices of the zero-probability labels.
    pub fn null_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.probs[i].is_zero()).collect()
    }

    /// The nullspace `{x : p_x = 0}`.
    pub fn nullspace(&self) -> Vec<Label> {
        self.null_indices()
            .into_iter()
            .map(|i| self.labels[i].clone())
            .collect()
    }

    pub fn is_null(&self, i: usize) -> bool {
        self.probs[i].is_zero()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.probs[i].is_zero())
    }

    pub fn has_full_support(&self) -> bool {
        self.probs.iter().all(|p| !p.is_zero())
    }

    /// Independent product distribution on pair labels.
    pub fn product(&self, other: &ProbSpace) -> ProbSpace {
        let labels = crate::label::product_labels(&self.labels, &other.labels);
        let probs = self
            .probs
            .iter()
            .flat_map(|a| other.probs.iter().map(move |b| a * b))
            .collect();
        ProbSpace { labels, probs }
    }

    /// Same distribution under new labels.
    pub fn relabel(&self, labels: Vec<Label>) -> Result<ProbSpace> {
        if labels.len() != self.len() {
            return Err(CoreError::LengthMismatch {
                labels: labels.len(),
                values: self.len(),
            });
        }
        check_distinct(&labels)?;
        Ok(ProbSpace {
            labels,
            probs: self.probs.clone(),
        })
    }
}

/// Validated construction of a space from labels and probabilities.
pub fn make_space(labels: Vec<Label>, probs: Vec<Rational>) -> Result<ProbSpace> {
    ProbSpace::new(labels, probs)
}

/// The nullspace of `p`.
pub fn nullspace(p: &ProbSpace) -> Vec<Label> {
    p.nullspace()
}

/// Convex sum `⊕ p_x q^x` on the disjoint union, members labelled `x:z`.
pub fn convex_sum_objects(p: &ProbSpace, spaces: &[ProbSpace]) -> Result<ProbSpace> {
    if spaces.len() != p.len() {
        return Err(CoreError::ShapeMismatch(format!(
            "{} summands for an index set of size {}",
            spaces.len(),
            p.len()
        )));
    }
    let mut labels = Vec::new();
    let mut probs = Vec::new();
    for (i, q) in spaces.iter().enumerate() {
        for (z, qz) in q.labels.iter().zip(&q.probs) {
            labels.push(Label::tagged(&p.labels[i], z));
            probs.push(&p.probs[i] * qz);
        }
    }
    ProbSpace::new(labels, probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::rational::ratio;

    fn ab() -> Vec<Label> {
        labels(["a", "b"]).unwrap()
    }

    #[test]
    fn terminal_and_uniform() {
        let pt = make_space(vec![Label::point()], vec![rational::one()]).unwrap();
        assert_eq!(pt, ProbSpace::point());
        let u = make_space(ab(), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(u, ProbSpace::uniform(ab()).unwrap());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            make_space(ab(), vec![ratio(1, 3), ratio(1, 3)]),
            Err(CoreError::NotNormalized { sum: "2/3".into() })
        );
        assert!(matches!(
            make_space(ab(), vec![ratio(3, 2), ratio(-1, 2)]),
            Err(CoreError::OutOfRange { .. })
        ));
        assert!(matches!(
            make_space(ab(), vec![rational::one()]),
            Err(CoreError::LengthMismatch { .. })
        ));
        assert!(matches!(
            make_space(vec!["a".into(), "a".into()], vec![ratio(1, 2), ratio(1, 2)]),
            Err(CoreError::DuplicateLabel(_))
        ));
        assert_eq!(make_space(vec![], vec![]), Err(CoreError::EmptyLabelSet));
    }

    #[test]
    fn nullspace_examples() {
        let p = ProbSpace::uniform(ab()).unwrap();
        assert!(nullspace(&p).is_empty());
        let p = ProbSpace::dirac(ab(), 0).unwrap();
        assert_eq!(nullspace(&p), vec![Label::from("b")]);
        let abc = labels(["a", "b", "c"]).unwrap();
        let p = ProbSpace::dirac(abc, 2).unwrap();
        assert_eq!(nullspace(&p), vec![Label::from("a"), Label::from("b")]);
    }

    #[test]
    fn convex_sum_of_points_is_uniform() {
        let p = ProbSpace::uniform(ab()).unwrap();
        let s = convex_sum_objects(&p, &[ProbSpace::point(), ProbSpace::point()]).unwrap();
        assert_eq!(s.probs(), &[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(s.labels()[0].as_str(), "a:•");
    }

    #[test]
    fn convex_sum_with_point_mass_copies_summand() {
        let p = ProbSpace::dirac(ab(), 0).unwrap();
        let q = make_space(labels(["u", "v"]).unwrap(), vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let s = convex_sum_objects(&p, &[q.clone(), ProbSpace::point()]).unwrap();
        assert_eq!(&s.probs()[..2], q.probs());
        assert_eq!(s.probs()[2], rational::zero());
        assert!(convex_sum_objects(&p, &[q]).is_err());
    }
}
