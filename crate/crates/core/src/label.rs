use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Label of the single point of the terminal space.
pub const POINT: &str = "•";

/// Element name within a finite set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() {
            return Err(CoreError::EmptyLabel);
        }
        Ok(Label(text))
    }

    pub fn point() -> Self {
        Label(POINT.to_string())
    }

    /// Element `(a,b)` of a product set.
    pub fn pair(a: &Label, b: &Label) -> Self {
        Label(format!("({},{})", a.0, b.0))
    }

    /// Element `x:z` of the summand indexed by `x` in a disjoint union.
    pub fn tagged(index: &Label, member: &Label) -> Self {
        Label(format!("{}:{}", index.0, member.0))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    /// Panics on the empty string; use [`Label::new`] for untrusted input.
    fn from(s: &str) -> Self {
        Label::new(s).expect("label must be nonempty")
    }
}

/// Builds a label list, rejecting empty lists and duplicates.
pub fn labels<I, S>(items: I) -> Result<Vec<Label>>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let out = items
        .into_iter()
        .map(Label::new)
        .collect::<Result<Vec<_>>>()?;
    check_distinct(&out)?;
    Ok(out)
}

pub(crate) fn check_distinct(labels: &[Label]) -> Result<()> {
    if labels.is_empty() {
        return Err(CoreError::EmptyLabelSet);
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l) {
            return Err(CoreError::DuplicateLabel(l.0.clone()));
        }
    }
    Ok(())
}

/// Product label set, ordered with the first factor outermost.
pub fn product_labels(a: &[Label], b: &[Label]) -> Vec<Label> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| Label::pair(x, y)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_and_empties_rejected() {
        assert_eq!(
            labels(["a", "b", "a"]),
            Err(CoreError::DuplicateLabel("a".into()))
        );
        assert_eq!(labels(Vec::<String>::new()), Err(CoreError::EmptyLabelSet));
        assert_eq!(labels(["a", ""]), Err(CoreError::EmptyLabel));
    }

    #[test]
    fn product_order_is_row_major() {
        let a = labels(["a", "b"]).unwrap();
        let b = labels(["0", "1"]).unwrap();
        let p: Vec<String> = product_labels(&a, &b)
            .iter()
            .map(|l| l.to_string())
            .collect();
        assert_eq!(p, ["(a,0)", "(a,1)", "(b,0)", "(b,1)"]);
    }
}
