//! Column-stochastic matrices between labelled finite sets.

use num_traits::{One, Zero};

use crate::error::{CoreError, Result};
use crate::label::{check_distinct, product_labels, Label};
use crate::rational::{self, Rational};
use crate::space::ProbSpace;

/// A stochastic map `X ⇝ Y`: one probability distribution on `Y` per element
/// of `X`. Entry `(y, x)` is the probability of `y` given `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochMap {
    src: Vec<Label>,
    tgt: Vec<Label>,
    // cols[x][y]
    cols: Vec<Vec<Rational>>,
}

impl StochMap {
    /// Builds a map from a `|tgt| × |src|` matrix indexed `[y][x]`.
    pub fn new(src: Vec<Label>, tgt: Vec<Label>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        if matrix.len() != tgt.len() || matrix.iter().any(|row| row.len() != src.len()) {
            return Err(CoreError::ShapeMismatch(format!(
                "matrix must be {}x{}",
                tgt.len(),
                src.len()
            )));
        }
        let cols = (0..src.len())
            .map(|x| matrix.iter().map(|row| row[x].clone()).collect())
            .collect();
        Self::from_columns(src, tgt, cols)
    }

    /// Builds a map from its columns, `cols[x][y]`.
    pub fn from_columns(src: Vec<Label>, tgt: Vec<Label>, cols: Vec<Vec<Rational>>) -> Result<Self> {
        check_distinct(&src)?;
        check_distinct(&tgt)?;
        if cols.len() != src.len() || cols.iter().any(|c| c.len() != tgt.len()) {
            return Err(CoreError::ShapeMismatch(format!(
                "expected {} columns of length {}",
                src.len(),
                tgt.len()
            )));
        }
        for (x, col) in cols.iter().enumerate() {
            for (y, v) in col.iter().enumerate() {
                if !rational::is_unit_interval(v) {
                    return Err(CoreError::OutOfRange {
                        at: format!("{} | {}", tgt[y], src[x]),
                        value: rational::format(v),
                    });
                }
            }
            let sum: Rational = col.iter().sum();
            if !sum.is_one() {
                return Err(CoreError::ColumnNotNormalized {
                    column: src[x].to_string(),
                    sum: rational::format(&sum),
                });
            }
        }
        Ok(StochMap { src, tgt, cols })
    }

    pub(crate) fn from_parts(src: Vec<Label>, tgt: Vec<Label>, cols: Vec<Vec<Rational>>) -> Self {
        debug_assert!(StochMap::from_columns(src.clone(), tgt.clone(), cols.clone()).is_ok());
        StochMap { src, tgt, cols }
    }

    /// Deterministic map sending `x` to `tgt[image[x]]`.
    pub fn from_function(src: Vec<Label>, tgt: Vec<Label>, image: &[usize]) -> Result<Self> {
        if image.len() != src.len() || image.iter().any(|&y| y >= tgt.len()) {
            return Err(CoreError::ShapeMismatch(
                "function table does not fit its source and target".into(),
            ));
        }
        let cols = image
            .iter()
            .map(|&fy| (0..tgt.len()).map(|y| indicator(y == fy)).collect())
            .collect();
        Self::from_columns(src, tgt, cols)
    }

    pub fn identity(labels: Vec<Label>) -> Result<Self> {
        let image: Vec<usize> = (0..labels.len()).collect();
        Self::from_function(labels.clone(), labels, &image)
    }

    /// The diagonal `x ↦ (x,x)`.
    pub fn copy(labels: Vec<Label>) -> Result<Self> {
        let n = labels.len();
        let image: Vec<usize> = (0..n).map(|x| x * n + x).collect();
        let tgt = product_labels(&labels, &labels);
        Self::from_function(labels, tgt, &image)
    }

    /// The unique map to the one-point set.
    pub fn discard(labels: Vec<Label>) -> Result<Self> {
        let image = vec![0; labels.len()];
        Self::from_function(labels, vec![Label::point()], &image)
    }

    /// `(a,b) ↦ (b,a)` from `A×B` to `B×A`.
    pub fn swap(a: &[Label], b: &[Label]) -> Result<Self> {
        let (na, nb) = (a.len(), b.len());
        let image: Vec<usize> = (0..na * nb)
            .map(|i| {
                let (ia, ib) = (i / nb, i % nb);
                ib * na + ia
            })
            .collect();
        Self::from_function(product_labels(a, b), product_labels(b, a), &image)
    }

    /// Projection `A×B → A`.
    pub fn project_first(a: &[Label], b: &[Label]) -> Result<Self> {
        let nb = b.len();
        let image: Vec<usize> = (0..a.len() * nb).map(|i| i / nb).collect();
        Self::from_function(product_labels(a, b), a.to_vec(), &image)
    }

    /// Projection `A×B → B`.
    pub fn project_second(a: &[Label], b: &[Label]) -> Result<Self> {
        let nb = b.len();
        let image: Vec<usize> = (0..a.len() * nb).map(|i| i % nb).collect();
        Self::from_function(product_labels(a, b), b.to_vec(), &image)
    }

    /// The distribution `p` viewed as a map from the one-point set.
    pub fn state(p: &ProbSpace) -> Self {
        StochMap {
            src: vec![Label::point()],
            tgt: p.labels().to_vec(),
            cols: vec![p.probs().to_vec()],
        }
    }

    /// Every source element mapped to the distribution `q`.
    pub fn constant(src: Vec<Label>, q: &ProbSpace) -> Result<Self> {
        let cols = vec![q.probs().to_vec(); src.len()];
        Self::from_columns(src, q.labels().to_vec(), cols)
    }

    pub fn src(&self) -> &[Label] {
        &self.src
    }

    pub fn tgt(&self) -> &[Label] {
        &self.tgt
    }

    pub fn entry(&self, y: usize, x: usize) -> &Rational {
        &self.cols[x][y]
    }

    /// The distribution `f_x`, indexed by target.
    pub fn column(&self, x: usize) -> &[Rational] {
        &self.cols[x]
    }

    pub fn columns(&self) -> &[Vec<Rational>] {
        &self.cols
    }

    /// `f_x` as a space over the target labels.
    pub fn column_space(&self, x: usize) -> ProbSpace {
        ProbSpace::from_parts(self.tgt.clone(), self.cols[x].clone())
    }

    /// Target index of a point-mass column.
    pub fn point_mass(&self, x: usize) -> Option<usize> {
        let col = &self.cols[x];
        let y = col.iter().position(|v| v.is_one())?;
        Some(y)
    }

    pub fn is_deterministic(&self) -> bool {
        (0..self.src.len()).all(|x| self.point_mass(x).is_some())
    }

    /// Function table of a deterministic map.
    pub fn as_function(&self) -> Option<Vec<usize>> {
        (0..self.src.len()).map(|x| self.point_mass(x)).collect()
    }

    /// Deterministic bijection.
    pub fn is_isomorphism(&self) -> bool {
        if self.src.len() != self.tgt.len() {
            return false;
        }
        match self.as_function() {
            Some(f) => {
                let mut hit = vec![false; self.tgt.len()];
                f.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
            }
            None => false,
        }
    }

    /// Inverse of a deterministic bijection.
    pub fn inverse_isomorphism(&self) -> Option<StochMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let f = self.as_function()?;
        let mut inv = vec![0; f.len()];
        for (x, &y) in f.iter().enumerate() {
            inv[y] = x;
        }
        StochMap::from_function(self.tgt.clone(), self.src.clone(), &inv).ok()
    }

    /// The same matrix under new source/target labels.
    pub fn relabel(&self, src: Vec<Label>, tgt: Vec<Label>) -> Result<StochMap> {
        Self::from_columns(src, tgt, self.cols.clone())
    }

    /// Composite `g ∘ self`.
    pub fn then(&self, g: &StochMap) -> Result<StochMap> {
        compose(g, self)
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        rational::one()
    } else {
        rational::zero()
    }
}

/// Validated construction from a `|tgt| × |src|` matrix.
pub fn make_map(src: Vec<Label>, tgt: Vec<Label>, matrix: Vec<Vec<Rational>>) -> Result<StochMap> {
    StochMap::new(src, tgt, matrix)
}

/// Chapman–Kolmogorov composite `(g∘f)_{zx} = Σ_y g_{zy} f_{yx}`.
pub fn compose(g: &StochMap, f: &StochMap) -> Result<StochMap> {
    if f.tgt != g.src {
        return Err(CoreError::ShapeMismatch(
            "target of the first map differs from the source of the second".into(),
        ));
    }
    let cols = f
        .cols
        .iter()
        .map(|fx| {
            (0..g.tgt.len())
                .map(|z| {
                    fx.iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(y, v)| &g.cols[y][z] * v)
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(StochMap::from_parts(f.src.clone(), g.tgt.clone(), cols))
}

/// Tensor product `(f×g)_{(x',y')(x,y)} = f_{x'x} g_{y'y}`.
pub fn product(f: &StochMap, g: &StochMap) -> StochMap {
    let src = product_labels(&f.src, &g.src);
    let tgt = product_labels(&f.tgt, &g.tgt);
    let mut cols = Vec::with_capacity(src.len());
    for fx in &f.cols {
        for gy in &g.cols {
            cols.push(
                fx.iter()
                    .flat_map(|a| gy.iter().map(move |b| a * b))
                    .collect(),
            );
        }
    }
    StochMap::from_parts(src, tgt, cols)
}

pub fn copy(labels: &[Label]) -> StochMap {
    StochMap::copy(labels.to_vec()).expect("labels of a valid set")
}

pub fn discard(labels: &[Label]) -> StochMap {
    StochMap::discard(labels.to_vec()).expect("labels of a valid set")
}

pub fn swap(a: &[Label], b: &[Label]) -> StochMap {
    StochMap::swap(a, b).expect("labels of valid sets")
}

pub fn identity(labels: &[Label]) -> StochMap {
    StochMap::identity(labels.to_vec()).expect("labels of a valid set")
}

/// `q_y = Σ_x f_{yx} p_x`.
pub fn pushforward(f: &StochMap, p: &ProbSpace) -> Result<ProbSpace> {
    if f.src.as_slice() != p.labels() {
        return Err(CoreError::ShapeMismatch(
            "distribution is not over the source of the map".into(),
        ));
    }
    let mut q = vec![rational::zero(); f.tgt.len()];
    for (x, px) in p.probs().iter().enumerate() {
        if px.is_zero() {
            continue;
        }
        for (y, v) in f.cols[x].iter().enumerate() {
            if !v.is_zero() {
                q[y] += v * px;
            }
        }
    }
    Ok(ProbSpace::from_parts(f.tgt.clone(), q))
}

pub fn is_deterministic(f: &StochMap) -> bool {
    f.is_deterministic()
}

/// Every column over the support of `p` is a point mass.
pub fn is_ae_deterministic(f: &StochMap, p: &ProbSpace) -> Result<bool> {
    check_over(f, p)?;
    Ok(p.support().all(|x| f.point_mass(x).is_some()))
}

/// Columnwise equality on the support of `p`.
pub fn ae_equal(f: &StochMap, g: &StochMap, p: &ProbSpace) -> Result<bool> {
    if f.src != g.src || f.tgt != g.tgt {
        return Err(CoreError::ShapeMismatch(
            "a.e. comparison of maps with different shapes".into(),
        ));
    }
    check_over(f, p)?;
    Ok(p.support().all(|x| f.cols[x] == g.cols[x]))
}

fn check_over(f: &StochMap, p: &ProbSpace) -> Result<()> {
    if f.src.as_slice() != p.labels() {
        return Err(CoreError::ShapeMismatch(
            "distribution is not over the source of the map".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::rational::{one, ratio, zero};

    fn running_f() -> StochMap {
        StochMap::new(
            labels(["x0", "x1"]).unwrap(),
            labels(["y0", "y1"]).unwrap(),
            vec![vec![one(), ratio(1, 2)], vec![zero(), ratio(1, 2)]],
        )
        .unwrap()
    }

    #[test]
    fn make_map_examples() {
        let ab = labels(["a", "b"]).unwrap();
        let id = make_map(ab.clone(), ab.clone(), vec![vec![one(), zero()], vec![zero(), one()]])
            .unwrap();
        assert_eq!(id, identity(&ab));
        let half = ratio(1, 2);
        let c = make_map(ab.clone(), ab.clone(), vec![vec![half.clone(); 2], vec![half; 2]])
            .unwrap();
        assert_eq!(c, StochMap::constant(ab.clone(), &ProbSpace::uniform(ab.clone()).unwrap()).unwrap());
        let bad = make_map(
            ab.clone(),
            ab.clone(),
            vec![vec![one(), ratio(1, 2)], vec![ratio(1, 2), ratio(1, 2)]],
        );
        assert!(matches!(bad, Err(CoreError::ColumnNotNormalized { .. })));
        let neg = make_map(
            ab.clone(),
            ab.clone(),
            vec![vec![ratio(3, 2), one()], vec![ratio(-1, 2), zero()]],
        );
        assert!(matches!(neg, Err(CoreError::OutOfRange { .. })));
    }

    #[test]
    fn compose_examples() {
        let f = running_f();
        assert_eq!(compose(&identity(f.tgt()), &f).unwrap(), f);
        assert_eq!(
            compose(&discard(f.tgt()), &f).unwrap(),
            discard(f.src())
        );
        let x = labels(["a", "b"]).unwrap();
        let y = labels(["u", "v", "w"]).unwrap();
        let round = compose(&swap(&y, &x), &swap(&x, &y)).unwrap();
        assert_eq!(round, identity(&product_labels(&x, &y)));
        assert!(compose(&f, &identity(&y)).is_err());
    }

    #[test]
    fn product_examples() {
        let x = labels(["a", "b"]).unwrap();
        let y = labels(["u", "v"]).unwrap();
        assert_eq!(
            product(&identity(&x), &identity(&y)),
            identity(&product_labels(&x, &y))
        );
        // constant uniform × id: column (x,y) has 1/2 on (x',y) for both x'
        let u = StochMap::constant(x.clone(), &ProbSpace::uniform(x.clone()).unwrap()).unwrap();
        let fg = product(&u, &identity(&y));
        for xi in 0..2 {
            for yi in 0..2 {
                let col = fg.column(xi * 2 + yi);
                for xo in 0..2 {
                    for yo in 0..2 {
                        let expect = if yo == yi { ratio(1, 2) } else { zero() };
                        assert_eq!(col[xo * 2 + yo], expect);
                    }
                }
            }
        }
        let pt = vec![Label::point()];
        assert_eq!(product(&identity(&pt), &identity(&pt)).src().len(), 1);
    }

    #[test]
    fn structural_maps() {
        let a = labels(["a"]).unwrap();
        let c = copy(&a);
        assert_eq!(c.tgt()[0].as_str(), "(a,a)");
        assert!(c.entry(0, 0).is_one());
        let ab = labels(["a", "b"]).unwrap();
        let d = discard(&ab);
        assert_eq!(d.tgt(), &[Label::point()]);
        assert!(d.column(0)[0].is_one() && d.column(1)[0].is_one());
        let s = swap(&a, &labels(["b"]).unwrap());
        assert_eq!(s.src()[0].as_str(), "(a,b)");
        assert_eq!(s.tgt()[0].as_str(), "(b,a)");
    }

    #[test]
    fn pushforward_examples() {
        let f = running_f();
        let p = ProbSpace::uniform(f.src().to_vec()).unwrap();
        assert_eq!(pushforward(&identity(f.src()), &p).unwrap(), p);
        let q = pushforward(&f, &p).unwrap();
        assert_eq!(q.probs(), &[ratio(3, 4), ratio(1, 4)]);
        assert_eq!(pushforward(&discard(f.src()), &p).unwrap(), ProbSpace::point());
    }

    #[test]
    fn determinism_and_ae_equality() {
        let f = running_f();
        assert!(is_deterministic(&identity(f.src())));
        assert!(!is_deterministic(&f));
        let p = ProbSpace::dirac(f.src().to_vec(), 0).unwrap();
        assert!(is_ae_deterministic(&f, &p).unwrap());
        let u = ProbSpace::uniform(f.src().to_vec()).unwrap();
        assert!(!is_ae_deterministic(&f, &u).unwrap());

        assert!(ae_equal(&f, &f, &u).unwrap());
        let g = StochMap::from_function(f.src().to_vec(), f.tgt().to_vec(), &[0, 1]).unwrap();
        assert!(ae_equal(&f, &g, &p).unwrap());
        assert!(!ae_equal(&f, &g, &u).unwrap());
        assert!(ae_equal(&f, &identity(f.src()), &p).is_err());
    }

    #[test]
    fn isomorphism_inverse() {
        let x = labels(["a", "b", "c"]).unwrap();
        let y = labels(["u", "v", "w"]).unwrap();
        let g = StochMap::from_function(x.clone(), y.clone(), &[2, 0, 1]).unwrap();
        let gi = g.inverse_isomorphism().unwrap();
        assert_eq!(compose(&gi, &g).unwrap(), identity(&x));
        assert!(running_f().inverse_isomorphism().is_none());
    }
}
