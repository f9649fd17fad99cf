use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenConfig;
use crate::label::Label;
use crate::map::StochMap;
use crate::morphism::Morphism;
use crate::rational::{self, Rational};
use crate::space::ProbSpace;
use crate::structure::bloom_shriek_factorize;

/// How a coalescable pair was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStrategy {
    /// The first leg is a.e. deterministic.
    DeterministicFirst,
    /// The second leg is an isomorphism.
    IsoSecond,
    /// The bloom and projection of a random morphism.
    BloomShriek,
}

/// Seeded source of random instances.
///
/// Every trial reads its own ChaCha stream, selected by the trial index, so
/// instances do not depend on which thread runs the trial or in what order.
pub struct Generator {
    cfg: GenConfig,
    null: (u32, u32),
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(cfg: &GenConfig, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial);
        Generator {
            cfg: cfg.clone(),
            null: cfg.null_ratio(),
            rng,
        }
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A size in `1..=max_size`.
    pub fn size(&mut self) -> usize {
        self.rng.random_range(1..=self.cfg.max_size.max(1))
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.random_ratio(num, den)
    }

    pub fn labels(prefix: &str, n: usize) -> Vec<Label> {
        (0..n)
            .map(|i| Label::new(format!("{prefix}{i}")).expect("nonempty"))
            .collect()
    }

    /// `n` rationals `k/d` summing to one with `d ≤ denom_bound` (raised to
    /// the number of nonzero entries when that is larger). With `nulls`, each
    /// entry is forced to zero with probability `null_prob`, keeping at least
    /// one entry alive.
    pub fn distribution(&mut self, n: usize, nulls: bool) -> Vec<Rational> {
        assert!(n >= 1, "distributions need at least one outcome");
        let (a, b) = self.null;
        let mut live: Vec<bool> = (0..n).map(|_| !(nulls && self.rng.random_ratio(a, b))).collect();
        if !live.contains(&true) {
            live[self.rng.random_range(0..n)] = true;
        }
        let k = live.iter().filter(|&&l| l).count();
        let denom = self.rng.random_range(k..=self.cfg.denom_bound.max(k));
        let mut cuts: Vec<usize> = index::sample(&mut self.rng, denom - 1, k - 1)
            .into_iter()
            .map(|c| c + 1)
            .collect();
        cuts.sort_unstable();
        cuts.push(denom);
        let mut parts = Vec::with_capacity(k);
        let mut prev = 0;
        for c in cuts {
            parts.push(c - prev);
            prev = c;
        }
        let mut parts = parts.into_iter();
        live.into_iter()
            .map(|l| {
                if l {
                    rational::ratio(parts.next().expect("one part per live entry") as i64, denom as i64)
                } else {
                    rational::zero()
                }
            })
            .collect()
    }

    pub fn space(&mut self, prefix: &str, n: usize) -> ProbSpace {
        let probs = self.distribution(n, true);
        ProbSpace::from_parts(Self::labels(prefix, n), probs)
    }

    pub fn full_space(&mut self, prefix: &str, n: usize) -> ProbSpace {
        let probs = self.distribution(n, false);
        ProbSpace::from_parts(Self::labels(prefix, n), probs)
    }

    pub fn map(&mut self, src: &[Label], tgt: &[Label]) -> StochMap {
        let cols = (0..src.len()).map(|_| self.distribution(tgt.len(), true)).collect();
        StochMap::from_parts(src.to_vec(), tgt.to_vec(), cols)
    }

    pub fn deterministic_map(&mut self, src: &[Label], tgt: &[Label]) -> StochMap {
        let image: Vec<usize> = (0..src.len()).map(|_| self.rng.random_range(0..tgt.len())).collect();
        StochMap::from_function(src.to_vec(), tgt.to_vec(), &image).expect("image within target")
    }

    /// A random morphism out of `p` onto `n` labels named `prefix0, prefix1, …`.
    pub fn morphism(&mut self, p: &ProbSpace, prefix: &str, n: usize) -> Morphism {
        let f = self.map(p.labels(), &Self::labels(prefix, n));
        Morphism::new(f, p.clone()).expect("generated map fits its source")
    }

    pub fn deterministic_morphism(&mut self, p: &ProbSpace, prefix: &str, n: usize) -> Morphism {
        let f = self.deterministic_map(p.labels(), &Self::labels(prefix, n));
        Morphism::new(f, p.clone()).expect("generated map fits its source")
    }

    /// A random morphism `(X,p) ⇝ (Y,q)` with random sizes.
    pub fn any_morphism(&mut self) -> Morphism {
        let (nx, ny) = (self.size(), self.size());
        let p = self.space("x", nx);
        self.morphism(&p, "y", ny)
    }

    /// A random composable pair `(X,p) ⇝ (Y,q) ⇝ (Z,r)`.
    pub fn pair(&mut self) -> (Morphism, Morphism) {
        let f = self.any_morphism();
        let nz = self.size();
        let g = self.morphism(f.tgt(), "z", nz);
        (f, g)
    }

    /// A random permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        index::sample(&mut self.rng, n, n).into_vec()
    }

    /// An isomorphism out of `p` onto freshly named labels.
    pub fn iso_from(&mut self, p: &ProbSpace, prefix: &str) -> Morphism {
        let perm = self.permutation(p.len());
        let f = StochMap::from_function(p.labels().to_vec(), Self::labels(prefix, p.len()), &perm)
            .expect("permutation is a bijection");
        Morphism::new(f, p.clone()).expect("generated map fits its source")
    }

    /// An isomorphism into `p` from freshly named labels.
    pub fn iso_onto(&mut self, p: &ProbSpace, prefix: &str) -> Morphism {
        let perm = self.permutation(p.len());
        let src = Self::labels(prefix, p.len());
        let probs = perm.iter().map(|&i| p.prob(i).clone()).collect();
        let s = ProbSpace::from_parts(src.clone(), probs);
        let f = StochMap::from_function(src, p.labels().to_vec(), &perm).expect("permutation is a bijection");
        Morphism::with_target(f, s, p.clone()).expect("permuted distribution pushes forward to p")
    }

    /// A morphism whose canonical Bayesian inverse is a.e. deterministic, so
    /// that its information loss vanishes: every output is owned by a single
    /// input and inputs owning nothing are null.
    pub fn lossless_morphism(&mut self) -> Morphism {
        let (nx, ny) = (self.size(), self.size());
        let owner: Vec<usize> = (0..ny).map(|_| self.rng.random_range(0..nx)).collect();
        let owners: Vec<usize> = (0..nx).filter(|x| owner.contains(x)).collect();
        let weights = self.distribution(owners.len(), true);
        let mut probs = vec![rational::zero(); nx];
        for (&x, w) in owners.iter().zip(weights) {
            probs[x] = w;
        }
        let xs = Self::labels("x", nx);
        let ys = Self::labels("y", ny);
        let cols = (0..nx)
            .map(|x| {
                let owned: Vec<usize> = (0..ny).filter(|&y| owner[y] == x).collect();
                if owned.is_empty() {
                    return self.distribution(ny, true);
                }
                let mut col = vec![rational::zero(); ny];
                for (y, v) in owned.iter().zip(self.distribution(owned.len(), true)) {
                    col[*y] = v;
                }
                col
            })
            .collect();
        let p = ProbSpace::from_parts(xs.clone(), probs);
        Morphism::new(StochMap::from_parts(xs, ys, cols), p).expect("generated map fits its source")
    }

    /// A pair that admits a mediator, built by one of three routes chosen at
    /// random.
    pub fn coalescable_pair(&mut self) -> (Morphism, Morphism, PairStrategy) {
        let strategy = match self.rng.random_range(0..3) {
            0 => PairStrategy::DeterministicFirst,
            1 => PairStrategy::IsoSecond,
            _ => PairStrategy::BloomShriek,
        };
        let (f, g) = self.coalescable_pair_with(strategy);
        (f, g, strategy)
    }

    pub fn coalescable_pair_with(&mut self, strategy: PairStrategy) -> (Morphism, Morphism) {
        match strategy {
            PairStrategy::DeterministicFirst => {
                let (nx, ny, nz) = (self.size(), self.size(), self.size());
                let p = self.space("x", nx);
                let xs = p.labels().to_vec();
                let ys = Self::labels("y", ny);
                let det = self.deterministic_map(&xs, &ys);
                // off the support the first leg may be anything
                let cols = (0..nx)
                    .map(|x| {
                        if p.is_null(x) {
                            self.distribution(ny, true)
                        } else {
                            det.column(x).to_vec()
                        }
                    })
                    .collect();
                let f = Morphism::new(StochMap::from_parts(xs, ys, cols), p).expect("fits");
                let g = self.morphism(f.tgt(), "z", nz);
                (f, g)
            }
            PairStrategy::IsoSecond => {
                let f = self.any_morphism();
                let g = self.iso_from(f.tgt(), "z");
                (f, g)
            }
            PairStrategy::BloomShriek => {
                let m = self.any_morphism();
                bloom_shriek_factorize(&m).expect("factorization of a valid morphism")
            }
        }
    }

    /// `n` random morphisms indexed by a random space, for convex sums.
    pub fn family(&mut self) -> (ProbSpace, Vec<Morphism>) {
        let n = self.size();
        let idx = self.space("i", n);
        let parts = (0..n).map(|_| self.any_morphism()).collect();
        (idx, parts)
    }
}

/// A space on `size` labels drawn from the stream of `cfg.seed`.
pub fn gen_space(cfg: &GenConfig, size: usize) -> ProbSpace {
    Generator::new(cfg, 0).space("x", size)
}

pub fn gen_map(cfg: &GenConfig, src: &ProbSpace, tgt: &ProbSpace) -> StochMap {
    Generator::new(cfg, 0).map(src.labels(), tgt.labels())
}

pub fn gen_morphism(cfg: &GenConfig, src: &ProbSpace, tgt_size: usize) -> Morphism {
    Generator::new(cfg, 0).morphism(src, "y", tgt_size)
}

pub fn gen_coalescable_pair(cfg: &GenConfig) -> (Morphism, Morphism) {
    let (f, g, _) = Generator::new(cfg, 0).coalescable_pair();
    (f, g)
}

