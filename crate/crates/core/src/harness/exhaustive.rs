//! Complete enumeration of small instances on a rational grid.
//!
//! Instances are numbered in mixed radix, so a sweep is a plain indexed map
//! and runs under either [`Execution`] mode with identical output order.

use std::collections::BTreeSet;

use super::{map_indexed, Execution, Generator};
use crate::map::StochMap;
use crate::morphism::Morphism;
use crate::rational::{self, Rational};
use crate::space::ProbSpace;

/// Every fraction in `[0, 1]` whose reduced denominator is at most `max_denom`.
pub fn grid(max_denom: i64) -> Vec<Rational> {
    let set: BTreeSet<Rational> = (1..=max_denom)
        .flat_map(|d| (0..=d).map(move |k| rational::ratio(k, d)))
        .collect();
    set.into_iter().collect()
}

/// All length-`n` vectors over `grid(max_denom)` summing to one.
pub fn distributions(n: usize, max_denom: i64) -> Vec<Vec<Rational>> {
    fn extend(prefix: &mut Vec<Rational>, left: &Rational, n: usize, grid: &[Rational], out: &mut Vec<Vec<Rational>>) {
        if prefix.len() + 1 == n {
            if grid.contains(left) {
                prefix.push(left.clone());
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for v in grid.iter().filter(|v| *v <= left) {
            prefix.push(v.clone());
            extend(prefix, &(left - v), n, grid, out);
            prefix.pop();
        }
    }
    let grid = grid(max_denom);
    let mut out = Vec::new();
    extend(&mut Vec::new(), &rational::one(), n, &grid, &mut out);
    out
}

// Grid distributions, indexed by length.
struct Table {
    dists: Vec<Vec<Vec<Rational>>>,
}

impl Table {
    fn new(max_size: usize, max_denom: i64) -> Self {
        Table {
            dists: (0..=max_size)
                .map(|n| if n == 0 { Vec::new() } else { distributions(n, max_denom) })
                .collect(),
        }
    }

    fn count(&self, n: usize) -> u64 {
        self.dists[n].len() as u64
    }

    // Splits `index` into `digits` base-`radix` digits, least significant first.
    fn digits(index: &mut u64, radix: u64, digits: usize) -> Vec<usize> {
        (0..digits)
            .map(|_| {
                let d = *index % radix;
                *index /= radix;
                d as usize
            })
            .collect()
    }

    fn space(&self, prefix: &str, n: usize, i: usize) -> ProbSpace {
        ProbSpace::new(Generator::labels(prefix, n), self.dists[n][i].clone()).expect("grid distribution")
    }

    fn map(&self, src: &ProbSpace, prefix: &str, n: usize, cols: &[usize]) -> StochMap {
        let cols = cols.iter().map(|&c| self.dists[n][c].clone()).collect();
        StochMap::from_columns(src.labels().to_vec(), Generator::labels(prefix, n), cols).expect("grid columns")
    }
}

/// Number of morphisms `(X,p) ⇝ (Y,q)` with `|X| = nx`, `|Y| = ny` and all
/// entries on the grid.
pub fn morphism_count(nx: usize, ny: usize, max_denom: i64) -> u64 {
    let t = Table::new(nx.max(ny), max_denom);
    t.count(nx) * t.count(ny).pow(nx as u32)
}

/// Applies `f` to every grid morphism with `|X|, |Y| ≤ max_size`.
pub fn sweep_morphisms<T, F>(max_size: usize, max_denom: i64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Morphism) -> T + Sync + Send,
{
    let table = Table::new(max_size, max_denom);
    let mut out = Vec::new();
    for nx in 1..=max_size {
        for ny in 1..=max_size {
            let (cx, cy) = (table.count(nx), table.count(ny));
            let total = cx * cy.pow(nx as u32);
            out.extend(map_indexed(total, exec, |i| {
                let mut rest = i;
                let p = Table::digits(&mut rest, cx, 1)[0];
                let cols = Table::digits(&mut rest, cy, nx);
                let p = table.space("x", nx, p);
                let m = table.map(&p, "y", ny, &cols);
                f(&Morphism::new(m, p).expect("grid morphism"))
            }));
        }
    }
    out
}

/// Applies `f` to every composable grid pair `(X,p) ⇝ (Y,q) ⇝ (Z,r)` with all
/// three sets of size at most `max_size`.
pub fn sweep_pairs<T, F>(max_size: usize, max_denom: i64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Morphism, &Morphism) -> T + Sync + Send,
{
    let table = Table::new(max_size, max_denom);
    let mut out = Vec::new();
    for nx in 1..=max_size {
        for ny in 1..=max_size {
            for nz in 1..=max_size {
                let (cx, cy, cz) = (table.count(nx), table.count(ny), table.count(nz));
                let total = cx * cy.pow(nx as u32) * cz.pow(ny as u32);
                out.extend(map_indexed(total, exec, |i| {
                    let mut rest = i;
                    let p = Table::digits(&mut rest, cx, 1)[0];
                    let fcols = Table::digits(&mut rest, cy, nx);
                    let gcols = Table::digits(&mut rest, cz, ny);
                    let p = table.space("x", nx, p);
                    let fm = Morphism::new(table.map(&p, "y", ny, &fcols), p).expect("grid morphism");
                    let gm = table.map(fm.tgt(), "z", nz, &gcols);
                    let gm = Morphism::new(gm, fm.tgt().clone()).expect("grid morphism");
                    f(&fm, &gm)
                }));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_values() {
        let g = grid(4);
        assert_eq!(g.len(), 7);
        assert_eq!(g[1], rational::ratio(1, 4));
    }

    #[test]
    fn distribution_counts() {
        assert_eq!(distributions(1, 4).len(), 1);
        assert_eq!(distributions(2, 4).len(), 7);
        // ordered triples over {0, 1/3, 1/2, 2/3, 1} summing to one
        assert_eq!(distributions(3, 3).len(), 13);
    }

    #[test]
    fn sweeps_visit_every_instance_once() {
        let seen = sweep_morphisms(2, 2, Execution::Sequential, |m| m.clone());
        let expected: u64 = (1..=2).flat_map(|nx| (1..=2).map(move |ny| morphism_count(nx, ny, 2))).sum();
        assert_eq!(seen.len() as u64, expected);
        let distinct: std::collections::HashSet<String> = seen.iter().map(|m| format!("{m:?}")).collect();
        assert_eq!(distinct.len(), seen.len());
        let par = sweep_morphisms(2, 2, Execution::Parallel, |m| m.clone());
        assert_eq!(par, seen);
    }
}
