//! Word metrics on Cayley graphs by breadth-first search.
//!
//! `E_n` is the mean of `d(x, y) / n` over pairs from the radius-`n` sphere,
//! where `d(x, y) = |x^{-1} y|`. Distances come from a closed-form word length
//! when the group provides one for the given generators, and otherwise from a
//! lookup in the ball of radius `2n`, which contains every `x^{-1} y`.

mod groups;

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use groups::{FreeAbelian, FreeGroup, Group, LampState, Lamplighter};

use crate::convex::hull;
use crate::error::{Result, SprawlError};
use crate::lattice::GeneratorSet;
use crate::mc::estimate;
use crate::rational::ExactRational;

/// Default cap on the number of stored group elements.
pub const DEFAULT_BUDGET: usize = 40_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PairMode {
    Exact,
    Sampled { pairs: u64, seed: u64 },
}

/// One radius of an empirical sprawl run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SprawlRow {
    pub n: usize,
    pub sphere_size: usize,
    pub value: f64,
    /// Exact value in exact mode.
    #[serde(skip)]
    pub exact: Option<ExactRational>,
    /// Standard error in sampled mode.
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSprawl {
    pub group: String,
    pub generators: usize,
    pub mode: PairMode,
    pub rows: Vec<SprawlRow>,
}

fn check_symmetric<G: Group>(g: &G, gens: &[G::Elem]) -> Result<()> {
    let set: HashSet<&G::Elem> = gens.iter().collect();
    let e = g.identity();
    if gens.iter().any(|x| *x == e || !set.contains(&g.inv(x))) {
        return Err(SprawlError::NotSymmetric);
    }
    Ok(())
}

/// Spheres `S_0 ..= S_{n_max}` of the Cayley graph, each sorted.
///
/// Fails with `MemoryBudgetExceeded` once more than `budget` elements would be
/// stored, reporting the largest radius completed.
pub fn bfs_spheres<G: Group>(g: &G, gens: &[G::Elem], n_max: usize, budget: usize) -> Result<Vec<Vec<G::Elem>>> {
    check_symmetric(g, gens)?;
    let mut spheres = vec![vec![g.identity()]];
    let mut stored = 1usize;
    let mut prev: HashSet<G::Elem> = HashSet::new();
    let mut cur: HashSet<G::Elem> = spheres[0].iter().cloned().collect();
    for n in 1..=n_max {
        let mut next: HashSet<G::Elem> = HashSet::new();
        for x in &spheres[n - 1] {
            for s in gens {
                let y = g.mul(x, s);
                if !cur.contains(&y) && !prev.contains(&y) {
                    next.insert(y);
                }
            }
            if stored + next.len() > budget {
                return Err(SprawlError::MemoryBudgetExceeded {
                    budget,
                    completed_radius: n - 1,
                });
            }
        }
        stored += next.len();
        let mut layer: Vec<G::Elem> = next.iter().cloned().collect();
        layer.sort();
        spheres.push(layer);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(spheres)
}

/// Ball sizes `β(n) = Σ_{k ≤ n} |S_k|`.
pub fn growth<G: Group>(spheres: &[Vec<G::Elem>]) -> Vec<usize> {
    spheres
        .iter()
        .scan(0, |acc, s| {
            *acc += s.len();
            Some(*acc)
        })
        .collect()
}

enum Metric<E> {
    Formula,
    Ball(HashMap<E, u32>),
}

impl<E: Clone + Eq + std::hash::Hash> Metric<E> {
    fn distance<G: Group<Elem = E>>(&self, g: &G, x: &E, y: &E) -> u32 {
        match self {
            Metric::Formula => g.formula_distance(x, y),
            Metric::Ball(ball) => ball[&g.mul(&g.inv(x), y)],
        }
    }
}

/// `E_n` for every radius in `radii`.
pub fn empirical_sprawl<G: Group>(
    g: &G,
    gens: &[G::Elem],
    radii: &[usize],
    mode: PairMode,
    budget: usize,
) -> Result<EmpiricalSprawl> {
    let n_max = radii.iter().copied().max().unwrap_or(0);
    let metric = if g.has_length_formula(gens) {
        Metric::Formula
    } else {
        let ball = bfs_spheres(g, gens, 2 * n_max, budget)?;
        let mut map = HashMap::with_capacity(ball.iter().map(Vec::len).sum());
        for (k, s) in ball.into_iter().enumerate() {
            for x in s {
                map.insert(x, k as u32);
            }
        }
        Metric::Ball(map)
    };
    let spheres = bfs_spheres(g, gens, n_max, budget)?;
    let mut rows = Vec::with_capacity(radii.len());
    for &n in radii {
        if n == 0 {
            return Err(SprawlError::InvalidInput("radius must be at least 1".into()));
        }
        let s = &spheres[n];
        let size = s.len();
        let row = match mode {
            PairMode::Exact => {
                let total: u64 = s
                    .par_iter()
                    .map(|x| s.iter().map(|y| metric.distance(g, x, y) as u64).sum::<u64>())
                    .sum();
                let denom = BigInt::from(size) * BigInt::from(size) * BigInt::from(n);
                let exact = ExactRational::new(BigInt::from(total), denom);
                SprawlRow {
                    n,
                    sphere_size: size,
                    value: crate::rational::to_f64(&exact),
                    exact: Some(exact),
                    stderr: None,
                }
            }
            PairMode::Sampled { pairs, seed } => {
                if pairs < 2 {
                    return Err(SprawlError::InvalidInput("need at least 2 sampled pairs".into()));
                }
                let (mean, stderr) = estimate(pairs, seed, || (), |rng, _| {
                    let x = &s[rng.random_range(0..size)];
                    let y = &s[rng.random_range(0..size)];
                    metric.distance(g, x, y) as f64 / n as f64
                });
                SprawlRow {
                    n,
                    sphere_size: size,
                    value: mean,
                    exact: None,
                    stderr: Some(stderr),
                }
            }
        };
        rows.push(row);
    }
    Ok(EmpiricalSprawl {
        group: g.label(),
        generators: gens.len(),
        mode,
        rows,
    })
}

/// Lamplighter `Z_m ≀ Z` runs: all pairs while `|S_n|^2 <= pair_budget`,
/// otherwise `pair_budget` sampled pairs.
pub fn lamplighter_sprawl(
    m: u32,
    gens: Option<Vec<LampState>>,
    radii: &[usize],
    pair_budget: u64,
    seed: u64,
) -> Result<EmpiricalSprawl> {
    if m < 2 {
        return Err(SprawlError::UnsupportedParameter(format!("lamplighter needs m >= 2, got {m}")));
    }
    let g = Lamplighter { m };
    let gens = gens.unwrap_or_else(|| g.default_generators());
    let n_max = radii.iter().copied().max().unwrap_or(0);
    let sizes: Vec<usize> = bfs_spheres(&g, &gens, n_max, DEFAULT_BUDGET)?.iter().map(Vec::len).collect();
    let mut rows = Vec::new();
    let mut mode = PairMode::Exact;
    for &n in radii {
        let sz = sizes[n] as u64;
        let this = if sz.saturating_mul(sz) <= pair_budget {
            PairMode::Exact
        } else {
            PairMode::Sampled {
                pairs: pair_budget,
                seed,
            }
        };
        if this != PairMode::Exact {
            mode = this;
        }
        rows.extend(empirical_sprawl(&g, &gens, &[n], this, DEFAULT_BUDGET)?.rows);
    }
    Ok(EmpiricalSprawl {
        group: g.label(),
        generators: gens.len(),
        mode,
        rows,
    })
}

/// Extremes of `|w| - ‖w‖_L` over the ball `B_n` of `(Z^d, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sandwich {
    pub radius: usize,
    pub min_gap: ExactRational,
    pub max_gap: ExactRational,
}

/// Checks `‖w‖_L <= |w| <= ‖w‖_L + K` on a ball and reports the observed `K`.
pub fn word_metric_sandwich(set: &GeneratorSet, n: usize, budget: usize) -> Result<Sandwich> {
    let l = hull(set)?;
    let g = FreeAbelian {
        dimension: set.dimension(),
    };
    let spheres = bfs_spheres(&g, &FreeAbelian::generators(set), n, budget)?;
    let mut min_gap: Option<ExactRational> = None;
    let mut max_gap = ExactRational::zero();
    for (k, s) in spheres.iter().enumerate() {
        for w in s {
            let q: Vec<ExactRational> = w.iter().map(|&c| ExactRational::from_integer(c.into())).collect();
            let gap = ExactRational::from_integer(k.into()) - l.norm(&q)?;
            if min_gap.as_ref().is_none_or(|m| gap < *m) {
                min_gap = Some(gap.clone());
            }
            if gap > max_gap {
                max_gap = gap;
            }
        }
    }
    Ok(Sandwich {
        radius: n,
        min_gap: min_gap.unwrap_or_default(),
        max_gap,
    })
}
