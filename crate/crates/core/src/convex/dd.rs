//! Double description vertex enumeration for bounded polytopes of the form
//! `{x : a_i . x <= 1}` (origin in the interior).
//!
//! The polytope is homogenized to the cone `{(t, x) : t - a_i . x >= 0, t >= 0}`
//! whose extreme rays are generated incrementally, one constraint at a time.
//! Rays are kept as primitive integer vectors and adjacency uses the
//! combinatorial test on tight-constraint sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SprawlError};
use crate::rational::{inverse, rank, ExactRational, RatPoint};

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_superset(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    coords: Vec<BigInt>,
    tight: BitSet,
}

/// A vertex of the enumerated polytope with the indices of the constraints
/// it makes tight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedVertex {
    pub point: RatPoint,
    pub tight: Vec<usize>,
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn integer_row(functional: &[ExactRational]) -> Vec<BigInt> {
    let lcm = functional
        .iter()
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut row = Vec::with_capacity(functional.len() + 1);
    row.push(lcm.clone());
    row.extend(functional.iter().map(|q| -(q.numer() * (&lcm / q.denom()))));
    row
}

fn eval(row: &[BigInt], ray: &[BigInt]) -> BigInt {
    row.iter().zip(ray).map(|(a, b)| a * b).sum()
}

/// Enumerates the vertices of `{x in R^d : a . x <= 1 for a in functionals}`.
///
/// Fails with `NotFullDimensional` when the region is unbounded (the
/// functionals do not positively span R^d).
pub fn enumerate_vertices(dimension: usize, functionals: &[RatPoint]) -> Result<Vec<EnumeratedVertex>> {
    let n = dimension + 1;
    let m = functionals.len();
    for f in functionals {
        if f.len() != dimension {
            return Err(SprawlError::DimensionMismatch {
                expected: dimension,
                got: f.len(),
            });
        }
    }
    // row m is t >= 0
    let mut rows: Vec<Vec<BigInt>> = functionals.iter().map(|f| integer_row(f)).collect();
    let mut t_row = vec![BigInt::zero(); n];
    t_row[0] = BigInt::one();
    rows.push(t_row);
    let total = rows.len();

    // initial basis of n independent rows
    let as_rat = |r: &Vec<BigInt>| -> RatPoint { r.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    let mut chosen: Vec<RatPoint> = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate().rev() {
        chosen.push(as_rat(r));
        if rank(&chosen) == chosen.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    if basis.len() < n {
        return Err(SprawlError::NotFullDimensional);
    }
    let inv = inverse(&chosen).ok_or(SprawlError::NotFullDimensional)?;
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let col: RatPoint = inv.iter().map(|row| row[j].clone()).collect();
            let lcm = col.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let coords = primitive(col.iter().map(|q| q.numer() * (&lcm / q.denom())).collect());
            let mut tight = BitSet::new(total);
            for (k, &b) in basis.iter().enumerate() {
                if k != j {
                    tight.insert(b);
                }
            }
            Ray { coords, tight }
        })
        .collect();

    let mut processed: Vec<bool> = vec![false; total];
    for &b in &basis {
        processed[b] = true;
    }
    for (i, row) in rows.iter().enumerate() {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let values: Vec<BigInt> = rays.iter().map(|r| eval(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if values[k].is_zero() {
                    r.tight.insert(i);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                if common.count() + 2 < n {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !r.tight.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(qc, pc)| &values[p] * qc - &values[q] * pc)
                    .collect();
                let mut tight = common;
                tight.insert(i);
                fresh.push(Ray {
                    coords: primitive(coords),
                    tight,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.tight.insert(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    let mut out = Vec::with_capacity(rays.len());
    for r in rays {
        if !r.coords[0].is_positive() {
            return Err(SprawlError::NotFullDimensional);
        }
        let t = &r.coords[0];
        let point = r.coords[1..]
            .iter()
            .map(|x| BigRational::new(x.clone(), t.clone()))
            .collect();
        let tight = (0..m).filter(|&k| r.tight.contains(k)).collect();
        out.push(EnumeratedVertex { point, tight });
    }
    out.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(out)
}
