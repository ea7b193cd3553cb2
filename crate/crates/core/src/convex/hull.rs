use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::dd::enumerate_vertices;
use crate::error::{Result, SprawlError};
use crate::rational::{cross2, dot, int, rank, sub, RatPoint};

/// Extreme points of a planar point set, clockwise, starting at the
/// lexicographically smallest point. Collinear boundary points are dropped.
pub fn hull_2d(points: &[RatPoint]) -> Vec<RatPoint> {
    let mut pts: Vec<RatPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &RatPoint, a: &RatPoint, b: &RatPoint| cross2(&sub(a, o), &sub(b, o));
    let mut lower: Vec<RatPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    // counterclockwise from the lexicographic minimum
    let mut ccw = lower;
    ccw.extend(upper);
    let mut cw = Vec::with_capacity(ccw.len());
    cw.push(ccw[0].clone());
    cw.extend(ccw[1..].iter().rev().cloned());
    cw
}

/// Checks central symmetry of a point set (as a set).
pub fn is_symmetric(points: &[RatPoint]) -> bool {
    let set: BTreeSet<&RatPoint> = points.iter().collect();
    points.iter().all(|p| {
        let n: RatPoint = p.iter().map(|x| -x).collect();
        set.contains(&n)
    })
}

/// Facet functionals `a` (with `a . x <= 1` on the hull) and extreme points of
/// a centrally symmetric, full-dimensional point set in any dimension.
pub fn hull_nd(dimension: usize, points: &[RatPoint]) -> Result<(Vec<RatPoint>, Vec<RatPoint>)> {
    let mut pts: Vec<RatPoint> = points.iter().filter(|p| p.iter().any(|x| !x.is_zero())).cloned().collect();
    pts.sort();
    pts.dedup();
    if pts.is_empty() {
        return Err(SprawlError::NotFullDimensional);
    }
    // the polar region {a : a . p <= 1} is bounded iff the origin is interior
    let facets = enumerate_vertices(dimension, &pts)?;
    let functionals: Vec<RatPoint> = facets.iter().map(|f| f.point.clone()).collect();
    let vertices = pts
        .into_iter()
        .filter(|p| {
            let tight: Vec<RatPoint> = functionals.iter().filter(|a| dot(a, p) == int(1)).cloned().collect();
            rank(&tight) == dimension
        })
        .collect();
    Ok((vertices, functionals))
}
