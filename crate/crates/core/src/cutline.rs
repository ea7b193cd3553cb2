//! Exact sprawl of planar perimeters.
//!
//! Side `i` of a polygon with clockwise vertices `v_0 .. v_{n-1}` is
//! parametrised as `σ_i(s) = v_i + s (v_{i+1} - v_i)`, `s ∈ [0, 1]`. For a
//! pair of sides the difference `u(s, t) = σ_j(t) - σ_i(s)` is affine, so the
//! norm `‖u‖` is piecewise linear on the unit square and changes slope only
//! where `u` crosses a vertex ray of the polygon. Those crossings are straight
//! lines (cutlines). Cutting along them leaves convex cells on which the norm
//! is linear, and the integral over each cell is its area times the mean of
//! the norm at the cell's corners after triangulation.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::convex::Perimeter;
use crate::error::{Result, SprawlError};
use crate::rational::{cross2, int, inverse, mat_mul, mat_vec, sub, ExactRational, RatPoint};

/// A point `(s, t)` of the parameter square.
pub type ParamPoint = [ExactRational; 2];

/// The segment of the parameter square on which `u(s, t)` points along the
/// ray through vertex `direction`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cutline {
    pub direction: usize,
    pub endpoints: [ParamPoint; 2],
    /// Norm of `u` at the two endpoints.
    pub values: [ExactRational; 2],
}

/// A triangle of the refined square with the norm of `u` at its corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutlineTriangle {
    pub corners: [ParamPoint; 3],
    pub values: [ExactRational; 3],
}

impl CutlineTriangle {
    pub fn area(&self) -> ExactRational {
        let [a, b, c] = &self.corners;
        let ab = [&b[0] - &a[0], &b[1] - &a[1]];
        let ac = [&c[0] - &a[0], &c[1] - &a[1]];
        (&ab[0] * &ac[1] - &ab[1] * &ac[0]).abs() / int(2)
    }

    /// Exact integral of the (linear) norm over the triangle.
    pub fn integral(&self) -> ExactRational {
        let [a, b, c] = &self.values;
        self.area() * (a + b + c) / int(3)
    }
}

/// Cutlines and linear pieces for one ordered side pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidePairDecomposition {
    pub sides: (usize, usize),
    pub cutlines: Vec<Cutline>,
    pub triangles: Vec<CutlineTriangle>,
}

impl SidePairDecomposition {
    /// `∫∫ ‖σ_j(t) - σ_i(s)‖ ds dt`.
    pub fn average(&self) -> ExactRational {
        self.triangles
            .iter()
            .fold(ExactRational::zero(), |acc, t| acc + t.integral())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SprawlExact {
    pub value: ExactRational,
    /// `side_pair_matrix[i][j]` is the average distance between sides `i` and `j`.
    pub side_pair_matrix: Vec<Vec<ExactRational>>,
    /// Cone measure of each side.
    pub weights: Vec<ExactRational>,
}

/// Result of mapping a hexagon onto the normal form `H_{x,y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexagonNormalForm {
    pub x: ExactRational,
    pub y: ExactRational,
    /// Rows of the linear map taking the input onto `H_{x,y}`.
    pub transform: Vec<RatPoint>,
}

fn planar(l: &Perimeter) -> Result<()> {
    if l.dimension() != 2 {
        return Err(SprawlError::NotPlanar(l.dimension()));
    }
    Ok(())
}

fn side(l: &Perimeter, i: usize) -> (&RatPoint, RatPoint) {
    let n = l.vertices().len();
    let v = &l.vertices()[i];
    let w = &l.vertices()[(i + 1) % n];
    (v, sub(w, v))
}

/// Affine map `(s, t) -> u` for the side pair `(i, j)`.
struct PairMap {
    c0: RatPoint,
    e1: RatPoint,
    e2: RatPoint,
}

impl PairMap {
    fn new(l: &Perimeter, i: usize, j: usize) -> Self {
        let (v, e1) = side(l, i);
        let (p, e2) = side(l, j);
        PairMap {
            c0: sub(p, v),
            e1,
            e2,
        }
    }

    fn at(&self, s: &ExactRational, t: &ExactRational) -> RatPoint {
        (0..2)
            .map(|k| &self.c0[k] + t * &self.e2[k] - s * &self.e1[k])
            .collect()
    }

    /// Coefficients `(c, a, b)` of `cross(u(s, t), θ) = c - a s + b t`.
    fn cross_with(&self, th: &[ExactRational]) -> (ExactRational, ExactRational, ExactRational) {
        (cross2(&self.c0, th), cross2(&self.e1, th), cross2(&self.e2, th))
    }
}

fn corner_points() -> [ParamPoint; 4] {
    [
        [int(0), int(0)],
        [int(1), int(0)],
        [int(1), int(1)],
        [int(0), int(1)],
    ]
}

fn on_square_boundary(p: &ParamPoint) -> bool {
    let zero = int(0);
    let one = int(1);
    p.iter().any(|c| *c == zero || *c == one)
}

/// Splits a convex polygon by the sign of the affine function `g`; returns
/// the parts with `g >= 0` and `g <= 0`, and the new points created on edges.
fn split(
    poly: &[ParamPoint],
    g: impl Fn(&ParamPoint) -> ExactRational,
) -> (Vec<ParamPoint>, Vec<ParamPoint>, Vec<ParamPoint>) {
    let vals: Vec<ExactRational> = poly.iter().map(&g).collect();
    let mut pos = Vec::new();
    let mut negs = Vec::new();
    let mut fresh = Vec::new();
    for k in 0..poly.len() {
        let (a, ga) = (&poly[k], &vals[k]);
        let (b, gb) = (&poly[(k + 1) % poly.len()], &vals[(k + 1) % poly.len()]);
        if !ga.is_negative() {
            pos.push(a.clone());
        }
        if !ga.is_positive() {
            negs.push(a.clone());
        }
        if (ga.is_positive() && gb.is_negative()) || (ga.is_negative() && gb.is_positive()) {
            let r = ga / (ga - gb);
            let q = [&a[0] + &r * (&b[0] - &a[0]), &a[1] + &r * (&b[1] - &a[1])];
            pos.push(q.clone());
            negs.push(q.clone());
            fresh.push(q);
        }
    }
    (pos, negs, fresh)
}

fn dedup_cyclic(mut poly: Vec<ParamPoint>) -> Vec<ParamPoint> {
    poly.dedup();
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    poly
}

/// Cutlines and triangulated linear pieces for sides `i` and `j`.
pub fn side_pair_decomposition(l: &Perimeter, i: usize, j: usize) -> Result<SidePairDecomposition> {
    planar(l)?;
    let n = l.vertices().len();
    if i >= n || j >= n {
        return Err(SprawlError::InvalidInput(format!(
            "side index out of range: ({i}, {j}) for {n} sides"
        )));
    }
    let map = PairMap::new(l, i, j);
    let mut norm_cache: BTreeMap<ParamPoint, ExactRational> = BTreeMap::new();
    let mut norm_at = |p: &ParamPoint| -> ExactRational {
        norm_cache
            .entry(p.clone())
            .or_insert_with(|| l.norm_unchecked(&map.at(&p[0], &p[1])))
            .clone()
    };

    let cells: Vec<Vec<ParamPoint>>;
    let mut cutlines = Vec::new();
    if i == j {
        // u = (t - s) e1 runs through the origin; the diagonal is the only break
        let [c00, c10, c11, c01] = corner_points();
        cells = vec![vec![c00.clone(), c10, c11.clone()], vec![c00, c11, c01]];
    } else {
        let corners: Vec<RatPoint> = corner_points().iter().map(|p| map.at(&p[0], &p[1])).collect();
        let nonzero: Vec<&RatPoint> = corners.iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
        let lo = nonzero
            .iter()
            .find(|a| nonzero.iter().all(|b| !cross2(a, b).is_negative()))
            .copied();
        let hi = nonzero
            .iter()
            .find(|a| nonzero.iter().all(|b| !cross2(b, a).is_negative()))
            .copied();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(SprawlError::InvalidInput(format!(
                "sides {i} and {j} span a half-plane or more; polygon is not convex"
            )));
        };
        let mut inside: Vec<usize> = (0..n)
            .filter(|&k| {
                let th = &l.vertices()[k];
                cross2(lo, th).is_positive() && cross2(th, hi).is_positive()
            })
            .collect();
        inside.sort_by(|&a, &b| {
            let c = cross2(&l.vertices()[a], &l.vertices()[b]);
            int(0).cmp(&c)
        });

        let mut rest: Vec<ParamPoint> = corner_points().to_vec();
        let mut done = Vec::new();
        for &k in &inside {
            let (c, a, b) = map.cross_with(&l.vertices()[k]);
            let g = |p: &ParamPoint| &c - &a * &p[0] + &b * &p[1];
            let (before, after, fresh) = split(&rest, g);
            if fresh.iter().any(|p| !on_square_boundary(p)) {
                let prev = cutlines.last().map_or(k, |c: &Cutline| c.direction);
                return Err(SprawlError::CrossingCutlines(prev, k));
            }
            // endpoints: fresh points plus existing cell vertices on the line
            let mut ends: Vec<ParamPoint> = rest.iter().filter(|p| g(p).is_zero()).cloned().collect();
            ends.extend(fresh);
            ends.sort();
            ends.dedup();
            if ends.len() != 2 {
                return Err(SprawlError::CrossingCutlines(k, k));
            }
            let values = [norm_at(&ends[0]), norm_at(&ends[1])];
            cutlines.push(Cutline {
                direction: k,
                endpoints: [ends[0].clone(), ends[1].clone()],
                values,
            });
            done.push(dedup_cyclic(before));
            rest = dedup_cyclic(after);
        }
        done.push(rest);
        cells = done;
    }

    let mut triangles = Vec::new();
    for cell in cells.into_iter().filter(|c| c.len() >= 3) {
        let start = (0..cell.len()).min_by(|&a, &b| cell[a].cmp(&cell[b])).unwrap();
        let m = cell.len();
        for k in 1..m - 1 {
            let corners = [
                cell[start].clone(),
                cell[(start + k) % m].clone(),
                cell[(start + k + 1) % m].clone(),
            ];
            let tri = CutlineTriangle {
                values: [norm_at(&corners[0]), norm_at(&corners[1]), norm_at(&corners[2])],
                corners,
            };
            if !tri.area().is_zero() {
                triangles.push(tri);
            }
        }
    }
    Ok(SidePairDecomposition {
        sides: (i, j),
        cutlines,
        triangles,
    })
}

/// Average distance `∫∫ ‖σ_j(t) - σ_i(s)‖ ds dt` between sides `i` and `j`.
pub fn side_pair_average(l: &Perimeter, i: usize, j: usize) -> Result<ExactRational> {
    planar(l)?;
    if i == j && i < l.vertices().len() {
        let (_, e) = side(l, i);
        return Ok(l.norm_unchecked(&e) / int(3));
    }
    Ok(side_pair_decomposition(l, i, j)?.average())
}

/// Exact sprawl `Σ w_i w_j E_ij` of a planar perimeter.
pub fn sprawl_exact(l: &Perimeter) -> Result<SprawlExact> {
    planar(l)?;
    let n = l.vertices().len();
    let h = n / 2;
    // E_ij = E_ji and E_{i+h, j+h} = E_ij by central symmetry
    let canon = |i: usize, j: usize| {
        [(i, j), (j, i), ((i + h) % n, (j + h) % n), ((j + h) % n, (i + h) % n)]
            .into_iter()
            .min()
            .unwrap()
    };
    let mut reps: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| canon(i, j)).collect();
    reps.sort();
    reps.dedup();
    let values: Vec<ExactRational> = reps
        .par_iter()
        .map(|&(i, j)| side_pair_average(l, i, j))
        .collect::<Result<_>>()?;
    let table: HashMap<(usize, usize), ExactRational> = reps.into_iter().zip(values).collect();
    let matrix: Vec<Vec<ExactRational>> = (0..n)
        .map(|i| (0..n).map(|j| table[&canon(i, j)].clone()).collect())
        .collect();
    let weights = l.cone_weights();
    let mut value = ExactRational::zero();
    for i in 0..n {
        for j in 0..n {
            value += &weights[i] * &weights[j] * &matrix[i][j];
        }
    }
    Ok(SprawlExact {
        value,
        side_pair_matrix: matrix,
        weights,
    })
}

/// Maps a centrally symmetric hexagon linearly onto `H_{x,y}` with
/// `x >= 1, y >= 0, x + y <= 2`. Parallelograms map onto the square `H_{1,0}`.
pub fn hexagon_normalize(l: &Perimeter) -> Result<HexagonNormalForm> {
    planar(l)?;
    let n = l.vertices().len();
    if n != 4 && n != 6 {
        return Err(SprawlError::NotHexagon(n));
    }
    // counterclockwise, starting at the first vertex of nonnegative angle
    let upper = |p: &RatPoint| p[1].is_positive() || (p[1].is_zero() && p[0].is_positive());
    let mut ccw: Vec<RatPoint> = l.vertices().iter().rev().cloned().collect();
    let start = (0..n)
        .min_by(|&a, &b| {
            let (pa, pb) = (&ccw[a], &ccw[b]);
            upper(pb).cmp(&upper(pa)).then_with(|| int(0).cmp(&cross2(pa, pb)))
        })
        .unwrap();
    ccw.rotate_left(start);

    let target = vec![vec![int(1), int(-1)], vec![int(1), int(1)]];
    let reflect = vec![vec![int(1), int(0)], vec![int(0), int(-1)]];
    let triples = if n == 4 { 1 } else { 3 };
    for k in 0..triples {
        let (a, b, c) = (&ccw[k], &ccw[(k + 1) % n], &ccw[(k + 2) % n]);
        let basis = vec![vec![b[0].clone(), c[0].clone()], vec![b[1].clone(), c[1].clone()]];
        let inv = inverse(&basis).ok_or(SprawlError::SingularMatrix)?;
        let mut t = mat_mul(&target, &inv);
        if n == 4 {
            return Ok(HexagonNormalForm {
                x: int(1),
                y: int(0),
                transform: t,
            });
        }
        let img = mat_vec(&t, a);
        let (x, mut y) = (img[0].clone(), img[1].clone());
        if &x + y.abs() <= int(2) {
            if y.is_negative() {
                t = mat_mul(&reflect, &t);
                y = -y;
            }
            return Ok(HexagonNormalForm { x, y, transform: t });
        }
    }
    Err(SprawlError::NotHexagon(n))
}
