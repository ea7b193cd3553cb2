use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::enumerate_vertices;
use super::hull::{hull_2d, hull_nd, is_symmetric};
use crate::error::{Result, SprawlError};
use crate::lattice::GeneratorSet;
use crate::rational::{
    det, dot, factorial, int, inverse, mat_vec, pairs, rank, transpose, unpairs, ExactRational,
    RatPoint, RationalPair,
};

/// Vertex representation: the extreme points of a centrally symmetric body
/// with the origin in its interior. Planar vertices are stored clockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeV {
    dimension: usize,
    vertices: Vec<RatPoint>,
}

/// Facet representation `{x : a_i . x <= 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeH {
    dimension: usize,
    functionals: Vec<RatPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub vertices: Vec<usize>,
    pub functional: usize,
    /// Cone measure of the facet.
    pub weight: ExactRational,
}

fn check_dims(dimension: usize, points: &[RatPoint]) -> Result<()> {
    if dimension == 0 {
        return Err(SprawlError::InvalidInput("dimension must be at least 1".into()));
    }
    for p in points {
        if p.len() != dimension {
            return Err(SprawlError::DimensionMismatch {
                expected: dimension,
                got: p.len(),
            });
        }
    }
    Ok(())
}

impl PolytopeV {
    /// Convex hull of a centrally symmetric point set; non-extreme points are
    /// discarded.
    pub fn new(dimension: usize, points: Vec<RatPoint>) -> Result<Self> {
        check_dims(dimension, &points)?;
        let nonzero: Vec<RatPoint> = points
            .into_iter()
            .filter(|p| p.iter().any(|x| !x.is_zero()))
            .collect();
        if !is_symmetric(&nonzero) {
            return Err(SprawlError::NotSymmetric);
        }
        let vertices = match dimension {
            1 => {
                let m = nonzero
                    .iter()
                    .map(|p| p[0].abs())
                    .max()
                    .ok_or(SprawlError::NotFullDimensional)?;
                vec![vec![-m.clone()], vec![m]]
            }
            2 => {
                let h = hull_2d(&nonzero);
                if h.len() < 3 {
                    return Err(SprawlError::NotFullDimensional);
                }
                h
            }
            _ => hull_nd(dimension, &nonzero)?.0,
        };
        Ok(PolytopeV {
            dimension,
            vertices,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }
}

impl PolytopeH {
    /// Builds the body `{x : a . x <= 1}`; functionals not supporting a facet
    /// are dropped.
    pub fn new(dimension: usize, functionals: Vec<RatPoint>) -> Result<Self> {
        check_dims(dimension, &functionals)?;
        if !is_symmetric(&functionals) {
            return Err(SprawlError::NotSymmetric);
        }
        let mut uniq = functionals;
        uniq.sort();
        uniq.dedup();
        let verts = enumerate_vertices(dimension, &uniq)?;
        let keep: Vec<RatPoint> = uniq
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let on: Vec<RatPoint> = verts
                    .iter()
                    .filter(|v| v.tight.contains(i))
                    .map(|v| v.point.clone())
                    .collect();
                affine_rank(&on) + 1 == dimension
            })
            .map(|(_, a)| a.clone())
            .collect();
        Ok(PolytopeH {
            dimension,
            functionals: keep,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn functionals(&self) -> &[RatPoint] {
        &self.functionals
    }
}

fn affine_rank(points: &[RatPoint]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let diffs: Vec<RatPoint> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs)
    }
}

/// The covector `a` with `a . v = 1` for `d` points spanning a facet hyperplane.
pub fn facet_functional(points: &[RatPoint]) -> Result<RatPoint> {
    let d = points.len();
    check_dims(d, points)?;
    let inv = inverse(points).ok_or(SprawlError::DegenerateFacet)?;
    // a = M^{-1} 1 where the rows of M are the points
    Ok(inv.iter().map(|row| row.iter().fold(int(0), |s, x| s + x)).collect())
}

/// Facet functionals of a V-polytope.
pub fn h_from_v(p: &PolytopeV) -> Result<PolytopeH> {
    let functionals = match p.dimension {
        2 => {
            let n = p.vertices.len();
            (0..n)
                .map(|k| facet_functional(&[p.vertices[k].clone(), p.vertices[(k + 1) % n].clone()]))
                .collect::<Result<Vec<_>>>()?
        }
        _ => enumerate_vertices(p.dimension, &p.vertices)?
            .into_iter()
            .map(|v| v.point)
            .collect(),
    };
    Ok(PolytopeH {
        dimension: p.dimension,
        functionals,
    })
}

/// Vertices of an H-polytope.
pub fn v_from_h(h: &PolytopeH) -> Result<PolytopeV> {
    let pts: Vec<RatPoint> = enumerate_vertices(h.dimension, &h.functionals)?
        .into_iter()
        .map(|v| v.point)
        .collect();
    PolytopeV::new(h.dimension, pts)
}

/// Boundary of a centrally symmetric convex polytope together with its dual
/// representation, facet incidences, a fan triangulation of every facet and
/// the cone measure of every facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perimeter {
    vrep: PolytopeV,
    hrep: PolytopeH,
    facets: Vec<Facet>,
    /// Per facet, its (d-1)-simplices as vertex-index lists.
    simplices: Vec<Vec<Vec<usize>>>,
    /// Per facet and simplex, the volume of the cone over it from the origin.
    simplex_volumes: Vec<Vec<ExactRational>>,
    volume: ExactRational,
}

impl Perimeter {
    pub fn from_points(dimension: usize, points: Vec<RatPoint>) -> Result<Self> {
        Self::from_vrep(PolytopeV::new(dimension, points)?)
    }

    pub fn from_vrep(vrep: PolytopeV) -> Result<Self> {
        let hrep = h_from_v(&vrep)?;
        Self::assemble(vrep, hrep)
    }

    /// Joins matching V- and H-representations.
    fn assemble(vrep: PolytopeV, hrep: PolytopeH) -> Result<Self> {
        let d = vrep.dimension;
        let (facet_sets, simplices): (Vec<Vec<usize>>, Vec<Vec<Vec<usize>>>) = if d <= 2 {
            let n = vrep.vertices.len();
            let sets: Vec<Vec<usize>> = if d == 1 {
                vec![vec![0], vec![1]]
            } else {
                (0..n).map(|k| vec![k, (k + 1) % n]).collect()
            };
            let simp = sets.iter().map(|s| vec![s.clone()]).collect();
            (sets, simp)
        } else {
            let sets: Vec<Vec<usize>> = hrep
                .functionals
                .iter()
                .map(|a| {
                    (0..vrep.vertices.len())
                        .filter(|&i| dot(a, &vrep.vertices[i]) == int(1))
                        .collect()
                })
                .collect();
            let simp = sets
                .iter()
                .map(|s| triangulate_face(s, d - 1, &sets, &vrep.vertices))
                .collect();
            (sets, simp)
        };
        let functionals = if d == 1 {
            vrep.vertices
                .iter()
                .map(|v| vec![v[0].recip()])
                .collect()
        } else {
            hrep.functionals.clone()
        };
        for (a, set) in functionals.iter().zip(&facet_sets) {
            if set.iter().any(|&i| dot(a, &vrep.vertices[i]) != int(1)) {
                return Err(SprawlError::DegenerateFacet);
            }
        }
        let dfact = ExactRational::from_integer(factorial(d as u64));
        let simplex_volumes: Vec<Vec<ExactRational>> = simplices
            .iter()
            .map(|facet| {
                facet
                    .iter()
                    .map(|s| {
                        let rows: Vec<RatPoint> = s.iter().map(|&i| vrep.vertices[i].clone()).collect();
                        det(&rows).abs() / &dfact
                    })
                    .collect()
            })
            .collect();
        let cone: Vec<ExactRational> = simplex_volumes
            .iter()
            .map(|v| v.iter().fold(ExactRational::zero(), |s, x| s + x))
            .collect();
        let volume = cone.iter().fold(ExactRational::zero(), |s, x| s + x);
        if volume.is_zero() {
            return Err(SprawlError::NotFullDimensional);
        }
        let facets = facet_sets
            .into_iter()
            .zip(&cone)
            .enumerate()
            .map(|(k, (vertices, c))| Facet {
                vertices,
                functional: k,
                weight: c / &volume,
            })
            .collect();
        Ok(Perimeter {
            hrep: PolytopeH {
                dimension: d,
                functionals,
            },
            vrep,
            facets,
            simplices,
            simplex_volumes,
            volume,
        })
    }

    pub fn dimension(&self) -> usize {
        self.vrep.dimension
    }

    pub fn vrep(&self) -> &PolytopeV {
        &self.vrep
    }

    pub fn hrep(&self) -> &PolytopeH {
        &self.hrep
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vrep.vertices
    }

    pub fn functionals(&self) -> &[RatPoint] {
        &self.hrep.functionals
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_simplices(&self, facet: usize) -> &[Vec<usize>] {
        &self.simplices[facet]
    }

    pub fn facet_simplex_volumes(&self, facet: usize) -> &[ExactRational] {
        &self.simplex_volumes[facet]
    }

    /// Minkowski norm `max_i a_i . x`.
    pub fn norm(&self, x: &[ExactRational]) -> Result<ExactRational> {
        if x.len() != self.dimension() {
            return Err(SprawlError::DimensionMismatch {
                expected: self.dimension(),
                got: x.len(),
            });
        }
        Ok(self.norm_unchecked(x))
    }

    pub(crate) fn norm_unchecked(&self, x: &[ExactRational]) -> ExactRational {
        self.hrep
            .functionals
            .iter()
            .map(|a| dot(a, x))
            .max()
            .expect("perimeter has facets")
    }

    /// Cone measure of every facet, in facet order. Sums to one.
    pub fn cone_weights(&self) -> Vec<ExactRational> {
        self.facets.iter().map(|f| f.weight.clone()).collect()
    }

    /// Lebesgue volume of the enclosed body.
    pub fn volume(&self) -> &ExactRational {
        &self.volume
    }

    /// Image under the invertible linear map whose matrix has rows `t`.
    pub fn apply_linear(&self, t: &[RatPoint]) -> Result<Perimeter> {
        let d = self.dimension();
        if t.len() != d || t.iter().any(|r| r.len() != d) {
            return Err(SprawlError::DimensionMismatch {
                expected: d,
                got: t.len(),
            });
        }
        let inv = inverse(t).ok_or(SprawlError::SingularMatrix)?;
        let verts: Vec<RatPoint> = self.vertices().iter().map(|v| mat_vec(t, v)).collect();
        if d <= 2 {
            return Perimeter::from_points(d, verts);
        }
        // functionals transform by the inverse transpose
        let inv_t = transpose(&inv);
        let functionals: Vec<RatPoint> = self.functionals().iter().map(|a| mat_vec(&inv_t, a)).collect();
        let mut vertices = verts;
        vertices.sort();
        let mut functionals = functionals;
        functionals.sort();
        Perimeter::assemble(
            PolytopeV {
                dimension: d,
                vertices,
            },
            PolytopeH {
                dimension: d,
                functionals,
            },
        )
    }

    pub fn to_json(&self) -> PerimeterJson {
        PerimeterJson {
            dimension: self.dimension(),
            vertices: self.vertices().iter().map(|v| pairs(v)).collect(),
            functionals: self.functionals().iter().map(|a| pairs(a)).collect(),
            weights: pairs(&self.cone_weights()),
        }
    }

    /// Rebuilds from JSON, checking that the stored functionals and weights
    /// agree with the ones recomputed from the vertices.
    pub fn from_json(json: &PerimeterJson) -> Result<Perimeter> {
        let verts: Vec<RatPoint> = json.vertices.iter().map(|v| unpairs(v)).collect();
        let p = Perimeter::from_points(json.dimension, verts.clone())?;
        let same_vertices = p.vertices() == verts.as_slice();
        let same_functionals =
            p.functionals().iter().map(|a| pairs(a)).collect::<Vec<_>>() == json.functionals;
        let same_weights = pairs(&p.cone_weights()) == json.weights;
        if !(same_vertices && same_functionals && same_weights) {
            return Err(SprawlError::InvalidInput(
                "perimeter JSON is not in canonical form or is inconsistent".into(),
            ));
        }
        Ok(p)
    }
}

/// Perimeter file schema; rationals as `[numerator, denominator]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerimeterJson {
    pub dimension: usize,
    pub vertices: Vec<Vec<RationalPair>>,
    pub functionals: Vec<Vec<RationalPair>>,
    pub weights: Vec<RationalPair>,
}

/// Boundary of the convex hull of a generating set.
pub fn hull(gens: &GeneratorSet) -> Result<Perimeter> {
    let pts = gens.vectors().iter().map(|v| v.to_rational()).collect();
    Perimeter::from_points(gens.dimension(), pts)
}

/// Exact volume by fan triangulation from the origin.
pub fn volume(p: &PolytopeV) -> Result<ExactRational> {
    Ok(Perimeter::from_vrep(p.clone())?.volume().clone())
}

/// Pulling triangulation of a face given by its vertex indices: cone from
/// the smallest vertex over the triangulated sub-faces not containing it.
fn triangulate_face(
    face: &[usize],
    k: usize,
    facets: &[Vec<usize>],
    vertices: &[RatPoint],
) -> Vec<Vec<usize>> {
    if face.len() == k + 1 {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let face_set: BTreeSet<usize> = face.iter().copied().collect();
    let mut candidates: Vec<BTreeSet<usize>> = Vec::new();
    for f in facets {
        let inter: BTreeSet<usize> = f.iter().copied().filter(|i| face_set.contains(i)).collect();
        if inter.is_empty() || inter.len() == face_set.len() {
            continue;
        }
        if !candidates.contains(&inter) {
            candidates.push(inter);
        }
    }
    let maximal: Vec<&BTreeSet<usize>> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|o| o.len() > c.len() && o.is_superset(c)))
        .collect();
    let mut out = Vec::new();
    for sub in maximal {
        if sub.contains(&apex) {
            continue;
        }
        let sub: Vec<usize> = sub.iter().copied().collect();
        debug_assert_eq!(
            affine_rank(&sub.iter().map(|&i| vertices[i].clone()).collect::<Vec<_>>()),
            k - 1
        );
        for mut s in triangulate_face(&sub, k - 1, facets, vertices) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}
