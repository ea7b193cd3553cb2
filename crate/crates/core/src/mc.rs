//! Monte Carlo estimates of sprawl in any dimension.
//!
//! Pairs are drawn in fixed-size chunks. Chunk `c` uses a ChaCha8 generator
//! keyed by the seed on stream `c`, and chunk statistics are merged in chunk
//! order, so results are bit-identical for any number of worker threads.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convex::Perimeter;
use crate::error::{Result, SprawlError};
use crate::rational::to_f64;

/// Pairs per deterministic work unit.
pub const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SprawlEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples`.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub shape: String,
}

/// Cone-measure sampler for a polytope boundary, in floating point.
#[derive(Debug, Clone)]
pub struct FacetSampler {
    dimension: usize,
    functionals: Vec<Vec<f64>>,
    facets: WeightedIndex<f64>,
    /// Per facet, its simplices as lists of vertex coordinates.
    simplices: Vec<Vec<Vec<Vec<f64>>>>,
    simplex_pick: Vec<WeightedIndex<f64>>,
}

impl FacetSampler {
    pub fn new(l: &Perimeter) -> Self {
        let verts: Vec<Vec<f64>> = l.vertices().iter().map(|v| v.iter().map(to_f64).collect()).collect();
        let weights: Vec<f64> = l.cone_weights().iter().map(to_f64).collect();
        let simplices = (0..l.facets().len())
            .map(|f| {
                l.facet_simplices(f)
                    .iter()
                    .map(|s| s.iter().map(|&i| verts[i].clone()).collect())
                    .collect()
            })
            .collect();
        // cone volumes over one facet share a height, so they weight by area
        let simplex_pick = (0..l.facets().len())
            .map(|f| {
                let w: Vec<f64> = l.facet_simplex_volumes(f).iter().map(to_f64).collect();
                WeightedIndex::new(w).expect("facet simplices have positive volume")
            })
            .collect();
        FacetSampler {
            dimension: l.dimension(),
            functionals: l.functionals().iter().map(|a| a.iter().map(to_f64).collect()).collect(),
            facets: WeightedIndex::new(weights).expect("cone weights are positive"),
            simplices,
            simplex_pick,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        self.functionals
            .iter()
            .map(|a| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Writes a cone-measure point into `out` and returns its facet index.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64], scratch: &mut Vec<f64>) -> usize {
        let f = self.facets.sample(rng);
        let simplex = &self.simplices[f][self.simplex_pick[f].sample(rng)];
        // sorted uniforms: their spacings are uniform barycentric coordinates
        scratch.clear();
        scratch.extend((1..simplex.len()).map(|_| rng.random::<f64>()));
        scratch.sort_by(f64::total_cmp);
        out.iter_mut().for_each(|x| *x = 0.0);
        let mut prev = 0.0;
        for (k, v) in simplex.iter().enumerate() {
            let next = scratch.get(k).copied().unwrap_or(1.0);
            let w = next - prev;
            prev = next;
            for (o, c) in out.iter_mut().zip(v) {
                *o += w * c;
            }
        }
        f
    }

    pub fn sample_cone<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension];
        self.sample_into(rng, &mut out, &mut Vec::new());
        out
    }
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64) / n as f64,
        }
    }
}

/// Runs `draw` `samples` times over deterministic chunked streams.
pub(crate) fn estimate<S, I, F>(samples: u64, seed: u64, init: I, draw: F) -> (f64, f64)
where
    I: Fn() -> S + Sync,
    F: Fn(&mut ChaCha8Rng, &mut S) -> f64 + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let mut state = init();
            let count = CHUNK.min(samples - c * CHUNK);
            let mut m = Moments::default();
            for _ in 0..count {
                m.push(draw(&mut rng, &mut state));
            }
            m
        })
        .collect();
    let m = parts.into_iter().fold(Moments::default(), Moments::merge);
    let var = if m.n > 1 { m.m2 / (m.n - 1) as f64 } else { 0.0 };
    (m.mean, (var / m.n as f64).sqrt())
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < 2 {
        return Err(SprawlError::InvalidInput("need at least 2 samples".into()));
    }
    Ok(())
}

struct PairScratch {
    x: Vec<f64>,
    y: Vec<f64>,
    buf: Vec<f64>,
}

impl PairScratch {
    fn new(d: usize) -> Self {
        PairScratch {
            x: vec![0.0; d],
            y: vec![0.0; d],
            buf: Vec::new(),
        }
    }

    fn distance(&mut self, norm: impl Fn(&[f64]) -> f64) -> f64 {
        for (a, b) in self.x.iter_mut().zip(&self.y) {
            *a -= b;
        }
        norm(&self.x)
    }
}

/// Mean of `‖x - y‖_L` over independent cone-measure pairs.
pub fn sprawl_mc(l: &Perimeter, samples: u64, seed: u64) -> Result<SprawlEstimate> {
    check_samples(samples)?;
    let s = FacetSampler::new(l);
    let (mean, stderr) = estimate(
        samples,
        seed,
        || PairScratch::new(s.dimension),
        |rng, p| {
            s.sample_into(rng, &mut p.x, &mut p.buf);
            s.sample_into(rng, &mut p.y, &mut p.buf);
            p.distance(|v| s.norm(v))
        },
    );
    Ok(SprawlEstimate {
        mean,
        stderr,
        samples,
        seed,
        shape: format!("polytope:{}d/{}v", l.dimension(), l.vertices().len()),
    })
}

fn gaussian_unit<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    loop {
        for x in out.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let r = out.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 0.0 {
            out.iter_mut().for_each(|x| *x /= r);
            return;
        }
    }
}

/// Mean Euclidean distance between independent uniform points of `S^{d-1}`.
pub fn sprawl_mc_sphere(d: usize, samples: u64, seed: u64) -> Result<SprawlEstimate> {
    check_samples(samples)?;
    if d < 2 {
        return Err(SprawlError::UnsupportedParameter(format!("sphere dimension {d} < 2")));
    }
    let (mean, stderr) = estimate(
        samples,
        seed,
        || PairScratch::new(d),
        |rng, p| {
            gaussian_unit(rng, &mut p.x);
            gaussian_unit(rng, &mut p.y);
            p.distance(|v| v.iter().map(|c| c * c).sum::<f64>().sqrt())
        },
    );
    Ok(SprawlEstimate {
        mean,
        stderr,
        samples,
        seed,
        shape: format!("sphere:{d}"),
    })
}

/// Average `‖x - y‖_Ω` over independent uniform points of the solid body.
///
/// A uniform point is a cone-measure boundary point scaled by `u^{1/d}`.
pub fn average_distance_volume(l: &Perimeter, samples: u64, seed: u64) -> Result<SprawlEstimate> {
    check_samples(samples)?;
    let s = FacetSampler::new(l);
    let inv_d = 1.0 / s.dimension as f64;
    let (mean, stderr) = estimate(
        samples,
        seed,
        || PairScratch::new(s.dimension),
        |rng, p| {
            s.sample_into(rng, &mut p.x, &mut p.buf);
            let r: f64 = rng.random::<f64>().powf(inv_d);
            p.x.iter_mut().for_each(|c| *c *= r);
            s.sample_into(rng, &mut p.y, &mut p.buf);
            let r: f64 = rng.random::<f64>().powf(inv_d);
            p.y.iter_mut().for_each(|c| *c *= r);
            p.distance(|v| s.norm(v))
        },
    );
    Ok(SprawlEstimate {
        mean,
        stderr,
        samples,
        seed,
        shape: format!("body:{}d/{}v", l.dimension(), l.vertices().len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::{approximate_circle, cube, hexagon_xy, orthoplex};
    use crate::cutline::sprawl_exact;
    use crate::rational::int;
    use num_traits::Signed;

    fn poly(pts: &[(i64, i64)]) -> Perimeter {
        Perimeter::from_points(2, pts.iter().map(|&(a, b)| vec![int(a), int(b)]).collect()).unwrap()
    }

    fn within(e: &SprawlEstimate, target: f64, k: f64) -> bool {
        (e.mean - target).abs() <= k * e.stderr
    }

    #[test]
    fn square_side_frequencies() {
        let sq = cube(2).unwrap();
        let s = FacetSampler::new(&sq);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 1_000_000;
        let mut counts = [0u64; 4];
        let (mut x, mut buf) = (vec![0.0; 2], Vec::new());
        for _ in 0..n {
            counts[s.sample_into(&mut rng, &mut x, &mut buf)] += 1;
            assert!((s.norm(&x) - 1.0).abs() <= 1e-12);
        }
        let sigma = (n as f64 * 0.25 * 0.75).sqrt();
        for c in counts {
            assert!((c as f64 - n as f64 / 4.0).abs() <= 4.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn knight_octagon_side_classes() {
        let knight = poly(&[(2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)]);
        let s = FacetSampler::new(&knight);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 400_000u64;
        let (mut x, mut buf) = (vec![0.0; 2], Vec::new());
        let mut diagonal = 0u64;
        for _ in 0..n {
            let f = s.sample_into(&mut rng, &mut x, &mut buf);
            assert!((s.norm(&x) - 1.0).abs() <= 1e-12);
            // diagonal sides, functionals (±1/3, ±1/3), have cone measure 3/28 each
            let a = &knight.functionals()[f];
            if a[0].abs() == a[1].abs() {
                diagonal += 1;
            }
        }
        let p = 3.0 / 7.0;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!((diagonal as f64 - n as f64 * p).abs() <= 4.0 * sigma);
    }

    #[test]
    fn boundary_points_in_higher_dimensions() {
        for l in [cube(3).unwrap(), orthoplex(4).unwrap()] {
            let s = FacetSampler::new(&l);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..10_000 {
                let x = s.sample_cone(&mut rng);
                assert!((s.norm(&x) - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn polytope_estimates() {
        let e = sprawl_mc(&cube(2).unwrap(), 1_000_000, 1).unwrap();
        assert!(within(&e, 4.0 / 3.0, 3.0), "{e:?}");
        let e = sprawl_mc(&orthoplex(4).unwrap(), 1_000_000, 2).unwrap();
        assert!(within(&e, 10.0 / 7.0, 3.0), "{e:?}");
    }

    #[test]
    fn sphere_estimates() {
        let pi = std::f64::consts::PI;
        let e = sprawl_mc_sphere(2, 400_000, 5).unwrap();
        assert!(within(&e, 4.0 / pi, 3.0), "{e:?}");
        let e = sprawl_mc_sphere(100, 200_000, 6).unwrap();
        let target = crate::closed_forms::sprawl_formula(&crate::closed_forms::ShapeSpec::Sphere(100), 20)
            .unwrap()
            .to_f64();
        assert!((target - 1.4124).abs() < 1e-4);
        assert!(within(&e, target, 3.0), "{e:?}");
    }

    #[test]
    fn seeds_and_threads() {
        let l = hexagon_xy(&int(2), &int(0)).unwrap();
        let a = sprawl_mc(&l, 50_000, 9).unwrap();
        let b = sprawl_mc(&l, 50_000, 9).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.mean, sprawl_mc(&l, 50_000, 10).unwrap().mean);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let c = one.install(|| sprawl_mc(&l, 50_000, 9).unwrap());
        let d = three.install(|| sprawl_mc(&l, 50_000, 9).unwrap());
        assert_eq!(a.mean.to_bits(), c.mean.to_bits());
        assert_eq!(a.mean.to_bits(), d.mean.to_bits());
        assert!(sprawl_mc(&l, 1, 0).is_err());
    }

    #[test]
    fn linear_image_agrees() {
        let l = poly(&[(3, 1), (1, 2), (-2, 1), (-3, -1), (-1, -2), (2, -1)]);
        let t = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let a = sprawl_mc(&l, 200_000, 1).unwrap();
        let b = sprawl_mc(&l.apply_linear(&t).unwrap(), 200_000, 2).unwrap();
        assert!((a.mean - b.mean).abs() <= 4.0 * a.stderr.hypot(b.stderr));
    }

    #[test]
    fn volume_average() {
        // max(|Δx|, |Δy|) on [-1, 1]^2: P(D <= r) = (r - r^2/4)^2, so E D = 14/15
        let oracle = {
            let m = 20_000;
            let h = 2.0 / m as f64;
            2.0 - (0..m)
                .map(|k| {
                    let r = (k as f64 + 0.5) * h;
                    (r - r * r / 4.0).powi(2) * h
                })
                .sum::<f64>()
        };
        assert!((oracle - 14.0 / 15.0).abs() < 1e-6);
        let sq = cube(2).unwrap();
        let ad_sq = average_distance_volume(&sq, 400_000, 4).unwrap();
        assert!(within(&ad_sq, oracle, 3.0), "{ad_sq:?}");
        let disk = approximate_circle(200).unwrap();
        let ad_disk = average_distance_volume(&disk, 400_000, 5).unwrap();
        assert!(ad_disk.mean + 4.0 * ad_disk.stderr < ad_sq.mean);
        assert!((ad_disk.mean - 128.0 / (45.0 * std::f64::consts::PI)).abs() < 4.0 * ad_disk.stderr + 1e-4);
        let hex = hexagon_xy(&int(2), &int(0)).unwrap();
        for l in [&sq, &hex] {
            let ad = average_distance_volume(l, 200_000, 6).unwrap();
            let e = crate::rational::to_f64(&sprawl_exact(l).unwrap().value);
            assert!(ad.mean + 4.0 * ad.stderr < e);
        }
    }
}
