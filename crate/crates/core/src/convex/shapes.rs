//! Named perimeters: cubes, orthoplexes, the hexagons `H_{x,y}` and integer
//! approximations of round circles and regular polygons.

use std::f64::consts::PI;

use crate::error::{Result, SprawlError};
use crate::rational::{int, ExactRational, RatPoint};

use super::perimeter::Perimeter;

/// Boundary of `[-1, 1]^d`.
pub fn cube(d: usize) -> Result<Perimeter> {
    if d == 0 || d > 12 {
        return Err(SprawlError::UnsupportedParameter(format!("cube dimension {d}")));
    }
    let pts = (0..1u32 << d)
        .map(|m| (0..d).map(|i| if m >> i & 1 == 1 { int(1) } else { int(-1) }).collect())
        .collect();
    Perimeter::from_points(d, pts)
}

/// Boundary of the cross-polytope `conv(±e_i)`.
pub fn orthoplex(d: usize) -> Result<Perimeter> {
    if d == 0 {
        return Err(SprawlError::UnsupportedParameter("orthoplex dimension 0".into()));
    }
    let mut pts = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [1, -1] {
            let mut v = vec![int(0); d];
            v[i] = int(s);
            pts.push(v);
        }
    }
    Perimeter::from_points(d, pts)
}

/// The hexagon with vertices `±(x, y), ±(1, 1), ±(-1, 1)`.
///
/// Degenerates to the square when `(x, y)` sits on the square's boundary.
pub fn hexagon_xy(x: &ExactRational, y: &ExactRational) -> Result<Perimeter> {
    let v1 = vec![x.clone(), y.clone()];
    let pts = vec![
        v1.clone(),
        vec![int(1), int(1)],
        vec![int(-1), int(1)],
        v1.iter().map(|c| -c).collect(),
        vec![int(-1), int(-1)],
        vec![int(1), int(-1)],
    ];
    Perimeter::from_points(2, pts)
}

fn round_half_away(x: f64) -> i64 {
    x.round() as i64
}

/// Integer points `round(scale * (cos θ_k, sin θ_k))` over `angles` equally
/// spaced angles starting at θ_0 = 0. Only the first half of the angles is
/// rounded; the other half are the exact negatives.
fn rounded_ring(scale: u64, angles: usize, phase: f64) -> Vec<RatPoint> {
    let half = angles / 2;
    let mut pts = Vec::with_capacity(2 * half);
    for k in 0..half {
        let th = phase + 2.0 * PI * k as f64 / angles as f64;
        let x = round_half_away(scale as f64 * th.cos());
        let y = round_half_away(scale as f64 * th.sin());
        pts.push(vec![int(x), int(y)]);
        pts.push(vec![int(-x), int(-y)]);
    }
    pts
}

/// Default number of grid angles for a circle approximation at `scale`.
///
/// Grows like `scale^(1/3)`, which balances the polygonal error (order
/// `angles^-4`) against the rounding error of the vertices.
pub fn default_circle_angles(scale: u64) -> usize {
    let k = (scale as f64).cbrt().round() as usize;
    4 * k.max(2)
}

/// Integer polygon approximating the circle of radius `scale`.
pub fn approximate_circle(scale: u64) -> Result<Perimeter> {
    approximate_circle_with_angles(scale, default_circle_angles(scale))
}

pub fn approximate_circle_with_angles(scale: u64, angles: usize) -> Result<Perimeter> {
    if scale < 1 {
        return Err(SprawlError::UnsupportedParameter("circle scale must be positive".into()));
    }
    if angles < 4 || angles % 2 != 0 {
        return Err(SprawlError::UnsupportedParameter(format!(
            "circle grid needs an even number of angles >= 4, got {angles}"
        )));
    }
    Perimeter::from_points(2, rounded_ring(scale, angles, 0.0))
}

/// Integer approximation of the regular `sides`-gon with circumradius `scale`
/// (even `sides` only; odd regular polygons are not centrally symmetric).
pub fn approximate_regular_polygon(sides: usize, scale: u64) -> Result<Perimeter> {
    if sides < 4 || sides % 2 != 0 {
        return Err(SprawlError::UnsupportedParameter(format!(
            "regular polygon needs an even side count >= 4, got {sides}"
        )));
    }
    let p = Perimeter::from_points(2, rounded_ring(scale, sides, 0.0))?;
    if p.vertices().len() != sides {
        return Err(SprawlError::UnsupportedParameter(format!(
            "scale {scale} too small to resolve a regular {sides}-gon"
        )));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, to_f64};

    #[test]
    fn cube_and_orthoplex_counts() {
        for d in 1..=4 {
            let c = cube(d).unwrap();
            assert_eq!(c.vertices().len(), 1 << d);
            assert_eq!(c.functionals().len(), 2 * d);
            let o = orthoplex(d).unwrap();
            assert_eq!(o.vertices().len(), 2 * d);
            assert_eq!(o.functionals().len(), 1 << d);
        }
        assert_eq!(cube(3).unwrap().volume(), &int(8));
        assert_eq!(orthoplex(3).unwrap().volume(), &rat(4, 3));
    }

    #[test]
    fn hexagon_family_degenerates_to_square() {
        assert_eq!(hexagon_xy(&int(2), &int(0)).unwrap().vertices().len(), 6);
        assert_eq!(hexagon_xy(&int(1), &int(0)).unwrap().vertices().len(), 4);
        assert_eq!(hexagon_xy(&int(1), &int(1)).unwrap().vertices().len(), 4);
        assert_eq!(hexagon_xy(&rat(3, 2), &rat(1, 4)).unwrap().vertices().len(), 6);
    }

    #[test]
    fn small_circles() {
        let c = approximate_circle_with_angles(5, 8).unwrap();
        assert_eq!(c.vertices().len(), 8);
        assert!(c.vertices().contains(&vec![int(4), int(4)]));
        let c1 = approximate_circle_with_angles(1, 8).unwrap();
        assert_eq!(c1.vertices().len(), 4);
        assert!(approximate_circle_with_angles(5, 7).is_err());
    }

    #[test]
    fn circle_hausdorff_bound() {
        // vertices within rounding distance of the circle, edges within the sagitta
        for scale in [20u64, 50, 200] {
            let c = approximate_circle(scale).unwrap();
            let n = c.vertices().len();
            let r = scale as f64;
            for k in 0..n {
                let a: Vec<f64> = c.vertices()[k].iter().map(to_f64).collect();
                let b: Vec<f64> = c.vertices()[(k + 1) % n].iter().map(to_f64).collect();
                assert!((a[0].hypot(a[1]) - r).abs() <= 0.75);
                let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
                let sagitta = r * (1.0 - (PI / n as f64).cos());
                assert!(r - mid[0].hypot(mid[1]) <= sagitta + 1.0, "edge too far inside at scale {scale}");
            }
        }
    }
}
