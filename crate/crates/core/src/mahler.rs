//! Polar bodies, Mahler volumes and the Kuperberg and Santaló bounds.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::closed_forms::sphere_formula;
use crate::convex::{approximate_regular_polygon, h_from_v, Perimeter, PolytopeV};
use crate::cutline::sprawl_exact;
use crate::error::{Result, SprawlError};
use crate::interval::{bits_for_digits, Interval};
use crate::rational::{factorial, ExactRational};

/// `Ω° = {x : x·y <= 1 for all y in Ω}`: its vertices are the facet
/// functionals of `Ω`.
pub fn polar(p: &PolytopeV) -> Result<PolytopeV> {
    if p.vertices().iter().any(|v| v.iter().all(Zero::is_zero)) {
        return Err(SprawlError::OriginNotInterior);
    }
    let h = h_from_v(p)?;
    PolytopeV::new(p.dimension(), h.functionals().to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MahlerReport {
    pub dimension: usize,
    pub volume: ExactRational,
    pub polar_volume: ExactRational,
    pub mahler: ExactRational,
    /// `(π/4)^d E(Sphere_d) M(Cube_d)`.
    pub kuperberg_bound: Interval,
    /// `vol(B_d)^2`, the value for the round ball.
    pub santalo_bound: Interval,
    /// False only if the lower bound certainly exceeds the Mahler volume,
    /// which would indicate a bug.
    pub kuperberg_holds: bool,
    pub santalo_holds: bool,
}

/// `M(Cube_d) = 2^d * 2^d / d! = 4^d / d!`.
pub fn cube_mahler(d: usize) -> ExactRational {
    ExactRational::new(num_traits::pow(BigInt::from(4), d), factorial(d as u64))
}

/// `q π^k` as an interval.
fn pi_power(q: &ExactRational, k: i32, bits: u32) -> Interval {
    let pi = Interval::pi(bits + 16);
    let p = pi.powi(k.unsigned_abs());
    let p = if k < 0 { p.recip() } else { p };
    p.scale(q).round_out(bits)
}

/// `(π/4)^d E(Sphere_d) 4^d / d! = π^d E(Sphere_d) / d!`.
pub fn kuperberg_bound(d: usize, bits: u32) -> Interval {
    let (q, k) = sphere_formula(d as u64);
    let q = q / ExactRational::from_integer(factorial(d as u64));
    pi_power(&q, k + d as i32, bits)
}

/// `vol(B_d)^2 = π^d / Γ(d/2 + 1)^2`.
pub fn santalo_bound(d: usize, bits: u32) -> Interval {
    let f = |n: u64| ExactRational::from_integer(factorial(n));
    if d % 2 == 0 {
        let g = f(d as u64 / 2);
        pi_power(&(ExactRational::from_integer(1.into()) / (&g * &g)), d as i32, bits)
    } else {
        // Γ(m + 1/2) = (2m)! √π / (4^m m!) with m = (d + 1) / 2
        let m = (d as u64 + 1) / 2;
        let g = f(2 * m) / (ExactRational::from_integer(num_traits::pow(BigInt::from(4), m as usize)) * f(m));
        pi_power(&(ExactRational::from_integer(1.into()) / (&g * &g)), d as i32 - 1, bits)
    }
}

pub fn mahler_report(p: &PolytopeV) -> Result<MahlerReport> {
    let d = p.dimension();
    let body = Perimeter::from_vrep(p.clone())?;
    let dual = Perimeter::from_vrep(polar(p)?)?;
    let volume = body.volume().clone();
    let polar_volume = dual.volume().clone();
    let mahler = &volume * &polar_volume;
    let bits = bits_for_digits(40);
    let kuperberg_bound = kuperberg_bound(d, bits);
    let santalo_bound = santalo_bound(d, bits);
    Ok(MahlerReport {
        dimension: d,
        kuperberg_holds: kuperberg_bound.lo() <= &mahler,
        santalo_holds: &mahler <= santalo_bound.hi(),
        volume,
        polar_volume,
        mahler,
        kuperberg_bound,
        santalo_bound,
    })
}

/// Exact Mahler volume and sprawl of the integer approximation of `P_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularPolygonRow {
    pub sides: usize,
    pub mahler: ExactRational,
    pub sprawl: ExactRational,
}

/// Mahler volume and sprawl of integer approximations of the regular
/// polygons with the given (even) side counts at circumradius `scale`.
///
/// Regular polygons are critical points of both quantities under vertex
/// perturbation (by dihedral symmetry), so rounding moves them by
/// `O(scale^-2)` only.
pub fn regular_polygon_study(sides: &[usize], scale: u64) -> Result<Vec<RegularPolygonRow>> {
    sides
        .iter()
        .map(|&x| {
            let l = approximate_regular_polygon(x, scale)?;
            let m = mahler_report(l.vrep())?.mahler;
            Ok(RegularPolygonRow {
                sides: x,
                mahler: m,
                sprawl: sprawl_exact(&l)?.value,
            })
        })
        .collect()
}
