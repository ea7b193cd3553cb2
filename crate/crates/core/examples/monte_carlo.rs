//! Cone-measure Monte Carlo against exact and closed-form values.

use sprawl::closed_forms::{sprawl_formula, ShapeSpec};
use sprawl::convex::{cube, hull, orthoplex};
use sprawl::cutline::sprawl_exact;
use sprawl::lattice::parse_gens;
use sprawl::mc::{average_distance_volume, sprawl_mc, sprawl_mc_sphere};
use sprawl::rational::to_f64;

fn main() -> sprawl::Result<()> {
    let n = 400_000;
    let (set, _) = parse_gens("2 1\n1 2\n-1 2\n-2 1\n")?;
    let knight = hull(&set)?;
    let e = sprawl_mc(&knight, n, 1)?;
    println!("knight octagon: mc {:.5} ± {:.5}, exact {:.5}", e.mean, e.stderr, to_f64(&sprawl_exact(&knight)?.value));

    for d in [3usize, 5, 8] {
        let c = sprawl_mc(&cube(d)?, n, 2)?;
        let o = sprawl_mc(&orthoplex(d)?, n, 3)?;
        let s = sprawl_mc_sphere(d, n, 4)?;
        let f = |spec| sprawl_formula(&spec, 10).map(|v| v.to_f64());
        println!(
            "d = {d}: cube {:.4} ({:.4})  orthoplex {:.4} ({:.4})  sphere {:.4} ({:.4})",
            c.mean,
            f(ShapeSpec::Cube(d as u64))?,
            o.mean,
            f(ShapeSpec::Orthoplex(d as u64))?,
            s.mean,
            f(ShapeSpec::Sphere(d as u64))?
        );
    }

    // the volume average sits below the boundary average
    let sq = cube(2)?;
    let ad = average_distance_volume(&sq, n, 5)?;
    println!("square: AD {:.4} (14/15 = {:.4}), E = 4/3", ad.mean, 14.0 / 15.0);
    Ok(())
}
