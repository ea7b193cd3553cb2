//! Polar bodies and Mahler volumes; roundness by Mahler volume versus sprawl.

use sprawl::convex::{cube, hull};
use sprawl::lattice::parse_gens;
use sprawl::mahler::{mahler_report, polar, regular_polygon_study};
use sprawl::rational::to_f64;

fn main() -> sprawl::Result<()> {
    let (set, _) = parse_gens("2 1\n1 2\n-1 2\n-2 1\n")?;
    let knight = hull(&set)?;
    let p = polar(knight.vrep())?;
    println!("polar of the knight octagon: {:?}", p.vertices().iter().map(|v| format!("({}, {})", v[0], v[1])).collect::<Vec<_>>());
    let r = mahler_report(knight.vrep())?;
    println!("M = {} * {} = {} ≈ {:.5}", r.volume, r.polar_volume, r.mahler, to_f64(&r.mahler));
    println!("Kuperberg {} <= M <= Santaló {}", r.kuperberg_bound.to_decimal(5), r.santalo_bound.to_decimal(5));

    for d in 2..=4 {
        let c = mahler_report(cube(d)?.vrep())?;
        println!("cube({d}): M = {}, Kuperberg {}", c.mahler, c.kuperberg_bound.to_decimal(5));
    }

    // Mahler volume rises steadily, sprawl does not
    let sides: Vec<usize> = (4..=24).step_by(2).collect();
    println!("\n sides  Mahler      sprawl");
    for row in regular_polygon_study(&sides, 1_000_000)? {
        println!("{:>6}  {:.8}  {:.10}", row.sides, to_f64(&row.mahler), to_f64(&row.sprawl));
    }
    Ok(())
}
