//! Integer polygons approaching the circle: exact sprawl tends to 4/π.

use sprawl::convex::{approximate_circle, approximate_circle_with_angles};
use sprawl::cutline::sprawl_exact;
use sprawl::rational::to_f64;

fn main() -> sprawl::Result<()> {
    let limit = 4.0 / std::f64::consts::PI;
    println!(" scale  vertices  E - 4/π");
    for scale in [10, 25, 50, 100, 200] {
        let l = approximate_circle(scale)?;
        let e = to_f64(&sprawl_exact(&l)?.value);
        println!("{scale:>6}  {:>8}  {:.3e}", l.vertices().len(), e - limit);
    }
    println!("\nfixed scale 400, finer angle grids:");
    for angles in [16, 32, 64, 80] {
        let l = approximate_circle_with_angles(400, angles)?;
        let e = to_f64(&sprawl_exact(&l)?.value);
        println!("{angles:>6}  {:>8}  {:.3e}", l.vertices().len(), e - limit);
    }
    Ok(())
}
