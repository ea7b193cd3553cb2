//! Closed-form sprawl of regular polygons, spheres, cubes and orthoplexes.

use sprawl::closed_forms::{asymptotic_gap, sprawl_formula, ShapeSpec};

fn main() -> sprawl::Result<()> {
    println!("regular polygons (limit 4/π = {}):", sprawl_formula(&ShapeSpec::Circle, 20)?.decimal());
    for x in (4..=20).step_by(2) {
        let v = sprawl_formula(&ShapeSpec::RegularPolygon(x), 20)?;
        println!("  P_{x:<3} {}", v.decimal());
    }
    // P_{4k} sits above P_{4k-2} from k = 4 on
    for k in [4u64, 10, 50] {
        let a = sprawl_formula(&ShapeSpec::RegularPolygon(4 * k - 2), 40)?.interval;
        let b = sprawl_formula(&ShapeSpec::RegularPolygon(4 * k), 40)?.interval;
        println!("  E(P_{}) > E(P_{}): {}", 4 * k, 4 * k - 2, a.certainly_lt(&b));
    }

    println!("\n  d  sphere                cube                  orthoplex");
    for d in [1u64, 2, 3, 4, 5, 10, 50] {
        let s = sprawl_formula(&ShapeSpec::Sphere(d), 18)?.decimal();
        let c = sprawl_formula(&ShapeSpec::Cube(d), 18)?.decimal();
        let o = sprawl_formula(&ShapeSpec::Orthoplex(d), 18)?.decimal();
        println!("{d:>3}  {s}  {c}  {o}");
    }

    println!("\ngap to the limit divided by its leading term:");
    for spec in [ShapeSpec::RegularPolygon(400), ShapeSpec::Sphere(400), ShapeSpec::Cube(400), ShapeSpec::Orthoplex(400)] {
        println!("  {spec:<14} {:.4}", asymptotic_gap(&spec)?.ratio());
    }
    Ok(())
}
