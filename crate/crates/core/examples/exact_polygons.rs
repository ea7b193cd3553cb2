//! Exact sprawl by the cutline algorithm.

use sprawl::convex::{cube, hull};
use sprawl::cutline::{side_pair_decomposition, sprawl_exact};
use sprawl::lattice::parse_gens;
use sprawl::rational::to_decimal;

fn main() -> sprawl::Result<()> {
    let sets = [
        ("standard", "1 0\n0 1\n"),
        ("hexagonal", "1 0\n0 1\n1 1\n"),
        ("king moves", "1 0\n0 1\n1 1\n1 -1\n"),
        ("knight moves", "2 1\n1 2\n-1 2\n-2 1\n"),
        ("irregular", "3 1\n1 2\n-1 1\n"),
    ];
    for (name, text) in sets {
        let (set, _) = parse_gens(text)?;
        let l = hull(&set)?;
        let e = sprawl_exact(&l)?;
        println!("{name:>13}: {} vertices, E = {} = {}", l.vertices().len(), e.value, to_decimal(&e.value, 12));
    }

    // one side pair of the square in detail
    let sq = cube(2)?;
    let d = side_pair_decomposition(&sq, 0, 1)?;
    println!("\nsquare, sides 0 and 1: {} cutlines, {} triangles", d.cutlines.len(), d.triangles.len());
    for t in &d.triangles {
        println!("  area {:>5}  values {:?}", t.area(), t.values.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    }
    println!("  average {}", d.average());
    Ok(())
}
