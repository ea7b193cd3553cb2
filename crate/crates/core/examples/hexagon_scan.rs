//! Every centrally symmetric hexagon is linearly equivalent to some H_{x,y};
//! its sprawl ranges over [23/18, 4/3].

use sprawl::closed_forms::{hexagon_formula, hexagon_grid};
use sprawl::convex::{hexagon_xy, hull};
use sprawl::cutline::{hexagon_normalize, sprawl_exact};
use sprawl::lattice::parse_gens;

fn main() -> sprawl::Result<()> {
    let (set, _) = parse_gens("3 1\n1 0\n2 1\n")?;
    let l = hull(&set)?;
    let nf = hexagon_normalize(&l)?;
    println!("lattice hexagon {:?}", l.vertices().iter().map(|v| format!("({}, {})", v[0], v[1])).collect::<Vec<_>>());
    println!("normal form H_({}, {}), E = {}", nf.x, nf.y, sprawl_exact(&l)?.value);
    println!("formula       {}", hexagon_formula(&nf.x, &nf.y));

    let grid = hexagon_grid(8);
    let mut values = Vec::new();
    for (x, y) in &grid {
        values.push((sprawl_exact(&hexagon_xy(x, y)?)?.value, x.clone(), y.clone()));
    }
    values.sort();
    let (lo, hi) = (&values[0], &values[values.len() - 1]);
    println!("{} grid hexagons: min {} at ({}, {}), max {} at ({}, {})", grid.len(), lo.0, lo.1, lo.2, hi.0, hi.1, hi.2);
    Ok(())
}
