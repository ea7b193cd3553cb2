//! Spheres and word-metric sprawl on Cayley graphs of Z^d and F_2.

use sprawl::cayley::{bfs_spheres, empirical_sprawl, growth, word_metric_sandwich, FreeAbelian, FreeGroup, PairMode, DEFAULT_BUDGET};
use sprawl::lattice::parse_gens;
use sprawl::GeneratorSet;

fn main() -> sprawl::Result<()> {
    let z2 = FreeAbelian { dimension: 2 };
    let std2 = FreeAbelian::generators(&GeneratorSet::standard(2));
    let rows = empirical_sprawl(&z2, &std2, &[5, 10, 20, 50, 100], PairMode::Exact, DEFAULT_BUDGET)?.rows;
    println!("Z^2 standard generators, E_n -> 4/3:");
    for r in &rows {
        println!("  n = {:>3}  |S_n| = {:>4}  E_n = {:.8}", r.n, r.sphere_size, r.value);
    }

    let f2 = FreeGroup { rank: 2 };
    let gens = f2.standard_generators();
    let spheres = bfs_spheres(&f2, &gens, 6, DEFAULT_BUDGET)?;
    println!("\nF_2 sphere sizes {:?}, ball sizes {:?}", spheres.iter().map(Vec::len).collect::<Vec<_>>(), growth::<FreeGroup>(&spheres));
    for r in empirical_sprawl(&f2, &gens, &[1, 2, 4, 6], PairMode::Exact, DEFAULT_BUDGET)?.rows {
        println!("  n = {}  E_n = {:.6}", r.n, r.value);
    }

    let (knight, _) = parse_gens("2 1\n1 2\n-1 2\n-2 1\n")?;
    for n in [10, 20, 40] {
        let s = word_metric_sandwich(&knight, n, DEFAULT_BUDGET)?;
        println!("knight moves, ball of radius {n}: |w| - ‖w‖ in [{}, {}]", s.min_gap, s.max_gap);
    }
    Ok(())
}
