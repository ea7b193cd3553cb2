//! Word-metric sprawl of the lamplighter group Z_2 ≀ Z, whose Cayley graph
//! for the generators a^k t is the Diestel-Leader graph DL(2, 2).

use sprawl::cayley::lamplighter_sprawl;

fn main() -> sprawl::Result<()> {
    let radii: Vec<usize> = (1..=10).collect();
    let run = lamplighter_sprawl(2, None, &radii, 1_000_000_000, 1)?;
    println!("{} with {} generators", run.group, run.generators);
    for r in &run.rows {
        println!("  n = {:>2}  |S_n| = {:>5}  E_n = {:.6}", r.n, r.sphere_size, r.value);
    }
    // beyond the pair budget the run switches to sampled pairs
    let sampled = lamplighter_sprawl(3, None, &[8], 200_000, 7)?;
    let r = &sampled.rows[0];
    println!("{}: n = 8, |S_n| = {}, E_n = {:.4} ± {:.4}", sampled.group, r.sphere_size, r.value, r.stderr.unwrap_or(0.0));
    Ok(())
}
