//! Hulls, Minkowski norms, cone measure and volumes of lattice polygons.

use sprawl::convex::{hull, Perimeter};
use sprawl::lattice::parse_gens;
use sprawl::rational::{int, rat};

fn main() -> sprawl::Result<()> {
    let (knight, _) = parse_gens("2 1\n1 2\n-1 2\n-2 1\n")?;
    let l = hull(&knight)?;
    println!("knight-move octagon, clockwise:");
    for (v, (a, w)) in l.vertices().iter().zip(l.functionals().iter().zip(l.cone_weights())) {
        println!("  vertex ({}, {})  next side a = ({}, {})  weight {}", v[0], v[1], a[0], a[1], w);
    }
    println!("volume {}", l.volume());
    println!("norm of (3, 4) = {}", l.norm(&[int(3), int(4)])?);

    // volume scales by |det T|, the cone measure does not change
    let t = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
    let img = l.apply_linear(&t)?;
    println!("image under det 1: volume {}, weights equal: {}", img.volume(), img.cone_weights() == l.cone_weights());

    let json = serde_json::to_string(&l.to_json()).expect("serializes");
    let back = Perimeter::from_json(&serde_json::from_str(&json).expect("parses"))?;
    println!("perimeter JSON round trip: {}", back == l);
    println!("half-unit point (1/2, 0) has norm {}", l.norm(&[rat(1, 2), int(0)])?);
    Ok(())
}
