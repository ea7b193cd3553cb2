//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Built with `harness = false` so the lines are printed on every run.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sprawl::cayley::{empirical_sprawl, FreeAbelian, FreeGroup, Lamplighter, PairMode, DEFAULT_BUDGET};
use sprawl::closed_forms::{hexagon_formula, hexagon_grid, sprawl_formula, ShapeSpec};
use sprawl::convex::{approximate_circle, cube, hexagon_xy, hull, orthoplex, Perimeter};
use sprawl::cutline::sprawl_exact;
use sprawl::interval::{bits_for_digits, Interval};
use sprawl::mahler::{mahler_report, polar};
use sprawl::mc::{sprawl_mc, sprawl_mc_sphere};
use sprawl::rational::{int, rat, to_f64, RatPoint};
use sprawl::{ExactRational, GeneratorSet};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

/// Centrally symmetric integer polygon from 2 to 5 random points in `[-r, r]^2`.
fn random_polygon(rng: &mut ChaCha8Rng, r: i64) -> Perimeter {
    loop {
        let k = rng.random_range(2..=5);
        let mut pts: Vec<RatPoint> = Vec::new();
        for _ in 0..k {
            let (a, b) = (rng.random_range(-r..=r), rng.random_range(-r..=r));
            pts.push(vec![int(a), int(b)]);
            pts.push(vec![int(-a), int(-b)]);
        }
        if let Ok(p) = Perimeter::from_points(2, pts) {
            return p;
        }
    }
}

/// Product of 1 to 4 random elementary integer matrices, possibly with a
/// reflection: determinant ±1.
fn random_unimodular(rng: &mut ChaCha8Rng) -> Vec<RatPoint> {
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..rng.random_range(1..=4) {
        let k = rng.random_range(-3..=3);
        let e = match rng.random_range(0..3) {
            0 => [[1, k], [0, 1]],
            1 => [[1, 0], [k, 1]],
            _ => [[0, 1], [1, 0]],
        };
        m = [
            [m[0][0] * e[0][0] + m[0][1] * e[1][0], m[0][0] * e[0][1] + m[0][1] * e[1][1]],
            [m[1][0] * e[0][0] + m[1][1] * e[1][0], m[1][0] * e[0][1] + m[1][1] * e[1][1]],
        ];
    }
    m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn random_invertible(rng: &mut ChaCha8Rng) -> Vec<RatPoint> {
    loop {
        let t: Vec<RatPoint> = (0..2)
            .map(|_| (0..2).map(|_| rat(rng.random_range(-5..=5), rng.random_range(1..=4))).collect())
            .collect();
        if &t[0][0] * &t[1][1] != &t[0][1] * &t[1][0] {
            return t;
        }
    }
}

fn criterion_1() -> Verdict {
    let std2 = GeneratorSet::standard(2);
    let hex = GeneratorSet::symmetric_closure(
        2,
        [[1, 0], [0, 1], [1, 1]].iter().map(|v| sprawl::LatticeVector(v.to_vec())).collect(),
    )
    .unwrap();
    let (a, ta) = timed(|| sprawl_exact(&hull(&std2).unwrap()).unwrap().value);
    let (b, tb) = timed(|| sprawl_exact(&hull(&hex).unwrap()).unwrap().value);
    let secs = Duration::from_secs(1);
    verdict(
        a == rat(4, 3) && b == rat(23, 18) && ta < secs && tb < secs,
        format!("E(std) = {a} in {ta:.2?}, E(hexagon) = {b} in {tb:.2?}"),
    )
}

fn criterion_2() -> Verdict {
    let grid = hexagon_grid(13);
    let ((mismatches, min, max), t) = timed(|| {
        let mut mismatches = 0;
        let (mut min, mut max): (Option<ExactRational>, Option<ExactRational>) = (None, None);
        for (x, y) in &grid {
            let e = sprawl_exact(&hexagon_xy(x, y).unwrap()).unwrap().value;
            if e != hexagon_formula(x, y) {
                mismatches += 1;
            }
            min = Some(min.map_or(e.clone(), |m| m.min(e.clone())));
            max = Some(max.map_or(e.clone(), |m| m.max(e)));
        }
        (mismatches, min.unwrap(), max.unwrap())
    });
    verdict(
        grid.len() >= 100 && mismatches == 0 && min == rat(23, 18) && max == rat(4, 3) && t < Duration::from_secs(30),
        format!("{} grid points, {mismatches} mismatches, min {min}, max {max}, {t:.2?}", grid.len()),
    )
}

fn criterion_3() -> Verdict {
    let digits = 45;
    let bits = bits_for_digits(digits);
    // 4ℕ+2 branch at x = 6: sin(π/6) = 1/2 exactly
    let (x, s) = (int(6), rat(1, 2));
    let branch6 = int(4) / (&x * &s) - rat(2, 3) / &x * &s;
    let p6 = sprawl_formula(&ShapeSpec::RegularPolygon(6), digits).unwrap();
    let p6_ok = branch6 == rat(23, 18) && p6.exact == Some(rat(23, 18));
    // (1 + 2√2)/3
    let oracle8 = Interval::sqrt(&int(2), bits).scale(&int(2));
    let oracle8 = (&oracle8 + &Interval::exact(int(1))).scale(&rat(1, 3));
    let p8 = sprawl_formula(&ShapeSpec::RegularPolygon(8), digits).unwrap().interval;
    let tol = ExactRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 40));
    let p8_ok = p8.within(&oracle8, &tol);
    let p400 = sprawl_formula(&ShapeSpec::RegularPolygon(400), 60).unwrap().interval;
    let circle = Interval::pi(bits_for_digits(60)).recip().scale(&int(4));
    let pi = std::f64::consts::PI;
    let ratio = (&p400 - &circle).to_f64() * 45.0 * 400f64.powi(4) / (16.0 * pi.powi(3));
    verdict(
        p6_ok && p8_ok && (0.95..=1.05).contains(&ratio),
        format!(
            "P6 = {}, P8 = {} (40 digits agree: {p8_ok}), asymptotic ratio at x=400 = {ratio:.6}",
            branch6,
            p8.to_decimal(42)
        ),
    )
}

fn criterion_4() -> Verdict {
    let four_over_pi = 4.0 / std::f64::consts::PI;
    let mut errs = Vec::new();
    for scale in [50, 100] {
        let e = sprawl_exact(&approximate_circle(scale).unwrap()).unwrap().value;
        errs.push(format!("scale {scale}: {:.2e}", to_f64(&e) - four_over_pi));
    }
    let (e, t) = timed(|| sprawl_exact(&approximate_circle(200).unwrap()).unwrap().value);
    let err = to_f64(&e) - four_over_pi;
    verdict(
        err.abs() < 1e-4 && t < Duration::from_secs(120),
        format!("scale 200: E - 4/π = {err:.2e} in {t:.2?} ({})", errs.join(", ")),
    )
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (agree, t) = timed(|| {
        (0..50)
            .filter(|&k| {
                let l = random_polygon(&mut rng, 6);
                let exact = to_f64(&sprawl_exact(&l).unwrap().value);
                let e = sprawl_mc(&l, 100_000, 1000 + k).unwrap();
                (e.mean - exact).abs() <= 4.0 * e.stderr
            })
            .count()
    });
    verdict(
        agree >= 48 && t < Duration::from_secs(120),
        format!("{agree}/50 polygons within 4 stderr, {t:.2?}"),
    )
}

fn criterion_6() -> Verdict {
    let n = 1_000_000;
    let mut parts = Vec::new();
    let mut pass = true;
    let runs: [(&str, f64, Box<dyn Fn() -> sprawl::mc::SprawlEstimate>); 3] = [
        ("cube:3", 64.0 / 45.0, Box::new(move || sprawl_mc(&cube(3).unwrap(), n, 61).unwrap())),
        ("orthoplex:3", 7.0 / 5.0, Box::new(move || sprawl_mc(&orthoplex(3).unwrap(), n, 62).unwrap())),
        ("sphere:3", 4.0 / 3.0, Box::new(move || sprawl_mc_sphere(3, n, 63).unwrap())),
    ];
    for (name, target, run) in runs {
        let (e, t) = timed(run);
        let z = (e.mean - target) / e.stderr;
        pass &= z.abs() <= 3.0 && t < Duration::from_secs(60);
        parts.push(format!("{name} z = {z:+.2} ({t:.2?})"));
    }
    verdict(pass, parts.join(", "))
}

fn criterion_7() -> Verdict {
    let t0 = Instant::now();
    let z2 = FreeAbelian { dimension: 2 };
    let std2 = FreeAbelian::generators(&GeneratorSet::standard(2));
    let rows = empirical_sprawl(&z2, &std2, &[50, 100, 150, 200], PairMode::Exact, DEFAULT_BUDGET).unwrap().rows;
    let gaps: Vec<f64> = rows.iter().map(|r| r.n as f64 * (r.value - 4.0 / 3.0).abs()).collect();
    let e200 = rows[3].value;
    // tolerance 0.2/n, fixed from the observed n |E_n - 4/3| < 0.004 at n = 50..200
    let z2_ok = (e200 - 4.0 / 3.0).abs() <= 0.2 / 200.0 && gaps.iter().all(|&g| g < 0.2);
    let z1 = FreeAbelian { dimension: 1 };
    let radii: Vec<usize> = (1..=100).collect();
    let z_ok = empirical_sprawl(&z1, &[vec![1], vec![-1]], &radii, PairMode::Exact, DEFAULT_BUDGET)
        .unwrap()
        .rows
        .iter()
        .all(|r| r.exact == Some(int(1)));
    // two uniform reduced words of length n share a prefix of length >= k
    // with probability (1/4)(1/3)^(k-1), so E_n = 2 - (1/2n) Σ_{k<n} 3^-k
    let n = 10;
    let tail: ExactRational = (0..n).map(|k| ExactRational::new(BigInt::one(), num_traits::pow(BigInt::from(3), k))).sum();
    let oracle = int(2) - tail / int(2 * n as i64);
    let f2 = FreeGroup { rank: 2 };
    let row = empirical_sprawl(&f2, &f2.standard_generators(), &[n], PairMode::Exact, DEFAULT_BUDGET)
        .unwrap()
        .rows
        .remove(0);
    let f2_diff = (to_f64(&row.exact.clone().unwrap()) - to_f64(&oracle)).abs();
    let t = t0.elapsed();
    verdict(
        z2_ok && z_ok && f2_diff <= 1e-12 && t < Duration::from_secs(300),
        format!(
            "Z^2 E_200 - 4/3 = {:.2e}, n|E_n - 4/3| = {:?}; Z exact 1 for n <= 100: {z_ok}; F2 E_10 = {:.15} vs {:.15}; {t:.2?}",
            e200 - 4.0 / 3.0,
            gaps.iter().map(|g| format!("{g:.5}")).collect::<Vec<_>>(),
            row.value,
            to_f64(&oracle)
        ),
    )
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let half = rat(1, 2);
    let (mut equal, mut above_half, mut tested) = (0, 0, 0);
    for _ in 0..500 {
        let l = random_polygon(&mut rng, 5);
        let t = random_unimodular(&mut rng);
        let a = sprawl_exact(&l).unwrap().value;
        let b = sprawl_exact(&l.apply_linear(&t).unwrap()).unwrap().value;
        equal += (a == b) as usize;
        above_half += (a > half) as usize + (b > half) as usize;
        tested += 2;
    }
    verdict(
        equal == 500 && above_half == tested,
        format!("{equal}/500 pairs equal, E > 1/2 on {above_half}/{tested} perimeters"),
    )
}

fn criterion_9() -> Verdict {
    let duality = (2..=5).all(|d| polar(cube(d).unwrap().vrep()).unwrap() == *orthoplex(d).unwrap().vrep());
    let sq = mahler_report(cube(2).unwrap().vrep()).unwrap();
    let square_ok = sq.mahler == int(8) && sq.kuperberg_bound.hi() <= &int(8) && (sq.kuperberg_bound.to_f64() - 2.0 * std::f64::consts::PI).abs() < 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut kup, mut sant, mut affine, mut involution) = (0, 0, 0, 0);
    for _ in 0..200 {
        let l = random_polygon(&mut rng, 7);
        let r = mahler_report(l.vrep()).unwrap();
        kup += r.kuperberg_holds as usize;
        sant += r.santalo_holds as usize;
        let img = l.apply_linear(&random_invertible(&mut rng)).unwrap();
        affine += (mahler_report(img.vrep()).unwrap().mahler == r.mahler) as usize;
        involution += (polar(&polar(l.vrep()).unwrap()).unwrap() == *l.vrep()) as usize;
    }
    verdict(
        duality && square_ok && kup == 200 && sant == 200 && affine == 200 && involution == 200,
        format!(
            "polar(Cube_d) = Orth_d for d = 2..5: {duality}; M(square) = {} >= {}; Kuperberg {kup}/200, Santaló {sant}/200, affine {affine}/200, involution {involution}/200",
            sq.mahler,
            sq.kuperberg_bound.to_decimal(6)
        ),
    )
}

fn criterion_10() -> Verdict {
    let g = Lamplighter { m: 2 };
    let radii: Vec<usize> = (1..=12).collect();
    let (rows, t) = timed(|| {
        empirical_sprawl(&g, &g.default_generators(), &radii, PairMode::Exact, DEFAULT_BUDGET)
            .unwrap()
            .rows
    });
    let values: Vec<ExactRational> = rows.iter().map(|r| r.exact.clone().unwrap()).collect();
    let nondecreasing = values[5..].windows(2).all(|w| w[0] <= w[1]);
    verdict(
        nondecreasing && rows.len() == 12,
        format!(
            "trend check only: E_n for n = 6..12 = {:?} ({t:.2?}, |S_12| = {})",
            rows[5..].iter().map(|r| format!("{:.4}", r.value)).collect::<Vec<_>>(),
            rows[11].sphere_size
        ),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Verdict); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, f) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let v = f();
        println!("{} criterion {id}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += !v.pass as usize;
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
