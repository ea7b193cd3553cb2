//! Closed-form sprawl values and their asymptotics.
//!
//! Rational values (hexagons, cubes, orthoplexes, odd-dimensional spheres,
//! `P_4`, `P_6`) are returned exactly. The rest are returned as rigorous
//! intervals at the requested number of decimal digits.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::convex::{approximate_regular_polygon, cube, hexagon_xy, orthoplex, Perimeter};
use crate::error::{Result, SprawlError};
use crate::interval::{bits_for_digits, Interval};
use crate::rational::{factorial, int, parse_rational, rat, to_decimal, ExactRational};

/// Scale of the integer approximation used when a regular polygon with more
/// than six sides has to be materialised as a perimeter.
pub const REGULAR_POLYGON_SCALE: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeSpec {
    RegularPolygon(u64),
    Circle,
    Hexagon(ExactRational, ExactRational),
    Sphere(u64),
    Cube(u64),
    Orthoplex(u64),
}

impl ShapeSpec {
    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(SprawlError::UnsupportedParameter(m));
        match self {
            ShapeSpec::RegularPolygon(x) if *x < 4 || x % 2 == 1 => {
                bad(format!("regular polygon formulas need an even side count >= 4, got {x}"))
            }
            ShapeSpec::Hexagon(x, y) if *x < int(1) || y.is_negative() || x + y > int(2) => {
                bad(format!("hexagon parameters ({x}, {y}) outside x >= 1, y >= 0, x + y <= 2"))
            }
            ShapeSpec::Sphere(0) | ShapeSpec::Cube(0) | ShapeSpec::Orthoplex(0) => {
                bad("dimension must be at least 1".into())
            }
            _ => Ok(()),
        }
    }

    /// The shape as an exact polytope, where one exists.
    ///
    /// `P_4` and `P_6` are replaced by linearly equivalent lattice polygons;
    /// larger regular polygons by their integer approximation at
    /// [`REGULAR_POLYGON_SCALE`].
    pub fn perimeter(&self) -> Result<Perimeter> {
        self.validate()?;
        match self {
            ShapeSpec::RegularPolygon(4) => cube(2),
            ShapeSpec::RegularPolygon(6) => hexagon_xy(&int(2), &int(0)),
            ShapeSpec::RegularPolygon(x) => approximate_regular_polygon(*x as usize, REGULAR_POLYGON_SCALE),
            ShapeSpec::Hexagon(x, y) => hexagon_xy(x, y),
            ShapeSpec::Cube(d) => cube(*d as usize),
            ShapeSpec::Orthoplex(d) => orthoplex(*d as usize),
            ShapeSpec::Circle | ShapeSpec::Sphere(_) => Err(SprawlError::UnsupportedParameter(format!(
                "{self} is not a polytope"
            ))),
        }
    }
}

impl fmt::Display for ShapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeSpec::RegularPolygon(x) => write!(f, "pgon:{x}"),
            ShapeSpec::Circle => write!(f, "circle"),
            ShapeSpec::Hexagon(x, y) => write!(f, "hexagon:{x},{y}"),
            ShapeSpec::Sphere(d) => write!(f, "sphere:{d}"),
            ShapeSpec::Cube(d) => write!(f, "cube:{d}"),
            ShapeSpec::Orthoplex(d) => write!(f, "orthoplex:{d}"),
        }
    }
}

impl FromStr for ShapeSpec {
    type Err = SprawlError;

    /// `pgon:X`, `circle`, `hexagon:X,Y`, `sphere:D`, `cube:D`, `orthoplex:D`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || SprawlError::InvalidInput(format!("unrecognised shape {s:?}"));
        if s == "circle" {
            return Ok(ShapeSpec::Circle);
        }
        let (tag, arg) = s.split_once(':').ok_or_else(bad)?;
        let num = || arg.trim().parse::<u64>().map_err(|_| bad());
        let spec = match tag {
            "pgon" => ShapeSpec::RegularPolygon(num()?),
            "sphere" => ShapeSpec::Sphere(num()?),
            "cube" => ShapeSpec::Cube(num()?),
            "orthoplex" => ShapeSpec::Orthoplex(num()?),
            "hexagon" => {
                let (x, y) = arg.split_once(',').ok_or_else(bad)?;
                ShapeSpec::Hexagon(parse_rational(x)?, parse_rational(y)?)
            }
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A closed-form value: exact when rational, otherwise an enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaValue {
    pub exact: Option<ExactRational>,
    pub interval: Interval,
    pub digits: usize,
}

impl FormulaValue {
    fn exact(q: ExactRational, digits: usize) -> Self {
        FormulaValue {
            interval: Interval::exact(q.clone()),
            exact: Some(q),
            digits,
        }
    }

    pub fn decimal(&self) -> String {
        match &self.exact {
            Some(q) => to_decimal(q, self.digits),
            None => self.interval.to_decimal(self.digits),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.interval.to_f64()
    }
}

/// `E(H_{x,y})` for the hexagon with vertices `±(x, y), ±(1, 1), ±(-1, 1)`.
pub fn hexagon_formula(x: &ExactRational, y: &ExactRational) -> ExactRational {
    let (x2, y2) = (x * x, y * y);
    let (x3, y3) = (&x2 * x, &y2 * y);
    let num = &x2 * &y2 + x * &y3 + int(4) * &x3 + int(7) * &x2 + int(4) * &x2 * y - &y3
        + int(7) * x * y
        - &y2
        + int(4) * x
        + int(5) * y
        + int(1);
    let den = int(3) * &x3 + int(3) * &x2 * y + int(6) * &x2 + int(6) * x * y + int(3) * x + int(3) * y;
    num / den
}

/// Points `(1 + a/steps, b/steps)` with `a + b <= steps`: a rational grid of
/// the hexagon parameter triangle.
pub fn hexagon_grid(steps: i64) -> Vec<(ExactRational, ExactRational)> {
    let mut out = Vec::new();
    for a in 0..=steps {
        for b in 0..=steps - a {
            out.push((int(1) + rat(a, steps), rat(b, steps)));
        }
    }
    out
}

/// `(2d+2)/d - (2d+1)/(2d^2) * 4^d d!^2 / (2d)!`.
pub fn cube_formula(d: u64) -> ExactRational {
    let d_q = int(d as i64);
    let central = ExactRational::new(
        num_traits::pow(BigInt::from(4), d as usize) * factorial(d) * factorial(d),
        factorial(2 * d),
    );
    (int(2) * &d_q + int(2)) / &d_q - (int(2) * &d_q + int(1)) / (int(2) * &d_q * &d_q) * central
}

pub fn orthoplex_formula(d: u64) -> ExactRational {
    rat(3 * d as i64 - 2, 2 * d as i64 - 1)
}

/// `E(Sphere_d) = q * π^k` with `k ∈ {0, -1}`: rational for odd `d`, a
/// rational multiple of `1/π` for even `d`.
///
/// Uses `Γ(m) = (m-1)!` and `Γ(m + 1/2) = (2m)! √π / (4^m m!)` in
/// `2^{d-1} Γ(d/2)^2 / (√π Γ(d - 1/2))`.
pub fn sphere_formula(d: u64) -> (ExactRational, i32) {
    assert!(d >= 1);
    let big = |n: BigInt| ExactRational::from_integer(n);
    let pow = |b: i64, e: u64| big(num_traits::pow(BigInt::from(b), e as usize));
    let f = |n: u64| big(factorial(n));
    // Γ(d - 1/2) / √π
    let gamma_tail = f(2 * d - 2) / (pow(4, d - 1) * f(d - 1));
    let lead = pow(2, d - 1);
    if d % 2 == 0 {
        let m = d / 2;
        let g = f(m - 1);
        (lead * &g * &g / gamma_tail, -1)
    } else {
        let m = (d - 1) / 2;
        // Γ(m + 1/2)^2 = ((2m)! / (4^m m!))^2 π, and the π cancels
        let g = f(2 * m) / (pow(4, m) * f(m));
        (lead * &g * &g / gamma_tail, 0)
    }
}

/// The closed-form sprawl of `spec`, with `digits` decimals for irrational
/// values.
pub fn sprawl_formula(spec: &ShapeSpec, digits: usize) -> Result<FormulaValue> {
    spec.validate()?;
    let bits = bits_for_digits(digits);
    let pi = || Interval::pi(bits + 16);
    let inexact = |iv: Interval| FormulaValue {
        exact: None,
        interval: iv.round_out(bits),
        digits,
    };
    Ok(match spec {
        ShapeSpec::RegularPolygon(4) => FormulaValue::exact(rat(4, 3), digits),
        ShapeSpec::RegularPolygon(6) => FormulaValue::exact(rat(23, 18), digits),
        ShapeSpec::RegularPolygon(x) => inexact(regular_polygon_interval(*x, bits + 16)),
        ShapeSpec::Circle => inexact(pi().recip().scale(&int(4))),
        ShapeSpec::Hexagon(x, y) => FormulaValue::exact(hexagon_formula(x, y), digits),
        ShapeSpec::Cube(d) => FormulaValue::exact(cube_formula(*d), digits),
        ShapeSpec::Orthoplex(d) => FormulaValue::exact(orthoplex_formula(*d), digits),
        ShapeSpec::Sphere(d) => match sphere_formula(*d) {
            (q, 0) => FormulaValue::exact(q, digits),
            (q, _) => inexact(pi().recip().scale(&q)),
        },
    })
}

/// `E(P_x)` from the `tan` branch (`x ∈ 4ℕ`) or the `sin` branch (`x ∈ 4ℕ+2`).
fn regular_polygon_interval(x: u64, bits: u32) -> Interval {
    let xq = int(x as i64);
    let h = Interval::pi(bits + 16).scale(&ExactRational::new(1.into(), BigInt::from(x)));
    if x % 4 == 0 {
        let t = h.tan(bits + 16);
        let a = (&t.scale(&xq)).recip().scale(&int(4));
        let b = t.scale(&(rat(4, 3) / &xq));
        &a + &b
    } else {
        let s = h.sin(bits + 16);
        let a = (&s.scale(&xq)).recip().scale(&int(4));
        let b = s.scale(&(rat(2, 3) / &xq));
        &a - &b
    }
}

/// Limit of a shape family, the gap to it at the given parameter, and the
/// leading asymptotic term of that gap.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticGap {
    pub limit: Interval,
    /// `|value - limit|`.
    pub gap: Interval,
    pub leading_term: f64,
}

impl AsymptoticGap {
    /// `gap / leading_term`, which tends to one.
    pub fn ratio(&self) -> f64 {
        self.gap.to_f64() / self.leading_term
    }
}

pub fn asymptotic_gap(spec: &ShapeSpec) -> Result<AsymptoticGap> {
    spec.validate()?;
    let digits = 60;
    let bits = bits_for_digits(digits);
    let pi = std::f64::consts::PI;
    let value = sprawl_formula(spec, digits)?.interval;
    let (limit, leading_term) = match spec {
        ShapeSpec::RegularPolygon(x) => {
            let c = if x % 4 == 0 { 16.0 / 45.0 } else { 17.0 / 90.0 };
            (Interval::pi(bits).recip().scale(&int(4)), c * pi.powi(3) / (*x as f64).powi(4))
        }
        // Γ-ratio expansion gives √2 (1 - 1/(8d)), so the gap is √2/(8d)
        ShapeSpec::Sphere(d) => (Interval::sqrt(&int(2), bits), std::f64::consts::SQRT_2 / (8.0 * *d as f64)),
        ShapeSpec::Cube(d) => (Interval::exact(int(2)), (pi / *d as f64).sqrt()),
        ShapeSpec::Orthoplex(d) => (Interval::exact(rat(3, 2)), 1.0 / (4.0 * *d as f64)),
        ShapeSpec::Circle | ShapeSpec::Hexagon(..) => {
            return Err(SprawlError::NoAsymptoticKnown(spec.to_string()))
        }
    };
    let gap = (&value - &limit).abs();
    Ok(AsymptoticGap {
        limit,
        gap,
        leading_term,
    })
}

/// Simpson's rule with `steps` (rounded up to even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    let n = steps.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|k| f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// `(a_n, b_n)` with `a_n = ∫_0^π √(2 - 2cos θ) sin^n θ dθ` and
/// `b_n = ∫_0^π sin^n θ dθ`, from their recursions.
pub fn sphere_moments(n: u32) -> (f64, f64) {
    let mut a = 4.0;
    for k in 0..n {
        a *= (2 * k + 2) as f64 / (2 * k + 3) as f64;
    }
    let mut b = if n % 2 == 0 { std::f64::consts::PI } else { 2.0 };
    let mut k = n % 2;
    while k < n {
        b *= (k + 1) as f64 / (k + 2) as f64;
        k += 2;
    }
    (a, b)
}

/// The same moments by quadrature.
pub fn sphere_moments_quadrature(n: u32, steps: usize) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    let a = simpson(|t| 2.0 * (t / 2.0).sin() * t.sin().powi(n as i32), 0.0, pi, steps);
    let b = simpson(|t| t.sin().powi(n as i32), 0.0, pi, steps);
    (a, b)
}

/// `E(Sphere_d) = a_{d-2} / b_{d-2}` evaluated by quadrature.
pub fn sphere_quadrature_check(d: u32, steps: usize) -> f64 {
    assert!(d >= 2, "sphere quadrature needs d >= 2");
    let (a, b) = sphere_moments_quadrature(d - 2, steps);
    a / b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;

    fn value(s: &str) -> FormulaValue {
        sprawl_formula(&s.parse().unwrap(), 50).unwrap()
    }

    /// `(2n)!! / (2n-1)!!`-style products written out directly.
    fn double_factorial(n: i64) -> BigInt {
        let mut acc = BigInt::from(1);
        let mut k = n;
        while k > 1 {
            acc *= k;
            k -= 2;
        }
        acc
    }

    #[test]
    fn rational_values() {
        assert_eq!(value("pgon:4").exact, Some(rat(4, 3)));
        assert_eq!(value("pgon:6").exact, Some(rat(23, 18)));
        assert_eq!(value("hexagon:1,0").exact, Some(rat(4, 3)));
        assert_eq!(value("hexagon:2,0").exact, Some(rat(23, 18)));
        assert_eq!(value("orthoplex:3").exact, Some(rat(7, 5)));
        assert_eq!(value("cube:3").exact, Some(rat(64, 45)));
        assert_eq!(value("cube:1").exact, Some(int(1)));
        assert_eq!(value("sphere:3").exact, Some(rat(4, 3)));
        assert_eq!(value("sphere:1").exact, Some(int(1)));
        assert_eq!(cube_formula(2), orthoplex_formula(2));
        assert_eq!(cube_formula(2), rat(4, 3));
    }

    #[test]
    fn sphere_double_factorial_form() {
        // e_d (2d-4)!!/(2d-3)!! (d-2)!!/(d-3)!!, e_d = 4/π (even d) or 2 (odd d)
        for d in 2..40i64 {
            let r = ExactRational::new(double_factorial(2 * d - 4), double_factorial(2 * d - 3))
                * ExactRational::new(double_factorial(d - 2), double_factorial(d - 3));
            let (q, k) = sphere_formula(d as u64);
            if d % 2 == 0 {
                assert_eq!((q, k), (int(4) * r, -1), "d = {d}");
            } else {
                assert_eq!((q, k), (int(2) * r, 0), "d = {d}");
            }
        }
    }

    #[test]
    fn irrational_values() {
        let pi4 = value("circle");
        assert_eq!(&pi4.decimal()[..12], "1.2732395447");
        assert_eq!(value("sphere:2").interval, pi4.interval);
        // (1 + 2√2)/3 with √2 = 1.41421356237309504880168872420969807856967187537694
        let p8 = value("pgon:8");
        let sqrt2 = Interval::sqrt(&int(2), 200);
        let expected = (&sqrt2.scale(&int(2)) + &Interval::exact(int(1))).scale(&rat(1, 3));
        assert!(p8.interval.within(&expected, &ExactRational::new(1.into(), num_traits::pow(BigInt::from(10), 45))));
        // independent digits: (10^k + 2 isqrt(2 * 10^2k)) / 3
        let k = 60usize;
        let scale = num_traits::pow(BigInt::from(10), k);
        let root = (BigInt::from(2) * &scale * &scale).sqrt();
        let oracle = ExactRational::new(scale.clone() + BigInt::from(2) * root, BigInt::from(3) * scale);
        assert_eq!(p8.decimal()[..42], to_decimal(&oracle, 45)[..42]);
        let d100 = value("sphere:100");
        assert!((d100.to_f64() - 1.4124).abs() < 1e-4, "{}", d100.decimal());
    }

    #[test]
    fn branches_agree_with_exact_small_cases() {
        // the trigonometric branches reproduce the exact small values
        let p4 = regular_polygon_interval(4, 200);
        assert!(p4.contains(&rat(4, 3)));
        let p6 = regular_polygon_interval(6, 200);
        assert!(p6.contains(&rat(23, 18)));
    }

    #[test]
    fn polygon_parity_anomaly() {
        for k in 4..=50 {
            let lo = regular_polygon_interval(4 * k - 2, 120);
            let hi = regular_polygon_interval(4 * k, 120);
            assert!(lo.certainly_lt(&hi), "k = {k}");
        }
    }

    #[test]
    fn asymptotics() {
        let r = asymptotic_gap(&ShapeSpec::RegularPolygon(400)).unwrap().ratio();
        assert!((r - 1.0).abs() < 0.01, "{r}");
        let r = asymptotic_gap(&ShapeSpec::RegularPolygon(402)).unwrap().ratio();
        assert!((r - 1.0).abs() < 0.01, "{r}");
        let g = asymptotic_gap(&ShapeSpec::Sphere(200)).unwrap();
        assert!((g.ratio() - 1.0).abs() < 0.05, "{}", g.ratio());
        // 8d times the gap tends to √2, not 1
        let scaled = g.gap.to_f64() * 8.0 * 200.0;
        assert!((scaled - std::f64::consts::SQRT_2).abs() < 0.01, "{scaled}");
        let r = asymptotic_gap(&ShapeSpec::Cube(2000)).unwrap().ratio();
        assert!((r - 1.0).abs() < 0.05, "{r}");
        let g = asymptotic_gap(&ShapeSpec::Orthoplex(7)).unwrap();
        assert_eq!(g.gap, Interval::exact(rat(1, 26)));
        assert!(matches!(asymptotic_gap(&ShapeSpec::Circle), Err(SprawlError::NoAsymptoticKnown(_))));
    }

    #[test]
    fn sphere_moments_match_quadrature() {
        for n in 0..=20 {
            let (a, b) = sphere_moments(n);
            let (qa, qb) = sphere_moments_quadrature(n, 4000);
            assert!((a - qa).abs() < 1e-10 && (b - qb).abs() < 1e-10, "n = {n}");
        }
        let pi = std::f64::consts::PI;
        assert!((sphere_quadrature_check(2, 2000) - 4.0 / pi).abs() < 1e-10);
        assert!((sphere_quadrature_check(3, 2000) - 4.0 / 3.0).abs() < 1e-10);
        for d in 2..12u64 {
            let v = sprawl_formula(&ShapeSpec::Sphere(d), 30).unwrap().to_f64();
            assert!((sphere_quadrature_check(d as u32, 4000) - v).abs() < 1e-10, "d = {d}");
        }
    }

    #[test]
    fn hexagon_triangle_extremes() {
        for (x, y) in hexagon_grid(20) {
            let e = hexagon_formula(&x, &y);
            assert_eq!(e == rat(4, 3), x == int(1), "({x}, {y})");
            assert_eq!(e == rat(23, 18), x == int(2), "({x}, {y})");
            assert!(e >= rat(23, 18) && e <= rat(4, 3));
        }
        // continuity across the grid: neighbouring values stay close
        let g = hexagon_grid(40);
        for (x, y) in &g {
            let e = to_f64(&hexagon_formula(x, y));
            let e2 = to_f64(&hexagon_formula(&(x + rat(1, 4000)), y));
            assert!((e - e2).abs() < 1e-3);
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("hexagon:3/2,1/4".parse::<ShapeSpec>().unwrap(), ShapeSpec::Hexagon(rat(3, 2), rat(1, 4)));
        assert!(matches!("pgon:7".parse::<ShapeSpec>(), Err(SprawlError::UnsupportedParameter(_))));
        assert!(matches!("hexagon:2,1".parse::<ShapeSpec>(), Err(SprawlError::UnsupportedParameter(_))));
        assert!("blob:3".parse::<ShapeSpec>().is_err());
        for s in ["pgon:8", "circle", "hexagon:3/2,1/4", "sphere:4", "cube:2", "orthoplex:5"] {
            assert_eq!(s.parse::<ShapeSpec>().unwrap().to_string(), s);
        }
    }
}
