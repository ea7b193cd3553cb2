//! Exact rational scalars and the helpers shared by every exact-path module.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, so it is used directly as the exact scalar type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, SprawlError};

pub type ExactRational = BigRational;

/// A point (or covector) with exact rational coordinates.
pub type RatPoint = Vec<ExactRational>;

pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator beyond f64 range individually
        let shift = q.numer().bits().max(q.denom().bits()) as i64 - 900;
        let scale = BigInt::one() << shift.max(0) as usize;
        let n = (q.numer() / &scale).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() / &scale).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn point_to_f64(p: &[ExactRational]) -> Vec<f64> {
    p.iter().map(to_f64).collect()
}

pub fn dot(a: &[ExactRational], b: &[ExactRational]) -> ExactRational {
    a.iter()
        .zip(b)
        .fold(ExactRational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[ExactRational], b: &[ExactRational]) -> RatPoint {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[ExactRational]) -> RatPoint {
    a.iter().map(|x| -x).collect()
}

/// Planar cross product `a.x * b.y - a.y * b.x`.
pub fn cross2(a: &[ExactRational], b: &[ExactRational]) -> ExactRational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Decimal expansion rounded half away from zero to `digits` places.
pub fn to_decimal(q: &ExactRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Parses `"7"`, `"-3/4"` or `"1.25"`.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || SprawlError::InvalidInput(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((w, f)) = s.split_once('.') {
        let negative = w.starts_with('-');
        let w: BigInt = if w.is_empty() || w == "-" {
            BigInt::zero()
        } else {
            w.parse().map_err(|_| bad())?
        };
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f_int: BigInt = f.parse().map_err(|_| bad())?;
        let frac = BigRational::new(f_int, num_traits::pow(BigInt::from(10), f.len()));
        let whole = BigRational::from_integer(w.abs());
        let mag = whole + frac;
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// JSON form of a rational: `[numerator, denominator]` as integer literals of
/// unbounded size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPair(pub ExactRational);

impl Serialize for RationalPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::{Error, SerializeSeq};
        let num: serde_json::Number = self.0.numer().to_string().parse().map_err(S::Error::custom)?;
        let den: serde_json::Number = self.0.denom().to_string().parse().map_err(S::Error::custom)?;
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&num)?;
        seq.serialize_element(&den)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RationalPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [num, den] = <[serde_json::Number; 2]>::deserialize(deserializer)?;
        let num: BigInt = num
            .to_string()
            .parse()
            .map_err(|_| de::Error::custom("numerator is not an integer"))?;
        let den: BigInt = den
            .to_string()
            .parse()
            .map_err(|_| de::Error::custom("denominator is not an integer"))?;
        if !den.is_positive() {
            return Err(de::Error::custom("denominator must be positive"));
        }
        let q = BigRational::new(num.clone(), den.clone());
        if q.numer() != &num || q.denom() != &den {
            return Err(de::Error::custom("rational not in lowest terms"));
        }
        Ok(RationalPair(q))
    }
}

pub fn pairs(p: &[ExactRational]) -> Vec<RationalPair> {
    p.iter().cloned().map(RationalPair).collect()
}

pub fn unpairs(p: &[RationalPair]) -> RatPoint {
    p.iter().map(|r| r.0.clone()).collect()
}

/// Exact determinant by fraction-free elimination over the rationals.
pub fn det(rows: &[RatPoint]) -> ExactRational {
    let n = rows.len();
    let mut m: Vec<RatPoint> = rows.to_vec();
    let mut d = ExactRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ExactRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    d
}

/// Exact inverse of a square matrix, `None` when singular.
pub fn inverse(rows: &[RatPoint]) -> Option<Vec<RatPoint>> {
    let n = rows.len();
    let mut m: Vec<RatPoint> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for c in 0..2 * n {
            m[col][c] /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let v = &f * &m[col][c];
                    m[r][c] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a set of rational vectors.
pub fn rank(rows: &[RatPoint]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<RatPoint> = rows.to_vec();
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let p = m[r][col].clone();
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &p;
            for c in col..cols {
                let v = &f * &m[r][c];
                m[i][c] -= v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn mat_vec(m: &[RatPoint], v: &[ExactRational]) -> RatPoint {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &[RatPoint], b: &[RatPoint]) -> Vec<RatPoint> {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| dot(row, col)).collect()).collect()
}

pub fn transpose(m: &[RatPoint]) -> Vec<RatPoint> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
