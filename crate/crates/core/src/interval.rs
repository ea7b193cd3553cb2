//! Rigorous rational interval arithmetic for the irrational closed forms.
//!
//! Every value is a pair of exact rational bounds. Transcendental functions
//! come from alternating series, whose consecutive partial sums bracket the
//! limit, and results are rounded outward onto a dyadic grid so the bound
//! sizes stay proportional to the working precision.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::{int, rat, to_decimal, to_f64, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: ExactRational,
    hi: ExactRational,
}

/// Working precision in bits that comfortably covers `digits` decimal digits.
pub fn bits_for_digits(digits: usize) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn floor_to_grid(q: &ExactRational, bits: u32) -> ExactRational {
    let s = pow2(bits);
    BigRational::new((q * BigRational::from_integer(s.clone())).floor().to_integer(), s)
}

fn ceil_to_grid(q: &ExactRational, bits: u32) -> ExactRational {
    let s = pow2(bits);
    BigRational::new((q * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

impl Interval {
    pub fn new(lo: ExactRational, hi: ExactRational) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Interval { lo, hi }
    }

    pub fn exact(q: ExactRational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn lo(&self) -> &ExactRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExactRational {
        &self.hi
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> ExactRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.mid())
    }

    /// Widens the bounds onto the `2^-bits` grid.
    pub fn round_out(&self, bits: u32) -> Self {
        Interval {
            lo: floor_to_grid(&self.lo, bits),
            hi: ceil_to_grid(&self.hi, bits),
        }
    }

    pub fn contains(&self, q: &ExactRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// True when every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// `|self - other|` is certainly at most `tol`.
    pub fn within(&self, other: &Interval, tol: &ExactRational) -> bool {
        let d = self - other;
        d.lo.abs() <= *tol && d.hi.abs() <= *tol
    }

    /// Midpoint rendered with `digits` decimals.
    pub fn to_decimal(&self, digits: usize) -> String {
        to_decimal(&self.mid(), digits)
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            Interval::new(ExactRational::zero(), self.lo.abs().max(self.hi.abs()))
        }
    }

    pub fn recip(&self) -> Interval {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Interval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn powi(&self, n: u32) -> Interval {
        (0..n).fold(Interval::exact(int(1)), |acc, _| &acc * self)
    }

    pub fn scale(&self, q: &ExactRational) -> Interval {
        self * &Interval::exact(q.clone())
    }

    /// Enclosure of π from Machin's arctangent identity.
    pub fn pi(bits: u32) -> Interval {
        static CACHE: Mutex<Option<(u32, Interval)>> = Mutex::new(None);
        if let Some((b, v)) = CACHE.lock().unwrap().as_ref() {
            if *b >= bits {
                return v.clone();
            }
        }
        let work = bits + 8;
        let a5 = arctan_inv(5, work);
        let a239 = arctan_inv(239, work);
        let pi = (&a5.scale(&int(16)) - &a239.scale(&int(4))).round_out(bits);
        *CACHE.lock().unwrap() = Some((bits, pi.clone()));
        pi
    }

    /// Enclosure of the square root of a non-negative rational.
    pub fn sqrt(q: &ExactRational, bits: u32) -> Interval {
        assert!(!q.is_negative(), "square root of a negative number");
        let scale = BigRational::from_integer(pow2(2 * bits));
        let s = q * scale;
        let lo_root = s.floor().to_integer().sqrt();
        let ceil = s.ceil().to_integer();
        let mut hi_root = ceil.sqrt();
        if &hi_root * &hi_root < ceil {
            hi_root += 1;
        }
        let d = pow2(bits);
        Interval::new(
            BigRational::new(lo_root, d.clone()),
            BigRational::new(hi_root, d),
        )
    }

    pub fn sqrt_of(&self, bits: u32) -> Interval {
        let lo = Interval::sqrt(&self.lo.clone().max(ExactRational::zero()), bits);
        let hi = Interval::sqrt(&self.hi, bits);
        Interval::new(lo.lo, hi.hi)
    }

    /// `sin` on an argument inside `[0, π/2]`.
    pub fn sin(&self, bits: u32) -> Interval {
        check_first_quadrant(self);
        let lo = taylor(&self.lo, bits, true).lo;
        let hi = taylor(&self.hi, bits, true).hi;
        Interval::new(lo, hi)
    }

    /// `cos` on an argument inside `[0, π/2]`.
    pub fn cos(&self, bits: u32) -> Interval {
        check_first_quadrant(self);
        let lo = taylor(&self.hi, bits, false).lo;
        let hi = taylor(&self.lo, bits, false).hi;
        Interval::new(lo, hi)
    }

    /// `tan` on an argument inside `[0, π/2)`.
    pub fn tan(&self, bits: u32) -> Interval {
        (&self.sin(bits + 8) / &self.cos(bits + 8)).round_out(bits)
    }
}

fn check_first_quadrant(x: &Interval) {
    assert!(
        !x.lo.is_negative() && x.hi <= rat(157, 100),
        "trigonometric argument outside [0, pi/2]"
    );
}

/// Alternating Taylor series of sin (`odd`) or cos around 0 for `0 <= x < 1.6`.
fn taylor(x: &ExactRational, bits: u32, odd: bool) -> Interval {
    let eps = BigRational::new(BigInt::one(), pow2(bits + 8));
    let x2 = x * x;
    let (mut term, mut k) = if odd {
        (x.clone(), 1u64)
    } else {
        (int(1), 0u64)
    };
    let mut sum = ExactRational::zero();
    let mut sign = true;
    loop {
        if sign {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = &term * &x2 / int(((k + 1) * (k + 2)) as i64);
        k += 2;
        sign = !sign;
        if term < eps {
            // next partial sum lies on the other side of the limit
            let next = if sign { &sum + &term } else { &sum - &term };
            let (lo, hi) = if next < sum { (next, sum) } else { (sum, next) };
            return Interval::new(lo, hi).round_out(bits);
        }
    }
}

/// `arctan(1/k)` for integer `k >= 2`.
fn arctan_inv(k: i64, bits: u32) -> Interval {
    let eps = BigRational::new(BigInt::one(), pow2(bits + 8));
    let k2 = BigInt::from(k * k);
    let mut power = BigInt::from(k);
    let mut n = 1i64;
    let mut sum = ExactRational::zero();
    let mut sign = true;
    loop {
        let term = BigRational::new(BigInt::one(), &power * n);
        if sign {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &k2;
        n += 2;
        sign = !sign;
        let next_term = BigRational::new(BigInt::one(), &power * n);
        if next_term < eps {
            let next = if sign {
                &sum + &next_term
            } else {
                &sum - &next_term
            };
            let (lo, hi) = if next < sum { (next, sum) } else { (sum, next) };
            return Interval::new(lo, hi).round_out(bits);
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl Div for &Interval {
    type Output = Interval;
    fn div(self, o: &Interval) -> Interval {
        self * &o.recip()
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974944";

    #[test]
    fn pi_digits() {
        let pi = Interval::pi(bits_for_digits(60));
        assert_eq!(pi.to_decimal(58), PI_60[..60]);
        assert!(pi.width() < rat(1, 1) / BigRational::from_integer(num_traits::pow(BigInt::from(10), 60)));
    }

    #[test]
    fn sqrt_two_brackets() {
        let r = Interval::sqrt(&int(2), 200);
        assert!(&(r.lo() * r.lo()) <= &int(2) && &int(2) <= &(r.hi() * r.hi()));
        assert_eq!(r.to_decimal(30), "1.414213562373095048801688724210");
    }

    #[test]
    fn trig_identities() {
        let bits = 200;
        let pi = Interval::pi(bits);
        let sixth = pi.scale(&rat(1, 6));
        let s = sixth.sin(bits);
        assert!(s.contains(&rat(1, 2)));
        let quarter = pi.scale(&rat(1, 4));
        let t = quarter.tan(bits);
        assert!(t.contains(&int(1)));
        let c = sixth.cos(bits);
        let sum = &(&s * &s) + &(&c * &c);
        assert!(sum.within(&Interval::exact(int(1)), &rat(1, 1_000_000_000_000)));
        assert!((s.to_f64() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ordering_predicates() {
        let a = Interval::new(int(0), int(1));
        let b = Interval::new(int(2), int(3));
        assert!(a.certainly_lt(&b));
        assert!(!b.certainly_lt(&a));
        assert!(!a.overlaps(&b));
        assert_eq!((&a - &b).abs(), Interval::new(int(1), int(3)));
    }
}
