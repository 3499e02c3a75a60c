//! Exact scalars: Gaussian integers, Gaussian rationals `Q(i)` and the
//! quadratic extension `Q(i, √2)`.
//!
//! Rational components are `Ratio<i64>` driven through checked arithmetic:
//! an overflow panics instead of wrapping, so a computation either finishes
//! exactly or stops loudly.

use alloc::string::{String, ToString};
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

const OVERFLOW: &str = "exact arithmetic overflowed i64";

#[inline]
fn qadd(a: Rational, b: Rational) -> Rational {
    a.checked_add(&b).expect(OVERFLOW)
}

#[inline]
fn qsub(a: Rational, b: Rational) -> Rational {
    a.checked_sub(&b).expect(OVERFLOW)
}

#[inline]
fn qmul(a: Rational, b: Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    a.checked_mul(&b).expect(OVERFLOW)
}

#[inline]
fn qdiv(a: Rational, b: Rational) -> Rational {
    a.checked_div(&b).expect("division by zero or overflow")
}

/// Operations shared by the exact scalar fields used for matrices.
pub trait Field:
    Copy
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` for zero.
    fn inv(self) -> Option<Self>;
    /// Complex conjugation.
    fn conj(self) -> Self;
    fn from_gaussian(z: GaussianRational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_int(v))
    }
}

// ---------------------------------------------------------------------------
// Gaussian integers

/// `a + bi` with `a, b ∈ ℤ`. Used by the fast summation kernels; every
/// character value of `CL(n)` is a Gaussian integer.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: Self = Self { re: 0, im: 0 };
    pub const ONE: Self = Self { re: 1, im: 0 };
    pub const I: Self = Self { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: i64) -> Self {
        Self { re, im: 0 }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(
            self.re.checked_mul(k).expect(OVERFLOW),
            self.im.checked_mul(k).expect(OVERFLOW),
        )
    }

    /// Exact division by a positive integer, if the quotient is integral.
    pub fn div_exact(self, d: i64) -> Option<Self> {
        (self.re % d == 0 && self.im % d == 0).then(|| Self::new(self.re / d, self.im / d))
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.re.checked_add(o.re).expect(OVERFLOW),
            self.im.checked_add(o.im).expect(OVERFLOW),
        )
    }
}

impl AddAssign for GaussianInt {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.re.checked_sub(o.re).expect(OVERFLOW),
            self.im.checked_sub(o.im).expect(OVERFLOW),
        )
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let m = |a: i64, b: i64| a.checked_mul(b).expect(OVERFLOW);
        Self::new(
            m(self.re, o.re)
                .checked_sub(m(self.im, o.im))
                .expect(OVERFLOW),
            m(self.re, o.im)
                .checked_add(m(self.im, o.re))
                .expect(OVERFLOW),
        )
    }
}

impl Sum for GaussianInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", GaussianRational::from(*self))
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// `a + bi` with `a, b ∈ ℚ`.
///
/// `Display` prints the canonical form `a/b + c/d i` (denominators always
/// shown); the alternate flag `{:#}` prints a compact form such as `-2i` or
/// `1/2 + 1/2i`. [`FromStr`] accepts the canonical form.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl GaussianRational {
    pub const ZERO: Self = Self {
        re: Ratio::new_raw(0, 1),
        im: Ratio::new_raw(0, 1),
    };
    pub const ONE: Self = Self {
        re: Ratio::new_raw(1, 1),
        im: Ratio::new_raw(0, 1),
    };
    pub const I: Self = Self {
        re: Ratio::new_raw(0, 1),
        im: Ratio::new_raw(1, 1),
    };

    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(Rational::from_integer(v), Rational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(Rational::from_integer(re), Rational::from_integer(im))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    /// `num / den` as a real Gaussian rational.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::new(num, den))
    }

    pub fn re(&self) -> Rational {
        self.re
    }

    pub fn im(&self) -> Rational {
        self.im
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(self) -> Rational {
        qadd(qmul(self.re, self.re), qmul(self.im, self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The value as an integer, if it is a real integer.
    pub fn to_integer(&self) -> Option<i64> {
        (self.im.is_zero() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(qdiv(self.re, n), qdiv(-self.im, n)))
    }

    pub fn scale(self, k: Rational) -> Self {
        Self::new(qmul(self.re, k), qmul(self.im, k))
    }
}

impl From<GaussianInt> for GaussianRational {
    fn from(z: GaussianInt) -> Self {
        Self::from_ints(z.re, z.im)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(qadd(self.re, o.re), qadd(self.im, o.im))
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(qsub(self.re, o.re), qsub(self.im, o.im))
    }
}

impl SubAssign for GaussianRational {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::ZERO;
        }
        Self::new(
            qsub(qmul(self.re, o.re), qmul(self.im, o.im)),
            qadd(qmul(self.re, o.im), qmul(self.im, o.re)),
        )
    }
}

impl MulAssign for GaussianRational {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Div for GaussianRational {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

fn fmt_rational_compact(q: Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            let re = fmt_rational_compact(self.re);
            if self.im.is_zero() {
                return f.write_str(&re);
            }
            let unit = |q: Rational| -> String {
                if q.abs().is_one() {
                    String::from("i")
                } else {
                    alloc::format!("{}i", fmt_rational_compact(q.abs()))
                }
            };
            return if self.re.is_zero() {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", unit(self.im))
            } else {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{re} {sign} {}", unit(self.im))
            };
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        let im = self.im.abs();
        write!(
            f,
            "{}/{} {sign} {}/{} i",
            self.re.numer(),
            self.re.denom(),
            im.numer(),
            im.denom()
        )
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            input: s.into(),
            expected: "a Gaussian rational `a/b + c/d i`",
        };
        let t = s.trim();
        let body = t.strip_suffix('i').ok_or_else(err)?.trim_end();
        let (split, negative) = match (body.rfind(" + "), body.rfind(" - ")) {
            (Some(p), Some(q)) if q > p => (q, true),
            (Some(p), _) => (p, false),
            (None, Some(q)) => (q, true),
            (None, None) => return Err(err()),
        };
        let re: Rational = body[..split].trim().parse().map_err(|_| err())?;
        let im: Rational = body[split + 3..].trim().parse().map_err(|_| err())?;
        if im.is_negative() {
            return Err(err());
        }
        Ok(Self::new(re, if negative { -im } else { im }))
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        Self::ZERO
    }
    fn one() -> Self {
        Self::ONE
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn inv(self) -> Option<Self> {
        GaussianRational::inv(self)
    }
    fn conj(self) -> Self {
        GaussianRational::conj(self)
    }
    fn from_gaussian(z: GaussianRational) -> Self {
        z
    }
}

// ---------------------------------------------------------------------------
// Q(i, √2)

/// `a + b√2` with `a, b ∈ Q(i)`.
///
/// Dimensions of `CL(n)` irreps are powers of two, so every normalization
/// constant of the form `√d` or `|G|/√d` lies in this field.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianSurd {
    rat: GaussianRational,
    root: GaussianRational,
}

impl GaussianSurd {
    pub fn new(rat: GaussianRational, root: GaussianRational) -> Self {
        Self { rat, root }
    }

    pub fn rational_part(&self) -> GaussianRational {
        self.rat
    }

    pub fn root_part(&self) -> GaussianRational {
        self.root
    }

    pub fn sqrt2() -> Self {
        Self::new(GaussianRational::ZERO, GaussianRational::ONE)
    }

    /// `(√2)^k`.
    pub fn sqrt2_pow(k: u32) -> Self {
        let half = GaussianRational::from_int(1i64 << (k / 2));
        if k % 2 == 0 {
            Self::new(half, GaussianRational::ZERO)
        } else {
            Self::new(GaussianRational::ZERO, half)
        }
    }

    /// `√q` for a non-negative rational, when it lies in `Q(√2)`.
    pub fn sqrt_rational(q: Rational) -> Result<Self> {
        let fail = || Error::NoSquareRoot {
            value: alloc::format!("{q}"),
        };
        if q.is_negative() {
            return Err(fail());
        }
        if let Some(r) = rational_sqrt(q) {
            return Ok(Self::from_gaussian(GaussianRational::real(r)));
        }
        // √q = √(2q)/√2 = (√(2q)/2)·√2
        let twice = qmul(q, Rational::from_integer(2));
        let r = rational_sqrt(twice).ok_or_else(fail)?;
        Ok(Self::new(
            GaussianRational::ZERO,
            GaussianRational::real(qdiv(r, Rational::from_integer(2))),
        ))
    }

    /// The value as a Gaussian rational, when the `√2` part vanishes.
    pub fn to_gaussian(&self) -> Option<GaussianRational> {
        self.root.is_zero().then_some(self.rat)
    }
}

fn rational_sqrt(q: Rational) -> Option<Rational> {
    let (n, d) = (*q.numer(), *q.denom());
    if n < 0 {
        return None;
    }
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (rn * rn == n && rd * rd == d).then(|| Rational::new(rn, rd))
}

impl From<GaussianRational> for GaussianSurd {
    fn from(z: GaussianRational) -> Self {
        Self::new(z, GaussianRational::ZERO)
    }
}

impl Add for GaussianSurd {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.rat + o.rat, self.root + o.root)
    }
}

impl AddAssign for GaussianSurd {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for GaussianSurd {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.rat - o.rat, self.root - o.root)
    }
}

impl Neg for GaussianSurd {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.rat, -self.root)
    }
}

impl Mul for GaussianSurd {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = GaussianRational::from_int(2);
        Self::new(
            self.rat * o.rat + two * self.root * o.root,
            self.rat * o.root + self.root * o.rat,
        )
    }
}

impl Div for GaussianSurd {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl Sum for GaussianSurd {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

impl fmt::Display for GaussianSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.root.is_zero()) {
            (_, true) => write!(f, "{:#}", self.rat),
            (true, false) => write!(f, "({:#})√2", self.root),
            (false, false) => write!(f, "{:#} + ({:#})√2", self.rat, self.root),
        }
    }
}

impl Field for GaussianSurd {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from(GaussianRational::ONE)
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root.is_zero()
    }
    fn inv(self) -> Option<Self> {
        // (a + b√2)(a − b√2) = a² − 2b², non-zero unless both parts vanish.
        let two = GaussianRational::from_int(2);
        let norm = self.rat * self.rat - two * self.root * self.root;
        let inv = norm.inv()?;
        Some(Self::new(self.rat * inv, -self.root * inv))
    }
    fn conj(self) -> Self {
        Self::new(self.rat.conj(), self.root.conj())
    }
    fn from_gaussian(z: GaussianRational) -> Self {
        z.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn canonical_display() {
        let z = GaussianRational::new(q(1, 2), q(-3, 4));
        assert_eq!(format!("{z}"), "1/2 - 3/4 i");
        assert_eq!(
            format!("{}", GaussianRational::from_int(-2)),
            "-2/1 + 0/1 i"
        );
        assert_eq!(format!("{:#}", GaussianRational::from_ints(0, -2)), "-2i");
        assert_eq!(format!("{:#}", GaussianRational::from_ints(1, 1)), "1 + i");
        assert_eq!(format!("{:#}", GaussianRational::from_int(4)), "4");
    }

    #[test]
    fn parse_canonical() {
        let z: GaussianRational = "-1/2 - 0/1 i".parse().unwrap();
        assert_eq!(z, GaussianRational::ratio(-1, 2));
        let w: GaussianRational = "3/1 + 2/5 i".parse().unwrap();
        assert_eq!(w, GaussianRational::new(q(3, 1), q(2, 5)));
        assert!("3 + 2".parse::<GaussianRational>().is_err());
        assert!("1/2 + -1/2 i".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn gaussian_division() {
        let a = GaussianRational::from_ints(1, 2);
        let b = GaussianRational::from_ints(3, -1);
        assert_eq!((a / b) * b, a);
        assert_eq!(
            GaussianRational::I * GaussianRational::I,
            GaussianRational::from_int(-1)
        );
        assert!(GaussianRational::ZERO.inv().is_none());
    }

    #[test]
    fn surd_arithmetic() {
        let s = GaussianSurd::sqrt2();
        assert_eq!(s * s, GaussianSurd::from_int(2));
        assert_eq!(GaussianSurd::sqrt2_pow(3), GaussianSurd::from_int(2) * s);
        let x = GaussianSurd::new(
            GaussianRational::from_int(3),
            GaussianRational::from_ints(1, 1),
        );
        assert_eq!(x * x.inv().unwrap(), GaussianSurd::one());
    }

    #[test]
    fn square_roots_in_extension() {
        assert_eq!(
            GaussianSurd::sqrt_rational(q(9, 4)).unwrap(),
            GaussianSurd::from(GaussianRational::ratio(3, 2))
        );
        let r = GaussianSurd::sqrt_rational(q(1, 2)).unwrap();
        assert_eq!(r * r, GaussianSurd::from(GaussianRational::ratio(1, 2)));
        assert!(GaussianSurd::sqrt_rational(q(3, 1)).is_err());
        assert!(GaussianSurd::sqrt_rational(q(-1, 1)).is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        let big = GaussianRational::from_int(i64::MAX / 2);
        let _ = big * big;
    }
}
