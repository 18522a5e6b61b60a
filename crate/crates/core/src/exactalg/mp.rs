//! Multiprecision reals and complexes on top of `dashu-float`.
//!
//! Every value carries its binary precision; [`Precision`] converts the
//! user-facing decimal digits into bits (plus guard bits).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::{round::mode::HalfEven, FBig};
use dashu_int::IBig;
use num_bigint::BigInt;

use super::rational::Rat;

pub type Real = FBig<HalfEven, 2>;

const GUARD_BITS: usize = 32;

/// Decimal working precision of the numeric layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Precision {
    pub digits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 60;
    pub const MIN_DIGITS: u32 = 30;

    pub fn new(digits: u32) -> Self {
        Self { digits }
    }

    pub fn bits(&self) -> usize {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::new(Self::DEFAULT_DIGITS)
    }
}

fn ibig(b: &BigInt) -> IBig {
    IBig::from_le_bytes(&b.to_signed_bytes_le())
}

pub fn real_zero(bits: usize) -> Real {
    Real::ZERO.with_precision(bits).value()
}

pub fn real_from_bigint(b: &BigInt, bits: usize) -> Real {
    Real::from_parts(ibig(b), 0).with_precision(bits).value()
}

pub fn real_from_rat(r: &Rat, bits: usize) -> Real {
    let n = real_from_bigint(r.numer(), bits);
    if r.denom() == &BigInt::from(1) {
        return n;
    }
    n / real_from_bigint(r.denom(), bits)
}

pub fn real_from_f64(v: f64, bits: usize) -> Real {
    Real::try_from(v).unwrap_or(Real::ZERO).with_precision(bits).value()
}

pub fn real_is_zero(x: &Real) -> bool {
    x.repr().significand() == &IBig::ZERO
}

pub fn real_abs(x: &Real) -> Real {
    if *x < Real::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn real_to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Scientific notation with `digits` significant decimal digits.
pub fn real_to_string(x: &Real, digits: usize) -> String {
    if real_is_zero(x) {
        return "0".into();
    }
    let d = x.to_decimal().value().with_precision(digits.max(1)).value();
    format!("{d:e}")
}

/// `10^e` at the given precision.
pub fn real_pow10(e: i32, bits: usize) -> Real {
    let ten = real_from_bigint(&BigInt::from(10), bits);
    let one = real_from_bigint(&BigInt::from(1), bits);
    let mut acc = one.clone();
    for _ in 0..e.unsigned_abs() {
        acc = acc * &ten;
    }
    if e < 0 {
        one / acc
    } else {
        acc
    }
}

/// Complex number with multiprecision parts.
#[derive(Clone)]
pub struct Cplx {
    pub re: Real,
    pub im: Real,
}

impl Cplx {
    pub fn zero(bits: usize) -> Self {
        Self { re: real_zero(bits), im: real_zero(bits) }
    }

    pub fn one(bits: usize) -> Self {
        Self::from_rat(&Rat::from_integer(1.into()), bits)
    }

    pub fn from_real(re: Real) -> Self {
        let bits = re.precision();
        Self { re, im: real_zero(bits) }
    }

    pub fn from_rat(r: &Rat, bits: usize) -> Self {
        Self { re: real_from_rat(r, bits), im: real_zero(bits) }
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        Self { re: real_from_f64(re, bits), im: real_from_f64(im, bits) }
    }

    pub fn from_c64(c: num_complex::Complex64, bits: usize) -> Self {
        Self::from_f64(c.re, c.im, bits)
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(real_to_f64(&self.re), real_to_f64(&self.im))
    }

    pub fn bits(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn is_zero(&self) -> bool {
        real_is_zero(&self.re) && real_is_zero(&self.im)
    }

    pub fn is_real(&self) -> bool {
        real_is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        if self.is_real() {
            return real_abs(&self.re);
        }
        self.norm_sqr().sqrt()
    }

    /// |re| + |im|: cheap norm used for pivoting and tolerances.
    pub fn abs1(&self) -> Real {
        real_abs(&self.re) + real_abs(&self.im)
    }

    pub fn scale_real(&self, s: &Real) -> Self {
        Self { re: &self.re * s, im: &self.im * s }
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { &Cplx::one(self.bits()) / self } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Cplx::one(self.bits());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        format!("{}{:+}i", real_to_string(&self.re, digits), ComplexImag(&self.im, digits))
    }
}

struct ComplexImag<'a>(&'a Real, usize);

impl fmt::Display for ComplexImag<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = real_to_string(self.0, self.1);
        if f.sign_plus() && !s.starts_with('-') {
            write!(f, "+{s}")
        } else {
            write!(f, "{s}")
        }
    }
}

impl fmt::Debug for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

impl PartialEq for Cplx {
    fn eq(&self, o: &Self) -> bool {
        self.re == o.re && self.im == o.im
    }
}

impl Add for &Cplx {
    type Output = Cplx;
    fn add(self, o: &Cplx) -> Cplx {
        Cplx { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Cplx {
    type Output = Cplx;
    fn sub(self, o: &Cplx) -> Cplx {
        Cplx { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Cplx {
    type Output = Cplx;
    fn mul(self, o: &Cplx) -> Cplx {
        // real operands are common (exact matrices lifted to numbers)
        match (self.is_real(), o.is_real()) {
            (true, true) => Cplx::from_real(&self.re * &o.re),
            (true, false) => Cplx { re: &self.re * &o.re, im: &self.re * &o.im },
            (false, true) => Cplx { re: &self.re * &o.re, im: &self.im * &o.re },
            (false, false) => Cplx {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl Div for &Cplx {
    type Output = Cplx;
    fn div(self, o: &Cplx) -> Cplx {
        if o.is_real() {
            return Cplx { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let d = o.norm_sqr();
        let num = self * &o.conj();
        Cplx { re: num.re / &d, im: num.im / &d }
    }
}

impl Neg for &Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx { re: -self.re.clone(), im: -self.im.clone() }
    }
}
