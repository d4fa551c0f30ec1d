use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use super::scalar::Scalar;

/// Complex number with exact real and imaginary parts. Doubles as a plane
/// point `(re, im)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CNum {
    pub re: Scalar,
    pub im: Scalar,
}

impl CNum {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        CNum { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        CNum::new(Scalar::from_int(re), Scalar::from_int(im))
    }

    pub fn real(re: Scalar) -> Self {
        CNum { re, im: Scalar::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Scalar::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        CNum::new(Scalar::zero(), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CNum { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|² = z·z̄`.
    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        CNum { re: &self.re * s, im: &self.im * s }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sqr().inverse()?;
        Some(CNum { re: &self.re * &n, im: -(&self.im * &n) })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }

    /// Least common multiple of all rational denominators in both parts.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.re.denominator_lcm().lcm(&self.im.denominator_lcm())
    }
}

impl From<Scalar> for CNum {
    fn from(s: Scalar) -> Self {
        CNum::real(s)
    }
}

impl Neg for CNum {
    type Output = CNum;
    fn neg(self) -> CNum {
        CNum { re: -self.re, im: -self.im }
    }
}

impl Neg for &CNum {
    type Output = CNum;
    fn neg(self) -> CNum {
        CNum { re: -&self.re, im: -&self.im }
    }
}

fn add_ref(x: &CNum, y: &CNum) -> CNum {
    CNum { re: &x.re + &y.re, im: &x.im + &y.im }
}

fn sub_ref(x: &CNum, y: &CNum) -> CNum {
    CNum { re: &x.re - &y.re, im: &x.im - &y.im }
}

fn mul_ref(x: &CNum, y: &CNum) -> CNum {
    if x.im.is_zero() && y.im.is_zero() {
        return CNum::real(&x.re * &y.re);
    }
    CNum { re: &x.re * &y.re - &x.im * &y.im, im: &x.re * &y.im + &x.im * &y.re }
}

fn div_ref(x: &CNum, y: &CNum) -> CNum {
    mul_ref(x, &y.inverse().expect("division by zero"))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&CNum> for &CNum {
            type Output = CNum;
            fn $method(self, rhs: &CNum) -> CNum {
                $f(self, rhs)
            }
        }
        impl $tr<CNum> for &CNum {
            type Output = CNum;
            fn $method(self, rhs: CNum) -> CNum {
                $f(self, &rhs)
            }
        }
        impl $tr<&CNum> for CNum {
            type Output = CNum;
            fn $method(self, rhs: &CNum) -> CNum {
                $f(&self, rhs)
            }
        }
        impl $tr<CNum> for CNum {
            type Output = CNum;
            fn $method(self, rhs: CNum) -> CNum {
                $f(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl AddAssign<&CNum> for CNum {
    fn add_assign(&mut self, rhs: &CNum) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for CNum {
    fn add_assign(&mut self, rhs: CNum) {
        *self += &rhs;
    }
}

impl SubAssign<&CNum> for CNum {
    fn sub_assign(&mut self, rhs: &CNum) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl std::iter::Sum for CNum {
    fn sum<I: Iterator<Item = CNum>>(iter: I) -> CNum {
        iter.fold(CNum::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})*I", self.im)
        } else {
            write!(f, "{}+({})*I", self.re, self.im)
        }
    }
}

impl fmt::Debug for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
