//! Exact elements of ℚ and ℚ(√3).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary precision rational; always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Ground field a configuration lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    /// ℚ
    Rational,
    /// ℚ(√3)
    Sqrt3,
}

impl Field {
    /// The radicand `d` of the field ℚ(√d).
    pub fn descriptor(self) -> u32 {
        match self {
            Field::Rational => 1,
            Field::Sqrt3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::Rational => "Q",
            Field::Sqrt3 => "Q(r3)",
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "Q" => Ok(Field::Rational),
            "Q(r3)" => Ok(Field::Sqrt3),
            other => Err(Error::Parse(format!("unknown field descriptor `{other}`"))),
        }
    }

    pub fn contains(self, s: &Scalar) -> bool {
        match self {
            Field::Rational => s.is_rational(),
            Field::Sqrt3 => true,
        }
    }
}

/// `a + b·√3` with rational `a`, `b`.
///
/// Rational values simply carry `b = 0`; the field a computation runs in is
/// tracked by [`Field`] on the point set rather than per value.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: Rational,
    b: Rational,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        Scalar { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// √3
    pub fn sqrt3() -> Self {
        Scalar { a: Rational::zero(), b: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of √3.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Sign as -1, 0, 1, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with 3b²
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * rat(3);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a - b√3`.
    pub fn conjugate(&self) -> Self {
        Scalar { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² - 3b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat(3)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::from_rational(self.a.recip()));
        }
        let n = self.norm();
        Some(Scalar { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn halve(&self) -> Self {
        let two = rat(2);
        Scalar { a: &self.a / &two, b: &self.b / &two }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Scalar { a: &self.a * r, b: &self.b * r }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Floating point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * 3f64.sqrt()
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl From<Rational> for Scalar {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.is_rational() && other.is_rational() {
            return self.a.cmp(&other.a);
        }
        (self - other).signum().cmp(&0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b }
    }
}

fn add_ref(x: &Scalar, y: &Scalar) -> Scalar {
    Scalar { a: &x.a + &y.a, b: &x.b + &y.b }
}

fn sub_ref(x: &Scalar, y: &Scalar) -> Scalar {
    Scalar { a: &x.a - &y.a, b: &x.b - &y.b }
}

fn mul_ref(x: &Scalar, y: &Scalar) -> Scalar {
    match (x.b.is_zero(), y.b.is_zero()) {
        (true, true) => Scalar::from_rational(&x.a * &y.a),
        (true, false) => Scalar { a: &x.a * &y.a, b: &x.a * &y.b },
        (false, true) => Scalar { a: &x.a * &y.a, b: &x.b * &y.a },
        (false, false) => Scalar { a: &x.a * &y.a + &x.b * &y.b * rat(3), b: &x.a * &y.b + &x.b * &y.a },
    }
}

fn div_ref(x: &Scalar, y: &Scalar) -> Scalar {
    if y.is_rational() {
        let d = &y.a;
        assert!(!d.is_zero(), "division by zero");
        return Scalar { a: &x.a / d, b: &x.b / d };
    }
    mul_ref(x, &y.inverse().expect("division by zero"))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_r3_coeff(b: &Rational) -> String {
    if b.is_one() {
        "r3".to_string()
    } else {
        format!("{}*r3", fmt_rational(b))
    }
}

/// Exact text syntax: `p`, `p/q`, `a+b*r3`, `a-b*r3`, `b*r3`, `r3`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        if self.a.is_zero() {
            if self.b.is_negative() {
                return write!(f, "-{}", fmt_r3_coeff(&-&self.b));
            }
            return f.write_str(&fmt_r3_coeff(&self.b));
        }
        let a = fmt_rational(&self.a);
        if self.b.is_negative() {
            write!(f, "{a}-{}", fmt_r3_coeff(&-&self.b))
        } else {
            write!(f, "{a}+{}", fmt_r3_coeff(&self.b))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Parses one signed term: a rational or a rational multiple of `r3`.
fn parse_term(term: &str, negative: bool) -> Result<(Rational, bool), Error> {
    let t = term.trim();
    let (value, is_r3) = if t == "r3" {
        (Rational::one(), true)
    } else if let Some(coeff) = t.strip_suffix("*r3") {
        (parse_rational(coeff)?, true)
    } else {
        (parse_rational(t)?, false)
    };
    Ok((if negative { -value } else { value }, is_r3))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        // split into signed terms at '+'/'-' that are not leading
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut neg = false;
        if bytes[0] == b'-' || bytes[0] == b'+' {
            neg = bytes[0] == b'-';
            start = 1;
        }
        let mut i = start;
        while i < bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && i > start {
                terms.push((neg, &s[start..i]));
                neg = bytes[i] == b'-';
                start = i + 1;
            }
            i += 1;
        }
        terms.push((neg, &s[start..]));
        if terms.len() > 2 {
            return Err(Error::Parse(format!("too many terms in `{s}`")));
        }
        let mut out = Scalar::zero();
        let mut seen = (false, false);
        for (neg, term) in terms {
            let (v, is_r3) = parse_term(term, neg)?;
            if is_r3 {
                if seen.1 {
                    return Err(Error::Parse(format!("repeated r3 term in `{s}`")));
                }
                seen.1 = true;
                out.b = v;
            } else {
                if seen.0 {
                    return Err(Error::Parse(format!("repeated rational term in `{s}`")));
                }
                seen.0 = true;
                out.a = v;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for (input, shown) in [
            ("3", "3"),
            ("-4/6", "-2/3"),
            ("2/3*r3", "2/3*r3"),
            ("1+r3", "1+r3"),
            ("1/2-3/4*r3", "1/2-3/4*r3"),
            ("-r3", "-r3"),
            ("r3 + 0", "r3"),
            ("0", "0"),
        ] {
            assert_eq!(s(input).to_string(), shown, "{input}");
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1+2+3".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("0.5".parse::<Scalar>().is_err());
    }

    #[test]
    fn sign_of_quadratic_elements() {
        assert_eq!(s("2-r3").signum(), 1);
        assert_eq!(s("1-r3").signum(), -1);
        assert_eq!(s("-2+r3").signum(), -1);
        assert_eq!(s("-1+r3").signum(), 1);
        assert_eq!(s("0").signum(), 0);
        assert!(s("173/100") < s("r3"));
        assert!(s("r3") < s("1733/1000"));
    }

    #[test]
    fn inverse_in_quadratic_field() {
        let x = s("2-r3");
        assert_eq!(x.inverse().unwrap(), s("2+r3"));
        assert_eq!(&x * &x.inverse().unwrap(), Scalar::one());
        assert!(Scalar::zero().inverse().is_none());
        assert_eq!(Scalar::sqrt3() * Scalar::sqrt3(), Scalar::from_int(3));
    }
}
