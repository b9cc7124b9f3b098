//! Gaussian rationals `a + b i` with arbitrary-precision rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::HodgeError;

/// An element of ℚ(i). Complex conjugation is the real structure.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar::from(1)
    }

    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn real(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
    }

    /// `num/den` as a real scalar.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::real(BigRational::new(num.into(), den.into()))
    }

    /// `re + im·i` with integer parts.
    pub fn gauss(re: i64, im: i64) -> Self {
        Scalar { re: BigRational::from_integer(re.into()), im: BigRational::from_integer(im.into()) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |x|² as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// |x| as a float, for reporting only.
    pub fn abs_f64(&self) -> f64 {
        self.norm_sqr().to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// The integer value, if this scalar is a real integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_integral() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Real and imaginary parts as scalars.
    pub fn parts(&self) -> (Scalar, Scalar) {
        (Scalar::real(self.re.clone()), Scalar::real(self.im.clone()))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::real(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::real(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::real(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| Scalar { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar::real(&a.re * &b.re);
    }
    Scalar { re: &a.re * &b.re - &a.im * &b.im, im: &a.re * &b.im + &a.im * &b.re }
});
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by zero scalar"));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `re`, `re±im i`, `im i`, `i`, `-i`; inverse of [`FromStr`].
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |q: &BigRational| -> String {
            if q.is_one() {
                "i".to_string()
            } else if (-q).is_one() {
                "-i".to_string()
            } else {
                format!("{}i", fmt_rational(q))
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}", im_part(&self.im))
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            let abs_im = self.im.abs();
            let tail = if abs_im.is_one() { "i".to_string() } else { format!("{}i", fmt_rational(&abs_im)) };
            write!(f, "{}{}{}", fmt_rational(&self.re), sign, tail)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let q = match body.split_once('/') {
        Some((n, d)) => {
            if !digits(n) || !digits(d) {
                return None;
            }
            let den: BigInt = d.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            BigRational::new(n.parse().ok()?, den)
        }
        None => {
            if !digits(body) {
                return None;
            }
            BigRational::from_integer(body.parse().ok()?)
        }
    };
    Some(if neg { -q } else { q })
}

/// Grammar: `rational := '-'? digits ('/' digits)?`;
/// `scalar := rational | rational ('+'|'-') rational 'i' | rational 'i' | 'i'`
/// (also `-i` and `a±i`).
impl FromStr for Scalar {
    type Err = HodgeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HodgeError::Parse(format!("invalid scalar literal {s:?}"));
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(t).map(Scalar::real).ok_or_else(bad);
        };
        // Split at the last sign that is not the leading character.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let imag = |txt: &str| -> Option<BigRational> {
            match txt {
                "" | "+" => Some(BigRational::one()),
                "-" => Some(-BigRational::one()),
                _ => parse_rational(txt.strip_prefix('+').unwrap_or(txt)),
            }
        };
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k]).ok_or_else(bad)?;
                let im = imag(&body[k..]).ok_or_else(bad)?;
                Ok(Scalar { re, im })
            }
            None => Ok(Scalar { re: BigRational::zero(), im: imag(body).ok_or_else(bad)? }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(s("3"), Scalar::from(3));
        assert_eq!(s("-3/4"), Scalar::ratio(-3, 4));
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("2i"), Scalar::gauss(0, 2));
        assert_eq!(s("1/2-3/5i"), Scalar::new(BigRational::new(1.into(), 2.into()), BigRational::new((-3).into(), 5.into())));
        assert_eq!(s("-1+i"), Scalar::gauss(-1, 1));
        assert_eq!(s("4/6"), Scalar::ratio(2, 3));
        for bad in ["", "1/0", "abc", "1.5", "i2", "--1", "1+"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_roundtrip() {
        for t in ["0", "-7", "5/3", "i", "-i", "2i", "-1/2i", "1+i", "1-i", "-2/3+7/5i"] {
            assert_eq!(s(t).to_string(), t);
            assert_eq!(s(&s(t).to_string()), s(t));
        }
    }

    #[test]
    fn field_ops() {
        let a = Scalar::gauss(1, 2);
        let b = Scalar::gauss(3, -1);
        assert_eq!(&a * &b, Scalar::gauss(5, 5));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert!(Scalar::from(4).is_integral());
        assert!(!Scalar::ratio(1, 2).is_integral());
        assert!(!Scalar::i().is_integral());
        assert!(Scalar::zero().inv().is_none());
    }
}
