//! Exact scalars: rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Rational = BigRational;

/// Gaussian rational `re + i*im` with exact rational parts.
pub type Scalar = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rint(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn int(n: i64) -> Scalar {
    Complex::new(rint(n), Rational::zero())
}

pub fn real(r: Rational) -> Scalar {
    Complex::new(r, Rational::zero())
}

pub fn gauss(re: Rational, im: Rational) -> Scalar {
    Complex::new(re, im)
}

pub fn imag_unit() -> Scalar {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn is_real(s: &Scalar) -> bool {
    s.im.is_zero()
}

/// Parses `p/q`, `p` or `-p/q`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `re,im` as used in the map file format.
pub fn fmt_pair(s: &Scalar) -> String {
    format!("{},{}", fmt_rational(&s.re), fmt_rational(&s.im))
}

/// Human-readable form: `3/2`, `-i`, `(1/2+3i)`.
pub fn fmt_scalar(s: &Scalar) -> String {
    if s.im.is_zero() {
        return fmt_rational(&s.re);
    }
    let im = if s.im.abs().is_one() {
        if s.im.is_negative() {
            "-i".to_string()
        } else {
            "i".to_string()
        }
    } else {
        format!("{}i", fmt_rational(&s.im))
    };
    if s.re.is_zero() {
        im
    } else if im.starts_with('-') {
        format!("({}{})", fmt_rational(&s.re), im)
    } else {
        format!("({}+{})", fmt_rational(&s.re), im)
    }
}

/// Least common multiple of the denominators of both parts.
pub fn denom_lcm(s: &Scalar) -> BigInt {
    num_integer::Integer::lcm(s.re.denom(), s.im.denom())
}

/// Exact test `|s| == 1`.
pub fn is_unit_modulus(s: &Scalar) -> bool {
    s.norm_sqr().is_one()
}
