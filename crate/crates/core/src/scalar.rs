//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rational, im: Rational) -> Gaussian {
    Complex::new(re, im)
}

pub fn gi(re: i64, im: i64) -> Gaussian {
    Complex::new(int(re), int(im))
}

pub fn real(re: Rational) -> Gaussian {
    Complex::new(re, Rational::zero())
}

pub fn imag_unit() -> Gaussian {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn is_real(z: &Gaussian) -> bool {
    z.im.is_zero()
}

/// `|z|` is generally irrational, so only `|re|` and `|im|` are exposed.
/// Product that skips zero and unit factors.
pub fn rmul(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        Rational::zero()
    } else if b.is_one() {
        a.clone()
    } else if a.is_one() {
        b.clone()
    } else {
        a * b
    }
}

/// Gaussian product that skips vanishing real or imaginary parts.
pub fn gmul(a: &Gaussian, b: &Gaussian) -> Gaussian {
    match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => Complex::new(rmul(&a.re, &b.re), Rational::zero()),
        (true, false) => Complex::new(rmul(&a.re, &b.re), rmul(&a.re, &b.im)),
        (false, true) => Complex::new(rmul(&a.re, &b.re), rmul(&a.im, &b.re)),
        (false, false) => a * b,
    }
}

pub fn abs_rat(r: &Rational) -> Rational {
    r.abs()
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a Gaussian rational as `a`, `b*i`, `i`, `-i`, or `a+b*i`, without
/// surrounding parentheses.
pub fn fmt_gaussian(z: &Gaussian) -> String {
    let mut out = String::new();
    if z.im.is_zero() {
        return fmt_rational(&z.re);
    }
    if !z.re.is_zero() {
        out.push_str(&fmt_rational(&z.re));
        if z.im.is_positive() {
            out.push('+');
        }
    }
    if z.im == Rational::one() {
        out.push('i');
    } else if z.im == -Rational::one() {
        out.push_str("-i");
    } else {
        let _ = write!(out, "{}*i", fmt_rational(&z.im));
    }
    out
}

/// Parses `n` or `n/d` (optionally signed).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

pub fn factorial(m: u32) -> Rational {
    let mut acc = BigInt::one();
    for j in 2..=m {
        acc *= BigInt::from(j);
    }
    BigRational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rendering() {
        assert_eq!(fmt_gaussian(&gi(3, 0)), "3");
        assert_eq!(fmt_gaussian(&gi(0, 1)), "i");
        assert_eq!(fmt_gaussian(&gi(0, -1)), "-i");
        assert_eq!(fmt_gaussian(&gi(2, -3)), "2-3*i");
        assert_eq!(fmt_gaussian(&gauss(rat(1, 2), rat(3, 4))), "1/2+3/4*i");
    }

    #[test]
    fn rational_parse() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
