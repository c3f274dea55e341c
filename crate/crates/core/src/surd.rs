//! Exact arithmetic in `Q(√d)`: numbers `a + b√d` with rational `a, b` and a
//! square-free integer `d ≥ 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    pub rational: Rational,
    pub coeff: Rational,
    /// Square-free; `1` (with `coeff = 0`) for plain rationals.
    pub radicand: i128,
}

impl QuadraticSurd {
    pub fn from_rational(q: Rational) -> Self {
        QuadraticSurd {
            rational: q,
            coeff: Rational::zero(),
            radicand: 1,
        }
    }

    /// `a + b√d`, pulling square factors out of `d`.
    pub fn new(a: Rational, b: Rational, d: i128) -> Self {
        assert!(d >= 0, "negative radicand {d}");
        if d == 0 || b.is_zero() {
            return Self::from_rational(a);
        }
        let (square, free) = split_square(d);
        let b = b * Rational::from_integer(square);
        if free == 1 {
            return Self::from_rational(a + b);
        }
        QuadraticSurd {
            rational: a,
            coeff: b,
            radicand: free,
        }
    }

    /// `√q` for a non-negative rational `q`.
    pub fn sqrt(q: Rational) -> Self {
        assert!(!q.is_negative(), "square root of negative {q}");
        // √(p/r) = √(p r) / r
        let (p, r) = (*q.numer(), *q.denom());
        Self::new(Rational::zero(), Rational::new(1, r), p * r)
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    fn unify(self, other: Self) -> (Self, Self, i128) {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => (self, other, 1),
            (true, false) => (self, other, other.radicand),
            (false, true) => (self, other, self.radicand),
            (false, false) => {
                assert_eq!(self.radicand, other.radicand, "mixing different quadratic fields");
                (self, other, self.radicand)
            }
        }
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&Rational::zero());
        let b = self.coeff.cmp(&Rational::zero());
        if a == b || b == Ordering::Equal {
            return a;
        }
        if a == Ordering::Equal {
            return b;
        }
        // opposite signs: compare a² with b² d
        let a2 = self.rational * self.rational;
        let b2d = self.coeff * self.coeff * Rational::from_integer(self.radicand);
        match a2.cmp(&b2d) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: Rational| q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap();
        f(self.rational) + f(self.coeff) * (self.radicand as f64).sqrt()
    }

    /// `(p, q, den)` with value `(p + q√d) / den` over a common positive denominator.
    pub fn common_form(&self) -> (i128, i128, i128) {
        let den = self.rational.denom().lcm(self.coeff.denom());
        let p = self.rational.numer() * (den / self.rational.denom());
        let q = self.coeff.numer() * (den / self.coeff.denom());
        (p, q, den)
    }
}

fn split_square(d: i128) -> (i128, i128) {
    let (mut square, mut free, mut rest) = (1i128, 1i128, d);
    let mut p = 2i128;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            square *= p;
        }
        if rest % p == 0 {
            rest /= p;
            free *= p;
        }
        p += 1;
    }
    (square, free * rest)
}

impl Add for QuadraticSurd {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (a, b, d) = self.unify(rhs);
        Self::new(a.rational + b.rational, a.coeff + b.coeff, d)
    }
}

impl Neg for QuadraticSurd {
    type Output = Self;

    fn neg(self) -> Self {
        QuadraticSurd {
            rational: -self.rational,
            coeff: -self.coeff,
            radicand: self.radicand,
        }
    }
}

impl Sub for QuadraticSurd {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for QuadraticSurd {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b, d) = self.unify(rhs);
        let dq = Rational::from_integer(d);
        Self::new(
            a.rational * b.rational + a.coeff * b.coeff * dq,
            a.rational * b.coeff + a.coeff * b.rational,
            d,
        )
    }
}

impl Mul<Rational> for QuadraticSurd {
    type Output = Self;

    fn mul(self, rhs: Rational) -> Self {
        self * QuadraticSurd::from_rational(rhs)
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

/// Formats as `(p+q√d)/den`, or a plain rational.
impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let (p, q, den) = self.common_form();
        let mut num = String::new();
        if p != 0 {
            num.push_str(&p.to_string());
        }
        let qa = q.abs();
        let sign = if q < 0 { "-" } else if p != 0 { "+" } else { "" };
        let coeff = if qa == 1 { String::new() } else { qa.to_string() };
        num.push_str(&format!("{sign}{coeff}√{}", self.radicand));
        if den == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/{den}")
        }
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadraticSurd", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("decimal", &format!("{:.15}", self.to_f64()))?;
        st.end()
    }
}

/// Serializes a rational as `"p/q"` (or `"p"`), for `#[serde(serialize_with)]`.
pub fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn square_extraction() {
        assert_eq!(split_square(277), (1, 277));
        assert_eq!(split_square(72), (6, 2));
        assert_eq!(split_square(1), (1, 1));
        let s = QuadraticSurd::sqrt(q(277 * 16, 9));
        assert_eq!((s.coeff, s.radicand), (q(4, 3), 277));
        assert!(QuadraticSurd::sqrt(q(49, 4)).is_rational());
    }

    #[test]
    fn field_arithmetic() {
        let r = QuadraticSurd::new(q(1, 1), q(1, 1), 2);
        let sq = r * r; // 3 + 2√2
        assert_eq!((sq.rational, sq.coeff), (q(3, 1), q(2, 1)));
        let conj = QuadraticSurd::new(q(1, 1), q(-1, 1), 2);
        assert!((r * conj).is_rational());
        assert_eq!((r * conj).rational, q(-1, 1));
    }

    #[test]
    fn exact_sign_and_order() {
        let a = QuadraticSurd::new(q(3, 2), q(-1, 1), 2); // 1.5 - 1.414 > 0
        assert_eq!(a.signum(), Ordering::Greater);
        let b = QuadraticSurd::new(q(7, 5), q(-1, 1), 2); // 1.4 - 1.414 < 0
        assert_eq!(b.signum(), Ordering::Less);
        assert!(b < a);
    }

    #[test]
    fn display_common_form() {
        let s = QuadraticSurd::new(q(31097, 59248), q(277, 59248), 277);
        assert_eq!(s.to_string(), "(31097+277√277)/59248");
        let t = QuadraticSurd::new(q(45, 184), q(-1, 184), 277);
        assert_eq!(t.to_string(), "(45-√277)/184");
        assert_eq!(QuadraticSurd::from_rational(q(2, 3)).to_string(), "2/3");
    }
}
