//! Rational functions in t over ℚ, kept in canonical form: the denominator
//! is monic and coprime to the numerator, so equality is coefficientwise.

use crate::field::{Field, Rat};
use crate::poly::Poly;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type QPoly = Poly<Rat>;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    /// Construct and reduce; panics if `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return RatFunc {
                num,
                den: QPoly::constant(Rat::one()),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lead_inv = den.leading().inv();
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::constant(Rat::one()),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    /// The variable t.
    pub fn var() -> Self {
        Self::from_poly(QPoly::var())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The numerator, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// t ↦ 1/t. Maps the place at infinity to the place t = 0.
    pub fn flip(&self) -> Self {
        let dn = self.num.deg().unwrap_or(0);
        let dd = self.den.deg().unwrap_or(0);
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        // f(1/t) = t^(dd-dn) * rev(num)/rev(den)
        if dd >= dn {
            num = num.shift(dd - dn);
        } else {
            den = den.shift(dn - dd);
        }
        RatFunc::new(num, den)
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: QPoly::new(vec![]),
            den: QPoly::constant(Rat::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::constant(Rat::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: Self) -> RatFunc {
        RatFunc::new(
            self.num.clone() * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: Self) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: Self) -> RatFunc {
        RatFunc::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: Self) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl Field for RatFunc {
    fn from_int(n: i64) -> Self {
        RatFunc::constant(Rat::from_int(n))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
