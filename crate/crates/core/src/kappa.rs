//! Residue field elements: ℚ, prime fields 𝔽_p, and simple extensions
//! ℚ[t]/(π). The `Q` variant doubles as an untagged constant so that
//! `Zero`/`One` exist without a field context; arithmetic coerces it into
//! whichever tagged field it meets.

use crate::field::{Field, Rat};
use crate::poly::Poly;
use crate::ratfunc::QPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;

#[derive(Clone, Debug)]
pub enum KappaElem {
    /// A rational constant: an element of ℚ itself, or one awaiting
    /// coercion into a tagged residue field.
    Q(Rat),
    /// Element of 𝔽_p, normalized to 0 ≤ r < p.
    Fp { p: Rc<BigInt>, r: BigInt },
    /// Element of ℚ[t]/(π), reduced mod the monic irreducible π.
    Ext { pi: Rc<QPoly>, r: QPoly },
}

pub type KPoly = Poly<KappaElem>;

impl KappaElem {
    pub fn fp(p: Rc<BigInt>, r: BigInt) -> Self {
        let r = r.mod_floor(&p);
        KappaElem::Fp { p, r }
    }

    pub fn ext(pi: Rc<QPoly>, r: QPoly) -> Self {
        let r = r.rem(&pi);
        KappaElem::Ext { pi, r }
    }

    fn rat_in_fp(c: &Rat, p: &BigInt) -> BigInt {
        let den = c.denom().mod_floor(p);
        assert!(!den.is_zero(), "denominator vanishes in residue field");
        let inv = mod_inverse(&den, p);
        (c.numer().mod_floor(p) * inv).mod_floor(p)
    }

    /// Coerce a pair into a common field; panics on a genuine mismatch.
    fn unify(self, other: Self) -> (Self, Self) {
        match (&self, &other) {
            (KappaElem::Q(c), KappaElem::Fp { p, .. }) => {
                let r = Self::rat_in_fp(c, p);
                (KappaElem::Fp { p: p.clone(), r }, other)
            }
            (KappaElem::Fp { p, .. }, KappaElem::Q(c)) => {
                let r = Self::rat_in_fp(c, p);
                let q = p.clone();
                (self, KappaElem::Fp { p: q, r })
            }
            (KappaElem::Q(c), KappaElem::Ext { pi, .. }) => (
                KappaElem::Ext {
                    pi: pi.clone(),
                    r: QPoly::constant(c.clone()),
                },
                other,
            ),
            (KappaElem::Ext { pi, .. }, KappaElem::Q(c)) => {
                let e = KappaElem::Ext {
                    pi: pi.clone(),
                    r: QPoly::constant(c.clone()),
                };
                (self, e)
            }
            (KappaElem::Fp { p: p1, .. }, KappaElem::Fp { p: p2, .. }) => {
                assert_eq!(p1, p2, "residue field characteristic mismatch");
                (self, other)
            }
            (KappaElem::Ext { pi: a, .. }, KappaElem::Ext { pi: b, .. }) => {
                assert_eq!(a, b, "residue field modulus mismatch");
                (self, other)
            }
            _ => (self, other),
        }
    }

    /// The characteristic of the tagged field, if positive.
    pub fn char(&self) -> Option<BigInt> {
        match self {
            KappaElem::Fp { p, .. } => Some((**p).clone()),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            KappaElem::Q(c) => Some(c),
            _ => None,
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "non-invertible residue");
    e.x.mod_floor(p)
}

impl PartialEq for KappaElem {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.clone().unify(other.clone());
        match (a, b) {
            (KappaElem::Q(x), KappaElem::Q(y)) => x == y,
            (KappaElem::Fp { r: x, .. }, KappaElem::Fp { r: y, .. }) => x == y,
            (KappaElem::Ext { r: x, .. }, KappaElem::Ext { r: y, .. }) => x == y,
            _ => false,
        }
    }
}

impl Zero for KappaElem {
    fn zero() -> Self {
        KappaElem::Q(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            KappaElem::Q(c) => c.is_zero(),
            KappaElem::Fp { r, .. } => r.is_zero(),
            KappaElem::Ext { r, .. } => r.is_zero(),
        }
    }
}

impl One for KappaElem {
    fn one() -> Self {
        KappaElem::Q(Rat::one())
    }
}

impl Add for KappaElem {
    type Output = KappaElem;
    fn add(self, rhs: Self) -> KappaElem {
        let (a, b) = self.unify(rhs);
        match (a, b) {
            (KappaElem::Q(x), KappaElem::Q(y)) => KappaElem::Q(x + y),
            (KappaElem::Fp { p, r: x }, KappaElem::Fp { r: y, .. }) => {
                let r = (x + y).mod_floor(&p);
                KappaElem::Fp { p, r }
            }
            (KappaElem::Ext { pi, r: x }, KappaElem::Ext { r: y, .. }) => {
                KappaElem::ext(pi, x + y)
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for KappaElem {
    type Output = KappaElem;
    fn sub(self, rhs: Self) -> KappaElem {
        self + (-rhs)
    }
}

impl Neg for KappaElem {
    type Output = KappaElem;
    fn neg(self) -> KappaElem {
        match self {
            KappaElem::Q(c) => KappaElem::Q(-c),
            KappaElem::Fp { p, r } => {
                let r = (-r).mod_floor(&p);
                KappaElem::Fp { p, r }
            }
            KappaElem::Ext { pi, r } => KappaElem::Ext { pi, r: -r },
        }
    }
}

impl Mul for KappaElem {
    type Output = KappaElem;
    fn mul(self, rhs: Self) -> KappaElem {
        let (a, b) = self.unify(rhs);
        match (a, b) {
            (KappaElem::Q(x), KappaElem::Q(y)) => KappaElem::Q(x * y),
            (KappaElem::Fp { p, r: x }, KappaElem::Fp { r: y, .. }) => {
                let r = (x * y).mod_floor(&p);
                KappaElem::Fp { p, r }
            }
            (KappaElem::Ext { pi, r: x }, KappaElem::Ext { r: y, .. }) => {
                KappaElem::ext(pi, x * y)
            }
            _ => unreachable!(),
        }
    }
}

impl Div for KappaElem {
    type Output = KappaElem;
    fn div(self, rhs: Self) -> KappaElem {
        assert!(!rhs.is_zero(), "division by zero residue");
        let (a, b) = self.unify(rhs);
        match (a, b) {
            (KappaElem::Q(x), KappaElem::Q(y)) => KappaElem::Q(x / y),
            (KappaElem::Fp { p, r: x }, KappaElem::Fp { r: y, .. }) => {
                let r = (x * mod_inverse(&y, &p)).mod_floor(&p);
                KappaElem::Fp { p, r }
            }
            (KappaElem::Ext { pi, r: x }, KappaElem::Ext { r: y, .. }) => {
                // invert y mod pi by Bezout
                let (g, s, _) = y.xgcd(&pi);
                assert!(g.deg() == Some(0), "non-invertible residue mod pi");
                let inv = s.scale(&g.coeff(0).inv());
                KappaElem::ext(pi, x * inv)
            }
            _ => unreachable!(),
        }
    }
}

impl Field for KappaElem {
    fn from_int(n: i64) -> Self {
        KappaElem::Q(Rat::from_int(n))
    }
}

impl fmt::Display for KappaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaElem::Q(c) => write!(f, "{c}"),
            KappaElem::Fp { r, .. } => write!(f, "{r}"),
            KappaElem::Ext { r, .. } => write!(f, "{}", r.to_string_var("t")),
        }
    }
}

/// Squarefree decomposition valid in any characteristic: Yun in char 0,
/// with the x^p-power reduction in char p (coefficients of a prime field
/// are their own p-th roots).
pub fn squarefree_decomposition(f: &KPoly) -> Vec<(KPoly, u32)> {
    let p = f.coeffs().iter().find_map(|c| c.char());
    match p {
        None => f.squarefree_decomposition(),
        Some(p) => {
            let mut out = Vec::new();
            char_p_squarefree(&f.monic(), &p, 1, &mut out);
            out
        }
    }
}

fn char_p_squarefree(f: &KPoly, p: &BigInt, mult: u32, out: &mut Vec<(KPoly, u32)>) {
    if f.deg().map_or(true, |d| d == 0) {
        return;
    }
    let df = f.derivative();
    if df.is_zero() {
        let step = p.to_usize().expect("characteristic exceeds the degree");
        let g = KPoly::new(f.coeffs().iter().cloned().step_by(step).collect());
        char_p_squarefree(&g, p, mult * step as u32, out);
        return;
    }
    let a = f.gcd(&df);
    let mut w = f.div_exact(&a).expect("gcd divides");
    let mut rest = a;
    let mut i = 1u32;
    while w.deg().map_or(false, |d| d > 0) {
        let y = w.gcd(&rest);
        let part = w.div_exact(&y).expect("gcd divides");
        if part.deg().map_or(false, |d| d > 0) {
            out.push((part.monic(), mult * i));
        }
        w = y.clone();
        rest = rest.div_exact(&y).expect("gcd divides");
        i += 1;
    }
    if rest.deg().map_or(false, |d| d > 0) {
        char_p_squarefree(&rest, p, mult, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    fn fp5(n: i64) -> KappaElem {
        KappaElem::fp(Rc::new(BigInt::from(5)), BigInt::from(n))
    }

    #[test]
    fn coercion_and_arithmetic_mod_p() {
        // 7/3 coerces to 4 mod 5
        let x = KappaElem::Q(rat(7, 3)) + fp5(0);
        assert_eq!(x, fp5(4));
        assert_eq!(fp5(2) * fp5(3), fp5(1));
        assert_eq!(fp5(1) / fp5(2), fp5(3));
        assert_eq!(fp5(2) - KappaElem::Q(rat_int(3)), fp5(4));
    }

    #[test]
    fn extension_field_ops() {
        // Q[t]/(t^2+1): t*t = -1, 1/t = -t
        let pi = Rc::new(QPoly::from_ints(&[1, 0, 1]));
        let t = KappaElem::ext(pi.clone(), QPoly::from_ints(&[0, 1]));
        let minus1 = KappaElem::ext(pi.clone(), QPoly::from_ints(&[-1]));
        assert_eq!(t.clone() * t.clone(), minus1);
        let inv = KappaElem::one() / t.clone();
        assert_eq!(inv, KappaElem::ext(pi, QPoly::from_ints(&[0, -1])));
    }

    #[test]
    fn char_p_squarefree_powers() {
        // (x+1)^5 (x+2) over F_5
        let lin1 = KPoly::new(vec![fp5(1), fp5(1)]);
        let lin2 = KPoly::new(vec![fp5(2), fp5(1)]);
        let f = lin1.pow(5) * lin2.clone();
        let parts = squarefree_decomposition(&f);
        assert_eq!(parts, vec![(lin2, 1), (lin1, 5)]);
    }

    #[test]
    fn char_zero_passthrough() {
        let f: KPoly = KPoly::from_ints(&[1, 2, 1]); // (x+1)^2
        let parts = squarefree_decomposition(&f);
        assert_eq!(parts, vec![(KPoly::from_ints(&[1, 1]), 2)]);
    }
}
