//! Dense univariate polynomials over an exact field.
//!
//! Coefficients are stored lowest degree first; the zero polynomial is the
//! empty coefficient vector and the leading coefficient is always nonzero.

use crate::field::Field;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&n| T::from_int(n)).collect())
    }

    /// The monomial x.
    pub fn var() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    /// c·x^k
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k];
        v.push(c);
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::new(vec![]);
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * T::from_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![T::zero(); k];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.leading().inv();
        self.scale(&li)
    }

    /// Euclidean division; panics if `div` is zero.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.deg().unwrap();
        if self.deg().map_or(true, |d| d < dd) {
            return (Poly::new(vec![]), self.clone());
        }
        let lead_inv = div.leading().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].clone() * lead_inv.clone();
            for j in 0..dd {
                rem[i - dd + j] = rem[i - dd + j].clone() - q.clone() * div.coeffs[j].clone();
            }
            rem[i] = T::zero();
            quot[i - dd] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; None if the remainder is nonzero.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        let (q, r) = self.divrem(div);
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.divrem(div).1
    }

    /// Monic gcd, with gcd(f, 0) = monic(f) and gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s·self + t·other = g, g monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(T::one()), Poly::new(vec![]));
        let (mut t0, mut t1) = (Poly::new(vec![]), Poly::constant(T::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let ns = s0 - q.clone() * s1.clone();
            s0 = s1;
            s1 = ns;
            let nt = t0 - q * t1.clone();
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.leading().inv();
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::constant(T::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::new(vec![]);
        for c in self.coeffs.iter().rev() {
            acc = acc * inner.clone() + Poly::constant(c.clone());
        }
        acc
    }

    /// Coefficients reversed: x^n·f(1/x) for n = deg f.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(v)
    }

    /// Squarefree decomposition by Yun's algorithm (characteristic 0).
    /// Returns monic pairwise-coprime parts with strictly increasing
    /// multiplicities; the product of part^mult equals self up to the
    /// leading coefficient.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.monic();
        if f.is_constant() {
            return vec![];
        }
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let c = df.div_exact(&a).expect("gcd divides");
        let mut d = c - b.derivative();
        let mut out = Vec::new();
        let mut i = 1u32;
        while b.deg().map_or(false, |n| n > 0) {
            let p = b.gcd(&d);
            if p.deg().map_or(false, |n| n > 0) {
                out.push((p.clone(), i));
            }
            b = b.div_exact(&p).expect("gcd divides");
            let c2 = d.div_exact(&p).expect("gcd divides");
            d = c2 - b.derivative();
            i += 1;
        }
        out
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(T, T)]) -> Self {
        let mut acc = Poly::new(vec![]);
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut num = Poly::constant(T::one());
            let mut den = T::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                num = num * Poly::new(vec![xj.clone().neg(), T::one()]);
                den = den * (xi.clone() - xj.clone());
            }
            acc = acc + num.scale(&(yi.clone() / den));
        }
        acc
    }

    pub fn to_string_var(&self, var: &str) -> String
    where
        T: fmt::Display,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            let term = match i {
                0 => mag,
                _ => {
                    let xp = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if mag == "1" {
                        xp
                    } else {
                        format!("{mag}*{xp}")
                    }
                }
            };
            if parts.is_empty() {
                if sign == "-" {
                    parts.push(format!("-{term}"));
                } else {
                    parts.push(term);
                }
            } else {
                parts.push(format!(" {} {}", if sign == "-" { "-" } else { "+" }, term));
            }
        }
        parts.concat()
    }
}

impl<T: Field> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            v.push(a + b);
        }
        Poly::new(v)
    }
}

impl<T: Field> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        self + (-rhs)
    }
}

impl<T: Field> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Field> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::new(vec![]);
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<T: Field + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_int, Rat};

    type QP = Poly<Rat>;

    fn p(coeffs: &[i64]) -> QP {
        QP::from_ints(coeffs)
    }

    #[test]
    fn gcd_common_factor() {
        // (x^2 - 1, x - 1) -> x - 1
        let g = p(&[-1, 0, 1]).gcd(&p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        // (y^2, 0) -> y^2 monic
        let g = p(&[0, 0, 3]).gcd(&QP::new(vec![]));
        assert_eq!(g, p(&[0, 0, 1]));
        assert!(QP::new(vec![]).gcd(&QP::new(vec![])).is_zero());
    }

    #[test]
    fn divrem_roundtrip() {
        let f = p(&[1, 2, 3, 4, 5]);
        let g = p(&[2, 0, 1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q * g + r, f);
    }

    #[test]
    fn squarefree_shape() {
        // (x-1)^3 (x+3) -> [(x+3,1), (x-1,3)]
        let f = p(&[-1, 1]).pow(3) * p(&[3, 1]);
        let parts = f.squarefree_decomposition();
        assert_eq!(parts, vec![(p(&[3, 1]), 1), (p(&[-1, 1]), 3)]);
        assert_eq!(p(&[0, 1]).squarefree_decomposition(), vec![(p(&[0, 1]), 1)]);
    }

    #[test]
    fn xgcd_bezout() {
        let f = p(&[1, 3, 1]);
        let g = p(&[4, 1]);
        let (d, s, t) = f.xgcd(&g);
        assert_eq!(s * f + t * g, d);
        assert!(d.is_constant());
    }

    #[test]
    fn interpolation_recovers() {
        let f = p(&[1, -2, 0, 7]);
        let pts: Vec<(Rat, Rat)> = (0..5).map(|i| (rat_int(i), f.eval(&rat_int(i)))).collect();
        assert_eq!(QP::interpolate(&pts), f);
    }

    #[test]
    fn display_terms() {
        assert_eq!(p(&[1, -2, 1]).to_string_var("t"), "t^2 - 2*t + 1");
        assert_eq!(
            QP::new(vec![rat_int(0), rat_int(0), rat_int(0), crate::field::rat(3, 2)])
                .to_string_var("t"),
            "3/2*t^3"
        );
    }
}
