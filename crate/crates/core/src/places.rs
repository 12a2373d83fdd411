//! Places of the base curve (primes of ℤ, monic irreducible polynomials in
//! t, and the point at infinity of P¹), valuations, residue maps, and
//! divisors with geometric and log-norm degrees.

use crate::field::{Field, Rat};
use crate::intfactor;
use crate::kappa::{KPoly, KappaElem};
use crate::ratfunc::{QPoly, RatFunc};
use crate::zassenhaus;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::rc::Rc;

/// A global base field: ℚ or ℚ(t). All place-wise machinery is written
/// against this trait.
pub trait GlobalField {
    type Elem: Field + Display;
    type Place: Clone + Ord + Debug;

    const FUNCTION_FIELD: bool;

    /// Normalized valuation; None encodes v(0) = +∞.
    fn valuation(x: &Self::Elem, p: &Self::Place) -> Option<i64>;
    /// Image in the residue field; panics on a pole.
    fn residue(x: &Self::Elem, p: &Self::Place) -> KappaElem;
    /// Σ v_p(x)[p] over all places with nonzero valuation.
    fn principal_divisor(x: &Self::Elem) -> Divisor<Self::Place>;
    /// Geometric degree of the place (residue degree over the base).
    fn place_degree(p: &Self::Place) -> i64;
    /// log-norm weight: log p for primes, the geometric degree for ℚ(t).
    fn place_lognorm(p: &Self::Place) -> f64;
    fn uniformizer(p: &Self::Place) -> Self::Elem;
    fn infinity_place() -> Option<Self::Place>;
    /// A degree-0 lift of a residue element back into the field.
    fn lift_residue(c: &KappaElem, p: &Self::Place) -> Self::Elem;
    /// Roots of f in the residue field at p that are visible without
    /// extension-field factorization.
    fn residue_roots(f: &KPoly, p: &Self::Place) -> Vec<KappaElem>;
    fn place_label(p: &Self::Place) -> String;
    /// Scale a coefficient vector to the canonical representative of its
    /// projective class: base-ring coefficients, unit content, normalized
    /// sign. Guarantees min valuation 0 at every finite place.
    fn canonicalize(coeffs: &[Self::Elem]) -> Vec<Self::Elem>;
}

/// The rational numbers; places are the finite primes.
pub struct QField;

/// ℚ(t); places are monic irreducible polynomials and the point at
/// infinity of P¹.
pub struct FunField;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Prime(pub BigInt);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunPlace {
    Finite(QPoly),
    Infinity,
}

impl PartialOrd for FunPlace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FunPlace {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FunPlace::Infinity, FunPlace::Infinity) => Ordering::Equal,
            (FunPlace::Infinity, _) => Ordering::Greater,
            (_, FunPlace::Infinity) => Ordering::Less,
            (FunPlace::Finite(a), FunPlace::Finite(b)) => a
                .deg()
                .cmp(&b.deg())
                .then_with(|| a.coeffs().cmp(b.coeffs())),
        }
    }
}

/// A finite formal sum of places with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor<P: Ord> {
    entries: BTreeMap<P, i64>,
}

impl<P: Ord + Clone> Default for Divisor<P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P: Ord + Clone> Divisor<P> {
    pub fn new() -> Self {
        Divisor {
            entries: BTreeMap::new(),
        }
    }

    pub fn add_place(&mut self, p: P, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.entries.get(&p).copied().unwrap_or(0) + c;
        if v == 0 {
            self.entries.remove(&p);
        } else {
            self.entries.insert(p, v);
        }
    }

    pub fn coeff(&self, p: &P) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, i64)> {
        self.entries.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &P> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_place(p.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_place(p.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Divisor::new();
        for (p, c) in self.iter() {
            out.add_place(p.clone(), c * k);
        }
        out
    }

    /// Divide all coefficients by k exactly; None if any is not divisible.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        let mut out = Divisor::new();
        for (p, c) in self.iter() {
            if c % k != 0 {
                return None;
            }
            out.add_place(p.clone(), c / k);
        }
        Some(out)
    }

    /// Coefficient-1 divisor on the same support.
    pub fn reduced(&self) -> Self {
        let mut out = Divisor::new();
        for (p, _) in self.iter() {
            out.add_place(p.clone(), 1);
        }
        out
    }
}

/// Geometric degree: Σ m_p · deg(p).
pub fn divisor_degree<F: GlobalField>(d: &Divisor<F::Place>) -> i64 {
    d.iter().map(|(p, c)| c * F::place_degree(p)).sum()
}

/// Log-norm degree: Σ m_p · log p over ℚ; the geometric degree over ℚ(t).
pub fn divisor_lognorm<F: GlobalField>(d: &Divisor<F::Place>) -> f64 {
    d.iter().map(|(p, c)| c as f64 * F::place_lognorm(p)).sum()
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    let mut m = n.abs();
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

impl GlobalField for QField {
    type Elem = Rat;
    type Place = Prime;

    const FUNCTION_FIELD: bool = false;

    fn valuation(x: &Rat, p: &Prime) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        Some(int_valuation(x.numer(), &p.0) - int_valuation(x.denom(), &p.0))
    }

    fn residue(x: &Rat, p: &Prime) -> KappaElem {
        assert!(
            Self::valuation(x, p).map_or(true, |v| v >= 0),
            "pole at the place"
        );
        let rp = Rc::new(p.0.clone());
        KappaElem::Q(x.clone()) + KappaElem::fp(rp, BigInt::zero())
    }

    fn principal_divisor(x: &Rat) -> Divisor<Prime> {
        assert!(!x.is_zero(), "divisor of zero");
        let mut out = Divisor::new();
        for (q, e) in intfactor::factor(&x.numer().abs().to_biguint().unwrap()) {
            out.add_place(Prime(BigInt::from(q)), e as i64);
        }
        for (q, e) in intfactor::factor(&x.denom().abs().to_biguint().unwrap()) {
            out.add_place(Prime(BigInt::from(q)), -(e as i64));
        }
        out
    }

    fn place_degree(_p: &Prime) -> i64 {
        1
    }

    fn place_lognorm(p: &Prime) -> f64 {
        p.0.to_f64().unwrap().ln()
    }

    fn uniformizer(p: &Prime) -> Rat {
        Rat::from_integer(p.0.clone())
    }

    fn infinity_place() -> Option<Prime> {
        None
    }

    fn lift_residue(c: &KappaElem, _p: &Prime) -> Rat {
        match c {
            KappaElem::Q(x) => x.clone(),
            KappaElem::Fp { r, .. } => Rat::from_integer(r.clone()),
            KappaElem::Ext { .. } => panic!("extension residue over the rationals"),
        }
    }

    fn residue_roots(f: &KPoly, p: &Prime) -> Vec<KappaElem> {
        let rp = Rc::new(p.0.clone());
        match p.0.to_u64() {
            Some(small) if small < (1 << 31) => {
                let fp: Vec<u64> = f
                    .coeffs()
                    .iter()
                    .map(|c| {
                        let e = c.clone() + KappaElem::fp(rp.clone(), BigInt::zero());
                        match e {
                            KappaElem::Fp { r, .. } => r.to_u64().unwrap(),
                            _ => unreachable!(),
                        }
                    })
                    .collect();
                let fp = crate::fpfactor::trim(fp);
                if fp.is_empty() {
                    return vec![];
                }
                crate::fpfactor::roots_mod_p(&fp, small, 0)
                    .into_iter()
                    .map(|r| KappaElem::fp(rp.clone(), BigInt::from(r)))
                    .collect()
            }
            _ => linear_root(f),
        }
    }

    fn place_label(p: &Prime) -> String {
        p.0.to_string()
    }

    fn canonicalize(coeffs: &[Rat]) -> Vec<Rat> {
        use num_integer::Integer;
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            if !c.is_zero() {
                den_lcm = den_lcm.lcm(c.denom());
            }
        }
        let cleared: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * &den_lcm / c.denom())
            .collect();
        let mut content = BigInt::zero();
        for c in &cleared {
            content = content.gcd(c);
        }
        assert!(!content.is_zero(), "all coefficients zero");
        let first = cleared.iter().find(|c| !c.is_zero()).unwrap();
        if first.is_negative() {
            content = -content;
        }
        cleared
            .into_iter()
            .map(|c| Rat::from_integer(c / &content))
            .collect()
    }
}

fn poly_multiplicity(f: &QPoly, pi: &QPoly) -> i64 {
    let mut v = 0;
    let mut m = f.clone();
    while let Some(q) = m.div_exact(pi) {
        m = q;
        v += 1;
    }
    v
}

fn linear_root(f: &KPoly) -> Vec<KappaElem> {
    if f.deg() == Some(1) {
        vec![-(f.coeff(0) / f.coeff(1))]
    } else {
        vec![]
    }
}

impl GlobalField for FunField {
    type Elem = RatFunc;
    type Place = FunPlace;

    const FUNCTION_FIELD: bool = true;

    fn valuation(x: &RatFunc, p: &FunPlace) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        Some(match p {
            FunPlace::Finite(pi) => {
                poly_multiplicity(x.num(), pi) - poly_multiplicity(x.den(), pi)
            }
            FunPlace::Infinity => {
                x.den().deg().unwrap() as i64 - x.num().deg().unwrap() as i64
            }
        })
    }

    fn residue(x: &RatFunc, p: &FunPlace) -> KappaElem {
        if x.is_zero() {
            return KappaElem::zero();
        }
        match p {
            FunPlace::Finite(pi) => {
                let vn = poly_multiplicity(x.num(), pi);
                let vd = poly_multiplicity(x.den(), pi);
                assert!(vn >= vd, "pole at the place");
                if vn > vd {
                    return KappaElem::zero();
                }
                let mut num = x.num().clone();
                let mut den = x.den().clone();
                for _ in 0..vd {
                    num = num.div_exact(pi).unwrap();
                    den = den.div_exact(pi).unwrap();
                }
                if pi.deg() == Some(1) {
                    // residue field is Q: evaluate at the root of pi
                    let root = -(pi.coeff(0) / pi.coeff(1));
                    KappaElem::Q(num.eval(&root) / den.eval(&root))
                } else {
                    let rc = Rc::new(pi.clone());
                    let n = KappaElem::ext(rc.clone(), num);
                    let d = KappaElem::ext(rc, den);
                    n / d
                }
            }
            FunPlace::Infinity => {
                let dn = x.num().deg().unwrap();
                let dd = x.den().deg().unwrap();
                assert!(dd >= dn, "pole at infinity");
                if dd > dn {
                    KappaElem::zero()
                } else {
                    KappaElem::Q(x.num().leading() / x.den().leading())
                }
            }
        }
    }

    fn principal_divisor(x: &RatFunc) -> Divisor<FunPlace> {
        assert!(!x.is_zero(), "divisor of zero");
        let mut out = Divisor::new();
        for (pi, e) in zassenhaus::factor_q(x.num()) {
            out.add_place(FunPlace::Finite(pi), e as i64);
        }
        for (pi, e) in zassenhaus::factor_q(x.den()) {
            out.add_place(FunPlace::Finite(pi), -(e as i64));
        }
        let v_inf = x.den().deg().unwrap() as i64 - x.num().deg().unwrap() as i64;
        out.add_place(FunPlace::Infinity, v_inf);
        out
    }

    fn place_degree(p: &FunPlace) -> i64 {
        match p {
            FunPlace::Finite(pi) => pi.deg().unwrap() as i64,
            FunPlace::Infinity => 1,
        }
    }

    fn place_lognorm(p: &FunPlace) -> f64 {
        Self::place_degree(p) as f64
    }

    fn uniformizer(p: &FunPlace) -> RatFunc {
        match p {
            FunPlace::Finite(pi) => RatFunc::from_poly(pi.clone()),
            FunPlace::Infinity => RatFunc::one() / RatFunc::var(),
        }
    }

    fn infinity_place() -> Option<FunPlace> {
        Some(FunPlace::Infinity)
    }

    fn lift_residue(c: &KappaElem, p: &FunPlace) -> RatFunc {
        match (c, p) {
            (KappaElem::Q(x), FunPlace::Finite(pi)) if pi.deg() == Some(1) => {
                // the residue x at t = root lifts to the constant x
                RatFunc::constant(x.clone())
            }
            (KappaElem::Q(x), _) => RatFunc::constant(x.clone()),
            (KappaElem::Ext { r, .. }, FunPlace::Finite(_)) => RatFunc::from_poly(r.clone()),
            _ => panic!("residue does not belong to this place"),
        }
    }

    fn residue_roots(f: &KPoly, p: &FunPlace) -> Vec<KappaElem> {
        let rational_ctx = match p {
            FunPlace::Finite(pi) => pi.deg() == Some(1),
            FunPlace::Infinity => true,
        };
        if rational_ctx {
            let q: Option<Vec<Rat>> = f
                .coeffs()
                .iter()
                .map(|c| c.as_rat().cloned())
                .collect();
            match q {
                Some(coeffs) => zassenhaus::roots_q(&QPoly::new(coeffs))
                    .into_iter()
                    .map(KappaElem::Q)
                    .collect(),
                None => linear_root(f),
            }
        } else {
            linear_root(f)
        }
    }

    fn place_label(p: &FunPlace) -> String {
        match p {
            FunPlace::Finite(pi) => pi.to_string_var("t"),
            FunPlace::Infinity => "infinity".to_string(),
        }
    }

    fn canonicalize(coeffs: &[RatFunc]) -> Vec<RatFunc> {
        use num_integer::Integer;
        // clear polynomial denominators
        let mut den_lcm = QPoly::from_ints(&[1]);
        for c in coeffs {
            if !c.is_zero() {
                let g = den_lcm.gcd(c.den());
                den_lcm = den_lcm * c.den().div_exact(&g).unwrap();
            }
        }
        let cleared: Vec<QPoly> = coeffs
            .iter()
            .map(|c| c.num().clone() * den_lcm.div_exact(c.den()).unwrap())
            .collect();
        // divide by the monic polynomial content
        let mut content = QPoly::new(vec![]);
        for c in &cleared {
            content = content.gcd(c);
        }
        assert!(!content.is_zero(), "all coefficients zero");
        let primitive: Vec<QPoly> = cleared
            .iter()
            .map(|c| c.div_exact(&content).unwrap())
            .collect();
        // normalize the rational content: coefficients of all entries
        let mut den = BigInt::one();
        for c in primitive.iter().flat_map(|q| q.coeffs()) {
            if !c.is_zero() {
                den = den.lcm(c.denom());
            }
        }
        let mut num = BigInt::zero();
        for c in primitive.iter().flat_map(|q| q.coeffs()) {
            num = num.gcd(&(c.numer() * &den / c.denom()));
        }
        let first = primitive
            .iter()
            .find(|c| !c.is_zero())
            .unwrap()
            .leading();
        if (first * Rat::new(den.clone(), num.clone())).is_negative() {
            num = -num;
        }
        let scale = Rat::new(den, num);
        primitive
            .into_iter()
            .map(|c| RatFunc::from_poly(c.scale(&scale)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};
    use crate::parse::parse_ratfunc;

    fn place_t() -> FunPlace {
        FunPlace::Finite(QPoly::from_ints(&[0, 1]))
    }

    #[test]
    fn function_field_valuations() {
        let f = parse_ratfunc("t^3/(t - 1)", "t").unwrap();
        assert_eq!(FunField::valuation(&f, &place_t()), Some(3));
        assert_eq!(
            FunField::valuation(&f, &FunPlace::Finite(QPoly::from_ints(&[-1, 1]))),
            Some(-1)
        );
        assert_eq!(FunField::valuation(&f, &FunPlace::Infinity), Some(-2));
        let g = parse_ratfunc("t^3 + 1", "t").unwrap();
        assert_eq!(FunField::valuation(&g, &FunPlace::Infinity), Some(-3));
    }

    #[test]
    fn rational_valuation_and_residue() {
        let p5 = Prime(BigInt::from(5));
        assert_eq!(QField::valuation(&rat_int(50), &p5), Some(2));
        assert_eq!(QField::valuation(&rat(1, 25), &p5), Some(-2));
        // 7/3 mod 5 = 7 * 3^{-1} = 4
        let r = QField::residue(&rat(7, 3), &p5);
        assert_eq!(
            r,
            KappaElem::fp(Rc::new(BigInt::from(5)), BigInt::from(4))
        );
    }

    #[test]
    fn residues_over_function_field() {
        // (t^2+3)/(t-2) at t-1 -> 4/(-1) = -4
        let f = parse_ratfunc("(t^2 + 3)/(t - 2)", "t").unwrap();
        let p = FunPlace::Finite(QPoly::from_ints(&[-1, 1]));
        assert_eq!(FunField::residue(&f, &p), KappaElem::Q(rat_int(-4)));
        // a + b t^N at t -> a
        let g = parse_ratfunc("2 + 3*t^4", "t").unwrap();
        assert_eq!(FunField::residue(&g, &place_t()), KappaElem::Q(rat_int(2)));
        // degree-equal at infinity -> ratio of leading coefficients
        let h = parse_ratfunc("(2*t^2 + 1)/(3*t^2 - t)", "t").unwrap();
        assert_eq!(
            FunField::residue(&h, &FunPlace::Infinity),
            KappaElem::Q(rat(2, 3))
        );
    }

    #[test]
    fn principal_divisors_have_degree_zero() {
        let f = parse_ratfunc("t^2/(t - 1)", "t").unwrap();
        let d = FunField::principal_divisor(&f);
        assert_eq!(d.coeff(&place_t()), 2);
        assert_eq!(d.coeff(&FunPlace::Finite(QPoly::from_ints(&[-1, 1]))), -1);
        assert_eq!(d.coeff(&FunPlace::Infinity), -1);
        assert_eq!(divisor_degree::<FunField>(&d), 0);
    }

    #[test]
    fn rational_principal_divisor() {
        let d = QField::principal_divisor(&rat_int(12));
        assert_eq!(d.coeff(&Prime(BigInt::from(2))), 2);
        assert_eq!(d.coeff(&Prime(BigInt::from(3))), 1);
        assert_eq!(divisor_degree::<QField>(&d), 3);
        let ln = divisor_lognorm::<QField>(&d);
        assert!((ln - 12f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn canonical_ordering_of_places() {
        let mut d: Divisor<FunPlace> = Divisor::new();
        d.add_place(FunPlace::Infinity, 1);
        d.add_place(FunPlace::Finite(QPoly::from_ints(&[1, 0, 1])), 1);
        d.add_place(place_t(), 1);
        let order: Vec<String> = d.support().map(FunField::place_label).collect();
        assert_eq!(order, vec!["t", "t^2 + 1", "infinity"]);
    }

    #[test]
    fn canonicalize_function_field_vector() {
        // (1/t, 2t) -> clear: (1, 2t^2), content 1, rational content 1
        let v = vec![
            parse_ratfunc("1/t", "t").unwrap(),
            parse_ratfunc("2*t", "t").unwrap(),
        ];
        let c = FunField::canonicalize(&v);
        assert_eq!(c[0], parse_ratfunc("1", "t").unwrap());
        assert_eq!(c[1], parse_ratfunc("2*t^2", "t").unwrap());
        // common content is divided out, sign normalized
        let w = vec![
            parse_ratfunc("-2*t", "t").unwrap(),
            parse_ratfunc("-4*t^2", "t").unwrap(),
        ];
        let c = FunField::canonicalize(&w);
        assert_eq!(c[0], parse_ratfunc("1", "t").unwrap());
        assert_eq!(c[1], parse_ratfunc("2*t", "t").unwrap());
    }

    #[test]
    fn canonicalize_rationals() {
        let v = vec![rat(-2, 3), rat(-4, 1), rat(0, 1)];
        let c = QField::canonicalize(&v);
        assert_eq!(c, vec![rat_int(1), rat_int(6), rat_int(0)]);
    }
}
