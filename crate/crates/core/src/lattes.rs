//! Lattès maps of short Weierstrass curves: division polynomials in the
//! coordinate ring, the degree-n² map induced by multiplication by n, the
//! resultant identity in degree 4, and the instability of reductions at
//! nodal specializations.

use crate::dynsys::Model;
use crate::field::{Field, Rat};
use crate::kappa::KappaElem;
use crate::poly::Poly;
use crate::stability::{classify, StabilityClass};
use num_traits::Zero;

/// y² = x³ + Ax + B.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCurve<E> {
    pub a: E,
    pub b: E,
}

impl<E: Field> EllipticCurve<E> {
    pub fn new(a: E, b: E) -> Self {
        EllipticCurve { a, b }
    }

    /// 4A³ + 27B²; zero exactly on the singular locus.
    pub fn discriminant(&self) -> E {
        let four = E::from_int(4);
        let t27 = E::from_int(27);
        four * self.a.clone() * self.a.clone() * self.a.clone()
            + t27 * self.b.clone() * self.b.clone()
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    /// x³ + Ax + B.
    pub fn rhs(&self) -> Poly<E> {
        Poly::new(vec![self.b.clone(), self.a.clone(), E::zero(), E::one()])
    }
}

/// An element of K[x, y]/(y² − x³ − Ax − B), split as ev(x) + y·od(x).
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoly<E: Field> {
    pub ev: Poly<E>,
    pub od: Poly<E>,
}

impl<E: Field> CurvePoly<E> {
    pub fn zero() -> Self {
        CurvePoly {
            ev: Poly::new(vec![]),
            od: Poly::new(vec![]),
        }
    }

    pub fn from_poly(p: Poly<E>) -> Self {
        CurvePoly {
            ev: p,
            od: Poly::new(vec![]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ev.is_zero() && self.od.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        CurvePoly {
            ev: self.ev.clone() + o.ev.clone(),
            od: self.od.clone() + o.od.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CurvePoly {
            ev: self.ev.clone() - o.ev.clone(),
            od: self.od.clone() - o.od.clone(),
        }
    }

    /// Product modulo y² = x³ + Ax + B.
    pub fn mul(&self, o: &Self, e: &EllipticCurve<E>) -> Self {
        let q = e.rhs();
        CurvePoly {
            ev: self.ev.clone() * o.ev.clone() + q * (self.od.clone() * o.od.clone()),
            od: self.ev.clone() * o.od.clone() + self.od.clone() * o.ev.clone(),
        }
    }

    /// Exact division by 2y; panics when the even part is not divisible by
    /// the cubic.
    pub fn div_2y(&self, e: &EllipticCurve<E>) -> Self {
        let half = E::from_int(2).inv();
        let q = e.rhs();
        let od = self
            .ev
            .div_exact(&q)
            .expect("even part not divisible by the cubic")
            .scale(&half);
        CurvePoly {
            ev: self.od.scale(&half),
            od,
        }
    }
}

/// Ψ₀, …, Ψ_nmax: Ψ₁ = 1, Ψ₂ = 2y, the two quartic/sextic base cases, and
/// the doubling recurrences
/// Ψ_{2m+1} = Ψ_{m+2}Ψ_m³ − Ψ_{m−1}Ψ_{m+1}³,
/// Ψ_{2m} = Ψ_m(Ψ_{m+2}Ψ_{m−1}² − Ψ_{m−2}Ψ_{m+1}²)/2y.
pub fn division_polynomials<E: Field>(e: &EllipticCurve<E>, nmax: usize) -> Vec<CurvePoly<E>> {
    let a = &e.a;
    let b = &e.b;
    let mut psi: Vec<CurvePoly<E>> = Vec::with_capacity(nmax + 1);
    psi.push(CurvePoly::zero());
    psi.push(CurvePoly::from_poly(Poly::constant(E::one())));
    if nmax >= 2 {
        psi.push(CurvePoly {
            ev: Poly::new(vec![]),
            od: Poly::constant(E::from_int(2)),
        });
    }
    if nmax >= 3 {
        // 3x⁴ + 6Ax² + 12Bx − A²
        psi.push(CurvePoly::from_poly(Poly::new(vec![
            -(a.clone() * a.clone()),
            E::from_int(12) * b.clone(),
            E::from_int(6) * a.clone(),
            E::zero(),
            E::from_int(3),
        ])));
    }
    if nmax >= 4 {
        // 4y(x⁶ + 5Ax⁴ + 20Bx³ − 5A²x² − 4ABx − 8B² − A³)
        let inner = Poly::new(vec![
            E::from_int(-8) * b.clone() * b.clone()
                - a.clone() * a.clone() * a.clone(),
            E::from_int(-4) * a.clone() * b.clone(),
            E::from_int(-5) * a.clone() * a.clone(),
            E::from_int(20) * b.clone(),
            E::from_int(5) * a.clone(),
            E::zero(),
            E::one(),
        ]);
        psi.push(CurvePoly {
            ev: Poly::new(vec![]),
            od: inner.scale(&E::from_int(4)),
        });
    }
    for i in 5..=nmax {
        let next = if i % 2 == 1 {
            let m = (i - 1) / 2;
            psi[m + 2]
                .mul(&psi[m], e)
                .mul(&psi[m], e)
                .mul(&psi[m], e)
                .sub(
                    &psi[m - 1]
                        .mul(&psi[m + 1], e)
                        .mul(&psi[m + 1], e)
                        .mul(&psi[m + 1], e),
                )
        } else {
            let m = i / 2;
            let inner = psi[m + 2]
                .mul(&psi[m - 1], e)
                .mul(&psi[m - 1], e)
                .sub(&psi[m - 2].mul(&psi[m + 1], e).mul(&psi[m + 1], e));
            psi[m].mul(&inner, e).div_2y(e)
        };
        psi.push(next);
    }
    psi
}

/// Numerator and denominator of x∘[n]: (xΨₙ² − Ψₙ₊₁Ψₙ₋₁)/Ψₙ², both plain
/// polynomials in x of degrees n² and n²−1.
pub fn multiplication_fraction<E: Field>(
    e: &EllipticCurve<E>,
    n: usize,
) -> (Poly<E>, Poly<E>) {
    assert!(n >= 2, "multiplication by n needs n at least 2");
    let psi = division_polynomials(e, n + 1);
    let sq = psi[n].mul(&psi[n], e);
    let num = CurvePoly {
        ev: sq.ev.shift(1),
        od: sq.od.shift(1),
    }
    .sub(&psi[n + 1].mul(&psi[n - 1], e));
    assert!(num.od.is_zero() && sq.od.is_zero(), "parity mismatch");
    assert_eq!(num.ev.deg(), Some(n * n));
    assert_eq!(sq.ev.deg(), Some(n * n - 1));
    (num.ev, sq.ev)
}

/// The degree-n² model of the Lattès map of a nonsingular curve.
pub fn lattes_model<E: Field>(e: &EllipticCurve<E>, n: usize) -> Model<E> {
    assert!(!e.is_singular(), "singular curve");
    let (num, den) = multiplication_fraction(e, n);
    let d = n * n;
    let a: Vec<E> = (0..=d).map(|i| num.coeff(d - i)).collect();
    let b: Vec<E> = (0..=d).map(|i| den.coeff(d - i)).collect();
    Model::new(a, b)
}

fn root_multiplicity<E: Field>(f: &Poly<E>, r: &E) -> i64 {
    assert!(!f.is_zero());
    let lin = Poly::new(vec![-r.clone(), E::one()]);
    let mut v = 0;
    let mut g = f.clone();
    while let Some(q) = g.div_exact(&lin) {
        g = q;
        v += 1;
    }
    v
}

/// 2v(ψ) at the node x = λ₂ of a nodal specialization, where v(y) = 1:
/// twice the minimum over the two parity parts.
fn two_v<E: Field>(p: &CurvePoly<E>, lam2: &E) -> i64 {
    assert!(!p.is_zero());
    let mut best = i64::MAX;
    if !p.ev.is_zero() {
        best = best.min(root_multiplicity(&p.ev, lam2));
    }
    if !p.od.is_zero() {
        best = best.min(1 + root_multiplicity(&p.od, lam2));
    }
    2 * best
}

/// The nodal cubic with λ₁ = −2λ₂: A = −3λ₂², B = 2λ₂³.
pub fn nodal_curve(lam2: &Rat) -> EllipticCurve<Rat> {
    assert!(!lam2.is_zero(), "node would be a cusp");
    let a = -(Rat::from_int(3) * lam2.clone() * lam2.clone());
    let b = Rat::from_int(2) * lam2.clone() * lam2.clone() * lam2.clone();
    EllipticCurve::new(a, b)
}

/// 2v(ψₙ) at the node for n = 1, …, nmax.
pub fn nodal_psi_orders(lam2: &Rat, nmax: usize) -> Vec<i64> {
    let e = nodal_curve(lam2);
    let psi = division_polynomials(&e, nmax);
    (1..=nmax).map(|n| two_v(&psi[n], lam2)).collect()
}

/// Reduction data of the Lattès map of a nodal specialization.
pub struct NodalReport {
    pub n: usize,
    pub degree: usize,
    /// min of the orders of (x − λ₂) in numerator and denominator.
    pub m_value: i64,
    /// order forcing instability: r+1 for even degree, r+2 for odd.
    pub threshold: i64,
    pub class: StabilityClass,
}

pub fn nodal_analysis(lam2: &Rat, n: usize) -> NodalReport {
    let e = nodal_curve(lam2);
    let (num, den) = multiplication_fraction(&e, n);
    let m_value = root_multiplicity(&num, lam2).min(root_multiplicity(&den, lam2));
    let d = n * n;
    let threshold = if d % 2 == 0 {
        (d / 2 + 1) as i64
    } else {
        ((d - 1) / 2 + 2) as i64
    };
    let a: Vec<KappaElem> = (0..=d).map(|i| KappaElem::Q(num.coeff(d - i))).collect();
    let b: Vec<KappaElem> = (0..=d).map(|i| KappaElem::Q(den.coeff(d - i))).collect();
    let class = classify(&crate::dynsys::ReducedPoint { d, a, b });
    NodalReport {
        n,
        degree: d,
        m_value,
        threshold,
        class,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};
    use crate::kappa::KPoly;
    use crate::stability::FactorSite;

    fn curve(a: i64, b: i64) -> EllipticCurve<Rat> {
        EllipticCurve::new(rat_int(a), rat_int(b))
    }

    #[test]
    fn degree_two_closed_form() {
        // ((P′)² − 8xP)/(4P) = (x⁴ − 2Ax² − 8Bx + A²)/(4(x³ + Ax + B))
        let e = curve(2, 3);
        let (num, den) = multiplication_fraction(&e, 2);
        assert_eq!(num, Poly::from_ints(&[4, -24, -4, 0, 1]));
        assert_eq!(den, Poly::from_ints(&[12, 8, 0, 4]));
    }

    #[test]
    fn multiplication_oracle_on_a_six_torsion_point() {
        // P = (2, 3) on y² = x³ + 1 has order 6: x([n]P) = 0, −1, 0, 2
        // for n = 2, …, 5 and [6]P = O
        let e = curve(0, 1);
        let x = rat_int(2);
        let expect = [rat_int(0), rat_int(-1), rat_int(0), rat_int(2)];
        for (n, want) in (2..=5).zip(expect) {
            let (num, den) = multiplication_fraction(&e, n);
            assert_eq!(num.eval(&x) / den.eval(&x), want, "n = {n}");
        }
        let (num6, den6) = multiplication_fraction(&e, 6);
        assert!(den6.eval(&x).is_zero());
        assert!(!num6.eval(&x).is_zero());
    }

    #[test]
    fn doubling_resultant_is_256_disc_squared() {
        for (a, b) in [(0, 1), (1, 1), (-1, 1), (2, 3), (-4, 4)] {
            let e = curve(a, b);
            let m = lattes_model(&e, 2);
            let disc = e.discriminant();
            assert_eq!(
                m.resultant(),
                rat_int(256) * disc.clone() * disc,
                "curve ({a}, {b})"
            );
        }
    }

    #[test]
    fn nodal_division_polynomial_factorizations() {
        // λ₂ = 1: ψ₃ = 3(x−1)³(x+3), ψ₄ = 4y(x−1)⁵(x+5)
        let e = nodal_curve(&rat_int(1));
        assert!(e.is_singular());
        let psi = division_polynomials(&e, 4);
        let lin = |r: i64| Poly::from_ints(&[-r, 1]);
        let p3 = (lin(1).pow(3) * lin(-3)).scale(&rat_int(3));
        assert_eq!(psi[3].ev, p3);
        assert!(psi[3].od.is_zero());
        let p4 = (lin(1).pow(5) * lin(-5)).scale(&rat_int(4));
        assert_eq!(psi[4].od, p4);
        assert!(psi[4].ev.is_zero());
    }

    #[test]
    fn nodal_orders_match_the_table() {
        let orders = nodal_psi_orders(&rat_int(1), 9);
        // at least the tabulated lower bounds for n = 2, …, 9 …
        let bounds = [2, 6, 12, 18, 26, 36, 48, 60];
        for (n, lb) in (2..=9).zip(bounds) {
            assert!(orders[n - 1] >= lb, "n = {n}");
        }
        // … and in fact exactly n² − n (cancellation raises the order
        // beyond the bound from n = 5 on)
        for n in 1..=9usize {
            assert_eq!(orders[n - 1], (n * n - n) as i64, "n = {n}");
        }
        // same orders at a different node
        let orders2 = nodal_psi_orders(&rat_int(-2), 9);
        assert_eq!(orders2[1..], orders[1..]);
    }

    #[test]
    fn lower_bound_branches() {
        // 2v(ψ_{2m}) ≥ 2m² + 1 and 2v(ψ_{2m+1}) ≥ 2(m² + m + 1), m ≥ 2
        let orders = nodal_psi_orders(&rat(1, 2), 12);
        for m in 2..=6usize {
            if 2 * m <= 12 {
                assert!(orders[2 * m - 1] >= (2 * m * m + 1) as i64, "m = {m}");
            }
            if 2 * m + 1 <= 12 {
                assert!(
                    orders[2 * m] >= 2 * (m * m + m + 1) as i64,
                    "m = {m}"
                );
            }
        }
    }

    #[test]
    fn nodal_reductions_are_unstable() {
        for lam in [rat_int(1), rat_int(2), rat_int(-1)] {
            for n in 2..=4usize {
                let rep = nodal_analysis(&lam, n);
                assert!(
                    matches!(rep.class, StabilityClass::Unstable(_)),
                    "lambda = {lam}, n = {n}: {:?}",
                    rep.class
                );
                if n >= 3 {
                    assert!(rep.m_value >= rep.threshold);
                }
            }
        }
        // n = 2 needs the fixed-point refinement: order exactly 2 = r at a
        // fixed common root x = λ₂
        let rep = nodal_analysis(&rat_int(2), 2);
        assert_eq!(rep.m_value, 2);
        match rep.class {
            StabilityClass::Unstable(w) => {
                assert_eq!(w.order, 2);
                assert!(w.fixed);
                assert_eq!(
                    w.factor,
                    FactorSite::Finite(KPoly::from_ints(&[-2, 1]))
                );
            }
            other => panic!("expected unstable, got {other:?}"),
        }
    }
}
