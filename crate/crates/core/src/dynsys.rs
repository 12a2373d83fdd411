//! Models and presentations of degree-d self-maps of P¹, the Sylvester
//! resultant, the GL₂ conjugation action, per-place normalization and
//! reduction, and the resultant divisor.

use crate::field::Field;
use crate::kappa::KappaElem;
use crate::linalg;
use crate::places::{Divisor, GlobalField};
use num_traits::{One, Zero};

/// An affine representative (a, b) of a self-map: F_a = Σ aᵢ X^{d−i} Y^i,
/// F_b likewise; the map is [F_a : F_b].
#[derive(Clone, Debug, PartialEq)]
pub struct Model<E> {
    pub d: usize,
    pub a: Vec<E>,
    pub b: Vec<E>,
}

impl<E: Field> Model<E> {
    pub fn new(a: Vec<E>, b: Vec<E>) -> Self {
        assert_eq!(a.len(), b.len(), "coefficient lists of different length");
        assert!(a.len() >= 2, "degree must be at least 1");
        assert!(
            a.iter().chain(b.iter()).any(|c| !c.is_zero()),
            "all coefficients zero"
        );
        Model {
            d: a.len() - 1,
            a,
            b,
        }
    }

    /// The determinant of the 2d×2d band matrix of the two forms.
    pub fn resultant(&self) -> E {
        linalg::resultant_forms(&self.a, &self.b)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &E> {
        self.a.iter().chain(self.b.iter())
    }

    pub fn scale(&self, c: &E) -> Self {
        Model {
            d: self.d,
            a: self.a.iter().map(|x| x.clone() * c.clone()).collect(),
            b: self.b.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Conjugation by Γ: (F_a((X,Y)·Γ), F_b((X,Y)·Γ))·Γ^adj. Composes as
    /// conjugate(conjugate(m, Γ₁), Γ₂) = conjugate(m, Γ₂·Γ₁).
    pub fn conjugate(&self, g: &Matrix2<E>) -> Self {
        assert!(!g.det().is_zero(), "singular conjugating matrix");
        // (X,Y)·Γ = (αX + γY, βX + δY)
        let fa = substitute_linear(&self.a, g);
        let fb = substitute_linear(&self.b, g);
        let new_a = form_sub(
            &form_scale(&fa, &g.de),
            &form_scale(&fb, &g.ga),
        );
        let new_b = form_sub(
            &form_scale(&fb, &g.al),
            &form_scale(&fa, &g.be),
        );
        Model::new(new_a, new_b)
    }
}

/// F(αX+γY, βX+δY) for a form given by descending-X coefficients.
fn substitute_linear<E: Field>(coeffs: &[E], g: &Matrix2<E>) -> Vec<E> {
    let d = coeffs.len() - 1;
    let u = [g.al.clone(), g.ga.clone()]; // αX + γY
    let v = [g.be.clone(), g.de.clone()]; // βX + δY
    let mut acc = vec![E::zero(); d + 1];
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = form_mul_many(&u, d - i, &v, i);
        for (j, t) in term.iter().enumerate() {
            acc[j] = acc[j].clone() + c.clone() * t.clone();
        }
    }
    acc
}

fn form_mul<E: Field>(a: &[E], b: &[E]) -> Vec<E> {
    let mut out = vec![E::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn form_mul_many<E: Field>(u: &[E; 2], eu: usize, v: &[E; 2], ev: usize) -> Vec<E> {
    let mut acc = vec![E::one()];
    for _ in 0..eu {
        acc = form_mul(&acc, u);
    }
    for _ in 0..ev {
        acc = form_mul(&acc, v);
    }
    acc
}

fn form_scale<E: Field>(a: &[E], c: &E) -> Vec<E> {
    a.iter().map(|x| x.clone() * c.clone()).collect()
}

fn form_sub<E: Field>(a: &[E], b: &[E]) -> Vec<E> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

/// An element of GL₂.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix2<E> {
    pub al: E,
    pub be: E,
    pub ga: E,
    pub de: E,
}

impl<E: Field> Matrix2<E> {
    pub fn new(al: E, be: E, ga: E, de: E) -> Self {
        Matrix2 { al, be, ga, de }
    }

    pub fn identity() -> Self {
        Matrix2::new(E::one(), E::zero(), E::zero(), E::one())
    }

    pub fn diag(u: E, v: E) -> Self {
        Matrix2::new(u, E::zero(), E::zero(), v)
    }

    pub fn from_ints(al: i64, be: i64, ga: i64, de: i64) -> Self {
        Matrix2::new(
            E::from_int(al),
            E::from_int(be),
            E::from_int(ga),
            E::from_int(de),
        )
    }

    pub fn det(&self) -> E {
        self.al.clone() * self.de.clone() - self.be.clone() * self.ga.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Matrix2::new(
            self.al.clone() * o.al.clone() + self.be.clone() * o.ga.clone(),
            self.al.clone() * o.be.clone() + self.be.clone() * o.de.clone(),
            self.ga.clone() * o.al.clone() + self.de.clone() * o.ga.clone(),
            self.ga.clone() * o.be.clone() + self.de.clone() * o.de.clone(),
        )
    }

    pub fn entries(&self) -> [&E; 4] {
        [&self.al, &self.be, &self.ga, &self.de]
    }
}

/// The reduction of a presentation at a place: residues of a p-model's
/// coefficients, a projective point over κ(p).
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedPoint {
    pub d: usize,
    pub a: Vec<KappaElem>,
    pub b: Vec<KappaElem>,
}

/// A projective class of models in canonical form: base-ring coefficients
/// with unit content and normalized sign, so n_p = 0 at every finite place.
#[derive(Debug, PartialEq)]
pub struct Presentation<F: GlobalField> {
    model: Model<F::Elem>,
}

impl<F: GlobalField> Clone for Presentation<F> {
    fn clone(&self) -> Self {
        Presentation {
            model: self.model.clone(),
        }
    }
}

impl<F: GlobalField> Presentation<F> {
    pub fn new(m: Model<F::Elem>) -> Self {
        let joined: Vec<F::Elem> = m.coeffs().cloned().collect();
        let canon = F::canonicalize(&joined);
        let (a, b) = canon.split_at(m.d + 1);
        Presentation {
            model: Model::new(a.to_vec(), b.to_vec()),
        }
    }

    pub fn model(&self) -> &Model<F::Elem> {
        &self.model
    }

    pub fn degree(&self) -> usize {
        self.model.d
    }

    pub fn resultant(&self) -> F::Elem {
        self.model.resultant()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.resultant().is_zero()
    }

    pub fn conjugate(&self, g: &Matrix2<F::Elem>) -> Self {
        Presentation::new(self.model.conjugate(g))
    }
}

/// n_p of a model: the minimum valuation over its 2d+2 coefficients.
pub fn model_min_valuation<F: GlobalField>(m: &Model<F::Elem>, p: &F::Place) -> i64 {
    m.coeffs()
        .filter_map(|c| F::valuation(c, p))
        .min()
        .expect("all coefficients zero")
}

/// Rescale to a p-model (min coefficient valuation 0); returns the model
/// and the original n_p.
pub fn normalize_p_model<F: GlobalField>(
    m: &Model<F::Elem>,
    p: &F::Place,
) -> (Model<F::Elem>, i64) {
    let n = model_min_valuation::<F>(m, p);
    if n == 0 {
        return (m.clone(), 0);
    }
    let pi = F::uniformizer(p);
    let mut u = F::Elem::one();
    for _ in 0..n.unsigned_abs() {
        u = u * pi.clone();
    }
    if n > 0 {
        u = u.inv();
    }
    (m.scale(&u), n)
}

/// N_{Φ,p} = v_p(ρ) − 2d·n_p for any model of the presentation.
pub fn n_value<F: GlobalField>(phi: &Presentation<F>, p: &F::Place) -> i64 {
    let rho = phi.resultant();
    assert!(!rho.is_zero(), "degenerate presentation");
    let v = F::valuation(&rho, p).unwrap();
    let n = model_min_valuation::<F>(phi.model(), p);
    v - 2 * phi.degree() as i64 * n
}

/// Residues of a p-model's coefficients: the reduction Φ_p.
pub fn reduce_presentation<F: GlobalField>(phi: &Presentation<F>, p: &F::Place) -> ReducedPoint {
    let (m, _) = normalize_p_model::<F>(phi.model(), p);
    ReducedPoint {
        d: m.d,
        a: m.a.iter().map(|c| F::residue(c, p)).collect(),
        b: m.b.iter().map(|c| F::residue(c, p)).collect(),
    }
}

/// R_Φ = Σ N_{Φ,p}[p]: the resultant divisor, supported on the singular
/// reduction locus.
pub fn resultant_divisor<F: GlobalField>(phi: &Presentation<F>) -> Divisor<F::Place> {
    let rho = phi.resultant();
    assert!(!rho.is_zero(), "degenerate presentation");
    let mut candidates: Vec<F::Place> = F::principal_divisor(&rho)
        .support()
        .cloned()
        .collect();
    if let Some(inf) = F::infinity_place() {
        if !candidates.contains(&inf) {
            candidates.push(inf);
        }
    }
    let mut out = Divisor::new();
    for p in candidates {
        let n = n_value(phi, &p);
        debug_assert!(n >= 0, "negative N-value");
        out.add_place(p, n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_int, Rat};
    use crate::parse::parse_ratfunc;
    use crate::places::{divisor_degree, FunField, FunPlace, QField};
    use crate::ratfunc::{QPoly, RatFunc};

    fn place_t() -> FunPlace {
        FunPlace::Finite(QPoly::from_ints(&[0, 1]))
    }

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s, "t").unwrap()
    }

    fn example1(n: i64) -> Presentation<FunField> {
        // (t^N X² + Y²) / (t^N Y²)
        let tn = rf(&format!("t^{n}"));
        let m = Model::new(
            vec![tn.clone(), RatFunc::zero(), RatFunc::one()],
            vec![RatFunc::zero(), RatFunc::zero(), tn],
        );
        Presentation::new(m)
    }

    #[test]
    fn triangular_resultant_is_one() {
        let m: Model<Rat> = Model::new(
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
        );
        assert_eq!(m.resultant(), rat_int(1));
    }

    #[test]
    fn normal_form_resultant() {
        // (1, λ₁, 0 | 0, λ₂, 1) -> 1 − λ₁λ₂
        let l1 = rat_int(5);
        let l2 = rat_int(3);
        let m = Model::new(
            vec![rat_int(1), l1.clone(), rat_int(0)],
            vec![rat_int(0), l2.clone(), rat_int(1)],
        );
        assert_eq!(m.resultant(), rat_int(1) - l1 * l2);
    }

    #[test]
    fn example1_resultant_and_divisor() {
        let phi = example1(4);
        assert_eq!(phi.resultant(), rf("t^16"));
        let d = resultant_divisor(&phi);
        assert_eq!(d.coeff(&place_t()), 16);
        assert_eq!(divisor_degree::<FunField>(&d), 16);
    }

    #[test]
    fn transformation_law() {
        // ρ(a^Γ, b^Γ) = det(Γ)^{d²+d} ρ(a,b) for d = 2
        let m: Model<Rat> = Model::new(
            vec![rat_int(3), rat_int(-1), rat_int(2)],
            vec![rat_int(1), rat_int(4), rat_int(-2)],
        );
        let g = Matrix2::from_ints(2, 1, 3, 4);
        let conj = m.conjugate(&g);
        let mut scale = Rat::from_int(1);
        for _ in 0..6 {
            scale = scale * g.det();
        }
        assert_eq!(conj.resultant(), scale * m.resultant());
    }

    #[test]
    fn conjugation_composition_order() {
        let m: Model<Rat> = Model::new(
            vec![rat_int(1), rat_int(2), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        );
        let g1 = Matrix2::from_ints(1, 1, 0, 1);
        let g2 = Matrix2::from_ints(2, 0, 1, 1);
        let twice = m.conjugate(&g1).conjugate(&g2);
        let combined = m.conjugate(&g2.mul(&g1));
        assert_eq!(twice, combined);
        assert_eq!(m.conjugate(&Matrix2::identity()), m);
    }

    #[test]
    fn example1_conjugation_drops_resultant() {
        // N = 2M: conjugating by diag(1, t^M) then renormalizing gives t^N
        let phi = example1(6);
        let g = Matrix2::diag(RatFunc::one(), rf("t^3"));
        let conj = phi.conjugate(&g);
        assert_eq!(conj.resultant(), rf("t^6"));
        assert_eq!(n_value(&conj, &place_t()), 6);
    }

    #[test]
    fn n_values_for_family() {
        // λ₁ = 2 + 3 t^N, λ₂ = 1/2 − (3/4) t^N, normal form
        let n = 3;
        let l1 = rf(&format!("2 + 3*t^{n}"));
        let l2 = rf(&format!("1/2 - 3/4*t^{n}"));
        let m = Model::new(
            vec![RatFunc::one(), l1, RatFunc::zero()],
            vec![RatFunc::zero(), l2, RatFunc::one()],
        );
        let phi: Presentation<FunField> = Presentation::new(m.clone());
        // ρ = 1 − λ₁λ₂ = (9/4) t^{2N} for these parameters
        assert_eq!(m.resultant(), rf(&format!("9/4*t^{}", 2 * n)));
        assert_eq!(n_value(&phi, &place_t()), 2 * n as i64);
        assert_eq!(n_value(&phi, &FunPlace::Infinity), 2 * n as i64);
        let d = resultant_divisor(&phi);
        assert_eq!(d.len(), 2);
        assert_eq!(divisor_degree::<FunField>(&d), 4 * n as i64);
    }

    #[test]
    fn reduction_at_place() {
        let phi = example1(2);
        let r = reduce_presentation(&phi, &place_t());
        use crate::kappa::KappaElem;
        use num_traits::{One, Zero};
        assert_eq!(
            r.a,
            vec![KappaElem::zero(), KappaElem::zero(), KappaElem::one()]
        );
        assert_eq!(
            r.b,
            vec![KappaElem::zero(), KappaElem::zero(), KappaElem::zero()]
        );
    }

    #[test]
    fn p_model_normalization() {
        let m = Model::new(
            vec![rf("1/t"), RatFunc::zero(), RatFunc::one()],
            vec![RatFunc::zero(), RatFunc::zero(), rf("t")],
        );
        let (pm, n) = normalize_p_model::<FunField>(&m, &place_t());
        assert_eq!(n, -1);
        assert_eq!(model_min_valuation::<FunField>(&pm, &place_t()), 0);
        // over Q
        let mq: Model<Rat> = Model::new(
            vec![rat_int(50), rat_int(0), rat_int(25)],
            vec![rat_int(0), rat_int(75), rat_int(0)],
        );
        let (pm, n) =
            normalize_p_model::<QField>(&mq, &crate::places::Prime(num_bigint::BigInt::from(5)));
        assert_eq!(n, 2);
        assert_eq!(pm.a[0], rat_int(2));
    }
}
