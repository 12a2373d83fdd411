//! Critical conductors: the Wronskian form whose zeros are the critical
//! points, binary-form discriminants as collision detectors, pushforward of
//! the critical locus, and the set of places of critical bad reduction.

use crate::dynsys::{Model, Presentation};
use crate::field::Field;
use crate::kappa::KappaElem;
use crate::linalg;
use crate::places::{Divisor, GlobalField};
use crate::poly::Poly;
use num_traits::{One, Zero};

/// Σ cᵢ X^{m−i} Y^i, coefficients by descending X-power.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<E> {
    pub coeffs: Vec<E>,
}

impl<E: Field> BinaryForm<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty(), "empty coefficient list");
        assert!(coeffs.iter().any(|c| !c.is_zero()), "zero form");
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value at a projective point.
    pub fn eval(&self, x: &E, y: &E) -> E {
        let m = self.degree();
        let mut acc = E::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut t = c.clone();
            for _ in 0..m - i {
                t = t * x.clone();
            }
            for _ in 0..i {
                t = t * y.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// The product of the distinct irreducible factors, each once; a root
    /// at [1:0] of any multiplicity contributes a single factor of Y.
    pub fn squarefree(&self) -> Self {
        let m = self.degree();
        let u = Poly::new(self.coeffs.iter().rev().cloned().collect());
        let inf = m - u.deg().unwrap();
        let mut sf = Poly::constant(E::one());
        for (part, _) in u.squarefree_decomposition() {
            sf = sf * part;
        }
        sf = sf.scale(&u.leading());
        let d = sf.deg().unwrap() + usize::from(inf > 0);
        let mut out = vec![E::zero(); d + 1];
        for (j, c) in sf.coeffs().iter().enumerate() {
            out[d - j] = c.clone();
        }
        BinaryForm::new(out)
    }
}

/// ∂F/∂X of a form given by descending coefficients.
fn partial_x<E: Field>(c: &[E]) -> Vec<E> {
    let d = c.len() - 1;
    (0..d)
        .map(|i| c[i].clone() * E::from_int((d - i) as i64))
        .collect()
}

/// ∂F/∂Y of a form given by descending coefficients.
fn partial_y<E: Field>(c: &[E]) -> Vec<E> {
    let d = c.len() - 1;
    (1..=d)
        .map(|i| c[i].clone() * E::from_int(i as i64))
        .collect()
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

/// The Wronskian ∂F_a/∂X·∂F_b/∂Y − ∂F_a/∂Y·∂F_b/∂X: a form of degree
/// 2d − 2 vanishing exactly on the critical points.
pub fn wronskian<E: Field>(m: &Model<E>) -> BinaryForm<E> {
    assert!(m.d >= 2, "degree must be at least 2");
    let lhs = form_mul(&partial_x(&m.a), &partial_y(&m.b));
    let rhs = form_mul(&partial_y(&m.a), &partial_x(&m.b));
    let coeffs: Vec<E> = lhs
        .into_iter()
        .zip(rhs)
        .map(|(x, y)| x - y)
        .collect();
    BinaryForm::new(coeffs)
}

/// Discriminant of a binary form of degree m ≥ 2, normalized as
/// (−1)^{m(m−1)/2}·Res(f_X, f_Y)/m^{m−2}; the quadratic case is b² − 4ac.
/// Zero iff the form has a repeated root.
pub fn binary_form_discriminant<E: Field>(f: &BinaryForm<E>) -> E {
    let m = f.degree();
    assert!(m >= 2, "degree must be at least 2");
    let r = linalg::resultant_forms(&partial_x(&f.coeffs), &partial_y(&f.coeffs));
    let mut scale = E::one();
    for _ in 0..m - 2 {
        scale = scale * E::from_int(m as i64);
    }
    let signed = if (m * (m - 1) / 2) % 2 == 1 { -r } else { r };
    signed / scale
}

/// Eliminate (X, Y) from (w, Z·F_b − T·F_a): a form in (Z, T) of degree
/// deg w whose roots are the images under the map of the roots of w.
/// Computed by specializing T = 1, Z = 0, …, deg w and interpolating.
pub fn pushforward_form<E: Field>(w: &BinaryForm<E>, m: &Model<E>) -> BinaryForm<E> {
    let dw = w.degree();
    let mut pts = Vec::with_capacity(dw + 1);
    for j in 0..=dw as i64 {
        let z = E::from_int(j);
        let g: Vec<E> = m
            .b
            .iter()
            .zip(m.a.iter())
            .map(|(b, a)| z.clone() * b.clone() - a.clone())
            .collect();
        let r = linalg::determinant(linalg::sylvester(&w.coeffs, &g));
        pts.push((z, r));
    }
    let p = Poly::interpolate(&pts);
    let coeffs: Vec<E> = (0..=dw).map(|k| p.coeff(dw - k)).collect();
    BinaryForm::new(coeffs)
}

/// r_p of a projective point: normalize to min valuation 0, then take
/// residues.
pub fn reduce_point<F: GlobalField>(
    alpha: &F::Elem,
    beta: &F::Elem,
    p: &F::Place,
) -> (KappaElem, KappaElem) {
    let vmin = [alpha, beta]
        .iter()
        .filter_map(|x| F::valuation(x, p))
        .min()
        .expect("point with both coordinates zero");
    let pi = F::uniformizer(p);
    let mut u = F::Elem::one();
    for _ in 0..vmin.unsigned_abs() {
        u = u * pi.clone();
    }
    if vmin > 0 {
        u = u.inv();
    }
    (
        F::residue(&(alpha.clone() * u.clone()), p),
        F::residue(&(beta.clone() * u), p),
    )
}

/// Divisor of the discriminant of the p-normalized form at each place:
/// canonicalize (unit content at finite places), then correct at infinity
/// by −(2m−2)·n_∞. None when deg < 2 (collision condition vacuous).
fn normalized_disc_divisor<F: GlobalField>(f: &BinaryForm<F::Elem>) -> Option<Divisor<F::Place>> {
    let m = f.degree();
    if m < 2 {
        return None;
    }
    let canon = BinaryForm::new(F::canonicalize(&f.coeffs));
    let disc = binary_form_discriminant(&canon);
    assert!(!disc.is_zero(), "squarefree form with zero discriminant");
    let mut div = F::principal_divisor(&disc);
    if let Some(inf) = F::infinity_place() {
        let n_inf = canon
            .coeffs
            .iter()
            .filter_map(|c| F::valuation(c, &inf))
            .min()
            .unwrap();
        div.add_place(inf, -(2 * m as i64 - 2) * n_inf);
    }
    Some(div)
}

/// Per-place collision data behind the critical conductor.
pub struct CriticalReport<F: GlobalField> {
    pub conductor: Divisor<F::Place>,
    /// Discriminant divisor of the squarefree Wronskian; None if fewer
    /// than two distinct critical points.
    pub wronskian_disc: Option<Divisor<F::Place>>,
    /// Discriminant divisor of the squarefree pushforward; None if fewer
    /// than two distinct critical values.
    pub pushforward_disc: Option<Divisor<F::Place>>,
    /// (place, critical points collide, critical values collide).
    pub attribution: Vec<(F::Place, bool, bool)>,
}

/// Places of critical bad reduction in the given coordinates: where
/// distinct critical points or distinct critical values collide under
/// reduction, detected by discriminant valuations of the squarefree
/// Wronskian and its pushforward.
pub fn critical_conductor<F: GlobalField>(phi: &Presentation<F>) -> CriticalReport<F> {
    assert!(phi.is_nondegenerate(), "degenerate presentation");
    let w = wronskian(phi.model()).squarefree();
    let wronskian_disc = normalized_disc_divisor::<F>(&w);
    let v = pushforward_form(&w, phi.model()).squarefree();
    let pushforward_disc = normalized_disc_divisor::<F>(&v);
    let mut places: Vec<F::Place> = Vec::new();
    for d in [&wronskian_disc, &pushforward_disc].into_iter().flatten() {
        for (p, c) in d.iter() {
            if c > 0 && !places.contains(p) {
                places.push(p.clone());
            }
        }
    }
    places.sort();
    let mut conductor = Divisor::new();
    let mut attribution = Vec::new();
    for p in places {
        let c1 = wronskian_disc.as_ref().map_or(false, |d| d.coeff(&p) > 0);
        let c2 = pushforward_disc.as_ref().map_or(false, |d| d.coeff(&p) > 0);
        conductor.add_place(p.clone(), 1);
        attribution.push((p, c1, c2));
    }
    CriticalReport {
        conductor,
        wronskian_disc,
        pushforward_disc,
        attribution,
    }
}
