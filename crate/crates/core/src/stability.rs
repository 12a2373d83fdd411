//! GIT stability of reduced points of P^{2d+1} over residue fields, via
//! the numerical criterion in its common-root/fixed-point form, and the
//! semi-stable presentation test.

use crate::dynsys::{reduce_presentation, resultant_divisor, Presentation, ReducedPoint};
use crate::kappa::{self, KPoly, KappaElem};
use crate::places::{Divisor, GlobalField};
use num_traits::{One, Zero};

/// A common factor of the two reduced forms that triggers a threshold:
/// either a squarefree polynomial (its roots all share the stated order)
/// or the point at infinity [1:0].
#[derive(Clone, Debug, PartialEq)]
pub enum FactorSite {
    Finite(KPoly),
    AtInfinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub factor: FactorSite,
    pub order: u32,
    pub fixed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StabilityClass {
    /// Resultant nonzero over the residue field; lies in the stable locus.
    NonDegenerate,
    Stable,
    /// Only possible in odd degree.
    SemiStableNotStable(Witness),
    Unstable(Witness),
}

impl StabilityClass {
    pub fn is_semistable(&self) -> bool {
        !matches!(self, StabilityClass::Unstable(_))
    }
}

/// A binary form written as Y^inf · (homogenized univariate): `poly` is
/// the dehomogenization at Y = 1, `inf` the multiplicity of the root [1:0].
#[derive(Clone, Debug)]
struct BForm {
    inf: usize,
    poly: KPoly,
}

impl BForm {
    /// From descending-X coefficients (c₀ X^d + c₁ X^{d−1}Y + …).
    /// None for the zero form.
    fn from_desc(c: &[KappaElem]) -> Option<BForm> {
        let d = c.len() - 1;
        let poly = KPoly::new(c.iter().rev().cloned().collect());
        poly.deg().map(|q| BForm { inf: d - q, poly })
    }

    fn deg(&self) -> usize {
        self.inf + self.poly.deg().unwrap()
    }

    fn gcd(&self, other: &BForm) -> BForm {
        BForm {
            inf: self.inf.min(other.inf),
            poly: self.poly.gcd(&other.poly),
        }
    }

    fn div_exact(&self, g: &BForm) -> BForm {
        BForm {
            inf: self.inf - g.inf,
            poly: self.poly.div_exact(&g.poly).expect("gcd divides"),
        }
    }

    /// Descending-X coefficients at total degree `m`.
    fn desc(&self, m: usize) -> Vec<KappaElem> {
        let mut out = vec![KappaElem::zero(); m + 1];
        for (j, c) in self.poly.coeffs().iter().enumerate() {
            out[m - j] = c.clone();
        }
        out
    }
}

/// The fixed-point form X·G_b − Y·G_a of the canceled map ψ = [G_a : G_b],
/// as descending coefficients of degree m+1 (m = deg ψ); ga/gb are the
/// descending coefficient vectors of G_a, G_b (zero vector allowed).
fn fix_form(ga: &[KappaElem], gb: &[KappaElem]) -> Vec<KappaElem> {
    let m = ga.len() - 1;
    let mut out = vec![KappaElem::zero(); m + 2];
    for i in 0..=m {
        out[i] = out[i].clone() + gb[i].clone();
        out[i + 1] = out[i + 1].clone() - ga[i].clone();
    }
    out
}

/// The common factor gcd(F_a, F_b) of the reduced forms, as (multiplicity
/// of the root [1:0], monic dehomogenized polynomial part); None when the
/// reduction is nondegenerate.
pub fn common_factor(point: &ReducedPoint) -> Option<(usize, KPoly)> {
    let fa = BForm::from_desc(&point.a);
    let fb = BForm::from_desc(&point.b);
    let g = match (&fa, &fb) {
        (None, None) => return None,
        (Some(f), None) | (None, Some(f)) => f.clone(),
        (Some(f1), Some(f2)) => f1.gcd(f2),
    };
    if g.deg() == 0 {
        None
    } else {
        Some((g.inf, g.poly.monic()))
    }
}

/// Classify a reduced point by the enhanced numerical criterion: squarefree
/// parts of gcd(F_a, F_b) give the orders of common roots; order thresholds
/// plus the fixed-point condition on the canceled map decide the class.
pub fn classify(point: &ReducedPoint) -> StabilityClass {
    let d = point.d;
    let fa = BForm::from_desc(&point.a);
    let fb = BForm::from_desc(&point.b);
    let g = match (&fa, &fb) {
        (None, None) => panic!("all coefficients of the reduced point are zero"),
        (Some(f), None) | (None, Some(f)) => f.clone(),
        (Some(f1), Some(f2)) => f1.gcd(f2),
    };
    if g.deg() == 0 {
        return StabilityClass::NonDegenerate;
    }
    let cap = d - g.deg(); // degree of the canceled map ψ
    let ga = match &fa {
        Some(f) => f.div_exact(&g).desc(cap),
        None => vec![KappaElem::zero(); cap + 1],
    };
    let gb = match &fb {
        Some(f) => f.div_exact(&g).desc(cap),
        None => vec![KappaElem::zero(); cap + 1],
    };
    let fix = fix_form(&ga, &gb);
    let fix_is_zero = fix.iter().all(|c| c.is_zero());
    let fix_poly = KPoly::new(fix.iter().rev().cloned().collect());

    // gather (site, order, fixed) for every common-root class
    let mut sites: Vec<Witness> = Vec::new();
    if g.inf > 0 {
        let fixed = fix_is_zero || fix[0].is_zero();
        sites.push(Witness {
            factor: FactorSite::AtInfinity,
            order: g.inf as u32,
            fixed,
        });
    }
    for (part, mult) in kappa::squarefree_decomposition(&g.poly) {
        let fixed = fix_is_zero || part.gcd(&fix_poly).deg().map_or(false, |k| k > 0);
        sites.push(Witness {
            factor: FactorSite::Finite(part),
            order: mult,
            fixed,
        });
    }

    let even = d % 2 == 0;
    let r = d / 2; // d = 2r or d = 2r+1
    let unstable_at = |w: &Witness| {
        if even {
            w.order as usize >= r + 1 || (w.order as usize == r && w.fixed)
        } else {
            w.order as usize >= r + 2 || (w.order as usize == r + 1 && w.fixed)
        }
    };
    let not_stable_at =
        |w: &Witness| w.order as usize >= r + 1 || (w.order as usize == r && w.fixed);

    if let Some(w) = sites.iter().find(|w| unstable_at(w)) {
        return StabilityClass::Unstable(w.clone());
    }
    if !even {
        if let Some(w) = sites.iter().find(|w| not_stable_at(w)) {
            return StabilityClass::SemiStableNotStable(w.clone());
        }
    }
    StabilityClass::Stable
}

/// True iff no place of singular reduction has unstable reduction; the
/// per-place classes over the support of the resultant divisor come along.
pub fn is_semistable_presentation<F: GlobalField>(
    phi: &Presentation<F>,
) -> (bool, Vec<(F::Place, StabilityClass)>) {
    let support = resultant_divisor(phi);
    let mut classes = Vec::new();
    let mut ok = true;
    for (p, _) in support.iter() {
        let cls = classify(&reduce_presentation(phi, p));
        ok &= cls.is_semistable();
        classes.push((p.clone(), cls));
    }
    (ok, classes)
}

fn pole_part<F: GlobalField>(x: &F::Elem) -> Divisor<F::Place> {
    let mut out = Divisor::new();
    if x.is_zero() {
        return out;
    }
    for (p, c) in F::principal_divisor(x).iter() {
        if c < 0 {
            out.add_place(p.clone(), -c);
        }
    }
    out
}

fn zero_part<F: GlobalField>(x: &F::Elem) -> Divisor<F::Place> {
    let mut out = Divisor::new();
    if x.is_zero() {
        return out;
    }
    for (p, c) in F::principal_divisor(x).iter() {
        if c > 0 {
            out.add_place(p.clone(), c);
        }
    }
    out
}

/// The degree-2 normal form (X² + λ₁XY)/(λ₂XY + Y²) is a semi-stable
/// presentation iff the pole divisors of λ₁ and λ₂ coincide and at no
/// place do both residues equal 1.
pub fn normal_form_semistable<F: GlobalField>(l1: &F::Elem, l2: &F::Elem) -> bool {
    let rho = F::Elem::one() - l1.clone() * l2.clone();
    assert!(!rho.is_zero(), "degenerate normal form");
    if pole_part::<F>(l1) != pole_part::<F>(l2) {
        return false;
    }
    let m1 = l1.clone() - F::Elem::one();
    let m2 = l2.clone() - F::Elem::one();
    match (m1.is_zero(), m2.is_zero()) {
        (true, true) => unreachable!("rho would vanish"),
        (true, false) => zero_part::<F>(&m2).is_zero(),
        (false, true) => zero_part::<F>(&m1).is_zero(),
        (false, false) => {
            let z1 = zero_part::<F>(&m1);
            let z2 = zero_part::<F>(&m2);
            let collision = z1.support().any(|p| z2.coeff(p) > 0);
            !collision
        }
    }
}
