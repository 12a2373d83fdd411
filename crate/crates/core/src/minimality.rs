//! Minimal resultants: the multiplier polynomial at the fixed points,
//! minimality certificates, non-minimality witnesses, greedy descent, and
//! the weight-class divisor.

use crate::dynsys::{
    model_min_valuation, n_value, normalize_p_model, reduce_presentation, resultant_divisor,
    Matrix2, Model, Presentation,
};
use crate::field::Field;
use crate::linalg;
use crate::places::{Divisor, GlobalField};
use crate::poly::Poly;
use crate::stability;
use num_traits::{One, Zero};

/// The monic characteristic polynomial M(z) = Π(z − λ) of the d+1 fixed-point
/// multipliers, and its signed coefficients σ₁, …, σ_{d+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierData<E> {
    pub poly: Poly<E>,
    pub sigma: Vec<E>,
}

/// Multiplier polynomial of a nondegenerate model via the z-resultant
/// Res_x(f − xg, z·g² − (f′g − fg′)); evaluated at z = 1, …, d+2 and
/// interpolated. A preliminary conjugation by [[1,k],[0,1]] moves every
/// fixed point away from infinity (possible whenever ρ ≠ 0).
pub fn multiplier_data<E: Field>(m: &Model<E>) -> MultiplierData<E> {
    let d = m.d;
    assert!(!m.resultant().is_zero(), "degenerate model");
    let mut work = m.clone();
    let mut k = 0i64;
    while work.b[0].is_zero() {
        k += 1;
        assert!(k as usize <= d + 1, "no affine chart with b0 nonzero");
        work = m.conjugate(&Matrix2::from_ints(1, k, 0, 1));
    }
    let f = Poly::new(work.a.iter().rev().cloned().collect());
    let g = Poly::new(work.b.iter().rev().cloned().collect());
    let fix = f.clone() - g.shift(1);
    let w = f.derivative() * g.clone() - f * g.derivative();
    let gg = g.clone() * g;
    let mut pts = Vec::with_capacity(d + 2);
    for j in 1..=(d as i64 + 2) {
        let z = E::from_int(j);
        // deg(z·g² − w) = 2d for every z ≠ 0, so the interpolation points
        // lie on a single degree-(d+1) polynomial in z
        let h = gg.scale(&z) - w.clone();
        pts.push((z, linalg::resultant_polys(&fix, &h)));
    }
    let mz = Poly::interpolate(&pts).monic();
    assert_eq!(mz.deg(), Some(d + 1), "multiplier polynomial degree");
    let mut sigma = Vec::with_capacity(d + 1);
    let mut sign = E::one();
    for i in 1..=d + 1 {
        sign = -sign;
        sigma.push(sign.clone() * mz.coeff(d + 1 - i));
    }
    MultiplierData { poly: mz, sigma }
}

/// σ₁·ρ in degree 2, as the integral polynomial in the model coefficients;
/// weight 4, same as ρ.
pub fn sigma1_numerator<E: Field>(m: &Model<E>) -> E {
    assert_eq!(m.d, 2, "only defined in degree 2");
    let c = |n: i64| E::from_int(n);
    let (a0, a1, a2) = (m.a[0].clone(), m.a[1].clone(), m.a[2].clone());
    let (b0, b1, b2) = (m.b[0].clone(), m.b[1].clone(), m.b[2].clone());
    a1.clone() * a1.clone() * a1.clone() * b0.clone()
        + c(-4) * a0.clone() * a1.clone() * a2.clone() * b0.clone()
        + c(-6) * a2.clone() * a2.clone() * b0.clone() * b0.clone()
        + c(-1) * a0.clone() * a1.clone() * a1.clone() * b1.clone()
        + c(4) * a0.clone() * a0.clone() * a2.clone() * b1.clone()
        + c(4) * a1.clone() * a2.clone() * b0.clone() * b1.clone()
        + c(-2) * a0.clone() * a2.clone() * b1.clone() * b1.clone()
        + a2.clone() * b1.clone() * b1.clone() * b1.clone()
        + c(-2) * a1.clone() * a1.clone() * b0.clone() * b2.clone()
        + c(4) * a0.clone() * a2.clone() * b0.clone() * b2.clone()
        + c(-4) * a2.clone() * b0.clone() * b1.clone() * b2.clone()
        + c(-1) * a1.clone() * b1.clone() * b1 * b2.clone()
        + c(2) * a0.clone() * a0 * b2.clone() * b2.clone()
        + c(4) * a1 * b0 * b2.clone() * b2
}

/// σ₂·ρ in degree 2, likewise integral of weight 4.
pub fn sigma2_numerator<E: Field>(m: &Model<E>) -> E {
    assert_eq!(m.d, 2, "only defined in degree 2");
    let c = |n: i64| E::from_int(n);
    let (a0, a1, a2) = (m.a[0].clone(), m.a[1].clone(), m.a[2].clone());
    let (b0, b1, b2) = (m.b[0].clone(), m.b[1].clone(), m.b[2].clone());
    c(4) * a0.clone() * a0.clone() * a0.clone() * a2.clone()
        + c(-1) * a0.clone() * a0.clone() * a1.clone() * a1.clone()
        + c(2) * a0.clone() * a0.clone() * a1.clone() * b2.clone()
        + c(-4) * a0.clone() * a0.clone() * a2.clone() * b1.clone()
        + c(10) * a0.clone() * a1.clone() * a2.clone() * b0.clone()
        + c(-1) * a0.clone() * a1.clone() * b1.clone() * b2.clone()
        + c(-4) * a0.clone() * a2.clone() * b0.clone() * b2.clone()
        + c(5) * a0.clone() * a2.clone() * b1.clone() * b1.clone()
        + c(2) * a0.clone() * b1.clone() * b2.clone() * b2.clone()
        + c(-2) * a1.clone() * a1.clone() * a1.clone() * b0.clone()
        + c(5) * a1.clone() * a1.clone() * b0.clone() * b2.clone()
        + c(-1) * a1.clone() * a1.clone() * b1.clone() * b1.clone()
        + c(-7) * a1.clone() * a2.clone() * b0.clone() * b1.clone()
        + c(-4) * a1.clone() * b0.clone() * b2.clone() * b2.clone()
        + c(12) * a2.clone() * a2.clone() * b0.clone() * b0.clone()
        + c(10) * a2.clone() * b0.clone() * b1.clone() * b2.clone()
        + c(-2) * a2 * b1.clone() * b1.clone() * b1.clone()
        + c(4) * b0 * b2.clone() * b2.clone() * b2.clone()
        + c(-1) * b1.clone() * b1 * b2.clone() * b2
}

/// A proof that N_{Φ,p} cannot be lowered by conjugation.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// 0 ≤ N < 2d on a canonical presentation.
    ResultantBound,
    /// v_p(σ_index) + v_p(ρ of a p-model) = 0: σ_index·ρ is integral in the
    /// coefficients of any p-model, so v_p(ρ) ≥ −v_p(σ_index) in the class.
    MultiplierNumerator { index: usize },
    /// Degree 2 over a function field with semi-stable reduction at p.
    SemistableReduction,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MinimalityStatus {
    CertifiedMinimal { value: i64, certificate: Certificate },
    BestFound { value: i64, budget: u32 },
}

impl MinimalityStatus {
    pub fn value(&self) -> i64 {
        match self {
            MinimalityStatus::CertifiedMinimal { value, .. } => *value,
            MinimalityStatus::BestFound { value, .. } => *value,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, MinimalityStatus::CertifiedMinimal { .. })
    }
}

/// Try to certify that N_{Φ,p} is already minimal in the conjugacy class.
pub fn minimality_certificate<F: GlobalField>(
    phi: &Presentation<F>,
    p: &F::Place,
) -> Option<Certificate> {
    let d = phi.degree();
    let n = n_value(phi, p);
    if d == 2 {
        let (pm, _) = normalize_p_model::<F>(phi.model(), p);
        let v_rho = F::valuation(&pm.resultant(), p).unwrap();
        let md = multiplier_data(phi.model());
        for index in [1usize, 2] {
            let s = &md.sigma[index - 1];
            if !s.is_zero() && F::valuation(s, p).unwrap() + v_rho == 0 {
                return Some(Certificate::MultiplierNumerator { index });
            }
        }
    }
    if n < 2 * d as i64 {
        return Some(Certificate::ResultantBound);
    }
    if d == 2 && F::FUNCTION_FIELD {
        let cls = stability::classify(&reduce_presentation(phi, p));
        if cls.is_semistable() {
            return Some(Certificate::SemistableReduction);
        }
    }
    None
}

/// Whether Γ witnesses non-minimality at p: with e = v_p(det Γ) > 0 and
/// n′ the minimum coefficient valuation of the conjugated p-model,
/// 2n′ > (d+1)e, so N drops. Invariant under scaling Γ.
pub fn check_minimality_witness<F: GlobalField>(
    phi: &Presentation<F>,
    p: &F::Place,
    gamma: &Matrix2<F::Elem>,
) -> bool {
    let det = gamma.det();
    assert!(!det.is_zero(), "singular matrix");
    let e = F::valuation(&det, p).unwrap();
    if e <= 0 {
        return false;
    }
    let (pm, _) = normalize_p_model::<F>(phi.model(), p);
    let conj = pm.conjugate(gamma);
    let n = model_min_valuation::<F>(&conj, p);
    2 * n > (phi.degree() as i64 + 1) * e
}

/// Candidate conjugators at p: zooms π^k at 0 and ∞, and zooms centered at
/// lifts of the residue roots of the reduced common factor, k ≤ budget.
fn descent_candidates<F: GlobalField>(
    phi: &Presentation<F>,
    p: &F::Place,
    budget: u32,
) -> Vec<Matrix2<F::Elem>> {
    let pi = F::uniformizer(p);
    let mut roots: Vec<F::Elem> = Vec::new();
    let red = reduce_presentation(phi, p);
    if let Some((_, g)) = stability::common_factor(&red) {
        for r in F::residue_roots(&g, p) {
            roots.push(F::lift_residue(&r, p));
        }
    }
    let mut out = Vec::new();
    let mut pk = F::Elem::one();
    for _ in 0..budget {
        pk = pk * pi.clone();
        out.push(Matrix2::diag(pk.clone(), F::Elem::one()));
        out.push(Matrix2::diag(F::Elem::one(), pk.clone()));
        for r in &roots {
            // x ↦ π^k x + r and its inverse chart
            out.push(Matrix2::new(
                pk.clone(),
                F::Elem::zero(),
                r.clone(),
                F::Elem::one(),
            ));
            out.push(Matrix2::new(
                F::Elem::one(),
                F::Elem::zero(),
                -r.clone(),
                pk.clone(),
            ));
        }
    }
    out
}

/// Greedy descent at p: repeatedly take the candidate conjugation that
/// lowers N the most, stopping at a certificate or when no candidate
/// improves within the budget.
pub fn descend<F: GlobalField>(
    phi: &Presentation<F>,
    p: &F::Place,
    budget: u32,
) -> (Presentation<F>, MinimalityStatus) {
    let mut cur = phi.clone();
    loop {
        let n = n_value(&cur, p);
        if let Some(certificate) = minimality_certificate(&cur, p) {
            return (
                cur,
                MinimalityStatus::CertifiedMinimal {
                    value: n,
                    certificate,
                },
            );
        }
        let mut best: Option<(Presentation<F>, i64)> = None;
        for g in descent_candidates(&cur, p, budget) {
            if F::valuation(&g.det(), p).map_or(true, |e| e <= 0) {
                continue;
            }
            let cand = cur.conjugate(&g);
            let nn = n_value(&cand, p);
            if nn < best.as_ref().map_or(n, |(_, b)| *b) {
                best = Some((cand, nn));
            }
        }
        match best {
            Some((c, _)) => cur = c,
            None => return (cur, MinimalityStatus::BestFound { value: n, budget }),
        }
    }
}

/// The minimal resultant divisor with per-place statuses and the conductor
/// (the reduced support).
pub struct MinimalResultant<F: GlobalField> {
    pub divisor: Divisor<F::Place>,
    pub conductor: Divisor<F::Place>,
    pub reports: Vec<(F::Place, MinimalityStatus)>,
    pub all_certified: bool,
}

pub fn minimal_resultant<F: GlobalField>(
    phi: &Presentation<F>,
    budget: u32,
) -> MinimalResultant<F> {
    let r = resultant_divisor(phi);
    let mut divisor = Divisor::new();
    let mut reports = Vec::new();
    let mut all_certified = true;
    for (p, _) in r.iter() {
        let (_, status) = descend(phi, p, budget);
        all_certified &= status.is_certified();
        divisor.add_place(p.clone(), status.value());
        reports.push((p.clone(), status));
    }
    let conductor = divisor.reduced();
    MinimalResultant {
        divisor,
        conductor,
        reports,
        all_certified,
    }
}

/// The weight-class divisor A with R_min − div(ρ) = c·A, where c = 2d for
/// odd d and c = d for even d; None when the difference is not divisible.
pub fn wclass_divisor<F: GlobalField>(
    phi: &Presentation<F>,
    rmin: &Divisor<F::Place>,
) -> Option<Divisor<F::Place>> {
    let d = phi.degree() as i64;
    let c = if d % 2 == 0 { d } else { 2 * d };
    rmin.sub(&F::principal_divisor(&phi.resultant())).div_exact(c)
}
