//! Factorization in ℚ[x]: Yun squarefree split, reduction mod a good odd
//! prime, Cantor–Zassenhaus there, quadratic Hensel lifting past the
//! Mignotte bound and subset recombination.

use crate::field::Rat;
use crate::fpfactor::{self, FpPoly};
use crate::ratfunc::QPoly;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// ℤ[x] mod m, lowest degree first, coefficients normalized to [0, m).
type ZPoly = Vec<BigInt>;

fn znorm(mut v: ZPoly, m: &BigInt) -> ZPoly {
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zadd(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    znorm(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigInt::zero)
                    + b.get(i).cloned().unwrap_or_else(BigInt::zero)
            })
            .collect(),
        m,
    )
}

fn zsub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    znorm(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigInt::zero)
                    - b.get(i).cloned().unwrap_or_else(BigInt::zero)
            })
            .collect(),
        m,
    )
}

fn zmul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    znorm(v, m)
}

/// Division with remainder by a polynomial whose leading coefficient is 1.
fn zdivrem_monic(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dd = d.len() - 1;
    assert!(d[dd].is_one(), "divisor is not monic");
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(dd)];
    while r.len() > dd {
        let i = r.len() - 1;
        let c = r[i].clone();
        q[i - dd] = c.clone();
        if !c.is_zero() {
            for j in 0..dd {
                let t = (&r[i - dd + j] - &c * &d[j]).mod_floor(m);
                r[i - dd + j] = t;
            }
        }
        r.pop();
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    (znorm(q, m), r)
}

fn fp_to_z(f: &FpPoly) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from f ≡ g·h and s·g + t·h ≡ 1 (mod m) to
/// the same congruences mod m². f, g, h monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zsub(f, &zmul(g, h, &m2), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e, &m2), h, &m2);
    let g1 = zadd(&zadd(g, &zmul(t, &e, &m2), &m2), &zmul(&q, g, &m2), &m2);
    let h1 = zadd(h, &r, &m2);
    let b = zsub(
        &zadd(&zmul(s, &g1, &m2), &zmul(t, &h1, &m2), &m2),
        &vec![BigInt::one()],
        &m2,
    );
    let (c, d) = zdivrem_monic(&zmul(s, &b, &m2), &h1, &m2);
    let s1 = zsub(s, &d, &m2);
    let t1 = zsub(&zsub(t, &zmul(t, &b, &m2), &m2), &zmul(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift the mod-p factorization of a monic f to mod p^(2^k) ≥ target,
/// recursing on a balanced factor tree.
fn hensel_tree(f: &ZPoly, factors: &[FpPoly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let bp = BigInt::from(p);
    let mut g: FpPoly = vec![1];
    for q in &factors[..mid] {
        g = fpfactor::mul(&g, q, p);
    }
    let mut h: FpPoly = vec![1];
    for q in &factors[mid..] {
        h = fpfactor::mul(&h, q, p);
    }
    let (gcd, s, t) = fpfactor::xgcd(&g, &h, p);
    assert_eq!(gcd, vec![1], "modular factors are not coprime");
    let (mut zg, mut zh, mut zs, mut zt) = (fp_to_z(&g), fp_to_z(&h), fp_to_z(&s), fp_to_z(&t));
    let mut m = bp;
    while m < *target {
        let (g1, h1, s1, t1) = hensel_step(f, &zg, &zh, &zs, &zt, &m);
        zg = g1;
        zh = h1;
        zs = s1;
        zt = t1;
        m = &m * &m;
    }
    let mut out = hensel_tree(&zg, &factors[..mid], p, target);
    out.extend(hensel_tree(&zh, &factors[mid..], p, target));
    out
}

fn symmetric(v: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    v.iter()
        .map(|c| if c > &half { c - m } else { c.clone() })
        .collect()
}

fn zpoly_to_qpoly(v: &ZPoly) -> QPoly {
    QPoly::new(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn qpoly_from_bigints(v: Vec<BigInt>) -> QPoly {
    QPoly::new(v.into_iter().map(Rat::from_integer).collect())
}

/// Monic f with integer coefficients, as BigInt vector.
fn monic_int_coeffs(f: &QPoly) -> Vec<BigInt> {
    f.coeffs()
        .iter()
        .map(|c| {
            assert!(c.denom().is_one(), "non-integral coefficient");
            c.numer().clone()
        })
        .collect()
}

/// 2^deg · ⌈‖f‖₂⌉, bounding the coefficients of any monic factor of a
/// monic integer f.
fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let root = norm2.to_biguint().unwrap().sqrt() + BigUint::one();
    (BigInt::one() << (f.len() - 1)) * BigInt::from(root)
}

fn smallest_good_prime(f: &[BigInt]) -> u64 {
    let mut p = 3u64;
    loop {
        if intfactor_is_prime(p) {
            let fp: FpPoly = fpfactor::trim(
                f.iter()
                    .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                    .collect(),
            );
            if fp.len() == f.len() {
                let d = fpfactor::derivative(&fp, p);
                if !d.is_empty() && fpfactor::gcd(&fp, &d, p) == vec![1] {
                    return p;
                }
            }
        }
        p += 2;
    }
}

fn intfactor_is_prime(p: u64) -> bool {
    crate::intfactor::is_prime(&BigUint::from(p))
}

/// Factor a monic squarefree polynomial with integer coefficients into
/// monic irreducibles over ℚ.
fn factor_monic_squarefree(f: &QPoly) -> Vec<QPoly> {
    let n = f.deg().unwrap();
    if n <= 1 {
        return vec![f.clone()];
    }
    let zf = monic_int_coeffs(f);
    let p = smallest_good_prime(&zf);
    let fp: FpPoly = fpfactor::trim(
        zf.iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect(),
    );
    let mut modular: Vec<FpPoly> = fpfactor::factor_mod_p(&fp, p, 0)
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let target = BigInt::from(2) * mignotte_bound(&zf) + BigInt::one();
    let mut m = BigInt::from(p);
    while m < target {
        m = &m * &m;
    }
    let mut lifted = hensel_tree(&znorm(zf.clone(), &m), &modular, p, &target);

    let mut out = Vec::new();
    let mut remaining = f.clone();
    let mut size = 1usize;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for combo in combinations(lifted.len(), size) {
            let mut prod: ZPoly = vec![BigInt::one()];
            for &i in &combo {
                prod = zmul(&prod, &lifted[i], &m);
            }
            let candidate = zpoly_to_qpoly(&symmetric(&prod, &m));
            if let Some(q) = remaining.div_exact(&candidate) {
                out.push(candidate);
                remaining = q;
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                    modular.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if remaining.deg().map_or(false, |d| d > 0) {
        out.push(remaining);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Monic irreducible factors over ℚ with multiplicities, sorted by degree
/// then coefficients. The leading coefficient of f is discarded.
pub fn factor_q(f: &QPoly) -> Vec<(QPoly, u32)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        // Scale to a monic integer polynomial: for g with leading
        // coefficient 1 and rational coefficients, lcm-clear then pass to
        // G(x) = c^(n-1) g(x/c); factors of g are H(c x) made monic.
        let n = part.deg().unwrap();
        let mut den_lcm = BigInt::one();
        for c in part.coeffs() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let cleared = part.scale(&Rat::from_integer(den_lcm));
        let lc = cleared.leading().numer().clone();
        let monic_int = qpoly_from_bigints(
            (0..=n)
                .map(|i| {
                    if i == n {
                        BigInt::one()
                    } else {
                        cleared.coeff(i).numer().clone() * lc.pow((n - 1 - i) as u32)
                    }
                })
                .collect(),
        );
        let lcq = Rat::from_integer(lc);
        for h in factor_monic_squarefree(&monic_int) {
            let back = h
                .compose(&QPoly::new(vec![Rat::zero(), lcq.clone()]))
                .monic();
            out.push((back, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    out
}

/// Rational roots of f, ascending, without multiplicity.
pub fn roots_q(f: &QPoly) -> Vec<Rat> {
    let mut roots: Vec<Rat> = factor_q(f)
        .into_iter()
        .filter(|(g, _)| g.deg() == Some(1))
        .map(|(g, _)| -g.coeff(0))
        .collect();
    roots.sort();
    roots.dedup();
    roots
}

pub fn is_irreducible_q(f: &QPoly) -> bool {
    match f.deg() {
        None | Some(0) => false,
        Some(1) => true,
        _ => {
            let fs = factor_q(f);
            fs.len() == 1 && fs[0].1 == 1
        }
    }
}
