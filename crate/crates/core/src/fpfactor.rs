//! Polynomial factorization over prime fields 𝔽_p (p < 2^31), by
//! squarefree decomposition, distinct-degree splitting and Cantor–Zassenhaus
//! equal-degree splitting. All randomness is drawn from a seeded ChaCha
//! stream, so results are deterministic for a given seed.

use crate::field::Rat;
use crate::ratfunc::QPoly;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Dense 𝔽_p[x], lowest degree first, trimmed.
pub type FpPoly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a ≠ 0 mod p.
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    r
}

pub fn trim(mut v: FpPoly) -> FpPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn deg(f: &FpPoly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p
            })
            .collect(),
    )
}

pub fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(v)
}

pub fn rem(a: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    let dm = deg(m).expect("division by zero polynomial");
    let mut r = a.clone();
    let li = invmod(m[dm], p);
    while r.len() > dm {
        let i = r.len() - 1;
        let q = mulmod(r[i], li, p);
        if q != 0 {
            for j in 0..dm {
                r[i - dm + j] = (r[i - dm + j] + p - mulmod(q, m[j], p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    r
}

pub fn monic(f: &FpPoly, p: u64) -> FpPoly {
    match f.last() {
        None => vec![],
        Some(&lc) => {
            let li = invmod(lc, p);
            f.iter().map(|&c| mulmod(c, li, p)).collect()
        }
    }
}

pub fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Extended gcd: (g, s, t) with s·a + t·b = g, g monic.
pub fn xgcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
        let ns = sub(&s0, &mul(&q, &s1, p), p);
        s0 = s1;
        s1 = ns;
        let nt = sub(&t0, &mul(&q, &t1, p), p);
        t0 = t1;
        t1 = nt;
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(&lc) => {
            let li = invmod(lc, p);
            (
                r0.iter().map(|&c| mulmod(c, li, p)).collect(),
                s0.iter().map(|&c| mulmod(c, li, p)).collect(),
                t0.iter().map(|&c| mulmod(c, li, p)).collect(),
            )
        }
    }
}

pub fn divrem(a: &FpPoly, m: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let dm = deg(m).expect("division by zero polynomial");
    let mut r = a.clone();
    let mut q = vec![0u64; a.len().saturating_sub(dm)];
    let li = invmod(m[dm], p);
    while r.len() > dm {
        let i = r.len() - 1;
        let c = mulmod(r[i], li, p);
        q[i - dm] = c;
        if c != 0 {
            for j in 0..dm {
                r[i - dm + j] = (r[i - dm + j] + p - mulmod(c, m[j], p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub fn derivative(f: &FpPoly, p: u64) -> FpPoly {
    if f.len() <= 1 {
        return vec![];
    }
    trim(
        f[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| mulmod(c, (i as u64 + 1) % p, p))
            .collect(),
    )
}

/// base^e mod m, e given bitwise from a BigUint.
fn powmod_poly(base: &FpPoly, e: &BigUint, m: &FpPoly, p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        if i + 1 < bits {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    acc
}

/// Squarefree decomposition in characteristic p, handling p-th powers.
pub fn squarefree_decomposition(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    fn inner(f: &FpPoly, p: u64, mult: u32, out: &mut Vec<(FpPoly, u32)>) {
        if deg(f).map_or(true, |d| d == 0) {
            return;
        }
        let df = derivative(f, p);
        if df.is_empty() {
            // f = g(x^p); take the p-th root coefficientwise.
            let g: FpPoly = f.iter().step_by(p as usize).copied().collect();
            inner(&trim(g), p, mult * p as u32, out);
            return;
        }
        let a = gcd(f, &df, p);
        let mut w = div_exact(f, &a, p);
        let mut rest = a;
        let mut i = 1u32;
        while deg(&w).map_or(false, |d| d > 0) {
            let y = gcd(&w, &rest, p);
            let part = div_exact(&w, &y, p);
            if deg(&part).map_or(false, |d| d > 0) {
                out.push((monic(&part, p), mult * i));
            }
            w = y.clone();
            rest = div_exact(&rest, &y, p);
            i += 1;
        }
        if deg(&rest).map_or(false, |d| d > 0) {
            inner(&rest, p, mult, out);
        }
    }
    let mut out = Vec::new();
    inner(&monic(f, p), p, 1, &mut out);
    out
}

fn div_exact(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let db = deg(b).expect("division by zero polynomial");
    let mut r = a.clone();
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    let li = invmod(b[db], p);
    while r.len() > db {
        let i = r.len() - 1;
        let c = mulmod(r[i], li, p);
        q[i - db] = c;
        if c != 0 {
            for j in 0..=db {
                r[i - db + j] = (r[i - db + j] + p - mulmod(c, b[j], p)) % p;
            }
        }
        r = trim(r);
    }
    assert!(r.is_empty(), "inexact polynomial division mod p");
    trim(q)
}

/// Distinct-degree decomposition of a monic squarefree f: pairs
/// (product of irreducible factors of degree d, d).
fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 0usize;
    while deg(&f).map_or(false, |n| n >= 2 * (d + 1)) {
        d += 1;
        h = powmod_poly(&h, &BigUint::from(p), &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g).map_or(false, |n| n > 0) {
            out.push((g.clone(), d));
            f = div_exact(&f, &g, p);
            h = rem(&h, &f, p);
        }
    }
    if deg(&f).map_or(false, |n| n > 0) {
        let n = deg(&f).unwrap();
        out.push((f, n));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting: f monic squarefree, all
/// irreducible factors of degree d.
fn equal_degree(f: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = deg(f).unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).map_or(true, |k| k == 0) {
            continue;
        }
        let g = gcd(&a, f, p);
        let candidate = if deg(&g).map_or(false, |k| k > 0) {
            g
        } else if p == 2 {
            // trace map: a + a^2 + a^4 + … + a^(2^(d-1))
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                s = rem(&mul(&s, &s, p), f, p);
                t = add(&t, &s, p);
            }
            gcd(&t, f, p)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = powmod_poly(&a, &e, f, p);
            gcd(&sub(&b, &[1u64][..].to_vec(), p), f, p)
        };
        let k = deg(&candidate).unwrap_or(0);
        if k > 0 && k < n {
            let other = div_exact(f, &candidate, p);
            equal_degree(&candidate, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors with multiplicities. The leading coefficient
/// of `f` is discarded (factors are monic).
pub fn factor_mod_p(f: &FpPoly, p: u64, seed: u64) -> Vec<(FpPoly, u32)> {
    assert!(!f.is_empty(), "factoring the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f, p) {
        for (prod, d) in distinct_degree(&part, p) {
            let mut irr = Vec::new();
            equal_degree(&prod, d, p, &mut rng, &mut irr);
            for g in irr {
                out.push((g, mult));
            }
        }
    }
    out.sort();
    out
}

/// Roots of f in 𝔽_p, ascending, without multiplicity.
pub fn roots_mod_p(f: &FpPoly, p: u64, seed: u64) -> Vec<u64> {
    let mut roots: Vec<u64> = factor_mod_p(f, p, seed)
        .into_iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, _)| (p - g[0] % p) % p)
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Reduce a rational-coefficient polynomial mod p; None if a denominator
/// vanishes mod p.
pub fn qpoly_mod_p(f: &QPoly, p: u64) -> Option<FpPoly> {
    let bp = BigInt::from(p);
    let mut v = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        v.push(rat_mod_p(c, &bp)?);
    }
    Some(trim(v))
}

pub fn rat_mod_p(c: &Rat, bp: &BigInt) -> Option<u64> {
    let p = bp.to_u64().unwrap();
    let dm = c.denom().mod_floor(bp);
    if dm.is_zero() {
        return None;
    }
    let nm = c.numer().mod_floor(bp).to_u64().unwrap();
    Some(mulmod(nm, invmod(dm.to_u64().unwrap(), p), p))
}

/// Lift a residue to the symmetric range (−p/2, p/2].
pub fn symmetric_lift(c: u64, p: u64) -> BigInt {
    if c > p / 2 {
        BigInt::from(c) - BigInt::from(p)
    } else {
        BigInt::from(c)
    }
}
