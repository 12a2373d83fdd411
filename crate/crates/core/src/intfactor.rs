//! Integer factorization: trial division, Miller–Rabin, Pollard–Brent rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Miller–Rabin with the first twelve prime bases; deterministic for all
/// inputs below 3.3·10^24, overwhelmingly reliable beyond.
pub fn is_prime(n: &BigUint) -> bool {
    if *n < big(2) {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = big(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap();
    let d = &nm1 >> s;
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = big(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of an odd
/// composite n.
fn rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let two = big(2);
    let mut c = one.clone();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        let mut count = 0u32;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
            count += 1;
            if count > 1_000_000 {
                break;
            }
        }
        if d != one && d != *n {
            return d;
        }
        c += &one;
    }
}

fn factor_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = rho(&n);
    let q = &n / &d;
    factor_into(d, out);
    factor_into(q, out);
}

/// Prime factorization of a positive integer.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u32> {
    assert!(!n.is_zero(), "factoring zero");
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    for p in 2u64..10_000 {
        if m.is_one() {
            return out;
        }
        let bp = big(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
    }
    factor_into(m, &mut out);
    out
}
