//! Integer helpers: extended gcd, exact square roots, primality and
//! factorization of discriminant-sized integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Exact integer square root; `None` for negative numbers and non-squares.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Probabilistic (fixed-base) Miller-Rabin for big integers.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let n_u = n.magnitude();
    let one = BigUint::one();
    let n1 = n_u - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n_u);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n_u;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization failure: the cofactor is composite and too large for
/// the 64-bit rho fallback.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unfactored(pub BigInt);

/// Factors `|n|` (n != 0) into `(prime, exponent)` pairs sorted by prime.
pub fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>, Unfactored> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut m = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        if let Some(small) = m.to_u64() {
            let mut fs = Vec::new();
            factor_u64_into(small, &mut fs);
            primes.extend(fs.into_iter().map(BigInt::from));
        } else if is_probable_prime(&m) {
            primes.push(m);
        } else {
            return Err(Unfactored(m));
        }
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// Valuation of `n` at the prime `p` (n != 0).
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut m = n.clone();
    let mut v = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// `n` is `±p^k` for some `k >= 0`.
pub fn is_signed_power_of(n: &BigInt, p: u64) -> bool {
    if n.is_zero() {
        return false;
    }
    let mut m = n.abs();
    let bp = BigInt::from(p);
    while (&m % &bp).is_zero() {
        m /= &bp;
    }
    m.is_one()
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, d| {
        if d.is_zero() {
            acc
        } else {
            acc.lcm(d)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn ext_gcd_identity() {
        for (x, y) in [(12, 18), (-7, 3), (0, 5), (5, 0), (0, 0), (-4, -6)] {
            let (g, s, t) = ext_gcd(&b(x), &b(y));
            assert_eq!(&s * b(x) + &t * b(y), g);
            assert_eq!(g, b(x).gcd(&b(y)));
        }
    }

    #[test]
    fn squares() {
        assert!(is_square(&b(81)));
        assert!(!is_square(&b(-4)));
        assert!(!is_square(&b(8)));
        assert!(is_square(&b(0)));
    }

    #[test]
    fn factor_discriminants() {
        assert_eq!(factorize(&b(-243)).unwrap(), vec![(b(3), 5)]);
        assert_eq!(factorize(&b(4225)).unwrap(), vec![(b(5), 2), (b(13), 2)]);
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        assert_eq!(
            factorize(&big).unwrap(),
            vec![(b(998_244_353), 1), (b(1_000_000_007), 1)]
        );
    }

    #[test]
    fn huge_composite_cofactor_is_reported() {
        let p = BigInt::parse_bytes(b"18446744073709551629", 10).unwrap(); // prime > 2^64
        let q = BigInt::parse_bytes(b"18446744073709551653", 10).unwrap(); // prime > 2^64
        assert!(is_probable_prime(&p));
        assert!(factorize(&p).is_ok());
        assert!(matches!(factorize(&(&p * &q)), Err(Unfactored(_))));
    }
}
