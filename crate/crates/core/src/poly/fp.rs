use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntPolynomial;

fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    addm(a, p - b % p, p)
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    powm(a, p - 2, p)
}

/// Polynomial over the prime field F_p (p < 2^63), ascending coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, coeffs: c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| addm(self.c(i), o.c(i), self.p)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| subm(self.c(i), o.c(i), self.p)).collect())
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| mulm(c, k, self.p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, self.p), self.p);
            }
        }
        Self::new(self.p, out)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invm(self.lc(), self.p))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dn = d.deg();
        if self.coeffs.len() <= dn {
            return (Self::zero(p), self.clone());
        }
        let inv = invm(d.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dn];
        for i in (dn..r.len()).rev() {
            let c = mulm(r[i], inv, p);
            r[i] = 0;
            if c == 0 {
                continue;
            }
            for j in 0..dn {
                r[i - dn + j] = subm(r[i - dn + j], mulm(c, d.coeffs[j], p), p);
            }
            q[i - dn] = c;
        }
        r.truncate(dn);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = invm(r0.lc(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % self.p, self.p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| addm(mulm(acc, x, self.p), c, self.p))
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Lift to integer coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| c.into()).collect())
    }

    /// Roots in F_p with multiplicity, ascending.
    pub fn roots_with_multiplicity(&self) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = factor_fp(self)
            .into_iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, m)| ((self.p - g.coeffs[0]) % self.p, m))
            .collect();
        out.sort();
        out
    }
}

fn squarefree_fp(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while !w.is_one() && !w.is_zero() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.deg() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        // c is a p-th power: its only nonzero coefficients sit at multiples of p.
        let root = FpPoly::new(p, c.coeffs.iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree_fp(&root.monic()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest);
    let bp = BigUint::from(p);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.powmod(&bp, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dr = rest.deg();
        out.push((rest.monic(), dr));
    }
    out
}

fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    if f.deg() == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    let n = f.deg();
    let exp = if p == 2 { BigUint::zero() } else { (BigUint::from(p).pow(d as u32) - BigUint::one()) / 2u32 };
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.powmod(&exp, f).sub(&FpPoly::one(p))
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let other = f.divrem(&g).0;
            equal_degree(&g, d, rng, out);
            equal_degree(&other.monic(), d, rng, out);
            return;
        }
    }
}

/// Complete factorization of a nonzero polynomial over F_p into monic
/// irreducibles with multiplicity, sorted by degree then coefficients.
/// The leading coefficient is dropped.
pub(crate) fn factor_fp(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    for (sf, m) in squarefree_fp(&f.monic()) {
        for (g, d) in distinct_degree(&sf) {
            let mut parts = Vec::new();
            equal_degree(&g, d, &mut rng, &mut parts);
            out.extend(parts.into_iter().map(|h| (h, m)));
        }
    }
    out.sort_by(|(a, _), (b, _)| (a.deg(), &a.coeffs).cmp(&(b.deg(), &b.coeffs)));
    // Merge repeated factors that arrived through different squarefree layers.
    let mut merged: Vec<(FpPoly, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

/// Factorization of `f mod p` into monic irreducible factors with
/// multiplicity. The leading coefficient modulo `p` is not part of the output;
/// a polynomial vanishing mod p yields an empty list.
pub fn factor_mod_p(f: &IntPolynomial, p: u64) -> Vec<(FpPoly, u32)> {
    let fp = f.mod_p(p);
    if fp.is_zero() {
        return Vec::new();
    }
    factor_fp(&fp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn worked_factorizations() {
        let f = IntPolynomial::from_i64(&[-5, -1, 6, 1]);
        assert_eq!(factor_mod_p(&f, 5), vec![(fp(5, &[0, 1]), 1), (fp(5, &[3, 1]), 2)]);
        let g = IntPolynomial::from_i64(&[1, -3, 0, 1]);
        assert_eq!(factor_mod_p(&g, 3), vec![(fp(3, &[1, 1]), 3)]);
        let h = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(factor_mod_p(&h, 2), vec![(fp(2, &[1, 1]), 2)]);
    }

    #[test]
    fn random_products_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &p in &[2u64, 3, 5, 7, 101, 1_000_003] {
            for _ in 0..25 {
                let n = rng.gen_range(1..9);
                let mut c: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                c.push(1);
                let f = FpPoly::new(p, c);
                let fs = factor_fp(&f);
                assert_eq!(product(&fs, p), f, "p = {p}");
                for (g, _) in &fs {
                    // Irreducible: no roots for degree 2 and 3, and DDF agrees.
                    let ddf = distinct_degree(g);
                    assert_eq!(ddf.len(), 1);
                    assert_eq!(ddf[0].1, g.deg());
                }
            }
        }
    }

    #[test]
    fn pth_powers() {
        // (X^2 + 1)^3 over F_3 has zero derivative.
        let base = fp(3, &[1, 0, 1]);
        let f = base.mul(&base).mul(&base);
        assert!(f.derivative().is_zero());
        assert_eq!(factor_fp(&f), vec![(base, 3)]);
    }
}
