//! Factorization over Z (Zassenhaus: factor mod p, Hensel lift, recombine)
//! and the helpers built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::factor_fp;
use super::{FpPoly, IntPolynomial};
use crate::arith::{is_prime_u64, is_square};
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 8;

/// `f = content · Π factor^multiplicity`, factors primitive with positive
/// leading coefficient, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(self.content.clone()), |acc, (g, m)| acc.mul(&g.pow(*m)))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Squarefree decomposition of a primitive polynomial: pairs `(g_i, i)` with
/// `f = Π g_i^i` up to sign, each `g_i` primitive squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let fq = f.to_q();
    if f.deg() == 0 {
        return Vec::new();
    }
    let d = fq.derivative();
    let a0 = fq.gcd(&d);
    let mut b = fq.divrem(&a0).0;
    let c = d.divrem(&a0).0;
    let mut dd = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&dd);
        let nb = b.divrem(&a).0;
        let c = dd.divrem(&a).0;
        dd = c.sub(&nb.derivative());
        if a.deg() > 0 {
            out.push((a.to_primitive_int(), i));
        }
        b = nb;
        i += 1;
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| is_prime_u64(n))
}

fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn mul_mod_poly(a: &IntPolynomial, b: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(a.mul(b).coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn fp_to_int(f: &FpPoly) -> IntPolynomial {
    f.to_int()
}

/// Lifts `f ≡ lc·g·h (mod p)` (g, h monic and coprime mod p) to a monic
/// `G ≡ g` with `f ≡ lc·G·H (mod p^k)`. Returns `G` with coefficients in `[0, p^k)`.
fn hensel_lift(f: &IntPolynomial, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> IntPolynomial {
    let lc = f.lc();
    let bp = BigInt::from(p);
    let lc_inv = {
        let l = lc.mod_floor(&bp).to_u64().unwrap();
        FpPoly::new(p, vec![l]).monic().coeffs()[0]
    };
    let (one, _s, t) = g.ext_gcd(h);
    debug_assert!(one.is_one());
    let mut big_g = fp_to_int(g);
    let mut big_h = fp_to_int(h);
    let mut m = bp.clone();
    for _ in 1..k {
        let e = f.sub(&big_g.mul(&big_h).scale(&lc));
        let e_div: Vec<BigInt> = e.coeffs().iter().map(|c| c / &m).collect();
        let e_p = IntPolynomial::new(e_div).mod_p(p).scale(lc_inv);
        let dg = t.mul(&e_p).rem(g);
        let dh = e_p.sub(&h.mul(&dg)).divrem(g).0;
        big_g = big_g.add(&fp_to_int(&dg).scale(&m));
        big_h = big_h.add(&fp_to_int(&dh).scale(&m));
        m *= &bp;
    }
    IntPolynomial::new(big_g.coeffs().iter().map(|c| c.mod_floor(&m)).collect())
}

fn coefficient_bound(f: &IntPolynomial) -> BigInt {
    let n = f.deg();
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    (BigInt::one() << n) * norm * f.lc().abs()
}

/// Zassenhaus factorization of a primitive squarefree polynomial of degree >= 1
/// with positive leading coefficient.
fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Pick the prime with fewest modular factors among a few good ones.
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut good = 0;
    for p in small_primes() {
        if (f.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = f.mod_p(p);
        if fp.gcd(&fp.derivative()).deg() > 0 {
            continue;
        }
        let facs: Vec<FpPoly> = factor_fp(&fp).into_iter().map(|(g, _)| g).collect();
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        good += 1;
        if good >= 5 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is always good for a squarefree polynomial");
    let bp = BigInt::from(p);
    let bound = coefficient_bound(f) * 2;
    let mut k = 1u32;
    let mut m = bp.clone();
    while m <= bound {
        m *= &bp;
        k += 1;
    }
    let fp = f.mod_p(p).monic();
    let lifted: Vec<IntPolynomial> = modular
        .iter()
        .map(|g| {
            let h = fp.divrem(g).0;
            hensel_lift(f, g, &h, p, k)
        })
        .collect();

    let mut remaining: Vec<IntPolynomial> = lifted;
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit: Option<(Vec<usize>, IntPolynomial)> = None;
        for subset in combinations(remaining.len(), size) {
            let lc = rest.lc();
            let prod = subset
                .iter()
                .fold(IntPolynomial::constant(lc.clone()), |acc, &i| mul_mod_poly(&acc, &remaining[i], &m));
            let cand = IntPolynomial::new(prod.coeffs().iter().map(|c| symmetric_mod(c, &m)).collect()).primitive_part();
            let c0 = cand.coeff(0);
            let r0 = rest.coeff(0);
            if !c0.is_zero() && !(&r0 % &c0).is_zero() {
                continue;
            }
            if let Some(q) = rest.exact_div(&cand) {
                hit = Some((subset, q));
                found.push(cand);
                break;
            }
        }
        match hit {
            Some((subset, q)) => {
                rest = q;
                let mut i = 0;
                remaining.retain(|_| {
                    let keep = !subset.contains(&i);
                    i += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if rest.deg() > 0 {
        found.push(rest.primitive_part());
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn sort_factors(v: &mut [(IntPolynomial, u32)]) {
    v.sort_by(|(a, _), (b, _)| (a.deg(), a.coeffs()).cmp(&(b.deg(), b.coeffs())));
}

/// Factorization over Z without a degree cap.
pub fn factor_over_z_uncapped(f: &IntPolynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::PreconditionFailed("cannot factor the zero polynomial".into()));
    }
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let prim = f.primitive_part();
    let mut factors = Vec::new();
    for (g, m) in squarefree_decomposition(&prim) {
        for h in zassenhaus(&g) {
            factors.push((h, m));
        }
    }
    sort_factors(&mut factors);
    let out = Factorization { content, factors };
    debug_assert_eq!(&out.expand(), f);
    Ok(out)
}

/// Factorization over Z for polynomials of degree at most `cap`.
pub fn factor_over_z(f: &IntPolynomial, cap: usize) -> Result<Factorization> {
    if f.deg() > cap {
        return Err(Error::DegreeCapExceeded { degree: f.deg(), cap });
    }
    factor_over_z_uncapped(f)
}

/// Largest-degree monic divisor of `f` over Z (the product of its monic
/// irreducible factors with multiplicity). `Z_A(f) = Z_A(monic_part(f))`
/// for every order `A`.
pub fn monic_part(f: &IntPolynomial, cap: usize) -> Result<IntPolynomial> {
    if f.is_zero() {
        return Err(Error::PreconditionFailed("monic part of the zero polynomial".into()));
    }
    if f.is_monic() {
        return Ok(f.clone());
    }
    if f.lc() == BigInt::from(-1) {
        return Ok(f.neg());
    }
    let fact = factor_over_z(f, cap)?;
    Ok(fact
        .factors
        .iter()
        .filter(|(g, _)| g.is_monic())
        .fold(IntPolynomial::one(), |acc, (g, m)| acc.mul(&g.pow(*m))))
}

/// `g = outer · f(inner·X + k)` with `outer, inner ∈ {±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateWitness {
    pub outer: i8,
    pub inner: i8,
    pub k: BigInt,
}

impl TranslateWitness {
    pub fn apply(&self, f: &IntPolynomial) -> IntPolynomial {
        let g = f.compose_linear(&BigInt::from(self.inner), &self.k);
        if self.outer < 0 {
            g.neg()
        } else {
            g
        }
    }
}

/// Looks for `g = ±f(±X + k)` with `|k| <= bound`. The shift is solved for
/// from the two leading coefficients, then verified.
pub fn translates_equivalent(f: &IntPolynomial, g: &IntPolynomial, bound: &BigInt) -> Option<TranslateWitness> {
    if f.degree() != g.degree() || f.is_zero() {
        return None;
    }
    let n = f.deg();
    for inner in [1i8, -1] {
        for outer in [1i8, -1] {
            let k_candidates: Vec<BigInt> = if n == 0 {
                vec![BigInt::zero()]
            } else {
                // Coefficient of X^{n-1} in outer·f(inner·X + k) is
                // outer·inner^{n-1}·(f_{n-1} + n·f_n·k).
                let sgn = BigInt::from(outer) * BigInt::from(inner).pow((n - 1) as u32);
                let num = g.coeff(n - 1) * &sgn - f.coeff(n - 1);
                let den = f.lc() * BigInt::from(n);
                if (&num % &den).is_zero() {
                    vec![num / den]
                } else {
                    vec![]
                }
            };
            for k in k_candidates {
                if k.abs() > *bound {
                    continue;
                }
                let w = TranslateWitness { outer, inner, k };
                if w.apply(f) == *g {
                    return Some(w);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CubicGalois {
    A3,
    S3,
}

/// Galois group parity of an irreducible cubic: `A3` iff the discriminant is a square.
pub fn galois_parity_cubic(f: &IntPolynomial) -> Result<CubicGalois> {
    if f.deg() != 3 {
        return Err(Error::PreconditionFailed("galois parity needs a cubic".into()));
    }
    Ok(if is_square(&f.discriminant()?) { CubicGalois::A3 } else { CubicGalois::S3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn worked_factorizations() {
        let f = factor_over_z(&p("X^2 - 1"), 8).unwrap();
        assert_eq!(f.factors, vec![(p("X - 1"), 1), (p("X + 1"), 1)]);
        assert!(factor_over_z(&p("X^3 - 3"), 8).unwrap().is_irreducible());
        let g = factor_over_z(&p("2X^2 + 2"), 8).unwrap();
        assert_eq!(g.content, BigInt::from(2));
        assert_eq!(g.factors, vec![(p("X^2 + 1"), 1)]);
        let h = factor_over_z(&p("-3X^4 + 3"), 8).unwrap();
        assert_eq!(h.expand(), p("-3X^4 + 3"));
        assert_eq!(h.factors.len(), 3);
        assert!(matches!(factor_over_z(&p("X^9 + 1"), 8), Err(Error::DegreeCapExceeded { .. })));
    }

    #[test]
    fn swinnerton_dyer_style_cases() {
        // X^4 + 1 is irreducible over Z but splits modulo every prime.
        assert!(factor_over_z_uncapped(&p("X^4 + 1")).unwrap().is_irreducible());
        // Product of two such quartics forces genuine recombination.
        let f = p("X^4 + 1").mul(&p("X^4 - 10X^2 + 1"));
        let fact = factor_over_z_uncapped(&f).unwrap();
        assert_eq!(fact.factors, vec![(p("X^4 - 10X^2 + 1"), 1), (p("X^4 + 1"), 1)]);
        let g = p("6X^3 + 7X^2 - 9X + 2").mul(&p("X - 5")).mul(&p("X - 5"));
        let fg = factor_over_z_uncapped(&g).unwrap();
        assert_eq!(fg.expand(), g);
        assert!(fg.factors.contains(&(p("X - 5"), 2)));
    }

    #[test]
    fn monic_parts() {
        assert_eq!(monic_part(&p("X^3 - 3"), 8).unwrap(), p("X^3 - 3"));
        assert_eq!(monic_part(&p("2X + 1"), 8).unwrap(), p("1"));
        assert_eq!(monic_part(&p("2X + 1").mul(&p("X^2 + 1")), 8).unwrap(), p("X^2 + 1"));
        assert_eq!(monic_part(&p("-X^2 - 1"), 8).unwrap(), p("X^2 + 1"));
    }

    #[test]
    fn translate_witnesses() {
        let f = p("X^3 - 3X + 1");
        let b = BigInt::from(10);
        let w = translates_equivalent(&f, &p("X^3 + 3X^2 - 1"), &b).unwrap();
        assert_eq!(w, TranslateWitness { outer: 1, inner: 1, k: BigInt::one() });
        // X^3 + 3X^2 - 3 is the reflection -f(-X - 1).
        let w2 = translates_equivalent(&f, &p("X^3 + 3X^2 - 3"), &b).unwrap();
        assert_eq!(w2.apply(&f), p("X^3 + 3X^2 - 3"));
        assert_eq!((w2.outer, w2.inner, w2.k.clone()), (-1, -1, BigInt::from(-1)));
        assert_eq!(translates_equivalent(&f, &f, &b).unwrap().k, BigInt::zero());
        assert!(translates_equivalent(&p("X^2 + 1"), &p("X^2 + 2"), &BigInt::from(1000)).is_none());
    }

    #[test]
    fn cubic_parity() {
        assert_eq!(galois_parity_cubic(&p("X^3 - 3X + 1")).unwrap(), CubicGalois::A3);
        assert_eq!(galois_parity_cubic(&p("X^3 - 3")).unwrap(), CubicGalois::S3);
        assert_eq!(galois_parity_cubic(&p("X^3 + 6X^2 - X - 5")).unwrap(), CubicGalois::A3);
    }
}
