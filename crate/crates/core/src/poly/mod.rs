//! Univariate polynomials over Z, Q and F_p.

mod factor;
mod fp;
mod qpoly;
mod tower;

pub use factor::{
    factor_over_z, factor_over_z_uncapped, galois_parity_cubic, monic_part, squarefree_decomposition, translates_equivalent,
    CubicGalois, Factorization, TranslateWitness, DEFAULT_DEGREE_CAP,
};
pub use fp::{factor_mod_p, FpPoly};
pub use qpoly::QPoly;
pub use tower::{splitting_tower, splitting_tower_capped, z_rank, SplittingTower, TowerLevel, DEFAULT_RANK_CAP};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::bareiss_det;

/// Polynomial with integer coefficients, stored in ascending degree.
/// The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::io::PolyFile", into = "crate::io::PolyFile")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// `X - a`.
    pub fn linear(a: &BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    /// `X^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_q(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// `f(s·X + k)`.
    pub fn compose_linear(&self, s: &BigInt, k: &BigInt) -> Self {
        let lin = Self::new(vec![k.clone(), s.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(&lin).add(&Self::constant(c.clone())))
    }

    /// `f(X + k)`.
    pub fn translate(&self, k: &BigInt) -> Self {
        self.compose_linear(&BigInt::one(), k)
    }

    /// `-f(-X)`, the reflection used to identify equivalent polynomials.
    pub fn reflect(&self) -> Self {
        self.compose_linear(&BigInt::from(-1), &BigInt::zero()).neg()
    }

    /// Division by a monic polynomial: `(q, r)` with `self = q·d + r`.
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dn = d.deg();
        let mut r = self.coeffs.clone();
        if r.len() <= dn {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for i in (dn..r.len()).rev() {
            let c = std::mem::take(&mut r[i]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate().take(dn) {
                r[i - dn + j] -= &c * dc;
            }
            q[i - dn] = c;
        }
        r.truncate(dn);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient over Z, if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero());
        let (q, r) = self.to_q().divrem(&d.to_q());
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::from_int(self)
    }

    /// Reduction modulo a prime that fits in 64 bits.
    pub fn mod_p(&self, p: u64) -> FpPoly {
        let bp = BigInt::from(p);
        FpPoly::new(p, self.coeffs.iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect())
    }

    /// Resultant via the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (m, n) = (self.deg(), other.deg());
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut rows = Vec::with_capacity(size);
        for i in 0..n {
            let mut r = vec![BigInt::zero(); size];
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                r[i + j] = c.clone();
            }
            rows.push(r);
        }
        for i in 0..m {
            let mut r = vec![BigInt::zero(); size];
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                r[i + j] = c.clone();
            }
            rows.push(r);
        }
        bareiss_det(rows)
    }

    /// `(-1)^{n(n-1)/2} · Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::PreconditionFailed("discriminant needs degree >= 1".into())),
        };
        if n == 1 {
            return Ok(BigInt::one());
        }
        let res = self.resultant(&self.derivative());
        let d = res / self.lc();
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.to_q().gcd(&self.derivative().to_q()).deg() == 0,
        }
    }

    /// Integer roots, found among divisors of the trailing nonzero coefficient.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let shift = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if shift > 0 {
            roots.push(BigInt::zero());
        }
        let reduced = Self::new(self.coeffs[shift..].to_vec());
        if reduced.deg() == 0 {
            return roots;
        }
        // Roots of the primitive polynomial in Z are also roots of each
        // linear factor over Z, so factoring gives them exactly.
        if let Ok(fact) = factor_over_z_uncapped(&reduced) {
            for (g, _) in &fact.factors {
                if g.deg() == 1 && g.coeffs[1].is_one() {
                    roots.push(-&g.coeffs[0]);
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses expressions such as `X^3 - 3X + 1`, `2*x^2+x-7` or `-X^2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("cannot parse polynomial `{s}`"));
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        let mut compact = String::new();
        let mut in_sup = false;
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            match SUP.iter().position(|&c| c == ch) {
                Some(d) => {
                    if !in_sup {
                        compact.push('^');
                    }
                    compact.push(char::from(b'0' + d as u8));
                    in_sup = true;
                }
                None => {
                    compact.push(if ch == '−' { '-' } else { ch });
                    in_sup = false;
                }
            }
        }
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            let lower = body.to_ascii_lowercase();
            let (coef, exp) = match lower.find('x') {
                None => (lower.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let c = lower[..pos].trim_end_matches('*');
                    let coef = if c.is_empty() { BigInt::one() } else { c.parse::<BigInt>().map_err(|_| bad())? };
                    let rest = &lower[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += coef * sign;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("X^3 - 3X + 1"), IntPolynomial::from_i64(&[1, -3, 0, 1]));
        assert_eq!(p("2*x^2+x-7"), IntPolynomial::from_i64(&[-7, 1, 2]));
        assert_eq!(p("-X^2"), IntPolynomial::from_i64(&[0, 0, -1]));
        assert_eq!(p("X^3 - 3X + 1").to_string(), "X^3 - 3X + 1");
        assert_eq!(p("-X^2 + 5").to_string(), "-X^2 + 5");
        assert!("X^".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(p("X^3 - 3").discriminant().unwrap(), BigInt::from(-243));
        assert_eq!(p("X^3 - 9X + 9").discriminant().unwrap(), BigInt::from(729));
        assert_eq!(p("X^2 + X + 1").discriminant().unwrap(), BigInt::from(-3));
        assert_eq!(p("X^3 - 3X + 1").discriminant().unwrap(), BigInt::from(81));
        assert_eq!(p("X^3 + 6X^2 - X - 5").discriminant().unwrap(), BigInt::from(65 * 65));
        assert_eq!(p("2X^2 + 3X + 1").discriminant().unwrap(), BigInt::from(1));
        assert_eq!(p("X^2").discriminant().unwrap(), BigInt::zero());
    }

    #[test]
    fn translate_and_reflect() {
        let f = p("X^3 - 3X + 1");
        assert_eq!(f.translate(&BigInt::from(1)), p("X^3 + 3X^2 - 1"));
        assert_eq!(f.translate(&BigInt::from(-1)), p("X^3 - 3X^2 + 3"));
        assert_eq!(f.translate(&BigInt::from(1)).reflect(), p("X^3 - 3X^2 + 1"));
    }

    #[test]
    fn division() {
        let f = p("X^3 - 1");
        let (q, r) = f.divrem_monic(&p("X - 1"));
        assert_eq!(q, p("X^2 + X + 1"));
        assert!(r.is_zero());
        assert_eq!(p("2X^2 + 2").exact_div(&p("X^2 + 1")), Some(p("2")));
        assert_eq!(p("X^2 + 1").exact_div(&p("2X + 1")), None);
        assert_eq!(p("X^3 - X").integer_roots(), vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]);
    }
}
