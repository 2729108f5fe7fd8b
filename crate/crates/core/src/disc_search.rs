//! Integral points on `y² = x³ + a` for `a = ±2⁴·3^ℓ`, the depressed cubics
//! they correspond to, and the tables of cubics with discriminant `±3^k`
//! and a triple zero modulo 3.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::is_square;
use crate::classify::CUBIC_CLASSES;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::reductions::{certify_equivalent, cubic_z_rank, full_power_root};

pub const DEFAULT_XBOUND: u64 = 100_000;
/// Base curves use `0 ≤ ℓ' < 6`; `k = 3` scaling adds 6 per step.
pub const BASE_LEVELS: u32 = 6;
pub const DEFAULT_DESCENT_STEPS: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CurvePoint {
    #[serde(with = "crate::io::dec")]
    pub a: BigInt,
    #[serde(with = "crate::io::dec")]
    pub x: BigInt,
    #[serde(with = "crate::io::dec")]
    pub y: BigInt,
}

impl CurvePoint {
    pub fn on_curve(&self) -> bool {
        &self.y * &self.y == &self.x * &self.x * &self.x + &self.a
    }
}

/// All integral points with `|x| ≤ xbound`, both signs of `y`, sorted by `(x, y)`.
pub fn search_integral_points(a: &BigInt, xbound: u64) -> Result<Vec<CurvePoint>> {
    let a_i = a.to_i128().ok_or_else(|| Error::cap("curve parameter", a, i128::MAX))?;
    let xb = xbound as i128;
    // x³ + a ≥ 0 forces x ≥ −∛a.
    let lo = if a_i >= 0 { -(a_i.cbrt()) - 1 } else { (-a_i).cbrt() - 1 };
    let lo = lo.max(-xb);
    if xb > 2_000_000_000 {
        return Err(Error::cap("x bound", xbound, 2_000_000_000u64));
    }
    let mut out = Vec::new();
    for x in lo..=xb {
        let r = x * x * x + a_i;
        if r < 0 {
            continue;
        }
        let s = r.sqrt();
        if s * s == r {
            let (xb, ab) = (BigInt::from(x), a.clone());
            if s == 0 {
                out.push(CurvePoint { a: ab, x: xb, y: BigInt::zero() });
            } else {
                out.push(CurvePoint { a: ab.clone(), x: xb.clone(), y: BigInt::from(-s) });
                out.push(CurvePoint { a: ab, x: xb, y: BigInt::from(s) });
            }
        }
    }
    debug_assert!(out.iter().all(CurvePoint::on_curve));
    Ok(out)
}

/// `(x, y) ↦ (k²x, k³y)` from `C_a` to `C_{ak⁶}`.
pub fn scale_point(p: &CurvePoint, k: &BigInt) -> Result<CurvePoint> {
    if k.is_zero() {
        return Err(Error::PreconditionFailed("scaling factor must be nonzero".into()));
    }
    let k2 = k * k;
    let k3 = &k2 * k;
    Ok(CurvePoint { a: &p.a * &k3 * &k3, x: &p.x * &k2, y: &p.y * &k3 })
}

/// Inverse of [`scale_point`], when `k² | x`, `k³ | y` and `k⁶ | a`.
pub fn unscale_point(p: &CurvePoint, k: &BigInt) -> Result<CurvePoint> {
    if k.is_zero() {
        return Err(Error::PreconditionFailed("scaling factor must be nonzero".into()));
    }
    let k2 = k * k;
    let k3 = &k2 * k;
    let k6 = &k3 * &k3;
    if !p.x.is_multiple_of(&k2) || !p.y.is_multiple_of(&k3) || !p.a.is_multiple_of(&k6) {
        return Err(Error::NotDivisible(format!("({}, {}) on C_{} by k = {k}", p.x, p.y, p.a)));
    }
    Ok(CurvePoint { a: &p.a / &k6, x: &p.x / &k2, y: &p.y / &k3 })
}

/// The family `X³ + p·3^{2t}X + q·3^{3t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialFamilyRow {
    #[serde(serialize_with = "ser_q")]
    pub p: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub q: BigRational,
    /// Least `t ≥ 0` with integral coefficients (then every larger `t` works too).
    pub integrality_threshold: Option<u32>,
    pub galois_order: u32,
    /// `±2⁴·3^{ℓ'}` of the base curve, and the rational point on it.
    #[serde(with = "crate::io::dec")]
    pub curve: BigInt,
    pub level: u32,
    #[serde(serialize_with = "ser_q")]
    pub x: BigRational,
    #[serde(serialize_with = "ser_q")]
    pub y: BigRational,
    /// `Δ(X³ + pX + q)` at `t = 0`.
    #[serde(serialize_with = "ser_q")]
    pub discriminant: BigRational,
}

fn ser_q<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl PolynomialFamilyRow {
    /// The member at `t`, if integral.
    pub fn at(&self, t: u32) -> Option<IntPolynomial> {
        let (p, q) = self.coefficients_at(t);
        if !p.is_integer() || !q.is_integer() {
            return None;
        }
        Some(IntPolynomial::new(vec![q.to_integer(), p.to_integer(), BigInt::zero(), BigInt::one()]))
    }

    fn coefficients_at(&self, t: u32) -> (BigRational, BigRational) {
        let nine = BigRational::from_integer(BigInt::from(9).pow(t));
        let twenty7 = BigRational::from_integer(BigInt::from(27).pow(t));
        (&self.p * nine, &self.q * twenty7)
    }

    /// `X³ + pX + q` as text, with the `t`-scaling left symbolic.
    pub fn display(&self) -> String {
        let mut s = "X^3".to_string();
        let term = |c: &BigRational, unit: &str| {
            let sign = if c.is_negative() { "-" } else { "+" };
            let c = c.abs();
            if c.is_one() { format!(" {sign} {unit}") } else { format!(" {sign} {c}·{unit}") }
        };
        if !self.p.is_zero() {
            s += &term(&self.p, "3^(2t) X");
        }
        if !self.q.is_zero() {
            s += &term(&self.q, "3^(3t)");
        }
        s
    }
}

fn rat(n: &BigInt, d: &BigInt) -> BigRational {
    BigRational::new(n.clone(), d.clone())
}

/// `p = −x/12`, `q = y/108` for a rational point on `C_{±2⁴·3^{ℓ'}}`.
pub fn point_to_polynomial(a: &BigInt, x: &BigRational, y: &BigRational) -> Result<PolynomialFamilyRow> {
    let sixteen = BigInt::from(16);
    if a.is_zero() || !a.is_multiple_of(&sixteen) {
        return Err(Error::ShapeMismatch(format!("{a} is not ±2^4·3^l")));
    }
    let mut rest = (a / &sixteen).abs();
    let mut level = 0u32;
    while rest.is_multiple_of(&BigInt::from(3)) {
        rest /= 3;
        level += 1;
    }
    if !rest.is_one() {
        return Err(Error::ShapeMismatch(format!("{a} is not ±2^4·3^l")));
    }
    if y * y != x * x * x + BigRational::from_integer(a.clone()) {
        return Err(Error::ShapeMismatch("point is not on the curve".into()));
    }
    let p = -x / BigRational::from_integer(BigInt::from(12));
    let q = y / BigRational::from_integer(BigInt::from(108));
    let four = BigRational::from_integer(BigInt::from(4));
    let t27 = BigRational::from_integer(BigInt::from(27));
    let disc = -(four * &p * &p * &p) - t27 * &q * &q;
    // Δ = −a/432 = ∓3^{ℓ'−3}.
    let expected = -BigRational::from_integer(a.clone()) / BigRational::from_integer(BigInt::from(432));
    if disc != expected {
        return Err(Error::ShapeMismatch(format!("discriminant {disc} differs from {expected}")));
    }
    let integrality_threshold = (0..=3u32).find(|&t| {
        let nine = BigRational::from_integer(BigInt::from(9).pow(t));
        let t27 = BigRational::from_integer(BigInt::from(27).pow(t));
        (&p * nine).is_integer() && (&q * t27).is_integer()
    });
    let galois_order = galois_order(&p, &q)?;
    Ok(PolynomialFamilyRow {
        p,
        q,
        integrality_threshold,
        galois_order,
        curve: a.clone(),
        level,
        x: x.clone(),
        y: y.clone(),
        discriminant: disc,
    })
}

/// Order of the Galois group of `X³ + pX + q` over `Q`.
fn galois_order(p: &BigRational, q: &BigRational) -> Result<u32> {
    let d = p.denom().lcm(q.denom());
    let g = IntPolynomial::new(vec![
        (q * BigRational::from_integer(&d * &d * &d)).to_integer(),
        (p * BigRational::from_integer(&d * &d)).to_integer(),
        BigInt::zero(),
        BigInt::one(),
    ]);
    Ok(match g.integer_roots().len() {
        0 if is_square(&g.discriminant()?) => 3,
        0 => 6,
        1 => 2,
        _ => 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table2Entry {
    pub polynomial: String,
    #[serde(with = "crate::io::dec")]
    pub discriminant: BigInt,
    /// Other survivors shown equivalent to this one.
    pub merged: Vec<String>,
    /// Named class this entry is certified equivalent to.
    pub representative: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub polynomial: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tables {
    pub xbound: String,
    pub levels: String,
    pub points: Vec<CurvePoint>,
    pub table1: Vec<PolynomialFamilyRow>,
    pub eliminated: Vec<Elimination>,
    pub table2: Vec<Table2Entry>,
    /// The point search is bounded; completeness is not claimed.
    pub caveat: String,
}

/// Canonical point under `f(X) ↦ −f(−X)`, i.e. `y ↦ −y`: keep `y ≥ 0`.
fn canonical(x: &BigRational, y: &BigRational) -> (BigRational, BigRational) {
    (x.clone(), y.abs())
}

/// Searches `C_{±2⁴·3^ℓ}` for `ℓ < lmax + 6·descent`, descends each point
/// to a base curve with `ℓ < lmax` and builds both tables.
pub fn regenerate_tables(xbound: u64, lmax: u32, descent: u32) -> Result<Tables> {
    let three = BigInt::from(3);
    let mut points = Vec::new();
    // (sign, level, x, y) → row; BTreeMap keeps the output order fixed.
    let mut rows: BTreeMap<(i8, u32, BigRational, BigRational), PolynomialFamilyRow> = BTreeMap::new();
    for sign in [-1i8, 1] {
        for level in 0..lmax + BASE_LEVELS * descent {
            let a = BigInt::from(sign) * BigInt::from(16) * three.pow(level);
            let found = search_integral_points(&a, xbound)?;
            let j = level / BASE_LEVELS;
            let k = three.pow(j);
            let (k2, k3) = (&k * &k, &k * &k * &k);
            let base_a = &a / (&k3 * &k3);
            let base_level = level - BASE_LEVELS * j;
            if base_level >= lmax {
                continue;
            }
            for pt in &found {
                let (x, y) = canonical(&rat(&pt.x, &k2), &rat(&pt.y, &k3));
                let key = (sign, base_level, x.clone(), y.clone());
                if !rows.contains_key(&key) {
                    rows.insert(key, point_to_polynomial(&base_a, &x, &y)?);
                }
            }
            points.extend(found);
        }
    }
    let table1: Vec<PolynomialFamilyRow> = rows.into_values().collect();
    let (eliminated, table2) = table2_from(&table1)?;
    Ok(Tables {
        xbound: xbound.to_string(),
        levels: format!("0 <= l' < {}, plus {} descent step(s) by k = 3", lmax, descent),
        points,
        table1,
        eliminated,
        table2,
        caveat: "integral points were searched with |x| bounded; rows beyond the bound are not excluded".into(),
    })
}

fn table2_from(table1: &[PolynomialFamilyRow]) -> Result<(Vec<Elimination>, Vec<Table2Entry>)> {
    let mut eliminated = Vec::new();
    let mut survivors: Vec<IntPolynomial> = Vec::new();
    for row in table1 {
        let Some(t0) = row.integrality_threshold else { continue };
        if row.galois_order <= 2 {
            eliminated.push(Elimination { polynomial: row.display(), reason: "reducible".into() });
            continue;
        }
        // t ≥ 2 always gives a triple zero modulo 27; check each t up to 2.
        for t in t0..=2 {
            let f = row.at(t).expect("integral from the threshold on");
            let reason = if full_power_root(&f, 3).is_none() {
                Some("no triple zero modulo 3")
            } else if full_power_root(&f, 27).is_some() {
                Some("triple zero modulo 27")
            } else if full_power_root(&f, 9).is_some() && cubic_z_rank(&f)? == 6 {
                Some("triple zero modulo 9 and Z-rank 6")
            } else {
                None
            };
            match reason {
                Some(r) => eliminated.push(Elimination { polynomial: f.to_string(), reason: r.into() }),
                None => survivors.push(f),
            }
        }
    }
    let mut table2: Vec<(IntPolynomial, Table2Entry)> = Vec::new();
    for f in survivors {
        let mut merged = false;
        for (g, entry) in table2.iter_mut() {
            if certify_equivalent(&f, g)?.is_some() {
                entry.merged.push(f.to_string());
                merged = true;
                break;
            }
        }
        if !merged {
            let d = f.discriminant()?;
            let mut representative = None;
            for (name, _, _) in CUBIC_CLASSES {
                let g: IntPolynomial = name.parse()?;
                if certify_equivalent(&f, &g)?.is_some() {
                    representative = Some(g.to_string());
                    break;
                }
            }
            let entry = Table2Entry { polynomial: f.to_string(), discriminant: d, merged: vec![], representative };
            table2.push((f.clone(), entry));
        }
    }
    Ok((eliminated, table2.into_iter().map(|(_, e)| e).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, x: i64, y: i64) -> CurvePoint {
        CurvePoint { a: a.into(), x: x.into(), y: y.into() }
    }

    #[test]
    fn points_and_scaling() {
        let ps = search_integral_points(&BigInt::from(-48), 1000).unwrap();
        assert!(ps.contains(&pt(-48, 4, 4)) && ps.contains(&pt(-48, 4, -4)));
        let ps = search_integral_points(&BigInt::from(-1296), 100_000).unwrap();
        assert!(ps.contains(&pt(-1296, 193, 2681)));
        let ps = search_integral_points(&BigInt::from(-432), 1000).unwrap();
        assert!(ps.contains(&pt(-432, 12, 36)));
        let s = scale_point(&pt(-432, 12, 36), &BigInt::from(3)).unwrap();
        assert_eq!(s, pt(-314_928, 108, 972));
        assert!(s.on_curve());
        assert_eq!(scale_point(&s, &BigInt::one()).unwrap(), s);
        assert_eq!(unscale_point(&s, &BigInt::from(3)).unwrap(), pt(-432, 12, 36));
        assert!(matches!(unscale_point(&pt(-432, 12, 36), &BigInt::from(3)), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn rows_from_points() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let r = point_to_polynomial(&BigInt::from(-48), &q(4), &q(4)).unwrap();
        assert_eq!(r.p, BigRational::new((-1).into(), 3.into()));
        assert_eq!(r.q, BigRational::new(1.into(), 27.into()));
        assert_eq!(r.integrality_threshold, Some(1));
        assert_eq!(r.at(1).unwrap().to_string(), "X^3 - 3X + 1");
        let r = point_to_polynomial(&BigInt::from(-432), &q(12), &q(36)).unwrap();
        assert_eq!(r.at(1).unwrap().to_string(), "X^3 - 9X + 9");
        let r = point_to_polynomial(&BigInt::from(-1296), &q(193), &q(2681)).unwrap();
        assert_eq!(r.integrality_threshold, None);
        assert_eq!(r.galois_order, 2);
        assert!(point_to_polynomial(&BigInt::from(-40), &q(4), &q(4)).is_err());
    }

    #[test]
    fn small_bound_gives_a_subset() {
        let full = regenerate_tables(DEFAULT_XBOUND, BASE_LEVELS, DEFAULT_DESCENT_STEPS).unwrap();
        let small = regenerate_tables(10, BASE_LEVELS, DEFAULT_DESCENT_STEPS).unwrap();
        assert!(small.table1.len() < full.table1.len());
        assert!(small.table1.iter().all(|r| full.table1.contains(r)));
    }
}
