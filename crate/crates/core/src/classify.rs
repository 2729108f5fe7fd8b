//! Complexity verdicts for `Π_f` and `Π_A`, with a reason trail that names
//! a gadget family for every NP-completeness claim.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_square};
use crate::error::{Error, Result};
use crate::order::{Order, Reducedness, Ring};
use crate::poly::{factor_over_z, monic_part, translates_equivalent, IntPolynomial, DEFAULT_DEGREE_CAP};
use crate::reductions::{certify_equivalent, check_preconditions, cubic_z_rank, full_power_root, Equivalence, FamilyId, GadgetFamily};
use crate::rootfind::decompose;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Trivial,
    InP,
    #[serde(rename = "NPC")]
    Npc,
    Unknown,
    OutOfScope,
}

impl Status {
    /// Trivial problems are in P as well.
    pub fn in_p(self) -> bool {
        matches!(self, Status::Trivial | Status::InP)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub rule: String,
    /// Which result the rule rests on, in words.
    pub anchor: String,
    pub witness: BTreeMap<String, String>,
}

impl Reason {
    fn new(rule: &str, anchor: &str, witness: &[(&str, String)]) -> Self {
        Reason {
            rule: rule.to_string(),
            anchor: anchor.to_string(),
            witness: witness.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

/// A gadget family with its parameters, in printable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetRef {
    pub family: FamilyId,
    pub f: String,
    pub p: Option<String>,
}

impl GadgetRef {
    fn of(family: &GadgetFamily) -> Self {
        GadgetRef { family: family.id(), f: family.f().to_string(), p: family.p().map(|p| p.to_string()) }
    }

    pub fn to_family(&self) -> Result<GadgetFamily> {
        let p = match &self.p {
            Some(s) => Some(s.parse::<u64>().map_err(|_| Error::Malformed(format!("bad prime `{s}`")))?),
            None => None,
        };
        GadgetFamily::from_parts(self.family, Some(self.f.parse()?), p, None)
    }

    /// Re-runs the family's preconditions.
    pub fn revalidate(&self) -> Result<()> {
        check_preconditions(&self.to_family()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: Vec<Reason>,
    pub gadget: Option<GadgetRef>,
}

impl Verdict {
    fn new(status: Status, reasons: Vec<Reason>) -> Self {
        Verdict { status, reasons, gadget: None }
    }
}

fn npc(mut reasons: Vec<Reason>, family: GadgetFamily) -> Result<Verdict> {
    check_preconditions(&family)?;
    reasons.push(Reason::new(
        "npc.gadget",
        "reduction from a finite-module problem with non-coset S",
        &[("family", family.to_string())],
    ));
    Ok(Verdict { status: Status::Npc, reasons, gadget: Some(GadgetRef::of(&family)) })
}

fn prime_factors(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    factorize(n).map_err(|u| Error::NeedsFactorization(u.0))
}

fn fmt_factorization(fs: &[(BigInt, u32)]) -> String {
    if fs.is_empty() {
        return "1".into();
    }
    fs.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect::<Vec<_>>().join(" * ")
}

/// The verdict for `Π_f`.
pub fn classify_poly(f: &IntPolynomial) -> Result<Verdict> {
    let mut reasons = Vec::new();
    if f.is_zero() {
        return Ok(Verdict::new(
            Status::Trivial,
            vec![Reason::new("trivial.zero", "every element is a zero of 0", &[])],
        ));
    }
    let g = monic_part(f, DEFAULT_DEGREE_CAP)?;
    if g != *f {
        reasons.push(Reason::new(
            "monic-part",
            "a polynomial and its largest monic divisor have the same zeros in every order",
            &[("monic_part", g.to_string())],
        ));
    }
    if g.deg() == 0 {
        reasons.push(Reason::new("trivial.no-zeros", "a nonzero constant has no zeros", &[]));
        return Ok(Verdict::new(Status::Trivial, reasons));
    }
    if let Some(r) = g.integer_roots().first() {
        reasons.push(Reason::new("trivial.integer-zero", "an integer zero lies in every order", &[("zero", r.to_string())]));
        return Ok(Verdict::new(Status::Trivial, reasons));
    }
    let disc = g.discriminant()?;
    if disc.is_zero() {
        reasons.push(Reason::new(
            "out-of-scope.inseparable",
            "no results are known for inseparable polynomials",
            &[("discriminant", "0".into())],
        ));
        return Ok(Verdict::new(Status::OutOfScope, reasons));
    }
    match g.deg() {
        2 => classify_quadratic(&g, &disc, reasons),
        3 => {
            let route = cubic_route(&g)?;
            reasons.extend(route.reasons.clone());
            match route.family {
                Some(fam) => npc(reasons, fam),
                None => Ok(Verdict::new(Status::Unknown, reasons)),
            }
        }
        _ => classify_higher(&g, &disc, reasons),
    }
}

fn classify_quadratic(f: &IntPolynomial, disc: &BigInt, mut reasons: Vec<Reason>) -> Result<Verdict> {
    let fs = prime_factors(disc)?;
    reasons.push(Reason::new(
        "discriminant",
        "discriminant and its factorization",
        &[("discriminant", disc.to_string()), ("factorization", fmt_factorization(&fs))],
    ));
    if *disc == BigInt::from(-4) {
        reasons.push(Reason::new(
            "inp.x2-plus-1",
            "X^2 + 1 up to translation; zeros are roots of unity, decidable in polynomial time",
            &[],
        ));
        return Ok(Verdict::new(Status::InP, reasons));
    }
    if let Some((p, _)) = fs.iter().find(|(p, _)| p.is_odd()) {
        let p = p.to_u64().ok_or_else(|| Error::cap("prime for the gadget", p, u64::MAX))?;
        reasons.push(Reason::new(
            "npc.translate-of-power",
            "f is a translate of X^n modulo a prime not dividing n",
            &[("p", p.to_string())],
        ));
        return npc(reasons, GadgetFamily::GenXn { f: f.clone(), p });
    }
    // Δ = ±2^k: f(X − b/2) = X² − a with |a| a power of 2.
    let k: BigInt = f.coeff(1) / 2;
    let a: BigInt = &k * &k - f.coeff(0);
    reasons.push(Reason::new(
        "npc.x2-minus-even",
        "X^2 - a with a even and not a square",
        &[("a", a.to_string()), ("shift", k.to_string())],
    ));
    npc(reasons, GadgetFamily::QuadEven { f: f.clone() })
}

fn classify_higher(f: &IntPolynomial, disc: &BigInt, mut reasons: Vec<Reason>) -> Result<Verdict> {
    let n = f.deg();
    // X^n + 1 ~ X^{2^r} + 1.
    let xn1 = IntPolynomial::monomial(n).add(&IntPolynomial::one());
    let bound = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default() + 1;
    if let Some(w) = translates_equivalent(&xn1, f, &bound) {
        let r = n.trailing_zeros();
        reasons.push(Reason::new(
            "inp.xn-plus-1",
            "X^n + 1 is equivalent to X^(2^r) + 1, whose zeros are roots of unity",
            &[("n", n.to_string()), ("equivalent", format!("X^{} + 1", 1usize << r)), ("shift", w.k.to_string())],
        ));
        return Ok(Verdict::new(Status::InP, reasons));
    }
    let fact = factor_over_z(f, DEFAULT_DEGREE_CAP)?;
    if !fact.is_irreducible() {
        reasons.push(Reason::new("unknown.reducible", "reducible without an integer zero: no criterion applies", &[]));
        return Ok(Verdict::new(Status::Unknown, reasons));
    }
    let fs = prime_factors(disc)?;
    reasons.push(Reason::new(
        "discriminant",
        "discriminant and its factorization",
        &[("discriminant", disc.to_string()), ("factorization", fmt_factorization(&fs))],
    ));
    for (p, _) in &fs {
        let Some(p) = p.to_u64() else { continue };
        if (n as u64) % p == 0 {
            continue;
        }
        if let Some(c) = full_power_root(f, p) {
            reasons.push(Reason::new(
                "npc.translate-of-power",
                "f is a translate of X^n modulo a prime not dividing n",
                &[("p", p.to_string()), ("c", c.to_string())],
            ));
            return npc(reasons, GadgetFamily::GenXn { f: f.clone(), p });
        }
    }
    reasons.push(Reason::new(
        "unknown.no-criterion",
        "no implemented criterion applies; Galois transitivity is not certified",
        &[],
    ));
    Ok(Verdict::new(Status::Unknown, reasons))
}

/// Which NP-completeness criterion applies to a monic irreducible cubic.
#[derive(Clone, Debug, Serialize)]
pub struct CubicRoute {
    pub discriminant: String,
    pub factorization: String,
    pub triple_zero_mod_3: Option<String>,
    pub triple_zero_mod_9: Option<String>,
    pub triple_zero_mod_27: Option<String>,
    pub z_rank: usize,
    pub rule: String,
    /// Representative of the discriminant class, when that route is taken.
    pub representative: Option<String>,
    pub equivalence: Option<Equivalence>,
    #[serde(skip)]
    pub family: Option<GadgetFamily>,
    #[serde(skip)]
    pub reasons: Vec<Reason>,
}

/// Representatives of the three classes with discriminant `±3^k` not
/// covered by the mod-3/9/27 criteria, with their families.
pub const CUBIC_CLASSES: [(&str, i64, FamilyId); 3] = [
    ("X^3 - 3", -243, FamilyId::X3Minus3),
    ("X^3 - 3X + 1", 81, FamilyId::X3Minus3X2Plus3),
    ("X^3 - 9X + 9", 729, FamilyId::X3Minus9XPlus9),
];

/// Routes a monic irreducible cubic to a gadget family.
pub fn cubic_route(f: &IntPolynomial) -> Result<CubicRoute> {
    if f.deg() != 3 || !f.is_monic() || !f.integer_roots().is_empty() {
        return Err(Error::PreconditionFailed(format!("{f} is not a monic irreducible cubic")));
    }
    let disc = f.discriminant()?;
    let fs = prime_factors(&disc)?;
    let t3 = full_power_root(f, 3);
    let t9 = t3.and_then(|_| full_power_root(f, 9));
    let t27 = t9.and_then(|_| full_power_root(f, 27));
    let z_rank = cubic_z_rank(f)?;
    let mut route = CubicRoute {
        discriminant: disc.to_string(),
        factorization: fmt_factorization(&fs),
        triple_zero_mod_3: t3.map(|c| c.to_string()),
        triple_zero_mod_9: t9.map(|c| c.to_string()),
        triple_zero_mod_27: t27.map(|c| c.to_string()),
        z_rank,
        rule: String::new(),
        representative: None,
        equivalence: None,
        family: None,
        reasons: vec![Reason::new(
            "discriminant",
            "discriminant and its factorization",
            &[("discriminant", disc.to_string()), ("factorization", fmt_factorization(&fs))],
        )],
    };
    let fc = f.clone();
    let mult = |p: u64| f.mod_p(p).roots_with_multiplicity();
    // A prime other than 2 and 3.
    if let Some((p, _)) = fs.iter().find(|(p, _)| *p > BigInt::from(3)) {
        let pu = p.to_u64().ok_or_else(|| Error::cap("prime for the gadget", p, u64::MAX))?;
        if let Some(c) = full_power_root(f, pu) {
            set(
            &mut route,
                "cubic.prime-beyond-3.triple",
                "triple zero modulo a prime p != 3",
                &[("p", p.to_string()), ("c", c.to_string())],
                GadgetFamily::GenXn { f: fc, p: pu },
            );
        } else {
            set(
            &mut route,
                "cubic.prime-beyond-3.double",
                "zero of multiplicity 2 modulo an odd prime, Z-rank 6",
                &[("p", p.to_string())],
                GadgetFamily::GenComp { f: fc, p: pu },
            );
        }
        return Ok(route);
    }
    if disc.is_even() {
        if let Some(c) = full_power_root(f, 2) {
            set(
            &mut route,
                "cubic.triple-mod-2",
                "triple zero modulo a prime p != 3",
                &[("p", "2".into()), ("c", c.to_string())],
                GadgetFamily::GenXn { f: fc, p: 2 },
            );
        } else if mult(3).iter().any(|&(_, m)| m == 2) {
            set(
            &mut route,
                "cubic.double-mod-3",
                "zero of multiplicity 2 modulo an odd prime, Z-rank 6",
                &[("p", "3".into())],
                GadgetFamily::GenComp { f: fc, p: 3 },
            );
        } else if t3.is_some() {
            set(
            &mut route,
                "cubic.disc23",
                "double zero modulo 2 and triple zero modulo 3",
                &[("triple_zero_mod_3", t3.unwrap().to_string())],
                GadgetFamily::Disc23 { f: fc },
            );
        } else {
            route.rule = "unexpected.power-of-2".into();
            route.reasons.push(Reason::new(
                "unexpected.power-of-2",
                "no irreducible cubic has discriminant ±2^k",
                &[],
            ));
        }
        return Ok(route);
    }
    // Δ = ±3^k.
    if t3.is_none() {
        set(
            &mut route,
            "cubic.no-triple-mod-3",
            "no triple zero modulo 3, so a double zero modulo 3",
            &[("p", "3".into())],
            GadgetFamily::GenComp { f: fc, p: 3 },
        );
        return Ok(route);
    }
    if t27.is_some() || (z_rank == 6 && t9.is_some()) {
        let rule = if t27.is_some() { "cubic.triple-mod-27" } else { "cubic.rank6-triple-mod-9" };
        set(
            &mut route,
            rule,
            "Z-rank 6 with a triple zero modulo 9 (a triple zero modulo 27 forces Z-rank 6)",
            &[("z_rank", z_rank.to_string()), ("triple_zero_mod_9", t9.unwrap().to_string())],
            GadgetFamily::Zr6Tr9 { f: fc },
        );
        return Ok(route);
    }
    for (rep, d, id) in CUBIC_CLASSES {
        if disc != BigInt::from(d) {
            continue;
        }
        let g: IntPolynomial = rep.parse()?;
        let family_poly = GadgetFamily::canonical_polynomial(id).unwrap();
        if let Some(eq) = certify_equivalent(f, &family_poly)? {
            route.representative = Some(rep.to_string());
            route.equivalence = Some(eq.clone());
            set(
            &mut route,
                "cubic.discriminant-class",
                "equivalent to a representative of the discriminant ±3^k classes",
                &[("representative", g.to_string()), ("family_polynomial", family_poly.to_string())],
                GadgetFamily::from_parts(id, Some(fc), None, None)?,
            );
            return Ok(route);
        }
    }
    route.rule = "unknown.no-match-within-bounds".into();
    route.reasons.push(Reason::new(
        "unknown.no-match-within-bounds",
        "no representative matched by discriminant and a zero in Z[X]/(f)",
        &[],
    ));
    Ok(route)
}

fn set(route: &mut CubicRoute, rule: &str, anchor: &str, witness: &[(&str, String)], fam: GadgetFamily) {
    route.rule = rule.to_string();
    route.reasons.push(Reason::new(rule, anchor, witness));
    route.family = Some(fam);
}

/// The verdict for `Π_A`.
pub fn classify_order(a: &Order) -> Result<Verdict> {
    match a.reducedness() {
        Reducedness::Reduced => {
            let s = decompose(a)?.num_fields();
            Ok(Verdict::new(
                Status::InP,
                vec![Reason::new(
                    "inp.reduced-order",
                    "polynomial-time algorithm for reduced orders",
                    &[("spec_size", s.to_string()), ("rank", a.rank().to_string())],
                )],
            ))
        }
        Reducedness::NotReduced { witness } => Ok(Verdict::new(
            Status::OutOfScope,
            vec![Reason::new(
                "out-of-scope.not-reduced",
                "no results are known for non-reduced orders",
                &[("nilpotent", format!("[{}]", witness.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))],
            )],
        )),
    }
}

/// The quadratic rule: `Π_f ∈ P` iff `Δ = −4` or `Δ` is a square.
pub fn quadratic_rule(f: &IntPolynomial) -> Result<bool> {
    let d = f.discriminant()?;
    Ok(d == BigInt::from(-4) || is_square(&d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn status(s: &str) -> Status {
        classify_poly(&p(s)).unwrap().status
    }

    #[test]
    fn named_examples() {
        assert_eq!(status("x^2 + 1"), Status::InP);
        assert_eq!(status("x^2 + x + 1"), Status::Npc);
        assert_eq!(status("x^3 - 1"), Status::Trivial);
        assert_eq!(status("x^6 + 1"), Status::InP);
        assert_eq!(status("x^2 - 2"), Status::Npc);
        assert_eq!(status("2x^2 + 2"), Status::InP);
        assert_eq!(status("2x - 1"), Status::Trivial);
        let v = classify_poly(&p("x^3 - 3x^2 + 3")).unwrap();
        assert_eq!(v.status, Status::Npc);
        assert_eq!(v.gadget.as_ref().unwrap().family, FamilyId::X3Minus3X2Plus3);
        v.gadget.unwrap().revalidate().unwrap();
    }

    #[test]
    fn cubic_routes() {
        let r = cubic_route(&p("x^3 - 3x + 1")).unwrap();
        assert_eq!(r.discriminant, "81");
        assert_eq!(r.representative.as_deref(), Some("X^3 - 3X + 1"));
        let r = cubic_route(&p("x^3 - 21x + 37")).unwrap();
        assert_eq!(r.representative.as_deref(), Some("X^3 - 3X + 1"));
        assert!(r.equivalence.is_some());
        let r = cubic_route(&p("x^3 + 6x^2 - x - 5")).unwrap();
        assert_eq!(r.factorization, "5^2 * 13^2");
        assert!(r.rule.starts_with("cubic.prime-beyond-3"));
        let r = cubic_route(&p("x^3 + 9")).unwrap();
        assert_eq!(r.family.unwrap().id(), FamilyId::Zr6Tr9);
        for (rep, d, id) in CUBIC_CLASSES {
            let r = cubic_route(&p(rep)).unwrap();
            assert_eq!(r.discriminant, d.to_string());
            assert_eq!(r.family.unwrap().id(), id);
        }
    }

    #[test]
    fn orders() {
        let zi = Order::monogenic(&p("x^2 + 1")).unwrap();
        let v = classify_order(&zi).unwrap();
        assert_eq!(v.status, Status::InP);
        assert_eq!(v.reasons[0].witness["spec_size"], "1");
        let dual = Order::monogenic(&p("x^2")).unwrap();
        let v = classify_order(&dual).unwrap();
        assert_eq!(v.status, Status::OutOfScope);
        assert_eq!(v.reasons[0].witness["nilpotent"], "[0, 1]");
    }
}
