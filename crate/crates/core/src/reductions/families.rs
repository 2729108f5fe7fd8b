//! Constructors for each reduction family.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::embed::ModuleEmbedding;
use super::{Factor, Gadget, GadgetFamily, ParityCheck, Recipe};
use crate::arith::{is_prime_u64, is_square};
use crate::error::{Error, Result};
use crate::gadget::{classify, Elem, Flavor, ModuleStatus, ModuleVerdict, SubsetS};
use crate::linalg::{unit_row, IntMatrix, Lattice, Row};
use crate::order::{quotient_ring, subring_generated, validate_hom, FiniteRing, Order, Ring, RingHom};
use crate::poly::{splitting_tower, splitting_tower_capped, z_rank, SplittingTower, DEFAULT_RANK_CAP};
use crate::poly::{factor_over_z, translates_equivalent, IntPolynomial, TranslateWitness};
use crate::rootfind::{roots_in_number_field, zeros_in_order};

/// A gadget from explicit data: `ψ: A → B`, a scalar ring
/// `R ⊂ B` given by generators, `G ⊂ B` by a basis, `S ⊂ G` and `a ∈ R`.
#[derive(Clone, Debug)]
pub struct GenericData {
    pub f: IntPolynomial,
    pub a: Order,
    pub b: FiniteRing,
    pub psi: RingHom,
    pub r_gens: Vec<Row>,
    pub g_basis: Vec<Row>,
    /// Elements of `S`, as elements of `B`.
    pub s: Vec<Row>,
    pub shift: Row,
}

/// `Z[X]/(f) ≅ Z[X]/(g)`: equal discriminants and a zero of `g` in `Z[X]/(f)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Equivalence {
    pub canonical: String,
    /// `g = ±f(±X + k)` when such a shift exists.
    pub translate: Option<(i8, i8, String)>,
    /// Coordinates of a zero of `g` in the basis `1, α, α², …` of `Z[α]`, `f(α) = 0`.
    pub zero_of_canonical: Vec<String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::PreconditionFailed(msg.into())
}

/// Certificate that `f` and `g` define isomorphic rings `Z[X]/(·)`, hence
/// the same zero-set problem.
pub fn certify_equivalent(f: &IntPolynomial, g: &IntPolynomial) -> Result<Option<Equivalence>> {
    if f.deg() != g.deg() || !f.is_monic() || !g.is_monic() || f.discriminant()? != g.discriminant()? {
        return Ok(None);
    }
    let bound = f.coeffs().iter().chain(g.coeffs()).map(|c| c.abs()).max().unwrap_or_default() + 1;
    let translate = translates_equivalent(f, g, &bound).map(|w: TranslateWitness| (w.outer, w.inner, w.k.to_string()));
    // A zero of g in Z[α] generates a sub-order of the same discriminant, so
    // it generates all of Z[α].
    let roots = roots_in_number_field(g, f)?;
    let Some(root) = roots.iter().find(|r| r.iter().all(|c: &BigRational| c.is_integer())) else {
        return Ok(None);
    };
    Ok(Some(Equivalence {
        canonical: g.to_string(),
        translate,
        zero_of_canonical: root.iter().map(|c| c.to_integer().to_string()).collect(),
    }))
}

fn monic_irreducible(f: &IntPolynomial, degrees: &[usize]) -> Result<()> {
    if !f.is_monic() {
        return Err(bad(format!("{f} is not monic")));
    }
    if !degrees.is_empty() && !degrees.contains(&f.deg()) {
        return Err(bad(format!("{f} has degree {}, expected one of {degrees:?}", f.deg())));
    }
    if f.deg() < 2 {
        return Err(bad(format!("{f} has degree below 2")));
    }
    let irreducible = if f.deg() <= 3 {
        f.integer_roots().is_empty()
    } else {
        factor_over_z(f, 24)?.is_irreducible()
    };
    if !irreducible {
        return Err(bad(format!("{f} is reducible")));
    }
    Ok(())
}

fn prime(p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(bad(format!("{p} is not prime")));
    }
    Ok(())
}

/// `c` with `f ≡ (X − c)^n mod m`, `0 ≤ c < m`, the least one if several.
/// Comparing `X^{n−1}` coefficients gives `n·c ≡ −a_{n−1}`, which leaves at
/// most `gcd(n, m)` candidates.
pub fn full_power_root(f: &IntPolynomial, m: u64) -> Option<u64> {
    let n = f.deg() as u32;
    let mb = BigInt::from(m);
    let matches = |c: u64| {
        let target = IntPolynomial::new(vec![-BigInt::from(c), BigInt::one()]).pow(n);
        f.sub(&target).coeffs().iter().all(|x| x.mod_floor(&mb).is_zero())
    };
    if n == 0 {
        return matches(0).then_some(0);
    }
    let mi = m as i128;
    let r = (-f.coeff(n as usize - 1)).mod_floor(&mb);
    let r = i128::try_from(r).expect("below m");
    let g = (n as i128).gcd(&mi);
    if r % g != 0 {
        return None;
    }
    let step = mi / g;
    let inv = (n as i128 / g).extended_gcd(&step).x.rem_euclid(step);
    let c0 = (r / g % step * inv).rem_euclid(step);
    (0..g).map(|k| (c0 + k * step) as u64).find(|&c| matches(c))
}

/// Zeros of `f mod p` in `F_p` with their multiplicities.
fn roots_mod(f: &IntPolynomial, p: u64) -> Vec<(u64, u32)> {
    f.mod_p(p).roots_with_multiplicity()
}

/// Cheap checks that do not build any ring. The classifier re-runs these.
pub fn check_preconditions(family: &GadgetFamily) -> Result<()> {
    let f = family.f();
    match family {
        GadgetFamily::GenericNpf(_) => Ok(()),
        GadgetFamily::GenXn { p, .. } => {
            prime(*p)?;
            monic_irreducible(f, &[])?;
            full_power_root(f, *p).map(|_| ()).ok_or_else(|| bad(format!("{f} is not a translate of X^{} mod {p}", f.deg())))
        }
        GadgetFamily::GenComp { p, .. } => {
            prime(*p)?;
            if *p == 2 {
                return Err(bad("p must be odd"));
            }
            monic_irreducible(f, &[2, 3])?;
            if !f.discriminant()?.is_multiple_of(&BigInt::from(*p)) {
                return Err(bad(format!("{p} does not divide the discriminant")));
            }
            gen_comp_root(f, *p)?;
            if f.deg() == 3 && cubic_z_rank(f)? != 6 {
                return Err(bad(format!("{f} has Z-rank 3")));
            }
            Ok(())
        }
        GadgetFamily::QuadEven { .. } => quad_even_a(f).map(|_| ()),
        GadgetFamily::Disc23 { .. } => {
            monic_irreducible(f, &[3])?;
            disc23_roots(f).map(|_| ())
        }
        GadgetFamily::Zr6Tr9 { .. } => {
            monic_irreducible(f, &[3])?;
            full_power_root(f, 9).ok_or_else(|| bad(format!("{f} has no triple zero modulo 9")))?;
            if cubic_z_rank(f)? != 6 {
                return Err(bad(format!("{f} has Z-rank 3")));
            }
            Ok(())
        }
        GadgetFamily::X3Minus3 { .. } | GadgetFamily::X3Minus3X2Plus3 { .. } | GadgetFamily::X3Minus9XPlus9 { .. } => {
            let g = GadgetFamily::canonical_polynomial(family.id()).unwrap();
            monic_irreducible(f, &[3])?;
            certify_equivalent(f, &g)?.map(|_| ()).ok_or_else(|| bad(format!("{f} is not equivalent to {g}")))
        }
    }
}

/// Z-rank of a monic irreducible cubic; a non-square discriminant forces 6.
pub fn cubic_z_rank(f: &IntPolynomial) -> Result<usize> {
    if !is_square(&f.discriminant()?) {
        return Ok(6);
    }
    z_rank(f)
}

/// The smallest zero of multiplicity at least 2 (exactly 2 for cubics).
fn gen_comp_root(f: &IntPolynomial, p: u64) -> Result<u64> {
    roots_mod(f, p)
        .into_iter()
        .find(|&(_, m)| if f.deg() == 3 { m == 2 } else { m >= 2 })
        .map(|(a, _)| a)
        .ok_or_else(|| bad(format!("{f} has no suitable double zero modulo {p}")))
}

/// `a` with `f(X − b/2) = X² − a`.
fn quad_even_a(f: &IntPolynomial) -> Result<(BigInt, BigInt)> {
    if !f.is_monic() || f.deg() != 2 {
        return Err(bad(format!("{f} is not a monic quadratic")));
    }
    let b = f.coeff(1);
    if b.is_odd() {
        return Err(bad(format!("{f} has an odd linear coefficient")));
    }
    let k: BigInt = &b / 2;
    let a: BigInt = &k * &k - f.coeff(0);
    if a.is_odd() {
        return Err(bad(format!("a = {a} is odd")));
    }
    if is_square(&a) {
        return Err(bad(format!("a = {a} is a square")));
    }
    Ok((a, k))
}

/// Double zero modulo 2 and triple zero modulo 3.
fn disc23_roots(f: &IntPolynomial) -> Result<(u64, u64)> {
    let a2 = roots_mod(f, 2).into_iter().find(|&(_, m)| m == 2).map(|(a, _)| a);
    let a3 = full_power_root(f, 3);
    match (a2, a3) {
        (Some(a2), Some(a3)) => Ok((a2, a3)),
        _ => Err(bad(format!("{f} needs a double zero modulo 2 and a triple zero modulo 3"))),
    }
}

/// `ψ: A_k → B` from the images of the roots adjoined at nonlinear levels.
pub fn tower_hom<R: Ring>(tower: &SplittingTower, alpha_images: &[Row], b: &R) -> Result<RingHom> {
    let mut imgs = vec![b.one()];
    let mut next = alpha_images.iter();
    for lvl in &tower.levels[..tower.levels.len() - 1] {
        let d = lvl.f.len() - 1;
        if d <= 1 {
            continue;
        }
        let a = next.next().ok_or_else(|| Error::ShapeMismatch("too few root images".into()))?;
        let n = imgs.len();
        let mut out = Vec::with_capacity(n * d);
        let mut pw = b.one();
        for _ in 0..d {
            for x in &imgs {
                out.push(b.mul(x, &pw));
            }
            pw = b.mul(&pw, a);
        }
        imgs = out;
    }
    let top = &tower.top().order;
    let hom = RingHom::new(IntMatrix::from_rows(b.rank(), imgs));
    validate_hom(top, b, &hom)?;
    Ok(hom)
}

fn zeros(a: &Order, f: &IntPolynomial) -> Result<Vec<Row>> {
    let z = zeros_in_order(a, f)?;
    Ok(z.zeros)
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

/// `F_p[ε]` with `ε` returned alongside.
fn dual_numbers(p: u64) -> Result<(FiniteRing, Row)> {
    let (b, proj) = quotient_ring(&Order::monogenic(&IntPolynomial::monomial(2))?, &[], &[BigInt::from(p)])?;
    let eps = proj.apply(&b, &unit_row(2, 1));
    Ok((b, eps))
}

fn scalar(b: &FiniteRing, c: &BigInt) -> Row {
    b.scalar_mul(c, &b.one())
}

fn sorted_images(b: &FiniteRing, psi: &RingHom, zs: &[Row]) -> Vec<Row> {
    let mut v: Vec<Row> = zs.iter().map(|z| psi.apply(b, z)).collect();
    v.sort();
    v.dedup();
    v
}

/// How `ψ(Z_A(g))` is compared with the declared images.
#[derive(PartialEq)]
enum Audit {
    Exact,
    /// Only the images inside `a + G`.
    NearShift,
    /// Checked by the constructor.
    Done,
}

struct Parts {
    g: IntPolynomial,
    equivalence: Option<super::Equivalence>,
    a: Order,
    b: FiniteRing,
    psi: RingHom,
    embedding: ModuleEmbedding,
    s: Vec<Elem>,
    flavor: Flavor,
    shift: Row,
    declared: Vec<Row>,
    recipe: Recipe,
    notes: Vec<String>,
    audit: Audit,
    /// Hardness argued for this specific module when the general test is silent.
    known_hard: Option<&'static str>,
}

/// Validates the family's preconditions, builds its rings and audits the
/// images of the zeros.
pub fn make_gadget(family: &GadgetFamily) -> Result<Gadget> {
    check_preconditions(family)?;
    let f = family.f().clone();
    let parts = match family {
        GadgetFamily::GenericNpf(data) => generic(data)?,
        GadgetFamily::GenXn { p, .. } => gen_xn(&f, *p)?,
        GadgetFamily::GenComp { p, .. } => gen_comp(&f, *p)?,
        GadgetFamily::QuadEven { .. } => quad_even(&f)?,
        GadgetFamily::Disc23 { .. } => disc23(&f)?,
        GadgetFamily::Zr6Tr9 { .. } => zr6tr9(&f)?,
        GadgetFamily::X3Minus3 { .. } => x3_minus_3(&f)?,
        GadgetFamily::X3Minus3X2Plus3 { .. } => x3_3x2_3(&f)?,
        GadgetFamily::X3Minus9XPlus9 { .. } => x3_9x_9(&f)?,
    };
    let Parts { g, equivalence, a, b, psi, embedding, s, flavor, shift, declared, recipe, notes, audit, known_hard } = parts;
    let g_zeros = zeros(&a, &g)?;
    let zero_images = sorted_images(&b, &psi, &g_zeros);
    let mut declared = declared;
    declared.sort();
    declared.dedup();
    let audited = match audit {
        Audit::Exact => zero_images == declared,
        Audit::Done => true,
        Audit::NearShift => {
        let near: Vec<Row> = zero_images
            .iter()
            .filter(|z| embedding.to_g(&b.sub(z, &shift)).is_some())
            .cloned()
            .collect();
        near == declared
        }
    };
    if !audited {
        return Err(Error::PreconditionFailed(format!(
            "zero-image audit failed for {family}: images {zero_images:?}, declared {declared:?}"
        )));
    }
    let zs = if g == f { g_zeros } else { zeros(&a, &f)? };
    let s = SubsetS::new(&embedding.module, &s)?;
    let mut verdict = classify(&embedding.module, &s, flavor);
    if let (ModuleStatus::Unknown, Some(why)) = (verdict.status, known_hard) {
        verdict = ModuleVerdict { status: ModuleStatus::Npc, reason: why.to_string() };
    }
    Ok(Gadget {
        family: family.clone(),
        f,
        g,
        equivalence,
        a,
        b,
        psi,
        embedding,
        s,
        flavor,
        shift,
        zeros: zs,
        zero_images,
        declared_images: declared,
        verdict,
        notes,
        recipe,
    })
}

fn generic(data: &GenericData) -> Result<Parts> {
    let b = &data.b;
    validate_hom(&data.a, b, &data.psi)?;
    let embedding = ModuleEmbedding::new(b, data.g_basis.clone(), &data.r_gens)?;
    for x in &embedding.basis {
        for y in &embedding.basis {
            if !b.is_zero_elem(&b.mul(x, y)) {
                return Err(bad("multiplication on G is not zero"));
            }
        }
    }
    let r = subring_generated(b, &data.r_gens);
    let mut g_lat = b.relation_lattice();
    for x in &embedding.basis {
        g_lat.insert(x);
    }
    if r.intersect(&g_lat) != b.relation_lattice() {
        return Err(bad("G ∩ R is not 0"));
    }
    if !r.contains(&data.shift) {
        return Err(bad("the shift a is not in R"));
    }
    let mut s = Vec::new();
    for x in &data.s {
        s.push(embedding.to_g(x).ok_or_else(|| bad("an element of S is not in G"))?);
    }
    let declared = data.s.iter().map(|x| b.add(&data.shift, x)).collect();
    Ok(Parts {
        g: data.f.clone(),
        equivalence: None,
        a: data.a.clone(),
        b: b.clone(),
        psi: data.psi.clone(),
        embedding,
        s,
        flavor: Flavor::Pi,
        shift: b.reduce(data.shift.clone()),
        declared,
        recipe: Recipe::Generic { r_gens: data.r_gens.clone() },
        notes: vec![],
        known_hard: None,
        audit: Audit::Exact,
    })
}

fn gen_xn(f: &IntPolynomial, p: u64) -> Result<Parts> {
    let n = f.deg();
    let c = full_power_root(f, p).expect("checked");
    let depth = match n {
        2 => 1,
        3 if cubic_z_rank(f)? == 3 => 1,
        _ => n - 1,
    };
    let tower = splitting_tower_capped(f, depth, DEFAULT_RANK_CAP)?;
    let a = tower.top().order.clone();
    let zs = zeros(&a, f)?;
    if zs.len() != n {
        return Err(bad(format!("the order holds {} zeros of {f}, expected {n}", zs.len())));
    }
    let cb = int(c as i64);
    let betas: Vec<Row> = zs.iter().map(|z| a.sub(z, &a.scalar_mul(&cb, &a.one()))).collect();
    let mut ideal = Vec::new();
    for i in 0..n {
        for j in i..n {
            ideal.push(a.mul(&betas[i], &betas[j]));
        }
    }
    let (b, psi) = quotient_ring(&a, &ideal, &[BigInt::from(p)])?;
    let images: Vec<Row> = betas.iter().map(|x| psi.apply(&b, x)).collect();
    let embedding = ModuleEmbedding::from_generators_elementary(&b, &images, p)?;
    if embedding.rank() == 0 {
        return Err(bad("the roots all vanish in B"));
    }
    let s: Vec<Elem> = images.iter().map(|x| embedding.to_g(x).expect("generator of G")).collect();
    let shift = scalar(&b, &cb);
    let declared = images.iter().map(|x| b.add(&shift, x)).collect();
    let mut notes = vec![format!("translate c = {c}, A of rank {}", a.rank())];
    if (n as u64) % p == 0 {
        notes.push(format!("{p} divides the degree {n}: S can be a coset"));
    }
    Ok(Parts {
        g: f.clone(),
        equivalence: None,
        a,
        b,
        psi,
        embedding,
        s,
        flavor: Flavor::Pi,
        shift,
        declared,
        recipe: Recipe::Generic { r_gens: vec![] },
        notes,
        known_hard: None,
        audit: Audit::Exact,
    })
}

fn gen_comp(f: &IntPolynomial, p: u64) -> Result<Parts> {
    let a0 = gen_comp_root(f, p)?;
    let (b, eps) = dual_numbers(p)?;
    let ab = scalar(&b, &int(a0 as i64));
    let plus = b.add(&ab, &eps);
    let minus = b.sub(&ab, &eps);
    let tower = splitting_tower(f, 2)?;
    let a = tower.top().order.clone();
    let psi = tower_hom(&tower, &[plus.clone(), minus.clone()], &b)?;
    let zs = zeros(&a, f)?;
    let embedding = ModuleEmbedding::new(&b, vec![eps.clone()], &[])?;
    let s = vec![vec![1], vec![p as i64 - 1]];
    let declared = vec![plus.clone(), minus];
    let alphas = tower.alphas(2);
    let others: Vec<&Row> = zs.iter().filter(|z| !alphas.contains(z)).collect();
    let recipe = if others.is_empty() {
        Recipe::Generic { r_gens: vec![] }
    } else {
        let t1 = splitting_tower(f, 1)?;
        let a1 = t1.top().order.clone();
        let z1 = zeros(&a1, f)?;
        if z1.len() != 1 {
            return Err(bad(format!("Z[α] holds {} zeros of {f}, expected 1", z1.len())));
        }
        for z in &others {
            if embedding.to_g(&b.sub(&psi.apply(&b, z), &ab)).is_some() {
                return Err(bad("a further zero reduces to a"));
            }
        }
        let first_hom = tower_hom(&t1, &[plus], &b)?;
        Recipe::ExtraCoordinate { first: Factor { order: a1, zeros: z1 }, first_hom, parity: None }
    };
    let audit = if matches!(recipe, Recipe::Generic { .. }) { Audit::Exact } else { Audit::NearShift };
    Ok(Parts {
        g: f.clone(),
        equivalence: None,
        a,
        b,
        psi,
        embedding,
        s,
        flavor: Flavor::Pi,
        shift: ab,
        declared,
        recipe,
        notes: vec![format!("double zero a = {a0} modulo {p}")],
        audit,
        known_hard: None,
    })
}

fn quad_even(f: &IntPolynomial) -> Result<Parts> {
    let (a_val, k) = quad_even_a(f)?;
    let g = IntPolynomial::new(vec![-a_val.clone(), BigInt::zero(), BigInt::one()]);
    let a = Order::monogenic(&g)?;
    let (b, psi) = quotient_ring(&a, &[], &[int(8)])?;
    let sqrt = psi.apply(&b, &unit_row(2, 1));
    let embedding = ModuleEmbedding::new(&b, vec![sqrt.clone()], &[])?;
    let shift = scalar(&b, &-k.clone());
    let declared = vec![b.add(&shift, &sqrt), b.sub(&shift, &sqrt)];
    let ideal = Lattice::from_generators(b.rank(), (0..b.rank()).map(|j| b.scalar_mul(&int(2), &b.basis_element(j))).collect())
        .sum(&b.relation_lattice());
    Ok(Parts {
        g: f.clone(),
        equivalence: None,
        a,
        b,
        psi,
        embedding,
        s: vec![vec![1], vec![7]],
        flavor: Flavor::Pi,
        shift,
        declared,
        recipe: Recipe::CongruentDiagonal { ideal },
        notes: vec![format!("f(X − {k}) = X² − {a_val}")],
        known_hard: None,
        audit: Audit::Exact,
    })
}

fn f2() -> Result<FiniteRing> {
    Ok(quotient_ring(&Order::integers(), &[], &[int(2)])?.0)
}

fn disc23(f: &IntPolynomial) -> Result<Parts> {
    let (a2, a3) = disc23_roots(f)?;
    let (b, eps) = dual_numbers(3)?;
    let ab = scalar(&b, &int(a3 as i64));
    let plus = b.add(&ab, &eps);
    let minus = b.sub(&ab, &eps);
    let tower = splitting_tower(f, 2)?;
    let t1 = splitting_tower(f, 1)?;
    let a = tower.top().order.clone();
    let a1 = t1.top().order.clone();
    let psi = tower_hom(&tower, &[plus.clone(), minus.clone()], &b)?;
    let first_hom = tower_hom(&t1, &[plus.clone()], &b)?;
    let f2 = f2()?;
    let par = scalar(&f2, &int(a2 as i64));
    let parity = ParityCheck {
        first: tower_hom(&t1, &[par.clone()], &f2)?,
        rest: tower_hom(&tower, &[par.clone(), par.clone()], &f2)?,
        f2: f2.clone(),
    };
    let z1 = zeros(&a1, f)?;
    if z1.len() != 1 {
        return Err(bad(format!("Z[α] holds {} zeros of {f}, expected 1", z1.len())));
    }
    // Only zeros with parity a2 may appear in the last t coordinates.
    let zs = zeros(&a, f)?;
    let allowed: Vec<Row> = zs.iter().filter(|z| parity.rest.apply(&f2, z) == par).map(|z| psi.apply(&b, z)).collect();
    let mut allowed_sorted = allowed.clone();
    allowed_sorted.sort();
    let mut want = vec![plus.clone(), minus.clone()];
    want.sort();
    if allowed_sorted != want {
        return Err(bad("zeros of parity a₂ do not map to a ± ε"));
    }
    let embedding = ModuleEmbedding::new(&b, vec![eps], &[])?;
    Ok(Parts {
        g: f.clone(),
        equivalence: None,
        a,
        b,
        psi,
        embedding,
        s: vec![vec![1], vec![2]],
        flavor: Flavor::Pi,
        shift: ab,
        declared: vec![plus, minus],
        recipe: Recipe::ExtraCoordinate { first: Factor { order: a1, zeros: z1 }, first_hom, parity: Some(parity) },
        notes: vec![format!("double zero {a2} modulo 2, triple zero {a3} modulo 3")],
        known_hard: None,
        audit: Audit::Done,
    })
}

fn zr6tr9(f: &IntPolynomial) -> Result<Parts> {
    let c = full_power_root(f, 9).expect("checked");
    let w = Order::monogenic(&IntPolynomial::from_i64(&[1, 1, 1]))?;
    let e = Order::monogenic(&IntPolynomial::monomial(2))?;
    let t = Order::tensor(&w, &e);
    let (b, proj) = quotient_ring(&t, &[], &[int(9)])?;
    let eps = proj.apply(&b, &unit_row(4, 1));
    let omega = proj.apply(&b, &unit_row(4, 2));
    let weps = b.mul(&omega, &eps);
    let w2eps = b.mul(&omega, &weps);
    let cb = scalar(&b, &int(c as i64));
    let tower = splitting_tower(f, 2)?;
    let psi = tower_hom(&tower, &[b.add(&cb, &eps), b.add(&cb, &weps)], &b)?;
    let embedding = ModuleEmbedding::new(&b, vec![eps.clone(), weps.clone()], &[])?;
    let s_b = [eps, weps, w2eps];
    let s = s_b.iter().map(|x| embedding.to_g(x).expect("in G")).collect();
    let declared = s_b.iter().map(|x| b.add(&cb, x)).collect();
    Ok(Parts {
        g: f.clone(),
        equivalence: None,
        a: tower.top().order.clone(),
        b,
        psi,
        embedding,
        s,
        flavor: Flavor::Pi,
        shift: cb,
        declared,
        recipe: Recipe::Generic { r_gens: vec![] },
        notes: vec![format!("f ≡ (X − {c})³ mod 9")],
        known_hard: None,
        audit: Audit::Exact,
    })
}

fn canonical(f: &IntPolynomial, id: super::FamilyId) -> Result<(IntPolynomial, Option<Equivalence>)> {
    let g = GadgetFamily::canonical_polynomial(id).unwrap();
    if *f == g {
        return Ok((g, None));
    }
    let eq = certify_equivalent(f, &g)?.ok_or_else(|| bad(format!("{f} is not equivalent to {g}")))?;
    Ok((g, Some(eq)))
}

fn x3_minus_3(f: &IntPolynomial) -> Result<Parts> {
    let (g, equivalence) = canonical(f, super::FamilyId::X3Minus3)?;
    let tower = splitting_tower(&g, 2)?;
    let p6 = Order::monogenic(&IntPolynomial::from_i64(&[3, 0, 0, 0, 0, 0, 1]))?;
    let (b, proj) = quotient_ring(&p6, &[], &[int(9)])?;
    let pi = proj.apply(&b, &unit_row(6, 1));
    let pi2 = b.pow(&pi, 2);
    let pi3 = b.pow(&pi, 3);
    let pi5 = b.pow(&pi, 5);
    // ζ = −1/2 + π³/2, and 1/2 = 5 modulo 9.
    let zeta = b.add(&scalar(&b, &int(4)), &b.scalar_mul(&int(5), &pi3));
    let zeta_sq = b.mul(&zeta, &zeta);
    debug_assert!(b.is_zero_elem(&b.add(&b.add(&zeta_sq, &zeta), &b.one())));
    let neg = |x: &Row| b.sub(&b.zero(), x);
    let s_b = [neg(&pi2), neg(&b.mul(&zeta, &pi2)), neg(&b.mul(&zeta_sq, &pi2))];
    let psi = tower_hom(&tower, &[s_b[0].clone(), s_b[1].clone()], &b)?;
    let embedding = ModuleEmbedding::new(&b, vec![pi2, pi5], &[])?;
    let s = s_b.iter().map(|x| embedding.to_g(x).expect("in B_2")).collect();
    let zm1 = b.sub(&zeta, &b.one());
    let ideal = Lattice::from_generators(b.rank(), (0..b.rank()).map(|j| b.mul(&zm1, &b.basis_element(j))).collect())
        .sum(&b.relation_lattice());
    Ok(Parts {
        g,
        equivalence,
        a: tower.top().order.clone(),
        b: b.clone(),
        psi,
        embedding,
        s,
        flavor: Flavor::Pi,
        shift: b.zero(),
        declared: s_b.to_vec(),
        recipe: Recipe::CongruentDiagonal { ideal },
        notes: vec![],
        known_hard: None,
        audit: Audit::Exact,
    })
}

fn x3_3x2_3(f: &IntPolynomial) -> Result<Parts> {
    let (g, equivalence) = canonical(f, super::FamilyId::X3Minus3X2Plus3)?;
    let a = Order::monogenic(&g)?;
    let alpha_a = unit_row(3, 1);
    let (b, psi) = quotient_ring(&a, &[a.pow(&alpha_a, 4)], &[])?;
    let alpha = psi.apply(&b, &alpha_a);
    let a2 = b.pow(&alpha, 2);
    let a3 = b.pow(&alpha, 3);
    let embedding = ModuleEmbedding::new(&b, vec![a2.clone(), a3.clone()], &[alpha.clone()])?;
    // S = {0, m, −m − εm} with m = α² and ε acting as α.
    let s = vec![vec![0, 0], vec![1, 0], vec![2, 2]];
    let declared = vec![alpha.clone(), b.add(&alpha, &a2), b.sub(&b.sub(&alpha, &a2), &a3)];
    Ok(Parts {
        g,
        equivalence,
        a,
        b,
        psi,
        embedding,
        s,
        flavor: Flavor::P,
        shift: alpha.clone(),
        declared,
        recipe: Recipe::ShiftedP { alpha },
        notes: vec![],
        known_hard: Some(
            "x -> m - x reduces P over {0, m} to P over S, and {0, m} in the free F_3[eps]-module of rank 1 is hard",
        ),
        audit: Audit::Exact,
    })
}

fn x3_9x_9(f: &IntPolynomial) -> Result<Parts> {
    let (g, equivalence) = canonical(f, super::FamilyId::X3Minus9XPlus9)?;
    let a = Order::monogenic(&g)?;
    let alpha_a = unit_row(3, 1);
    let al2 = a.pow(&alpha_a, 2);
    let (b, psi) = quotient_ring(&a, &[a.scalar_mul(&int(3), &al2)], &[int(9)])?;
    if b.cardinality() != int(243) {
        return Err(bad(format!("B has cardinality {}, expected 243", b.cardinality())));
    }
    let alpha = psi.apply(&b, &alpha_a);
    let m = b.add(&b.pow(&alpha, 2), &scalar(&b, &int(3)));
    let embedding = ModuleEmbedding::new(&b, vec![m.clone()], &[])?;
    let img = |coeffs: [i64; 3]| psi.apply(&b, &coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>());
    let declared = vec![img([0, 1, 0]), img([-6, 1, 1]), img([6, -2, -1])];
    Ok(Parts {
        g,
        equivalence,
        a,
        b,
        psi,
        embedding,
        s: vec![vec![1], vec![2]],
        flavor: Flavor::Pi,
        shift: alpha.clone(),
        declared,
        recipe: Recipe::Doubled { alpha, m },
        notes: vec![],
        known_hard: None,
        audit: Audit::Exact,
    })
}
