//! Reduction gadgets: builders that turn an instance `(t, H, x_*)` of a
//! finite-module problem into an order `A_H ⊂ A^t` whose zero set for `f`
//! is nonempty exactly when the instance is a yes-instance.
//!
//! Every gadget consists of an order `A` with a surjection `ψ: A → B` onto a
//! finite ring and a module `G ⊂ B` such that `ψ(Z_A(f))` is `a + S`. The
//! order `A_H` is always an intersection of inverse images of subrings, one
//! per [`Condition`].

mod embed;
mod families;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use embed::{additive_order, ModuleEmbedding};
pub use families::{
    certify_equivalent, check_preconditions, cubic_z_rank, full_power_root, make_gadget, tower_hom, Equivalence, GenericData,
};
pub use verify::{verify_reduction, InstanceCheck, Sweep, VerifyReport};

use crate::error::{Error, Result};
use crate::gadget::{Elem, Flavor, ModuleProblemInstance, ModuleVerdict, SubsetS, Submodule};
use crate::linalg::{preimage, IntMatrix, Lattice, Row};
use crate::order::{is_subring, subring_generated, FiniteRing, Order, Ring, RingHom, SubOrder};
use crate::poly::IntPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    #[serde(rename = "generic-npf")]
    GenericNpf,
    #[serde(rename = "gen-xn")]
    GenXn,
    #[serde(rename = "gen-comp")]
    GenComp,
    #[serde(rename = "quad-even")]
    QuadEven,
    #[serde(rename = "disc23")]
    Disc23,
    #[serde(rename = "zr6tr9")]
    Zr6Tr9,
    #[serde(rename = "x3-minus-3")]
    X3Minus3,
    #[serde(rename = "x3-3x2-3")]
    X3Minus3X2Plus3,
    #[serde(rename = "x3-9x-9")]
    X3Minus9XPlus9,
}

impl FamilyId {
    pub const ALL: [FamilyId; 9] = [
        FamilyId::GenericNpf,
        FamilyId::GenXn,
        FamilyId::GenComp,
        FamilyId::QuadEven,
        FamilyId::Disc23,
        FamilyId::Zr6Tr9,
        FamilyId::X3Minus3,
        FamilyId::X3Minus3X2Plus3,
        FamilyId::X3Minus9XPlus9,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::GenericNpf => "generic-npf",
            FamilyId::GenXn => "gen-xn",
            FamilyId::GenComp => "gen-comp",
            FamilyId::QuadEven => "quad-even",
            FamilyId::Disc23 => "disc23",
            FamilyId::Zr6Tr9 => "zr6tr9",
            FamilyId::X3Minus3 => "x3-minus-3",
            FamilyId::X3Minus3X2Plus3 => "x3-3x2-3",
            FamilyId::X3Minus9XPlus9 => "x3-9x-9",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A reduction family together with its parameters.
#[derive(Clone, Debug)]
pub enum GadgetFamily {
    GenericNpf(Box<GenericData>),
    /// `f ≡ (X − c)^n mod p`.
    GenXn { f: IntPolynomial, p: u64 },
    /// `f` has a double zero modulo the odd prime `p`.
    GenComp { f: IntPolynomial, p: u64 },
    /// `f` a monic quadratic equal to `X² − a` after an integer shift, `2 | a`.
    QuadEven { f: IntPolynomial },
    Disc23 { f: IntPolynomial },
    Zr6Tr9 { f: IntPolynomial },
    /// The remaining hard cubics, for any `f` equivalent to the named one.
    X3Minus3 { f: IntPolynomial },
    X3Minus3X2Plus3 { f: IntPolynomial },
    X3Minus9XPlus9 { f: IntPolynomial },
}

impl GadgetFamily {
    pub fn id(&self) -> FamilyId {
        match self {
            GadgetFamily::GenericNpf(_) => FamilyId::GenericNpf,
            GadgetFamily::GenXn { .. } => FamilyId::GenXn,
            GadgetFamily::GenComp { .. } => FamilyId::GenComp,
            GadgetFamily::QuadEven { .. } => FamilyId::QuadEven,
            GadgetFamily::Disc23 { .. } => FamilyId::Disc23,
            GadgetFamily::Zr6Tr9 { .. } => FamilyId::Zr6Tr9,
            GadgetFamily::X3Minus3 { .. } => FamilyId::X3Minus3,
            GadgetFamily::X3Minus3X2Plus3 { .. } => FamilyId::X3Minus3X2Plus3,
            GadgetFamily::X3Minus9XPlus9 { .. } => FamilyId::X3Minus9XPlus9,
        }
    }

    pub fn f(&self) -> &IntPolynomial {
        match self {
            GadgetFamily::GenericNpf(s) => &s.f,
            GadgetFamily::GenXn { f, .. }
            | GadgetFamily::GenComp { f, .. }
            | GadgetFamily::QuadEven { f }
            | GadgetFamily::Disc23 { f }
            | GadgetFamily::Zr6Tr9 { f }
            | GadgetFamily::X3Minus3 { f }
            | GadgetFamily::X3Minus3X2Plus3 { f }
            | GadgetFamily::X3Minus9XPlus9 { f } => f,
        }
    }

    /// The prime parameter, if the family has one.
    pub fn p(&self) -> Option<u64> {
        match self {
            GadgetFamily::GenXn { p, .. } | GadgetFamily::GenComp { p, .. } => Some(*p),
            _ => None,
        }
    }

    /// `X² − a`.
    pub fn quad_even(a: i64) -> Self {
        GadgetFamily::QuadEven { f: IntPolynomial::from_i64(&[-a, 0, 1]) }
    }

    /// The polynomial each hard-cubic family is built for.
    pub fn canonical_polynomial(id: FamilyId) -> Option<IntPolynomial> {
        let c: &[i64] = match id {
            FamilyId::X3Minus3 => &[-3, 0, 0, 1],
            FamilyId::X3Minus3X2Plus3 => &[3, 0, -3, 1],
            FamilyId::X3Minus9XPlus9 => &[9, -9, 0, 1],
            _ => return None,
        };
        Some(IntPolynomial::from_i64(c))
    }

    /// Builds a family from an id and its parameters. Hard cubics default to
    /// their canonical polynomial.
    pub fn from_parts(id: FamilyId, f: Option<IntPolynomial>, p: Option<u64>, a: Option<BigInt>) -> Result<Self> {
        let need_f = |f: Option<IntPolynomial>| f.ok_or_else(|| Error::Malformed(format!("family {id} needs a polynomial `f`")));
        let need_p = || p.ok_or_else(|| Error::Malformed(format!("family {id} needs a prime `p`")));
        Ok(match id {
            FamilyId::GenericNpf => {
                return Err(Error::Malformed("generic-npf is built from explicit rings, not parameters".into()))
            }
            FamilyId::GenXn => GadgetFamily::GenXn { f: need_f(f)?, p: need_p()? },
            FamilyId::GenComp => GadgetFamily::GenComp { f: need_f(f)?, p: need_p()? },
            FamilyId::QuadEven => match (f, a) {
                (Some(f), _) => GadgetFamily::QuadEven { f },
                (None, Some(a)) => GadgetFamily::QuadEven { f: IntPolynomial::new(vec![-a, BigInt::from(0), BigInt::from(1)]) },
                (None, None) => return Err(Error::Malformed("quad-even needs `a` or `f`".into())),
            },
            FamilyId::Disc23 => GadgetFamily::Disc23 { f: need_f(f)? },
            FamilyId::Zr6Tr9 => GadgetFamily::Zr6Tr9 { f: need_f(f)? },
            FamilyId::X3Minus3 | FamilyId::X3Minus3X2Plus3 | FamilyId::X3Minus9XPlus9 => {
                let f = f.unwrap_or_else(|| Self::canonical_polynomial(id).unwrap());
                match id {
                    FamilyId::X3Minus3 => GadgetFamily::X3Minus3 { f },
                    FamilyId::X3Minus3X2Plus3 => GadgetFamily::X3Minus3X2Plus3 { f },
                    _ => GadgetFamily::X3Minus9XPlus9 { f },
                }
            }
        })
    }
}

impl fmt::Display for GadgetFamily {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p() {
            Some(p) => write!(fm, "{}{{f = {}, p = {p}}}", self.id(), self.f()),
            None => write!(fm, "{}{{f = {}}}", self.id(), self.f()),
        }
    }
}

/// One factor of the ambient order together with the zeros of `f` in it.
#[derive(Clone, Debug)]
pub struct Factor {
    pub order: Order,
    pub zeros: Vec<Row>,
}

/// `hom(x) ∈ sub`, with `sub` a unital subring of `target`.
#[derive(Clone, Debug)]
pub struct Condition {
    pub hom: RingHom,
    pub target: FiniteRing,
    pub sub: Lattice,
}

/// How `A_H` is cut out of a product of factors.
#[derive(Clone, Debug)]
pub struct Plan {
    pub factors: Vec<Factor>,
    pub conditions: Vec<Condition>,
}

/// A homomorphism from `A_1` to `F_2` used to force equal parities.
#[derive(Clone, Debug)]
pub(crate) struct ParityCheck {
    pub f2: FiniteRing,
    pub first: RingHom,
    pub rest: RingHom,
}

#[derive(Clone, Debug)]
pub(crate) enum Recipe {
    /// `R_H = R[H]` for `R` generated by `r_gens`.
    Generic { r_gens: Vec<Row> },
    /// An extra leading coordinate `Z[α_1] → B` forced to `a + ε`.
    ExtraCoordinate { first: Factor, first_hom: RingHom, parity: Option<ParityCheck> },
    /// `H' = H ∩ C` with `C` the tuples congruent modulo `ideal`.
    CongruentDiagonal { ideal: Lattice },
    /// `R_H = R[α̲ + x_*, H]`.
    ShiftedP { alpha: Row },
    /// `t' = 2t + 1`, `H' = {(x, −x, 0)}` and `x_* = (α − m, …, α − m, α)`.
    Doubled { alpha: Row, m: Row },
}

/// A validated reduction gadget.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub family: GadgetFamily,
    /// The target polynomial.
    pub f: IntPolynomial,
    /// The polynomial the rings were built for (equal to `f` unless `f` was
    /// matched to a hard cubic by an equivalence).
    pub g: IntPolynomial,
    pub equivalence: Option<Equivalence>,
    pub a: Order,
    pub b: FiniteRing,
    pub psi: RingHom,
    pub embedding: ModuleEmbedding,
    pub s: SubsetS,
    pub flavor: Flavor,
    /// `a ∈ B`.
    pub shift: Row,
    /// `Z_A(f)`.
    pub zeros: Vec<Row>,
    /// `ψ(Z_A(g))`, sorted.
    pub zero_images: Vec<Row>,
    /// The set the family claims for `ψ(Z_A(g))` (or for its part near `a`).
    pub declared_images: Vec<Row>,
    pub verdict: ModuleVerdict,
    pub notes: Vec<String>,
    pub(crate) recipe: Recipe,
}

impl Gadget {
    pub fn module(&self) -> &crate::gadget::FiniteModule {
        &self.embedding.module
    }

    /// Number of copies of `A` used for an instance of size `t`.
    pub fn output_width(&self, t: usize) -> usize {
        match self.recipe {
            Recipe::Doubled { .. } => 2 * t + 1,
            Recipe::ExtraCoordinate { .. } => t + 1,
            _ => t,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Provenance {
    pub family: FamilyId,
    pub gadget: String,
    pub t: usize,
    #[serde(with = "crate::io::dec::ivec2")]
    pub h_gens: Vec<Elem>,
    #[serde(with = "crate::io::dec::ivec")]
    pub x_star: Elem,
    /// A `t = 0` instance replaced by the trivial yes-instance `t = 1`, `H = G`.
    pub normalized_from_t0: bool,
}

/// `a + S^t` as it appears in each copy of `B`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExpectedImages {
    #[serde(with = "crate::io::dec::vec")]
    pub shift: Row,
    #[serde(with = "crate::io::dec::vec2")]
    pub s_images: Vec<Row>,
}

#[derive(Clone, Debug)]
pub struct BuiltInstance {
    /// `A_H` with its embedding into the ambient product.
    pub order: SubOrder,
    pub ambient: Order,
    pub f: IntPolynomial,
    pub provenance: Provenance,
    pub expected_zero_images: ExpectedImages,
    pub plan: Plan,
}

impl BuiltInstance {
    /// `Z_{A_H}(f)` computed as the zeros of the ambient product lying in
    /// `A_H`, in `A_H`-coordinates. Capped on the number of candidate tuples.
    pub fn zeros_via_ambient(&self, cap: u64) -> Result<Vec<Row>> {
        let total: u128 = self.plan.factors.iter().map(|f| f.zeros.len() as u128).product();
        if total > cap as u128 {
            return Err(Error::cap("zero tuples of the ambient order", total, cap));
        }
        let mut tuples: Vec<Row> = vec![Vec::new()];
        for fac in &self.plan.factors {
            let mut next = Vec::with_capacity(tuples.len() * fac.zeros.len());
            for p in &tuples {
                for z in &fac.zeros {
                    let mut v = p.clone();
                    v.extend(z.iter().cloned());
                    next.push(v);
                }
            }
            tuples = next;
        }
        let mut out: Vec<Row> = tuples.into_iter().filter_map(|z| self.order.from_ambient(&z)).collect();
        out.sort();
        Ok(out)
    }
}

/// Block-diagonal homomorphism `Π A_i → Π B_i`.
pub(crate) fn block_diag(homs: &[&RingHom]) -> RingHom {
    let rows: usize = homs.iter().map(|h| h.matrix.nrows()).sum();
    let cols: usize = homs.iter().map(|h| h.matrix.ncols()).sum();
    let mut m = IntMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for h in homs {
        for i in 0..h.matrix.nrows() {
            for j in 0..h.matrix.ncols() {
                m.set(r0 + i, c0 + j, h.matrix.get(i, j).clone());
            }
        }
        r0 += h.matrix.nrows();
        c0 += h.matrix.ncols();
    }
    RingHom::new(m)
}

/// `x` repeated `t` times.
pub(crate) fn diag(x: &[BigInt], t: usize) -> Row {
    let mut v = Vec::with_capacity(x.len() * t);
    for _ in 0..t {
        v.extend(x.iter().cloned());
    }
    v
}

/// Tuples in `B^t` whose entries agree modulo the ideal lattice `j ⊂ Z^n`
/// (which must contain the relations of `B`).
fn congruent_tuples(n: usize, t: usize, j: &Lattice) -> Lattice {
    if t <= 1 {
        return Lattice::full(n * t);
    }
    // x ↦ (x_2 − x_1, …, x_t − x_1).
    let mut m = IntMatrix::zeros(n * t, n * (t - 1));
    for c in 1..t {
        for i in 0..n {
            m.set(c * n + i, (c - 1) * n + i, BigInt::from(1));
            m.set(i, (c - 1) * n + i, BigInt::from(-1));
        }
    }
    let mut gens = Vec::new();
    for c in 0..t - 1 {
        for b in j.basis() {
            let mut v = vec![BigInt::from(0); n * (t - 1)];
            v[c * n..(c + 1) * n].clone_from_slice(b);
            gens.push(v);
        }
    }
    preimage(&m, &Lattice::from_generators(n * (t - 1), gens))
}

/// Builds `A_H` for an instance of the gadget's module problem.
pub fn build(gadget: &Gadget, inst: &ModuleProblemInstance) -> Result<BuiltInstance> {
    let g = gadget.module();
    inst.check_shape(g)?;
    if gadget.flavor == Flavor::Pi && inst.x_star.iter().any(|&c| c != 0) {
        return Err(Error::ShapeMismatch("this gadget reduces from Π_{G,S}; x_* must be 0".into()));
    }
    let normalized = inst.t == 0;
    let inst = if normalized {
        let r = g.rank();
        let h_gens = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
        ModuleProblemInstance { t: 1, h_gens, x_star: vec![0; r] }
    } else {
        inst.clone()
    };
    let plan = plan_for(gadget, &inst)?;
    let (ambient, order) = assemble(&plan)?;
    let s_images = gadget.s.elements().iter().map(|s| gadget.embedding.from_g(&gadget.b, s)).collect();
    Ok(BuiltInstance {
        order,
        ambient,
        f: gadget.f.clone(),
        provenance: Provenance {
            family: gadget.family.id(),
            gadget: gadget.family.to_string(),
            t: inst.t,
            h_gens: inst.h_gens.clone(),
            x_star: inst.x_star.clone(),
            normalized_from_t0: normalized,
        },
        expected_zero_images: ExpectedImages { shift: gadget.shift.clone(), s_images },
        plan,
    })
}

/// The ambient product and the sub-order cut out by all conditions.
pub fn assemble(plan: &Plan) -> Result<(Order, SubOrder)> {
    let orders: Vec<&Order> = plan.factors.iter().map(|f| &f.order).collect();
    let ambient = Order::product(&orders);
    let mut lat = Lattice::full(ambient.rank());
    for c in &plan.conditions {
        if !is_subring(&c.target, &c.sub) {
            return Err(Error::NotASubring("gadget produced a lattice that is not a subring".into()));
        }
        lat = lat.intersect(&preimage(&c.hom.matrix, &c.sub));
    }
    let sub = ambient.suborder(&lat)?;
    Ok((ambient, sub))
}

fn plan_for(gadget: &Gadget, inst: &ModuleProblemInstance) -> Result<Plan> {
    let t = inst.t;
    let b = &gadget.b;
    let emb = &gadget.embedding;
    let bt = b.power(t);
    let iota = |h: &Elem| emb.from_g_power(b, h);
    let h_images: Vec<Row> = inst.h_gens.iter().map(iota).collect();
    let base = Factor { order: gadget.a.clone(), zeros: gadget.zeros.clone() };
    let copies = |k: usize| vec![base.clone(); k];
    let plan = match &gadget.recipe {
        Recipe::Generic { r_gens } => {
            let mut gens: Vec<Row> = r_gens.iter().map(|r| diag(r, t)).collect();
            gens.extend(h_images);
            let sub = subring_generated(&bt, &gens);
            Plan { factors: copies(t), conditions: vec![Condition { hom: gadget.psi.power(t), target: bt, sub }] }
        }
        Recipe::CongruentDiagonal { ideal } => {
            let n = b.rank();
            let mut h_lat = bt.relation_lattice();
            for h in &h_images {
                h_lat.insert(h);
            }
            let h_prime = h_lat.intersect(&congruent_tuples(n, t, ideal));
            let sub = subring_generated(&bt, h_prime.basis());
            Plan { factors: copies(t), conditions: vec![Condition { hom: gadget.psi.power(t), target: bt, sub }] }
        }
        Recipe::ShiftedP { alpha } => {
            let moduli = gadget.module().power_moduli(t);
            let eps_x = act_power(gadget, &inst.x_star, t);
            let side: Elem = (0..t)
                .flat_map(|_| shifted_generator(gadget))
                .zip(&eps_x)
                .zip(&moduli)
                .map(|((a, b), d)| (a - b).rem_euclid(*d))
                .collect();
            let h = Submodule::generated(gadget.module(), t, &inst.h_gens);
            if !h.contains(&side) {
                return Err(Error::PreconditionFailed("side condition (m,…,m) − εx_* ∈ H fails".into()));
            }
            let mut gens = vec![bt.add(&diag(alpha, t), &iota(&inst.x_star))];
            gens.extend(h_images);
            let sub = subring_generated(&bt, &gens);
            Plan { factors: copies(t), conditions: vec![Condition { hom: gadget.psi.power(t), target: bt, sub }] }
        }
        Recipe::Doubled { alpha, m } => {
            let tw = 2 * t + 1;
            let btw = b.power(tw);
            let n = b.rank();
            let mut gens = Vec::new();
            for h in &h_images {
                let mut v = h.clone();
                v.extend(bt.sub(&bt.zero(), h));
                v.extend(vec![BigInt::from(0); n]);
                gens.push(v);
            }
            let am = b.sub(alpha, m);
            let mut xs = diag(&am, 2 * t);
            xs.extend(alpha.iter().cloned());
            gens.push(xs);
            let sub = subring_generated(&btw, &gens);
            Plan { factors: copies(tw), conditions: vec![Condition { hom: gadget.psi.power(tw), target: btw, sub }] }
        }
        Recipe::ExtraCoordinate { first, first_hom, parity } => {
            let b1 = b.power(t + 1);
            let n = b.rank();
            let eps = &emb.basis[0];
            let mut gens = Vec::new();
            let mut e0 = eps.clone();
            e0.extend(vec![BigInt::from(0); n * t]);
            gens.push(e0);
            for h in &h_images {
                let mut v = vec![BigInt::from(0); n];
                v.extend(h.iter().cloned());
                gens.push(v);
            }
            let sub = subring_generated(&b1, &gens);
            let rest = gadget.psi.power(t);
            let hom = block_diag(&[first_hom, &rest]);
            let mut conditions = vec![Condition { hom, target: b1, sub }];
            if let Some(par) = parity {
                let f2t = par.f2.power(t + 1);
                let rest = par.rest.power(t);
                let hom = block_diag(&[&par.first, &rest]);
                let sub = subring_generated(&f2t, &[]);
                conditions.push(Condition { hom, target: f2t, sub });
            }
            let mut factors = vec![first.clone()];
            factors.extend(copies(t));
            Plan { factors, conditions }
        }
    };
    Ok(plan)
}

/// The generator `m` of the P-variant module, as a `G`-element.
fn shifted_generator(gadget: &Gadget) -> Elem {
    let r = gadget.module().rank();
    (0..r).map(|i| (i == 0) as i64).collect()
}

/// `ε·x` blockwise, for the first scalar action.
fn act_power(gadget: &Gadget, x: &[i64], t: usize) -> Elem {
    let g = gadget.module();
    let r = g.rank();
    let m = &g.actions()[0];
    (0..t).flat_map(|c| g.act(&x[c * r..(c + 1) * r], m)).collect()
}

#[cfg(test)]
mod tests;
