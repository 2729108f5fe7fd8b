//! A finite module `G` sitting inside a finite ring `B` as an additive subgroup.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gadget::{Elem, FiniteModule};
use crate::linalg::{is_zero_row, unit_row, zero_row, Lattice, Row};
use crate::order::{FiniteRing, Ring};

/// Additive order of `x` in `⊕ Z/d_i`.
pub fn additive_order(b: &FiniteRing, x: &[BigInt]) -> BigInt {
    let x = b.reduce(x.to_vec());
    b.component_orders()
        .iter()
        .zip(&x)
        .map(|(d, xi)| d / d.gcd(xi))
        .fold(BigInt::from(1), |acc, o| acc.lcm(&o))
}

/// `G = ⊕ Z/ord(b_k)` mapped into `B` by `g ↦ Σ g_k b_k`.
#[derive(Clone, Debug)]
pub struct ModuleEmbedding {
    pub module: FiniteModule,
    pub basis: Vec<Row>,
    n: usize,
    // Rows (b_k | e_k), (relations of B | 0) and (0 | ord_k e_k). Reducing
    // (x | 0) clears the left block exactly when x ∈ G, and leaves −g on the right.
    solver: Lattice,
}

impl ModuleEmbedding {
    /// `actions` are elements of `B` whose multiplication must preserve `G`;
    /// they become the scalar actions of the module.
    pub fn new(b: &FiniteRing, basis: Vec<Row>, actions: &[Row]) -> Result<Self> {
        let n = b.rank();
        let r = basis.len();
        let basis: Vec<Row> = basis.into_iter().map(|x| b.reduce(x)).collect();
        let mut ords = Vec::with_capacity(r);
        for x in &basis {
            let o = additive_order(b, x);
            ords.push(o.to_i64().ok_or_else(|| Error::cap("module exponent", &o, i64::MAX))?);
        }
        let mut rows = Vec::new();
        for (k, x) in basis.iter().enumerate() {
            let mut v = x.clone();
            v.extend(unit_row(r, k));
            rows.push(v);
        }
        for (i, d) in b.component_orders().iter().enumerate() {
            let mut v = zero_row(n + r);
            v[i] = d.clone();
            rows.push(v);
        }
        for (k, o) in ords.iter().enumerate() {
            let mut v = zero_row(n + r);
            v[n + k] = BigInt::from(*o);
            rows.push(v);
        }
        let solver = Lattice::from_generators(n + r, rows);
        // Relations among the b_k are the solver rows vanishing on the left.
        let tail: Vec<Row> = solver.basis().iter().filter(|v| is_zero_row(&v[..n])).map(|v| v[n..].to_vec()).collect();
        let expected = Lattice::from_moduli(&ords.iter().map(|&o| BigInt::from(o)).collect::<Vec<_>>());
        if Lattice::from_generators(r, tail) != expected {
            return Err(Error::PreconditionFailed("module basis elements are not independent in B".into()));
        }
        let mut emb = ModuleEmbedding { module: FiniteModule::abelian(&ords), basis, n, solver };
        let mut mats = Vec::with_capacity(actions.len());
        for a in actions {
            let mut m = Vec::with_capacity(r);
            for x in &emb.basis {
                let y = b.mul(a, x);
                m.push(emb.to_g(&y).ok_or_else(|| {
                    Error::PreconditionFailed("the scalar ring does not preserve G".into())
                })?);
            }
            mats.push(m);
        }
        emb.module = FiniteModule::new(ords, mats)?;
        Ok(emb)
    }

    /// Picks a basis among `gens` greedily. Only valid when every element of
    /// the span has prime order, i.e. `G` is an `F_p`-vector space.
    pub fn from_generators_elementary(b: &FiniteRing, gens: &[Row], p: u64) -> Result<Self> {
        let mut span = b.relation_lattice();
        let mut basis = Vec::new();
        for g in gens {
            if span.insert(g) {
                basis.push(b.reduce(g.clone()));
            }
        }
        let pb = BigInt::from(p);
        if basis.iter().any(|x| additive_order(b, x) != pb) {
            return Err(Error::PreconditionFailed(format!("G is not killed by {p}")));
        }
        Self::new(b, basis, &[])
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `G`-coordinates of a `B`-element, or `None` when it lies outside `G`.
    pub fn to_g(&self, x: &[BigInt]) -> Option<Elem> {
        let mut v = x.to_vec();
        v.extend(zero_row(self.rank()));
        let w = self.solver.reduce(&v);
        if !is_zero_row(&w[..self.n]) {
            return None;
        }
        let g = w[self.n..]
            .iter()
            .zip(self.module.invariants())
            .map(|(c, &d)| (-c).mod_floor(&BigInt::from(d)).to_i64().expect("reduced below an i64 modulus"))
            .collect();
        Some(g)
    }

    pub fn from_g(&self, b: &FiniteRing, g: &[i64]) -> Row {
        let mut acc = b.zero();
        for (c, x) in g.iter().zip(&self.basis) {
            if *c != 0 {
                acc = b.add(&acc, &b.scalar_mul(&BigInt::from(*c), x));
            }
        }
        acc
    }

    /// Image of an element of `G^t` in `B^t`.
    pub fn from_g_power(&self, b: &FiniteRing, g: &[i64]) -> Row {
        let r = self.rank();
        let mut out = Vec::with_capacity(g.len() / r.max(1) * b.rank());
        if r == 0 {
            return out;
        }
        for block in g.chunks(r) {
            out.extend(self.from_g(b, block));
        }
        out
    }
}

