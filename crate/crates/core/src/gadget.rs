//! The finite-module problems `P_{G,S}` and `Π_{G,S}`.
//!
//! Everything here is small (|G|^t is capped), so elements are `i64` vectors
//! and submodules are kept as lattices `L ⊇ ⊕ d_i Z` in Hermite form.

use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

pub type Elem = Vec<i64>;

/// `G = ⊕ Z/d_i`, with the scalar ring acting through `actions` (row
/// convention, `x ↦ x·M`). No actions means `R = Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    invariants: Vec<i64>,
    actions: Vec<Vec<Vec<i64>>>,
}

impl FiniteModule {
    pub fn new(invariants: Vec<i64>, actions: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let r = invariants.len();
        if invariants.iter().any(|&d| d < 1) {
            return Err(Error::Malformed("invariants must be positive".into()));
        }
        for m in &actions {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(Error::ShapeMismatch(format!("action matrix must be {r}x{r}")));
            }
            // d_i e_i must map to 0.
            for i in 0..r {
                for j in 0..r {
                    if (invariants[i] as i128 * m[i][j] as i128) % invariants[j] as i128 != 0 {
                        return Err(Error::Malformed(format!("action is not well defined on coordinate {i}")));
                    }
                }
            }
        }
        let g = FiniteModule { invariants, actions };
        for a in &g.actions {
            for b in &g.actions {
                for i in 0..r {
                    let e: Elem = (0..r).map(|k| (k == i) as i64).collect();
                    if g.act(&g.act(&e, a), b) != g.act(&g.act(&e, b), a) {
                        return Err(Error::Malformed("action matrices do not commute".into()));
                    }
                }
            }
        }
        Ok(g)
    }

    /// A plain abelian group.
    pub fn abelian(invariants: &[i64]) -> Self {
        Self::new(invariants.to_vec(), Vec::new()).expect("positive invariants")
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn actions(&self) -> &[Vec<Vec<i64>>] {
        &self.actions
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> i64 {
        self.invariants.iter().fold(1, |acc, &d| acc.lcm(&d))
    }

    pub fn reduce(&self, x: &[i64]) -> Elem {
        x.iter().zip(&self.invariants).map(|(a, d)| a.mod_floor(d)).collect()
    }

    pub fn act(&self, x: &[i64], m: &[Vec<i64>]) -> Elem {
        let r = self.rank();
        let mut out = vec![0i64; r];
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                out[j] = (out[j] + x[i] * m[i][j]).mod_floor(&self.invariants[j]);
            }
        }
        out
    }

    pub fn scale(&self, a: i64, x: &[i64]) -> Elem {
        self.reduce(&x.iter().map(|v| v * a).collect::<Vec<_>>())
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Elem {
        self.reduce(&x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>())
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> Elem {
        self.reduce(&x.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>())
    }

    /// Moduli of `G^t`, block by block.
    pub fn power_moduli(&self, t: usize) -> Vec<i64> {
        (0..t).flat_map(|_| self.invariants.iter().copied()).collect()
    }

    /// `|G|^t`, or an error above `cap`.
    pub fn check_power_size(&self, t: usize, cap: u64) -> Result<u128> {
        let mut size: u128 = 1;
        for _ in 0..t {
            size = size.saturating_mul(self.order());
            if size > cap as u128 {
                return Err(Error::cap("|G|^t", size, cap));
            }
        }
        Ok(size)
    }

    /// Every element of `G`, lexicographic.
    pub fn elements(&self) -> Vec<Elem> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariants {
            out = out
                .into_iter()
                .flat_map(|p: Elem| {
                    (0..d).map(move |a| {
                        let mut v = p.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn act_blocks(&self, x: &[i64], m: &[Vec<i64>]) -> Elem {
        let r = self.rank();
        if r == 0 {
            return Vec::new();
        }
        x.chunks(r).flat_map(|b| self.act(b, m)).collect()
    }
}

/// A set `S ⊂ G`, deduplicated and reduced, in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetS {
    elements: Vec<Elem>,
}

impl SubsetS {
    pub fn new(g: &FiniteModule, elems: &[Elem]) -> Result<Self> {
        let mut v: Vec<Elem> = Vec::new();
        for e in elems {
            if e.len() != g.rank() {
                return Err(Error::ShapeMismatch(format!("element of length {} in a rank {} module", e.len(), g.rank())));
            }
            v.push(g.reduce(e));
        }
        v.sort();
        v.dedup();
        Ok(SubsetS { elements: v })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(x)).is_ok()
    }
}

/// Input `(t, H, x_*)`; `x_* = 0` for `Π`-instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleProblemInstance {
    pub t: usize,
    pub h_gens: Vec<Elem>,
    pub x_star: Elem,
}

impl ModuleProblemInstance {
    pub fn pi(g: &FiniteModule, t: usize, h_gens: Vec<Elem>) -> Self {
        ModuleProblemInstance { t, h_gens, x_star: vec![0; t * g.rank()] }
    }

    pub fn check_shape(&self, g: &FiniteModule) -> Result<()> {
        let n = self.t * g.rank();
        if self.x_star.len() != n || self.h_gens.iter().any(|h| h.len() != n) {
            return Err(Error::ShapeMismatch(format!("instance vectors must have length t·r = {n}")));
        }
        Ok(())
    }
}

/// A submodule `H ⊂ ⊕ Z/d_i`, stored as the Hermite basis of its preimage
/// lattice in `Z^N`. Row `i` has its pivot in column `i` and the pivot
/// divides `d_i`; entries right of a pivot are reduced modulo the later pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    moduli: Vec<i64>,
    basis: Vec<Vec<i64>>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

impl Submodule {
    pub fn zero(moduli: &[i64]) -> Self {
        let n = moduli.len();
        let basis = (0..n).map(|i| (0..n).map(|j| if i == j { moduli[i] } else { 0 }).collect()).collect();
        Submodule { moduli: moduli.to_vec(), basis }
    }

    /// The R-submodule of `G^t` generated by `gens`.
    pub fn generated(g: &FiniteModule, t: usize, gens: &[Elem]) -> Self {
        let mut h = Self::zero(&g.power_moduli(t));
        for v in gens {
            h.insert(v);
        }
        h.close(g);
        h
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn pivots(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.basis[i][i]).collect()
    }

    pub fn size(&self) -> u128 {
        (0..self.dim()).map(|i| (self.moduli[i] / self.basis[i][i]) as u128).product()
    }

    /// Canonical key: equal keys iff equal submodules.
    pub fn key(&self) -> Vec<i64> {
        let n = self.dim();
        let mut k = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            k.extend_from_slice(&self.basis[i][i..]);
        }
        k
    }

    fn reduce_vec(&self, v: &mut [i64]) {
        for (x, d) in v.iter_mut().zip(&self.moduli) {
            *x = x.mod_floor(d);
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut w = v.to_vec();
        self.reduce_vec(&mut w);
        for i in 0..self.dim() {
            let p = self.basis[i][i];
            if w[i] % p != 0 {
                return false;
            }
            let q = w[i] / p;
            if q != 0 {
                for j in i..self.dim() {
                    w[j] = (w[j] - q * self.basis[i][j]).mod_floor(&self.moduli[j]);
                }
            }
        }
        true
    }

    /// Adds `v`; returns true if the submodule grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let n = self.dim();
        let mut w = v.to_vec();
        self.reduce_vec(&mut w);
        let mut grew = false;
        for i in 0..n {
            if w[i] == 0 {
                continue;
            }
            let a = self.basis[i][i];
            let b = w[i];
            if b % a == 0 {
                let q = b / a;
                for j in i..n {
                    w[j] = (w[j] - q * self.basis[i][j]).mod_floor(&self.moduli[j]);
                }
                continue;
            }
            grew = true;
            let (g, x, y) = ext_gcd(a, b);
            let old = self.basis[i].clone();
            // Unimodular step on (old, w); the new row is left unreduced and
            // cleaned up by `normalize`. Entries stay below 2·d².
            let new_row: Vec<i64> = (0..n).map(|j| x * old[j] + y * w[j]).collect();
            let (ag, bg) = (a / g, b / g);
            for j in i..n {
                w[j] = (ag * w[j] - bg * old[j]).mod_floor(&self.moduli[j]);
            }
            self.basis[i] = new_row;
            self.normalize_from(i);
        }
        grew
    }

    /// Reduces rows `..=last` against the later pivots.
    fn normalize_from(&mut self, last: usize) {
        let n = self.dim();
        for i in (0..=last).rev() {
            for j in i + 1..n {
                let p = self.basis[j][j];
                let q = Integer::div_floor(&self.basis[i][j], &p);
                if q != 0 {
                    for k in j..n {
                        self.basis[i][k] -= q * self.basis[j][k];
                    }
                }
            }
        }
    }

    /// Closes under the action generators of `g`.
    pub fn close(&mut self, g: &FiniteModule) {
        if g.actions().is_empty() {
            return;
        }
        loop {
            let mut grew = false;
            let rows = self.basis.clone();
            for row in &rows {
                for m in g.actions() {
                    if self.insert(&g.act_blocks(row, m)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return;
            }
        }
    }

    /// Generators of `H` (nonzero basis rows reduced into `G^t`).
    pub fn generators(&self) -> Vec<Elem> {
        self.basis
            .iter()
            .map(|r| {
                let mut v = r.clone();
                self.reduce_vec(&mut v);
                v
            })
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect()
    }

    /// Every element of `H`, lexicographic in the basis coefficients.
    pub fn elements(&self) -> Vec<Elem> {
        let n = self.dim();
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut acc = vec![0i64; n];
        self.walk(0, &mut acc, &mut |v| {
            out.push(v.to_vec());
            true
        });
        out
    }

    /// Depth-first walk over the elements; `visit` returning false stops.
    fn walk(&self, i: usize, acc: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        let n = self.dim();
        if i == n {
            return visit(acc);
        }
        let saved = acc.clone();
        for _ in 0..self.moduli[i] / self.basis[i][i] {
            if !self.walk(i + 1, acc, visit) {
                return false;
            }
            for j in i..n {
                acc[j] = (acc[j] + self.basis[i][j]).mod_floor(&self.moduli[j]);
            }
        }
        *acc = saved;
        true
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }
}

/// The elements of the R-submodule of `G^t` generated by `gens`.
pub fn enumerate_submodule(g: &FiniteModule, t: usize, gens: &[Elem], cap: u64) -> Result<Vec<Elem>> {
    g.check_power_size(t, cap)?;
    let n = t * g.rank();
    if gens.iter().any(|v| v.len() != n) {
        return Err(Error::ShapeMismatch(format!("generators must have length {n}")));
    }
    let mut els = Submodule::generated(g, t, gens).elements();
    els.sort();
    Ok(els)
}

/// Decides `(x_* + H) ∩ S^t ≠ ∅`; the witness is `h ∈ H` with `x_* + h ∈ S^t`.
pub fn solve(g: &FiniteModule, s: &SubsetS, inst: &ModuleProblemInstance, cap: u64) -> Result<Option<Elem>> {
    inst.check_shape(g)?;
    g.check_power_size(inst.t, cap)?;
    let h = Submodule::generated(g, inst.t, &inst.h_gens);
    Ok(solve_in(g, s, &h, &inst.x_star))
}

/// [`solve`] for an already built submodule.
pub fn solve_in(g: &FiniteModule, s: &SubsetS, h: &Submodule, x_star: &[i64]) -> Option<Elem> {
    let r = g.rank();
    let n = h.dim();
    if n == 0 {
        return Some(Vec::new());
    }
    if s.is_empty() {
        return None;
    }
    if r == 0 {
        return Some(Vec::new());
    }
    // Coordinates of block k depend only on the basis coefficients of rows
    // in blocks ≤ k, so the walk can prune at each block boundary.
    fn go(
        h: &Submodule,
        s: &SubsetS,
        x: &[i64],
        r: usize,
        i: usize,
        acc: &mut Vec<i64>,
    ) -> bool {
        let n = h.dim();
        if i > 0 && i % r == 0 {
            let blk: Vec<i64> =
                (i - r..i).map(|j| (x[j] + acc[j]).mod_floor(&h.moduli[j])).collect();
            if !s.contains(&blk) {
                return false;
            }
        }
        if i == n {
            return true;
        }
        let saved = acc.clone();
        for _ in 0..h.moduli[i] / h.basis[i][i] {
            if go(h, s, x, r, i + 1, acc) {
                return true;
            }
            for j in i..n {
                acc[j] = (acc[j] + h.basis[i][j]).mod_floor(&h.moduli[j]);
            }
        }
        *acc = saved;
        false
    }
    let mut acc = vec![0i64; n];
    if go(h, s, x_star, r, 0, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

/// `θ(S) = ⋂ aS` over `a ∈ {0, …, exp(G) − 1}` with `aS ⊂ S`.
/// The empty set maps to itself.
pub fn theta(g: &FiniteModule, s: &SubsetS) -> SubsetS {
    if s.is_empty() {
        return s.clone();
    }
    let mut cur: Option<HashSet<Elem>> = None;
    for a in 0..g.exponent() {
        let as_: HashSet<Elem> = s.elements().iter().map(|x| g.scale(a, x)).collect();
        if as_.iter().all(|x| s.contains(x)) {
            cur = Some(match cur {
                None => as_,
                Some(c) => c.intersection(&as_).cloned().collect(),
            });
        }
    }
    let v: Vec<Elem> = cur.unwrap_or_default().into_iter().collect();
    SubsetS::new(g, &v).expect("elements of G")
}

/// True iff `S − s_0` is a subgroup; `S` must be nonempty.
pub fn is_coset(g: &FiniteModule, s: &SubsetS) -> bool {
    let Some(s0) = s.elements().first() else {
        return false;
    };
    let t: HashSet<Elem> = s.elements().iter().map(|x| g.sub(x, s0)).collect();
    t.iter().all(|x| t.iter().all(|y| t.contains(&g.add(x, y))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    /// `P_{G,S}`: arbitrary shift `x_*`.
    P,
    /// `Π_{G,S}`: `x_* = 0`.
    Pi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleStatus {
    InP,
    #[serde(rename = "NPC")]
    Npc,
    /// Nontrivial scalar action and no coset structure, a case the known
    /// dichotomy for abelian groups does not cover.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleVerdict {
    pub status: ModuleStatus,
    pub reason: String,
}

/// The P/NP-complete dichotomy for `P_{G,S}` and `Π_{G,S}`.
pub fn classify(g: &FiniteModule, s: &SubsetS, flavor: Flavor) -> ModuleVerdict {
    let v = |status, reason: &str| ModuleVerdict { status, reason: reason.to_string() };
    if s.is_empty() {
        return v(ModuleStatus::InP, "S is empty");
    }
    let (set, what) = match flavor {
        Flavor::P => (s.clone(), "S"),
        Flavor::Pi => (theta(g, s), "theta(S)"),
    };
    if is_coset(g, &set) {
        return v(ModuleStatus::InP, &format!("{what} is a coset"));
    }
    if !g.actions().is_empty() {
        return v(ModuleStatus::Unknown, &format!("{what} is not a coset, but R acts nontrivially"));
    }
    v(ModuleStatus::Npc, &format!("{what} is not a coset"))
}

/// Every R-submodule of `G^t`, ordered by breadth-first discovery from 0.
pub fn all_submodules(g: &FiniteModule, t: usize, cap: u64) -> Result<Vec<Submodule>> {
    g.check_power_size(t, cap)?;
    let moduli = g.power_moduli(t);
    let zero = Submodule::zero(&moduli);
    // Cyclic submodules, one generator each.
    let mut cyclic: Vec<(Elem, Submodule)> = Vec::new();
    let mut seen_cyclic: HashSet<Vec<i64>> = HashSet::new();
    for x in zero.clone_full().elements() {
        let c = Submodule::generated(g, t, &[x.clone()]);
        if seen_cyclic.insert(c.key()) {
            cyclic.push((x, c));
        }
    }
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out = vec![zero.clone()];
    index.insert(zero.key(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let h = out[k].clone();
        for (x, _) in &cyclic {
            if h.contains(x) {
                continue;
            }
            let mut h2 = h.clone();
            h2.insert(x);
            h2.close(g);
            let key = h2.key();
            if !index.contains_key(&key) {
                if out.len() as u64 >= cap {
                    return Err(Error::cap("number of submodules", out.len(), cap));
                }
                index.insert(key, out.len());
                queue.push_back(out.len());
                out.push(h2);
            }
        }
    }
    Ok(out)
}

impl Submodule {
    /// The whole of `⊕ Z/d_i`.
    fn clone_full(&self) -> Submodule {
        let n = self.dim();
        let basis = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        Submodule { moduli: self.moduli.clone(), basis }
    }

    pub fn full(moduli: &[i64]) -> Submodule {
        Submodule::zero(moduli).clone_full()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> FiniteModule {
        FiniteModule::abelian(&[n])
    }

    fn set(g: &FiniteModule, v: &[&[i64]]) -> SubsetS {
        SubsetS::new(g, &v.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let g = z(8);
        assert_eq!(enumerate_submodule(&g, 1, &[vec![2]], DEFAULT_ENUM_CAP).unwrap(), vec![vec![0], vec![2], vec![4], vec![6]]);
        assert_eq!(enumerate_submodule(&g, 1, &[], DEFAULT_ENUM_CAP).unwrap(), vec![vec![0]]);
        // F_9 = F_3[ω], ω² = −ω − 1; ω·(a + bω) = −b + (a − b)ω.
        let f9 = FiniteModule::new(vec![3, 3], vec![vec![vec![0, 1], vec![-1, -1]]]).unwrap();
        assert_eq!(enumerate_submodule(&f9, 1, &[vec![1, 0]], DEFAULT_ENUM_CAP).unwrap().len(), 9);
        assert!(enumerate_submodule(&g, 7, &[], 1000).unwrap_err().is_cap());
    }

    #[test]
    fn solve_examples() {
        let g = z(8);
        let s = set(&g, &[&[1], &[7]]);
        let inst = |gen: i64| ModuleProblemInstance::pi(&g, 1, vec![vec![gen]]);
        assert_eq!(solve(&g, &s, &inst(2), DEFAULT_ENUM_CAP).unwrap(), None);
        assert_eq!(solve(&g, &s, &inst(1), DEFAULT_ENUM_CAP).unwrap(), Some(vec![1]));
        assert_eq!(solve(&g, &s, &ModuleProblemInstance::pi(&g, 0, vec![]), DEFAULT_ENUM_CAP).unwrap(), Some(vec![]));
        let shifted = ModuleProblemInstance { t: 1, h_gens: vec![vec![2]], x_star: vec![3] };
        let w = solve(&g, &s, &shifted, DEFAULT_ENUM_CAP).unwrap().unwrap();
        assert!(s.contains(&g.add(&w, &[3])));
    }

    #[test]
    fn theta_and_cosets() {
        let g = z(8);
        assert!(!is_coset(&g, &set(&g, &[&[1], &[7]])));
        assert!(is_coset(&g, &set(&g, &[&[3], &[7]])));
        assert!(is_coset(&g, &set(&g, &[&[5]])));
        assert_eq!(theta(&g, &set(&g, &[&[0], &[3]])).elements(), &[vec![0]]);
        let s = set(&g, &[&[1], &[7]]);
        assert_eq!(theta(&g, &s), s);
        assert!(theta(&g, &set(&g, &[])).is_empty());
        // Z/6 is not of prime-power order: θ({1,5}) = {1,5} still, θ({2,3}) shrinks.
        let g6 = z(6);
        assert_eq!(theta(&g6, &set(&g6, &[&[2], &[3]])).elements(), &[vec![2], vec![3]]);
    }

    #[test]
    fn classification_examples() {
        let g = z(8);
        assert_eq!(classify(&g, &set(&g, &[&[1], &[7]]), Flavor::Pi).status, ModuleStatus::Npc);
        assert_eq!(classify(&g, &set(&g, &[]), Flavor::P).status, ModuleStatus::InP);
        assert_eq!(classify(&g, &set(&g, &[&[0], &[1]]), Flavor::Pi).status, ModuleStatus::InP);
        assert_eq!(classify(&g, &set(&g, &[&[0], &[1]]), Flavor::P).status, ModuleStatus::Npc);
        // Z/9[ω]ε with basis ε, ωε and S = {ε, ωε, ω²ε}.
        let g81 = FiniteModule::abelian(&[9, 9]);
        let s = set(&g81, &[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(classify(&g81, &s, Flavor::Pi).status, ModuleStatus::Npc);
    }

    #[test]
    fn submodule_counts() {
        let count = |inv: &[i64], t| all_submodules(&FiniteModule::abelian(inv), t, DEFAULT_ENUM_CAP).unwrap().len();
        assert_eq!(count(&[8], 1), 4);
        assert_eq!(count(&[2, 2], 1), 5);
        assert_eq!(count(&[4], 2), 15);
        assert_eq!(count(&[9, 9], 1), 23);
        assert_eq!(count(&[3], 4), 212);
        // F_3[ω] is F_3[X]/(X − 1)², a chain ring.
        let w = FiniteModule::new(vec![3, 3], vec![vec![vec![0, 1], vec![-1, -1]]]).unwrap();
        assert_eq!(all_submodules(&w, 1, DEFAULT_ENUM_CAP).unwrap().len(), 3);
        // F_9 = F_3[i] over itself: lines in F_9^2.
        let f9 = FiniteModule::new(vec![3, 3], vec![vec![vec![0, 1], vec![-1, 0]]]).unwrap();
        assert_eq!(all_submodules(&f9, 1, DEFAULT_ENUM_CAP).unwrap().len(), 2);
        assert_eq!(all_submodules(&f9, 2, DEFAULT_ENUM_CAP).unwrap().len(), 12);
    }

    #[test]
    fn submodule_elements_match_closure() {
        let g = FiniteModule::abelian(&[4, 2]);
        for h in all_submodules(&g, 2, DEFAULT_ENUM_CAP).unwrap() {
            let els = h.elements();
            assert_eq!(els.len() as u128, h.size());
            let set: HashSet<Elem> = els.iter().cloned().collect();
            assert_eq!(set.len(), els.len());
            let m = h.moduli().to_vec();
            for x in &els {
                for y in &els {
                    let s: Elem = x.iter().zip(y).zip(&m).map(|((a, b), d)| (a + b).mod_floor(d)).collect();
                    assert!(set.contains(&s));
                }
            }
        }
    }
}
