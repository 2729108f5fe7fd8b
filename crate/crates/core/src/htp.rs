//! Polynomial systems over `Z[i]` and the order whose `(X²+1)²` zeros encode
//! their common unit solutions.
//!
//! Layout of the ambient `B'`, as a `Z`-module of rank `2(1 + (n+1) + m)`:
//! coordinates `2j, 2j+1` hold the real and imaginary parts of the `j`-th
//! Gaussian coordinate, in the order `1, v_0, …, v_n, w_1, …, w_m`.
//! The order `B` is `{x ∈ B' : every coordinate except the first is
//! congruent to the second modulo 2}`. An element with scalar part `i` thus
//! has every `v_k` and `w_k` coefficient `≡ 1+i` modulo 2.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{unit_row, Lattice, Row};
use crate::order::{validate_order, Order, Ring, SubOrder};
use crate::poly::IntPolynomial;
use crate::rootfind::verify_certificate;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gaussian {
    #[serde(with = "crate::io::dec")]
    pub re: BigInt,
    #[serde(with = "crate::io::dec")]
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Gaussian { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Gaussian::new(0, 0)
    }

    pub fn one() -> Self {
        Gaussian::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn scale(&self, k: &BigInt) -> Gaussian {
        Gaussian { re: &self.re * k, im: &self.im * k }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient, if it lies in `Z[i]`.
    pub fn div_exact(&self, d: &Gaussian) -> Option<Gaussian> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let conj = Gaussian { re: d.re.clone(), im: -&d.im };
        let p = self.mul(&conj);
        if p.re.is_multiple_of(&n) && p.im.is_multiple_of(&n) {
            Some(Gaussian { re: p.re / &n, im: p.im / &n })
        } else {
            None
        }
    }

    /// Exponent of `1+i` (so twice the valuation normalized by `v(2) = 1`).
    pub fn nu(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let one_i = Gaussian::new(1, 1);
        let mut z = self.clone();
        let mut k = 0;
        while (&z.re + &z.im).is_even() {
            z = z.div_exact(&one_i).expect("even trace means divisible by 1+i");
            k += 1;
        }
        Some(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<u32>,
    #[serde(with = "crate::io::dec")]
    pub re: BigInt,
    #[serde(with = "crate::io::dec")]
    pub im: BigInt,
}

impl Monomial {
    pub fn coeff(&self) -> Gaussian {
        Gaussian::new(self.re.clone(), self.im.clone())
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianPoly {
    pub monomials: Vec<Monomial>,
}

impl GaussianPoly {
    /// Sums terms with equal exponents, drops zeros, sorts by exponent.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, Gaussian)>) -> Result<Self> {
        let mut acc: BTreeMap<Vec<u32>, Gaussian> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::ShapeMismatch(format!("exponent vector of length {} in {n} variables", e.len())));
            }
            let slot = acc.entry(e).or_insert_with(Gaussian::zero);
            *slot = slot.add(&c);
        }
        let monomials = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, c)| Monomial { exps, re: c.re, im: c.im })
            .collect();
        Ok(GaussianPoly { monomials })
    }

    pub fn degree(&self) -> u32 {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Gaussian]) -> Gaussian {
        let mut total = Gaussian::zero();
        for m in &self.monomials {
            let mut t = m.coeff();
            for (xi, &e) in x.iter().zip(&m.exps) {
                for _ in 0..e {
                    t = t.mul(xi);
                }
            }
            total = total.add(&t);
        }
        total
    }

    fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.monomials.iter().flat_map(|m| m.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// `{"n": k, "polys": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct System {
    pub n: usize,
    pub polys: Vec<GaussianPoly>,
}

impl System {
    pub fn new(n: usize, polys: Vec<GaussianPoly>) -> Result<Self> {
        let s = System { n, polys };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<()> {
        for p in &self.polys {
            if let Some(m) = p.monomials.iter().find(|m| m.exps.len() != self.n) {
                return Err(Error::ShapeMismatch(format!(
                    "exponent vector of length {} in a system of {} variables",
                    m.exps.len(),
                    self.n
                )));
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.polys.iter().map(GaussianPoly::degree).max().unwrap_or(0)
    }

    pub fn vanishes_at(&self, x: &[Gaussian]) -> bool {
        x.len() == self.n && self.polys.iter().all(|p| p.eval(x).is_zero())
    }
}

/// A system of degree ≤ 2 and the definitions of its fresh variables:
/// `fresh[k] = (a, b)` means variable `n + k` stands for `X_a·X_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub system: System,
    pub original_vars: usize,
    pub fresh: Vec<(usize, usize)>,
}

impl Normalized {
    /// Extends a solution of the original system by the fresh variables.
    pub fn extend(&self, x: &[Gaussian]) -> Vec<Gaussian> {
        let mut out = x.to_vec();
        for &(a, b) in &self.fresh {
            let v = out[a].mul(&out[b]);
            out.push(v);
        }
        out
    }

    pub fn extend_fractions(&self, x: &[GaussianFraction]) -> Vec<GaussianFraction> {
        let mut out = x.to_vec();
        for &(a, b) in &self.fresh {
            let v = out[a].mul(&out[b]);
            out.push(v);
        }
        out
    }

    /// Degree of each variable as a monomial in the original ones.
    pub fn weights(&self) -> Vec<u32> {
        let mut w = vec![1; self.original_vars];
        for &(a, b) in &self.fresh {
            let v = w[a] + w[b];
            w.push(v);
        }
        w
    }
}

/// Repeatedly replaces the first two factors of a monomial of degree > 2 by a
/// fresh variable `X_m`, adding `X_m − X_a·X_b` to the system.
pub fn normalize_degree2(system: &System) -> Result<Normalized> {
    system.check()?;
    let mut n = system.n;
    let mut polys: Vec<Vec<(Vec<u32>, Gaussian)>> = system
        .polys
        .iter()
        .map(|p| p.monomials.iter().map(|m| (m.exps.clone(), m.coeff())).collect())
        .collect();
    let mut fresh = Vec::new();
    loop {
        let hit = polys
            .iter()
            .enumerate()
            .find_map(|(pi, p)| p.iter().position(|(e, _)| e.iter().sum::<u32>() > 2).map(|mi| (pi, mi)));
        let Some((pi, mi)) = hit else { break };
        let exps = polys[pi][mi].0.clone();
        let mut factors = exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize));
        let (a, b) = (factors.next().unwrap(), factors.next().unwrap());
        for p in polys.iter_mut() {
            for (e, _) in p.iter_mut() {
                e.push(0);
            }
        }
        let m = n;
        n += 1;
        let e = &mut polys[pi][mi].0;
        e[a] -= 1;
        e[b] -= 1;
        e[m] = 1;
        let mut def_x = vec![0u32; n];
        def_x[m] = 1;
        let mut def_ab = vec![0u32; n];
        def_ab[a] += 1;
        def_ab[b] += 1;
        polys.push(vec![(def_x, Gaussian::one()), (def_ab, Gaussian::new(-1, 0))]);
        fresh.push((a, b));
    }
    let polys = polys.into_iter().map(|p| GaussianPoly::from_terms(n, p)).collect::<Result<Vec<_>>>()?;
    Ok(Normalized { system: System::new(n, polys)?, original_vars: system.n, fresh })
}

/// Gaussian integers of norm at most `bound`, in a fixed order.
pub fn gaussians_up_to(bound: u64) -> Vec<Gaussian> {
    let r = (bound as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            if ((re * re + im * im) as u64) <= bound {
                out.push(Gaussian::new(re, im));
            }
        }
    }
    out.sort_by_key(|g| (g.norm(), g.re.clone(), g.im.clone()));
    out
}

/// Searches for a common zero with `N(x_j) ≤ bounds[j]`. A polynomial that
/// is linear in its only unassigned variable fixes that variable instead of
/// branching.
pub fn brute_force(system: &System, bounds: &[u64]) -> Result<Option<Vec<Gaussian>>> {
    system.check()?;
    if bounds.len() != system.n {
        return Err(Error::ShapeMismatch(format!("{} bounds for {} variables", bounds.len(), system.n)));
    }
    let vars: Vec<Vec<usize>> = system.polys.iter().map(GaussianPoly::variables).collect();
    let mut ranges: BTreeMap<u64, Vec<Gaussian>> = BTreeMap::new();
    for &b in bounds {
        ranges.entry(b).or_insert_with(|| gaussians_up_to(b));
    }
    let mut x: Vec<Option<Gaussian>> = vec![None; system.n];
    Ok(search(system, &vars, bounds, &ranges, &mut x))
}

fn search(
    system: &System,
    vars: &[Vec<usize>],
    bounds: &[u64],
    ranges: &BTreeMap<u64, Vec<Gaussian>>,
    x: &mut Vec<Option<Gaussian>>,
) -> Option<Vec<Gaussian>> {
    // Prune on fully assigned polynomials, and look for a forced variable.
    let mut forced = None;
    for (p, vs) in system.polys.iter().zip(vars) {
        let open: Vec<usize> = vs.iter().copied().filter(|&v| x[v].is_none()).collect();
        match open.len() {
            0 => {
                let full: Vec<Gaussian> = x.iter().map(|v| v.clone().unwrap_or_else(Gaussian::zero)).collect();
                if !p.eval(&full).is_zero() {
                    return None;
                }
            }
            1 if forced.is_none() && p.monomials.iter().all(|m| m.exps[open[0]] <= 1) => forced = Some((p, open[0])),
            _ => {}
        }
    }
    if let Some((p, v)) = forced {
        // p = c·X_v + d with everything else assigned.
        let mut c = Gaussian::zero();
        let mut d = Gaussian::zero();
        for m in &p.monomials {
            let mut t = m.coeff();
            for (i, &e) in m.exps.iter().enumerate() {
                if i != v {
                    for _ in 0..e {
                        t = t.mul(x[i].as_ref().unwrap());
                    }
                }
            }
            if m.exps[v] == 1 {
                c = c.add(&t);
            } else {
                d = d.add(&t);
            }
        }
        let candidates: Vec<Gaussian> = if c.is_zero() {
            if !d.is_zero() {
                return None;
            }
            ranges[&bounds[v]].clone()
        } else {
            match Gaussian::zero().sub(&d).div_exact(&c) {
                Some(val) if val.norm() <= BigInt::from(bounds[v]) => vec![val],
                _ => return None,
            }
        };
        return branch(system, vars, bounds, ranges, x, v, candidates);
    }
    match x.iter().position(Option::is_none) {
        None => Some(x.iter().map(|v| v.clone().unwrap()).collect()),
        Some(v) => {
            let candidates = ranges[&bounds[v]].clone();
            branch(system, vars, bounds, ranges, x, v, candidates)
        }
    }
}

fn branch(
    system: &System,
    vars: &[Vec<usize>],
    bounds: &[u64],
    ranges: &BTreeMap<u64, Vec<Gaussian>>,
    x: &mut Vec<Option<Gaussian>>,
    v: usize,
    candidates: Vec<Gaussian>,
) -> Option<Vec<Gaussian>> {
    for c in candidates {
        x[v] = Some(c);
        if let Some(sol) = search(system, vars, bounds, ranges, x) {
            x[v] = None;
            return Some(sol);
        }
    }
    x[v] = None;
    None
}

/// Where each Gaussian coordinate of `B'` sits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub n: usize,
    pub m: usize,
    /// `Z`-coordinate of the real part of `v_k`; imaginary part follows.
    pub v_offset: usize,
    pub w_offset: usize,
    pub congruence: String,
}

impl Layout {
    fn rank(&self) -> usize {
        2 * (1 + (self.n + 1) + self.m)
    }
}

#[derive(Clone, Debug)]
pub struct HtpOrder {
    /// The ambient `B' = Z[i] ⊕ V ⊕ W`.
    pub ambient: Order,
    /// `B` inside `B'`.
    pub order: SubOrder,
    pub layout: Layout,
    /// `C_k`, twice the matrix of the homogenized `k`-th quadratic form.
    pub forms: Vec<Vec<Vec<Gaussian>>>,
}

/// Gaussian coordinates of a vector of `B'`.
fn gauss_coords(x: &[BigInt]) -> Vec<Gaussian> {
    x.chunks(2).map(|c| Gaussian::new(c[0].clone(), c[1].clone())).collect()
}

fn flatten(g: &[Gaussian]) -> Row {
    g.iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect()
}

/// Homogenizes to degree 2 with `X_0` and returns `C_k` for each polynomial.
fn quadratic_forms(system: &System) -> Result<Vec<Vec<Vec<Gaussian>>>> {
    if system.degree() > 2 {
        return Err(Error::PreconditionFailed(format!(
            "system has degree {}; normalize it to degree 2 first",
            system.degree()
        )));
    }
    let n1 = system.n + 1;
    let mut forms = Vec::new();
    for p in &system.polys {
        let mut c = vec![vec![Gaussian::zero(); n1]; n1];
        for m in &p.monomials {
            let mut idx: Vec<usize> = m.exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i + 1).take(e as usize)).collect();
            while idx.len() < 2 {
                idx.insert(0, 0);
            }
            let (i, j) = (idx[0], idx[1]);
            let coeff = m.coeff();
            if i == j {
                c[i][i] = c[i][i].add(&coeff.scale(&BigInt::from(2)));
            } else {
                c[i][j] = c[i][j].add(&coeff);
                c[j][i] = c[j][i].add(&coeff);
            }
        }
        forms.push(c);
    }
    Ok(forms)
}

/// `x^T C y`.
fn bilinear(c: &[Vec<Gaussian>], x: &[Gaussian], y: &[Gaussian]) -> Gaussian {
    let mut acc = Gaussian::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            acc = acc.add(&xi.mul(&c[i][j]).mul(yj));
        }
    }
    acc
}

/// Builds `B'` and its suborder `B` for a system of degree at most 2.
pub fn build_order(system: &System) -> Result<HtpOrder> {
    system.check()?;
    let forms = quadratic_forms(system)?;
    let (n, m) = (system.n, system.polys.len());
    let layout = Layout {
        n,
        m,
        v_offset: 2,
        w_offset: 2 + 2 * (n + 1),
        congruence: "all coordinates except the first are congruent modulo 2".into(),
    };
    let rank = layout.rank();
    let gmul = |x: &[BigInt], y: &[BigInt]| -> Row {
        let (gx, gy) = (gauss_coords(x), gauss_coords(y));
        let (a, b, c) = (&gx[0], &gx[1..n + 2], &gx[n + 2..]);
        let (a2, b2, c2) = (&gy[0], &gy[1..n + 2], &gy[n + 2..]);
        let mut out = vec![a.mul(a2)];
        out.extend(b.iter().zip(b2).map(|(s, t)| a.mul(t).add(&a2.mul(s))));
        out.extend((0..m).map(|k| a.mul(&c2[k]).add(&a2.mul(&c[k])).add(&bilinear(&forms[k], b, b2))));
        flatten(&out)
    };
    let dense: Vec<Vec<Row>> =
        (0..rank).map(|i| (0..rank).map(|j| gmul(&unit_row(rank, i), &unit_row(rank, j))).collect()).collect();
    let ambient = validate_order(rank, dense, unit_row(rank, 0))?;
    let mut gens = vec![unit_row(rank, 0)];
    gens.extend((1..rank).map(|i| ambient.scalar_mul(&BigInt::from(2), &unit_row(rank, i))));
    gens.push((0..rank).map(|i| BigInt::from((i > 0) as i64)).collect());
    let lattice = Lattice::from_generators(rank, gens);
    let order = ambient.suborder(&lattice)?;
    order.order.validate()?;
    Ok(HtpOrder { ambient, order, layout, forms })
}

/// `X⁴ + 2X² + 1`.
pub fn target_polynomial() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, 0, 2, 0, 1])
}

/// A point of `Q(i)^n` as `z_j / d_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianFraction {
    #[serde(with = "crate::io::dec")]
    pub re: BigInt,
    #[serde(with = "crate::io::dec")]
    pub im: BigInt,
    #[serde(with = "crate::io::dec", default = "one")]
    pub den: BigInt,
}

fn one() -> BigInt {
    BigInt::one()
}

impl From<Gaussian> for GaussianFraction {
    fn from(g: Gaussian) -> Self {
        GaussianFraction { re: g.re, im: g.im, den: BigInt::one() }
    }
}

impl GaussianFraction {
    fn num(&self) -> Gaussian {
        Gaussian::new(self.re.clone(), self.im.clone())
    }

    pub fn mul(&self, o: &GaussianFraction) -> GaussianFraction {
        let n = self.num().mul(&o.num());
        GaussianFraction { re: n.re, im: n.im, den: &self.den * &o.den }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// `b = (b_0, …, b_n)`, all `≡ 1+i` modulo 2.
    pub b: Vec<Gaussian>,
    /// Coordinates in `B'`.
    #[serde(with = "crate::io::dec::vec")]
    pub ambient: Row,
    /// Coordinates in the basis of `B`.
    #[serde(with = "crate::io::dec::vec")]
    pub element: Row,
    pub verified: bool,
}

/// Turns a common zero of valuation 0 in every coordinate into a zero of
/// `(X²+1)²` in `B`.
pub fn witness_to_zero(htp: &HtpOrder, system: &System, x: &[GaussianFraction]) -> Result<Witness> {
    let n = htp.layout.n;
    if x.len() != n || system.n != n || system.polys.len() != htp.layout.m {
        return Err(Error::ShapeMismatch(format!("expected a system and solution in {n} variables")));
    }
    let mut dens = BigInt::one();
    for (j, xj) in x.iter().enumerate() {
        if !xj.den.is_positive() {
            return Err(Error::Malformed(format!("denominator of coordinate {j} must be positive")));
        }
        let nu_num = xj.num().nu().ok_or_else(|| Error::NotAUnitSolution(format!("coordinate {j} is zero")))?;
        let nu_den = 2 * xj.den.trailing_zeros().unwrap_or(0);
        if nu_num != nu_den {
            return Err(Error::NotAUnitSolution(format!("coordinate {j} has nonzero valuation at 1+i")));
        }
        dens = dens.lcm(&xj.den);
    }
    // y = dens·(1, x) is integral with every coordinate of the same valuation.
    let mut y = vec![Gaussian::new(dens.clone(), 0)];
    y.extend(x.iter().map(|xj| xj.num().scale(&(&dens / &xj.den))));
    let shift = BigInt::one() << dens.trailing_zeros().unwrap_or(0);
    let y: Vec<Gaussian> = y.iter().map(|g| Gaussian::new(&g.re / &shift, &g.im / &shift)).collect();
    for (k, c) in htp.forms.iter().enumerate() {
        if !bilinear(c, &y, &y).is_zero() {
            return Err(Error::NotAUnitSolution(format!("polynomial {k} does not vanish")));
        }
    }
    let b: Vec<Gaussian> = y.iter().map(|g| g.mul(&Gaussian::new(1, 1))).collect();
    let mut coords = vec![Gaussian::new(0, 1)];
    coords.extend(b.iter().cloned());
    coords.extend(std::iter::repeat(Gaussian::new(1, 1)).take(htp.layout.m));
    let ambient = flatten(&coords);
    let element = htp
        .order
        .from_ambient(&ambient)
        .ok_or_else(|| Error::NotASubring("witness left the congruence sublattice".into()))?;
    let verified = verify_certificate(&htp.order.order, &target_polynomial(), &element)?;
    Ok(Witness { b, ambient, element, verified })
}

/// Reads `x_j = b_j / b_0` off a zero of `(X²+1)²` in `B` whose scalar part
/// is `±i`.
pub fn read_solution(htp: &HtpOrder, element: &[BigInt]) -> Option<Vec<(Gaussian, Gaussian)>> {
    let g = gauss_coords(&htp.order.to_ambient(element));
    let b = &g[1..htp.layout.n + 2];
    if b[0].is_zero() {
        return None;
    }
    Some(b[1..].iter().map(|bj| (bj.clone(), b[0].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, terms: &[(&[u32], i64, i64)]) -> GaussianPoly {
        GaussianPoly::from_terms(n, terms.iter().map(|(e, r, i)| (e.to_vec(), Gaussian::new(*r, *i)))).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let s = System::new(1, vec![poly(1, &[(&[3], 1, 0), (&[0], -1, 0)])]).unwrap();
        let nm = normalize_degree2(&s).unwrap();
        assert_eq!(nm.fresh, vec![(0, 0)]);
        assert_eq!(nm.system.polys[0], poly(2, &[(&[1, 1], 1, 0), (&[0, 0], -1, 0)]));
        assert_eq!(nm.system.polys[1], poly(2, &[(&[0, 1], 1, 0), (&[2, 0], -1, 0)]));
        let s = System::new(3, vec![poly(3, &[(&[1, 1, 1], 1, 0)])]).unwrap();
        let nm = normalize_degree2(&s).unwrap();
        assert_eq!(nm.system.polys[0], poly(4, &[(&[0, 0, 1, 1], 1, 0)]));
        assert_eq!(nm.system.polys[1], poly(4, &[(&[0, 0, 0, 1], 1, 0), (&[1, 1, 0, 0], -1, 0)]));
        let q = System::new(2, vec![poly(2, &[(&[1, 1], 1, 0), (&[0, 0], 3, 1)])]).unwrap();
        assert_eq!(normalize_degree2(&q).unwrap().system, q);
    }

    #[test]
    fn order_shapes() {
        let h = build_order(&System::new(1, vec![]).unwrap()).unwrap();
        assert_eq!(h.ambient.rank(), 6);
        let v0 = unit_row(6, 2);
        assert!(h.ambient.is_zero_elem(&h.ambient.mul(&v0, &v0)));
        let s = System::new(1, vec![poly(1, &[(&[2], 1, 0), (&[0], -1, 0)])]).unwrap();
        let h = build_order(&s).unwrap();
        assert_eq!(h.ambient.rank(), 8);
        // X_1² − X_0²: C = diag(−2, 2).
        assert_eq!(h.forms[0][0][0], Gaussian::new(-2, 0));
        assert_eq!(h.forms[0][1][1], Gaussian::new(2, 0));
        assert!(h.forms[0][0][1].is_zero());
    }

    #[test]
    fn witnesses() {
        let s = System::new(1, vec![poly(1, &[(&[2], 1, 0), (&[0], 1, 0)])]).unwrap();
        let h = build_order(&s).unwrap();
        let w = witness_to_zero(&h, &s, &[Gaussian::new(0, 1).into()]).unwrap();
        assert!(w.verified);
        assert_eq!(w.b, vec![Gaussian::new(1, 1), Gaussian::new(-1, 1)]);
        let sol = read_solution(&h, &w.element).unwrap();
        assert_eq!(sol[0].0.div_exact(&sol[0].1), Some(Gaussian::new(0, 1)));

        let lin = System::new(1, vec![poly(1, &[(&[1], 1, 0), (&[0], -1, 0)])]).unwrap();
        let h = build_order(&lin).unwrap();
        assert!(witness_to_zero(&h, &lin, &[Gaussian::one().into()]).unwrap().verified);

        let four = System::new(1, vec![poly(1, &[(&[2], 1, 0), (&[0], -4, 0)])]).unwrap();
        let h = build_order(&four).unwrap();
        let r = witness_to_zero(&h, &four, &[Gaussian::new(2, 0).into()]);
        assert!(matches!(r, Err(Error::NotAUnitSolution(_))));
        // 2/2 is a unit but not a zero.
        let frac = GaussianFraction { re: 2.into(), im: 0.into(), den: 2.into() };
        assert!(witness_to_zero(&h, &four, &[frac]).is_err());
        let half = GaussianFraction { re: 1.into(), im: 0.into(), den: 3.into() };
        let third = System::new(1, vec![poly(1, &[(&[1], 3, 0), (&[0], -1, 0)])]).unwrap();
        let h = build_order(&third).unwrap();
        assert!(witness_to_zero(&h, &third, &[half]).unwrap().verified);
    }

    #[test]
    fn brute_force_agrees_after_normalizing() {
        let s = System::new(1, vec![poly(1, &[(&[3], 1, 0), (&[0], 0, 1)])]).unwrap();
        let nm = normalize_degree2(&s).unwrap();
        let before = brute_force(&s, &[25]).unwrap();
        let bounds: Vec<u64> = nm.weights().iter().map(|&w| 25u64.pow(w)).collect();
        let after = brute_force(&nm.system, &bounds).unwrap();
        assert_eq!(before, Some(vec![Gaussian::new(0, 1)]));
        let after = after.unwrap();
        assert!(s.vanishes_at(&after[..1]) && nm.system.vanishes_at(&after));
    }
}
