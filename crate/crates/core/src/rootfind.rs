//! Zeros of integer polynomials in orders.
//!
//! `A ⊗ Q` is split into number fields with a primitive element, the roots
//! of `f` in each field are found from a Trager norm, and candidate tuples
//! are pulled back and tested for integrality. For non-reduced `A` and
//! separable `f` the roots of the reduced quotient are Newton-lifted through
//! the nilradical first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_row, qvec_mat, to_q_row, zero_row, Lattice, QMatrix, Row};
use crate::order::{Order, Ring, SubOrder};
use crate::poly::{factor_over_z_uncapped, squarefree_decomposition, IntPolynomial, QPoly, DEFAULT_DEGREE_CAP};

type Q = BigRational;
type QVec = Vec<BigRational>;

pub const DEFAULT_FIELD_DEGREE_CAP: usize = 24;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn is_zero_q(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn integral(v: &[Q]) -> Option<Row> {
    if v.iter().all(|c| c.is_integer()) {
        Some(v.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

/// A commutative finite-dimensional Q-algebra with dense structure constants.
#[derive(Clone, Debug)]
pub struct QAlgebra {
    dim: usize,
    table: Vec<Vec<QVec>>,
    unit: QVec,
}

impl QAlgebra {
    pub fn from_order(a: &Order) -> Self {
        QAlgebra { dim: a.rank(), table: a.to_q_table(), unit: to_q_row(&a.one()) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> QVec {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, a) in out.iter_mut().zip(&self.table[i][j]) {
                    if !a.is_zero() {
                        *o += &c * a;
                    }
                }
            }
        }
        out
    }

    /// Row `i` is `e_i · x`.
    pub fn mult_matrix(&self, x: &[Q]) -> QMatrix {
        let n = self.dim;
        let mut rows = vec![vec![Q::zero(); n]; n];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, row) in rows.iter_mut().enumerate() {
                for (o, a) in row.iter_mut().zip(&self.table[i][j]) {
                    if !a.is_zero() {
                        *o += xj * a;
                    }
                }
            }
        }
        QMatrix::from_rows(n, rows)
    }

    pub fn eval(&self, f: &QPoly, x: &[Q]) -> QVec {
        let mut acc = vec![Q::zero(); self.dim];
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            for (a, u) in acc.iter_mut().zip(&self.unit) {
                *a += c * u;
            }
        }
        acc
    }

    /// Solves `z·d = y`, if `d` is invertible.
    pub fn divide(&self, y: &[Q], d: &[Q]) -> Option<QVec> {
        self.mult_matrix(d).solve_left(y)
    }

    /// Basis of the kernel of the trace form, which is the nilradical.
    pub fn radical(&self) -> Vec<QVec> {
        let n = self.dim;
        let traces: QVec = (0..n)
            .map(|k| {
                let mut t = Q::zero();
                for i in 0..n {
                    t += &self.table[i][k][i];
                }
                t
            })
            .collect();
        let mut form = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let t: Q = self.table[i][j].iter().zip(&traces).map(|(a, b)| a * b).sum();
                form.set(i, j, t);
            }
        }
        form.left_kernel()
    }

    /// Quotient by an ideal given by a basis. Returns the quotient, a section
    /// (rows: quotient basis vectors in ambient coordinates) and the
    /// projection matrix (ambient coordinates to quotient coordinates).
    fn quotient(&self, ideal: &[QVec]) -> (QAlgebra, QMatrix, QMatrix) {
        let n = self.dim;
        let (_, pivots) = QMatrix::from_rows(n, ideal.to_vec()).rref();
        let complement: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let m = complement.len();
        let mut stacked: Vec<QVec> = complement
            .iter()
            .map(|&j| {
                let mut v = vec![Q::zero(); n];
                v[j] = Q::one();
                v
            })
            .collect();
        stacked.extend(ideal.iter().cloned());
        let inv = QMatrix::from_rows(n, stacked.clone()).inverse().expect("complement spans");
        let mut proj = QMatrix::zeros(n, m);
        for i in 0..n {
            for c in 0..m {
                proj.set(i, c, inv.get(i, c).clone());
            }
        }
        let section = QMatrix::from_rows(n, stacked[..m].to_vec());
        let table = (0..m)
            .map(|i| (0..m).map(|j| qvec_mat(&self.mul(section.row(i), section.row(j)), &proj)).collect())
            .collect();
        let unit = qvec_mat(&self.unit, &proj);
        (QAlgebra { dim: m, table, unit }, section, proj)
    }
}

/// `A ⊗ Q ≅ Π Q[X]/(g_i)`.
#[derive(Clone, Debug)]
pub struct EtaleDecomposition {
    /// Irreducible primitive integer polynomials, one per field factor.
    pub field_minpolys: Vec<IntPolynomial>,
    /// Rows: the power bases of the fields, concatenated, in algebra coordinates.
    pub iso: QMatrix,
    /// Inverse of `iso`.
    pub iso_inverse: QMatrix,
    /// Common denominator of the entries of `iso`.
    pub denominator: BigInt,
    /// The primitive element used, in algebra coordinates.
    pub primitive: QVec,
}

impl EtaleDecomposition {
    pub fn num_fields(&self) -> usize {
        self.field_minpolys.len()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.field_minpolys.len());
        let mut acc = 0;
        for g in &self.field_minpolys {
            off.push(acc);
            acc += g.deg();
        }
        off
    }

    /// Field coordinates of an algebra element.
    pub fn to_fields(&self, x: &[Q]) -> QVec {
        qvec_mat(x, &self.iso_inverse)
    }

    pub fn from_fields(&self, y: &[Q]) -> QVec {
        qvec_mat(y, &self.iso)
    }
}

fn is_squarefree_q(f: &QPoly) -> bool {
    f.gcd(&f.derivative()).deg() == 0
}

/// Decomposes a reduced Q-algebra into fields via a primitive element.
pub fn decompose_algebra(alg: &QAlgebra) -> Result<EtaleDecomposition> {
    let n = alg.dim;
    if n == 0 {
        return Ok(EtaleDecomposition {
            field_minpolys: Vec::new(),
            iso: QMatrix::zeros(0, 0),
            iso_inverse: QMatrix::zeros(0, 0),
            denominator: BigInt::one(),
            primitive: Vec::new(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut found = None;
    for attempt in 0..400 {
        let theta: QVec = if attempt < n {
            (0..n).map(|k| if k == attempt { Q::one() } else { Q::zero() }).collect()
        } else {
            let r = 1 + (attempt / (4 * n)) as i64;
            (0..n).map(|_| q(rng.gen_range(-r..=r))).collect()
        };
        let chi = QPoly::new(alg.mult_matrix(&theta).charpoly());
        if is_squarefree_q(&chi) {
            found = Some((theta, chi));
            break;
        }
    }
    let (theta, chi) = found.ok_or_else(|| Error::NotSupported("no primitive element found".into()))?;

    let fac = factor_over_z_uncapped(&chi.to_primitive_int())?;
    let field_minpolys: Vec<IntPolynomial> = fac.factors.iter().map(|(g, _)| g.clone()).collect();

    // Powers of θ span the algebra.
    let mut powers = Vec::with_capacity(n);
    let mut p = alg.unit.clone();
    for _ in 0..n {
        powers.push(p.clone());
        p = alg.mul(&p, &theta);
    }
    let pmat = QMatrix::from_rows(n, powers);

    let mut rows = Vec::with_capacity(n);
    let mut idempotents = Vec::new();
    for g in &field_minpolys {
        let gq = g.to_q();
        let h = chi.divrem(&gq).0;
        let (one, _s, t) = gq.ext_gcd(&h);
        debug_assert_eq!(one, QPoly::one());
        let e = t.mul(&h).rem(&chi);
        let mut xk = e.clone();
        let x = QPoly::new(vec![Q::zero(), Q::one()]);
        for k in 0..g.deg() {
            if k > 0 {
                xk = xk.mul(&x).rem(&chi);
            }
            let mut coeffs = xk.coeffs().to_vec();
            coeffs.resize(n, Q::zero());
            rows.push(qvec_mat(&coeffs, &pmat));
        }
        idempotents.push(rows[rows.len() - g.deg()].clone());
    }
    let iso = QMatrix::from_rows(n, rows);
    let iso_inverse = iso.inverse().ok_or_else(|| Error::NotSupported("decomposition map is singular".into()))?;

    // Idempotents are orthogonal and sum to 1; multiplication by each field
    // generator matches the companion action.
    let mut total = vec![Q::zero(); n];
    for (i, ei) in idempotents.iter().enumerate() {
        for (t, x) in total.iter_mut().zip(ei) {
            *t += x;
        }
        for ej in &idempotents[i + 1..] {
            assert!(is_zero_q(&alg.mul(ei, ej)), "idempotents not orthogonal");
        }
    }
    assert_eq!(total, alg.unit, "idempotents do not sum to 1");
    let decomposition = EtaleDecomposition {
        denominator: iso.rows().iter().flatten().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone())),
        field_minpolys,
        iso,
        iso_inverse,
        primitive: theta,
    };
    check_companion_action(alg, &decomposition);
    Ok(decomposition)
}

fn check_companion_action(alg: &QAlgebra, d: &EtaleDecomposition) {
    for (g, off) in d.field_minpolys.iter().zip(d.offsets()) {
        let deg = g.deg();
        let gm = g.to_q().monic();
        let gen = if deg > 1 { d.iso.row(off + 1).to_vec() } else { d.iso.row(off).iter().map(|x| x * -gm.coeff(0)).collect() };
        for k in 0..deg {
            let lhs = alg.mul(&gen, d.iso.row(off + k));
            let expect = if k + 1 < deg {
                d.iso.row(off + k + 1).to_vec()
            } else {
                let mut v = vec![Q::zero(); alg.dim];
                for j in 0..deg {
                    let c = -gm.coeff(j);
                    for (o, x) in v.iter_mut().zip(d.iso.row(off + j)) {
                        *o += &c * x;
                    }
                }
                v
            };
            assert_eq!(lhs, expect, "decomposition is not multiplicative");
        }
    }
}

/// Decomposition of `A ⊗ Q` for a reduced order.
pub fn decompose(a: &Order) -> Result<EtaleDecomposition> {
    if !a.is_reduced() {
        return Err(Error::NotReduced);
    }
    decompose_algebra(&QAlgebra::from_order(a))
}

/// Arithmetic in `Q[Y]/(g)` for monic irreducible `g`.
struct NumberField {
    modulus: QPoly,
}

type KPoly = Vec<QPoly>;

impl NumberField {
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.mul(b).rem(&self.modulus)
    }

    fn inv(&self, a: &QPoly) -> QPoly {
        let (g, s, _) = a.ext_gcd(&self.modulus);
        assert!(g.deg() == 0 && !g.is_zero(), "non-invertible field element");
        s.rem(&self.modulus)
    }

    fn trim(p: &mut KPoly) {
        while p.last().is_some_and(QPoly::is_zero) {
            p.pop();
        }
    }

    fn poly_mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![QPoly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&self.mul(x, y));
            }
        }
        Self::trim(&mut out);
        out
    }

    fn poly_rem(&self, a: &KPoly, d: &KPoly) -> KPoly {
        let mut r = a.clone();
        let dn = d.len() - 1;
        let inv = self.inv(&d[dn]);
        while r.len() > dn {
            let top = r.len() - 1;
            let c = self.mul(&r[top], &inv);
            for j in 0..=dn {
                r[top - dn + j] = r[top - dn + j].sub(&self.mul(&c, &d[j]));
            }
            Self::trim(&mut r);
        }
        r
    }

    fn poly_monic(&self, a: &KPoly) -> KPoly {
        let inv = self.inv(a.last().unwrap());
        a.iter().map(|c| self.mul(c, &inv)).collect()
    }

    fn poly_gcd(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        if a.is_empty() {
            a
        } else {
            self.poly_monic(&a)
        }
    }

    /// `h(X + s)` for `h` with rational coefficients and `s ∈ K`.
    fn shift(&self, h: &QPoly, s: &QPoly) -> KPoly {
        let lin = vec![s.clone(), QPoly::one()];
        let mut acc: KPoly = Vec::new();
        for c in h.coeffs().iter().rev() {
            acc = self.poly_mul(&acc, &lin);
            if acc.is_empty() {
                acc.push(QPoly::zero());
            }
            acc[0] = acc[0].add(&QPoly::constant(c.clone()));
            Self::trim(&mut acc);
        }
        acc
    }
}

/// Characteristic polynomial of `X + c·Y` on `Q[X,Y]/(f(X), g(Y))`, i.e. the
/// norm `Res_Y(g(Y), f(T − cY))` up to normalization.
fn trager_norm(f: &QPoly, g: &QPoly, c: i64) -> QPoly {
    let (m, d) = (f.deg(), g.deg());
    let n = m * d;
    let cq = q(c);
    let mut rows = vec![vec![Q::zero(); n]; n];
    for a in 0..m {
        for b in 0..d {
            let row = &mut rows[a * d + b];
            // X·X^a Y^b
            if a + 1 < m {
                row[(a + 1) * d + b] += Q::one();
            } else {
                for k in 0..m {
                    row[k * d + b] -= f.coeff(k);
                }
            }
            // c·Y·X^a Y^b
            if b + 1 < d {
                row[a * d + b + 1] += &cq;
            } else {
                for k in 0..d {
                    row[a * d + k] -= &cq * g.coeff(k);
                }
            }
        }
    }
    QPoly::new(QMatrix::from_rows(n, rows).charpoly())
}

fn cmp_qvec(a: &[Q], b: &[Q]) -> std::cmp::Ordering {
    a.iter().zip(b).map(|(x, y)| x.cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

/// All roots of `f` in `Q[X]/(g)` for irreducible `g`, as coordinate vectors
/// in the power basis, sorted lexicographically.
pub fn roots_in_number_field(f: &IntPolynomial, g: &IntPolynomial) -> Result<Vec<QVec>> {
    if f.deg() > DEFAULT_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: f.deg(), cap: DEFAULT_DEGREE_CAP });
    }
    if g.deg() > DEFAULT_FIELD_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: g.deg(), cap: DEFAULT_FIELD_DEGREE_CAP });
    }
    roots_in_field_uncapped(f, g)
}

fn roots_in_field_uncapped(f: &IntPolynomial, g: &IntPolynomial) -> Result<Vec<QVec>> {
    if f.is_zero() {
        return Err(Error::PreconditionFailed("zero polynomial has every element as a root".into()));
    }
    if g.deg() == 0 {
        return Err(Error::PreconditionFailed("field polynomial must have positive degree".into()));
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    // Roots of f are the roots of its squarefree part.
    let sqf = squarefree_decomposition(&f.primitive_part())
        .into_iter()
        .fold(IntPolynomial::one(), |acc, (h, _)| acc.mul(&h));
    let d = g.deg();
    let mut roots: Vec<QVec> = Vec::new();
    if d == 1 {
        for (h, _) in factor_over_z_uncapped(&sqf)?.factors {
            if h.deg() == 1 {
                roots.push(vec![Q::new(-h.coeff(0), h.coeff(1))]);
            }
        }
        roots.sort_by(|a, b| cmp_qvec(a, b));
        return Ok(roots);
    }
    let fq = sqf.to_q().monic();
    let gq = g.to_q().monic();
    let field = NumberField { modulus: gq.clone() };
    let mut c = 1i64;
    let norm = loop {
        let nrm = trager_norm(&fq, &gq, c);
        if is_squarefree_q(&nrm) {
            break nrm;
        }
        c = if c > 0 { -c } else { 1 - c };
        if c.abs() > 64 {
            return Err(Error::NotSupported("no separating shift for the norm".into()));
        }
    };
    let beta = QPoly::new(vec![Q::zero(), Q::one()]);
    let shift = beta.scale(&q(c));
    let f_k: KPoly = fq.coeffs().iter().map(|x| QPoly::constant(x.clone())).collect();
    for (h, _) in factor_over_z_uncapped(&norm.to_primitive_int())?.factors {
        if h.deg() != d {
            continue;
        }
        let hx = field.shift(&h.to_q(), &shift);
        let gcd = field.poly_gcd(&f_k, &hx);
        if gcd.len() != 2 {
            continue;
        }
        // gcd = X + r0, so the root is −r0.
        let r = QPoly::zero().sub(&gcd[0]);
        let mut coords = r.coeffs().to_vec();
        coords.resize(d, Q::zero());
        roots.push(coords);
    }
    roots.sort_by(|a, b| cmp_qvec(a, b));
    roots.dedup();
    Ok(roots)
}

/// Result of a zero-set computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSet {
    pub nonempty: bool,
    /// Sorted lexicographically. When `all` is set this holds just `0`.
    pub zeros: Vec<Row>,
    /// Every element is a zero (the zero polynomial).
    pub all: bool,
}

impl ZeroSet {
    fn finite(mut zeros: Vec<Row>) -> Self {
        zeros.sort();
        zeros.dedup();
        ZeroSet { nonempty: !zeros.is_empty(), zeros, all: false }
    }
}

/// The complete zero set `Z_A(f)`.
pub fn zeros_in_order(a: &Order, f: &IntPolynomial) -> Result<ZeroSet> {
    let n = a.rank();
    if f.is_zero() {
        return Ok(ZeroSet { nonempty: true, zeros: vec![zero_row(n)], all: true });
    }
    if n == 0 {
        return Ok(ZeroSet::finite(vec![Vec::new()]));
    }
    if f.deg() == 0 {
        return Ok(ZeroSet::finite(Vec::new()));
    }
    if f.deg() > DEFAULT_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: f.deg(), cap: DEFAULT_DEGREE_CAP });
    }
    let alg = QAlgebra::from_order(a);
    let radical = alg.radical();
    if radical.is_empty() {
        let dec = decompose_algebra(&alg)?;
        let candidates = field_candidates(&dec, f)?;
        let zeros = candidates.into_iter().filter_map(|v| integral(&v)).collect();
        return Ok(ZeroSet::finite(zeros));
    }
    if !f.is_squarefree() {
        return Err(Error::NotSupported(
            "zeros of an inseparable polynomial in a non-reduced order".into(),
        ));
    }
    let (red, section, _proj) = alg.quotient(&radical);
    let dec = decompose_algebra(&red)?;
    let fq = f.to_q();
    let df = fq.derivative();
    let mut zeros = Vec::new();
    for cand in field_candidates(&dec, f)? {
        let mut x = qvec_mat(&cand, &section);
        let mut converged = false;
        for _ in 0..(2 * n + 4) {
            let y = alg.eval(&fq, &x);
            if is_zero_q(&y) {
                converged = true;
                break;
            }
            let dv = alg.eval(&df, &x);
            let z = alg.divide(&y, &dv).expect("derivative is a unit at a simple root");
            for (xi, zi) in x.iter_mut().zip(z) {
                *xi -= zi;
            }
        }
        assert!(converged, "Newton lift did not terminate");
        if let Some(v) = integral(&x) {
            zeros.push(v);
        }
    }
    Ok(ZeroSet::finite(zeros))
}

/// All tuples of field roots mapped into algebra coordinates.
fn field_candidates(dec: &EtaleDecomposition, f: &IntPolynomial) -> Result<Vec<QVec>> {
    let n = dec.iso.ncols();
    let mut partial: Vec<QVec> = vec![vec![Q::zero(); n]];
    for (g, off) in dec.field_minpolys.iter().zip(dec.offsets()) {
        let roots = roots_in_field_uncapped(f, g)?;
        if roots.is_empty() {
            return Ok(Vec::new());
        }
        let images: Vec<QVec> = roots
            .iter()
            .map(|r| {
                let mut v = vec![Q::zero(); n];
                for (k, c) in r.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, x) in v.iter_mut().zip(dec.iso.row(off + k)) {
                        *o += c * x;
                    }
                }
                v
            })
            .collect();
        let mut next = Vec::with_capacity(partial.len() * images.len());
        for p in &partial {
            for im in &images {
                next.push(p.iter().zip(im).map(|(a, b)| a + b).collect());
            }
        }
        partial = next;
    }
    Ok(partial)
}

/// `f(c) = 0` in `A`.
pub fn verify_certificate<R: Ring>(a: &R, f: &IntPolynomial, c: &[BigInt]) -> Result<bool> {
    if c.len() != a.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), got: c.len() });
    }
    Ok(is_zero_row(&a.eval_poly(f, c)))
}

/// `Z_{A^t}(f) = Z_A(f)^t`, given `Z_A(f)`.
pub fn zeros_in_power(zeros: &[Row], t: usize) -> Vec<Row> {
    let mut out: Vec<Row> = vec![Vec::new()];
    for _ in 0..t {
        let mut next = Vec::with_capacity(out.len() * zeros.len());
        for p in &out {
            for z in zeros {
                let mut v = p.clone();
                v.extend(z.iter().cloned());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Zeros in a sub-order of `A^t`: the zeros of `A^t` lying in its lattice,
/// in sub-order coordinates.
pub fn zeros_in_suborder(ambient_zeros: &[Row], t: usize, sub: &SubOrder) -> ZeroSet {
    let zeros = zeros_in_power(ambient_zeros, t).into_iter().filter_map(|z| sub.from_ambient(&z)).collect();
    ZeroSet::finite(zeros)
}

/// Like [`zeros_in_suborder`] but only reports membership in a lattice.
pub fn ambient_zeros_in_lattice(ambient_zeros: &[Row], t: usize, lattice: &Lattice) -> Vec<Row> {
    zeros_in_power(ambient_zeros, t).into_iter().filter(|z| lattice.contains(z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::row_from_i64;
    use crate::order::product_order;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn qv(v: &[i64]) -> QVec {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn decompositions() {
        let zi = Order::monogenic(&p("X^2+1")).unwrap();
        let d = decompose(&zi).unwrap();
        assert_eq!(d.field_minpolys, vec![p("X^2+1")]);
        let z2 = product_order(&Order::integers(), 2);
        let d = decompose(&z2).unwrap();
        assert_eq!(d.num_fields(), 2);
        assert!(d.field_minpolys.iter().all(|g| g.deg() == 1));
        let dual = Order::monogenic(&p("X^2")).unwrap();
        assert_eq!(decompose(&dual).unwrap_err(), Error::NotReduced);
    }

    #[test]
    fn field_roots() {
        let r = roots_in_number_field(&p("X^2+1"), &p("X^2+1")).unwrap();
        assert_eq!(r, vec![qv(&[0, -1]), qv(&[0, 1])]);
        let r = roots_in_number_field(&p("X^3-3"), &p("X^3-3")).unwrap();
        assert_eq!(r, vec![qv(&[0, 1, 0])]);
        let r = roots_in_number_field(&p("X^3-3X+1"), &p("X^3-3X+1")).unwrap();
        let mut expect = vec![qv(&[0, 1, 0]), qv(&[-2, 0, 1]), qv(&[2, -1, -1])];
        expect.sort_by(|a, b| cmp_qvec(a, b));
        assert_eq!(r, expect);
        assert!(roots_in_number_field(&p("X^2-2"), &p("X^2+1")).unwrap().is_empty());
        let r = roots_in_number_field(&p("4X^2-1"), &p("X-5")).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn zero_sets() {
        let zi = Order::monogenic(&p("X^2+1")).unwrap();
        let z = zeros_in_order(&zi, &p("X^2+1")).unwrap();
        assert_eq!(z.zeros, vec![row_from_i64(&[0, -1]), row_from_i64(&[0, 1])]);
        assert!(!zeros_in_order(&Order::integers(), &p("X^2+1")).unwrap().nonempty);
        assert!(verify_certificate(&zi, &p("X^2+1"), &row_from_i64(&[0, 1])).unwrap());
        assert!(!verify_certificate(&zi, &p("X^2+1"), &row_from_i64(&[1, 1])).unwrap());
        // Z[√2/... ] style: roots in Q(i) that are not integral.
        let z = zeros_in_order(&zi, &p("4X^2+1")).unwrap();
        assert!(!z.nonempty);
    }

    #[test]
    fn non_reduced_lift() {
        // Z[ε]/(ε²): X² − 1 has zeros ±1 only (ε-part must vanish).
        let dual = Order::monogenic(&p("X^2")).unwrap();
        let z = zeros_in_order(&dual, &p("X^2-1")).unwrap();
        assert_eq!(z.zeros, vec![row_from_i64(&[-1, 0]), row_from_i64(&[1, 0])]);
        // Inseparable f on a non-reduced order is refused.
        assert!(matches!(zeros_in_order(&dual, &p("X^2")), Err(Error::NotSupported(_))));
        // Z[X]/((X−1)²(X+1)) and f = X² − 1.
        let a = Order::monogenic(&p("X^3-X^2-X+1")).unwrap();
        let z = zeros_in_order(&a, &p("X^2-1")).unwrap();
        for c in &z.zeros {
            assert!(verify_certificate(&a, &p("X^2-1"), c).unwrap());
        }
        assert!(z.zeros.contains(&row_from_i64(&[1, 0, 0])));
        assert!(z.zeros.contains(&row_from_i64(&[-1, 0, 0])));
    }
}

#[cfg(test)]
mod tower_tests {
    use super::*;
    use crate::poly::splitting_tower;

    #[test]
    fn three_zeros_in_second_tower_level() {
        for s in ["X^3-3", "X^3+9"] {
            let f: IntPolynomial = s.parse().unwrap();
            let t = splitting_tower(&f, 2).unwrap();
            let z = zeros_in_order(&t.top().order, &f).unwrap();
            assert_eq!(z.zeros.len(), 3, "{s}");
            for al in t.alphas(2) {
                assert!(z.zeros.contains(&al));
            }
        }
    }
}
