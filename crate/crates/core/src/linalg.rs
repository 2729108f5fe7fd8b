//! Exact integer and rational linear algebra.
//!
//! Everything works with row vectors: a matrix with `r` rows generates the
//! lattice `{x·M : x ∈ Z^r}`, and linear maps act as `x ↦ x·M`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::ext_gcd;

pub type Row = Vec<BigInt>;

pub fn zero_row(n: usize) -> Row {
    vec![BigInt::zero(); n]
}

pub fn unit_row(n: usize, i: usize) -> Row {
    let mut r = zero_row(n);
    r[i] = BigInt::one();
    r
}

pub fn row_from_i64(v: &[i64]) -> Row {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn is_zero_row(r: &[BigInt]) -> bool {
    r.iter().all(Zero::is_zero)
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    // dst -= q * src
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Dense integer matrix stored as rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Row>,
    ncols: usize,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows.len(), self.ncols)?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { rows: vec![zero_row(ncols); nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix { rows: (0..n).map(|i| unit_row(n, i)).collect(), ncols: n }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Row>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        IntMatrix { rows, ncols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(ncols, rows.iter().map(|r| row_from_i64(r)).collect())
    }

    pub fn diag(d: &[BigInt]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.rows[i][i] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Row> {
        self.rows
    }

    pub fn push_row(&mut self, r: Row) {
        assert_eq!(r.len(), self.ncols);
        self.rows.push(r);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows(), "dimension mismatch");
        let rows = self.rows.iter().map(|r| vec_mat(r, other)).collect();
        IntMatrix { rows, ncols: other.ncols }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| is_zero_row(r))
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.ncols
            && self.rows.iter().enumerate().all(|(i, r)| {
                r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.nrows(), other.nrows());
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        IntMatrix { rows, ncols: self.ncols + other.ncols }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        IntMatrix { rows, ncols: self.ncols }
    }

    pub fn to_q(&self) -> QMatrix {
        QMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
                .collect(),
            ncols: self.ncols,
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.nrows(), self.ncols, "det of non-square matrix");
        bareiss_det(self.rows.clone())
    }

    /// Monic characteristic polynomial `det(X·I − M)`, coefficients low to high.
    pub fn charpoly(&self) -> Vec<BigInt> {
        self.to_q()
            .charpoly()
            .into_iter()
            .map(|c| {
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect()
    }
}

/// Row vector times matrix.
pub fn vec_mat(v: &[BigInt], m: &IntMatrix) -> Row {
    assert_eq!(v.len(), m.nrows(), "dimension mismatch");
    let mut out = zero_row(m.ncols());
    for (x, r) in v.iter().zip(m.rows()) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(r) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

pub fn bareiss_det(mut a: Vec<Row>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row-style Hermite normal form computed in place on `rows`.
///
/// Returns the pivot columns. Afterwards the first `pivots.len()` rows are the
/// nonzero HNF rows (positive pivots, entries above each pivot reduced into
/// `[0, pivot)`), and the remaining rows are zero. When `u` is given, the same
/// row operations are applied to it.
fn hnf_in_place(rows: &mut [Row], ncols: usize, mut u: Option<&mut Vec<Row>>) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        loop {
            // Smallest nonzero entry in column c among rows r.. becomes the pivot.
            let best = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            if let Some(u) = u.as_deref_mut() {
                u.swap(r, best);
            }
            let mut done = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[r]);
                if let Some(u) = u.as_deref_mut() {
                    let (uh, ut) = u.split_at_mut(i);
                    axpy(&mut ut[0], &q, &uh[r]);
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
            if let Some(u) = u.as_deref_mut() {
                for x in u[r].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            axpy(&mut head[i], &q, &tail[0]);
            if let Some(u) = u.as_deref_mut() {
                let (uh, ut) = u.split_at_mut(r);
                axpy(&mut uh[i], &q, &ut[0]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Hermite normal form with transform: returns `(H, U)` with `U·M = H`,
/// `U` unimodular and the zero rows of `H` at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut rows = m.rows.clone();
    let mut u = IntMatrix::identity(m.nrows()).rows;
    hnf_in_place(&mut rows, m.ncols, Some(&mut u));
    (IntMatrix { rows, ncols: m.ncols }, IntMatrix { rows: u, ncols: m.nrows() })
}

/// Nonzero rows of the Hermite normal form of the given generators.
pub fn hnf_rows(mut rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    let k = hnf_in_place(&mut rows, ncols, None).len();
    rows.truncate(k);
    rows
}

/// Smith normal form: returns `(D, U, V)` with `U·M·V = D`, `U`, `V`
/// unimodular and `D` diagonal with nonnegative entries `d_1 | d_2 | ...`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut a = m.rows.clone();
    let mut u = IntMatrix::identity(nr).rows;
    // V is tracked through its transpose so that column operations become row operations.
    let mut vt = IntMatrix::identity(nc).rows;
    for t in 0..nr.min(nc) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(a, u, vt, nc);
            };
            a.swap(t, bi);
            u.swap(t, bi);
            for r in a.iter_mut() {
                r.swap(t, bj);
            }
            vt.swap(t, bj);

            let mut clean = true;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (h, tl) = a.split_at_mut(i);
                axpy(&mut tl[0], &q, &h[t]);
                let (uh, ut) = u.split_at_mut(i);
                axpy(&mut ut[0], &q, &uh[t]);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for r in a.iter_mut() {
                    let s = r[t].clone();
                    if !s.is_zero() {
                        r[j] -= &q * s;
                    }
                }
                let (vh, vtl) = vt.split_at_mut(j);
                axpy(&mut vtl[0], &q, &vh[t]);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold an offending row in.
            let offending = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    let (h, tl) = a.split_at_mut(i);
                    axpy(&mut h[t], &BigInt::from(-1), &tl[0]);
                    let (uh, ut) = u.split_at_mut(i);
                    axpy(&mut uh[t], &BigInt::from(-1), &ut[0]);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish_snf(a, u, vt, nc)
}

fn finish_snf(a: Vec<Row>, u: Vec<Row>, vt: Vec<Row>, nc: usize) -> (IntMatrix, IntMatrix, IntMatrix) {
    let nr = a.len();
    let d = IntMatrix { rows: a, ncols: nc };
    let u = IntMatrix { rows: u, ncols: nr };
    let v = IntMatrix { rows: vt, ncols: nc }.transpose();
    (d, u, v)
}

/// A subgroup of `Z^n`, stored by its canonical HNF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Row>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Lattice { dim, basis: IntMatrix::identity(dim).rows }
    }

    pub fn from_generators(dim: usize, gens: Vec<Row>) -> Self {
        assert!(gens.iter().all(|g| g.len() == dim));
        Lattice { dim, basis: hnf_rows(gens, dim) }
    }

    /// `⊕ d_i Z`, with `d_i = 0` meaning the zero subgroup in that coordinate.
    pub fn from_moduli(moduli: &[BigInt]) -> Self {
        let n = moduli.len();
        let gens = moduli
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut r = zero_row(n);
                r[i] = d.abs();
                r
            })
            .collect();
        Lattice { dim: n, basis: gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix { rows: self.basis.clone(), ncols: self.dim }
    }

    fn pivot(r: &[BigInt]) -> usize {
        r.iter().position(|x| !x.is_zero()).expect("zero row in HNF basis")
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| Self::pivot(r)).collect()
    }

    /// Coordinates of `x` in the HNF basis, or `None` if `x` is not in the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Row> {
        assert_eq!(x.len(), self.dim);
        let mut v = x.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut col = 0;
        for b in &self.basis {
            let p = Self::pivot(b);
            if v[col..p].iter().any(|t| !t.is_zero()) {
                return None;
            }
            let (q, rem) = v[p].div_rem(&b[p]);
            if !rem.is_zero() {
                return None;
            }
            axpy(&mut v, &q, b);
            coords.push(q);
            col = p + 1;
        }
        if v[col..].iter().any(|t| !t.is_zero()) {
            return None;
        }
        Some(coords)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Canonical representative of `x` modulo the lattice: each pivot entry
    /// is reduced into `[0, pivot)`.
    pub fn reduce(&self, x: &[BigInt]) -> Row {
        let mut v = x.to_vec();
        for b in &self.basis {
            let p = Self::pivot(b);
            let q = v[p].div_floor(&b[p]);
            axpy(&mut v, &q, b);
        }
        v
    }

    /// Adds `v` to the generating set, keeping the basis in HNF.
    /// Returns `true` if the lattice grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        if is_zero_row(&v) {
            return false;
        }
        loop {
            let Some(c) = v.iter().position(|x| !x.is_zero()) else { break };
            match self.basis.iter().position(|b| Self::pivot(b) == c) {
                Some(k) => {
                    let b = &self.basis[k];
                    let (g, s, t) = ext_gcd(&b[c], &v[c]);
                    let bc = &b[c] / &g;
                    let vc = &v[c] / &g;
                    let new_b: Row = b.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                    let new_v: Row = b.iter().zip(&v).map(|(x, y)| &bc * y - &vc * x).collect();
                    self.basis[k] = new_b;
                    v = new_v;
                }
                None => {
                    if v[c].is_negative() {
                        for x in v.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    let at = self.basis.iter().position(|b| Self::pivot(b) > c).unwrap_or(self.basis.len());
                    self.basis.insert(at, v);
                    break;
                }
            }
        }
        self.normalize();
        true
    }

    fn normalize(&mut self) {
        for k in 0..self.basis.len() {
            let p = Self::pivot(&self.basis[k]);
            for i in 0..k {
                let q = self.basis[i][p].div_floor(&self.basis[k][p]);
                if q.is_zero() {
                    continue;
                }
                let (h, t) = self.basis.split_at_mut(k);
                axpy(&mut h[i], &q, &t[0]);
            }
        }
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.dim, gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut rows: Vec<Row> = self.basis.iter().map(|b| b.iter().chain(b).cloned().collect()).collect();
        rows.extend(other.basis.iter().map(|b| b.iter().cloned().chain(zero_row(n)).collect()));
        let h = hnf_rows(rows, 2 * n);
        let gens = h.into_iter().filter(|r| is_zero_row(&r[..n])).map(|r| r[n..].to_vec()).collect();
        Lattice::from_generators(n, gens)
    }

    pub fn is_subset_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Index `[Z^n : L]` for a full-rank lattice.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.dim {
            return None;
        }
        Some(self.basis.iter().enumerate().map(|(i, b)| b[i].clone()).product())
    }

    /// Image of the lattice under `x ↦ x·M`.
    pub fn image(&self, m: &IntMatrix) -> Lattice {
        assert_eq!(m.nrows(), self.dim);
        Lattice::from_generators(m.ncols(), self.basis.iter().map(|b| vec_mat(b, m)).collect())
    }
}

/// `{x ∈ Z^n : x·F mod moduli ∈ L}`. A modulus of 0 leaves that coordinate
/// unreduced.
pub fn preimage_lattice(f: &IntMatrix, l: &Lattice, moduli: &[BigInt]) -> Lattice {
    assert_eq!(moduli.len(), f.ncols(), "moduli length must match the target rank");
    preimage(f, &l.sum(&Lattice::from_moduli(moduli)))
}

/// `{x ∈ Z^n : x·F ∈ target}` for `F` with `n` rows.
pub fn preimage(f: &IntMatrix, target: &Lattice) -> Lattice {
    let (n, m) = (f.nrows(), f.ncols());
    assert_eq!(target.dim(), m);
    let mut rows: Vec<Row> = (0..n).map(|i| f.row(i).iter().cloned().chain(unit_row(n, i)).collect()).collect();
    rows.extend(target.basis().iter().map(|b| b.iter().cloned().chain(zero_row(n)).collect()));
    let h = hnf_rows(rows, m + n);
    let gens = h.into_iter().filter(|r| is_zero_row(&r[..m])).map(|r| r[m..].to_vec()).collect();
    Lattice::from_generators(n, gens)
}

/// Left kernel `{x ∈ Z^n : x·F = 0}`.
pub fn int_kernel(f: &IntMatrix) -> Lattice {
    preimage(f, &Lattice::zero(f.ncols()))
}

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: Vec<Vec<BigRational>>,
    ncols: usize,
}

impl QMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix { rows: vec![vec![BigRational::zero(); ncols]; nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols));
        QMatrix { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, other.nrows());
        QMatrix { rows: self.rows.iter().map(|r| qvec_mat(r, other)).collect(), ncols: other.ncols }
    }

    /// Reduced row echelon form; returns it with its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.rows.clone();
        let n = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].clone();
                let (lo, hi) = if i < r { a.split_at_mut(r) } else { a.split_at_mut(i) };
                let (dst, src) = if i < r { (&mut lo[i], &hi[0]) } else { (&mut hi[0], &lo[r]) };
                for (d, s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d -= &q * s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (QMatrix { rows: a, ncols: self.ncols }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.nrows();
        assert_eq!(n, self.ncols);
        let aug: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                v
            })
            .collect();
        let (red, piv) = QMatrix { rows: aug, ncols: 2 * n }.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(QMatrix { rows: red.rows.into_iter().map(|r| r[n..].to_vec()).collect(), ncols: n })
    }

    /// Basis of the left kernel `{x : x·M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<BigRational>> {
        let t = self.transpose();
        let (red, piv) = t.rref();
        let n = t.ncols;
        let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); n];
                v[f] = BigRational::one();
                for (r, &p) in piv.iter().enumerate() {
                    v[p] = -red.rows[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `x·M = b`, if one exists.
    pub fn solve_left(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.ncols);
        // x·M = b  ⇔  Mᵀ·xᵀ = bᵀ; augment Mᵀ with b as the last column.
        let t = self.transpose();
        let m = t.ncols;
        let aug: Vec<Vec<BigRational>> =
            t.rows.iter().zip(b).map(|(r, bi)| r.iter().cloned().chain(std::iter::once(bi.clone())).collect()).collect();
        let (red, piv) = QMatrix { rows: aug, ncols: m + 1 }.rref();
        if piv.last() == Some(&m) {
            return None;
        }
        let mut x = vec![BigRational::zero(); m];
        for (r, &p) in piv.iter().enumerate() {
            x[p] = red.rows[r][m].clone();
        }
        Some(x)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn det(&self) -> BigRational {
        let n = self.nrows();
        assert_eq!(n, self.ncols);
        let mut a = self.rows.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigRational::zero() };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            let inv = a[c][c].recip();
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = &a[i][c] * &inv;
                let (lo, hi) = a.split_at_mut(i);
                for (d, s) in hi[0].iter_mut().zip(&lo[c]) {
                    *d -= &q * s;
                }
            }
        }
        det
    }

    /// Monic characteristic polynomial, coefficients low to high, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<BigRational> {
        let n = self.nrows();
        assert_eq!(n, self.ncols);
        let mut h = self.rows.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else { continue };
            if i != m {
                h.swap(i, m);
                for r in h.iter_mut() {
                    r.swap(i, m);
                }
            }
            let t = h[m][m - 1].recip();
            for i in m + 1..n {
                if h[i][m - 1].is_zero() {
                    continue;
                }
                let u = &h[i][m - 1] * &t;
                let (lo, hi) = h.split_at_mut(i);
                for (d, s) in hi[0].iter_mut().zip(&lo[m]) {
                    *d -= &u * s;
                }
                for r in h.iter_mut() {
                    let s = r[i].clone();
                    r[m] += &u * s;
                }
            }
        }
        // p_{k+1} = (X − h_kk)·p_k − Σ_{i<k} h_ik·(Π_{j=i+1..k} h_{j,j−1})·p_i
        let mut ps: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
        for k in 0..n {
            let prev = &ps[k];
            let mut next = vec![BigRational::zero(); k + 2];
            for (e, c) in prev.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= &h[k][k] * c;
            }
            let mut t = BigRational::one();
            for i in (0..k).rev() {
                t *= &h[i + 1][i];
                if t.is_zero() {
                    break;
                }
                let coef = &h[i][k] * &t;
                if coef.is_zero() {
                    continue;
                }
                for (e, c) in ps[i].iter().enumerate() {
                    next[e] -= &coef * c;
                }
            }
            ps.push(next);
        }
        ps.pop().unwrap()
    }
}

pub fn qvec_mat(v: &[BigRational], m: &QMatrix) -> Vec<BigRational> {
    assert_eq!(v.len(), m.nrows());
    let mut out = vec![BigRational::zero(); m.ncols()];
    for (x, r) in v.iter().zip(m.rows()) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(r) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

pub fn to_q_row(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Clears denominators: returns `(d, d·v)` with `d > 0` minimal.
pub fn clear_denominators(v: &[BigRational]) -> (BigInt, Row) {
    let d = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let row = v.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect();
    (d, row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_small_example() {
        let (h, u) = hnf(&m(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(h.row(0), row_from_i64(&[1, 1]).as_slice());
        assert_eq!(h.row(1), row_from_i64(&[0, 2]).as_slice());
        assert!(is_zero_row(h.row(2)));
        assert_eq!(u.mul(&m(&[&[2, 0], &[0, 2], &[1, 1]])), h);
        assert_eq!(u.det().abs(), BigInt::one());
    }

    #[test]
    fn snf_diag() {
        let a = m(&[&[6, 0], &[0, 4]]);
        let (d, u, v) = snf(&a);
        assert_eq!(d, m(&[&[2, 0], &[0, 12]]));
        assert_eq!(u.mul(&a).mul(&v), d);
    }

    #[test]
    fn snf_rectangular() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (d, u, v) = snf(&a);
        assert_eq!(d, m(&[&[2, 0, 0], &[0, 6, 0], &[0, 0, 12]]));
        assert_eq!(u.mul(&a).mul(&v), d);
        let b = m(&[&[3, 6], &[9, 12], &[0, 5]]);
        let (d, u, v) = snf(&b);
        assert_eq!(u.mul(&b).mul(&v), d);
        assert_eq!(d, m(&[&[1, 0], &[0, 3], &[0, 0]]));
    }

    #[test]
    fn lattice_membership_and_insert() {
        let mut l = Lattice::from_generators(2, vec![row_from_i64(&[4, 0])]);
        assert!(!l.contains(&row_from_i64(&[2, 0])));
        assert!(l.insert(&row_from_i64(&[6, 0])));
        assert!(l.contains(&row_from_i64(&[2, 0])));
        assert!(l.insert(&row_from_i64(&[1, 3])));
        assert!(!l.insert(&row_from_i64(&[3, 9])));
        let direct = Lattice::from_generators(2, row_vec(&[&[4, 0], &[6, 0], &[1, 3]]));
        assert_eq!(l, direct);
        assert_eq!(l.basis(), &row_vec(&[&[1, 3], &[0, 6]])[..]);
        assert_eq!(l.index(), Some(BigInt::from(6)));
        l.insert(&row_from_i64(&[0, 4]));
        assert_eq!(l.index(), Some(BigInt::from(2)));
        assert_eq!(Lattice::from_generators(2, row_vec(&[&[1, 1]])).index(), None);
    }

    fn row_vec(rows: &[&[i64]]) -> Vec<Row> {
        rows.iter().map(|r| row_from_i64(r)).collect()
    }

    #[test]
    fn intersection_and_preimage() {
        let a = Lattice::from_generators(1, row_vec(&[&[4]]));
        let b = Lattice::from_generators(1, row_vec(&[&[6]]));
        assert_eq!(a.intersect(&b), Lattice::from_generators(1, row_vec(&[&[12]])));
        // x ↦ 3x modulo 9: preimage of 0 mod 9 is 3Z.
        let f = m(&[&[3]]);
        let pre = preimage_lattice(&f, &Lattice::zero(1), &[BigInt::from(9)]);
        assert_eq!(pre, Lattice::from_generators(1, row_vec(&[&[3]])));
        let two = preimage_lattice(&m(&[&[2]]), &Lattice::zero(1), &[BigInt::from(4)]);
        assert_eq!(two, Lattice::from_generators(1, row_vec(&[&[2]])));
        let all = preimage_lattice(&IntMatrix::zeros(2, 3), &Lattice::zero(3), &row_from_i64(&[5, 5, 5]));
        assert_eq!(all, Lattice::full(2));
        let k = int_kernel(&m(&[&[1, 2], &[2, 4], &[0, 1]]));
        assert_eq!(k, Lattice::from_generators(3, row_vec(&[&[2, -1, 0]])));
    }

    #[test]
    fn rational_charpoly_and_inverse() {
        // Companion matrix of X^3 - 3X + 1 (row convention: rows are images of 1, X, X^2).
        let c = m(&[&[0, 1, 0], &[0, 0, 1], &[-1, 3, 0]]);
        assert_eq!(c.charpoly(), row_from_i64(&[1, -3, 0, 1]));
        let q = c.to_q();
        let inv = q.inverse().unwrap();
        assert_eq!(q.mul(&inv), QMatrix::identity(3));
        assert_eq!(c.det(), BigInt::from(-1));
        assert_eq!(q.det(), BigRational::from_integer(BigInt::from(-1)));
        let sing = m(&[&[1, 2], &[2, 4]]).to_q();
        assert!(sing.inverse().is_none());
        assert_eq!(sing.left_kernel().len(), 1);
        let x = sing.solve_left(&to_q_row(&row_from_i64(&[3, 6]))).unwrap();
        assert_eq!(qvec_mat(&x, &sing), to_q_row(&row_from_i64(&[3, 6])));
        assert!(sing.solve_left(&to_q_row(&row_from_i64(&[1, 0]))).is_none());
    }

    #[test]
    fn charpoly_needs_pivot_swaps() {
        let a = m(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 2]]);
        let cp = a.charpoly();
        // Direct check: det(X·I − A) at several integer points.
        for x in -3i64..=3 {
            let mut xm = IntMatrix::identity(4);
            for i in 0..4 {
                for j in 0..4 {
                    let v = if i == j { BigInt::from(x) } else { BigInt::zero() } - a.get(i, j);
                    xm.set(i, j, v);
                }
            }
            let val: BigInt = cp.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
            assert_eq!(val, xm.det());
        }
    }
}
