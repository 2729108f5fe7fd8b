//! Orders given by structure constants, finite quotient rings, ring
//! homomorphisms between them, subring closure and preimage orders.
//!
//! Elements are coordinate rows. Homomorphisms are matrices acting on rows
//! from the right, in line with [`crate::linalg`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    clear_denominators, is_zero_row, preimage, snf, unit_row, vec_mat, zero_row, IntMatrix, Lattice, QMatrix, Row,
};
use crate::poly::IntPolynomial;

/// An element of an order or finite ring, as coordinates in its basis.
pub type OrderElement = Row;

/// Sparse structure constants: entry `i·n + j` lists the nonzero `(k, a_ijk)`.
type Table = Vec<Vec<(usize, BigInt)>>;

fn sparse_from_dense(n: usize, dense: &[Vec<Row>]) -> Table {
    let mut t = Vec::with_capacity(n * n);
    for row in dense {
        for prod in row {
            t.push(prod.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect());
        }
    }
    t
}

fn mul_sparse(n: usize, table: &Table, x: &[BigInt], y: &[BigInt]) -> Row {
    let mut out = zero_row(n);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let entries = &table[i * n + j];
            if entries.is_empty() {
                continue;
            }
            let c = xi * yj;
            for (k, a) in entries {
                out[*k] += &c * a;
            }
        }
    }
    out
}

/// Operations shared by orders and finite rings.
pub trait Ring {
    fn rank(&self) -> usize;
    fn one(&self) -> Row;
    fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Row;
    /// Canonical representative (identity for orders).
    fn reduce(&self, x: Row) -> Row;
    /// Additive orders of the coordinates, `None` for free modules.
    fn moduli(&self) -> Option<&[BigInt]>;

    fn zero(&self) -> Row {
        zero_row(self.rank())
    }

    fn add(&self, x: &[BigInt], y: &[BigInt]) -> Row {
        self.reduce(x.iter().zip(y).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, x: &[BigInt], y: &[BigInt]) -> Row {
        self.reduce(x.iter().zip(y).map(|(a, b)| a - b).collect())
    }

    fn scalar_mul(&self, k: &BigInt, x: &[BigInt]) -> Row {
        self.reduce(x.iter().map(|a| a * k).collect())
    }

    fn basis_element(&self, i: usize) -> Row {
        self.reduce(unit_row(self.rank(), i))
    }

    fn pow(&self, x: &[BigInt], e: u32) -> Row {
        let mut result = self.one();
        let mut base = x.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn is_zero_elem(&self, x: &[BigInt]) -> bool {
        is_zero_row(&self.reduce(x.to_vec()))
    }

    fn elem_eq(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.is_zero_elem(&self.sub(x, y))
    }

    /// Horner evaluation of an integer polynomial.
    fn eval_poly(&self, f: &IntPolynomial, x: &[BigInt]) -> Row {
        let one = self.one();
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scalar_mul(c, &one));
        }
        acc
    }

    /// The lattice of relations among coordinates (zero for orders).
    fn relation_lattice(&self) -> Lattice {
        match self.moduli() {
            Some(m) => Lattice::from_moduli(m),
            None => Lattice::zero(self.rank()),
        }
    }

    /// Dense structure constants `e_i·e_j`.
    fn dense_table(&self) -> Vec<Vec<Row>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.mul(&unit_row(n, i), &unit_row(n, j))).collect())
            .collect()
    }
}

/// A commutative unital ring, free of finite rank over Z, given by
/// structure constants and an explicit unit vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Order {
    rank: usize,
    table: Table,
    unit: Row,
}

fn check_shape(rank: usize, dense: &[Vec<Row>], unit: &[BigInt]) -> Result<()> {
    if dense.len() != rank || unit.len() != rank {
        return Err(Error::Malformed(format!("expected {rank} rows of structure constants and a unit of length {rank}")));
    }
    for row in dense {
        if row.len() != rank || row.iter().any(|v| v.len() != rank) {
            return Err(Error::Malformed(format!("structure constants must be {rank}x{rank}x{rank}")));
        }
    }
    Ok(())
}

/// Checks commutativity, the unit law and associativity (in that order) of a
/// multiplication table, reporting the first violation with its basis indices.
fn check_axioms<R: Ring>(r: &R, dense: &[Vec<Row>]) -> Result<()> {
    let n = r.rank();
    for i in 0..n {
        for j in i + 1..n {
            if !r.elem_eq(&dense[i][j], &dense[j][i]) {
                return Err(Error::NotCommutative { i, j });
            }
        }
    }
    let unit = r.one();
    for i in 0..n {
        let e = unit_row(n, i);
        if !r.elem_eq(&r.mul(&unit, &e), &e) {
            return Err(Error::NoUnit);
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let left = r.mul(&dense[i][j], &unit_row(n, k));
                let right = r.mul(&unit_row(n, i), &dense[j][k]);
                if !r.elem_eq(&left, &right) {
                    return Err(Error::NotAssociative { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// Verifies the ring axioms and returns the order.
pub fn validate_order(rank: usize, dense: Vec<Vec<Row>>, unit: Row) -> Result<Order> {
    check_shape(rank, &dense, &unit)?;
    let order = Order { rank, table: sparse_from_dense(rank, &dense), unit };
    check_axioms(&order, &dense)?;
    Ok(order)
}

impl Ring for Order {
    fn rank(&self) -> usize {
        self.rank
    }

    fn one(&self) -> Row {
        self.unit.clone()
    }

    fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Row {
        assert_eq!(x.len(), self.rank, "element rank mismatch");
        assert_eq!(y.len(), self.rank, "element rank mismatch");
        mul_sparse(self.rank, &self.table, x, y)
    }

    fn reduce(&self, x: Row) -> Row {
        x
    }

    fn moduli(&self) -> Option<&[BigInt]> {
        None
    }
}

impl Order {
    /// Builds an order without checking the axioms. Callers must guarantee them.
    pub fn from_dense_unchecked(rank: usize, dense: &[Vec<Row>], unit: Row) -> Order {
        Order { rank, table: sparse_from_dense(rank, dense), unit }
    }

    /// Re-checks the ring axioms of an already constructed order.
    pub fn validate(&self) -> Result<()> {
        check_axioms(self, &self.dense_table())
    }

    /// The integers as a rank-1 order.
    pub fn integers() -> Order {
        Self::from_dense_unchecked(1, &[vec![vec![BigInt::one()]]], vec![BigInt::one()])
    }

    /// The zero ring (rank 0). Every polynomial has the zero element as a zero.
    pub fn zero_ring() -> Order {
        Order { rank: 0, table: Vec::new(), unit: Vec::new() }
    }

    pub fn is_zero_ring(&self) -> bool {
        self.rank == 0
    }

    /// `Z[X]/(f)` for monic `f`, with basis `1, X, ..., X^{n-1}`.
    pub fn monogenic(f: &IntPolynomial) -> Result<Order> {
        if !f.is_monic() {
            return Err(Error::PreconditionFailed(format!("{f} is not monic")));
        }
        let n = f.deg();
        // Reduce X^k for k < 2n - 1 modulo f.
        let mut powers: Vec<Row> = Vec::with_capacity(2 * n);
        for k in 0..(2 * n).max(1) {
            let (_, r) = IntPolynomial::monomial(k).divrem_monic(f);
            let mut row = zero_row(n);
            for (i, c) in r.coeffs().iter().enumerate() {
                row[i] = c.clone();
            }
            powers.push(row);
        }
        let dense: Vec<Vec<Row>> = (0..n).map(|i| (0..n).map(|j| powers[i + j].clone()).collect()).collect();
        let unit = if n == 0 { Vec::new() } else { unit_row(n, 0) };
        Ok(Self::from_dense_unchecked(n, &dense, unit))
    }

    /// Direct product; coordinates are concatenated in the given order.
    pub fn product(factors: &[&Order]) -> Order {
        let n: usize = factors.iter().map(|a| a.rank).sum();
        let mut table: Table = vec![Vec::new(); n * n];
        let mut unit = Vec::with_capacity(n);
        let mut off = 0;
        for a in factors {
            for i in 0..a.rank {
                for j in 0..a.rank {
                    table[(off + i) * n + off + j] =
                        a.table[i * a.rank + j].iter().map(|(k, c)| (off + k, c.clone())).collect();
                }
            }
            unit.extend(a.unit.iter().cloned());
            off += a.rank;
        }
        Order { rank: n, table, unit }
    }

    /// Tensor product over Z; basis `e_i ⊗ f_j` at index `i·rank(B) + j`.
    pub fn tensor(a: &Order, b: &Order) -> Order {
        let (n, m) = (a.rank, b.rank);
        let nm = n * m;
        let mut table: Table = vec![Vec::new(); nm * nm];
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        let mut entries = Vec::new();
                        for (p, c) in &a.table[i * n + k] {
                            for (q, d) in &b.table[j * m + l] {
                                entries.push((p * m + q, c * d));
                            }
                        }
                        table[(i * m + j) * nm + k * m + l] = entries;
                    }
                }
            }
        }
        let mut unit = zero_row(nm);
        for (i, x) in a.unit.iter().enumerate() {
            for (j, y) in b.unit.iter().enumerate() {
                unit[i * m + j] = x * y;
            }
        }
        Order { rank: nm, table, unit }
    }

    /// Matrix of `y ↦ y·x`: row `i` holds `e_i·x`.
    pub fn mult_matrix(&self, x: &[BigInt]) -> IntMatrix {
        let n = self.rank;
        IntMatrix::from_rows(n, (0..n).map(|i| self.mul(&unit_row(n, i), x)).collect())
    }

    pub fn trace(&self, x: &[BigInt]) -> BigInt {
        let m = self.mult_matrix(x);
        (0..self.rank).map(|i| m.get(i, i).clone()).sum()
    }

    /// Characteristic polynomial of multiplication by `x`.
    pub fn charpoly(&self, x: &[BigInt]) -> IntPolynomial {
        IntPolynomial::new(self.mult_matrix(x).charpoly())
    }

    /// Rational structure constants, for algebra-level computations.
    pub fn to_q_table(&self) -> Vec<Vec<Vec<BigRational>>> {
        self.dense_table()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.into_iter().map(BigRational::from_integer).collect()).collect())
            .collect()
    }

    /// The sub-order spanned by a full-rank lattice that contains 1 and is
    /// closed under multiplication.
    pub fn suborder(&self, lattice: &Lattice) -> Result<SubOrder> {
        let n = self.rank;
        if lattice.dim() != n || lattice.rank() != n {
            return Err(Error::NotASubring("lattice is not of full rank".into()));
        }
        if !lattice.contains(&self.unit) {
            return Err(Error::NotASubring("lattice does not contain 1".into()));
        }
        let basis = lattice.basis();
        let mut dense = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = self.mul(&basis[i], &basis[j]);
                let coords = lattice
                    .coordinates(&prod)
                    .ok_or_else(|| Error::NotASubring(format!("product of basis vectors {i} and {j} leaves the lattice")))?;
                dense[j][i] = coords.clone();
                dense[i][j] = coords;
            }
        }
        let unit = lattice.coordinates(&self.unit).expect("checked above");
        Ok(SubOrder {
            order: Order::from_dense_unchecked(n, &dense, unit),
            embedding: lattice.basis_matrix(),
            lattice: lattice.clone(),
        })
    }

    /// Nondegeneracy of the rational trace form. A reduced order returns
    /// `Reduced`; otherwise a primitive integral nilpotent element is given.
    pub fn reducedness(&self) -> Reducedness {
        let n = self.rank;
        if n == 0 {
            return Reducedness::Reduced;
        }
        let traces: Vec<BigInt> = (0..n).map(|k| self.trace(&unit_row(n, k))).collect();
        let mut form = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let t: BigInt = self.table[i * n + j].iter().map(|(k, c)| c * &traces[*k]).sum();
                form.set(i, j, t);
            }
        }
        let ker = form.to_q().left_kernel();
        match ker.first() {
            None => Reducedness::Reduced,
            Some(v) => {
                let (_, row) = clear_denominators(v);
                let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                Reducedness::NotReduced { witness: row.into_iter().map(|x| x / &g).collect() }
            }
        }
    }

    pub fn is_reduced(&self) -> bool {
        matches!(self.reducedness(), Reducedness::Reduced)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reducedness {
    Reduced,
    NotReduced { witness: Row },
}

/// `A^t` with componentwise multiplication.
pub fn product_order(a: &Order, t: usize) -> Order {
    let copies: Vec<&Order> = std::iter::repeat(a).take(t).collect();
    Order::product(&copies)
}

/// Coordinates of the `c`-th factor inside a product of rank-`n` factors.
pub fn projection(x: &[BigInt], n: usize, c: usize) -> Row {
    x[c * n..(c + 1) * n].to_vec()
}

/// An order realized as a full-rank sublattice of an ambient order.
#[derive(Clone, Debug)]
pub struct SubOrder {
    pub order: Order,
    /// Rows are the new basis vectors in ambient coordinates.
    pub embedding: IntMatrix,
    pub lattice: Lattice,
}

impl SubOrder {
    pub fn to_ambient(&self, x: &[BigInt]) -> Row {
        vec_mat(x, &self.embedding)
    }

    pub fn from_ambient(&self, x: &[BigInt]) -> Option<Row> {
        self.lattice.coordinates(x)
    }
}

/// A finite commutative ring `⊕ Z/d_i` with structure constants reduced
/// modulo the target coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteRing {
    moduli: Vec<BigInt>,
    table: Table,
    unit: Row,
}

impl Ring for FiniteRing {
    fn rank(&self) -> usize {
        self.moduli.len()
    }

    fn one(&self) -> Row {
        self.unit.clone()
    }

    fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Row {
        self.reduce(mul_sparse(self.moduli.len(), &self.table, x, y))
    }

    fn reduce(&self, x: Row) -> Row {
        x.into_iter().zip(&self.moduli).map(|(a, d)| a.mod_floor(d)).collect()
    }

    fn moduli(&self) -> Option<&[BigInt]> {
        Some(&self.moduli)
    }
}

impl FiniteRing {
    /// Validates a finite ring: moduli >= 1, products well defined on the
    /// cyclic components, and the ring axioms modulo the moduli.
    pub fn new(moduli: Vec<BigInt>, dense: Vec<Vec<Row>>, unit: Row) -> Result<FiniteRing> {
        let r = moduli.len();
        check_shape(r, &dense, &unit)?;
        if moduli.iter().any(|d| !d.is_positive()) {
            return Err(Error::Malformed("component orders must be positive".into()));
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if !(&moduli[i] * &dense[i][j][k]).mod_floor(&moduli[k]).is_zero() {
                        return Err(Error::Malformed(format!(
                            "product e{i}*e{j} is not well defined modulo the component orders"
                        )));
                    }
                }
            }
        }
        let reduced: Vec<Vec<Row>> = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().zip(&moduli).map(|(a, d)| a.mod_floor(d)).collect())
                    .collect()
            })
            .collect();
        let ring = FiniteRing {
            table: sparse_from_dense(r, &reduced),
            unit: unit.into_iter().zip(&moduli).map(|(a, d)| a.mod_floor(d)).collect(),
            moduli,
        };
        check_axioms(&ring, &reduced)?;
        Ok(ring)
    }

    pub fn component_orders(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn cardinality(&self) -> BigInt {
        self.moduli.iter().product()
    }

    /// Every element, in lexicographic order of coordinates.
    pub fn elements(&self, cap: u64) -> Result<Vec<Row>> {
        let card = self.cardinality();
        if card > BigInt::from(cap) {
            return Err(Error::cap("finite ring enumeration", &card, cap));
        }
        let mut out = vec![Vec::new()];
        for d in &self.moduli {
            let mut next = Vec::new();
            for prefix in &out {
                let mut a = BigInt::zero();
                while &a < d {
                    let mut v: Row = prefix.clone();
                    v.push(a.clone());
                    next.push(v);
                    a += 1;
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Direct product of finite rings.
    pub fn product(factors: &[&FiniteRing]) -> FiniteRing {
        let n: usize = factors.iter().map(|a| a.rank()).sum();
        let mut table: Table = vec![Vec::new(); n * n];
        let mut unit = Vec::with_capacity(n);
        let mut moduli = Vec::with_capacity(n);
        let mut off = 0;
        for a in factors {
            let r = a.rank();
            for i in 0..r {
                for j in 0..r {
                    table[(off + i) * n + off + j] = a.table[i * r + j].iter().map(|(k, c)| (off + k, c.clone())).collect();
                }
            }
            unit.extend(a.unit.iter().cloned());
            moduli.extend(a.moduli.iter().cloned());
            off += r;
        }
        FiniteRing { moduli, table, unit }
    }

    pub fn power(&self, t: usize) -> FiniteRing {
        let copies: Vec<&FiniteRing> = std::iter::repeat(self).take(t).collect();
        Self::product(&copies)
    }
}

/// A ring homomorphism given by its matrix on coordinates (`x ↦ x·M`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    pub matrix: IntMatrix,
}

impl RingHom {
    pub fn new(matrix: IntMatrix) -> Self {
        RingHom { matrix }
    }

    pub fn apply<T: Ring>(&self, target: &T, x: &[BigInt]) -> Row {
        target.reduce(vec_mat(x, &self.matrix))
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> RingHom {
        RingHom { matrix: self.matrix.mul(&other.matrix) }
    }

    /// `φ^t: S^t → T^t` acting componentwise.
    pub fn power(&self, t: usize) -> RingHom {
        let (n, m) = (self.matrix.nrows(), self.matrix.ncols());
        let mut big = IntMatrix::zeros(n * t, m * t);
        for c in 0..t {
            for i in 0..n {
                for j in 0..m {
                    big.set(c * n + i, c * m + j, self.matrix.get(i, j).clone());
                }
            }
        }
        RingHom { matrix: big }
    }
}

/// Checks that `hom` is a unital ring homomorphism from `source` to `target`.
pub fn validate_hom<S: Ring, T: Ring>(source: &S, target: &T, hom: &RingHom) -> Result<()> {
    let (n, m) = (source.rank(), target.rank());
    if hom.matrix.nrows() != n || hom.matrix.ncols() != m {
        return Err(Error::ShapeMismatch(format!(
            "homomorphism matrix is {}x{}, expected {n}x{m}",
            hom.matrix.nrows(),
            hom.matrix.ncols()
        )));
    }
    // Well defined on the source's relations.
    if let Some(mods) = source.moduli() {
        for (i, d) in mods.iter().enumerate() {
            let img = hom.apply(target, &source.scalar_mul(d, &unit_row(n, i)));
            let direct = target.scalar_mul(d, &hom.apply(target, &unit_row(n, i)));
            if !target.is_zero_elem(&direct) || !target.is_zero_elem(&img) {
                return Err(Error::NotAHomomorphism(format!("relation on coordinate {i} is not respected")));
            }
        }
    }
    if !target.elem_eq(&hom.apply(target, &source.one()), &target.one()) {
        return Err(Error::NotAHomomorphism("1 is not mapped to 1".into()));
    }
    let images: Vec<Row> = (0..n).map(|i| hom.apply(target, &unit_row(n, i))).collect();
    for i in 0..n {
        for j in i..n {
            let lhs = hom.apply(target, &source.mul(&unit_row(n, i), &unit_row(n, j)));
            let rhs = target.mul(&images[i], &images[j]);
            if !target.elem_eq(&lhs, &rhs) {
                return Err(Error::NotAHomomorphism(format!("not multiplicative on (e{i}, e{j})")));
            }
        }
    }
    Ok(())
}

/// `A / I` where `I` is generated by `ideal_gens` and the integers in
/// `extra_integers`. Returns the quotient in Smith coordinates together with
/// the projection.
pub fn quotient_ring(a: &Order, ideal_gens: &[Row], extra_integers: &[BigInt]) -> Result<(FiniteRing, RingHom)> {
    let n = a.rank();
    // Principal ideals g·A are spanned by g·e_j, and sums of ideals are ideals.
    let mut gens: Vec<Row> = Vec::new();
    for g in ideal_gens {
        if g.len() != n {
            return Err(Error::RankMismatch { expected: n, got: g.len() });
        }
        for j in 0..n {
            gens.push(a.mul(g, &unit_row(n, j)));
        }
    }
    for m in extra_integers {
        for j in 0..n {
            gens.push(a.scalar_mul(m, &unit_row(n, j)));
        }
    }
    let ideal = Lattice::from_generators(n, gens);
    quotient_by_lattice(a, &ideal)
}

/// `A / I` for an ideal lattice `I` of full rank.
pub fn quotient_by_lattice(a: &Order, ideal: &Lattice) -> Result<(FiniteRing, RingHom)> {
    let n = a.rank();
    if ideal.rank() != n {
        return Err(Error::InfiniteIndex);
    }
    let (d, _u, v) = snf(&ideal.basis_matrix());
    let v_inv = v.to_q().inverse().expect("unimodular");
    let keep: Vec<usize> = (0..n).filter(|&i| !d.get(i, i).is_one()).collect();
    let moduli: Vec<BigInt> = keep.iter().map(|&i| d.get(i, i).clone()).collect();
    let mut proj = IntMatrix::zeros(n, keep.len());
    for i in 0..n {
        for (c, &k) in keep.iter().enumerate() {
            proj.set(i, c, v.get(i, k).clone());
        }
    }
    let hom = RingHom { matrix: proj };
    let lifts: Vec<Row> = keep
        .iter()
        .map(|&k| v_inv.row(k).iter().map(|q| q.to_integer()).collect())
        .collect();
    let reduce = |x: Row| -> Row { x.into_iter().zip(&moduli).map(|(a, d)| a.mod_floor(d)).collect() };
    let r = keep.len();
    let dense: Vec<Vec<Row>> = (0..r)
        .map(|i| (0..r).map(|j| reduce(vec_mat(&a.mul(&lifts[i], &lifts[j]), &hom.matrix))).collect())
        .collect();
    let unit = reduce(vec_mat(&a.one(), &hom.matrix));
    let ring = FiniteRing { table: sparse_from_dense(r, &dense), unit, moduli };
    Ok((ring, hom))
}

/// Additive lattice (in coordinates, including the relation lattice) of the
/// smallest unital subring of `ring` containing `gens`.
pub fn subring_generated<R: Ring>(ring: &R, gens: &[Row]) -> Lattice {
    let mut lat = ring.relation_lattice();
    lat.insert(&ring.one());
    for g in gens {
        lat.insert(g);
    }
    // Closing under multiplication by each generator yields the span of all
    // monomials in the generators.
    loop {
        let mut grew = false;
        let basis: Vec<Row> = lat.basis().to_vec();
        for b in &basis {
            for g in gens {
                let p = ring.mul(b, g);
                if lat.insert(&p) {
                    grew = true;
                }
            }
        }
        if !grew {
            return lat;
        }
    }
}

/// True if the lattice (containing the relations) is a unital subring.
pub fn is_subring<R: Ring>(ring: &R, lat: &Lattice) -> bool {
    if !lat.contains(&ring.one()) || !ring.relation_lattice().is_subset_of(lat) {
        return false;
    }
    let b = lat.basis();
    for i in 0..b.len() {
        for j in i..b.len() {
            if !lat.contains(&ring.mul(&b[i], &b[j])) {
                return false;
            }
        }
    }
    true
}

/// The inverse image in `ambient` of a subring of `target` under `hom`.
pub fn preimage_order(ambient: &Order, hom: &RingHom, target: &FiniteRing, sub: &Lattice) -> Result<SubOrder> {
    if !is_subring(target, sub) {
        return Err(Error::NotASubring("target lattice is not a unital subring".into()));
    }
    let lat = preimage(&hom.matrix, sub);
    ambient.suborder(&lat)
}

/// Element of `Q ⊗ A` given in rational coordinates; integral elements convert back.
pub fn integral_coords(v: &[BigRational]) -> Option<Row> {
    if v.iter().all(|c| c.is_integer()) {
        Some(v.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

/// Inverse of a unimodular or nonsingular integer matrix, over Q.
pub fn rational_inverse(m: &IntMatrix) -> Option<QMatrix> {
    m.to_q().inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::row_from_i64;

    fn gaussian() -> Order {
        Order::monogenic(&"X^2 + 1".parse().unwrap()).unwrap()
    }

    fn r(v: &[i64]) -> Row {
        row_from_i64(v)
    }

    #[test]
    fn validation_examples() {
        let g = gaussian();
        assert!(validate_order(2, g.dense_table(), g.one()).is_ok());
        let bad = vec![vec![r(&[1, 0]), r(&[0, 1])], vec![r(&[0, 0]), r(&[0, 0])]];
        assert_eq!(validate_order(2, bad, r(&[1, 0])), Err(Error::NotCommutative { i: 0, j: 1 }));
        let c = Order::monogenic(&"X^3 - 3".parse().unwrap()).unwrap();
        c.validate().unwrap();
        let e2 = c.basis_element(1);
        assert_eq!(c.pow(&e2, 3), r(&[3, 0, 0]));
        let no_unit = validate_order(2, g.dense_table(), r(&[0, 1]));
        assert_eq!(no_unit, Err(Error::NoUnit));
    }

    #[test]
    fn element_ops_and_eval() {
        let g = gaussian();
        assert_eq!(g.mul(&r(&[0, 1]), &r(&[0, 1])), r(&[-1, 0]));
        let f: IntPolynomial = "X^2 + 1".parse().unwrap();
        assert!(is_zero_row(&g.eval_poly(&f, &r(&[0, 1]))));
        assert_eq!(Order::integers().eval_poly(&f, &r(&[1])), r(&[2]));
        let c = Order::monogenic(&"X^3 - 3".parse().unwrap()).unwrap();
        assert!(is_zero_row(&c.eval_poly(&"X^3 - 3".parse().unwrap(), &r(&[0, 1, 0]))));
    }

    #[test]
    fn products() {
        let z2 = product_order(&Order::integers(), 2);
        assert_eq!(z2.mul(&r(&[1, 0]), &r(&[0, 1])), r(&[0, 0]));
        assert_eq!(product_order(&gaussian(), 3).rank(), 6);
        assert_eq!(product_order(&gaussian(), 1), gaussian());
        product_order(&gaussian(), 3).validate().unwrap();
    }

    #[test]
    fn quotients() {
        let (b, hom) = quotient_ring(&gaussian(), &[], &[BigInt::from(2)]).unwrap();
        assert_eq!(b.component_orders(), &[BigInt::from(2), BigInt::from(2)]);
        validate_hom(&gaussian(), &b, &hom).unwrap();

        let a = Order::monogenic(&"X^3 - 9X + 9".parse().unwrap()).unwrap();
        let alpha2 = a.pow(&a.basis_element(1), 2);
        let (b, hom) = quotient_ring(&a, &[a.scalar_mul(&BigInt::from(3), &alpha2)], &[BigInt::from(9)]).unwrap();
        assert_eq!(b.cardinality(), BigInt::from(243));
        let mut orders = b.component_orders().to_vec();
        orders.sort();
        assert_eq!(orders, vec![BigInt::from(3), BigInt::from(9), BigInt::from(9)]);
        validate_hom(&a, &b, &hom).unwrap();

        let p = Order::monogenic(&"X^3 - 3X^2 + 3".parse().unwrap()).unwrap();
        let a4 = p.pow(&p.basis_element(1), 4);
        let (b, hom) = quotient_ring(&p, &[a4], &[]).unwrap();
        assert_eq!(b.cardinality(), BigInt::from(81));
        validate_hom(&p, &b, &hom).unwrap();

        assert_eq!(quotient_ring(&gaussian(), &[r(&[0, 0])], &[]).unwrap_err(), Error::InfiniteIndex);
    }

    #[test]
    fn subrings_and_preimages() {
        let (b, hom) = quotient_ring(&gaussian(), &[], &[BigInt::from(2)]).unwrap();
        assert_eq!(subring_generated(&b, &[]), Lattice::from_generators(2, vec![r(&[1, 0]), r(&[0, 2])]));
        assert_eq!(subring_generated(&b, &[r(&[1, 0]), r(&[0, 1])]), Lattice::full(2));

        // Diagonal image of Z in (Z[i]/2)^2.
        let a2 = product_order(&gaussian(), 2);
        let b2 = b.power(2);
        let h2 = hom.power(2);
        validate_hom(&a2, &b2, &h2).unwrap();
        assert_eq!(subring_generated(&b2, &[]).index(), Some(BigInt::from(8)));
        let diag = subring_generated(&b2, &[r(&[1, 0, 1, 0]), r(&[0, 1, 0, 1])]);
        let sub = preimage_order(&a2, &h2, &b2, &diag).unwrap();
        assert_eq!(sub.order.rank(), 4);
        assert_eq!(sub.lattice.index(), Some(BigInt::from(4)));
        sub.order.validate().unwrap();
        assert!(sub.lattice.contains(&r(&[1, 1, 3, -1])));
        assert!(!sub.lattice.contains(&r(&[1, 0, 0, 0])));

        let no_unit = Lattice::from_generators(4, vec![r(&[0, 1, 0, 1])]).sum(&b2.relation_lattice());
        assert!(matches!(preimage_order(&a2, &h2, &b2, &no_unit), Err(Error::NotASubring(_))));
    }

    #[test]
    fn reducedness() {
        assert!(gaussian().is_reduced());
        let dual = Order::monogenic(&"X^2".parse().unwrap()).unwrap();
        assert_eq!(dual.reducedness(), Reducedness::NotReduced { witness: r(&[0, 1]) });
        assert!(Order::monogenic(&"X^3 - 3".parse().unwrap()).unwrap().is_reduced());
    }

    #[test]
    fn tensor_of_companions() {
        let w = Order::monogenic(&"X^2 + X + 1".parse().unwrap()).unwrap();
        let e = Order::monogenic(&"X^2".parse().unwrap()).unwrap();
        let t = Order::tensor(&w, &e);
        t.validate().unwrap();
        assert_eq!(t.rank(), 4);
        let eps = r(&[0, 1, 0, 0]);
        assert!(is_zero_row(&t.mul(&eps, &eps)));
    }
}
