//! Splitting towers `A_{i+1} = A_i[X]/(f_i)` and the Z-rank of cubics.

use num_bigint::BigInt;

use super::IntPolynomial;
use crate::error::{Error, Result};
use crate::linalg::{unit_row, zero_row, Row};
use crate::order::{Order, Ring};
use crate::rootfind::roots_in_number_field;

pub const DEFAULT_RANK_CAP: usize = 24;

/// One level `(A_i, α_i, f_i)`; `f_i` has coefficients in `A_i`, ascending.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub order: Order,
    /// `None` at level 0.
    pub alpha: Option<Row>,
    pub f: Vec<Row>,
}

#[derive(Clone, Debug)]
pub struct SplittingTower {
    pub levels: Vec<TowerLevel>,
}

impl SplittingTower {
    pub fn top(&self) -> &TowerLevel {
        self.levels.last().expect("tower has level 0")
    }

    /// Embeds an element of `A_i` into `A_j`, `i ≤ j`. Basis vectors of
    /// `A_i` are the first `rank(A_i)` basis vectors of every later level.
    pub fn embed(&self, x: &[BigInt], j: usize) -> Row {
        let mut v = x.to_vec();
        v.resize(self.levels[j].order.rank(), BigInt::default());
        v
    }

    /// `α_1, …, α_i` as elements of `A_i`.
    pub fn alphas(&self, i: usize) -> Vec<Row> {
        (1..=i).map(|k| self.embed(self.levels[k].alpha.as_ref().unwrap(), i)).collect()
    }
}

/// Coefficients of `X^s mod g` for `s < 2·deg g − 1` (`g` monic over `A`).
fn reduced_powers(a: &Order, g: &[Row]) -> Vec<Vec<Row>> {
    let d = g.len() - 1;
    let n = a.rank();
    let mut out: Vec<Vec<Row>> = Vec::new();
    let mut cur: Vec<Row> = (0..d).map(|_| zero_row(n)).collect();
    if d > 0 {
        cur[0] = a.one();
    }
    for _ in 0..(2 * d).max(1) {
        out.push(cur.clone());
        // Multiply by X, then replace X^d with −Σ g_k X^k.
        let top = cur.pop().unwrap_or_else(|| zero_row(n));
        cur.insert(0, zero_row(n));
        for (k, c) in cur.iter_mut().enumerate() {
            let t = a.mul(&top, &g[k]);
            *c = a.sub(c, &t);
        }
    }
    out
}

/// `A[X]/(g)` for `g` monic over `A`; basis `e_j X^e` at index `j + n·e`.
fn extend(a: &Order, g: &[Row]) -> Order {
    let n = a.rank();
    let d = g.len() - 1;
    let m = n * d;
    let powers = reduced_powers(a, g);
    let base = a.dense_table();
    let mut dense = vec![vec![Vec::new(); m]; m];
    for e1 in 0..d {
        for e2 in 0..d {
            let xs = &powers[e1 + e2];
            for j1 in 0..n {
                for j2 in 0..n {
                    let ab = &base[j1][j2];
                    let mut row = zero_row(m);
                    for (e, r) in xs.iter().enumerate() {
                        let c = a.mul(ab, r);
                        for (j, v) in c.into_iter().enumerate() {
                            row[j + n * e] = v;
                        }
                    }
                    dense[j1 + n * e1][j2 + n * e2] = row;
                }
            }
        }
    }
    let mut unit = a.one();
    unit.resize(m, BigInt::default());
    Order::from_dense_unchecked(m, &dense, unit)
}

/// Builds `A_0 = Z, …, A_depth` for monic `f`.
pub fn splitting_tower(f: &IntPolynomial, depth: usize) -> Result<SplittingTower> {
    splitting_tower_capped(f, depth, DEFAULT_RANK_CAP)
}

pub fn splitting_tower_capped(f: &IntPolynomial, depth: usize, rank_cap: usize) -> Result<SplittingTower> {
    if !f.is_monic() {
        return Err(Error::PreconditionFailed(format!("{f} is not monic")));
    }
    let n = f.deg();
    if depth > n {
        return Err(Error::PreconditionFailed(format!("depth {depth} exceeds degree {n}")));
    }
    let mut rank = 1usize;
    for i in 0..depth {
        rank = rank.saturating_mul(n - i);
        if rank > rank_cap {
            return Err(Error::RankCapExceeded { rank, cap: rank_cap });
        }
    }
    let z = Order::integers();
    let f0: Vec<Row> = f.coeffs().iter().map(|c| vec![c.clone()]).collect();
    let mut levels = vec![TowerLevel { order: z, alpha: None, f: f0 }];
    for _ in 0..depth {
        let prev = levels.last().unwrap();
        let a = &prev.order;
        let next = extend(a, &prev.f);
        let r = a.rank();
        let m = next.rank();
        let alpha = if prev.f.len() > 2 {
            unit_row(m, r)
        } else {
            // Linear f_i: X = −f_i(0) in A_{i+1} = A_i.
            let mut v = a.sub(&a.zero(), &prev.f[0]);
            v.resize(m, BigInt::default());
            v
        };
        // Synthetic division of f_i by (X − α).
        let lifted: Vec<Row> = prev.f.iter().map(|c| {
            let mut v = c.clone();
            v.resize(m, BigInt::default());
            v
        }).collect();
        let d = lifted.len() - 1;
        let mut quot = vec![zero_row(m); d];
        let mut carry = lifted[d].clone();
        for k in (0..d).rev() {
            quot[k] = carry.clone();
            carry = next.add(&lifted[k], &next.mul(&carry, &alpha));
        }
        debug_assert!(carry.iter().all(|c| c == &BigInt::default()), "α is a root of f_i");
        levels.push(TowerLevel { order: next, alpha: Some(alpha), f: quot });
    }
    Ok(SplittingTower { levels })
}

/// Rank of the smallest `A_i` containing three zeros of a monic irreducible
/// cubic: 3 when `Z[X]/(f)` already does, 6 otherwise.
pub fn z_rank(f: &IntPolynomial) -> Result<usize> {
    if f.deg() != 3 || !f.is_monic() {
        return Err(Error::PreconditionFailed(format!("{f} is not a monic cubic")));
    }
    let roots = roots_in_number_field(f, f)?;
    let integral = roots.iter().filter(|r| r.iter().all(|c| c.is_integer())).count();
    Ok(if integral >= 3 { 3 } else { 6 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_zero_row;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_tower() {
        let t = splitting_tower(&p("X^2-2"), 2).unwrap();
        assert_eq!(t.levels[2].order.rank(), 2);
        let a2 = &t.levels[2].order;
        let [a1, a2v] = [t.alphas(2)[0].clone(), t.alphas(2)[1].clone()];
        assert_eq!(a2.add(&a1, &a2v), a2.zero());
        t.levels[2].order.validate().unwrap();
    }

    #[test]
    fn cubic_tower() {
        let f = p("X^3-3");
        let t = splitting_tower(&f, 2).unwrap();
        assert_eq!(t.levels[0].order.rank(), 1);
        assert_eq!(t.levels[1].order.rank(), 3);
        assert_eq!(t.levels[2].order.rank(), 6);
        let a2 = &t.levels[2].order;
        a2.validate().unwrap();
        for al in t.alphas(2) {
            assert!(is_zero_row(&a2.eval_poly(&f, &al)));
        }
        let t3 = splitting_tower(&f, 3).unwrap();
        assert_eq!(t3.top().order.rank(), 6);
        assert!(t3.top().f.len() == 1);
        assert_eq!(splitting_tower(&p("X^5-2"), 3).unwrap_err(), Error::RankCapExceeded { rank: 60, cap: 24 });
        assert_eq!(splitting_tower(&f, 0).unwrap().top().order.rank(), 1);
    }

    #[test]
    fn z_ranks() {
        assert_eq!(z_rank(&p("X^3-3X+1")).unwrap(), 3);
        assert_eq!(z_rank(&p("X^3-3")).unwrap(), 6);
        assert_eq!(z_rank(&p("X^3-9X+9")).unwrap(), 3);
    }
}
