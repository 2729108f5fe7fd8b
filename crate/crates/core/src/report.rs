//! The reproduction driver: every acceptance item in one deterministic run.
//!
//! The report itself never contains timings, so two runs with the same
//! configuration serialize to the same bytes; timings are returned beside it.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{factorize, is_square};
use crate::classify::{classify_poly, Status};
use crate::disc_search::{regenerate_tables, BASE_LEVELS, DEFAULT_DESCENT_STEPS, DEFAULT_XBOUND};
use crate::error::Result;
use crate::gadget::{classify as classify_module, theta, Flavor, FiniteModule, ModuleStatus, SubsetS};
use crate::htp::{brute_force, build_order, normalize_degree2, witness_to_zero, Gaussian, GaussianPoly, System};
use crate::linalg::{IntMatrix, Lattice, Row};
use crate::order::{rational_inverse, Order, Ring};
use crate::poly::{splitting_tower, IntPolynomial};
use crate::reductions::{cubic_z_rank, full_power_root, make_gadget, verify_reduction, GadgetFamily, Sweep};
use crate::rootfind::zeros_in_order;

#[derive(Clone, Debug, Serialize)]
pub struct ReproConfig {
    pub seed: u64,
    pub quadratic_bound: i64,
    pub cubic_bound: i64,
    pub max_t: usize,
    pub xbound: u64,
    pub lmax: u32,
    pub depressed_bound: i64,
    pub random_orders: usize,
    pub htp_systems: usize,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig {
            seed: 0,
            quadratic_bound: 100,
            cubic_bound: 30,
            max_t: 2,
            xbound: DEFAULT_XBOUND,
            lmax: BASE_LEVELS,
            depressed_bound: 200,
            random_orders: 200,
            htp_systems: 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemStatus {
    Pass,
    Fail,
    /// Failed, but the configuration was reduced below what the item needs.
    ExpectedFail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub id: u32,
    pub name: String,
    pub status: ItemStatus,
    pub checked: String,
    /// The first few disagreements.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: ReproConfig,
    pub items: Vec<Item>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.status == ItemStatus::Pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub id: u32,
    pub seconds: f64,
}

const MAX_LISTED: usize = 10;

struct Tally {
    checked: u64,
    failures: Vec<String>,
    total_failures: u64,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new(), total_failures: 0, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.total_failures += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }

    fn item(self, id: u32, name: &str) -> Item {
        let status = if self.total_failures == 0 { ItemStatus::Pass } else { ItemStatus::Fail };
        let mut notes = self.notes;
        if self.total_failures > 0 {
            notes.push(format!("{} failure(s)", self.total_failures));
        }
        Item { id, name: name.into(), status, checked: self.checked.to_string(), failures: self.failures, notes }
    }
}

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn quadratic_item(cfg: &ReproConfig) -> Result<Item> {
    let mut t = Tally::new();
    let r = cfg.quadratic_bound;
    for b in -r..=r {
        for c in -r..=r {
            let f = poly(&[c, b, 1]);
            let d = BigInt::from(b * b - 4 * c);
            let rule = d == BigInt::from(-4) || is_square(&d);
            let v = classify_poly(&f)?;
            let ok = v.status.in_p() == rule && (rule || v.status == Status::Npc);
            t.check(ok, || format!("{f}: {:?}, rule says in P = {rule}", v.status));
        }
    }
    Ok(t.item(1, "quadratic dichotomy"))
}

fn cubic_item(cfg: &ReproConfig) -> Result<Item> {
    let mut t = Tally::new();
    let r = cfg.cubic_bound;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let f = poly(&[c, b, a, 1]);
                let reducible = !f.integer_roots().is_empty();
                let v = classify_poly(&f)?;
                let ok = if reducible {
                    v.status == Status::Trivial
                } else {
                    v.status == Status::Npc && v.gadget.as_ref().is_some_and(|g| g.revalidate().is_ok())
                };
                t.check(ok, || format!("{f}: {:?} (reducible = {reducible})", v.status));
            }
        }
    }
    Ok(t.item(2, "cubic dichotomy"))
}

/// The six families of the oracle-equivalence sweep.
pub fn sweep_families() -> Vec<GadgetFamily> {
    let p = |s: &str| s.parse::<IntPolynomial>().expect("literal");
    vec![
        GadgetFamily::quad_even(2),
        GadgetFamily::X3Minus3 { f: p("X^3 - 3") },
        GadgetFamily::X3Minus3X2Plus3 { f: p("X^3 - 3X^2 + 3") },
        GadgetFamily::X3Minus9XPlus9 { f: p("X^3 - 9X + 9") },
        GadgetFamily::Zr6Tr9 { f: p("X^3 + 9") },
        GadgetFamily::GenXn { f: p("X^3 + 3X + 3"), p: 3 },
    ]
}

fn sweep_item(cfg: &ReproConfig) -> Result<Item> {
    let mut t = Tally::new();
    let sweep = Sweep { max_t: cfg.max_t, ..Sweep::default() };
    for fam in sweep_families() {
        let g = make_gadget(&fam)?;
        let r = verify_reduction(&g, &sweep)?;
        t.notes.push(format!(
            "{}: {} instances ({} yes, {} no), {} certificates, {} direct",
            r.gadget, r.instances, r.yes, r.no, r.certificates_checked, r.direct_checks
        ));
        t.checked += r.instances as u64 - r.failures.len() as u64;
        for f in &r.failures {
            t.check(false, || format!("{}: t = {}, H = {:?}, x* = {:?}", r.gadget, f.t, f.h_gens, f.x_star));
        }
    }
    Ok(t.item(3, "reduction oracle equivalence"))
}

fn root_count_item() -> Result<Item> {
    let mut t = Tally::new();
    for f in [poly(&[-3, 0, 0, 1]), poly(&[9, 0, 0, 1])] {
        let tower = splitting_tower(&f, 2)?;
        let n = zeros_in_order(&tower.top().order, &f)?.zeros.len();
        t.check(n == 3, || format!("{f}: {n} zeros in A_2"));
    }
    Ok(t.item(4, "three zeros in A_2"))
}

/// Rows of the first table as `(p, q, Galois order, least integral t)`.
pub const EXPECTED_TABLE1: [(&str, &str, u32, Option<u32>); 12] = [
    ("-1/3", "1/27", 3, Some(1)),
    ("-73/108", "595/2916", 1, None),
    ("-7/3", "37/27", 3, Some(1)),
    ("-1", "1/3", 3, Some(1)),
    ("-193/12", "2681/108", 2, None),
    ("0", "1/27", 2, Some(1)),
    ("-1/12", "7/108", 6, None),
    ("0", "1/9", 6, Some(1)),
    ("2/3", "7/27", 2, Some(1)),
    ("0", "1/3", 6, Some(1)),
    ("-3/4", "5/12", 6, None),
    ("-6", "17/3", 6, Some(1)),
];

pub const EXPECTED_TABLE2: [(&str, i64); 3] = [("X^3 - 3", -243), ("X^3 - 3X + 1", 81), ("X^3 - 9X + 9", 729)];

fn tables_item(cfg: &ReproConfig) -> Result<Item> {
    let mut t = Tally::new();
    let tables = regenerate_tables(cfg.xbound, cfg.lmax, DEFAULT_DESCENT_STEPS)?;
    let got: Vec<(String, String, u32, Option<u32>)> =
        tables.table1.iter().map(|r| (r.p.to_string(), r.q.to_string(), r.galois_order, r.integrality_threshold)).collect();
    let want: Vec<(String, String, u32, Option<u32>)> =
        EXPECTED_TABLE1.iter().map(|(p, q, g, th)| (p.to_string(), q.to_string(), *g, *th)).collect();
    t.check(got.len() == want.len(), || format!("{} rows, expected {}", got.len(), want.len()));
    for (i, w) in want.iter().enumerate() {
        t.check(got.get(i) == Some(w), || format!("row {}: got {:?}, expected {w:?}", i + 1, got.get(i)));
    }
    let got2: BTreeSet<(String, String)> = tables
        .table2
        .iter()
        .map(|e| (e.representative.clone().unwrap_or_else(|| e.polynomial.clone()), e.discriminant.to_string()))
        .collect();
    let want2: BTreeSet<(String, String)> = EXPECTED_TABLE2.iter().map(|(f, d)| (f.to_string(), d.to_string())).collect();
    t.check(got2 == want2, || format!("second table {got2:?}"));
    t.notes.push(format!("{} integral points with |x| <= {}", tables.points.len(), cfg.xbound));
    let mut item = t.item(5, "discriminant tables");
    if item.status == ItemStatus::Fail && cfg.xbound < DEFAULT_XBOUND {
        item.status = ItemStatus::ExpectedFail;
        item.notes.push(format!("partial coverage: xbound {} is below {}", cfg.xbound, DEFAULT_XBOUND));
    }
    Ok(item)
}

fn exact_multiplicity_two(f: &IntPolynomial, p: u64) -> bool {
    f.mod_p(p).roots_with_multiplicity().iter().any(|&(_, m)| m == 2)
}

fn search_properties_item(cfg: &ReproConfig) -> Result<Item> {
    let mut t = Tally::new();
    let r = cfg.depressed_bound;
    let (mut irreducible, mut rank3) = (0u64, 0u64);
    for p in -r..=r {
        for q in -r..=r {
            let f = poly(&[q, p, 0, 1]);
            if !f.integer_roots().is_empty() {
                continue;
            }
            irreducible += 1;
            let d = f.discriminant()?;
            let mut m = d.abs();
            while (&m % 2u32).is_zero() {
                m /= 2u32;
            }
            t.check(!m.is_one(), || format!("(a) {f} has discriminant {d}"));
            if !is_square(&d) || cubic_z_rank(&f)? != 3 {
                continue;
            }
            rank3 += 1;
            t.check(full_power_root(&f, 27).is_none(), || format!("(b) {f} has a triple zero modulo 27"));
            let primes = factorize(&d.abs()).map_err(|u| crate::Error::NeedsFactorization(u.0))?;
            for (pr, _) in primes {
                let pr = pr.to_u64().expect("small prime");
                t.check(!exact_multiplicity_two(&f, pr), || format!("(c) {f} has a double zero modulo {pr}"));
            }
        }
    }
    t.notes.push(format!("{irreducible} irreducible, {rank3} of Z-rank 3"));
    Ok(t.item(6, "search properties"))
}

fn theta_item() -> Result<Item> {
    let mut t = Tally::new();
    for n in [8i64, 9] {
        let g = FiniteModule::abelian(&[n]);
        for mask in 0u32..(1 << n) {
            let elems: Vec<Vec<i64>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vec![i]).collect();
            let s = SubsetS::new(&g, &elems)?;
            let th = theta(&g, &s);
            if mask & 1 == 1 {
                t.check(th.elements() == [vec![0]], || format!("Z/{n}, S = {elems:?}: theta = {:?}", th.elements()));
            } else {
                t.check(th == s, || format!("Z/{n}, S = {elems:?}: theta = {:?}", th.elements()));
            }
        }
    }
    let g = FiniteModule::abelian(&[8]);
    let s = SubsetS::new(&g, &[vec![1], vec![7]])?;
    let v = classify_module(&g, &s, Flavor::Pi);
    t.check(v.status == ModuleStatus::Npc, || format!("Z/8, {{1, 7}}: {:?}", v.status));
    Ok(t.item(7, "theta and coset semantics"))
}

/// A random reduced order of rank at most 4: a product of monogenic orders
/// of separable polynomials, sometimes shrunk to `Z + mA`.
pub fn random_reduced_order(rng: &mut ChaCha8Rng) -> Result<Order> {
    let rank = rng.gen_range(1..=4usize);
    let mut parts = Vec::new();
    let mut left = rank;
    while left > 0 {
        let d = rng.gen_range(1..=left);
        left -= d;
        loop {
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
            c.push(1);
            let g = poly(&c);
            if !g.discriminant()?.is_zero() {
                parts.push(Order::monogenic(&g)?);
                break;
            }
        }
    }
    let refs: Vec<&Order> = parts.iter().collect();
    let a = Order::product(&refs);
    let m = [1i64, 1, 2, 3][rng.gen_range(0..4)];
    if m == 1 || a.rank() == 1 {
        return Ok(a);
    }
    let mut gens = vec![a.one()];
    gens.extend((0..a.rank()).map(|i| a.scalar_mul(&BigInt::from(m), &a.basis_element(i))));
    Ok(a.suborder(&Lattice::from_generators(a.rank(), gens))?.order)
}

/// A random separable monic `f` of degree at most 4; half the time it is
/// built from a factor of a basis element's characteristic polynomial, so
/// that zeros exist more often.
pub fn random_separable(rng: &mut ChaCha8Rng, a: &Order) -> Result<IntPolynomial> {
    loop {
        let f = if rng.gen_bool(0.5) {
            let mut x: Row = (0..a.rank()).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
            if rng.gen_bool(0.5) {
                x = a.add(&x, &a.one());
            }
            let cp = a.charpoly(&x);
            if cp.deg() <= 4 {
                cp
            } else {
                continue;
            }
        } else {
            let d = rng.gen_range(1..=4usize);
            let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
            c.push(1);
            poly(&c)
        };
        if f.deg() >= 1 && !f.discriminant()?.is_zero() {
            return Ok(f);
        }
    }
}

/// Upper bounds on the coordinates of any zero of `f` in the reduced `a`:
/// every embedding sends a zero to a root of `f`, so `|Tr(x·e_i)| ≤ n·R_f·R_i`
/// with `R` root-modulus bounds, and the coordinates are `T⁻¹` of those traces.
pub fn zero_height_bounds(a: &Order, f: &IntPolynomial) -> Option<Vec<u64>> {
    let n = a.rank();
    let rf = root_bound(f);
    let ri: Vec<f64> = (0..n).map(|i| root_bound(&a.charpoly(&a.basis_element(i)))).collect();
    let gram: Vec<Row> =
        (0..n).map(|i| (0..n).map(|j| a.trace(&a.mul(&a.basis_element(i), &a.basis_element(j)))).collect()).collect();
    let inv = rational_inverse(&IntMatrix::from_rows(n, gram))?;
    Some(
        (0..n)
            .map(|k| {
                let s: f64 = (0..n).map(|i| inv.get(k, i).abs().to_f64().unwrap_or(f64::INFINITY) * n as f64 * rf * ri[i]).sum();
                (s * 1.000_001).floor() as u64
            })
            .collect(),
    )
}

/// Fujiwara's bound on the moduli of the complex roots.
fn root_bound(f: &IntPolynomial) -> f64 {
    let n = f.deg();
    let lc = f.lc().to_f64().unwrap().abs();
    (1..=n)
        .map(|k| {
            let c = f.coeff(n - k).to_f64().unwrap().abs() / lc;
            let c = if k == n { c / 2.0 } else { c };
            c.powf(1.0 / k as f64)
        })
        .fold(0.0, f64::max)
        * 2.0
        + 1e-9
}

/// All zeros with `|c_k| ≤ bounds[k]`, by direct evaluation.
pub fn height_search(a: &Order, f: &IntPolynomial, bounds: &[u64]) -> Vec<Row> {
    let n = a.rank();
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|&b| -(b as i64)).collect();
    loop {
        let row: Row = x.iter().map(|&v| BigInt::from(v)).collect();
        if a.is_zero_elem(&a.eval_poly(f, &row)) {
            out.push(row);
        }
        let mut k = 0;
        while k < n {
            if x[k] < bounds[k] as i64 {
                x[k] += 1;
                break;
            }
            x[k] = -(bounds[k] as i64);
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out.sort();
    out
}

/// Cap on the box searched per order.
pub const HEIGHT_BOX_CAP: u64 = 200_000;

fn rootfind_item(cfg: &ReproConfig) -> Result<Item> {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut done, mut skipped, mut nonempty) = (0, 0u64, 0u64);
    while done < cfg.random_orders {
        let a = random_reduced_order(&mut rng)?;
        let f = random_separable(&mut rng, &a)?;
        let Some(bounds) = zero_height_bounds(&a, &f) else { continue };
        let boxed = bounds.iter().try_fold(1u64, |acc, &b| acc.checked_mul(2 * b + 1));
        if boxed.is_none_or(|s| s > HEIGHT_BOX_CAP) {
            skipped += 1;
            continue;
        }
        done += 1;
        let found = zeros_in_order(&a, &f)?.zeros;
        let searched = height_search(&a, &f, &bounds);
        nonempty += (!found.is_empty()) as u64;
        t.check(found == searched, || format!("{f} over rank {}: {} vs {} zeros", a.rank(), found.len(), searched.len()));
    }
    t.notes.push(format!("{nonempty} with zeros; {skipped} draws skipped for a box above {HEIGHT_BOX_CAP}"));
    Ok(t.item(8, "root finder against height-bounded search"))
}

/// Units of `Z[i]` away from `1+i`, with small norm.
const UNITS: [(i64, i64); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 2), (2, -1), (-1, 2), (2, 1)];

/// A small system with a planted solution whose coordinates are units at `1+i`.
pub fn planted_system(rng: &mut ChaCha8Rng) -> Result<(System, Vec<Gaussian>)> {
    let n = rng.gen_range(1..=2usize);
    let x: Vec<Gaussian> = (0..n).map(|_| UNITS[rng.gen_range(0..UNITS.len())]).map(|(r, i)| Gaussian::new(r, i)).collect();
    let mut polys = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let mut e = vec![0u32; n];
            let deg = rng.gen_range(1..=3u32);
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            terms.push((e, Gaussian::new(rng.gen_range(-2..=2), rng.gen_range(-1..=1))));
        }
        let p = GaussianPoly::from_terms(n, terms.clone())?;
        let shift = p.eval(&x);
        terms.push((vec![0; n], Gaussian::zero().sub(&shift)));
        polys.push(GaussianPoly::from_terms(n, terms)?);
    }
    let s = System::new(n, polys)?;
    debug_assert!(s.vanishes_at(&x));
    Ok((s, x))
}

/// Norm bound of the bounded brute-force searches.
pub const HTP_NORM_BOUND: u64 = 25;

fn htp_item(cfg: &ReproConfig) -> Result<Item> {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x4854_5000);
    for k in 0..cfg.htp_systems {
        let (s, x) = planted_system(&mut rng)?;
        let nm = normalize_degree2(&s)?;
        let xs = nm.extend(&x);
        let b = build_order(&nm.system)?;
        let fractions: Vec<_> = xs.iter().cloned().map(Into::into).collect();
        let w = witness_to_zero(&b, &nm.system, &fractions)?;
        t.check(w.verified, || format!("system {k}: witness is not a zero"));
        let before = brute_force(&s, &vec![HTP_NORM_BOUND; s.n])?.is_some();
        let bounds: Vec<u64> = nm.weights().iter().map(|&w| HTP_NORM_BOUND.pow(w)).collect();
        let after = brute_force(&nm.system, &bounds)?;
        let after_ok = after.as_ref().is_some_and(|y| s.vanishes_at(&y[..s.n]));
        t.check(before && after_ok, || format!("system {k}: solvable before {before}, after {}", after.is_some()));
    }
    Ok(t.item(9, "HTP gadget forward soundness"))
}

/// Runs items 1 to 9; item 10 compares two runs and is left to the caller.
pub fn reproduce_all(cfg: &ReproConfig) -> Result<(Report, Vec<Timing>)> {
    type Run<'a> = Box<dyn Fn() -> Result<Item> + 'a>;
    let runs: Vec<(u32, Run)> = vec![
        (1, Box::new(|| quadratic_item(cfg))),
        (2, Box::new(|| cubic_item(cfg))),
        (3, Box::new(|| sweep_item(cfg))),
        (4, Box::new(root_count_item)),
        (5, Box::new(|| tables_item(cfg))),
        (6, Box::new(|| search_properties_item(cfg))),
        (7, Box::new(theta_item)),
        (8, Box::new(|| rootfind_item(cfg))),
        (9, Box::new(|| htp_item(cfg))),
    ];
    let mut items = Vec::new();
    let mut timings = Vec::new();
    for (id, run) in runs {
        let start = Instant::now();
        items.push(run()?);
        timings.push(Timing { id, seconds: start.elapsed().as_secs_f64() });
    }
    Ok((Report { config: cfg.clone(), items }, timings))
}
