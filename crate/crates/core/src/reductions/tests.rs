use super::*;
use crate::gadget::ModuleStatus;

fn p(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

fn quick() -> Sweep {
    Sweep { max_t: 1, ..Sweep::default() }
}

#[test]
fn quad_even_small_instances() {
    let g = make_gadget(&GadgetFamily::quad_even(2)).unwrap();
    assert_eq!(g.module().invariants(), &[8]);
    assert_eq!(g.verdict.status, ModuleStatus::Npc);
    let yes = build(&g, &ModuleProblemInstance::pi(g.module(), 1, vec![vec![1]])).unwrap();
    assert!(!yes.zeros_via_ambient(1000).unwrap().is_empty());
    let no = build(&g, &ModuleProblemInstance::pi(g.module(), 1, vec![vec![2]])).unwrap();
    assert!(no.zeros_via_ambient(1000).unwrap().is_empty());
}

#[test]
fn quad_even_sweep() {
    let g = make_gadget(&GadgetFamily::quad_even(2)).unwrap();
    let r = verify_reduction(&g, &quick()).unwrap();
    assert!(r.passed, "{:?}", r.failures);
}

#[test]
fn x3_9x_9_quotient_size() {
    let g = make_gadget(&GadgetFamily::X3Minus9XPlus9 { f: p("x^3 - 9x + 9") }).unwrap();
    assert_eq!(g.b.cardinality(), BigInt::from(243));
    assert_eq!(g.output_width(2), 5);
    let r = verify_reduction(&g, &quick()).unwrap();
    assert!(r.passed, "{:?}", r.failures);
}

#[test]
fn gen_xn_on_cyclotomic_quadratic() {
    let g = make_gadget(&GadgetFamily::GenXn { f: p("x^2 + x + 1"), p: 3 }).unwrap();
    assert_eq!(g.zeros.len(), 2);
    let r = verify_reduction(&g, &quick()).unwrap();
    assert!(r.passed, "{:?}", r.failures);
}

#[test]
fn x3_minus_3_images_match() {
    let g = make_gadget(&GadgetFamily::X3Minus3 { f: p("x^3 - 3") }).unwrap();
    assert_eq!(g.zero_images.len(), 3);
    assert_eq!(g.zeros.len(), 3);
    let r = verify_reduction(&g, &quick()).unwrap();
    assert!(r.passed, "{:?}", r.failures);
}

#[test]
fn x3_3x2_3_side_condition() {
    let g = make_gadget(&GadgetFamily::X3Minus3X2Plus3 { f: p("x^3 - 3x^2 + 3") }).unwrap();
    assert_eq!(g.flavor, Flavor::P);
    assert_eq!(g.verdict.status, ModuleStatus::Npc);
    // H = 0 with x_* = 0 violates (m) − εx_* ∈ H.
    let bad = ModuleProblemInstance { t: 1, h_gens: vec![], x_star: vec![0, 0] };
    assert!(matches!(build(&g, &bad), Err(Error::PreconditionFailed(_))));
    let r = verify_reduction(&g, &quick()).unwrap();
    assert!(r.passed, "{:?}", r.failures);
}

#[test]
fn zr6tr9_and_gen_comp() {
    let g = make_gadget(&GadgetFamily::Zr6Tr9 { f: p("x^3 + 9") }).unwrap();
    assert_eq!(g.module().invariants(), &[9, 9]);
    let r = verify_reduction(&g, &Sweep { max_t: 1, direct_every: 5, ..Sweep::default() }).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    let g = make_gadget(&GadgetFamily::GenComp { f: p("x^3 - 3x + 1"), p: 3 });
    // Z-rank 3: rejected.
    assert!(g.is_err());
}

#[test]
fn equivalent_target_is_accepted() {
    // -f(-X) for X^3 - 3 is X^3 + 3.
    let g = make_gadget(&GadgetFamily::X3Minus3 { f: p("x^3 + 3") }).unwrap();
    assert!(g.equivalence.is_some());
    assert_eq!(g.zeros.len(), 3);
    assert!(make_gadget(&GadgetFamily::X3Minus3 { f: p("x^3 - 5") }).is_err());
}

#[test]
fn monotone_along_chains() {
    let g = make_gadget(&GadgetFamily::quad_even(6)).unwrap();
    let small = build(&g, &ModuleProblemInstance::pi(g.module(), 2, vec![vec![2, 2]])).unwrap();
    let big = build(&g, &ModuleProblemInstance::pi(g.module(), 2, vec![vec![2, 2], vec![1, 1]])).unwrap();
    let l_small = &small.order.lattice;
    assert!(l_small.is_subset_of(&big.order.lattice));
}

#[test]
fn sampled_sweep_is_seeded() {
    let g = make_gadget(&GadgetFamily::X3Minus3X2Plus3 { f: p("x^3 - 3x^2 + 3") }).unwrap();
    let sweep = Sweep { trials: Some(30), seed: 7, ..Sweep::default() };
    let a = verify_reduction(&g, &sweep).unwrap();
    let b = verify_reduction(&g, &sweep).unwrap();
    assert!(a.passed, "{:?}", a.failures);
    assert_eq!(a, b);
    assert!(a.instances > 0);
}

#[test]
fn full_power_root_matches_scan() {
    use num_integer::Integer;
    use num_traits::Zero;
    let scan = |f: &IntPolynomial, m: u64| {
        let mb = BigInt::from(m);
        (0..m).find(|&c| {
            let t = IntPolynomial::from_i64(&[-(c as i64), 1]).pow(f.deg() as u32);
            f.sub(&t).coeffs().iter().all(|x| x.mod_floor(&mb).is_zero())
        })
    };
    for f in ["X^3 - 3", "X^3 + 9", "X^3 + 3X + 3", "X^2 + 2X + 9", "X^3 - 3X^2 + 3X - 28", "X^4 + 4X^3 + 6X^2 + 4X + 17", "X^3 - 3X + 1"] {
        let f = p(f);
        for m in [2u64, 3, 4, 5, 7, 8, 9, 12, 16, 27, 81] {
            assert_eq!(full_power_root(&f, m), scan(&f, m), "{f} mod {m}");
        }
    }
}
