use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ordroots::gadget::{is_coset, theta, FiniteModule, SubsetS};
use ordroots::linalg::{hnf, snf, IntMatrix};
use ordroots::order::{Order, Ring};
use ordroots::poly::IntPolynomial;
use ordroots::rootfind::{verify_certificate, zeros_in_order};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, cols), rows)
        .prop_map(move |r| IntMatrix::from_rows(cols, r.iter().map(|x| x.iter().map(|&v| BigInt::from(v)).collect()).collect()))
}

fn monic(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-6i64..=6, 1..=max_deg).prop_map(|mut c| {
        c.push(1);
        IntPolynomial::from_i64(&c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_transform_is_unimodular(m in matrix(4, 3)) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(u.det().abs().is_one());
        for i in 0..h.nrows() {
            for j in 0..i.min(h.ncols()) {
                if !h.row(i).iter().all(Zero::is_zero) {
                    // rows are echelon: a nonzero row starts right of the rows above
                    let lead = |r: usize| h.row(r).iter().position(|x| !x.is_zero());
                    prop_assert!(lead(j) < lead(i));
                }
            }
        }
    }

    #[test]
    fn snf_divisibility_chain(m in matrix(3, 4)) {
        let (d, u, v) = snf(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        let diag: Vec<BigInt> = (0..d.nrows().min(d.ncols())).map(|i| d.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn polynomial_text_round_trip(f in monic(5)) {
        let g: IntPolynomial = f.to_string().parse().unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn monogenic_order_is_a_ring(f in monic(3), x in prop::collection::vec(-3i64..=3, 3), y in prop::collection::vec(-3i64..=3, 3)) {
        let a = Order::monogenic(&f).unwrap();
        let n = a.rank();
        let x: Vec<BigInt> = x[..n].iter().map(|&v| v.into()).collect();
        let y: Vec<BigInt> = y[..n].iter().map(|&v| v.into()).collect();
        prop_assert!(a.validate().is_ok());
        prop_assert_eq!(a.mul(&x, &y), a.mul(&y, &x));
        // the generator is a zero of f
        prop_assert!(a.is_zero_elem(&a.eval_poly(&f, &a.basis_element(1.min(n - 1)))) || n == 1);
    }

    #[test]
    fn zeros_are_certified(f in monic(3), g in monic(2)) {
        prop_assume!(!g.discriminant().unwrap().is_zero() && !f.discriminant().unwrap().is_zero());
        let a = Order::monogenic(&g).unwrap();
        let z = zeros_in_order(&a, &f).unwrap();
        prop_assert!(z.zeros.len() <= f.deg().pow(g.deg() as u32));
        for x in &z.zeros {
            prop_assert!(verify_certificate(&a, &f, x).unwrap());
        }
    }

    #[test]
    fn theta_is_inside_s(mask in 1u32..(1 << 12)) {
        let g = FiniteModule::abelian(&[12]);
        let elems: Vec<Vec<i64>> = (0..12).filter(|i| mask >> i & 1 == 1).map(|i| vec![i]).collect();
        let s = SubsetS::new(&g, &elems).unwrap();
        let th = theta(&g, &s);
        prop_assert!(th.elements().iter().all(|x| s.contains(x)));
        prop_assert!(!th.is_empty());
        if is_coset(&g, &s) {
            prop_assert!(is_coset(&g, &th));
        }
    }
}
