//! Encodes X^3 + i = 0 over Z[i] as an order and maps the solution x = i
//! to a zero of (X^2 + 1)^2 in it.
use ordroots::htp::{build_order, normalize_degree2, witness_to_zero, Gaussian, GaussianFraction, GaussianPoly, System};
use ordroots::order::Ring;

fn main() -> ordroots::Result<()> {
    let f = GaussianPoly::from_terms(1, [(vec![3], Gaussian::one()), (vec![0], Gaussian::new(0, 1))])?;
    let system = System::new(1, vec![f])?;
    let nm = normalize_degree2(&system)?;
    println!("normalized to {} variables, {} equations", nm.system.n, nm.system.polys.len());

    let htp = build_order(&nm.system)?;
    println!("order of rank {} inside Z^{}", htp.order.order.rank(), htp.ambient.rank());

    let x = [GaussianFraction { re: 0.into(), im: 1.into(), den: 1.into() }];
    let w = witness_to_zero(&htp, &nm.system, &nm.extend_fractions(&x))?;
    let show = |v: &[num_bigint::BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    println!("zero in ambient coordinates: {}", show(&w.ambient));
    println!("in the order's basis: {}", show(&w.element));
    println!("verified {}", w.verified);
    Ok(())
}
