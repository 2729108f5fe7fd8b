//! Zeros of polynomials in a few small orders.
use ordroots::order::Order;
use ordroots::poly::IntPolynomial;
use ordroots::rootfind::{verify_certificate, zeros_in_order};

fn show(name: &str, a: &Order, f: &str) -> ordroots::Result<()> {
    let f: IntPolynomial = f.parse()?;
    let z = zeros_in_order(a, &f)?;
    println!("{name}: f = {f}, {} zeros", z.zeros.len());
    for x in &z.zeros {
        let s: Vec<String> = x.iter().map(|c| c.to_string()).collect();
        println!("  ({})  verified {}", s.join(", "), verify_certificate(a, &f, x)?);
    }
    Ok(())
}

fn main() -> ordroots::Result<()> {
    let gauss = Order::monogenic(&"X^2 + 1".parse()?)?;
    show("Z[i]", &gauss, "X^4 - 1")?;

    // Z[X]/(X^2 - 3X) is Z x Z glued at 3
    let glued = Order::monogenic(&"X^2 - 3X".parse()?)?;
    show("Z[X]/(X^2-3X)", &glued, "X^2 - 3X")?;

    let a2 = Order::product(&[&Order::integers(), &Order::integers()]);
    show("Z^2", &a2, "X^3 + 9")?;

    let cubic = Order::monogenic(&"X^3 - 3".parse()?)?;
    show("Z[3^(1/3)]", &cubic, "X^3 - 3")?;
    Ok(())
}
