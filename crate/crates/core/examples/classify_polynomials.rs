//! Complexity verdicts for quadratics and cubics, with the reasons given.
use ordroots::classify::{classify_poly, cubic_route};
use ordroots::poly::IntPolynomial;

fn main() -> ordroots::Result<()> {
    let polys = ["X^2 + 1", "X^2 - 2", "X^2 - 5", "X^2 + X + 1", "X^3 - 2", "X^3 - 3", "X^3 - 3X + 1", "X^3 + 3X + 3", "X^3 - X"];
    for text in polys {
        let f: IntPolynomial = text.parse()?;
        let v = classify_poly(&f)?;
        println!("{f:<16} {:?}", v.status);
        for r in &v.reasons {
            println!("    {}: {}", r.rule, r.anchor);
        }
        if f.deg() == 3 && f.integer_roots().is_empty() {
            let route = cubic_route(&f)?;
            println!("    discriminant {}  z-rank {}", route.discriminant, route.z_rank);
        }
    }
    Ok(())
}
