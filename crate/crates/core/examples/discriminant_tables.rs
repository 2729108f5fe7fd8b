//! Regenerates the cubic families with discriminant ±3^k from integral
//! points on y² = x³ ± 16·3^l, then the short list of hard representatives.
use ordroots::disc_search::{regenerate_tables, BASE_LEVELS, DEFAULT_DESCENT_STEPS, DEFAULT_XBOUND};

fn main() -> ordroots::Result<()> {
    let tables = regenerate_tables(DEFAULT_XBOUND, BASE_LEVELS, DEFAULT_DESCENT_STEPS)?;
    println!("{} integral points found", tables.points.len());
    for row in &tables.table1 {
        let t = row.integrality_threshold.map_or("-".to_string(), |t| format!(">= {t}"));
        println!("{:<40} Galois order {}  integral for t {}", row.display(), row.galois_order, t);
    }
    for e in &tables.eliminated {
        println!("drop {:<24} {}", e.polynomial, e.reason);
    }
    for e in &tables.table2 {
        println!("keep {:<24} disc {}  merged {:?}  class {:?}", e.polynomial, e.discriminant, e.merged, e.representative);
    }
    Ok(())
}
