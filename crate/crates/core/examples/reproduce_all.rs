//! Runs every acceptance item and prints the report, then the timings.
use ordroots::report::{reproduce_all, ReproConfig};

fn main() -> ordroots::Result<()> {
    let (report, timings) = reproduce_all(&ReproConfig::default())?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    for t in timings {
        eprintln!("item {}: {:.1}s", t.id, t.seconds);
    }
    Ok(())
}
