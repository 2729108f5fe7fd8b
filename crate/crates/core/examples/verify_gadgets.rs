//! Builds every hardness gadget and checks it against zero sets for t <= 1.
use ordroots::reductions::{make_gadget, verify_reduction, Sweep};
use ordroots::report::sweep_families;

fn main() -> ordroots::Result<()> {
    let sweep = Sweep { max_t: 1, ..Sweep::default() };
    for family in sweep_families() {
        let gadget = make_gadget(&family)?;
        let r = verify_reduction(&gadget, &sweep)?;
        println!(
            "{:<40} {:?}  {} instances ({} yes)  certificates {}  passed {}",
            r.gadget, r.verdict.status, r.instances, r.yes, r.certificates_checked, r.passed
        );
    }
    Ok(())
}
