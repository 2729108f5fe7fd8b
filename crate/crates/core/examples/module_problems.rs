//! The coset problems over a finite module: theta, the verdict and a solve.
use ordroots::gadget::{classify, is_coset, solve, theta, FiniteModule, Flavor, ModuleProblemInstance, SubsetS, DEFAULT_ENUM_CAP};

fn main() -> ordroots::Result<()> {
    let g = FiniteModule::abelian(&[8]);
    let s = SubsetS::new(&g, &[vec![1], vec![7]])?;
    println!("S = {:?}, coset {}", s.elements(), is_coset(&g, &s));
    println!("theta(S) = {:?}", theta(&g, &s).elements());
    for flavor in [Flavor::P, Flavor::Pi] {
        let v = classify(&g, &s, flavor);
        println!("{flavor:?}: {:?} ({})", v.status, v.reason);
    }

    // is there x in S^2 with x in H = <(1, 3)>?
    let inst = ModuleProblemInstance::pi(&g, 2, vec![vec![1, 3]]);
    match solve(&g, &s, &inst, DEFAULT_ENUM_CAP)? {
        Some(x) => println!("yes, witness {x:?}"),
        None => println!("no"),
    }

    let s0 = SubsetS::new(&g, &[vec![1], vec![3], vec![5], vec![7]])?;
    println!("odd residues: {:?}", classify(&g, &s0, Flavor::Pi).status);
    Ok(())
}
