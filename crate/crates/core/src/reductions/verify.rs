//! Exhaustive checks that a gadget preserves yes/no answers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{build, Gadget, Recipe};
use crate::error::Result;
use crate::gadget::{all_submodules, solve_in, Elem, Flavor, ModuleProblemInstance, ModuleVerdict, Submodule};
use crate::rootfind::{verify_certificate, zeros_in_order};

#[derive(Clone, Debug)]
pub struct Sweep {
    /// Every `t` in `0..=max_t` is swept over all submodules `H ⊂ G^t`.
    pub max_t: usize,
    pub submodule_cap: u64,
    /// Every `direct_every`-th instance also recomputes `Z_{A_H}(f)` from
    /// scratch (0 disables).
    pub direct_every: usize,
    /// Cap on candidate zero tuples of the ambient product.
    pub zero_cap: u64,
    /// Random instances instead of the exhaustive sweep.
    pub trials: Option<usize>,
    pub seed: u64,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep { max_t: 2, submodule_cap: 100_000, direct_every: 97, zero_cap: 1_000_000, trials: None, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InstanceCheck {
    pub t: usize,
    #[serde(with = "crate::io::dec::ivec2")]
    pub h_gens: Vec<Elem>,
    #[serde(with = "crate::io::dec::ivec")]
    pub x_star: Elem,
    pub expected: bool,
    pub zeros: usize,
    pub certificate_ok: Option<bool>,
    pub direct_agrees: Option<bool>,
}

impl InstanceCheck {
    pub fn ok(&self) -> bool {
        self.expected == (self.zeros > 0) && self.certificate_ok != Some(false) && self.direct_agrees != Some(false)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub gadget: String,
    pub verdict: ModuleVerdict,
    pub instances: usize,
    pub yes: usize,
    pub no: usize,
    /// Instances per `t`, starting at 0.
    pub per_t: Vec<usize>,
    pub direct_checks: usize,
    pub certificates_checked: usize,
    pub failures: Vec<InstanceCheck>,
    pub passed: bool,
}

/// `x_*` candidates for an instance with submodule `h`.
fn shifts(gadget: &Gadget, t: usize, h: &Submodule) -> Vec<Elem> {
    let g = gadget.module();
    let n = t * g.rank();
    match (gadget.flavor, &gadget.recipe) {
        (Flavor::P, Recipe::ShiftedP { .. }) => {
            let all = Submodule::full(&g.power_moduli(t)).elements();
            let m = &g.actions()[0];
            let r = g.rank();
            let moduli = g.power_moduli(t);
            all.into_iter()
                .filter(|x| {
                    let side: Elem = (0..n)
                        .map(|i| {
                            let eps = g.act(&x[i / r * r..i / r * r + r], m)[i % r];
                            ((i % r == 0) as i64 - eps).rem_euclid(moduli[i])
                        })
                        .collect();
                    h.contains(&side)
                })
                .collect()
        }
        _ => vec![vec![0; n]],
    }
}

/// Sweeps `t ≤ max_t`, all submodules and all admissible shifts, comparing
/// the module answer with the zero set of the built order. With `trials`
/// set, draws that many instances from a seeded generator instead.
pub fn verify_reduction(gadget: &Gadget, sweep: &Sweep) -> Result<VerifyReport> {
    let g = gadget.module();
    let mut report = VerifyReport {
        gadget: gadget.family.to_string(),
        verdict: gadget.verdict.clone(),
        instances: 0,
        yes: 0,
        no: 0,
        per_t: vec![0; sweep.max_t + 1],
        direct_checks: 0,
        certificates_checked: 0,
        failures: Vec::new(),
        passed: true,
    };
    match sweep.trials {
        None => {
            for t in 0..=sweep.max_t {
                for h in all_submodules(g, t, sweep.submodule_cap)? {
                    for x_star in shifts(gadget, t, &h) {
                        check(gadget, sweep, &mut report, t, &h, x_star)?;
                    }
                }
            }
        }
        Some(trials) => {
            let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
            for _ in 0..trials {
                let t = rng.gen_range(sweep.max_t.min(1)..=sweep.max_t);
                g.check_power_size(t, sweep.submodule_cap)?;
                let moduli = g.power_moduli(t);
                let gens: Vec<Elem> = (0..rng.gen_range(0..=2))
                    .map(|_| moduli.iter().map(|&d| rng.gen_range(0..d)).collect())
                    .collect();
                let h = Submodule::generated(g, t, &gens);
                let candidates = shifts(gadget, t, &h);
                if candidates.is_empty() {
                    continue;
                }
                let x_star = candidates[rng.gen_range(0..candidates.len())].clone();
                check(gadget, sweep, &mut report, t, &h, x_star)?;
            }
        }
    }
    Ok(report)
}

fn check(gadget: &Gadget, sweep: &Sweep, report: &mut VerifyReport, t: usize, h: &Submodule, x_star: Elem) -> Result<()> {
    let g = gadget.module();
    let inst = ModuleProblemInstance { t, h_gens: h.generators(), x_star };
    let expected = solve_in(g, &gadget.s, h, &inst.x_star).is_some();
    let built = build(gadget, &inst)?;
    let zeros = built.zeros_via_ambient(sweep.zero_cap)?;
    let certificate_ok = match zeros.first() {
        Some(z) => {
            report.certificates_checked += 1;
            Some(verify_certificate(&built.order.order, &gadget.f, z)?)
        }
        None => None,
    };
    let direct_agrees = if sweep.direct_every > 0 && report.instances % sweep.direct_every == 0 {
        report.direct_checks += 1;
        Some(zeros_in_order(&built.order.order, &gadget.f)?.zeros == zeros)
    } else {
        None
    };
    let check = InstanceCheck { t, h_gens: inst.h_gens, x_star: inst.x_star, expected, zeros: zeros.len(), certificate_ok, direct_agrees };
    if expected {
        report.yes += 1;
    } else {
        report.no += 1;
    }
    if !check.ok() {
        report.passed = false;
        report.failures.push(check);
    }
    report.instances += 1;
    report.per_t[t] += 1;
    Ok(())
}
