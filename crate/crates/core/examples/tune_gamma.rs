//! Slides the gamma rod until the match presents 50 ohm resistive, for the
//! tabulated feed impedance and for the solver's own value.

use yagi::em::simulate;
use yagi::geometry::{build_design, DesignRule};
use yagi::impedance::ComplexImpedance;
use yagi::matching::{tune_gamma, GammaMatchGeometry};

fn main() {
    let geom = GammaMatchGeometry {
        a: 2.5e-3,
        a_rod: 3.65e-3,
        s: 17.2e-3,
        rod_length: 0.1,
        f0: 900e6,
    };
    let design = build_design(DesignRule::Nbs688, 900e6, 5e-3).expect("valid design");
    let simulated = simulate(&design, 900e6, 21, 5.0).expect("solve").impedance.z;

    for (label, za) in [("tabulated", ComplexImpedance::new(24.0, 3.73)), ("simulated", simulated)] {
        let t = tune_gamma(za, &geom, 50.0, 1.0).expect("valid inputs");
        println!("{label}: Za = {za:.2} ohm");
        println!(
            "  rod {:.4} lambda ({:.1} mm), Zin = {:.2} ohm, error {:.2e} ohm, converged {}",
            t.rod_length,
            t.rod_length * design.plan.lambda * 1e3,
            t.solution.zin_ohm,
            t.error_ohm,
            t.converged
        );
        if let Some(c) = t.c_farad {
            println!("  series capacitor {:.2} pF", c * 1e12);
        }
    }
}
