//! Mismatch figures for the tabulated design impedances and for the
//! measured VSWR of the finished antenna.

use yagi::analysis::{return_loss_db, Reflection};
use yagi::impedance::ComplexImpedance;

fn main() {
    for (rule, z) in [
        ("NBS 688", ComplexImpedance::new(24.0, 3.73)),
        ("Balanis", ComplexImpedance::new(83.4, 138.0)),
        ("YC0PE", ComplexImpedance::new(1.55, 25.6)),
    ] {
        let r = Reflection::new(z, 50.0).expect("positive reference");
        println!(
            "{rule:<8} Z = {z:<12} |G| = {:.4}  VSWR = {:>6.2}  RL = {}",
            r.magnitude(),
            r.vswr().expect("passive"),
            r.return_loss().expect("passive")
        );
    }
    let v = 1.46;
    let mag = (v - 1.0) / (v + 1.0);
    println!("measured VSWR {v} -> |G| = {mag:.4}, RL = {}", return_loss_db(mag).expect("passive"));
}
