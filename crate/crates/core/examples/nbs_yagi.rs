//! Solves the NBS 688 design at 900 MHz and summarizes the boom-plane pattern.

use yagi::analysis::Reflection;
use yagi::em::simulate;
use yagi::geometry::{build_design, DesignRule};

fn main() {
    let segments = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(41);
    let design = build_design(DesignRule::Nbs688, 900e6, 5e-3).expect("valid design");
    let sim = simulate(&design, 900e6, segments, 1.0).expect("solve");
    let peak = sim.far_field.peak();
    let refl = Reflection::new(sim.impedance.z, 50.0).expect("positive reference");

    println!("segments          {} ({} per element)", sim.grid.len(), segments);
    println!("input impedance   {:.2} ohm", sim.impedance.z);
    println!("VSWR (50 ohm)     {:.2}", refl.vswr().expect("passive"));
    println!("peak gain         {:.2} dBi at theta {} phi {}", peak.gain_dbi, peak.theta_deg, peak.phi_deg);
    println!("front to back     {:.1} dB", sim.far_field.front_to_back_db());
    println!("gain integral/4pi {:.4}", sim.far_field.normalization_ratio());
    println!("solve residual    {:.1e}", sim.solution.residual);
    println!();
    println!("boom-plane cut (every 30 deg):");
    for (phi, g) in sim.far_field.azimuth_cut().into_iter().filter(|(p, _)| p % 30.0 == 0.0) {
        let bar = "#".repeat(((g + 20.0).max(0.0) * 1.5) as usize);
        println!("  {phi:>5.0} {g:>7.2} {bar}");
    }
}
