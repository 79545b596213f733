//! Half-wave dipole against the induced-EMF result (73.1 + j42.5 ohm,
//! 2.15 dBi), with a segmentation study.

use yagi::em::{simulate_grid, WireGrid};
use yagi::geometry::SPEED_OF_LIGHT;

fn main() {
    // unit wavelength
    let f = SPEED_OF_LIGHT;
    println!("{:>8} {:>20} {:>10} {:>10}", "segments", "Z (ohm)", "gain dBi", "P_rad/P_in");
    let mut last = None;
    for n in [11, 21, 41, 51, 81] {
        let grid = WireGrid::dipole(0.5, 1e-4, n).expect("valid dipole");
        let sim = simulate_grid(grid, f, 1.0).expect("dipole solves");
        let z = sim.impedance.z;
        print!(
            "{n:>8} {:>20} {:>10.3} {:>10.4}",
            format!("{z:.2}"),
            sim.far_field.peak().gain_dbi,
            sim.far_field.power_balance()
        );
        if let Some(prev) = last {
            print!("   step {:.3}", (z - prev).norm());
        }
        println!();
        last = Some(z);
    }
}
