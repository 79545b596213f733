//! Gamma-match chain for Za = 24 + j3.73 ohm, once at full precision and
//! once with the hand-rounded alpha = 1.3 and Z0 = 209 ohm.

use yagi::impedance::ComplexImpedance;
use yagi::matching::{gamma_chain, ChainInputs, GammaMatchGeometry, GammaSolution};

fn show(title: &str, s: &GammaSolution) {
    println!("{title}");
    println!("  u = {:.4}, v = {:.4}, alpha = {:.4}, step-up = {:.4}", s.u, s.v, s.alpha, s.step_up);
    println!("  Z2  = {:.3} ohm, Z0 = {:.2} ohm", s.z2_ohm, s.z0_line_ohm);
    println!("  z2  = {:.4}", ComplexImpedance::from(s.z2_norm));
    println!("  y2  = {:.4}", ComplexImpedance::from(s.y2_norm));
    println!("  zg  = {:.4}, yg = {:.4}", ComplexImpedance::from(s.zg_norm), ComplexImpedance::from(s.yg_norm));
    println!("  yin = {:.4}", ComplexImpedance::from(s.yin_norm));
    println!("  Zin = {:.3} ohm", s.zin_ohm);
    match s.c_farad {
        Some(c) => println!("  C   = {:.3} pF", c * 1e12),
        None => println!("  no series capacitor (capacitive input)"),
    }
}

fn main() {
    let za = ComplexImpedance::new(24.0, 3.73);
    // element 5 mm, rod 7.3 mm, spacing 17.2 mm
    let geom = GammaMatchGeometry {
        a: 2.5e-3,
        a_rod: 3.65e-3,
        s: 17.2e-3,
        rod_length: 0.099,
        f0: 900e6,
    };
    let exact = ChainInputs::from_geometry(&geom).expect("valid geometry");
    show("full precision", &gamma_chain(za, &exact).expect("chain"));

    let rounded = ChainInputs {
        u: 1.5,
        v: 6.9,
        alpha: 1.3,
        z0_line: 209.0,
        ..exact
    };
    show("rounded intermediates", &gamma_chain(za, &rounded).expect("chain"));
}
