//! GSM-900 band sweep of the NBS design: impedance, VSWR and gain per
//! frequency, then the VSWR <= 2 bandwidth.

use yagi::analysis::{bandwidth, vswr, DEFAULT_VSWR_LIMIT};
use yagi::em::frequency_sweep;
use yagi::geometry::{build_design, DesignRule};

fn main() {
    let design = build_design(DesignRule::Nbs688, 900e6, 5e-3).expect("valid design");
    let freqs: Vec<f64> = (0..=14).map(|i| 890e6 + i as f64 * 5e6).collect();
    let points = frequency_sweep(&design, &freqs, 21, 2.0).expect("valid sweep");

    let mut ok = Vec::new();
    println!("{:>8} {:>20} {:>7} {:>9}", "MHz", "Z (ohm)", "VSWR", "gain dBi");
    for p in &points {
        match &p.outcome {
            Ok(e) => {
                let z = e.impedance.z;
                let s = vswr(z, 50.0).map_or(f64::INFINITY, |v| v);
                println!("{:>8.0} {:>20} {:>7.2} {:>9.2}", p.frequency / 1e6, format!("{z:.2}"), s, e.peak_gain_dbi);
                ok.push((p.frequency, z));
            }
            Err(err) => println!("{:>8.0} error: {err}", p.frequency / 1e6),
        }
    }
    let band = bandwidth(&ok, 50.0, DEFAULT_VSWR_LIMIT).expect("two or more points");
    match (band.low_hz, band.high_hz) {
        (Some(lo), Some(hi)) => println!("VSWR <= 2 from {:.1} to {:.1} MHz", lo / 1e6, hi / 1e6),
        _ => println!("VSWR never reaches 2 without a matching network"),
    }
}
