//! Writes polar SVG plots of the measured Yagi coverage and of the simulated
//! boom-plane gain into a directory (default: the system temp dir).

use std::path::PathBuf;

use yagi::analysis::{PatternSample, PatternUnit, RadiationPatternData};
use yagi::em::simulate;
use yagi::geometry::{build_design, DesignRule};
use yagi::plot::{write_polar_svg, PolarScale};

fn main() {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);

    let path = format!("{}/fixtures/yagi_fig10.csv", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).expect("fixture present");
    let measured = RadiationPatternData::from_csv_str(&text, PatternUnit::Meters, "Yagi jamming range").expect("valid");
    let out = dir.join("yagi_coverage.svg");
    write_polar_svg(&measured, PolarScale::Linear, &out).expect("writable");
    println!("wrote {}", out.display());

    let design = build_design(DesignRule::Nbs688, 900e6, 5e-3).expect("valid design");
    let sim = simulate(&design, 900e6, 21, 2.0).expect("solve");
    let samples = sim
        .far_field
        .azimuth_cut()
        .into_iter()
        .map(|(angle_deg, value)| PatternSample { angle_deg, value })
        .collect();
    let gain = RadiationPatternData::new(samples, PatternUnit::Dbi, "NBS 688 boom-plane gain").expect("valid");
    let out = dir.join("yagi_gain.svg");
    write_polar_svg(&gain, PolarScale::Db { range_db: 30.0 }, &out).expect("writable");
    println!("wrote {}", out.display());
}
